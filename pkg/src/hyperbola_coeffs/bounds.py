"""Closed-form bounds for coefficient functionals of the hyperbola classes.

Each Fekete-Szego bound is a three-piece function of ``lambda``; the pieces
are written out separately per (kind, target) so that the substitution
identities relating them stay independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

from .classes import Kind, check_s
from .errors import BadIndex, ParameterError
from .series import pochhammer_ratio

THRESHOLD_TOL = 1e-12


class Regime(str, Enum):
    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"
    SINGLE = "single"


class Target(str, Enum):
    F = "f"
    Z_OVER_F = "z_over_f"
    INVERSE = "inverse"


TARGET_ALIASES = {"f": Target.F, "zf": Target.Z_OVER_F, "z_over_f": Target.Z_OVER_F,
                  "inv": Target.INVERSE, "inverse": Target.INVERSE}


def as_target(target) -> Target:
    if isinstance(target, Target):
        return target
    try:
        return TARGET_ALIASES[str(target)]
    except KeyError:
        raise ParameterError(f"unknown target {target!r}") from None


@dataclass(frozen=True)
class BoundResult:
    value: float
    regime: Regime = Regime.SINGLE
    thresholds: Optional[Tuple[float, float]] = None
    sharp: bool = False
    extremal_hint: str = ""


@dataclass(frozen=True)
class _FSTable:
    thresholds: Callable[[float], Tuple[float, float]]
    left: Callable[[float, float], float]
    middle: Callable[[float], float]
    right: Callable[[float, float], float]
    # extremal families: (interior outer, interior middle, at lower, at upper)
    hints: Tuple[str, str, str, str]


_FS_TABLES = {
    (Kind.STARLIKE, Target.F): _FSTable(
        thresholds=lambda s: ((3 * s - 1) / (4 * s), (3 * s + 3) / (4 * s)),
        left=lambda s, lam: -s * s * (lam - (3 * s + 1) / (4 * s)),
        middle=lambda s: s / 2,
        right=lambda s, lam: s * s * (lam - (3 * s + 1) / (4 * s)),
        hints=("Phi_{s,1}", "Phi_{s,2}", "g_x", "f_x"),
    ),
    (Kind.CONVEX, Target.F): _FSTable(
        thresholds=lambda s: ((3 * s - 1) / (3 * s), (s + 1) / s),
        left=lambda s, lam: -(s * s / 4) * (lam - (3 * s + 1) / (3 * s)),
        middle=lambda s: s / 6,
        right=lambda s, lam: (s * s / 4) * (lam - (3 * s + 1) / (3 * s)),
        hints=("K_{s,1}", "K_{s,2}", "G_x", "F_x"),
    ),
    (Kind.STARLIKE, Target.Z_OVER_F): _FSTable(
        thresholds=lambda s: ((s - 3) / (4 * s), (s + 1) / (4 * s)),
        left=lambda s, lam: s * s * ((s - 1) / (4 * s) - lam),
        middle=lambda s: s / 2,
        right=lambda s, lam: s * s * (lam - (s - 1) / (4 * s)),
        hints=("Phi_{s,1}", "Phi_{s,2}", "f_x", "g_x"),
    ),
    (Kind.CONVEX, Target.Z_OVER_F): _FSTable(
        thresholds=lambda s: (-1 / s, 1 / (3 * s)),
        left=lambda s, lam: -(s * s / 4) * (lam + 1 / (3 * s)),
        middle=lambda s: s / 6,
        right=lambda s, lam: (s * s / 4) * (lam + 1 / (3 * s)),
        hints=("K_{s,1}", "K_{s,2}", "F_x", "G_x"),
    ),
    (Kind.STARLIKE, Target.INVERSE): _FSTable(
        thresholds=lambda s: ((5 * s - 3) / (4 * s), (5 * s + 1) / (4 * s)),
        left=lambda s, lam: s * s * ((5 * s - 1) / (4 * s) - lam),
        middle=lambda s: s / 2,
        right=lambda s, lam: s * s * (lam - (5 * s - 1) / (4 * s)),
        hints=("Phi_{s,1}", "Phi_{s,2}", "f_x", "g_x"),
    ),
    (Kind.CONVEX, Target.INVERSE): _FSTable(
        thresholds=lambda s: ((s - 1) / s, (3 * s + 1) / (3 * s)),
        left=lambda s, lam: (s * s / 4) * ((3 * s - 1) / (3 * s) - lam),
        middle=lambda s: s / 6,
        right=lambda s, lam: (s * s / 4) * (lam - (3 * s - 1) / (3 * s)),
        hints=("K_{s,1}", "K_{s,2}", "F_x", "G_x"),
    ),
}


def fs_thresholds(kind, target, s: float) -> Tuple[float, float]:
    check_s(s)
    return _FS_TABLES[(Kind(kind), as_target(target))].thresholds(s)


def fs_bound(kind, target, s: float, lam: float) -> BoundResult:
    """Sharp bound on the Fekete-Szego functional of ``f``, ``z/f`` or ``f^{-1}``."""
    s = check_s(s)
    lam = float(lam)
    table = _FS_TABLES[(Kind(kind), as_target(target))]
    lo, hi = table.thresholds(s)
    outer, middle, at_lo, at_hi = table.hints
    if lam < lo:
        regime, value, hint = Regime.LEFT, table.left(s, lam), outer
    elif lam > hi:
        regime, value, hint = Regime.RIGHT, table.right(s, lam), outer
    else:
        regime, value, hint = Regime.MIDDLE, table.middle(s), middle
    if abs(lam - lo) <= THRESHOLD_TOL * max(1.0, abs(lo)):
        hint = at_lo
    elif abs(lam - hi) <= THRESHOLD_TOL * max(1.0, abs(hi)):
        hint = at_hi
    return BoundResult(value, regime, (lo, hi), True, f"rotations of {hint}")


def fs_branches(kind, target, s: float, lam: float) -> Tuple[float, float, float]:
    """The three piece values evaluated at ``lam`` regardless of which is active."""
    table = _FS_TABLES[(Kind(kind), as_target(target))]
    return table.left(s, lam), table.middle(s), table.right(s, lam)


def coeff_bound(kind, s: float, n: int) -> BoundResult:
    """``|a_n| <= (s)_{n-1}/(n-1)!`` (starlike) or ``(s)_{n-1}/n!`` (convex)."""
    s = check_s(s)
    if n < 2:
        raise BadIndex(f"coefficient bounds start at n = 2, got {n}")
    value = pochhammer_ratio(s, n - 1)
    if Kind(kind) is Kind.CONVEX:
        value /= n
    return BoundResult(value, Regime.SINGLE, None, False, "")


def hankel22_bound(kind, s: float) -> BoundResult:
    s = check_s(s)
    if Kind(kind) is Kind.STARLIKE:
        return BoundResult(s * s / 4, Regime.SINGLE, None, True, "rotations of Phi_{s,2}")
    value = s * s / 36 * (1 + 9 * s * s / (8 * (s * s + 3 * s + 6)))
    return BoundResult(value, Regime.SINGLE, None, False, "")


def schwarz_fs_bound(t: float) -> BoundResult:
    """``|w_2 - t w_1**2| <= max(1, |t|)`` over Schwarz functions."""
    t = float(t)
    if t <= -1:
        return BoundResult(-t, Regime.LEFT, (-1.0, 1.0), True, "omega = z" if t < -1 else "z(z+x)/(1+xz)")
    if t >= 1:
        return BoundResult(t, Regime.RIGHT, (-1.0, 1.0), True, "omega = z" if t > 1 else "-z(z+x)/(1+xz)")
    return BoundResult(1.0, Regime.MIDDLE, (-1.0, 1.0), True, "omega = z^2")
