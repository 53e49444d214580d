"""The hyperbola classes: the majorant ``q_s``, extremal functions, members
generated from Schwarz data, and the pointwise membership geometry.

``q_s(z) = (1 - z)**(-s)`` maps the disk onto the domain bounded by the right
branch of the hyperbola ``rho = (2 cos(phi/s))**(-s)``.  A normalized ``f`` is
starlike in the class when ``z f'/f = q_s(omega)`` for a Schwarz function
``omega``, and convex when ``1 + z f''/f'`` is.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import AngleOutOfRange, BadIndex, BadS, BranchCut, OrderExceeded
from .series import (
    DEFAULT_ORDER,
    MAX_ORDER,
    TruncatedSeries,
    compose,
    div,
    exp_series,
)

MIN_ORDER = 4
BOUNDARY_TOL = 1e-12


class Kind(str, Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"


def check_s(s: float) -> float:
    s = float(s)
    if not (0.0 < s <= 1.0) or math.isnan(s):
        raise BadS(f"s must lie in (0, 1], got {s}")
    return s


def check_order(order: int) -> int:
    if not (MIN_ORDER <= order <= MAX_ORDER):
        raise OrderExceeded(f"jet order must be in [{MIN_ORDER}, {MAX_ORDER}], got {order}")
    return int(order)


@dataclass(frozen=True)
class ClassParams:
    """``n_index`` is the ``z**n`` index of the extremal functions; members
    built from arbitrary Schwarz data carry ``n_index = 1``."""

    s: float
    n_index: int = 1
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        check_s(self.s)
        if self.n_index < 1:
            raise BadIndex(f"n_index must be >= 1, got {self.n_index}")
        check_order(self.order)


@dataclass(frozen=True)
class ClassMember:
    kind: Kind
    params: ClassParams
    f: TruncatedSeries
    p: TruncatedSeries
    omega: Optional[TruncatedSeries] = None

    @property
    def coeffs(self) -> np.ndarray:
        return self.f.coeffs

    def rotate(self, mu: complex) -> ClassMember:
        """The rotation ``conj(mu) f(mu z)`` for unimodular ``mu``."""
        k = np.arange(self.f.order + 1)
        f = TruncatedSeries(self.f.coeffs * mu ** (k - 1.0))
        p = TruncatedSeries(self.p.coeffs * mu ** np.arange(self.p.order + 1))
        omega = None
        if self.omega is not None:
            omega = TruncatedSeries(self.omega.coeffs * mu ** np.arange(self.omega.order + 1))
        return ClassMember(self.kind, self.params, f, p, omega)


@dataclass(frozen=True)
class HyperbolaPoint:
    phi: float
    rho: float
    w: complex


def q_series(s: float, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Jet of ``(1 - z)**(-s)``: coefficient ``n`` is ``(s)_n / n!``."""
    check_s(s)
    q = np.empty(order + 1)
    q[0] = 1.0
    for n in range(1, order + 1):
        q[n] = q[n - 1] * (s + n - 1) / n
    return TruncatedSeries(q)


def starlike_transform(f: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``z f'(z) / f(z)`` for a normalized ``f``; order drops by one."""
    return div(f.derivative(), f.over_z())


def convex_transform(f: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``1 + z f''(z) / f'(z)``; order drops by one."""
    d1 = f.derivative()
    return 1.0 + div(d1.derivative().times_z(), d1)


def _starlike_from_p(p: TruncatedSeries, order: int) -> TruncatedSeries:
    # z f' = p f  =>  (n - 1) a_n = sum_{k=1}^{n-1} p_{n-k} a_k,  a_1 = 1
    pc = p.coeffs
    a = np.zeros(order + 1, dtype=complex)
    a[1] = 1.0
    for n in range(2, order + 1):
        a[n] = np.dot(pc[n - 1 : 0 : -1], a[1:n]) / (n - 1)
    return TruncatedSeries(a)


def _alexander(f: TruncatedSeries) -> TruncatedSeries:
    k = np.arange(f.order + 1, dtype=float)
    k[0] = 1.0
    return TruncatedSeries(f.coeffs / k)


def _check_kind(kind) -> Kind:
    return Kind(kind.value if isinstance(kind, Kind) else kind)


def member_from_schwarz(kind, s: float, omega: TruncatedSeries, order: int = DEFAULT_ORDER) -> ClassMember:
    """Class member whose transform equals ``q_s(omega)``.

    ``omega`` must be a Schwarz jet known at least through ``order - 1``;
    genuineness of the Schwarz function is the caller's responsibility.
    """
    kind = _check_kind(kind)
    check_s(s)
    check_order(order)
    if omega.order < order - 1:
        raise OrderExceeded(f"omega jet of order {omega.order} cannot determine a_{order}")
    om = omega.truncate(order)
    p = compose(q_series(s, order), om)
    f = _starlike_from_p(p, order)
    if kind is Kind.CONVEX:
        f = _alexander(f)
    return ClassMember(kind, ClassParams(s, 1, order), f, p, om)


def phi_extremal(params: ClassParams) -> ClassMember:
    """Starlike extremal ``Phi_{s,n}`` with ``z f'/f = q_s(z**n)``.

    Built as ``z exp(S)`` with ``S = sum_k q_k z**(n k) / (n k)``, the termwise
    integral of ``(q_s(t**n) - 1) / t``.
    """
    s, n, order = params.s, params.n_index, params.order
    q = q_series(s, order)
    S = np.zeros(order, dtype=complex)
    for k in range(1, (order - 1) // n + 1):
        S[n * k] = q.coeffs[k] / (n * k)
    f = exp_series(TruncatedSeries(S)).times_z()
    omega = TruncatedSeries.monomial(n, order)
    qn = np.zeros(order + 1, dtype=complex)
    qn[:: n] = q.coeffs[: order // n + 1]
    return ClassMember(Kind.STARLIKE, params, f, TruncatedSeries(qn), omega)


def k_extremal(params: ClassParams) -> ClassMember:
    """Convex extremal ``K_{s,n}``; coefficient ``k`` is that of ``Phi_{s,n}`` over ``k``."""
    phi = phi_extremal(params)
    return ClassMember(Kind.CONVEX, params, _alexander(phi.f), phi.p, phi.omega)


def point_in_domain(w: complex, s: float, tol: float = BOUNDARY_TOL) -> bool:
    """Strict membership test ``|w**(1/s) - 1| < |w|**(1/s)`` (principal branch).

    Points within relative ``tol`` of the boundary locus are classed outside,
    so the boundary itself never reads as interior through rounding.
    """
    check_s(s)
    w = complex(w)
    if w == 0:
        raise BranchCut("the predicate is undefined at w = 0")
    if w.imag == 0.0 and w.real < 0.0:
        raise BranchCut(f"w = {w} lies on the branch cut of w**(1/s)")
    e = 1.0 / s
    lhs = abs(w**e - 1.0)
    rhs = abs(w) ** e
    return lhs < rhs - tol * max(1.0, rhs)


def boundary_residual(w: complex, s: float) -> float:
    """``|w**(1/s) - 1| - |w|**(1/s)``; zero on the hyperbola."""
    e = 1.0 / s
    return abs(complex(w) ** e - 1.0) - abs(w) ** e


def boundary_point(s: float, phi: float) -> HyperbolaPoint:
    check_s(s)
    half = math.pi * s / 2
    if not (-half < phi < half):
        raise AngleOutOfRange(f"|phi| must be < pi s / 2 = {half}, got {phi}")
    rho = (2.0 * math.cos(phi / s)) ** (-s)
    return HyperbolaPoint(phi, rho, cmath.rect(rho, phi))
