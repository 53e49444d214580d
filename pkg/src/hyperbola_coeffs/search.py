"""Randomized extremal search over Schwarz-function parameters.

All functionals of ``a_2, a_3, a_4`` depend on the Schwarz coefficients
``w_1, w_2, w_3`` only, and every admissible triple is described by three
points ``(w_1, xi, zeta)`` of the closed disk.  A campaign evaluates the named
equality functions first, then samples the parameter box and polishes the
best sample by coordinate-wise golden-section search.  Coefficient bounds for
higher ``n`` are checked on finite Blaschke products instead.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import BoundResult, Target, as_target, coeff_bound, fs_bound, hankel22_bound
from .classes import ClassMember, Kind, check_s, member_from_schwarz, phi_extremal, k_extremal, ClassParams
from .errors import ConfigInvalid, ParamOutOfDisk, ParameterError, XOutOfRange
from .series import TruncatedSeries, div, mul

DISK_TOL = 1e-12
PHASES = 32
X_POINTS = 33
FUNCTIONALS = ("fs", "hankel22", "coeff")

INV_PHI = (math.sqrt(5) - 1) / 2


def _check_disk(name: str, v: complex, strict: bool = False) -> complex:
    v = complex(v)
    r = abs(v)
    if (strict and r >= 1.0) or r > 1.0 + DISK_TOL:
        raise ParamOutOfDisk(f"|{name}| = {r} is outside the {'open' if strict else 'closed'} unit disk")
    return v


@dataclass(frozen=True)
class SchwarzPrefix:
    """Parameters of the first three Schwarz coefficients.

    ``w2 = xi (1 - |w1|^2)`` and
    ``w3 = (1 - |w1|^2)(1 - |xi|^2) zeta - conj(w1)(1 - |w1|^2) xi^2``;
    for real ``w1`` these are the familiar forms with ``w1**2``.
    """

    w1: complex
    xi: complex = 0j
    zeta: complex = 0j

    def __post_init__(self):
        for name in ("w1", "xi", "zeta"):
            object.__setattr__(self, name, _check_disk(name, getattr(self, name)))

    @property
    def w2(self) -> complex:
        return schwarz_w2(self.w1, self.xi)

    @property
    def w3(self) -> complex:
        return schwarz_w3(self.w1, self.xi, self.zeta)

    def omega_jet(self, order: int) -> TruncatedSeries:
        """A genuine Schwarz function with this prefix, as a jet.

        ``omega = z (w1 + z psi) / (1 + conj(w1) z psi)`` with
        ``psi = (xi + zeta z) / (1 + conj(xi) zeta z)``; both Moebius steps map
        the disk into itself.
        """
        one = TruncatedSeries.constant(1.0, order)
        z = TruncatedSeries.identity(order)
        psi = div(self.xi + self.zeta * z, one + (self.xi.conjugate() * self.zeta) * z)
        zpsi = mul(z, psi)
        phi = div(self.w1 + zpsi, one + self.w1.conjugate() * zpsi)
        return mul(z, phi)

    def as_dict(self) -> Dict[str, complex]:
        return {"w1": self.w1, "xi": self.xi, "zeta": self.zeta}


def schwarz_w2(w1, xi):
    return xi * (1 - abs(w1) ** 2)


def schwarz_w3(w1, xi, zeta):
    m = 1 - abs(w1) ** 2
    return m * (1 - abs(xi) ** 2) * zeta - w1.conjugate() * m * xi**2


def prefix_coefficients(kind, s: float, w1, w2, w3):
    """``(a_2, a_3, a_4)`` from the Schwarz coefficients (``d_n`` when convex).

    Works on scalars and numpy arrays alike.
    """
    a2 = s * w1
    a3 = s / 2 * (w2 + (3 * s + 1) / 2 * w1**2)
    a4 = s / 3 * (w3 + (5 * s + 2) / 2 * w1 * w2 + (17 * s * s + 15 * s + 4) / 12 * w1**3)
    if Kind(kind) is Kind.CONVEX:
        return a2 / 2, a3 / 3, a4 / 4
    return a2, a3, a4


@dataclass(frozen=True)
class FunctionalSpec:
    functional: str
    target: Target = Target.F
    lam: Optional[float] = None
    n: Optional[int] = None

    def __post_init__(self):
        if self.functional not in FUNCTIONALS:
            raise ParameterError(f"unknown functional {self.functional!r}")
        object.__setattr__(self, "target", as_target(self.target))
        if self.functional == "fs" and self.lam is None:
            raise ParameterError("the Fekete-Szego functional needs lambda")
        if self.functional == "coeff" and (self.n is None or self.n < 2):
            raise ParameterError("the coefficient functional needs n >= 2")


def _raw_from_coefficients(spec: FunctionalSpec, a2, a3, a4):
    if spec.functional == "hankel22":
        return a2 * a4 - a3 * a3
    if spec.functional == "coeff":
        return (None, None, a2, a3, a4)[spec.n]
    lam = spec.lam
    if spec.target is Target.F:
        return a3 - lam * a2 * a2
    if spec.target is Target.Z_OVER_F:
        # b_1 = -a_2, b_2 = a_2^2 - a_3
        b1, b2 = -a2, a2 * a2 - a3
        return b2 - lam * b1 * b1
    # A_2 = -a_2, A_3 = 2 a_2^2 - a_3
    A2, A3 = -a2, 2 * a2 * a2 - a3
    return A3 - lam * A2 * A2


def prefix_values(kind, s: float, spec: FunctionalSpec, w1, xi, zeta):
    """Functional modulus straight from prefix parameters (vectorized)."""
    if spec.functional == "coeff" and spec.n > 4:
        raise ParameterError("prefix parameters only determine a_2 .. a_4")
    a2, a3, a4 = prefix_coefficients(kind, s, w1, schwarz_w2(w1, xi), schwarz_w3(w1, xi, zeta))
    return abs(_raw_from_coefficients(spec, a2, a3, a4))


def prefix_functional(kind, s: float, prefix: SchwarzPrefix, spec: FunctionalSpec) -> float:
    return float(prefix_values(kind, s, spec, prefix.w1, prefix.xi, prefix.zeta))


# ---------------------------------------------------------------------------
# named families


def schwarz_x_family_jet(x: float, sign: int, order: int) -> TruncatedSeries:
    """Jet of ``sign * z (z + x) / (1 + x z)``."""
    z = TruncatedSeries.identity(order)
    num = mul(z, z + x)
    return div(num, TruncatedSeries.from_coeffs([1.0, x], order)) * float(sign)


_FAMILIES = {
    "f_x": (Kind.STARLIKE, -1),
    "g_x": (Kind.STARLIKE, 1),
    "F_x": (Kind.CONVEX, -1),
    "G_x": (Kind.CONVEX, 1),
}


def rotation_family(which: str, s: float, x: float, order: int = 32) -> ClassMember:
    """Members generated by ``omega = -/+ z (z + x)/(1 + x z)``.

    ``f_x``/``F_x`` take the minus sign, ``g_x``/``G_x`` the plus sign; the
    upper-case families are convex.
    """
    if which not in _FAMILIES:
        raise ParameterError(f"unknown family {which!r}")
    if not (0.0 <= x <= 1.0):
        raise XOutOfRange(f"x must lie in [0, 1], got {x}")
    kind, sign = _FAMILIES[which]
    return member_from_schwarz(kind, s, schwarz_x_family_jet(x, sign, order), order)


def blaschke_factor_jet(x: complex, order: int) -> TruncatedSeries:
    """Jet of ``(z + x) / (1 + conj(x) z)``: ``x, (1-|x|^2), -(1-|x|^2) conj(x), ...``."""
    c = np.zeros(order + 1, dtype=complex)
    c[0] = x
    if order >= 1:
        c[1:] = (1 - abs(x) ** 2) * (-np.conj(x)) ** np.arange(order)
    return TruncatedSeries(c)


def blaschke_omega(c: complex, zeros: Sequence[complex], order: int) -> TruncatedSeries:
    c = _check_disk("c", c)
    if len(zeros) > 3:
        raise ParamOutOfDisk("at most three Blaschke zeros are supported")
    omega = TruncatedSeries.monomial(1, order, c)
    for x in zeros:
        omega = mul(omega, blaschke_factor_jet(_check_disk("zero", x, strict=True), order))
    return omega


def blaschke_member(kind, s: float, c: complex, zeros: Sequence[complex] = (), order: int = 32) -> ClassMember:
    """Member generated by ``omega = c z prod (z + x_i)/(1 + conj(x_i) z)``."""
    return member_from_schwarz(kind, s, blaschke_omega(c, zeros, order), order)


def _candidate_prefixes(kind) -> List[Tuple[str, complex, complex, complex]]:
    star = Kind(kind) is Kind.STARLIKE
    one, two = ("Phi_{s,1}", "Phi_{s,2}") if star else ("K_{s,1}", "K_{s,2}")
    plus, minus = ("g_x", "f_x") if star else ("G_x", "F_x")
    out = []
    for j in range(PHASES):
        mu = complex(math.cos(2 * math.pi * j / PHASES), math.sin(2 * math.pi * j / PHASES))
        out.append((one, mu, 0j, 0j))
        out.append((two, 0j, mu * mu, 0j))
    for x in np.linspace(0.0, 1.0, X_POINTS):
        out.append((plus, complex(x), 1 + 0j, 0j))
        out.append((minus, complex(-x), -1 + 0j, 0j))
    return out


def _candidate_blaschke(kind) -> List[Tuple[str, complex, Tuple[complex, ...]]]:
    star = Kind(kind) is Kind.STARLIKE
    one, two = ("Phi_{s,1}", "Phi_{s,2}") if star else ("K_{s,1}", "K_{s,2}")
    plus, minus = ("g_x", "f_x") if star else ("G_x", "F_x")
    out = []
    for j in range(PHASES):
        mu = complex(math.cos(2 * math.pi * j / PHASES), math.sin(2 * math.pi * j / PHASES))
        out.append((one, mu, ()))
        out.append((two, mu, (0j,)))
    # x = 1 degenerates to omega = +-z, already covered above
    for x in np.linspace(0.0, 1.0, X_POINTS)[:-1]:
        out.append((plus, 1 + 0j, (complex(x),)))
        out.append((minus, -1 + 0j, (complex(x),)))
    return out


# ---------------------------------------------------------------------------
# batched Blaschke coefficients


def _batch_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[1]
    out = np.zeros_like(a)
    for i in range(n):
        out[:, i:] += a[:, i : i + 1] * b[:, : n - i]
    return out


def batch_blaschke_coefficients(kind, s: float, c: np.ndarray, zeros: np.ndarray,
                                active: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients ``a_0 .. a_order`` for a batch of Blaschke members.

    ``zeros`` has shape ``(B, 3)``; factors whose ``active`` flag is false are
    replaced by 1.
    """
    B = c.shape[0]
    n1 = order + 1
    omega = np.zeros((B, n1), dtype=complex)
    omega[:, 1] = c
    k = np.arange(order)
    for j in range(zeros.shape[1]):
        x = zeros[:, j]
        fac = np.zeros((B, n1), dtype=complex)
        fac[:, 0] = x
        fac[:, 1:] = (1 - np.abs(x) ** 2)[:, None] * (-np.conj(x))[:, None] ** k[None, :]
        idle = ~active[:, j]
        fac[idle] = 0
        fac[idle, 0] = 1
        omega = _batch_mul(omega, fac)
    q = np.empty(n1)
    q[0] = 1.0
    for m in range(1, n1):
        q[m] = q[m - 1] * (s + m - 1) / m
    p = np.zeros((B, n1), dtype=complex)
    p[:, 0] = q[order]
    for m in range(order - 1, -1, -1):
        p = _batch_mul(p, omega)
        p[:, 0] += q[m]
    a = np.zeros((B, n1), dtype=complex)
    a[:, 1] = 1.0
    for m in range(2, n1):
        a[:, m] = np.einsum("bk,bk->b", p[:, m - 1 : 0 : -1], a[:, 1:m]) / (m - 1)
    if Kind(kind) is Kind.CONVEX:
        a[:, 1:] /= np.arange(1, n1)
    return a


# ---------------------------------------------------------------------------
# golden-section refinement


def golden_section_max(fn: Callable[[float], float], lo: float, hi: float, steps: int) -> Tuple[float, float]:
    """Maximize ``fn`` on ``[lo, hi]`` with ``steps`` golden-section reductions."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(steps):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def coordinate_refine(fn: Callable[[np.ndarray], float], x0: np.ndarray,
                      boxes: Callable[[int, np.ndarray], Tuple[float, float]],
                      steps: int, sweeps: int) -> Tuple[np.ndarray, float]:
    """Coordinate-wise golden-section ascent; never returns a worse point."""
    x = np.array(x0, dtype=float)
    best = fn(x)
    for _ in range(sweeps):
        for i in range(x.size):
            lo, hi = boxes(i, x)

            def line(t, i=i):
                y = x.copy()
                y[i] = t
                return fn(y)

            t, ft = golden_section_max(line, lo, hi, steps)
            if ft > best:
                x[i] = t
                best = ft
    return x, best


def _polar_boxes(radius_max: float):
    def boxes(i, x):
        if i % 2 == 0:
            return 0.0, radius_max
        return x[i] - math.pi, x[i] + math.pi

    return boxes


def _from_polar(v: np.ndarray) -> List[complex]:
    return [complex(v[i] * math.cos(v[i + 1]), v[i] * math.sin(v[i + 1])) for i in range(0, v.size, 2)]


def _to_polar(zs: Sequence[complex]) -> np.ndarray:
    out = []
    for z in zs:
        out += [abs(z), math.atan2(z.imag, z.real)]
    return np.array(out)


def _disk_samples(rng: np.random.Generator, shape) -> np.ndarray:
    r = np.sqrt(rng.random(shape))
    theta = 2 * math.pi * rng.random(shape)
    return r * np.exp(1j * theta)


# ---------------------------------------------------------------------------
# campaigns


@dataclass(frozen=True)
class CampaignConfig:
    functional: str
    kind: Kind
    s_grid: Tuple[float, ...]
    target: Target = Target.F
    lambda_grid: Optional[Tuple[float, ...]] = None
    n_grid: Optional[Tuple[int, ...]] = None
    samples: int = 10_000
    refine_steps: int = 40
    sweeps: int = 2
    seed: int = 0
    tol_attain: float = 1e-3
    tol_violate: float = 1e-9

    def __post_init__(self):
        if self.functional not in FUNCTIONALS:
            raise ConfigInvalid(f"unknown functional {self.functional!r}")
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
            object.__setattr__(self, "target", as_target(self.target))
            for s in self.s_grid:
                check_s(s)
        except (ValueError, ParameterError) as exc:
            raise ConfigInvalid(str(exc)) from exc
        object.__setattr__(self, "s_grid", tuple(float(s) for s in self.s_grid))
        if not self.s_grid:
            raise ConfigInvalid("the s grid is empty")
        if self.functional == "fs":
            if not self.lambda_grid:
                raise ConfigInvalid("Fekete-Szego campaigns need a non-empty lambda grid")
            object.__setattr__(self, "lambda_grid", tuple(float(v) for v in self.lambda_grid))
        if self.functional == "coeff":
            grid = tuple(int(n) for n in (self.n_grid or range(2, 11)))
            if not grid or min(grid) < 2:
                raise ConfigInvalid("coefficient campaigns need indices n >= 2")
            object.__setattr__(self, "n_grid", grid)
        if self.samples < 1:
            raise ConfigInvalid("samples must be >= 1")
        if self.refine_steps < 0 or self.sweeps < 0:
            raise ConfigInvalid("refinement counts must be non-negative")
        if not (self.tol_attain > 0 and self.tol_violate > 0):
            raise ConfigInvalid("tolerances must be positive")
        if not (0 <= self.seed < 2**64):
            raise ConfigInvalid("seed must be a 64-bit unsigned integer")

    def grid(self) -> List[Tuple[float, Optional[float], Optional[int]]]:
        pts = []
        for s in self.s_grid:
            if self.functional == "fs":
                pts += [(s, lam, None) for lam in self.lambda_grid]
            elif self.functional == "coeff":
                pts += [(s, None, n) for n in self.n_grid]
            else:
                pts.append((s, None, None))
        return pts


@dataclass(frozen=True)
class GridRecord:
    s: float
    lam: Optional[float]
    n: Optional[int]
    bound: BoundResult
    sup_found: float
    gap: float
    violated: bool
    attained: bool
    candidate_sup: float
    search_sup: float
    argmax_source: str
    argmax: Dict[str, Any]


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: List[GridRecord]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def any_violated(self) -> bool:
        return any(r.violated for r in self.records)


def grid_rng(seed: int, index: int) -> np.random.Generator:
    """Private stream for one grid point, independent of execution order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _bound_for(cfg: CampaignConfig, s: float, lam, n) -> BoundResult:
    if cfg.functional == "fs":
        return fs_bound(cfg.kind, cfg.target, s, lam)
    if cfg.functional == "hankel22":
        return hankel22_bound(cfg.kind, s)
    return coeff_bound(cfg.kind, s, n)


def _search_prefix(cfg: CampaignConfig, s: float, spec: FunctionalSpec, rng: np.random.Generator):
    cands = _candidate_prefixes(cfg.kind)
    cw = np.array([c[1:] for c in cands]).T
    cvals = prefix_values(cfg.kind, s, spec, cw[0], cw[1], cw[2])
    ci = int(np.argmax(cvals))
    cand_best, cand_label = float(cvals[ci]), cands[ci][0]
    cand_arg = SchwarzPrefix(*cands[ci][1:]).as_dict()

    w = _disk_samples(rng, (3, cfg.samples))
    vals = prefix_values(cfg.kind, s, spec, w[0], w[1], w[2])
    ri = int(np.argmax(vals))

    def obj(v):
        w1, xi, zeta = _from_polar(v)
        return float(prefix_values(cfg.kind, s, spec, w1, xi, zeta))

    x, search_best = coordinate_refine(obj, _to_polar(w[:, ri]), _polar_boxes(1.0), cfg.refine_steps, cfg.sweeps)
    w1, xi, zeta = _from_polar(x)
    search_arg = {"w1": w1, "xi": xi, "zeta": zeta}
    return cand_best, cand_label, cand_arg, search_best, search_arg


def _search_blaschke(cfg: CampaignConfig, s: float, n: int, rng: np.random.Generator):
    cands = _candidate_blaschke(cfg.kind)
    cc = np.array([c[1] for c in cands])
    cz = np.zeros((len(cands), 3), dtype=complex)
    ca = np.zeros((len(cands), 3), dtype=bool)
    for i, (_, _, zs) in enumerate(cands):
        cz[i, : len(zs)] = zs
        ca[i, : len(zs)] = True
    cvals = np.abs(batch_blaschke_coefficients(cfg.kind, s, cc, cz, ca, n)[:, n])
    ci = int(np.argmax(cvals))
    cand_best, cand_label = float(cvals[ci]), cands[ci][0]
    cand_arg = {"c": complex(cc[ci]), "zeros": list(cands[ci][2])}

    c = _disk_samples(rng, cfg.samples)
    zeros = _disk_samples(rng, (cfg.samples, 3))
    counts = rng.integers(0, 4, cfg.samples)
    active = np.arange(3)[None, :] < counts[:, None]
    vals = np.abs(batch_blaschke_coefficients(cfg.kind, s, c, zeros, active, n)[:, n])
    ri = int(np.argmax(vals))
    k = int(counts[ri])

    def obj(v):
        pts = _from_polar(v)
        z = np.zeros((1, 3), dtype=complex)
        z[0, :k] = pts[1:]
        act = np.arange(3)[None, :] < k
        return float(abs(batch_blaschke_coefficients(cfg.kind, s, np.array([pts[0]]), z, act, n)[0, n]))

    x0 = _to_polar([c[ri], *zeros[ri, :k]])
    radius_cap = 1.0 - 1e-9

    def boxes(i, x):
        if i % 2 == 0:
            return 0.0, 1.0 if i == 0 else radius_cap
        return x[i] - math.pi, x[i] + math.pi

    x, search_best = coordinate_refine(obj, x0, boxes, cfg.refine_steps, cfg.sweeps)
    pts = _from_polar(x)
    search_arg = {"c": pts[0], "zeros": pts[1:]}
    return cand_best, cand_label, cand_arg, search_best, search_arg


def run_grid_point(cfg: CampaignConfig, index: int) -> GridRecord:
    s, lam, n = cfg.grid()[index]
    bound = _bound_for(cfg, s, lam, n)
    rng = grid_rng(cfg.seed, index)
    if cfg.functional == "coeff":
        cand_best, label, cand_arg, search_best, search_arg = _search_blaschke(cfg, s, n, rng)
    else:
        spec = FunctionalSpec(cfg.functional, cfg.target, lam)
        cand_best, label, cand_arg, search_best, search_arg = _search_prefix(cfg, s, spec, rng)
    if cand_best >= search_best:
        sup, source, arg = cand_best, f"candidate:{label}", cand_arg
    else:
        sup, source, arg = search_best, "search", search_arg
    gap = bound.value - sup
    return GridRecord(
        s=s, lam=lam, n=n, bound=bound, sup_found=sup, gap=gap,
        violated=sup > bound.value + cfg.tol_violate,
        attained=gap <= cfg.tol_attain,
        candidate_sup=cand_best, search_sup=search_best,
        argmax_source=source, argmax=arg,
    )


def _run_indices(args):
    cfg, indices = args
    return [run_grid_point(cfg, i) for i in indices]


def run_campaign(cfg: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Run every grid point of ``cfg``; the report depends only on ``cfg``."""
    t0 = time.perf_counter()
    npts = len(cfg.grid())
    if workers <= 1 or npts < 2:
        records = [run_grid_point(cfg, i) for i in range(npts)]
    else:
        chunks = [list(range(i, npts, workers)) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_indices, [(cfg, ch) for ch in chunks]))
        by_index = {}
        for ch, recs in zip(chunks, parts):
            by_index.update(zip(ch, recs))
        records = [by_index[i] for i in range(npts)]
    return CampaignReport(cfg, records, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# growth order


def growth_sequence(kind, s: float, order: int = 256, lo: int = 64, hi: int = 256) -> np.ndarray:
    """``n |a_n|`` (starlike, ``Phi_s``) or ``n^2 |d_n|`` (convex, ``K_s``) for ``lo <= n <= hi``."""
    params = ClassParams(s, 1, order)
    kind = Kind(kind)
    m = phi_extremal(params) if kind is Kind.STARLIKE else k_extremal(params)
    n = np.arange(lo, hi + 1)
    weight = n if kind is Kind.STARLIKE else n.astype(float) ** 2
    return weight * np.abs(m.f.coeffs[lo : hi + 1])


def is_non_increasing(seq: np.ndarray, rtol: float = 0.0) -> bool:
    return bool(np.all(np.diff(seq) <= rtol * np.abs(seq[:-1])))
