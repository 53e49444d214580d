"""Truncated complex power series (jets).

A :class:`TruncatedSeries` holds the coefficients ``c_0 .. c_N`` of a power
series known through ``z**N``.  Every operation is a pure function returning a
new jet; binary operations truncate to the smaller order of their operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    InnerConstantNonzero,
    NonFiniteCoefficient,
    NotNormalized,
    NotUnitConstantTerm,
    OutsideDisk,
    ZeroConstantTerm,
)

DEFAULT_ORDER = 32
MAX_ORDER = 512
PIVOT_TOL = 1e-12
INNER_CONST_TOL = 1e-14
UNIT_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Immutable jet ``c_0 + c_1 z + ... + c_N z**N`` with complex coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, copy=True).reshape(-1)
        if c.size == 0:
            raise ValueError("a jet needs at least the constant coefficient")
        if not np.all(np.isfinite(c)):
            raise NonFiniteCoefficient("non-finite coefficient in jet")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], order: int | None = None) -> TruncatedSeries:
        """Build a jet, zero-padding or truncating ``coeffs`` to ``order``."""
        c = np.asarray(coeffs, dtype=complex).reshape(-1)
        if order is None:
            return cls(c)
        out = np.zeros(order + 1, dtype=complex)
        m = min(order + 1, c.size)
        out[:m] = c[:m]
        return cls(out)

    @classmethod
    def constant(cls, value: complex, order: int) -> TruncatedSeries:
        return cls.from_coeffs([value], order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff: complex = 1.0) -> TruncatedSeries:
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = coeff
        return cls(c)

    @classmethod
    def identity(cls, order: int) -> TruncatedSeries:
        """The jet of ``z``."""
        return cls.monomial(1, order)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.coeffs, order)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order) + 1
            return TruncatedSeries(self.coeffs[:n] + other.coeffs[:n])
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self.coeffs / other)

    def derivative(self) -> TruncatedSeries:
        """Jet of the derivative; known through order ``N - 1``."""
        if self.order == 0:
            return TruncatedSeries([0.0])
        k = np.arange(1, self.order + 1)
        return TruncatedSeries(self.coeffs[1:] * k)

    def times_z(self) -> TruncatedSeries:
        """Multiply by ``z``; exact, so the order grows by one."""
        return TruncatedSeries(np.concatenate([[0.0], self.coeffs]))

    def over_z(self) -> TruncatedSeries:
        """Divide by ``z``; requires a vanishing constant term."""
        if abs(self.coeffs[0]) > INNER_CONST_TOL:
            raise InnerConstantNonzero("cannot strip z from a jet with nonzero constant term")
        if self.order == 0:
            return TruncatedSeries([0.0])
        return TruncatedSeries(self.coeffs[1:])

    def max_abs_diff(self, other: TruncatedSeries) -> float:
        n = min(self.order, other.order) + 1
        return float(np.max(np.abs(self.coeffs[:n] - other.coeffs[:n])))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    return TruncatedSeries(np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1])


def div(a: TruncatedSeries, b: TruncatedSeries, pivot_tol: float = PIVOT_TOL) -> TruncatedSeries:
    """Quotient ``a / b`` by forward substitution; ``b_0`` must be a usable pivot."""
    b0 = b.coeffs[0]
    if abs(b0) <= pivot_tol:
        raise ZeroConstantTerm(f"|b_0| = {abs(b0):.3g} is below the pivot tolerance {pivot_tol:g}")
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    c = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        c[k] = (ac[k] - np.dot(bc[1 : k + 1], c[k - 1 :: -1][:k])) / b0
    return TruncatedSeries(c)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``outer(inner(z))`` by Horner's scheme; ``inner`` must vanish at 0."""
    if abs(inner.coeffs[0]) > INNER_CONST_TOL:
        raise InnerConstantNonzero(f"inner constant term {inner.coeffs[0]!r} is not zero")
    n = min(outer.order, inner.order)
    g = inner.coeffs[: n + 1].copy()
    g[0] = 0.0
    acc = np.zeros(n + 1, dtype=complex)
    acc[0] = outer.coeffs[n]
    for k in range(n - 1, -1, -1):
        acc = np.convolve(acc, g)[: n + 1]
        acc[0] += outer.coeffs[k]
    return TruncatedSeries(acc)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """Jet of ``exp(a)`` from the recurrence ``n b_n = sum_k k a_k b_{n-k}``."""
    n = a.order
    ka = a.coeffs * np.arange(n + 1)
    b = np.zeros(n + 1, dtype=complex)
    b[0] = np.exp(a.coeffs[0])
    for m in range(1, n + 1):
        b[m] = np.dot(ka[1 : m + 1], b[m - 1 :: -1][:m]) / m
    return TruncatedSeries(b)


def _require_unit(a: TruncatedSeries, what: str) -> None:
    if abs(a.coeffs[0] - 1.0) > UNIT_TOL:
        raise NotUnitConstantTerm(f"{what} needs constant term 1, got {a.coeffs[0]!r}")


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """Principal-branch jet of ``log(a)`` for ``a_0 = 1``."""
    _require_unit(a, "log_series")
    n = a.order
    ac = a.coeffs
    b = np.zeros(n + 1, dtype=complex)
    kb = np.zeros(n + 1, dtype=complex)
    for m in range(1, n + 1):
        # a * b' = a'  =>  m b_m = m a_m - sum_{k<m} k b_k a_{m-k}
        s = np.dot(kb[1:m], ac[m - 1 : 0 : -1]) if m > 1 else 0.0
        b[m] = (m * ac[m] - s) / m
        kb[m] = m * b[m]
    return TruncatedSeries(b)


def pow_real(a: TruncatedSeries, alpha: float) -> TruncatedSeries:
    """Principal power ``a**alpha`` as ``exp(alpha * log(a))``; needs ``a_0 = 1``."""
    _require_unit(a, "pow_real")
    return exp_series(log_series(a) * float(alpha))


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a normalized jet ``f = z + f_2 z^2 + ...``.

    Newton iteration ``g <- g - (f(g) - w) / f'(g)``; each step doubles the
    number of correct coefficients, and one extra pass absorbs rounding.
    """
    c = f.coeffs
    if f.order < 1 or abs(c[0]) > INNER_CONST_TOL or abs(c[1] - 1.0) > UNIT_TOL:
        raise NotNormalized("revert needs f_0 = 0 and f_1 = 1")
    n = f.order
    fc = c.copy()
    fc[0], fc[1] = 0.0, 1.0
    fn = TruncatedSeries(fc)
    dfn = TruncatedSeries.from_coeffs(fn.derivative().coeffs, n)
    w = TruncatedSeries.identity(n)
    g = w
    for _ in range(math.ceil(math.log2(n + 1)) + 1):
        g = g - div(compose(fn, g) - w, compose(dfn, g))
    return g


class Evaluation(NamedTuple):
    value: complex
    tail_bound: float
    reliable: bool


def evaluate(a: TruncatedSeries, z: complex, tail_tol: float = 1e-10) -> Evaluation:
    """Horner evaluation with a crude bound on the neglected tail.

    The tail is estimated from the largest modulus among the top eighth of
    the retained coefficients, treated as a geometric majorant.
    """
    r = abs(z)
    if r >= 1.0:
        raise OutsideDisk(f"|z| = {r} is not inside the unit disk")
    value = complex(np.polyval(a.coeffs[::-1], z))
    n = a.order
    window = max(1, (n + 1) // 8)
    cmax = float(np.max(np.abs(a.coeffs[n + 1 - window :])))
    tail = cmax * r ** (n + 1) / (1.0 - r)
    return Evaluation(value, tail, tail <= tail_tol)


def pochhammer_ratio(s: float, n: int) -> float:
    """``(s)_n / n!`` by the running product ``q_k = q_{k-1} (s + k - 1) / k``."""
    q = 1.0
    for k in range(1, n + 1):
        q *= (s + k - 1) / k
    return q

