"""Coefficient functionals of class members.

Every functional is reported as a :class:`FunctionalValue` carrying the raw
complex value (whose phase locates maximizers) together with its modulus.
Sequence-valued helpers return arrays indexed by power of ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Real
from typing import Any, Mapping

import numpy as np

from .classes import ClassMember
from .errors import OrderExceeded, ParameterError
from .series import TruncatedSeries, div, log_series, mul, revert

FUNCTIONAL_NAMES = ("an", "fs", "fs_zf", "fs_inv", "hankel", "log_coeff")


@dataclass(frozen=True)
class FunctionalValue:
    name: str
    raw: complex
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FUNCTIONAL_NAMES:
            raise ParameterError(f"unknown functional name {self.name!r}")

    @property
    def value(self) -> float:
        return abs(self.raw)


def _require(m: ClassMember, needed: int) -> None:
    if needed > m.f.order:
        raise OrderExceeded(f"needs coefficients through z^{needed}, jet has order {m.f.order}")


def _real_lambda(lam) -> float:
    if isinstance(lam, complex) or not isinstance(lam, (Real, np.floating, np.integer)):
        raise ParameterError(f"lambda must be real, got {lam!r}")
    return float(lam)


def coefficient(m: ClassMember, n: int) -> complex:
    if n < 1:
        raise OrderExceeded(f"coefficient index must be >= 1, got {n}")
    _require(m, n)
    return complex(m.f.coeffs[n])


def fekete_szego(m: ClassMember, lam: float) -> FunctionalValue:
    """``a_3 - lam a_2**2`` on the stored coefficients (``d_n`` for convex members)."""
    lam = _real_lambda(lam)
    _require(m, 3)
    a = m.f.coeffs
    return FunctionalValue("fs", complex(a[3] - lam * a[2] ** 2), {"lambda": lam})


def hankel(m: ClassMember, q: int, n: int) -> FunctionalValue:
    """Hankel determinant ``H_q(n) = det[a_{n+i+j}]_{i,j<q}`` with ``a_1 = 1``."""
    if q < 1 or n < 1:
        raise OrderExceeded(f"Hankel determinant needs q, n >= 1, got q={q}, n={n}")
    _require(m, n + 2 * q - 2)
    a = np.array(m.f.coeffs, dtype=complex)
    a[1] = 1.0
    M = np.array([[a[n + i + j] for j in range(q)] for i in range(q)])
    if q == 1:
        d = M[0, 0]
    elif q == 2:
        d = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    elif q == 3:
        d = (
            M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
            - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
            + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0])
        )
    else:
        # LAPACK getrf: LU with partial pivoting
        d = np.linalg.det(M)
    return FunctionalValue("hankel", complex(d), {"q": q, "n": n})


def z_over_f_jet(m: ClassMember) -> TruncatedSeries:
    """Jet of ``z / f(z)``, known through order ``N - 1``."""
    one = TruncatedSeries.constant(1.0, m.f.order - 1)
    return div(one, m.f.over_z())


def z_over_f_coeffs(m: ClassMember, count: int) -> np.ndarray:
    """``[b_0, b_1, ..., b_count]`` of ``z / f(z) = 1 + sum b_n z**n``."""
    if count > m.f.order - 1:
        raise OrderExceeded(f"z/f is known through z^{m.f.order - 1}, asked for {count}")
    return np.array(z_over_f_jet(m).coeffs[: count + 1])


def inverse_coeffs(m: ClassMember, count: int) -> np.ndarray:
    """``[A_0, A_1, ..., A_count]`` of the inverse function ``f^{-1}(w)``."""
    _require(m, count)
    return np.array(revert(m.f).coeffs[: count + 1])


def log_coeffs(m: ClassMember, count: int) -> np.ndarray:
    """``[0, gamma_1, ..., gamma_count]`` with ``log(f/z) = 2 sum gamma_n z**n``."""
    if count > m.f.order - 1:
        raise OrderExceeded(f"log(f/z) is known through z^{m.f.order - 1}, asked for {count}")
    return np.array(log_series(m.f.over_z()).coeffs[: count + 1]) / 2.0


def fekete_szego_reciprocal(m: ClassMember, lam: float) -> FunctionalValue:
    """``b_2 - lam b_1**2`` for ``z / f``."""
    lam = _real_lambda(lam)
    b = z_over_f_coeffs(m, 2)
    return FunctionalValue("fs_zf", complex(b[2] - lam * b[1] ** 2), {"lambda": lam})


def fekete_szego_inverse(m: ClassMember, lam: float) -> FunctionalValue:
    """``A_3 - lam A_2**2`` for the inverse function."""
    lam = _real_lambda(lam)
    A = inverse_coeffs(m, 3)
    return FunctionalValue("fs_inv", complex(A[3] - lam * A[2] ** 2), {"lambda": lam})


def log_coefficient(m: ClassMember, n: int) -> FunctionalValue:
    return FunctionalValue("log_coeff", complex(log_coeffs(m, n)[n]), {"n": n})


def reciprocal_check(m: ClassMember) -> float:
    """Largest deviation of ``(z/f) * (f/z)`` from the unit jet."""
    prod = mul(z_over_f_jet(m), m.f.over_z())
    return prod.max_abs_diff(TruncatedSeries.constant(1.0, prod.order))
