import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from hyperbola_coeffs.errors import (
    InnerConstantNonzero,
    NonFiniteCoefficient,
    NotNormalized,
    NotUnitConstantTerm,
    OutsideDisk,
    ZeroConstantTerm,
)
from hyperbola_coeffs.series import (
    TruncatedSeries as T,
    compose,
    div,
    evaluate,
    exp_series,
    log_series,
    mul,
    pow_real,
    revert,
)

from oracles import lagrange_inverse, naive_div, pochhammer_over_factorial


def geometric(order):
    return T(np.ones(order + 1))


def test_mul_difference_of_squares():
    r = mul(T([1, 1, 0, 0]), T([1, -1, 0, 0]))
    np.testing.assert_allclose(r.coeffs, [1, 0, -1, 0])


def test_mul_geometric_times_one_minus_z():
    r = mul(geometric(10), T.from_coeffs([1, -1], 10))
    np.testing.assert_allclose(r.coeffs, [1] + [0] * 10, atol=1e-15)


def test_mul_square_of_half_power_is_geometric():
    q_half = T([pochhammer_over_factorial(0.5, k) for k in range(21)])
    np.testing.assert_allclose(mul(q_half, q_half).coeffs, np.ones(21), atol=1e-13)


def test_binary_ops_truncate_to_smaller_order():
    assert mul(T.from_coeffs([1, 1], 8), T.from_coeffs([1, 2], 3)).order == 3
    assert (T.from_coeffs([1], 2) + T.from_coeffs([1], 5)).order == 2


def test_div_geometric():
    np.testing.assert_allclose(div(T.constant(1, 12), T.from_coeffs([1, -1], 12)).coeffs, np.ones(13))


def test_div_identity_divisor():
    np.testing.assert_allclose(div(T([1, 1]), T([1, 0])).coeffs, [1, 1])


def test_div_matches_long_division_on_phi_half():
    # 1 / (1 + 0.5 z + 0.3125 z^2 + 0.21875 z^3)
    b = [1, 0.5, 0.3125, 0.21875]
    expected = naive_div([1, 0, 0, 0], b, 3)
    got = div(T.constant(1, 3), T(b)).coeffs
    np.testing.assert_allclose(got, expected, atol=1e-15)
    assert got[1] == pytest.approx(-0.5) and got[2] == pytest.approx(-0.0625)


def test_div_rejects_small_pivot():
    with pytest.raises(ZeroConstantTerm):
        div(T([1, 1]), T([1e-13, 1]))


def test_compose_examples():
    np.testing.assert_allclose(compose(T.from_coeffs([1, 1], 4), T.monomial(2, 4)).coeffs, [1, 0, 1, 0, 0])
    q = T([pochhammer_over_factorial(0.5, k) for k in range(9)])
    r = compose(q, T.monomial(2, 8)).coeffs
    np.testing.assert_allclose(r[1::2], 0)
    np.testing.assert_allclose(r[::2], q.coeffs[:5])
    ex = exp_series(T.identity(10))
    np.testing.assert_allclose(compose(ex, log_series(T.from_coeffs([1, 1], 10))).coeffs,
                               [1, 1] + [0] * 9, atol=1e-14)


def test_compose_rejects_constant_inner():
    with pytest.raises(InnerConstantNonzero):
        compose(T([1, 1]), T([0.5, 1]))


def test_pow_real_half_matches_pochhammer():
    r = pow_real(T.from_coeffs([1, -1], 4), -0.5).coeffs.real
    np.testing.assert_allclose(r, [1, 0.5, 0.375, 0.3125, 0.2734375], rtol=1e-15)


def test_pow_real_minus_one_is_geometric():
    np.testing.assert_allclose(pow_real(T.from_coeffs([1, -1], 16), -1).coeffs, np.ones(17), atol=1e-14)


def test_log_one_plus_z():
    k = np.arange(1, 12)
    np.testing.assert_allclose(log_series(T.from_coeffs([1, 1], 11)).coeffs[1:], (-1.0) ** (k + 1) / k)


def test_log_and_pow_need_unit_constant():
    with pytest.raises(NotUnitConstantTerm):
        log_series(T([2, 1]))
    with pytest.raises(NotUnitConstantTerm):
        pow_real(T([0.5, 1]), 0.3)


def test_revert_identity():
    np.testing.assert_allclose(revert(T.identity(6)).coeffs, T.identity(6).coeffs)


def test_revert_z_plus_z2_matches_lagrange():
    f = T.from_coeffs([0, 1, 1], 8)
    expected = lagrange_inverse([0, 1, 1, 0, 0, 0, 0, 0, 0], 8)
    np.testing.assert_allclose(revert(f).coeffs, expected, atol=1e-12)
    np.testing.assert_allclose(revert(f).coeffs[:5], [0, 1, -1, 2, -5])


def test_revert_koebe_like():
    f = T([0] + [1] * 12)  # z/(1-z)
    k = np.arange(1, 13)
    np.testing.assert_allclose(revert(f).coeffs[1:], (-1.0) ** (k + 1), atol=1e-12)


def test_revert_needs_normalization():
    with pytest.raises(NotNormalized):
        revert(T([0, 2, 1]))
    with pytest.raises(NotNormalized):
        revert(T([0.1, 1, 1]))


def test_revert_closed_forms():
    rng = np.random.default_rng(3)
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    f = T.from_coeffs([0, 1, a[0], a[1], a[2]], 10)
    A = revert(f).coeffs
    a2, a3, a4 = a[:3]
    assert abs(A[2] + a2) < 1e-10
    assert abs(A[3] - (2 * a2**2 - a3)) < 1e-10
    assert abs(A[4] + (5 * a2**3 - 5 * a2 * a3 + a4)) < 1e-10


def test_evaluate():
    assert evaluate(geometric(8), 0).value == 1
    q = pow_real(T.from_coeffs([1, -1], 64), -0.5)
    ev = evaluate(q, 0.5)
    assert abs(ev.value - 2**0.5) < 1e-8 and ev.reliable
    assert evaluate(T.identity(5), 0.3j).value == pytest.approx(0.3j)
    with pytest.raises(OutsideDisk):
        evaluate(q, 1.0)


def test_evaluate_flags_unreliable_tail():
    ev = evaluate(geometric(8), 0.9, tail_tol=1e-6)
    assert not ev.reliable and ev.tail_bound > 1e-6


def test_non_finite_rejected():
    with pytest.raises(NonFiniteCoefficient):
        T([1, np.nan])


def test_jets_are_immutable():
    a = T([1, 2, 3])
    with pytest.raises(ValueError):
        a.coeffs[0] = 5


@pytest.mark.parametrize("s", [0.1, 0.25, 0.5, 0.75, 1.0])
def test_pow_real_pochhammer_exact(s):
    got = pow_real(T.from_coeffs([1, -1], 64), -s).coeffs
    expected = np.array([pochhammer_over_factorial(s, n) for n in range(65)])
    assert np.max(np.abs(got.imag)) == 0
    np.testing.assert_allclose(got.real, expected, rtol=1e-13, atol=0)


# --- properties ---------------------------------------------------------

unit_box = st.floats(-1, 1, allow_nan=False, allow_infinity=False)


def jets(order=None, unit_constant=False, normalized=False):
    @st.composite
    def build(draw):
        n = order if order is not None else draw(st.integers(1, 16))
        re = draw(arrays(float, n + 1, elements=unit_box))
        im = draw(arrays(float, n + 1, elements=unit_box))
        c = re + 1j * im
        if unit_constant:
            c[0] = 1.0
        if normalized:
            c[0], c[1] = 0.0, 1.0
        return T(c)

    return build()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: st.tuples(jets(n), jets(n), jets(n))))
def test_ring_axioms(abc):
    a, b, c = abc
    assert mul(a, b).max_abs_diff(mul(b, a)) < 1e-12
    assert mul(mul(a, b), c).max_abs_diff(mul(a, mul(b, c))) < 1e-12
    assert mul(a, b + c).max_abs_diff(mul(a, b) + mul(a, c)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(jets(unit_constant=True), st.floats(-2, 2), st.floats(-2, 2))
def test_exp_log_and_power_laws(a, alpha, beta):
    assert exp_series(log_series(a)).max_abs_diff(a) < 1e-11
    # a may vanish near the origin, so powers can carry coefficients ~1e7
    lhs = mul(pow_real(a, alpha), pow_real(a, beta))
    rhs = pow_real(a, alpha + beta)
    scale = max(1.0, float(np.max(np.abs(rhs.coeffs))))
    assert lhs.max_abs_diff(rhs) < 1e-11 * scale


@st.composite
def normalized_jets(draw):
    # modulus <= 1; past order ~10 the inverse coefficients outgrow double precision
    n = draw(st.integers(2, 10))
    r = draw(arrays(float, n - 1, elements=st.floats(0, 1)))
    t = draw(arrays(float, n - 1, elements=st.floats(-np.pi, np.pi)))
    return T(np.concatenate([[0, 1], r * np.exp(1j * t)]))


@settings(max_examples=80, deadline=None)
@given(normalized_jets())
def test_revert_is_inverse(f):
    g = revert(f)
    assert compose(g, f).max_abs_diff(T.identity(f.order)) < 1e-10
    assert compose(f, g).max_abs_diff(T.identity(f.order)) < 1e-10
