from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

import sixvertex  # noqa: F401  (sets the default precision)
from sixvertex.errors import InexactDivision, SingularJetDivision
from sixvertex.homogeneous import h2_jet, h2_numerator_factors
from sixvertex.jets import BiJet, UniJet, jet_add, jet_div, jet_mul, jet_pow, jet_sin_affine
from sixvertex.linalg import det, laplace_two_columns, matmul, two_column_minors
from sixvertex.params import WeightParams
from sixvertex.polys import DensePoly, poly_divide_exact, u_minus_v
from sixvertex.scalar import Angle, precision, tolerance

small = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)


def close(x, y, tol):
    return abs(mpf(x) - mpf(y)) <= tol


# --- angles and precision -----------------------------------------------


@pytest.mark.parametrize("token", ["pi/2", "pi/6", "2pi/3", "-pi", "0.9", "1.25e-1"])
def test_angle_round_trip(token):
    a = Angle.parse(token)
    assert Angle.parse(str(a)) == a


def test_angle_exact_pi_multiple():
    assert Angle.parse("pi/6").value == mp.pi / 6
    assert Angle.parse("pi/2").reflected() == Angle.parse("pi/2")


@pytest.mark.parametrize("bad", ["", "pi/0", "abc", "1..2"])
def test_angle_rejects_garbage(bad):
    with pytest.raises(ValueError):
        Angle.parse(bad)


def test_precision_context_restores():
    before = mp.prec
    with precision(512):
        assert mp.prec == 512
    assert mp.prec == before == 256


def test_tolerance_scaling():
    assert tolerance(3, 256) == mpf(2) ** -128 * 9


# --- univariate jets -----------------------------------------------------


def test_sin_jet_at_zero():
    assert jet_sin_affine(0, 2).coeffs == (0, 1, 0)


def test_sin_jet_at_half_pi():
    j = jet_sin_affine(mp.pi / 2, 2)
    assert close(j[0], 1, 1e-70) and close(j[1], 0, 1e-70) and close(j[2], mpf(-1) / 2, 1e-70)


def test_sin_jet_matches_finite_differences():
    j = jet_sin_affine(mpf("0.7"), 4)
    for k in range(5):
        fd = mp.diff(mp.sin, mpf("0.7"), k)
        assert close(j.derivative(k), fd, mpf(10) ** -50)


def test_ring_examples():
    one = UniJet.constant(mpf(1), 2)
    e = UniJet.variable(2)
    assert jet_mul(one + e, one - e).coeffs == (1, 0, -1)
    assert jet_pow(jet_sin_affine(0, 3), 2).coeffs == (0, 0, 1, 0)
    assert jet_add(one, e).coeffs == (1, 1, 0)


def test_geometric_series_division():
    one = UniJet.constant(mpf(1), 3)
    assert jet_div(one, one - UniJet.variable(3)).coeffs == (1, 1, 1, 1)


def test_division_removes_common_zero():
    s = jet_sin_affine(0, 4)
    q = jet_div(s, s)
    # one order is consumed by the common factor e
    assert q.order == 3 and close(q[0], 1, 1e-70) and all(abs(c) < 1e-70 for c in q.coeffs[1:])


def test_singular_division_raises():
    with pytest.raises(SingularJetDivision):
        jet_div(UniJet.constant(mpf(1), 2), jet_sin_affine(0, 2))


@given(small, small, st.integers(0, 5))
def test_product_jet_matches_finite_differences(x, y, order):
    f = lambda e: mp.sin(e + x) * mp.sin(e + y) ** 2 / mp.sin(e + 3)  # noqa: E731
    j = jet_sin_affine(mpf(x), order) * jet_sin_affine(mpf(y), order) ** 2 / jet_sin_affine(mpf(3), order)
    for k in range(order + 1):
        assert close(j.derivative(k), mp.diff(f, 0, k), mpf(10) ** -40)


@given(small, st.integers(0, 6))
def test_derivative_factorial_contract(x, order):
    j = jet_sin_affine(mpf(x), order)
    for k in range(order + 1):
        assert j.derivative(k) == j[k] * __import__("math").factorial(k)


def test_polynomial_derivative_operator():
    j = jet_sin_affine(mpf("0.3"), 3)
    # (1 + 2x^2)(d/de) sin(e + 0.3) at 0 = sin(0.3) - 2 sin(0.3)
    assert close(j.apply_polynomial_derivative([1, 0, 2]), -mp.sin(mpf("0.3")), 1e-70)


# --- bivariate jets --------------------------------------------------------


def test_cross_denominator_matches_finite_differences():
    eta = mpf("0.3")
    inv = BiJet.constant(mpf(1), 3, 3) / BiJet.sin_affine(2 * eta, -1, 1, 3, 3)
    f = lambda e1, e2: 1 / mp.sin(e2 - e1 + 2 * eta)  # noqa: E731
    for i in range(4):
        for j in range(4):
            fd = mp.diff(f, (0, 0), (i, j))
            assert close(inv.derivative(i, j), fd, mpf(10) ** -40)


def test_two_point_numerator_matches_finite_differences():
    p = WeightParams.of("1.1", "0.35")
    f1, f2 = h2_numerator_factors(3, 1, 1, p)
    eta = p.eta_value
    num = BiJet.outer(f1, f2)
    f = lambda e1, e2: mp.sin(e1) ** 2 * mp.sin(e2) ** 2  # noqa: E731
    for i in range(3):
        for j in range(3):
            assert close(num.derivative(i, j), mp.diff(f, (0, 0), (i, j)), mpf(10) ** -40)
    full = h2_jet(3, 2, 3, p)
    lam = p.lam_value
    g = lambda e1, e2: (  # noqa: E731
        mp.sin(e1) * mp.sin(e1 - 2 * eta) * mp.sin(e2 + 2 * eta) ** 2
        / (mp.sin(e2 - e1 + 2 * eta) * mp.sin(e1 + lam - eta) * mp.sin(e2 + lam + eta))
    )
    for i in range(3):
        for j in range(3):
            assert close(full.derivative(i, j), mp.diff(g, (0, 0), (i, j)), mpf(10) ** -40)


# --- determinants and minors ----------------------------------------------


def test_det_small_cases():
    assert det([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 1
    assert det([[2, 3], [5, 7]]) == 2 * 7 - 3 * 5
    assert det([]) == 1


def _exact_det(m):
    if not m:
        return Fraction(1)
    return sum((-1) ** j * m[0][j] * _exact_det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


def test_hilbert_determinant():
    h = [[Fraction(1, i + j + 1) for j in range(5)] for i in range(5)]
    exact = _exact_det(h)
    assert exact == det(h)
    numeric = det([[mpf(1) / (i + j + 1) for j in range(5)] for i in range(5)])
    assert abs(numeric / (mpf(exact.numerator) / exact.denominator) - 1) < 1e-20
    assert abs(numeric - mpf("3.7493e-12")) < mpf("1e-16")


def test_two_column_minor_examples():
    assert two_column_minors([], n=2) == {(1, 2): 1}
    assert two_column_minors([[1], [2], [3]]) == {(1, 2): 3, (1, 3): 2, (2, 3): 1}


matrices = st.integers(2, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(matrices)
def test_laplace_consistency(m):
    n = len(m)
    minors = two_column_minors([row[: n - 2] for row in m], n=n)
    col_a = [row[n - 2] for row in m]
    col_b = [row[n - 1] for row in m]
    assert laplace_two_columns(minors, col_a, col_b) == det([[Fraction(x) for x in row] for row in m])


@given(st.randoms(use_true_random=False))
def test_det_multiplicative(rnd):
    a = [[mpf(rnd.uniform(-1, 1)) for _ in range(6)] for _ in range(6)]
    b = [[mpf(rnd.uniform(-1, 1)) for _ in range(6)] for _ in range(6)]
    lhs, rhs = det(matmul(a, b)), det(a) * det(b)
    assert abs(lhs - rhs) <= mpf(2) ** -(mp.prec // 4) * max(abs(rhs), 1)


# --- polynomials ------------------------------------------------------------


def test_exact_division_examples():
    u2v2 = DensePoly({(2, 0): 1, (0, 2): -1}, 2)
    assert poly_divide_exact(u2v2, u_minus_v()) == DensePoly({(1, 0): 1, (0, 1): 1}, 2)
    assert poly_divide_exact(u_minus_v(), u_minus_v()) == DensePoly({(0, 0): 1}, 2)


def test_inexact_division_reports_remainder():
    with pytest.raises(InexactDivision) as info:
        poly_divide_exact(DensePoly({(2, 0): 1, (0, 0): 1}, 2), u_minus_v())
    # u^2 + 1 = (u - v)(u + v) + v^2 + 1
    assert info.value.max_remainder == 1


def test_zero_coefficients_are_dropped():
    p = DensePoly.from_coeffs([1, 2, 0, 0])
    assert p.degree() == 1 and p.dense() == [1, 2]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_division_recovers_factor(a, b):
    p = DensePoly.from_grid([a, b])
    prod = p * u_minus_v()
    assert poly_divide_exact(prod, u_minus_v()) == p


@given(small, st.integers(1, 8))
def test_precision_monotonicity(x, n):
    # doubling the precision moves a determinant by less than the low-precision tolerance
    def run():
        m = [[mp.sin(mpf(x) + i * 0.3 + j * 0.7) + (i == j) for j in range(n)] for i in range(n)]
        return det(m)

    low = run()
    with precision(512):
        high = run()
    assert abs(high - low) <= tolerance(n, 256) * max(abs(low), 1)
