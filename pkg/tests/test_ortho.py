from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

import sixvertex  # noqa: F401
from sixvertex.homogeneous import H2_hom_table, H_hom_table, phi_matrix
from sixvertex.lattice import oracle_tables, x_weighted_tables
from sixvertex.linalg import det
from sixvertex.ortho import (
    H2_identity,
    H2_identity_table,
    H2_via_omega,
    H_via_omega,
    H_via_ortho,
    build_basis,
    d1_defect,
    d2_defect,
    delta_k_polys,
    genfun_onepoint,
    genfun_twopoint,
    hankel_product_defect,
    moments,
    omega_rho_defect,
    omega_rho_jets,
    orthogonality_defect,
    parity_check,
    two_point_from_one_point,
    two_point_table_from_one_point,
    verify_genfun_identity,
)
from sixvertex.params import WeightParams
from sixvertex.scalar import tolerance

ICE = WeightParams.of("pi/2", "pi/6")
GENERIC = WeightParams.of("1.1", "0.35")
LOW = WeightParams.of("0.9", "0.3")
TWO = WeightParams.of("pi/2", "pi/4")
TIGHT = mpf(10) ** -40


def maxdev(a, b):
    return max(abs(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def test_moment_examples():
    mom = moments(4, ICE)
    assert abs(mom.c[0] - 2 / mp.sqrt(3)) < TIGHT
    phi = lambda lam: mp.sin(2 * GENERIC.eta_value) / (  # noqa: E731
        mp.sin(lam - GENERIC.eta_value) * mp.sin(lam + GENERIC.eta_value)
    )
    assert abs(moments(2, GENERIC).c[1] - mp.diff(phi, GENERIC.lam_value)) < TIGHT
    m = moments(8, GENERIC)
    assert det(m.hankel(3)) == det(phi_matrix(4, GENERIC))


def test_basis_low_degrees():
    mom = moments(9, GENERIC)
    b = build_basis(4, mom)
    assert b.polys[0] == (1,) and b.norms[0] == mom.c[0]
    assert abs(b.polys[1][0] + mom.c[1] / mom.c[0]) < TIGHT and b.polys[1][1] == 1


@pytest.mark.parametrize("p", [ICE, GENERIC, LOW])
def test_basis_invariants(p):
    mom = moments(17, p)
    b = build_basis(8, mom)
    assert orthogonality_defect(b, mom) < tolerance(9)
    assert hankel_product_defect(b, mom) < tolerance(9)
    assert all(b.leading(n) == 1 for n in range(9))


def test_parity():
    assert parity_check(0, GENERIC)["coeff_dev"] == 0
    rep = parity_check(6, LOW)
    assert max(rep["coeff_dev"], rep["norm_rel_dev"], rep["leading_dev"]) < TIGHT
    # at the self-reflective point odd/even polynomials have pure parity
    b = build_basis(6, moments(13, ICE))
    for n, poly in enumerate(b.polys):
        assert all(abs(c) < TIGHT for k, c in enumerate(poly) if (n + k) % 2)


def test_omega_rho_relations():
    assert omega_rho_defect(GENERIC, 10) < TIGHT
    j = omega_rho_jets(GENERIC, 4)
    assert j.omega[0] == 0 and j.omega_t[0] == 0


def test_onepoint_routes():
    assert H_via_ortho(1, 1, GENERIC) == 1
    for r in range(1, 5):
        ref = H_hom_table(4, ICE)[r - 1]
        assert abs(H_via_ortho(4, r, ICE) - ref) < TIGHT
        assert abs(H_via_ortho(4, r, ICE, crossed=True) - ref) < TIGHT
    ref = H_hom_table(5, GENERIC)
    for r in range(1, 6):
        assert abs(H_via_ortho(5, r, GENERIC) - ref[r - 1]) < TIGHT
        assert abs(H_via_omega(5, r, GENERIC) - ref[r - 1]) < TIGHT
        assert abs(H_via_omega(5, r, GENERIC, crossed=True) - ref[r - 1]) < TIGHT


def test_identity_small():
    t = H2_identity_table(2, GENERIC)
    h = H_hom_table(2, GENERIC)
    assert t[0][0] == 0 and t[1][1] == 0
    assert abs(t[0][1] - h[0]) < TIGHT and abs(t[0][1] + t[1][0] - 1) < TIGHT
    with pytest.raises(ValueError):
        H2_identity(1, 1, 1, GENERIC)


def test_identity_matches_determinant():
    assert maxdev(H2_identity_table(3, ICE), H2_hom_table(3, ICE)) < TIGHT
    assert maxdev(H2_identity_table(6, GENERIC), H2_hom_table(6, GENERIC)) < mpf(10) ** -38


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_identity_matches_oracle(n):
    assert maxdev(H2_identity_table(n, LOW), oracle_tables(n, LOW)["H2"]) < TIGHT


def test_identity_truncation():
    base = H2_identity_table(5, GENERIC)
    assert maxdev(base, H2_identity_table(5, GENERIC, j_max=20)) == 0


def test_omega_rho_two_point_route():
    t = H2_hom_table(5, GENERIC)
    for r1 in range(1, 6):
        for r2 in range(1, 6):
            assert abs(H2_via_omega(5, r1, r2, GENERIC) - t[r1 - 1][r2 - 1]) < TIGHT


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("x", [1, 2, 3])
def test_identity_exact_at_combinatorial_points(n, x):
    big, small = x_weighted_tables(n, x), x_weighted_tables(n - 1, x)
    assert two_point_table_from_one_point(big["H1"], small["H1"]) == big["H2"]


@given(st.lists(st.fractions(0, 1), min_size=3, max_size=3), st.lists(st.fractions(0, 1), min_size=2, max_size=2))
def test_identity_is_type_generic(h3, h2):
    out = two_point_from_one_point(h3, h2, 2, 2)
    assert isinstance(out, Fraction)


def test_generating_functions():
    assert genfun_onepoint(1, GENERIC).dense() == [1]
    for n in range(1, 7):
        assert abs(genfun_onepoint(n, GENERIC)(1) - 1) < tolerance(n)
    coeffs = genfun_onepoint(4, ICE).dense()
    assert max(abs(c - mpf(k) / 42) for c, k in zip(coeffs, (7, 14, 14, 7))) < TIGHT
    two = genfun_twopoint(3, ICE)
    assert abs(two(1, 1) - 1) < TIGHT


@pytest.mark.parametrize("p,n", [(GENERIC, 2), (ICE, 5), (TWO, 5), (LOW, 7)])
def test_generating_function_identity(p, n):
    rep = verify_genfun_identity(n, p)
    assert rep["remainder_max"] < TIGHT and rep["deviation"] < TIGHT


def test_bordered_hankel():
    mom = moments(12, GENERIC)
    b = build_basis(5, mom)
    d = delta_k_polys(1, 1, mom)
    assert abs(d.coeff(1) - mom.c[0]) < TIGHT and abs(d.coeff(0) + mom.c[1]) < TIGHT
    assert d1_defect(2, mom, b) < TIGHT
    assert d2_defect(3, mom, b) < TIGHT
    d2 = delta_k_polys(3, 2, mom)
    assert all(abs(c + d2.coeff(e[1], e[0])) < TIGHT for e, c in d2.terms.items())
    with pytest.raises(ValueError):
        delta_k_polys(2, 3, mom)
