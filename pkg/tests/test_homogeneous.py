import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

import sixvertex  # noqa: F401
from sixvertex.errors import InadmissibleParameters, SingularParameters, UnsupportedSize
from sixvertex.homogeneous import (
    G2_from_H2,
    G2_hom_table,
    G_hom,
    G_hom_table,
    H2_hom_det,
    H2_hom_det_reference,
    H2_hom_table,
    H_hom,
    H_hom_table,
    Z_hom,
    crossing_check,
    phi_matrix,
)
from sixvertex.lattice import oracle_tables
from sixvertex.params import WeightParams, weights_abc
from sixvertex.scalar import precision, tolerance

ICE = WeightParams.of("pi/2", "pi/6")
GENERIC = WeightParams.of("1.1", "0.35")
TIGHT = mpf(10) ** -40


@st.composite
def admissible(draw):
    eta = draw(st.floats(0.15, 1.42))
    lam = draw(st.floats(eta + 0.1, 3.0415 - eta))
    return WeightParams.of(f"{lam:.10f}", f"{eta:.10f}")


def test_weights_at_special_points():
    a, b, c = weights_abc(ICE)
    s = mp.sqrt(3) / 2
    assert max(abs(a - s), abs(b - s), abs(c - s)) < TIGHT
    a, b, c = weights_abc(WeightParams.of("pi/2", "pi/4"))
    assert abs(c**2 / (a * b) - 2) < TIGHT
    _, _, c = weights_abc(WeightParams.of("pi/2", "1e-30"))
    assert abs(c) < 1e-29


def test_admissibility_guard():
    with pytest.raises(InadmissibleParameters):
        WeightParams.of("0.1", "pi/6")
    p = WeightParams.of("0.1", "pi/6", allow_any=True)
    assert not p.admissible()


def test_singular_parameters():
    p = WeightParams.of("0.5", "0.5", allow_any=True)
    with pytest.raises(SingularParameters):
        Z_hom(2, p)


def test_partition_examples():
    assert abs(Z_hom(1, GENERIC) - mp.sin(2 * GENERIC.eta_value)) < TIGHT
    a, b, c = weights_abc(GENERIC)
    assert abs(Z_hom(2, GENERIC) - c**2 * (a**2 + b**2)) < TIGHT
    assert abs(Z_hom(5, ICE) - (mp.sqrt(3) / 2) ** 25 * 429) < TIGHT


def test_phi_is_hankel():
    m = phi_matrix(5, GENERIC)
    assert all(m[i][j] == m[i + 1][j - 1] for i in range(4) for j in range(1, 5))


def test_onepoint_examples():
    assert H_hom(1, 1, GENERIC) == 1
    assert abs(H_hom(2, 1, ICE) - mpf(1) / 2) < TIGHT
    expect = [mpf(k) / 42 for k in (7, 14, 14, 7)]
    assert max(abs(x - y) for x, y in zip(H_hom_table(4, ICE), expect)) < TIGHT
    assert abs(G_hom(2, 1, ICE) - mpf(1) / 2) < TIGHT
    for n in range(1, 6):
        assert abs(G_hom(n, n, GENERIC) - 1) < TIGHT


@given(admissible(), st.integers(1, 6))
def test_onepoint_normalization_and_cumulative(p, n):
    h, g = H_hom_table(n, p), G_hom_table(n, p)
    tol = tolerance(n)
    assert abs(sum(h) - 1) < tol
    prev = mpf(0)
    for r in range(n):
        assert abs(g[r] - prev - h[r]) < tol
        prev = g[r]


def test_twopoint_small_sizes():
    with pytest.raises(UnsupportedSize):
        H2_hom_det(1, 1, 1, GENERIC)
    assert H2_hom_table(1, GENERIC) == [[1]]
    t = H2_hom_table(2, GENERIC)
    assert abs(t[0][0]) < TIGHT and abs(t[1][1]) < TIGHT
    assert abs(t[0][1] + t[1][0] - 1) < TIGHT


def test_twopoint_ice_n3():
    t = H2_hom_table(3, ICE)
    expect = [[0, 1, 1], [1, 1, 1], [1, 1, 0]]
    assert max(abs(t[i][j] - mpf(expect[i][j]) / 7) for i in range(3) for j in range(3)) < TIGHT


@pytest.mark.parametrize("p", [ICE, GENERIC, WeightParams.of("0.9", "0.3")])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_twopoint_against_oracle(p, n):
    o = oracle_tables(n, p)
    t = H2_hom_table(n, p)
    g = G2_hom_table(n, p)
    assert max(abs(t[i][j] - o["H2"][i][j]) for i in range(n) for j in range(n)) < TIGHT
    assert max(abs(g[i][j] - o["G2"][i][j]) for i in range(n) for j in range(n)) < TIGHT


def test_contracted_matches_laplace_reference():
    for r1 in range(1, 5):
        for r2 in range(1, 5):
            assert abs(H2_hom_det(4, r1, r2, GENERIC) - H2_hom_det_reference(4, r1, r2, GENERIC)) < TIGHT


@given(admissible(), st.integers(2, 7))
def test_twopoint_normalization(p, n):
    t = H2_hom_table(n, p)
    assert abs(sum(sum(row) for row in t) - 1) < tolerance(n)


def test_cumulative_two_point():
    assert abs(G2_from_H2(3, 3, 3, GENERIC) - 1) < TIGHT
    assert abs(G2_from_H2(2, 1, 1, GENERIC)) < TIGHT


def test_crossing_symmetry():
    assert crossing_check(1, GENERIC)["onepoint_max_dev"] == 0
    rep = crossing_check(4, WeightParams.of("0.9", "0.3"))
    assert rep["onepoint_max_dev"] < TIGHT and rep["twopoint_max_dev"] < TIGHT


def test_higher_precision_agrees():
    low = H2_hom_table(5, GENERIC)
    with precision(400):
        high = H2_hom_table(5, GENERIC)
    assert max(abs(low[i][j] - high[i][j]) for i in range(5) for j in range(5)) < tolerance(5, 256)
