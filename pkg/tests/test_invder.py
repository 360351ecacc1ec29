import itertools
import json

import pytest

from charbounds import charring as ch
from charbounds import invder
from charbounds.polynomials import Poly, qq
from charbounds.rootdata import (
    EnumerationCapError,
    build_root_datum,
    corners,
)

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
G2 = build_root_datum("G", 2)


def ipoly(nvars, terms):
    return Poly(nvars, {tuple(m): qq(c) for m, c in terms.items()})


# frozen from the worked 2x2 example: entries of M for the G2 datum
G2_M11 = ipoly(2, {(2, 0): 4, (0, 1): -4, (1, 0): -16, (0, 0): -28})
G2_M12 = ipoly(2, {(1, 1): 6, (2, 0): -14, (0, 1): 14, (1, 0): -16, (0, 0): 14})
G2_M22 = ipoly(
    2,
    {(3, 0): -12, (0, 2): 12, (1, 1): 24, (2, 0): -20, (0, 1): 8, (1, 0): 44,
     (0, 0): -28},
)


def test_apply_DA_a1():
    e1 = ch.CharacterElement(A1, {(1,): 1})
    assert invder.apply_DA(A1, e1).mult == {(1,): 1}
    e2 = ch.CharacterElement(A1, {(2,): 1})
    assert invder.apply_DA(A1, e2).mult == {(2,): 4}
    triv = ch.trivial_character(A1)
    assert invder.apply_DA(A1, triv).is_zero()


def test_apply_CA_a1():
    out = invder.apply_CA(A1, {(1,): 1})
    assert out == {(1,): 3}
    assert invder.apply_CA(A1, {(0,): 5}) == {}


def test_biderivation_kills_constants():
    f1 = ch.irreducible_character(G2, (1, 0))
    one = ch.trivial_character(G2)
    assert invder.biderivation(G2, f1, one).poly.is_zero()


def test_biderivation_a1():
    f1 = ch.irreducible_character(A1, (1,))
    m11 = invder.biderivation(A1, f1, f1)
    assert m11.poly == ipoly(1, {(2,): 2, (0,): -8})


def test_g2_matrix_exact(tmp_path):
    m = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    assert m.entry(0, 0) == G2_M11
    assert m.entry(0, 1) == G2_M12
    assert m.entry(1, 0) == G2_M12
    assert m.entry(1, 1) == G2_M22


def test_g2_matrix_matches_ring_strategies(tmp_path):
    fast = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    slow = invder.derivation_matrix(
        G2, use_cache=False, strategy="subtract"
    )
    assert fast.entries == slow.entries


def test_casimir_route_agrees():
    # D_A and C_A induce the same biderivation
    for datum in (A1, A2, G2):
        funds = ch.fundamental_characters(datum)
        for f, g in itertools.combinations_with_replacement(funds, 2):
            da = invder.biderivation(datum, f, g, operator="DA")
            ca = invder.biderivation(datum, f, g, operator="CA")
            assert da.poly == ca.poly


@pytest.mark.slow
def test_casimir_route_agrees_f4():
    f4 = build_root_datum("F", 4)
    funds = ch.fundamental_characters(f4)
    da = invder.biderivation(f4, funds[0], funds[3], operator="DA")
    ca = invder.biderivation(f4, funds[0], funds[3], operator="CA")
    assert da.poly == ca.poly


def test_matrix_cache_round_trip(tmp_path):
    cold = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    assert not cold.cache_hit
    warm = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    assert warm.cache_hit
    assert warm.entries == cold.entries
    assert warm.created == cold.created
    assert json.dumps(warm.to_json(), sort_keys=True) == json.dumps(
        cold.to_json(), sort_keys=True
    )


def test_matrix_cache_corruption_recovers(tmp_path):
    cold = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    path = invder._cache_path(G2, str(tmp_path))
    data = json.load(open(path))
    data["hash"] = "0" * 16
    json.dump(data, open(path, "w"))
    again = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    assert not again.cache_hit
    assert again.entries == cold.entries


def test_rank_cap():
    e7 = build_root_datum("E", 7)
    with pytest.raises(EnumerationCapError, match="refused"):
        invder.derivation_matrix(e7, use_cache=False)


def test_sigma_matrix_g2_identity(tmp_path):
    m = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    ms = invder.sigma_matrix(m)
    assert ms.entries == m.entries


def test_sigma_matrix_a2_swaps(tmp_path):
    m = invder.derivation_matrix(A2, cache_dir=str(tmp_path))
    ms = invder.sigma_matrix(m)
    assert ms.entries[0] == m.entries[1]
    assert ms.entries[1] == m.entries[0]


def test_hermitian_law(tmp_path):
    # (M^sigma)^T = sigma(M^sigma), sigma permuting both rows and variables
    for tp in [("A", 2), ("A", 3), ("B", 2), ("G", 2)]:
        d = build_root_datum(*tp)
        m = invder.derivation_matrix(d, cache_dir=str(tmp_path))
        ms = invder.sigma_matrix(m)
        r = d.rank
        for i in range(r):
            for j in range(r):
                lhs = ms.entries[j][i]
                rhs = invder.permute_variables(ms.entries[i][j], d.minus_w0)
                assert lhs == rhs


def test_corner_vanishing(tmp_path):
    for tp in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)]:
        d = build_root_datum(*tp)
        m = invder.derivation_matrix(d, cache_dir=str(tmp_path))
        for c in corners(d):
            vals = invder.evaluate_matrix(m, c.values)
            assert all(not v for row in vals for v in row)
            assert invder.rank_at(m, c.values) == 0


def test_identity_corner_is_dims(tmp_path):
    m = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    point = (qq(7), qq(14))
    vals = invder.evaluate_matrix(m, point)
    assert all(not v for row in vals for v in row)


def test_g2_special_point_rank(tmp_path):
    m = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    point = (qq(7, 9), qq(10, 27))
    vals = invder.evaluate_matrix(m, point)
    assert vals[0][0] == qq(-3200, 81)
    assert not vals[0][1] and not vals[1][0] and not vals[1][1]
    assert invder.rank_at(m, point) == 1


def test_rank_at_regular_point(tmp_path):
    m = invder.derivation_matrix(A2, cache_dir=str(tmp_path))
    # a regular element: distinct generic eigenvalues
    assert invder.rank_at(m, (qq(31, 6), qq(41, 6))) == 2


def test_scaling_invariance(tmp_path):
    base = invder.derivation_matrix(G2, cache_dir=str(tmp_path))
    scaled_datum = build_root_datum("G", 2, form_scale=5)
    scaled = invder.derivation_matrix(scaled_datum, cache_dir=str(tmp_path))
    for i in range(2):
        for j in range(2):
            assert scaled.entries[i][j] == base.entries[i][j].scale(qq(5))
    point = (qq(7, 9), qq(10, 27))
    assert invder.rank_at(scaled, point) == invder.rank_at(base, point)


def test_gl2_fixture_convention():
    # reductive rank-2 fixture in explicit torus coordinates x, y with the
    # identity pairing: pins the Jacobian convention M = J^T A J
    import sympy

    x, y = sympy.symbols("x y")
    f1 = x + y
    f2 = x * y
    sf1 = 1 / x + 1 / y
    sf2 = 1 / (x * y)

    def m_a(u, v):
        return sympy.simplify(
            x * sympy.diff(u, x) * x * sympy.diff(v, x)
            + y * sympy.diff(u, y) * y * sympy.diff(v, y)
        )

    # D_1 = M(f1, -): coefficients on the basis (d/df1, d/df2)
    assert sympy.simplify(m_a(f1, f1) - (f1**2 - 2 * f2)) == 0
    assert sympy.simplify(m_a(f1, f2) - f1 * f2) == 0
    assert sympy.simplify(m_a(f2, f2) - 2 * f2**2) == 0

    # M^sigma rows use the conjugate characters sigma(f_i)
    expected = [[-2, -f1], [-f1 / f2, -2]]
    got = [[m_a(sf1, f1), m_a(sf1, f2)], [m_a(sf2, f1), m_a(sf2, f2)]]
    for i in range(2):
        for j in range(2):
            assert sympy.simplify(got[i][j] - expected[i][j]) == 0
