import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charbounds.algsolve import (
    AlgValue,
    Ideal,
    NotZeroDimensionalError,
    PairCapError,
    groebner,
    isolate_real_roots,
    sign_of,
    solve_zero_dim,
    sturm_chain,
    sturm_count,
)
from charbounds.invder import derivation_matrix
from charbounds.polynomials import Poly, qq
from charbounds.rootdata import build_root_datum


def upoly(*coeffs):
    """Ascending coefficients -> univariate Poly."""
    return Poly(1, {(e,): qq(c) for e, c in enumerate(coeffs) if c})


def var(n, i):
    return Poly.variable(n, i)


# -- Groebner bases ---------------------------------------------------------

def test_groebner_collapses_to_linear():
    x = var(1, 0)
    gb = groebner(Ideal.of(1, [x * x - 1, x - 1]))
    assert len(gb.gens) == 1
    assert gb.gens[0].to_str(["x"]) == "x - 1"


def test_groebner_unit_ideal():
    x = var(1, 0)
    gb = groebner(Ideal.of(1, [x, x - 1]))
    assert len(gb.gens) == 1
    assert gb.gens[0].total_degree() == 0


def test_groebner_idempotent_and_deterministic():
    x, y = var(2, 0), var(2, 1)
    gens = [x * x + y * y - 1, x * y - 1]
    a = groebner(Ideal.of(2, gens))
    b = groebner(Ideal.of(2, gens))
    assert [g.terms for g in a.gens] == [g.terms for g in b.gens]
    again = groebner(a)
    assert [g.terms for g in again.gens] == [g.terms for g in a.gens]


def test_pair_cap_is_an_explicit_failure():
    x, y = var(2, 0), var(2, 1)
    gens = [x * x + y * y - 1, x * y - 1, x**3 - y]
    with pytest.raises(PairCapError):
        groebner(Ideal.of(2, gens), pair_cap=1)


def test_positive_dimensional_is_a_hard_error():
    x, y = var(2, 0), var(2, 1)
    with pytest.raises(NotZeroDimensionalError):
        solve_zero_dim(Ideal.of(2, [x - y]))
    with pytest.raises(NotZeroDimensionalError):
        solve_zero_dim(Ideal.of(2, []))


# -- Sturm isolation --------------------------------------------------------

def test_sturm_count_interval():
    # (x-1)(x-2)(x-3)
    p = [qq(-6), qq(11), qq(-6), qq(1)]
    chain = sturm_chain(p)
    assert sturm_count(chain, qq(0), qq(4)) == 3
    assert sturm_count(chain, qq(3, 2), qq(5, 2)) == 1


def test_isolate_cubic_roots():
    roots = isolate_real_roots([qq(-49), qq(-151), qq(10), qq(27)])
    assert len(roots) == 3
    mids = []
    for r in roots:
        r.refine_to(qq(1, 2**30))
        mids.append(float(r.mid()))
    assert mids == sorted(mids)
    assert abs(mids[1] - (-0.323628)) < 1e-5


def test_no_real_roots():
    assert isolate_real_roots([qq(1), qq(0), qq(1)]) == []


# -- solve_zero_dim oracles -------------------------------------------------

def test_univariate_cubic_points():
    p = upoly(-49, -151, 10, 27)
    pts = solve_zero_dim(Ideal.of(1, [p]))
    assert len(pts) == 3
    approx = [pt.approx()[0] for pt in pts]
    assert approx == sorted(approx)
    assert abs(approx[1] + 0.323628) < 1e-5
    for pt in pts:
        assert sign_of(p, pt) == 0
        assert pt.coord_info[0].minpoly == (-49, -151, 10, 27)


def test_empty_real_variety():
    x = var(1, 0)
    assert solve_zero_dim(Ideal.of(1, [x * x + 1])) == []
    # inconsistent system: unit ideal, no points at all
    assert solve_zero_dim(Ideal.of(1, [x, x - 1])) == []


def test_multiplicity_flag():
    x = var(1, 0)
    pts = solve_zero_dim(Ideal.of(1, [(x - 1) * (x - 1)]))
    assert len(pts) == 1
    assert pts[0].rational_coords() == (qq(1),)
    assert pts[0].coord_info[0].multiple is True

    pts = solve_zero_dim(Ideal.of(1, [(x - 1) * (x + 2)]))
    assert [p.coord_info[0].multiple for p in pts] == [False, False]


def test_triangular_system_with_irrational_coordinate():
    x, y = var(2, 0), var(2, 1)
    pts = solve_zero_dim(Ideal.of(2, [y * y - 2, x - y * y]))
    assert len(pts) == 2
    assert [p.coord_info[0].minpoly for p in pts] == [(-2, 1), (-2, 1)]
    assert [p.coord_info[1].minpoly for p in pts] == [(-2, 0, 1), (-2, 0, 1)]
    lo = pts[0].approx()
    hi = pts[1].approx()
    assert abs(lo[0] - 2) < 1e-9 and abs(lo[1] + 2**0.5) < 1e-9
    assert abs(hi[0] - 2) < 1e-9 and abs(hi[1] - 2**0.5) < 1e-9
    assert sign_of(x * y, pts[0]) == -1
    assert sign_of(x * y, pts[1]) == 1
    assert sign_of(y * y - 2, pts[0]) == 0


def test_shear_fallback_on_shared_last_coordinate():
    # both solutions have y = 0, so the last variable cannot separate them
    x, y = var(2, 0), var(2, 1)
    pts = solve_zero_dim(Ideal.of(2, [x * x - 1, y]))
    assert [p.rational_coords() for p in pts] == [
        (qq(-1), qq(0)),
        (qq(1), qq(0)),
    ]


def test_points_sorted_by_midpoints():
    x = var(1, 0)
    pts = solve_zero_dim(Ideal.of(1, [(x - 3) * (x + 5) * x]))
    assert [p.rational_coords()[0] for p in pts] == [qq(-5), qq(0), qq(3)]


# -- G2 critical systems ----------------------------------------------------

@pytest.fixture(scope="module")
def g2_matrix():
    return derivation_matrix(build_root_datum("G", 2), use_cache=False)


def test_g2_corner_ideal_three_rational_points(g2_matrix):
    m = g2_matrix
    gens = [m.entry(0, 0), m.entry(0, 1), m.entry(1, 1)]
    pts = solve_zero_dim(Ideal.of(2, gens))
    assert all(p.is_rational() for p in pts)
    assert [p.rational_coords() for p in pts] == [
        (qq(-2), qq(5)),
        (qq(-1), qq(-2)),
        (qq(7), qq(14)),
    ]


def test_g2_second_column_adds_interior_point(g2_matrix):
    m = g2_matrix
    gens = [m.entry(0, 1), m.entry(1, 1)]
    pts = solve_zero_dim(Ideal.of(2, gens))
    assert all(p.is_rational() for p in pts)
    assert [p.rational_coords() for p in pts] == [
        (qq(-2), qq(5)),
        (qq(-1), qq(-2)),
        (qq(7, 9), qq(10, 27)),
        (qq(7), qq(14)),
    ]


def test_g2_first_column_is_corners_only(g2_matrix):
    m = g2_matrix
    gens = [m.entry(0, 0), m.entry(0, 1)]
    pts = solve_zero_dim(Ideal.of(2, gens))
    assert [p.rational_coords() for p in pts] == [
        (qq(-2), qq(5)),
        (qq(-1), qq(-2)),
        (qq(7), qq(14)),
    ]


def test_solver_output_is_deterministic(g2_matrix):
    m = g2_matrix
    gens = [m.entry(0, 1), m.entry(1, 1)]
    a = solve_zero_dim(Ideal.of(2, gens))
    b = solve_zero_dim(Ideal.of(2, gens))
    assert [p.to_json() for p in a] == [p.to_json() for p in b]


# -- exact value comparison -------------------------------------------------

def test_algvalue_rational_comparisons():
    a = AlgValue.from_rational(qq(-14))
    b = AlgValue.from_rational(qq(-2))
    assert a.cmp(b) == -1
    assert b.cmp(a) == 1
    assert a.cmp(AlgValue.from_rational(qq(-14))) == 0


def test_algvalue_f4_candidate_beats_corner():
    # root of 27 v^2 - 196 v - 9604, the negative branch
    v = var(1, 0)
    pts = solve_zero_dim(Ideal.of(1, [27 * (v * v) - 196 * v - 9604]))
    assert len(pts) == 2
    low = AlgValue.from_field_element(pts[0].coords[0])
    assert low.minpoly == (-9604, -196, 27)
    assert low.cmp(AlgValue.from_rational(qq(-14))) == -1
    assert abs(low.approx() - (98 / 27) * (1 - 2 * 7**0.5)) < 1e-9
    high = AlgValue.from_field_element(pts[1].coords[0])
    assert low.cmp(high) == -1
    assert low.cmp(AlgValue.from_field_element(pts[0].coords[0])) == 0


def test_algvalue_distinguishes_conjugates():
    v = var(1, 0)
    pts = solve_zero_dim(Ideal.of(1, [v * v - 2]))
    neg = AlgValue.from_field_element(pts[0].coords[0])
    pos = AlgValue.from_field_element(pts[1].coords[0])
    assert neg.minpoly == pos.minpoly == (-2, 0, 1)
    assert neg.cmp(pos) == -1
    assert pos.cmp(neg) == 1


# -- randomized oracles -----------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=4, unique=True),
    st.integers(1, 3),
)
def test_products_of_linear_factors(roots, shift):
    x = var(1, 0)
    p = x * x + shift  # no real roots
    for a in roots:
        p = p * (x - a)
    pts = solve_zero_dim(Ideal.of(1, [p]))
    assert [pt.rational_coords()[0] for pt in pts] == sorted(qq(a) for a in roots)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=3, unique=True),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3, unique=True),
)
def test_grid_systems(xs, ys):
    x, y = var(2, 0), var(2, 1)
    px = Poly.const(2, 1)
    for a in xs:
        px = px * (x - a)
    py = Poly.const(2, 1)
    for b in ys:
        py = py * (y - b)
    pts = solve_zero_dim(Ideal.of(2, [px, py]))
    got = [p.rational_coords() for p in pts]
    want = sorted((qq(a), qq(b)) for a in xs for b in ys)
    assert got == want
