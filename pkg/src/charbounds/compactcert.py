"""Certified extrema of characters on the compact form.

The critical locus of an invariant objective is cut out by the derivation
matrix applied to its gradient.  Each real critical point is tested for
reality of the compact-form coordinates (the -w0 permutation must fix the
coordinate vector) and membership in the compact image, decided exactly by
negative semidefiniteness of the row-permuted matrix.  Corners join the
candidate pool unconditionally, and the report carries an exact witness
for both the minimum and the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algsolve import (
    AlgValue,
    Ideal,
    solve_zero_dim,
)
from .charring import (
    OrbitCapError,
    decompose,
    expand,
    irreducible_character,
    to_fundamental_polynomial,
)
from .invder import derivation_matrix, evaluate_matrix, sigma_matrix
from .polynomials import Cyc, qq
from .rootdata import corners


def critical_ideal(m, objective):
    """Generators sum_j M[i][j] * d(objective)/d f_j, one per row.

    For objective = f_i this is exactly the i-th column of M.
    """
    if objective.datum.content_hash() != m.datum.content_hash():
        raise ValueError("objective belongs to a different datum")
    r = m.datum.rank
    derivs = [objective.poly.diff(j) for j in range(r)]
    gens = []
    for i in range(r):
        g = None
        for j in range(r):
            if derivs[j]:
                term = m.entries[i][j] * derivs[j]
                g = term if g is None else g + term
        if g is not None and g:
            gens.append(g)
    return Ideal.of(r, gens)


def sigma_reality(m, point):
    """True when the coordinates are fixed by the -w0 index permutation."""
    perm = m.permutation
    for i, pi in enumerate(perm):
        if pi != i and (point.coords[i] - point.coords[pi]):
            return False
    return True


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = a * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] - rows[0][0]
    return total


def is_compact_point(m, point):
    """Exact negative semidefiniteness of the evaluated matrix.

    Pass the sigma variant of the matrix; all 2^r - 1 principal minors of
    the negated matrix must be nonnegative, checked smallest first.
    """
    r = m.datum.rank
    grid = evaluate_matrix(m, list(point.coords))
    neg = [[-grid[i][j] for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(i):
            assert not (neg[i][j] - neg[j][i]), "matrix not symmetric here"
    for size in range(1, r + 1):
        for rows in combinations(range(r), size):
            d = _det([[neg[i][j] for j in rows] for i in rows])
            if d.sign() < 0:
                return False
    return True


@dataclass
class CriticalPointRecord:
    point: object          # AlgebraicPoint
    value: AlgValue
    sigma_real: bool
    compact: bool
    in_min_window: bool
    in_max_window: bool

    def to_json(self):
        return {
            "point": self.point.to_json(),
            "value": self.value.to_json(),
            "sigma_real": self.sigma_real,
            "compact": self.compact,
            "in_min_window": self.in_min_window,
            "in_max_window": self.in_max_window,
        }


@dataclass
class ExtremumReport:
    datum: object
    objective: object
    corner_values: tuple   # (CornerClass, Cyc value, AlgValue or None)
    points: tuple          # CriticalPointRecord per non-corner critical point
    window: tuple          # (lower, upper) AlgValue bounds, or None
    minimum: AlgValue
    maximum: AlgValue
    min_witness: object    # CornerClass or AlgebraicPoint
    max_witness: object

    def to_json(self):
        def witness_json(w):
            if hasattr(w, "kac_coordinates"):
                return {
                    "kind": "corner",
                    "kac_coordinates": list(w.kac_coordinates),
                    "order": w.order,
                }
            return {"kind": "critical_point", **w.to_json()}

        return {
            "type": "%s%d" % (self.datum.letter, self.datum.rank),
            "objective": self.objective.to_str(),
            "corners": [
                {
                    "kac_coordinates": list(c.kac_coordinates),
                    "order": c.order,
                    "value": str(v),
                    "real": a is not None,
                    "decimal": a.approx() if a is not None else None,
                }
                for c, v, a in self.corner_values
            ],
            "critical_points": [p.to_json() for p in self.points],
            "window": (
                [self.window[0].to_json(), self.window[1].to_json()]
                if self.window
                else None
            ),
            "minimum": self.minimum.to_json(),
            "maximum": self.maximum.to_json(),
            "min_witness": witness_json(self.min_witness),
            "max_witness": witness_json(self.max_witness),
        }


def _corner_value(objective, corner):
    lift = lambda c: Cyc.from_rational(corner.order, c)
    return objective.poly.evaluate(list(corner.values), convert=lift)


def _cyc_to_algvalue(v):
    """Exact real value of a real cyclotomic number."""
    if v.is_rational():
        return AlgValue.from_rational(v.as_rational())
    import sympy

    z = sympy.exp(2 * sympy.pi * sympy.I / v.m)
    expr = sum(
        sympy.Rational(int(c.numerator), int(c.denominator)) * z**i
        for i, c in enumerate(v.vec)
        if c
    )
    mp = sympy.minimal_polynomial(expr, sympy.Symbol("x"))
    coeffs = [int(c) for c in reversed(sympy.Poly(mp).all_coeffs())]
    from .algsolve import RootInterval, isolate_real_roots

    roots = isolate_real_roots([qq(c) for c in coeffs])
    target = v.approx().real
    best = None
    for r in roots:
        r.refine_to(qq(1, 2**48))
        if abs(float(r.mid()) - target) < 1e-9:
            assert best is None, "ambiguous cyclotomic root match"
            best = r
    assert best is not None, "no root matches the cyclotomic value"
    return AlgValue(tuple(coeffs), best)


def _is_true_character(objective, cap):
    """Nonnegative combination of irreducible characters, decided exactly."""
    try:
        parts = decompose(expand(objective, cap=cap), box_cap=cap)
    except OrbitCapError:
        return False
    return all(c >= 0 for c in parts.values())


def adjoint_objective(datum, cap=2_000_000):
    """The adjoint trace as a polynomial in fundamental characters."""
    ad = irreducible_character(datum, datum.highest_root, box_cap=cap)
    return to_fundamental_polynomial(ad)


def extremum(
    datum,
    objective,
    *,
    cache_dir=None,
    use_cache=True,
    rank_cap=6,
    allow_large=False,
    pair_cap=200_000,
    expand_cap=2_000_000,
):
    """Certified minimum and maximum of an invariant objective."""
    m = derivation_matrix(
        datum,
        cache_dir=cache_dir,
        use_cache=use_cache,
        rank_cap=rank_cap,
        allow_large=allow_large,
    )
    msig = sigma_matrix(m)
    corner_classes = corners(datum)

    corner_values = []
    rational_corner_coords = set()
    for c in corner_classes:
        v = _corner_value(objective, c)
        alg = _cyc_to_algvalue(v) if v.is_real() else None
        corner_values.append((c, v, alg))
        if all(x.is_rational() for x in c.values):
            rational_corner_coords.add(
                tuple(x.as_rational() for x in c.values)
            )

    real_corner_values = [(c, a) for c, v, a in corner_values if a is not None]
    assert real_corner_values, "no real corner value (identity missing?)"
    corner_min = min(
        (a for _, a in real_corner_values),
        key=_cmp_key(),
    )
    corner_max = max(
        (a for _, a in real_corner_values),
        key=_cmp_key(),
    )

    is_char = _is_true_character(objective, expand_cap)
    window = None
    if is_char:
        dims = None
        for c in corner_classes:
            if c.order == 1:
                dims = c
                break
        assert dims is not None
        at_identity = _corner_value(objective, dims)
        assert at_identity.is_rational()
        bound = AlgValue.from_rational(at_identity.as_rational())
        window = (
            AlgValue.from_rational(-at_identity.as_rational()),
            bound,
        )

    crit = critical_ideal(m, objective)
    points = solve_zero_dim(crit, pair_cap=pair_cap)

    records = []
    for p in points:
        if p.is_rational() and p.rational_coords() in rational_corner_coords:
            continue
        sreal = sigma_reality(m, p)
        compact = bool(sreal and is_compact_point(msig, p))
        value = AlgValue.from_field_element(p.value_of(objective.poly))
        in_min = value.cmp(corner_min) < 0 and (
            window is None or value.cmp(window[0]) >= 0
        )
        in_max = value.cmp(corner_max) > 0 and (
            window is None or value.cmp(window[1]) <= 0
        )
        records.append(
            CriticalPointRecord(p, value, sreal, compact, in_min, in_max)
        )

    candidates = [(a, c) for c, a in real_corner_values]
    for rec in records:
        if rec.compact:
            candidates.append((rec.value, rec.point))
            if window is not None:
                # characters never escape [-f(1), f(1)] on the compact form
                assert rec.value.cmp(window[0]) >= 0
                assert rec.value.cmp(window[1]) <= 0

    min_value, min_witness = candidates[0]
    max_value, max_witness = candidates[0]
    for value, witness in candidates[1:]:
        if value.cmp(min_value) < 0:
            min_value, min_witness = value, witness
        if value.cmp(max_value) > 0:
            max_value, max_witness = value, witness

    return ExtremumReport(
        datum=datum,
        objective=objective,
        corner_values=tuple(corner_values),
        points=tuple(records),
        window=window,
        minimum=min_value,
        maximum=max_value,
        min_witness=min_witness,
        max_witness=max_witness,
    )


def _cmp_key():
    import functools

    return functools.cmp_to_key(lambda a, b: a.cmp(b))
