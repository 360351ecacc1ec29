"""Root-system and Weyl-group data for the simple types A through G.

Weights live in the fundamental-weight basis with exact integer
coordinates.  The stored invariant form A is the single source of inner
products: pairing(u, v) = u^T A v / 2, normalized so that A(alpha, alpha)
(in that half-form sense) equals 2 |P/Q| on short roots, which makes
A = (2) for type A1.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .polynomials import QQ, QZERO, qq, qq_str


class InvalidTypeError(ValueError):
    pass


class EnumerationCapError(RuntimeError):
    """Raised when a requested enumeration exceeds the configured cap."""


_DIM_FORMULAS = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "E": {6: 78, 7: 133, 8: 248},
    "F": {4: 52},
    "G": {2: 14},
}

_WEYL_ORDERS = {
    "A": lambda n: math.factorial(n + 1),
    "B": lambda n: 2**n * math.factorial(n),
    "C": lambda n: 2**n * math.factorial(n),
    "D": lambda n: 2 ** (n - 1) * math.factorial(n),
    "E": {6: 51840, 7: 2903040, 8: 696729600},
    "F": {4: 1152},
    "G": {2: 12},
}


def validate_type(letter, rank):
    ok = (
        (letter == "A" and rank >= 1)
        or (letter in ("B", "C") and rank >= 2)
        or (letter == "D" and rank >= 4)
        or (letter == "E" and rank in (6, 7, 8))
        or (letter == "F" and rank == 4)
        or (letter == "G" and rank == 2)
    )
    if not ok:
        raise InvalidTypeError("no simple type %s%s" % (letter, rank))


def cartan_matrix(letter, rank):
    """Cartan matrix with C[i][j] = <alpha_j, alpha_i-coroot>, Bourbaki
    numbering; for G2 the first node is the short root (so omega_1 is the
    highest short root)."""
    validate_type(letter, rank)
    n = rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if letter in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B" and n >= 2:
            bond(n - 2, n - 1, -1, -2)
        if letter == "C" and n >= 2:
            bond(n - 2, n - 1, -2, -1)
    elif letter == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif letter == "E":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        for a, b in edges:
            if a <= n and b <= n:
                bond(a - 1, b - 1)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, -3, -1)
    return tuple(tuple(row) for row in C)


def symmetrizers(letter, rank, C):
    """d_i with d_i C[i][j] symmetric and min d_i = 1; b(a_i,a_i) = 2 d_i."""
    n = rank
    d = [1] * n
    if letter == "B":
        d = [2] * (n - 1) + [1]
    elif letter == "C":
        d = [1] * (n - 1) + [2]
    elif letter == "F":
        d = [2, 2, 1, 1]
    elif letter == "G":
        d = [1, 3]
    for i in range(n):
        for j in range(n):
            assert d[i] * C[i][j] == d[j] * C[j][i]
    return tuple(d)


# -- small exact matrix helpers ---------------------------------------------

def qmat_inv(M):
    n = len(M)
    A = [[qq(M[i][j]) for j in range(n)] + [QQ(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


def qmat_det(M):
    n = len(M)
    A = [[qq(x) for x in row] for row in M]
    det = QQ(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return QZERO
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col]:
                f = A[r][col] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det


def qmat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum((qq(A[i][t]) * qq(B[t][j]) for t in range(k)), QZERO)
              for j in range(m))
        for i in range(n)
    )


@dataclass(frozen=True)
class CornerClass:
    """Torsion class where the derivation matrix vanishes."""

    index: int
    kac_coordinates: tuple
    order_bound: int
    order: int
    point: tuple   # functional u with <mu, v> = u . (weight coords)
    columns: tuple  # 1-based fundamental indices the values refer to
    values: tuple   # exact cyclotomic value per requested column


@dataclass(frozen=True)
class RootDatum:
    """Immutable description of a simple simply connected type."""

    letter: str
    rank: int
    cartan: tuple
    cartan_inv: tuple
    symmetrizer: tuple
    simple_roots: tuple       # columns of the Cartan matrix, weight basis
    simple_coroots: tuple     # alpha_i / d_i in the weight basis (rational)
    positive_roots: tuple     # weight-basis coordinates
    positive_root_coords: tuple  # the same roots in the root basis
    highest_root: tuple
    a_coeffs: tuple
    fundamental_group_order: int
    exponent_center: int
    form_B: tuple             # rational matrix; A = |P/Q| * B * form_scale
    form_A: tuple
    form_scale: int
    minus_w0: tuple           # permutation of {0..r-1}
    weyl_order: int
    dim: int

    # -- basic geometry ------------------------------------------------------
    def pairing(self, u, v):
        """Invariant inner product of two weight-basis vectors."""
        A = self.form_A
        total = QZERO
        for i, ui in enumerate(u):
            if ui:
                row = A[i]
                s = sum((qq(vj) * row[j] for j, vj in enumerate(v) if vj), QZERO)
                total += qq(ui) * s
        return total / 2

    def norm2(self, u):
        return self.pairing(u, u)

    def reflect(self, i, n):
        C = self.cartan
        ni = n[i]
        if not ni:
            return tuple(n)
        return tuple(n[k] - ni * C[k][i] for k in range(self.rank))

    def is_dominant(self, n):
        return all(x >= 0 for x in n)

    def dominantize(self, n):
        n = tuple(n)
        while True:
            for i, x in enumerate(n):
                if x < 0:
                    n = self.reflect(i, n)
                    break
            else:
                return n

    def dominantize_tracked(self, n):
        """Dominant representative plus the sign of the chamber walk."""
        n = tuple(n)
        sign = 1
        while True:
            for i, x in enumerate(n):
                if x < 0:
                    n = self.reflect(i, n)
                    sign = -sign
                    break
            else:
                return n, sign

    def root_coords(self, n):
        Ci = self.cartan_inv
        return tuple(
            sum((Ci[i][j] * n[j] for j in range(self.rank) if n[j]), QZERO)
            for i in range(self.rank)
        )

    def coroot_pairing(self, mu, beta):
        """<mu, beta-coroot> for a root beta, both in the weight basis."""
        return 2 * self.pairing(mu, beta) / self.norm2(beta)

    @property
    def rho(self):
        return (1,) * self.rank

    @property
    def fundamental_weights(self):
        r = self.rank
        return tuple(tuple(1 if j == i else 0 for j in range(r)) for i in range(r))

    def minus_one_in_weyl(self):
        return all(self.minus_w0[i] == i for i in range(self.rank))

    # -- identity ------------------------------------------------------------
    def content_hash(self):
        blob = json.dumps(
            {
                "letter": self.letter,
                "rank": self.rank,
                "cartan": [list(r) for r in self.cartan],
                "form_scale": self.form_scale,
            },
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def name(self):
        return "%s%d" % (self.letter, self.rank)

    def to_json(self):
        return {
            "schema": "charbounds/1",
            "kind": "root_datum",
            "type": self.letter,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "dim": self.dim,
            "weyl_order": self.weyl_order,
            "fundamental_group_order": self.fundamental_group_order,
            "highest_root": list(self.highest_root),
            "a_coeffs": list(self.a_coeffs),
            "positive_roots": [list(r) for r in self.positive_roots],
            "form_A": [[qq_str(x) for x in row] for row in self.form_A],
            "minus_w0": [i + 1 for i in self.minus_w0],
        }


_DATUM_CACHE = {}


def build_root_datum(letter, rank, form_scale=1):
    """Construct the full RootDatum; raises InvalidTypeError on bad input.

    Equal arguments return the same object, so cached characters built
    from one call interoperate with data built from another.
    """
    key = (str(letter).upper(), int(rank), form_scale)
    cached = _DATUM_CACHE.get(key)
    if cached is not None:
        return cached
    datum = _build_root_datum(letter, rank, form_scale)
    _DATUM_CACHE[key] = datum
    return datum


def _build_root_datum(letter, rank, form_scale=1):
    letter = letter.upper()
    rank = int(rank)
    validate_type(letter, rank)
    if form_scale < 1:
        raise ValueError("form_scale must be a positive integer")
    C = cartan_matrix(letter, rank)
    d = symmetrizers(letter, rank, C)
    Ci = qmat_inv(C)
    r = rank

    simple_roots = tuple(tuple(C[k][i] for k in range(r)) for i in range(r))
    simple_coroots = tuple(
        tuple(QQ(C[k][i], d[i]) for k in range(r)) for i in range(r)
    )

    # closure of the simple roots under the simple reflections
    def reflect(i, n):
        ni = n[i]
        if not ni:
            return n
        return tuple(n[k] - ni * C[k][i] for k in range(r))

    seen = set(simple_roots)
    frontier = list(simple_roots)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(r):
                img = reflect(i, root)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt

    positives = []
    for root in seen:
        rc = tuple(
            sum((Ci[i][j] * root[j] for j in range(r) if root[j]), QZERO)
            for i in range(r)
        )
        if all(x >= 0 for x in rc):
            assert all(x.denominator == 1 for x in rc)
            positives.append((tuple(int(x) for x in rc), root))
    positives.sort(key=lambda p: (sum(p[0]), p[0]))
    pos_rc = tuple(p[0] for p in positives)
    pos_roots = tuple(p[1] for p in positives)

    dim_formula = _DIM_FORMULAS[letter]
    dim = dim_formula[rank] if isinstance(dim_formula, dict) else dim_formula(rank)
    assert len(seen) == dim - r, "root count disagrees with the classification"

    highest = pos_roots[-1]
    a_coeffs = pos_rc[-1]
    assert all(sum(rc) < sum(a_coeffs) for rc in pos_rc[:-1])

    det = qmat_det(C)
    pq = int(det)
    assert det == pq and pq >= 1

    exponent = 1
    for row in Ci:
        for x in row:
            exponent = exponent * x.denominator // math.gcd(exponent, int(x.denominator))

    # Gram matrix of the basic form b (short roots have b-length^2 two)
    Db = tuple(tuple(QQ(d[i] * C[i][j]) for j in range(r)) for i in range(r))
    gram = qmat_mul(qmat_mul(tuple(zip(*Ci)), Db), Ci)
    form_B = tuple(tuple(2 * x for x in row) for row in gram)
    form_A = tuple(tuple(pq * form_scale * x for x in row) for row in form_B)

    worder_formula = _WEYL_ORDERS[letter]
    worder = worder_formula[rank] if isinstance(worder_formula, dict) else worder_formula(rank)

    datum = RootDatum(
        letter=letter,
        rank=rank,
        cartan=C,
        cartan_inv=Ci,
        symmetrizer=d,
        simple_roots=simple_roots,
        simple_coroots=simple_coroots,
        positive_roots=pos_roots,
        positive_root_coords=pos_rc,
        highest_root=highest,
        a_coeffs=a_coeffs,
        fundamental_group_order=pq,
        exponent_center=exponent,
        form_B=form_B,
        form_A=form_A,
        form_scale=form_scale,
        minus_w0=(),
        weyl_order=worder,
        dim=dim,
    )
    # -w0 sends omega_i to -omega_{pi(i)}; read the permutation off
    # dominantizations of the negated fundamental weights.
    perm = []
    for i in range(r):
        neg = tuple(-1 if j == i else 0 for j in range(r))
        img = datum.dominantize(neg)
        assert sum(img) == 1 and all(x in (0, 1) for x in img)
        perm.append(img.index(1))
    object.__setattr__(datum, "minus_w0", tuple(perm))
    return datum


def weyl_orbit(datum, weight):
    """Full Weyl orbit of a weight-basis vector, as a set of tuples."""
    start = tuple(int(x) for x in weight)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(datum.rank):
                img = datum.reflect(i, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def corners(datum, columns=None):
    """The r+1 torsion classes where the derivation matrix vanishes.

    columns selects which fundamental characters get evaluated (1-based;
    default all).  Pass a shorter list for large types whose non-adjoint
    fundamentals are out of reach.
    """
    from . import charring  # local import; charring depends on this module

    r = datum.rank
    if columns is None:
        columns = tuple(range(1, r + 1))
    else:
        columns = tuple(int(j) for j in columns)
        if any(j < 1 or j > r for j in columns):
            raise ValueError("columns must be between 1 and %d" % r)
    fundamentals = [
        charring.irreducible_character(datum, datum.fundamental_weights[j - 1])
        for j in columns
    ]
    out = []
    for i in range(r + 1):
        kac = tuple(1 if j == i else 0 for j in range(r + 1))
        if i == 0:
            point = (QZERO,) * r
            bound = 1
            order = 1
        else:
            ai = datum.a_coeffs[i - 1]
            point = tuple(x / ai for x in datum.cartan_inv[i - 1])
            bound = ai * datum.exponent_center
            order = 1
            for x in point:
                order = order * int(x.denominator) // math.gcd(
                    order, int(x.denominator)
                )
        values = tuple(
            charring.evaluate_at_torsion(f, point, order) for f in fundamentals
        )
        out.append(
            CornerClass(
                index=i,
                kac_coordinates=kac,
                order_bound=bound,
                order=order,
                point=point,
                columns=columns,
                values=values,
            )
        )
    return out


_STAB_CACHE = {}


def weyl_stabilizer_order(datum, weight):
    """Order of the stabilizer of a dominant weight (a parabolic subgroup).

    The stabilizer is generated by the simple reflections fixing the
    weight; its order is the product of the component Weyl orders of the
    sub-diagram on those nodes.
    """
    zeros = tuple(i for i, x in enumerate(weight) if x == 0)
    key = (datum.letter, datum.rank, zeros)
    hit = _STAB_CACHE.get(key)
    if hit is not None:
        return hit
    C = datum.cartan
    order = 1
    remaining = set(zeros)
    while remaining:
        start = min(remaining)
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in remaining:
                if w not in comp and C[v][w]:
                    comp.add(w)
                    frontier.append(w)
        remaining -= comp
        order *= _component_weyl_order(C, sorted(comp))
    _STAB_CACHE[key] = order
    return order


def _component_weyl_order(C, nodes):
    """Weyl order of a connected sub-diagram, read off its shape."""
    n = len(nodes)
    if n == 1:
        return 2
    deg = {v: 0 for v in nodes}
    bonds = {}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = nodes[a], nodes[b]
            p = C[i][j] * C[j][i]
            if p:
                deg[i] += 1
                deg[j] += 1
                bonds[(i, j)] = p
    top = max(bonds.values())
    if top == 3:
        assert n == 2
        return 12
    if top == 2:
        (i, j) = next(e for e, p in bonds.items() if p == 2)
        if n == 4 and deg[i] == 2 and deg[j] == 2:
            return 1152
        return (2**n) * math.factorial(n)
    degs = sorted(deg.values())
    if degs[-1] <= 2:
        return math.factorial(n + 1)
    branch = next(v for v in nodes if deg[v] == 3)
    rest = [v for v in nodes if v != branch]
    arms = []
    remaining = set(rest)
    while remaining:
        start = min(remaining)
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in remaining:
                if w not in comp and C[v][w]:
                    comp.add(w)
                    frontier.append(w)
        remaining -= comp
        arms.append(len(comp))
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return (2 ** (n - 1)) * math.factorial(n)
    if arms == [1, 2, 2]:
        return 51840
    if arms == [1, 2, 3]:
        return 2903040
    assert arms == [1, 2, 4]
    return 696729600


def _simple_reflection_matrices(datum):
    r = datum.rank
    mats = []
    for i in range(r):
        S = np.eye(r, dtype=np.int16)
        for k in range(r):
            S[k, i] -= datum.cartan[k][i]
        mats.append(S)
    return mats


def weyl_elements(datum, cap=10_000_000, with_sign=False):
    """All Weyl elements as integer matrices on the weight basis.

    Breadth-first closure over simple-reflection products; deterministic
    ordering (discovery order with sorted frontiers).
    """
    if datum.weyl_order > cap:
        raise EnumerationCapError(
            "enumeration refused: |W| = %d exceeds cap %d"
            % (datum.weyl_order, cap)
        )
    r = datum.rank
    gens = _simple_reflection_matrices(datum)
    ident = np.eye(r, dtype=np.int16)
    seen = {ident.tobytes()}
    elements = [ident]
    signs = [1]
    frontier = np.array([ident])
    frontier_signs = np.array([1], dtype=np.int8)
    while len(frontier):
        batches = []
        batch_signs = []
        for S in gens:
            batches.append(frontier @ S)
            batch_signs.append(-frontier_signs)
        cand = np.concatenate(batches)
        cand_signs = np.concatenate(batch_signs)
        keep = []
        for idx in range(len(cand)):
            key = cand[idx].tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(idx)
        if not keep:
            break
        frontier = cand[keep]
        frontier_signs = cand_signs[keep]
        elements.extend(frontier)
        signs.extend(int(s) for s in frontier_signs)
    assert len(elements) == datum.weyl_order
    if with_sign:
        return elements, signs
    return elements


def weyl_min_trace(datum, cap=10_000_000, allow_large=False):
    """Minimum trace of Weyl elements on the reflection representation."""
    if datum.weyl_order > cap and not allow_large:
        raise EnumerationCapError(
            "enumeration refused: |W| = %d exceeds cap %d (pass the "
            "long-running flag to override)" % (datum.weyl_order, cap)
        )
    elements = weyl_elements(datum, cap=max(cap, datum.weyl_order))
    return min(int(np.trace(w)) for w in elements)
