"""Exact arithmetic in the W-invariant weight-lattice ring.

Characters are stored by dominant-weight multiplicities; conversion to
polynomials in the fundamental characters runs either by literal
leading-term subtraction or by an exact q-evaluation of the same
subtraction (the default; identical output, far faster).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .polynomials import QQ, QZERO, Cyc, Poly, qq, qq_str
from .rootdata import RootDatum, weyl_stabilizer_order

DEFAULT_ORBIT_CAP = 10_000_000
DEFAULT_BOX_CAP = 2_000_000


class OrbitCapError(RuntimeError):
    """Raised when an orbit or multiplicity-box expansion exceeds the cap."""


class CharacterElement:
    """W-invariant element of the weight-lattice group ring."""

    __slots__ = ("datum", "mult", "_dim", "_adjoint")

    def __init__(self, datum, mult, dim=None, _adjoint=False):
        self.datum = datum
        clean = {}
        for w, c in mult.items():
            w = tuple(int(x) for x in w)
            if not datum.is_dominant(w):
                raise ValueError("non-dominant key %s" % (w,))
            c = c if isinstance(c, int) else qq(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.mult = {w: c for w, c in clean.items() if c}
        self._dim = dim
        self._adjoint = _adjoint

    def __eq__(self, other):
        return (
            isinstance(other, CharacterElement)
            and self.datum is other.datum
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def is_zero(self):
        return not self.mult

    def add(self, other):
        out = dict(self.mult)
        for w, c in other.mult.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return CharacterElement(self.datum, out)

    def scale(self, c):
        if not c:
            return CharacterElement(self.datum, {})
        return CharacterElement(self.datum, {w: v * c for w, v in self.mult.items()})

    def sub(self, other):
        return self.add(other.scale(-1))

    def dimension(self):
        """Sum of multiplicities over full orbits (exact, via stabilizers)."""
        if self._dim is not None:
            return self._dim
        total = 0
        for w, c in self.mult.items():
            orbit = self.datum.weyl_order // weyl_stabilizer_order(self.datum, w)
            total += c * orbit
        self._dim = total
        return total

    def tops(self):
        """Maximal elements of the dominant support under dominance order."""
        keys = list(self.mult)
        out = []
        for w in keys:
            if not any(v != w and _dominance_geq(self.datum, v, w) for v in keys):
                out.append(w)
        return sorted(out)

    def full_expansion(self, cap=DEFAULT_ORBIT_CAP):
        """Map weight -> multiplicity over the whole Weyl orbit expansion."""
        datum = self.datum
        if self._adjoint:
            out = {}
            zero = (0,) * datum.rank
            for root in datum.positive_roots:
                out[root] = self.mult.get(datum.dominantize(root), 0)
                out[tuple(-x for x in root)] = out[root]
            out[zero] = self.mult.get(zero, 0)
            return {w: c for w, c in out.items() if c}
        out = {}
        total = 0
        for w, c in self.mult.items():
            orbit = datum.weyl_order // weyl_stabilizer_order(datum, w)
            total += orbit
            if total > cap:
                raise OrbitCapError(
                    "orbit expansion refused: more than %d weights" % cap
                )
            frontier = [w]
            seen = {w}
            while frontier:
                nxt = []
                for v in frontier:
                    for i in range(datum.rank):
                        img = datum.reflect(i, v)
                        if img not in seen:
                            seen.add(img)
                            nxt.append(img)
                frontier = nxt
            for v in seen:
                out[v] = out.get(v, 0) + c
        return {w: c for w, c in out.items() if c}

    def to_json(self):
        return {
            "datum": self.datum.name(),
            "mult": [[list(w), qq_str(c)] for w, c in sorted(self.mult.items())],
        }

    def __repr__(self):
        return "CharacterElement(%s, %s)" % (self.datum.name(), self.mult)


def _dominance_geq(datum, v, w):
    """v >= w in dominance order (difference in the positive root cone)."""
    diff = tuple(a - b for a, b in zip(v, w))
    rc = datum.root_coords(diff)
    return all(x >= 0 and x.denominator == 1 for x in rc)


def trivial_character(datum):
    return CharacterElement(datum, {(0,) * datum.rank: 1}, dim=1)


# ---------------------------------------------------------------------------
# irreducible characters

_IRR_CACHE = {}


def irreducible_character(datum, lam, box_cap=DEFAULT_BOX_CAP):
    """Weight multiplicities of the irreducible with highest weight lam.

    Freudenthal recursion over the box of dominant weights below lam; the
    adjoint (highest root) skips straight to the root list.  The dimension
    is checked against the Weyl dimension formula on every construction.
    """
    lam = tuple(int(x) for x in lam)
    if not datum.is_dominant(lam):
        raise ValueError("highest weight must be dominant, got %s" % (lam,))
    key = (datum.content_hash(), lam)
    hit = _IRR_CACHE.get(key)
    if hit is not None:
        return hit

    rank = datum.rank
    zero = (0,) * rank
    if lam == zero:
        out = trivial_character(datum)
        _IRR_CACHE[key] = out
        return out

    if lam == datum.highest_root:
        mult = {zero: rank}
        for root in datum.positive_roots:
            dom = datum.dominantize(root)
            mult[dom] = 1
        out = CharacterElement(datum, mult, dim=datum.dim, _adjoint=True)
        assert _weyl_dimension(datum, lam) == datum.dim
        _IRR_CACHE[key] = out
        return out

    rc_lam = datum.root_coords(lam)
    bounds = [int(x) for x in rc_lam]
    box_size = 1
    for b in bounds:
        box_size *= b + 1
        if box_size > box_cap:
            raise OrbitCapError(
                "weight box for %s exceeds cap %d" % (lam, box_cap)
            )

    # enumerate dominant mu = lam - sum c_i alpha_i, indexed by c
    by_level = {}
    C = datum.cartan

    def descend(i, c, coords):
        if i == rank:
            if all(x >= 0 for x in coords):
                by_level.setdefault(sum(c), []).append((tuple(c), coords))
            return
        cur = list(coords)
        for ci in range(bounds[i] + 1):
            if ci:
                for k in range(rank):
                    cur[k] -= C[k][i]
            descend(i + 1, c + [ci], tuple(cur))

    descend(0, [], lam)

    mult = {}
    pair = datum.pairing
    rho = datum.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    n_lam_rho = datum.norm2(lam_rho)
    c_index = {}
    for level in sorted(by_level):
        for c, mu in by_level[level]:
            c_index[mu] = c
            if level == 0:
                mult[mu] = 1
                continue
            acc = QZERO
            for alpha, alpha_rc in zip(
                datum.positive_roots, datum.positive_root_coords
            ):
                k = 1
                while True:
                    ok = True
                    for t in range(rank):
                        if alpha_rc[t] and k * alpha_rc[t] > c[t]:
                            ok = False
                            break
                    if not ok:
                        break
                    nu = tuple(m + k * a for m, a in zip(mu, alpha))
                    dom = datum.dominantize(nu)
                    mv = mult.get(dom, 0)
                    if mv:
                        acc += mv * pair(nu, alpha)
                    k += 1
            if acc:
                mu_rho = tuple(a + b for a, b in zip(mu, rho))
                denom = n_lam_rho - datum.norm2(mu_rho)
                val = 2 * acc / denom
                assert val.denominator == 1 and val > 0
                mult[mu] = int(val)
    mult = {w: c for w, c in mult.items() if c}

    dim = _weyl_dimension(datum, lam)
    check = 0
    for w, c in mult.items():
        check += c * (datum.weyl_order // weyl_stabilizer_order(datum, w))
    assert check == dim, "Freudenthal dimension mismatch at %s" % (lam,)
    out = CharacterElement(datum, mult, dim=dim)
    _IRR_CACHE[key] = out
    return out


def _weyl_dimension(datum, lam):
    rho = datum.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    num = QQ(1)
    den = QQ(1)
    for alpha in datum.positive_roots:
        num *= datum.pairing(lam_rho, alpha)
        den *= datum.pairing(rho, alpha)
    val = num / den
    assert val.denominator == 1
    return int(val)


def fundamental_characters(datum):
    return [irreducible_character(datum, w) for w in datum.fundamental_weights]


def decompose(c, box_cap=DEFAULT_BOX_CAP):
    """Coefficients of an invariant element in the irreducible basis.

    Peels maximal dominant weights; valid for virtual (rational)
    combinations as well.
    """
    datum = c.datum
    work = dict(c.mult)
    out = {}

    def height(w):
        return sum(datum.root_coords(w))

    while work:
        lam = max(work, key=lambda w: (height(w), w))
        coeff = work[lam]
        out[lam] = coeff
        for w, m in irreducible_character(datum, lam, box_cap=box_cap).mult.items():
            s = work.get(w, 0) - coeff * m
            if s:
                work[w] = s
            else:
                work.pop(w, None)
    return out


# ---------------------------------------------------------------------------
# ring operations

def multiply(a, b, cap=DEFAULT_ORBIT_CAP):
    """Product in the invariant ring via convolution against dominant
    representatives of the larger factor."""
    if a.datum is not b.datum:
        raise ValueError("datum mismatch")
    datum = a.datum
    if a.is_zero() or b.is_zero():
        return CharacterElement(datum, {})
    small, large = (a, b) if _size_guess(a) <= _size_guess(b) else (b, a)
    full_small = small.full_expansion(cap=cap)
    dom_large = large.mult

    candidates = set()
    for nu in full_small:
        for kappa in dom_large:
            s = tuple(x + y for x, y in zip(nu, kappa))
            candidates.add(datum.dominantize(s))

    out = {}
    for delta in candidates:
        acc = 0
        for nu, cn in full_small.items():
            rest = datum.dominantize(tuple(d - x for d, x in zip(delta, nu)))
            cl = dom_large.get(rest)
            if cl:
                acc += cn * cl
        if acc:
            out[delta] = acc
    dim = None
    if a._dim is not None and b._dim is not None:
        dim = a._dim * b._dim
    return CharacterElement(datum, out, dim=dim)


def _size_guess(c):
    total = 0
    for w in c.mult:
        total += c.datum.weyl_order // weyl_stabilizer_order(c.datum, w)
    return total


@dataclass(frozen=True)
class FundamentalPolynomial:
    """Polynomial in the coordinates f_1..f_r of T/W."""

    datum: RootDatum
    poly: Poly

    def to_str(self):
        return self.poly.to_str()

    def to_json(self):
        return {"datum": self.datum.name(), "terms": self.poly.to_json()}


def expand(fp, cap=DEFAULT_ORBIT_CAP):
    """Expand a FundamentalPolynomial back into the invariant ring."""
    datum = fp.datum
    funds = fundamental_characters(datum)
    power_cache = {}

    def monomial_char(mono):
        out = trivial_character(datum)
        for i, e in enumerate(mono):
            for _ in range(e):
                out = multiply(out, funds[i], cap=cap)
        return out

    acc = CharacterElement(datum, {})
    for mono, coeff in sorted(fp.poly.terms.items()):
        if mono not in power_cache:
            power_cache[mono] = monomial_char(mono)
        acc = acc.add(power_cache[mono].scale(coeff))
    return acc


# ---------------------------------------------------------------------------
# q-evaluation: exact leading-term subtraction in a one-variable shadow

class QevalContext:
    """Shared state for converting invariant elements below fixed tops.

    The functional u is a strictly dominant integer covector (positive on
    every simple root), injective on the candidate monomial cone; seeded
    from the datum hash for reproducibility.
    """

    def __init__(self, datum, tops, cap=DEFAULT_ORBIT_CAP):
        self.datum = datum
        self.cap = cap
        self.cone = _cone_monomials(datum, tops)
        self.u = self._pick_functional(tops)
        self.lookup = {}
        for m in self.cone:
            p = sum(a * b for a, b in zip(m, self.u))
            assert p not in self.lookup
            self.lookup[p] = m
        funds = fundamental_characters(datum)
        self.fund_qpolys = [self.char_qpoly(f) for f in funds]
        self._mono_cache = {(0,) * datum.rank: {0: 1}}

    def _pick_functional(self, tops):
        datum = self.datum
        rng = random.Random(int(datum.content_hash()[:12], 16))
        det = datum.fundamental_group_order
        Ci = datum.cartan_inv
        for _ in range(64):
            w = [rng.randint(1, 60) for _ in range(datum.rank)]
            u = [
                int(det * sum(Ci[i][k] * w[i] for i in range(datum.rank)))
                for k in range(datum.rank)
            ]
            vals = {sum(a * b for a, b in zip(m, u)) for m in self.cone}
            if len(vals) == len(self.cone):
                return tuple(u)
        raise RuntimeError("no injective functional found")

    def pvalue(self, weight):
        return sum(a * b for a, b in zip(weight, self.u))

    def char_qpoly(self, char, weight_index=None):
        """Sparse q-image; weight_index weights each e^nu by nu_k."""
        full = char.full_expansion(cap=self.cap)
        out = {}
        for nu, c in full.items():
            if weight_index is not None:
                c = c * nu[weight_index]
                if not c:
                    continue
            p = self.pvalue(nu)
            s = out.get(p, 0) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return out

    def monomial_qpoly(self, mono):
        cached = self._mono_cache.get(mono)
        if cached is not None:
            return cached
        i = max(k for k, e in enumerate(mono) if e)
        parent = tuple(e - (1 if k == i else 0) for k, e in enumerate(mono))
        out = qconv(self.monomial_qpoly(parent), self.fund_qpolys[i])
        top = self.pvalue(mono)
        assert max(out) == top and out[top] == 1
        self._mono_cache[mono] = out
        return out

    def solve(self, qvalue):
        """Peel leading q-terms; returns the exponent->coefficient map."""
        rem = dict(qvalue)
        out = {}
        while rem:
            e = max(rem)
            mono = self.lookup.get(e)
            if mono is None:
                raise AssertionError("leading exponent %d outside cone" % e)
            c = rem.pop(e)
            out[mono] = c
            for p, v in self.monomial_qpoly(mono).items():
                if p == e:
                    continue
                s = rem.get(p, 0) - c * v
                if s:
                    rem[p] = s
                else:
                    rem.pop(p, None)
        return out


def qconv(a, b):
    """Sparse integer convolution of exponent->coefficient maps."""
    if not a or not b:
        return {}
    suma = sum(abs(int(v)) for v in a.values())
    sumb = sum(abs(int(v)) for v in b.values())
    if suma * sumb < 2**62:
        ea = np.fromiter(a.keys(), dtype=np.int64, count=len(a))
        ca = np.fromiter((int(v) for v in a.values()), dtype=np.int64, count=len(a))
        eb = np.fromiter(b.keys(), dtype=np.int64, count=len(b))
        cb = np.fromiter((int(v) for v in b.values()), dtype=np.int64, count=len(b))
        exps = np.add.outer(ea, eb).ravel()
        prods = np.multiply.outer(ca, cb).ravel()
        uniq, inverse = np.unique(exps, return_inverse=True)
        acc = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(acc, inverse, prods)
        return {int(e): int(v) for e, v in zip(uniq, acc) if v}
    out = {}
    for pa, va in a.items():
        for pb, vb in b.items():
            p = pa + pb
            s = out.get(p, 0) + va * vb
            if s:
                out[p] = s
            else:
                out.pop(p, None)
    return out


def _cone_monomials(datum, tops):
    """Exponent vectors m with sum m_i omega_i below some top in dominance."""
    rank = datum.rank
    omega_rc = [datum.root_coords(w) for w in datum.fundamental_weights]
    found = set()
    for top in tops:
        budget0 = datum.root_coords(top)

        def descend(i, m, budget):
            if i == rank:
                if all(x >= 0 and x.denominator == 1 for x in budget):
                    found.add(tuple(m))
                return
            mi = 0
            cur = list(budget)
            while all(x >= 0 for x in cur):
                descend(i + 1, m + [mi], tuple(cur))
                mi += 1
                for k in range(rank):
                    cur[k] -= omega_rc[i][k]
        descend(0, [], budget0)
    return sorted(found)


_QCTX_CACHE = {}


def to_fundamental_polynomial(c, strategy="qeval", cap=DEFAULT_ORBIT_CAP):
    """Express an invariant element as a polynomial in f_1..f_r.

    Both strategies realize repeated leading-dominant-term subtraction;
    "subtract" does it literally in the character ring, "qeval" does the
    same elimination on exact q-evaluations (identical result).
    """
    datum = c.datum
    if c.is_zero():
        return FundamentalPolynomial(datum, Poly.zero(datum.rank))
    if strategy == "subtract":
        return _convert_subtract(c, cap)
    tops = tuple(c.tops())
    key = (datum.content_hash(), tops)
    ctx = _QCTX_CACHE.get(key)
    if ctx is None:
        ctx = QevalContext(datum, tops, cap=cap)
        _QCTX_CACHE[key] = ctx
    coeffs = ctx.solve(ctx.char_qpoly(c))
    poly = Poly(datum.rank, coeffs)
    return FundamentalPolynomial(datum, poly)


def _convert_subtract(c, cap):
    datum = c.datum
    funds = fundamental_characters(datum)
    work = dict(c.mult)
    out = {}
    power_cache = {}

    def height(w):
        return sum(datum.root_coords(w))

    while work:
        lam = max(work, key=lambda w: (height(w), w))
        coeff = work[lam]
        out[lam] = coeff
        if lam not in power_cache:
            prod = trivial_character(datum)
            for i, e in enumerate(lam):
                for _ in range(e):
                    prod = multiply(prod, funds[i], cap=cap)
            power_cache[lam] = prod
        for w, c2 in power_cache[lam].mult.items():
            s = work.get(w, 0) - coeff * c2
            if s:
                work[w] = s
            else:
                work.pop(w, None)
    return FundamentalPolynomial(datum, Poly(datum.rank, out))


# ---------------------------------------------------------------------------
# torsion evaluation

def evaluate_at_torsion(c, point, m, cap=DEFAULT_ORBIT_CAP):
    """Exact value of an invariant element at exp(2 pi i v).

    point is the covector of v: <mu, v> is the dot product with mu's
    weight-basis coordinates.  Returns a cyclotomic value of order m.
    """
    m = int(m)
    if m < 1:
        raise ValueError("order must be positive")
    counts = [QZERO] * m
    for nu, mu_c in c.full_expansion(cap=cap).items():
        val = sum((qq(p) * x for p, x in zip(point, nu) if x), QZERO)
        t = m * val
        if t.denominator != 1:
            raise ValueError(
                "pairing %s of weight %s is not integral at order %d"
                % (qq_str(val), nu, m)
            )
        counts[int(t) % m] += mu_c
    return Cyc(m, counts)


# ---------------------------------------------------------------------------
# restriction to a product of orthogonal A1 subgroups

@dataclass(frozen=True)
class BranchPolynomial:
    """Integer polynomial in the A1-traces t_1..t_n."""

    n: int
    poly: Poly

    def to_str(self):
        return self.poly.to_str(names=["t%d" % (i + 1) for i in range(self.n)])

    def to_json(self):
        return {"n": self.n, "terms": self.poly.to_json()}


def find_a1n_coroots(datum, count=None):
    """A deterministic pairwise-orthogonal set of roots of size count.

    Tries long roots first (the paper's tables arise from long-root
    copies of A1 whenever enough of them are orthogonal), then falls back
    to all roots sorted short-first.
    """
    if count is None:
        count = datum.rank
    norms = {datum.norm2(b) for b in datum.positive_roots}
    long_norm = max(norms)

    def ordered(roots):
        return sorted(
            roots,
            key=lambda b: (sum(datum.root_coords(b)), datum.root_coords(b)),
        )

    longs = ordered([b for b in datum.positive_roots if datum.norm2(b) == long_norm])
    everything = sorted(
        datum.positive_roots,
        key=lambda b: (datum.norm2(b), sum(datum.root_coords(b)), datum.root_coords(b)),
    )

    def search(candidates):
        chosen = []

        def dfs(start):
            if len(chosen) == count:
                return True
            for idx in range(start, len(candidates)):
                beta = candidates[idx]
                if all(datum.pairing(beta, g) == 0 for g in chosen):
                    chosen.append(beta)
                    if dfs(idx + 1):
                        return True
                    chosen.pop()
            return False

        return list(chosen) if dfs(0) else None

    for pool in (longs, everything):
        got = search(pool)
        if got:
            return tuple(got)
    raise ValueError(
        "no %d pairwise orthogonal roots in %s" % (count, datum.name())
    )


def restrict_to_A1n(c, coroots=None, cap=DEFAULT_ORBIT_CAP):
    """Restrict to the chosen A1^n torus and rewrite in t_i = s_i + 1/s_i."""
    datum = c.datum
    if coroots is None:
        coroots = find_a1n_coroots(datum)
    betas = [tuple(int(x) for x in b) for b in coroots]
    root_set = set(datum.positive_roots) | {
        tuple(-x for x in r) for r in datum.positive_roots
    }
    for b in betas:
        if b not in root_set:
            raise ValueError("%s is not a root" % (b,))
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            if datum.pairing(betas[i], betas[j]) != 0:
                raise ValueError("chosen coroots are not orthogonal")

    laurent = {}
    for nu, mu_c in c.full_expansion(cap=cap).items():
        key = []
        for b in betas:
            k = datum.coroot_pairing(nu, b)
            assert k.denominator == 1
            key.append(int(k))
        key = tuple(key)
        laurent[key] = laurent.get(key, 0) + mu_c
    laurent = {k: v for k, v in laurent.items() if v}
    return BranchPolynomial(len(betas), _laurent_to_chebyshev(laurent, len(betas)))


def _laurent_to_chebyshev(laurent, n):
    """Rewrite a per-variable symmetric Laurent map in t_i = s_i + 1/s_i."""
    work = dict(laurent)
    out = {}
    while work:
        k = max(work, key=lambda t: (sum(abs(x) for x in t), tuple(abs(x) for x in t), t))
        m = tuple(abs(x) for x in k)
        coeff = work[k]
        out[m] = out.get(m, 0) + coeff
        for e, binom in _t_power_expansion(m):
            s = work.get(e, 0) - coeff * binom
            if s:
                work[e] = s
            else:
                work.pop(e, None)
    out = {m: c for m, c in out.items() if c}
    return Poly(n, out)


def _t_power_expansion(m):
    """Laurent support of prod (s_i + 1/s_i)^{m_i} with coefficients."""
    axes = []
    for mi in m:
        axes.append([(mi - 2 * j, math.comb(mi, j)) for j in range(mi + 1)])
    out = [((), 1)]
    for axis in axes:
        nxt = []
        for prefix, c in out:
            for e, b in axis:
                nxt.append((prefix + (e,), c * b))
        out = nxt
    return out
