"""Exact solving of zero-dimensional polynomial systems over Q.

Buchberger (sugar strategy) in degree-reverse-lexicographic order, a
Seidenberg radical step from per-variable eliminants, FGLM conversion to
lexicographic order, and a shape-basis read-off with a deterministic
shear fallback when the last coordinate fails to separate the points.
Real roots are isolated with Sturm sequences; every emitted point is
re-certified by substituting its coordinate parametrization into every
original generator.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .polynomials import (
    ORDER_KEYS,
    Poly,
    QONE,
    QZERO,
    grevlex_key,
    iv_add,
    iv_mul,
    lex_key,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    qq,
    qq_str,
)


class SolveError(RuntimeError):
    pass


class NotZeroDimensionalError(SolveError):
    pass


class PairCapError(SolveError):
    pass


class UndecidedSignError(SolveError):
    pass


# ---------------------------------------------------------------------------
# dense univariate polynomials over QQ (ascending coefficient lists)

def upoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def upoly_eval(p, x):
    acc = QZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def upoly_deriv(p):
    return [c * i for i, c in enumerate(p)][1:]


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [QZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return upoly_trim(out)


def upoly_sub(a, b):
    out = [QZERO] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return upoly_trim(out)


def upoly_rem(a, b):
    """Remainder of a by b over QQ."""
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] * inv
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        upoly_trim(a)
    return a


def upoly_gcd(a, b):
    """Monic gcd over QQ.  Delegates to sympy on integer primitives: a
    plain rational Euclid blows up coefficient sizes on the degree-30+
    eliminants this module produces."""
    a, b = upoly_trim(list(a)), upoly_trim(list(b))
    if not a or not b:
        src = a or b
        if not src:
            return []
        inv = 1 / src[-1]
        return [c * inv for c in src]
    if len(a) <= 3 and len(b) <= 3:
        while b:
            a, b = b, upoly_rem(a, b)
        inv = 1 / a[-1]
        return [c * inv for c in a]
    import sympy

    x = sympy.Symbol("x")
    fa = sympy.Poly(list(reversed(upoly_primitive_int(a))), x)
    fb = sympy.Poly(list(reversed(upoly_primitive_int(b))), x)
    g = [qq(int(c)) for c in reversed(fa.gcd(fb).all_coeffs())]
    inv = 1 / g[-1]
    return [c * inv for c in g]


def upoly_primitive_int(p):
    """Scale to primitive integer coefficients with positive lead."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def upoly_squarefree(p):
    g = upoly_gcd(p, upoly_deriv(p))
    if len(g) <= 1:
        return list(p)
    # exact division p / g
    q = []
    rem = list(p)
    dg = len(g) - 1
    inv = 1 / g[-1]
    out = [QZERO] * (len(p) - dg)
    while len(rem) - 1 >= dg and rem:
        c = rem[-1] * inv
        out[len(rem) - 1 - dg] = c
        shift = len(rem) - 1 - dg
        for j in range(dg + 1):
            rem[shift + j] -= c * g[j]
        upoly_trim(rem)
    assert not rem
    return upoly_trim(out)


def sturm_chain(p):
    chain = [ [qq(c) for c in p], [qq(c) for c in upoly_deriv(p)] ]
    while chain[-1]:
        r = [-c for c in upoly_rem(chain[-2], chain[-1])]
        if not r:
            break
        # primitive rescale keeps signs and controls growth
        ints = upoly_primitive_int(r)
        sign = 1 if (r[-1] > 0) == (ints[-1] > 0) else -1
        chain.append([qq(sign * c) for c in ints])
    return chain


def _variations(chain, x):
    prev = 0
    count = 0
    for p in chain:
        v = upoly_eval(p, x)
        s = 1 if v > 0 else (-1 if v < 0 else 0)
        if s and prev and s != prev:
            count += 1
        if s:
            prev = s
    return count


def sturm_count(chain, lo, hi):
    """Number of distinct real roots in (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)


def cauchy_bound(p):
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else QZERO
    return QONE + m / lead


class RootInterval:
    """One real root of a squarefree polynomial, bisection-refinable."""

    __slots__ = ("poly", "chain", "lo", "hi")

    def __init__(self, poly, chain, lo, hi):
        self.poly = poly
        self.chain = chain
        self.lo = lo
        self.hi = hi

    def _split_point(self):
        lo, hi = self.lo, self.hi
        width = hi - lo
        mid = (lo + hi) / 2
        for k in range(2, 40):
            if upoly_eval(self.poly, mid):
                return mid
            mid = lo + width * qq(1, 2**k)
        raise SolveError("could not find a non-root split point")

    def refine(self):
        mid = self._split_point()
        if sturm_count(self.chain, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def refine_to(self, width):
        while self.hi - self.lo > width:
            self.refine()

    def mid(self):
        return (self.lo + self.hi) / 2

    def clone(self):
        return RootInterval(self.poly, self.chain, self.lo, self.hi)


def isolate_real_roots(p):
    """Disjoint isolating intervals for a squarefree QQ polynomial,
    sorted ascending."""
    p = [qq(c) for c in p]
    if len(p) <= 1:
        return []
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    lo, hi = -bound, bound
    while not upoly_eval(p, lo):
        lo -= 1
    while not upoly_eval(p, hi):
        hi += 1
    out = []
    stack = [(lo, hi, sturm_count(chain, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(p, chain, a, b))
            continue
        mid = (a + b) / 2
        k = 2
        while not upoly_eval(p, mid):
            mid = a + (b - a) * qq(1, 2**k)
            k += 1
        nl = sturm_count(chain, a, mid)
        stack.append((a, mid, nl))
        stack.append((mid, b, n - nl))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def upoly_interval(p, box):
    """Interval image over a closed interval, by interval Horner."""
    acc = (QZERO, QZERO)
    for c in reversed(p):
        acc = iv_mul(acc, box)
        acc = iv_add(acc, (c, c))
    return acc


# ---------------------------------------------------------------------------
# ideals and Groebner bases

@dataclass(frozen=True)
class Ideal:
    nvars: int
    gens: tuple
    order: str = "grevlex"

    @staticmethod
    def of(nvars, gens, order="grevlex"):
        cleaned = []
        for g in gens:
            if not isinstance(g, Poly):
                raise TypeError("generators must be Poly")
            if g.nvars != nvars:
                raise ValueError("variable count mismatch")
            if g:
                cleaned.append(_normalize(g))
        return Ideal(nvars, tuple(cleaned), order)

    def to_json(self):
        return {
            "nvars": self.nvars,
            "order": self.order,
            "gens": [g.to_json() for g in self.gens],
        }


def _normalize(p):
    _, prim = p.content_primitive()
    lm = prim.leading_monomial("grevlex")
    if prim.terms[lm] < 0:
        prim = -prim
    return prim


def normal_form(p, basis, key):
    """Full reduction; basis entries are (lm, lc, poly)."""
    work = dict(p.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, lc, q in basis:
            if monomial_divides(lm, m):
                hit = (lm, lc, q)
                break
        if hit is None:
            rem[m] = c
            continue
        lm, lc, q = hit
        shift = monomial_div(m, lm)
        factor = c / lc
        for mq, cq in q.terms.items():
            if mq == lm:
                continue
            mm = monomial_mul(mq, shift)
            s = work.get(mm, QZERO) - factor * cq
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return Poly(p.nvars, rem, _trusted=True)


def _spoly(f, g, key):
    lmf = max(f.terms, key=key)
    lmg = max(g.terms, key=key)
    l = monomial_lcm(lmf, lmg)
    mf = monomial_div(l, lmf)
    mg = monomial_div(l, lmg)
    pf = Poly(f.nvars, {monomial_mul(m, mf): c for m, c in f.terms.items()}, _trusted=True)
    pg = Poly(g.nvars, {monomial_mul(m, mg): c for m, c in g.terms.items()}, _trusted=True)
    return pf.scale(1 / f.terms[lmf]) - pg.scale(1 / g.terms[lmg])


def groebner(ideal, pair_cap=200_000):
    """Reduced Groebner basis (deterministic), sugar pair selection."""
    key = ORDER_KEYS[ideal.order]
    G = []
    sugars = []
    lms = []

    def add_elem(p, sugar):
        G.append(p)
        sugars.append(sugar)
        lms.append(max(p.terms, key=key))

    for g in ideal.gens:
        add_elem(g, g.total_degree())
    if not G:
        raise NotZeroDimensionalError("zero ideal has no finite solution set")

    pairs = {}
    done = set()

    def pair_sugar(i, j):
        l = monomial_lcm(lms[i], lms[j])
        si = sugars[i] + sum(monomial_div(l, lms[i]))
        sj = sugars[j] + sum(monomial_div(l, lms[j]))
        return max(si, sj)

    def push_pair(i, j):
        if i > j:
            i, j = j, i
        if (i, j) in done or (i, j) in pairs:
            return
        # product criterion
        if monomial_mul(lms[i], lms[j]) == monomial_lcm(lms[i], lms[j]):
            done.add((i, j))
            return
        pairs[(i, j)] = (pair_sugar(i, j), key(monomial_lcm(lms[i], lms[j])), i, j)

    n0 = len(G)
    for i in range(n0):
        for j in range(i + 1, n0):
            push_pair(i, j)

    processed = 0
    while pairs:
        processed += 1
        if processed > pair_cap:
            raise PairCapError(
                "pair-queue limit %d exceeded; refusing silent truncation"
                % pair_cap
            )
        best = min(pairs, key=pairs.get)
        sugar, _, i, j = pairs.pop(best)
        done.add(best)
        # chain criterion
        l = monomial_lcm(lms[i], lms[j])
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if monomial_divides(lms[k], l):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        basis = [(lms[t], G[t].terms[lms[t]], G[t]) for t in range(len(G))]
        r = normal_form(_spoly(G[i], G[j], key), basis, key)
        if r:
            r = _normalize(r)
            t = len(G)
            add_elem(r, max(sugar, r.total_degree()))
            for u in range(t):
                push_pair(u, t)

    # minimalize and inter-reduce
    keep = []
    for i, lm in enumerate(lms):
        if not any(
            j != i and monomial_divides(lms[j], lm)
            and (lms[j] != lm or j < i)
            for j in range(len(G))
        ):
            keep.append(i)
    reduced = []
    keep_set = list(keep)
    for i in keep_set:
        others = [
            (lms[j], G[j].terms[lms[j]], G[j]) for j in keep_set if j != i
        ]
        r = normal_form(G[i], others, key)
        assert r, "minimal basis element reduced away"
        reduced.append(_normalize(r))
    reduced.sort(key=lambda p: key(max(p.terms, key=key)))

    basis = [(max(p.terms, key=key), p.terms[max(p.terms, key=key)], p) for p in reduced]
    for g in ideal.gens:
        assert not normal_form(g, basis, key), "generator fails membership"
    return Ideal(ideal.nvars, tuple(reduced), ideal.order)


def _leading_monomials(basis_ideal):
    key = ORDER_KEYS[basis_ideal.order]
    return [max(g.terms, key=key) for g in basis_ideal.gens]


def staircase(basis_ideal):
    """Monomials below the staircase; None when infinite."""
    lms = _leading_monomials(basis_ideal)
    n = basis_ideal.nvars
    bounds = [None] * n
    for lm in lms:
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 0:
            return []  # ideal contains a constant: empty variety
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
    if any(b is None for b in bounds):
        return None
    out = []

    def descend(i, mono):
        if i == n:
            m = tuple(mono)
            if not any(monomial_divides(lm, m) for lm in lms):
                out.append(m)
            return
        for e in range(bounds[i]):
            descend(i + 1, mono + [e])

    descend(0, [])
    out.sort(key=grevlex_key)
    return out


# ---------------------------------------------------------------------------
# linear algebra over QQ for FGLM-style vector sequences

class _Echelon:
    """Incremental row reduction with dependency extraction."""

    def __init__(self):
        self.rows = {}  # pivot index -> (vector dict, combo dict)

    def insert(self, vec, tag):
        """Reduce vec; returns None if independent (row stored under tag),
        else the dependency combo {tag: coeff}."""
        vec = dict(vec)
        combo = {tag: QONE}
        while vec:
            piv = min(vec)
            if piv not in self.rows:
                c = vec[piv]
                inv = 1 / c
                vec = {k: v * inv for k, v in vec.items()}
                combo = {k: v * inv for k, v in combo.items()}
                self.rows[piv] = (vec, combo)
                return None
            rvec, rcombo = self.rows[piv]
            c = vec[piv]
            for k, v in rvec.items():
                s = vec.get(k, QZERO) - c * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            for k, v in rcombo.items():
                s = combo.get(k, QZERO) - c * v
                if s:
                    combo[k] = s
                else:
                    combo.pop(k, None)
        return combo


class _Quotient:
    """Multiplication structure of a zero-dimensional quotient algebra."""

    def __init__(self, basis_ideal):
        self.nvars = basis_ideal.nvars
        self.key = ORDER_KEYS[basis_ideal.order]
        self.basis = [
            (max(g.terms, key=self.key), g.terms[max(g.terms, key=self.key)], g)
            for g in basis_ideal.gens
        ]
        mons = staircase(basis_ideal)
        if mons is None:
            raise NotZeroDimensionalError(
                "leading terms admit no pure power in some variable"
            )
        self.monomials = mons
        self.index = {m: i for i, m in enumerate(mons)}
        self.dim = len(mons)
        self._mult_cache = {}

    def nf_vec(self, poly):
        r = normal_form(poly, self.basis, self.key)
        out = {}
        for m, c in r.terms.items():
            out[self.index[m]] = c
        return out

    def mult_column(self, var, j):
        got = self._mult_cache.get((var, j))
        if got is None:
            m = self.monomials[j]
            shifted = m[:var] + (m[var] + 1,) + m[var + 1:]
            got = self.nf_vec(Poly(self.nvars, {shifted: QONE}, _trusted=True))
            self._mult_cache[(var, j)] = got
        return got

    def mult_apply(self, var, vec):
        out = {}
        for j, c in vec.items():
            for k, v in self.mult_column(var, j).items():
                s = out.get(k, QZERO) + c * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def variable_min_poly(self, var):
        """Monic generator of (ideal) intersected with QQ[x_var], ascending."""
        ech = _Echelon()
        vec = self.nf_vec(Poly.const(self.nvars, 1))
        k = 0
        while True:
            combo = ech.insert(vec, k)
            if combo is not None:
                deg = max(combo)
                coeffs = [QZERO] * (deg + 1)
                for kk, v in combo.items():
                    coeffs[kk] = v
                inv = 1 / coeffs[deg]
                return [c * inv for c in coeffs]
            vec = self.mult_apply(var, vec)
            k += 1
            assert k <= self.dim + 1


class _ReducedQuotient:
    """The quotient algebra modulo its nilradical.

    In characteristic zero the nilradical is the kernel of the trace form
    B(u, v) = Tr(M_uv), so it falls out of exact linear algebra on the
    multiplication tensor; no second Groebner run is needed.  The reduced
    dimension equals the number of distinct complex points.
    """

    def __init__(self, quot):
        self.base = quot
        self.nvars = quot.nvars
        D = quot.dim
        # multiplication tensor T[m][j] = NF(b_m * b_j), built by walking
        # the staircase (divisors of staircase monomials stay inside it)
        index = quot.index
        T = [None] * D
        assert (0,) * self.nvars in index, "staircase lacks the unit monomial"
        T[index[(0,) * self.nvars]] = [{j: QONE} for j in range(D)]
        order = sorted(range(D), key=lambda m: sum(quot.monomials[m]))
        for mi in order:
            mono = quot.monomials[mi]
            if sum(mono) == 0:
                continue
            i = next(k for k in range(self.nvars) if mono[k])
            parent = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
            pj = index[parent]
            T[mi] = [quot.mult_apply(i, T[pj][j]) for j in range(D)]
        traces = [
            sum((T[m][j].get(j, QZERO) for j in range(D)), QZERO)
            for m in range(D)
        ]
        # trace form and its kernel
        kernel_rows = _nullspace(
            [
                [
                    sum(
                        (c * traces[m] for m, c in T[j][k].items()),
                        QZERO,
                    )
                    for k in range(D)
                ]
                for j in range(D)
            ]
        )
        # echelonize the nilradical fully (no stored row contains another
        # row's pivot) so projection is a single elimination pass
        self._nil = {}
        for row in kernel_rows:
            vec = {i: c for i, c in enumerate(row) if c}
            vec = self._project(vec)
            if not vec:
                continue
            piv = min(vec)
            inv = 1 / vec[piv]
            vec = {k: v * inv for k, v in vec.items()}
            for other in self._nil.values():
                c = other.get(piv)
                if not c:
                    continue
                for k, v in vec.items():
                    s = other.get(k, QZERO) - c * v
                    if s:
                        other[k] = s
                    else:
                        other.pop(k, None)
            self._nil[piv] = vec
        self.dim = D - len(self._nil)

    def _project(self, vec):
        vec = dict(vec)
        for piv in sorted(set(vec) & set(self._nil)):
            c = vec.get(piv)
            if not c:
                continue
            for k, v in self._nil[piv].items():
                s = vec.get(k, QZERO) - c * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return vec

    def nf_vec(self, poly):
        return self._project(self.base.nf_vec(poly))

    def mult_apply(self, var, vec):
        return self._project(self.base.mult_apply(var, vec))


def _nullspace(matrix):
    """Kernel basis of an exact rational matrix (rows of the kernel)."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    pivots = {}
    for col in range(n):
        hit = None
        for i in range(len(rows)):
            if i not in pivots.values() and rows[i][col]:
                hit = i
                break
        if hit is None:
            continue
        pivots[col] = hit
        inv = 1 / rows[hit][col]
        rows[hit] = [c * inv for c in rows[hit]]
        for i in range(len(rows)):
            if i != hit and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[hit])]
    out = []
    free_cols = [c for c in range(n) if c not in pivots]
    for fc in free_cols:
        v = [QZERO] * n
        v[fc] = QONE
        for col, i in pivots.items():
            v[col] = -rows[i][fc]
        out.append(v)
    return out


def fglm_lex(quot):
    """Reduced lex basis of a zero-dimensional ideal from its quotient."""
    n = quot.nvars
    ech = _Echelon()
    heap = [(0,) * n]
    seen = {(0,) * n}
    processed = {}  # lex staircase monomial -> nf vector
    lex_lms = []
    out = []
    while heap:
        m = heapq.heappop(heap)
        if any(monomial_divides(lm, m) for lm in lex_lms):
            continue
        if sum(m) == 0:
            vec = quot.nf_vec(Poly.const(n, 1))
        else:
            # split off one variable whose parent was processed
            for i in range(n):
                if m[i]:
                    parent = m[:i] + (m[i] - 1,) + m[i + 1:]
                    if parent in processed:
                        vec = quot.mult_apply(i, processed[parent])
                        break
            else:
                raise AssertionError("unreachable monomial %s" % (m,))
        combo = ech.insert(vec, m)
        if combo is None:
            processed[m] = vec
            for i in range(n):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if child not in seen:
                    seen.add(child)
                    heapq.heappush(heap, child)
        else:
            terms = dict(combo)
            scale = 1 / terms[m]
            poly = Poly(n, {mm: c * scale for mm, c in terms.items()})
            out.append(poly)
            lex_lms.append(m)
    assert len(processed) == quot.dim
    out.sort(key=lambda p: lex_key(max(p.terms, key=lex_key)))
    return out


# ---------------------------------------------------------------------------
# algebraic numbers and points

class NumberField:
    """QQ[alpha] for alpha a designated real root of an irreducible poly."""

    def __init__(self, minpoly_int, root):
        self.minpoly = tuple(int(c) for c in minpoly_int)
        self.monic = self._monicize(minpoly_int)
        self.degree = len(self.minpoly) - 1
        self.root = root  # RootInterval, or exact rational when degree 1

    @staticmethod
    def _monicize(p):
        inv = 1 / qq(p[-1])
        return tuple(qq(c) * inv for c in p)

    def reduce(self, vec):
        """Reduce a dense QQ list modulo the monic minimal polynomial."""
        vec = [qq(c) for c in vec]
        d = self.degree
        for i in range(len(vec) - 1, d - 1, -1):
            c = vec[i]
            if c:
                for j in range(d):
                    vec[i - d + j] -= c * self.monic[j]
            vec[i] = QZERO
        out = vec[:d]
        while len(out) < d:
            out.append(QZERO)
        return FieldElement(self, tuple(out))

    def from_rational(self, c):
        c = qq(c)
        vec = [c] + [QZERO] * (self.degree - 1)
        return FieldElement(self, tuple(vec))

    def generator(self):
        if self.degree == 1:
            return self.from_rational(-self.monic[0])
        vec = [QZERO, QONE] + [QZERO] * (self.degree - 2)
        return FieldElement(self, tuple(vec))

    def root_box(self):
        if self.degree == 1:
            a = -self.monic[0]
            return (a, a)
        return (self.root.lo, self.root.hi)

    def refine_root(self):
        if self.degree > 1:
            self.root.refine()

    def sign_of(self, elem):
        """Exact sign of a field element at the designated root."""
        if elem.is_zero():
            return 0
        if self.degree == 1:
            v = elem.vec[0]
            return 1 if v > 0 else -1
        # nonzero mod an irreducible polynomial never vanishes at alpha
        for _ in range(512):
            img = upoly_interval(list(elem.vec), self.root_box())
            if img[0] > 0:
                return 1
            if img[1] < 0:
                return -1
            self.refine_root()
        raise UndecidedSignError(
            "sign refinement exhausted for %s" % (elem,)
        )


class FieldElement:
    __slots__ = ("field", "vec")

    def __init__(self, field, vec):
        self.field = field
        self.vec = vec

    def is_zero(self):
        return all(not c for c in self.vec)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.vec == other.vec
        return self.vec[0] == qq(other) and all(not c for c in self.vec[1:])

    def __hash__(self):
        return hash(self.vec)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.vec, o.vec))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(
            self.field, tuple(a - b for a, b in zip(self.vec, o.vec))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.vec))

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            c = qq(other)
            return FieldElement(self.field, tuple(a * c for a in self.vec))
        prod = [QZERO] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        prod[i + j] += a * b
        return self.field.reduce(prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.field.from_rational(1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self):
        """Extended Euclid against the monic minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError
        r0 = [qq(c) for c in self.field.monic]
        r1 = upoly_trim([qq(c) for c in self.vec])
        s0, s1 = [], [QONE]
        while True:
            if len(r1) == 1:
                inv = 1 / r1[0]
                return self.field.reduce([c * inv for c in s1])
            q, r = _upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
            assert r1, "element not invertible"

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self):
        return self.field.sign_of(self)

    def interval(self):
        return upoly_interval(list(self.vec), self.field.root_box())

    def approx(self, width=qq(1, 2**40)):
        if self.field.degree > 1:
            self.field.root.refine_to(width)
        lo, hi = self.interval()
        return float((lo + hi) / 2)

    def __repr__(self):
        return "FieldElement(%s)" % ([qq_str(c) for c in self.vec],)


def _upoly_divmod(a, b):
    a = list(a)
    q = [QZERO] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    inv = 1 / b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1] * inv
        shift = len(a) - 1 - db
        q[shift] = c
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        upoly_trim(a)
    return upoly_trim(q), a


@dataclass
class CoordinateInfo:
    minpoly: tuple      # primitive integer coefficients, squarefree
    interval: tuple     # (lo, hi) rationals containing exactly this root
    multiple: bool      # root of the pre-radical eliminant's repeated part


class AlgebraicPoint:
    """A real solution with coordinates in one number field."""

    def __init__(self, nvars, field, coords, coord_info):
        self.nvars = nvars
        self.field = field
        self.coords = coords          # FieldElement per variable
        self.coord_info = coord_info  # CoordinateInfo per variable

    def value_of(self, poly):
        return poly.evaluate(self.coords, convert=self.field.from_rational)

    def is_rational(self):
        return self.field.degree == 1

    def rational_coords(self):
        assert self.is_rational()
        return tuple(c.vec[0] for c in self.coords)

    def approx(self):
        return tuple(c.approx() for c in self.coords)

    def sort_key(self):
        out = []
        for c in self.coords:
            lo, hi = c.interval()
            out.append((lo + hi) / 2)
        return tuple(out)

    def to_json(self):
        out = []
        for info, c in zip(self.coord_info, self.coords):
            lo, hi = c.interval()
            out.append(
                {
                    "minpoly": list(info.minpoly),
                    "interval": [qq_str(lo), qq_str(hi)],
                    "decimal": c.approx(),
                    "multiple": info.multiple,
                }
            )
        return {"coordinates": out, "field_degree": self.field.degree}

    def __repr__(self):
        return "AlgebraicPoint(%s)" % (self.approx(),)


# ---------------------------------------------------------------------------
# the zero-dimensional solver

_SHEAR_LIMIT = 6


def solve_zero_dim(ideal, pair_cap=200_000):
    """All real points of a zero-dimensional system, certified exactly."""
    ideal = Ideal.of(ideal.nvars, ideal.gens, "grevlex")
    if not ideal.gens:
        raise NotZeroDimensionalError("zero ideal has no finite solution set")
    gb = groebner(ideal, pair_cap=pair_cap)
    quot = _Quotient(gb)
    if quot.dim == 0:
        return []

    # per-variable eliminants; repeats force a pass to the reduced algebra
    repeated = {}
    needs_radical = False
    for i in range(ideal.nvars):
        mp = quot.variable_min_poly(i)
        sq = upoly_squarefree(mp)
        if len(sq) != len(mp):
            needs_radical = True
            g = upoly_gcd(mp, upoly_deriv(mp))
            repeated[i] = upoly_primitive_int(g)
    # squarefree eliminants in every variable already certify radicality;
    # otherwise quotient out the nilradical (trace-form kernel) so the lex
    # conversion below sees one basis vector per distinct point
    work = _ReducedQuotient(quot) if needs_radical else quot

    shape = _try_shape(work)
    if shape is None:
        shape = _shear_shape(ideal, gb, pair_cap, needs_radical)
    g_poly, h_polys = shape

    points = _assemble_points(ideal, g_poly, h_polys, repeated)
    points.sort(key=lambda p: p.sort_key())
    return points


def _try_shape(quot):
    """Lex basis in shape position: (g(x_n), x_i - h_i(x_n))."""
    n = quot.nvars
    lexgb = fglm_lex(quot)
    last = n - 1
    g_poly = None
    h_polys = [None] * n
    for p in lexgb:
        used = p.used_vars()
        if used <= {last}:
            if g_poly is not None:
                return None
            g_poly = [p.coeff(_mono(n, last, e)) for e in range(p.degree_in(last) + 1)]
            continue
        lm = max(p.terms, key=lex_key)
        i = next(k for k in range(n) if lm[k])
        if lm != _mono_t(n, i, 1) or not (used <= {i, last}):
            return None
        if p.coeff(lm) != 1:
            return None
        h = [-p.coeff(_mono(n, last, e)) for e in range(p.degree_in(last) + 1)]
        if h_polys[i] is not None:
            return None
        h_polys[i] = h
    if g_poly is None:
        return None
    for i in range(n - 1):
        if h_polys[i] is None:
            return None
    h_polys[last] = [QZERO, QONE]  # x_last = the parameter itself
    return g_poly, h_polys


def _mono(n, i, e):
    m = [0] * n
    m[i] = e
    return tuple(m)


def _mono_t(n, i, e):
    return _mono(n, i, e)


def _shear_shape(orig_ideal, gb, pair_cap, needs_radical):
    """Append z = x_last + sum c_k x_k as a new last variable and retry."""
    n = orig_ideal.nvars
    for t in range(1, _SHEAR_LIMIT + 1):
        coeffs = [qq(t ** (n - 1 - k)) for k in range(n - 1)] + [QONE]
        gens = []
        for g in gb.gens:
            gens.append(Poly(n + 1, {m + (0,): c for m, c in g.terms.items()}))
        zdef = {(0,) * n + (1,): QONE}
        for k in range(n):
            zdef[_mono(n + 1, k, 1)] = -coeffs[k]
        gens.append(Poly(n + 1, zdef))
        gb2 = groebner(Ideal.of(n + 1, gens, "grevlex"), pair_cap=pair_cap)
        quot2 = _Quotient(gb2)
        work2 = _ReducedQuotient(quot2) if needs_radical else quot2
        shape = _try_shape(work2)
        if shape is None:
            continue
        g_poly, h_polys = shape
        return g_poly, h_polys[:n]
    raise SolveError("no separating linear form found (%d attempts)" % _SHEAR_LIMIT)


def _assemble_points(orig_ideal, g_poly, h_polys, repeated):
    import sympy

    n = orig_ideal.nvars
    g_int = upoly_primitive_int(upoly_squarefree(g_poly))
    x = sympy.Symbol("x")
    g_sym = sympy.Poly(list(reversed(g_int)), x)
    factors = [
        [int(c) for c in reversed(f.all_coeffs())]
        for f, _ in g_sym.factor_list()[1]
    ]

    points = []
    for fac in factors:
        roots = isolate_real_roots([qq(c) for c in fac])
        for root in roots:
            if len(fac) == 2:
                field = NumberField(fac, None)
            else:
                field = NumberField(fac, root.clone())
            param = field.generator()
            coords = [
                _eval_upoly_in_field(h, param) for h in h_polys
            ]
            # certificate: every original generator vanishes identically
            for gen in orig_ideal.gens:
                val = gen.evaluate(coords, convert=field.from_rational)
                assert val.is_zero(), "solution fails generator certificate"
            info = [
                _coordinate_info(field, coords[i], repeated.get(i))
                for i in range(n)
            ]
            points.append(AlgebraicPoint(n, field, coords, info))
    return points


def _eval_upoly_in_field(coeffs, x):
    acc = x.field.from_rational(0)
    for c in reversed(coeffs):
        acc = acc * x + x.field.from_rational(c)
    return acc


def _minpoly_of_value(value):
    """Primitive integer minimal polynomial of a field element.

    First linear dependence among 1, v, v^2, ... over the power basis of
    the field; minimality makes the result irreducible, so no factoring
    or resultants are needed."""
    field = value.field
    if all(not c for c in value.vec[1:]):
        c = value.vec[0]
        return upoly_primitive_int([-c, QONE])
    ech = _Echelon()
    power = field.from_rational(1)
    k = 0
    while True:
        vec = {i: c for i, c in enumerate(power.vec) if c}
        combo = ech.insert(vec, k)
        if combo is not None:
            deg = max(combo)
            coeffs = [QZERO] * (deg + 1)
            for kk, c in combo.items():
                coeffs[kk] = c
            return upoly_primitive_int(coeffs)
        power = power * value
        k += 1
        assert k <= field.degree, "no dependence within the field degree"


def _isolate_among(cand, chain, value):
    """Interval around a FieldElement containing exactly one root of the
    squarefree polynomial cand (which the element is a root of)."""
    cq = [qq(c) for c in cand]
    eps = qq(1, 2**10)
    for _ in range(512):
        lo, hi = value.interval()
        lo2, hi2 = lo - eps, hi + eps
        step = eps / 16
        while not upoly_eval(cq, lo2):
            lo2 -= step
        while not upoly_eval(cq, hi2):
            hi2 += step
        if sturm_count(chain, lo2, hi2) == 1:
            return (lo2, hi2)
        if value.field.degree > 1:
            value.field.refine_root()
        eps = eps / 16
    raise UndecidedSignError("coordinate isolation exhausted")


def _coordinate_info(field, value, repeated_part):
    cand = _minpoly_of_value(value)
    chain = sturm_chain([qq(c) for c in cand])
    interval = _isolate_among(cand, chain, value)
    multiple = False
    if repeated_part and len(repeated_part) > 1:
        multiple = _vanishes_on(field, [qq(c) for c in repeated_part], value)
    return CoordinateInfo(tuple(cand), interval, multiple)


def _vanishes_on(field, coeffs, value):
    acc = field.from_rational(0)
    for c in reversed(coeffs):
        acc = acc * value + field.from_rational(c)
    return acc.is_zero()


def rational_point(values):
    """AlgebraicPoint with the given exact rational coordinates."""
    values = [qq(v) for v in values]
    field = NumberField((0, 1), None)  # QQ presented as Q[x]/(x)
    coords = [field.from_rational(v) for v in values]
    info = [
        CoordinateInfo(
            tuple(upoly_primitive_int([-v, QONE])), (v, v), False
        )
        for v in values
    ]
    return AlgebraicPoint(len(values), field, coords, info)


def sign_of(poly, point):
    """Exact sign of a polynomial at an algebraic point: -1, 0, or 1."""
    return point.value_of(poly).sign()


# ---------------------------------------------------------------------------
# exact comparison of algebraic values

class AlgValue:
    """A real algebraic number as (irreducible minpoly, isolating root)."""

    __slots__ = ("minpoly", "root")

    def __init__(self, minpoly, root):
        self.minpoly = tuple(int(c) for c in minpoly)
        self.root = root  # RootInterval, or (a, a) rational pair for deg 1

    @staticmethod
    def from_rational(c):
        c = qq(c)
        p = (-int(c.numerator), int(c.denominator))
        return AlgValue(p, (c, c))

    @staticmethod
    def from_field_element(elem):
        if all(not c for c in elem.vec[1:]):
            return AlgValue.from_rational(elem.vec[0])
        cand = _minpoly_of_value(elem)
        if len(cand) == 2:
            return AlgValue.from_rational(qq(-cand[0], cand[1]))
        qc = [qq(c) for c in cand]
        chain = sturm_chain(qc)
        lo, hi = _isolate_among(cand, chain, elem)
        return AlgValue(cand, RootInterval(qc, chain, lo, hi))

    def is_rational(self):
        return len(self.minpoly) == 2

    def as_rational(self):
        assert self.is_rational()
        return qq(-self.minpoly[0], self.minpoly[1])

    def box(self):
        if isinstance(self.root, tuple):
            return self.root
        return (self.root.lo, self.root.hi)

    def _refine(self):
        if not isinstance(self.root, tuple):
            self.root.refine()

    def approx(self):
        if isinstance(self.root, tuple):
            return float(self.root[0])
        self.root.refine_to(qq(1, 2**40))
        return float(self.root.mid())

    def cmp(self, other):
        if self.minpoly == other.minpoly:
            if self._same_root(other):
                return 0
        for _ in range(512):
            a = self.box()
            b = other.box()
            if a[1] < b[0]:
                return -1
            if b[1] < a[0]:
                return 1
            self._refine()
            other._refine()
        raise UndecidedSignError("comparison refinement exhausted")

    def _same_root(self, other):
        if isinstance(self.root, tuple) or isinstance(other.root, tuple):
            return self.box() == other.box()
        # both isolate a root of the same squarefree polynomial with
        # non-root endpoints: the roots agree iff the overlap holds one
        a, b = self.box(), other.box()
        lo, hi = max(a[0], b[0]), min(a[1], b[1])
        if lo >= hi:
            return False
        return sturm_count(self.root.chain, lo, hi) >= 1

    def to_json(self):
        lo, hi = self.box()
        return {
            "minpoly": list(self.minpoly),
            "interval": [qq_str(lo), qq_str(hi)],
            "decimal": self.approx(),
        }

    def __repr__(self):
        return "AlgValue(%s ~ %.6f)" % (list(self.minpoly), self.approx())
