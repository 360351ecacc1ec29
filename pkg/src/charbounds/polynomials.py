"""Exact scalar and sparse polynomial arithmetic shared across the package.

Rationals are gmpy2.mpq when available (fractions.Fraction otherwise),
monomials are exponent tuples, and cyclotomic values are coefficient
vectors reduced modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

import math
from functools import lru_cache

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

QZERO = QQ(0)
QONE = QQ(1)


def qq(x, den=None) -> QQ:
    """Coerce an int, string "p/q", rational, or numerator/denominator pair."""
    if den is not None:
        return QQ(x, den)
    if isinstance(x, str):
        if "/" in x:
            num, d = x.split("/", 1)
            return QQ(int(num), int(d))
        return QQ(int(x))
    return QQ(x)


def qq_str(x) -> str:
    q = qq(x)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def dyadic_str(x) -> str:
    """Render a rational as "a/2^k" when the denominator is a power of two."""
    q = qq(x)
    den = int(q.denominator)
    k = den.bit_length() - 1
    if den == 1 << k:
        return "%d/2^%d" % (int(q.numerator), k) if k else str(int(q.numerator))
    return qq_str(q)


# ---------------------------------------------------------------------------
# monomial orders; a monomial is a tuple of non-negative integer exponents

def lex_key(m):
    return m


def grevlex_key(m):
    # ties broken so the last nonzero entry of the difference is negative
    return (sum(m), tuple(-e for e in reversed(m)))


ORDER_KEYS = {"lex": lex_key, "grevlex": grevlex_key}


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b, assuming divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None, _trusted=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for mono, c in terms.items():
                c = qq(c)
                if c:
                    mono = tuple(int(e) for e in mono)
                    if len(mono) != nvars:
                        raise ValueError("exponent vector length mismatch")
                    clean[mono] = clean.get(mono, QZERO) + c
            self.terms = {m: c for m, c in clean.items() if c}

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(nvars):
        return Poly(nvars, {}, _trusted=True)

    @staticmethod
    def const(nvars, c):
        c = qq(c)
        if not c:
            return Poly.zero(nvars)
        return Poly(nvars, {(0,) * nvars: c}, _trusted=True)

    @staticmethod
    def variable(nvars, i):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return Poly(nvars, {mono: QONE}, _trusted=True)

    # -- structure ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def leading_monomial(self, order="grevlex"):
        key = ORDER_KEYS[order]
        return max(self.terms, key=key)

    def coeff(self, mono):
        return self.terms.get(tuple(mono), QZERO)

    def constant(self):
        return self.terms.get((0,) * self.nvars, QZERO)

    def used_vars(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, QZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(self.nvars, terms, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, QZERO) - c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(self.nvars, terms, _trusted=True)

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = monomial_mul(ma, mb)
                    s = out.get(m, QZERO) + ca * cb
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            return Poly(self.nvars, out, _trusted=True)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = qq(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def diff(self, i):
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                s = out.get(dm, QZERO) + c * e
                if s:
                    out[dm] = s
                else:
                    out.pop(dm, None)
        return Poly(self.nvars, out, _trusted=True)

    def subs_values(self, assignment):
        """Substitute rational values for some variables (index -> value)."""
        out = {}
        for m, c in self.terms.items():
            val = c
            newm = list(m)
            for i, v in assignment.items():
                e = m[i]
                if e:
                    val = val * qq(v) ** e
                newm[i] = 0
            if val:
                key = tuple(newm)
                s = out.get(key, QZERO) + val
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Poly(self.nvars, out, _trusted=True)

    def extract_vars(self, indices):
        """Project onto the listed variables; others must not occur."""
        index_map = {v: k for k, v in enumerate(indices)}
        out = {}
        for m, c in self.terms.items():
            newm = [0] * len(indices)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i not in index_map:
                    raise ValueError("variable %d still present" % i)
                newm[index_map[i]] = e
            out[tuple(newm)] = c
        return Poly(len(indices), out, _trusted=True)

    def evaluate(self, values, convert=None):
        """Evaluate at a point; works for QQ, float, complex or ring elements."""
        acc = None
        for m, c in self.terms.items():
            term = convert(c) if convert else c
            for i, e in enumerate(m):
                if e:
                    term = term * values[i] ** e
            acc = term if acc is None else acc + term
        if acc is None:
            return convert(QZERO) if convert else QZERO
        return acc

    def evaluate_float(self, values):
        return self.evaluate([float(v) for v in values], convert=float)

    def content_primitive(self):
        """Return (content, primitive integer Poly); zero has content 0."""
        if not self.terms:
            return QZERO, self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, int(c.denominator))
        num = 0
        for c in self.terms.values():
            num = math.gcd(num, abs(int(c.numerator * (den // c.denominator))))
        content = QQ(num, den)
        prim = Poly(
            self.nvars,
            {m: c / content for m, c in self.terms.items()},
            _trusted=True,
        )
        return content, prim

    # -- presentation -------------------------------------------------------
    def sorted_terms(self, order="grevlex", reverse=True):
        key = ORDER_KEYS[order]
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = ["f%d" % (i + 1) for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append("%s^%d" % (names[i], e))
            body = "*".join(factors)
            if not body:
                piece = qq_str(c)
            elif c == 1:
                piece = body
            elif c == -1:
                piece = "-" + body
            else:
                piece = qq_str(c) + "*" + body
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __repr__(self):
        return "Poly(%s)" % self.to_str()

    def to_json(self):
        return [
            [list(m), qq_str(c)]
            for m, c in sorted(self.terms.items(), key=lambda t: t[0])
        ]

    @staticmethod
    def from_json(nvars, data):
        return Poly(nvars, {tuple(m): qq(c) for m, c in data})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)


# ---------------------------------------------------------------------------
# rational interval arithmetic (endpoints are exact rationals)

def iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def iv_mul(a, b):
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(vals), max(vals))


def iv_pow(a, e):
    if e == 0:
        return (QONE, QONE)
    out = a
    for _ in range(e - 1):
        out = iv_mul(out, a)
    return out


def iv_scale(a, c):
    c = qq(c)
    if c >= 0:
        return (a[0] * c, a[1] * c)
    return (a[1] * c, a[0] * c)


def iv_contains_zero(a):
    return a[0] <= 0 <= a[1]


def poly_interval(poly, boxes):
    """Interval image of a Poly over a coordinate box."""
    acc = (QZERO, QZERO)
    powers = [dict() for _ in range(poly.nvars)]
    for m, c in poly.terms.items():
        term = (qq(c), qq(c))
        for i, e in enumerate(m):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = iv_pow(boxes[i], e)
                term = iv_mul(term, cache[e])
        acc = iv_add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# cyclotomic integers / rationals

def _int_poly_div(num, den):
    """Exact division of dense integer polynomial lists; den is monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Dense integer coefficient list of Phi_m, ascending degree."""
    poly = [0] * m + [1]
    poly[0] = -1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class Cyc:
    """Element of Q(zeta_m), stored in the power basis modulo Phi_m."""

    __slots__ = ("m", "vec")

    def __init__(self, m, vec):
        phi = cyclotomic_polynomial(m)
        deg = len(phi) - 1
        vec = [qq(v) for v in vec]
        if len(vec) > deg:
            vec = _reduce_mod_phi(vec, phi)
        vec += [QZERO] * (deg - len(vec))
        self.m = m
        self.vec = tuple(vec)

    @staticmethod
    def zeta_power(m, k):
        vec = [QZERO] * (k % m) + [QONE]
        return Cyc(m, vec)

    @staticmethod
    def from_rational(m, c):
        return Cyc(m, [qq(c)])

    def _pair(self, other):
        if not isinstance(other, Cyc):
            other = Cyc.from_rational(self.m, other)
        if other.m == self.m:
            return self, other
        m = self.m * other.m // math.gcd(self.m, other.m)
        return self.to_order(m), other.to_order(m)

    def to_order(self, m):
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError("not a multiple order")
        k = m // self.m
        vec = [QZERO] * ((len(self.vec) - 1) * k + 1)
        for i, c in enumerate(self.vec):
            vec[i * k] = c
        return Cyc(m, vec)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyc(a.m, [x + y for x, y in zip(a.vec, b.vec)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return Cyc(a.m, [x - y for x, y in zip(a.vec, b.vec)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Cyc(self.m, [-x for x in self.vec])

    def __mul__(self, other):
        if isinstance(other, Cyc):
            a, b = self._pair(other)
            prod = [QZERO] * (2 * len(a.vec) - 1)
            for i, x in enumerate(a.vec):
                if x:
                    for j, y in enumerate(b.vec):
                        if y:
                            prod[i + j] += x * y
            return Cyc(a.m, prod)
        c = qq(other)
        return Cyc(self.m, [x * c for x in self.vec])

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Cyc.from_rational(self.m, 1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        a, b = self._pair(other)
        return a.vec == b.vec

    def __hash__(self):
        return hash((self.m, self.vec))

    def is_zero(self):
        return all(not v for v in self.vec)

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self):
        vec = [QZERO] * self.m
        vec[0] = self.vec[0]
        for i, c in enumerate(self.vec):
            if i and c:
                vec[(self.m - i) % self.m] += c
        return Cyc(self.m, vec)

    def is_real(self):
        return self == self.conjugate()

    def is_rational(self):
        return all(not v for v in self.vec[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational: %r" % (self,))
        return self.vec[0]

    def approx(self):
        out = 0j
        for i, c in enumerate(self.vec):
            if c:
                ang = 2.0 * math.pi * i / self.m
                out += float(c) * complex(math.cos(ang), math.sin(ang))
        return out

    def __repr__(self):
        if self.is_rational():
            return "Cyc(%s)" % qq_str(self.vec[0])
        return "Cyc(m=%d, %s)" % (self.m, [qq_str(v) for v in self.vec])


def _reduce_mod_phi(vec, phi):
    deg = len(phi) - 1
    vec = list(vec)
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            for j in range(deg + 1):
                vec[i - deg + j] -= c * phi[j]
    return vec[:deg]
