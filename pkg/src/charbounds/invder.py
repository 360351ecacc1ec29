"""Invariant derivations on the character ring.

The pseudo-Casimir D_A scales each lattice exponential e^mu by A(mu, mu);
the biderivation it induces, M_A(f, g) = D(fg) - f D(g) - D(f) g, is a
polynomial in the fundamental characters, and the matrix of M_A on those
characters generates all W-invariant derivations.  Entries are computed
in a q-evaluation shadow: M(f_i, f_j) = sum_kl A[k][l] G_k^i G_l^j with
G_k^i the nu_k-weighted image of f_i, then converted by leading-term
elimination.  A literal character-ring route and a Casimir route are
kept alongside as cross-checks.
"""

from __future__ import annotations

import datetime
import json
import os
import tempfile
from dataclasses import dataclass

from . import charring
from .charring import (
    CharacterElement,
    FundamentalPolynomial,
    QevalContext,
    fundamental_characters,
    multiply,
    qconv,
    to_fundamental_polynomial,
)
from .polynomials import Cyc, Poly, QZERO, qq
from .rootdata import EnumerationCapError, RootDatum

CACHE_ENV = "CHARBOUNDS_CACHE"
CACHE_VERSION = "charbounds-matrix/1"
DEFAULT_RANK_CAP = 6


def apply_DA(datum, c):
    """D_A: scale each weight by its square length (orbit-constant)."""
    out = {}
    for w, m in c.mult.items():
        v = m * datum.norm2(w)
        if v:
            out[w] = v
    return CharacterElement(datum, out)


def apply_CA(datum, combo):
    """Casimir on an irreducible-basis combination {lambda: coeff}.

    Eigenvalue on chi_lambda is A(lambda+rho) - A(rho).
    """
    rho = datum.rho
    n_rho = datum.norm2(rho)
    out = {}
    for lam, coeff in combo.items():
        shifted = tuple(a + b for a, b in zip(lam, rho))
        eig = datum.norm2(shifted) - n_rho
        v = coeff * eig
        if v:
            out[lam] = v
    return out


def _ca_element(datum, c):
    """C_A applied to a CharacterElement, back in weight coordinates."""
    combo = apply_CA(datum, charring.decompose(c))
    acc = CharacterElement(datum, {})
    for lam, coeff in combo.items():
        acc = acc.add(charring.irreducible_character(datum, lam).scale(coeff))
    return acc


def biderivation(datum, f, g, strategy="qeval", operator="DA"):
    """M_A(f, g) as a polynomial in the fundamental characters."""
    op = apply_DA if operator == "DA" else lambda d, c: _ca_element(d, c)
    fg = multiply(f, g)
    m = op(datum, fg).sub(multiply(f, op(datum, g))).sub(
        multiply(op(datum, f), g)
    )
    return to_fundamental_polynomial(m, strategy=strategy)


@dataclass(frozen=True)
class DerivationMatrix:
    datum: RootDatum
    entries: tuple        # r x r of Poly in f_1..f_r
    permutation: tuple    # the -w0 index permutation
    form_A: tuple
    content_hash: str
    created: str
    cache_hit: bool

    def entry(self, i, j):
        return self.entries[i][j]

    def to_json(self):
        r = self.datum.rank
        return {
            "version": CACHE_VERSION,
            "datum": self.datum.name(),
            "hash": self.content_hash,
            "form_A": [[str(x) for x in row] for row in self.form_A],
            "created": self.created,
            "entries": [
                [i, j, self.entries[i][j].to_json()]
                for i in range(r)
                for j in range(i, r)
            ],
        }


def _cache_path(datum, cache_dir):
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if cache_dir is None:
        cache_dir = os.path.join(
            os.path.expanduser("~"), ".cache", "charbounds"
        )
    return os.path.join(cache_dir, "matrix-%s.json" % datum.content_hash())


def _load_cache(datum, path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("version") != CACHE_VERSION:
        return None
    if data.get("hash") != datum.content_hash():
        return None
    r = datum.rank
    try:
        grid = [[None] * r for _ in range(r)]
        for i, j, terms in data["entries"]:
            p = Poly.from_json(r, terms)
            grid[i][j] = p
            grid[j][i] = p
        if any(e is None for row in grid for e in row):
            return None
        return tuple(tuple(row) for row in grid), data["created"]
    except (KeyError, TypeError, ValueError):
        return None


def _store_cache(m, path):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(m.to_json(), fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def derivation_matrix(
    datum,
    cache_dir=None,
    use_cache=True,
    rank_cap=DEFAULT_RANK_CAP,
    allow_large=False,
    strategy="qeval",
):
    """The full matrix M[i][j] = M_A(f_i, f_j), disk-cached by datum hash."""
    if datum.rank > rank_cap and not allow_large:
        raise EnumerationCapError(
            "derivation matrix for rank %d refused (cap %d); pass the "
            "long-running flag to override" % (datum.rank, rank_cap)
        )
    path = _cache_path(datum, cache_dir)
    if use_cache:
        hit = _load_cache(datum, path)
        if hit is not None:
            entries, created = hit
            return DerivationMatrix(
                datum=datum,
                entries=entries,
                permutation=datum.minus_w0,
                form_A=datum.form_A,
                content_hash=datum.content_hash(),
                created=created,
                cache_hit=True,
            )
    entries = (
        _entries_qeval(datum) if strategy == "qeval" else _entries_ring(datum, strategy)
    )
    r = datum.rank
    for i in range(r):
        for j in range(r):
            assert entries[i][j] == entries[j][i]
    m = DerivationMatrix(
        datum=datum,
        entries=entries,
        permutation=datum.minus_w0,
        form_A=datum.form_A,
        content_hash=datum.content_hash(),
        created=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        cache_hit=False,
    )
    if use_cache:
        _store_cache(m, path)
    return m


def _entries_qeval(datum):
    r = datum.rank
    funds = fundamental_characters(datum)
    tops = []
    for i in range(r):
        for j in range(i, r):
            w = tuple(
                a + b
                for a, b in zip(datum.fundamental_weights[i], datum.fundamental_weights[j])
            )
            tops.append(w)
    ctx = QevalContext(datum, sorted(set(tops)))
    A = datum.form_A
    # nu_k-weighted q-images of every fundamental character
    weighted = [
        [ctx.char_qpoly(funds[i], weight_index=k) for k in range(r)]
        for i in range(r)
    ]
    grid = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            acc = {}
            for k in range(r):
                for l in range(r):
                    a = A[k][l]
                    if not a:
                        continue
                    conv = qconv(weighted[i][k], weighted[j][l])
                    for p, v in conv.items():
                        s = acc.get(p, 0) + a * v
                        if s:
                            acc[p] = s
                        else:
                            acc.pop(p, None)
            coeffs = ctx.solve(acc)
            poly = Poly(r, coeffs)
            grid[i][j] = poly
            grid[j][i] = poly
    return tuple(tuple(row) for row in grid)


def _entries_ring(datum, strategy):
    r = datum.rank
    funds = fundamental_characters(datum)
    grid = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            poly = biderivation(datum, funds[i], funds[j], strategy=strategy).poly
            grid[i][j] = poly
            grid[j][i] = poly
    return tuple(tuple(row) for row in grid)


def sigma_matrix(m):
    """M with rows permuted by -w0; equals M when -1 is in the Weyl group."""
    perm = m.datum.minus_w0
    entries = tuple(m.entries[perm[i]] for i in range(m.datum.rank))
    return DerivationMatrix(
        datum=m.datum,
        entries=entries,
        permutation=perm,
        form_A=m.form_A,
        content_hash=m.content_hash,
        created=m.created,
        cache_hit=m.cache_hit,
    )


def permute_variables(poly, perm):
    """sigma acting on T/W coordinates: f_i -> f_{perm(i)}."""
    out = {}
    for mono, c in poly.terms.items():
        key = tuple(mono[perm[i]] for i in range(len(mono)))
        out[key] = c
    return Poly(poly.nvars, out)


def _rational_lifter(point):
    for x in point:
        if isinstance(x, Cyc):
            return lambda c: Cyc.from_rational(x.m, c)
        if hasattr(x, "field"):
            return x.field.from_rational
    return qq


def evaluate_matrix(m, point):
    """Evaluate every entry at exact coordinates (rational, cyclotomic,
    or algebraic); returns a list of lists of field elements."""
    lift = _rational_lifter(point)
    vals = [
        x if isinstance(x, Cyc) or hasattr(x, "field") else lift(qq(x))
        for x in point
    ]
    return [
        [e.evaluate(vals, convert=lift) for e in row]
        for row in m.entries
    ]


def rank_at(m, point):
    """Rank of M at an exact point, by fraction-free Gaussian elimination."""
    grid = evaluate_matrix(m, point)
    n = len(grid)
    rank = 0
    row = 0
    for col in range(n):
        pivot = None
        for i in range(row, n):
            if grid[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        grid[row], grid[pivot] = grid[pivot], grid[row]
        pv = grid[row][col]
        for i in range(row + 1, n):
            ci = grid[i][col]
            if ci:
                grid[i] = [
                    pv * grid[i][k] - ci * grid[row][k] for k in range(n)
                ]
        row += 1
        rank += 1
        if row == n:
            break
    return rank
