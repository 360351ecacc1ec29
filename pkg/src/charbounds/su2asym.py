"""SU(2) character asymptotics and the limit function X.

The trace of SU(2) in its (d+1)-dimensional irreducible representation
is a polynomial in the fundamental trace t: chi_d(2 cos a) equals
sin((d+1)a)/sin(a).  The minimum of chi_d/(d+1) over the group tends to
-c as d grows, where c is the negative of the least value of sin(a)/a.
Both the exact per-degree minima and the limit constant are computed
here.  In higher rank the analogous limits are values of the function

    X(s, t) = (prod over positive roots r of (r, rho)/((r, s)(r, t)))
              * sum over W of sgn(w) exp((s, w t)),

which depends only on the Weyl group and is evaluated numerically.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algsolve import AlgValue, FieldElement, Ideal, solve_zero_dim
from .polynomials import Poly, qq
from .rootdata import EnumerationCapError, weyl_elements

__all__ = [
    "ChebyshevCharacter",
    "ConditioningError",
    "XEvaluation",
    "chebyshev_character",
    "chebyshev_value",
    "eval_X",
    "limit_constant",
    "su2_critical_points",
    "su2_min",
]

# every rank <= 4 Weyl group fits under this (F4 has order 1152)
DEFAULT_WEYL_CAP = 1152


class ConditioningError(RuntimeError):
    """An X evaluation sat too close to a wall to be trusted."""


# ---------------------------------------------------------------------------
# Chebyshev characters of SU(2)


@dataclass(frozen=True)
class ChebyshevCharacter:
    """chi_d as an integer polynomial in the fundamental trace t.

    Satisfies chi_d(2) = d + 1, chi_d(-2) = (-1)^d (d + 1), and has d
    simple real zeros 2 cos(pi k/(d+1)), k = 1..d.
    """

    d: int
    coeffs: tuple  # ascending powers of t

    def evaluate(self, x):
        """Horner evaluation; exact for exact scalar types."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def zeros(self):
        """The closed-form zeros 2 cos(pi k/(d+1)) as floats, decreasing."""
        n = self.d + 1
        return tuple(2.0 * math.cos(math.pi * k / n) for k in range(1, n))

    def to_json(self):
        return {"d": self.d, "coeffs": list(self.coeffs)}


_CHEB = [(1,), (0, 1)]


def chebyshev_character(d):
    """chi_d from the recurrence chi_d = t chi_{d-1} - chi_{d-2}."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    while len(_CHEB) <= d:
        shifted = [0] + list(_CHEB[-1])
        for i, c in enumerate(_CHEB[-2]):
            shifted[i] -= c
        _CHEB.append(tuple(shifted))
    return ChebyshevCharacter(d, _CHEB[d])


def chebyshev_value(d, x):
    """chi_d(x) by the three-term recurrence.

    Numerically stable on [-2, 2] where expanded coefficients are not,
    so this is the right path for large d at floating-point arguments.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return 1
    a, b = 1, x
    for _ in range(d - 1):
        a, b = b, x * b - a
    return b


def su2_critical_points(d):
    """Interior critical points of chi_d on [-2, 2], certified exactly."""
    ch = chebyshev_character(d)
    deriv = {(k - 1,): k * c for k, c in enumerate(ch.coeffs) if k and c}
    gen = Poly(1, deriv)
    if gen.total_degree() < 1:
        return []
    points = []
    for p in solve_zero_dim(Ideal.of(1, [gen])):
        c = p.coords[0]
        if (c - 2).sign() > 0 or (c + 2).sign() < 0:
            continue
        points.append(p)
    return points


def su2_min(d):
    """Exact minimum of chi_d over t in [-2, 2].

    Candidates are the endpoints (where chi_d takes the values
    (+-1)^d (d+1)) and the interior roots of the derivative.  The least
    candidate is found by refining certified intervals until everything
    else is excluded; only the winner pays for a minimal polynomial, so
    the degree-50 sweep stays cheap.  Ties that refuse to separate fall
    back to exact comparison.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    ch = chebyshev_character(d)
    full = Poly(1, {(k,): c for k, c in enumerate(ch.coeffs) if c})
    points = su2_critical_points(d)
    if d % 2 == 0:
        # only powers matching the parity of d occur, so chi_d is an even
        # function here and t >= 0 already carries every critical value
        assert all(
            not c for k, c in enumerate(ch.coeffs) if (k - d) % 2
        ), "parity of the recurrence broke"
        points = [p for p in points if p.coords[0].sign() >= 0]
    entries = [min(ch.evaluate(qq(2)), ch.evaluate(qq(-2)))]
    entries.extend(p.value_of(full) for p in points)

    def box(e):
        if isinstance(e, FieldElement):
            return e.interval()
        return (e, e)

    for _ in range(64):
        least_upper = min(box(e)[1] for e in entries)
        entries = [e for e in entries if box(e)[0] <= least_upper]
        if len(entries) == 1:
            break
        for e in entries:
            if isinstance(e, FieldElement):
                e.field.refine_root()

    def lift(e):
        if isinstance(e, FieldElement):
            return AlgValue.from_field_element(e)
        return AlgValue.from_rational(e)

    best = lift(entries[0])
    for e in entries[1:]:
        v = lift(e)
        if v.cmp(best) < 0:
            best = v
    return best


def limit_constant():
    """(c, theta0) with c = -sin(theta0)/theta0 and tan(theta0) = theta0.

    theta0 is the unique solution on (pi, 3 pi/2); there sin(theta)/theta
    attains its least value -c.  Bisection to 1e-12.
    """
    lo = math.pi + 1e-9
    hi = 1.5 * math.pi - 1e-9
    # tan(theta) - theta runs from about -pi up to +huge on this window
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if math.tan(mid) - mid < 0.0:
            lo = mid
        else:
            hi = mid
    theta0 = (lo + hi) / 2.0
    return -math.sin(theta0) / theta0, theta0


# ---------------------------------------------------------------------------
# the limit function X


@dataclass(frozen=True)
class XEvaluation:
    """One numerical evaluation of X with its provenance.

    method is "Weyl-sum" for the direct alternating sum, "rho-product"
    for the hyperbolic-sine product available at s = rho, and
    "limit-fallback" when a wall forced perturbation averaging (then
    error carries the observed spread).
    """

    datum: object
    s: tuple
    t: tuple
    value: complex
    method: str
    error: float = field(default=0.0)

    def to_json(self):
        return {
            "datum": self.datum.name(),
            "s": [[z.real, z.imag] for z in self.s],
            "t": [[z.real, z.imag] for z in self.t],
            "value": [self.value.real, self.value.imag],
            "method": self.method,
            "error": self.error,
        }


_GEOMETRY = {}


def _geometry(datum):
    got = _GEOMETRY.get(datum.name())
    if got is None:
        A = np.array([[float(x) for x in row] for row in datum.form_A])
        roots = np.array(
            [[float(x) for x in r] for r in datum.positive_roots]
        )
        rho = np.ones(datum.rank)
        got = (A, roots, roots @ A @ rho / 2.0)
        _GEOMETRY[datum.name()] = got
    return got


_WEYL = {}


def _weyl(datum, cap):
    if datum.weyl_order > cap:
        raise EnumerationCapError(
            "enumeration refused: |W| = %d exceeds cap %d"
            % (datum.weyl_order, cap)
        )
    got = _WEYL.get(datum.name())
    if got is None:
        elements, signs = weyl_elements(datum, cap=cap, with_sign=True)
        got = (
            np.stack(elements).astype(float),
            np.array(signs, dtype=float),
        )
        _WEYL[datum.name()] = got
    return got


def _root_pairings(datum, v):
    A, roots, _ = _geometry(datum)
    return roots @ A @ v / 2.0


def _sinhc_half(z):
    # 2 sinh(z/2)/z, extended by 1 across z = 0
    if abs(z) < 1e-3:
        z2 = z * z
        return 1.0 + z2 / 24.0 + z2 * z2 / 1920.0
    return (cmath.exp(z / 2.0) - cmath.exp(-z / 2.0)) / z


def _rho_product(datum, tv):
    value = 1.0 + 0.0j
    for z in _root_pairings(datum, tv):
        value *= _sinhc_half(z)
    return value


def _weyl_sum(datum, sv, tv, cap):
    A, roots, root_rho = _geometry(datum)
    mats, signs = _weyl(datum, cap)
    wt = mats @ tv
    alternating = np.dot(signs, np.exp(wt @ A @ sv / 2.0))
    rs = roots @ A @ sv / 2.0
    rt = roots @ A @ tv / 2.0
    prefactor = np.prod(root_rho / (rs * rt))
    return complex(prefactor * alternating)


def _is_rho(v):
    return bool(np.all(v == 1.0 + 0.0j))


def _averaged(datum, sv, tv, s_regular, t_regular, cap, tol):
    """Symmetric perturbation average off a wall.

    Shifting the singular argument by +-eps rho and averaging cancels
    the first-order term, so the bias is O(eps^2); the spread of the
    pair is kept as an error estimate.
    """
    direction = np.ones(datum.rank)
    for scale in (1e-4, 1e-3, 1e-2):
        pair = []
        for eps in (scale, -scale):
            ss = sv if s_regular else sv + eps * direction
            tt = tv if t_regular else tv + eps * direction
            if np.any(np.abs(_root_pairings(datum, ss)) <= tol):
                break
            if np.any(np.abs(_root_pairings(datum, tt)) <= tol):
                break
            pair.append(_weyl_sum(datum, ss, tt, cap))
        if len(pair) < 2:
            continue
        value = (pair[0] + pair[1]) / 2.0
        spread = abs(pair[0] - pair[1]) / 2.0
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            continue
        if spread <= 1e-3 * (1.0 + abs(value)):
            return value, spread
    raise ConditioningError(
        "argument lies on a wall that perturbation averaging cannot clear"
    )


def eval_X(datum, s, t, *, cap=DEFAULT_WEYL_CAP, tol=1e-8):
    """Evaluate X(s, t) in double precision.

    s and t are weight-basis coordinate vectors (real or complex
    entries).  Regular pairs go through the alternating Weyl sum; s or
    t exactly equal to rho switches to the product over positive roots,
    which has no wall restrictions; anything else is perturbed off the
    wall and averaged, or rejected with ConditioningError when that
    fails.  An identically zero argument forces X = 1 by the scaling
    symmetry, so that case returns 1 exactly.
    """
    sv = np.array([complex(z) for z in s], dtype=complex)
    tv = np.array([complex(z) for z in t], dtype=complex)
    if len(sv) != datum.rank or len(tv) != datum.rank:
        raise ValueError("argument length must equal the rank")
    if datum.weyl_order > cap:
        raise EnumerationCapError(
            "enumeration refused: |W| = %d exceeds cap %d"
            % (datum.weyl_order, cap)
        )
    held = (tuple(complex(z) for z in sv), tuple(complex(z) for z in tv))
    if _is_rho(sv):
        return XEvaluation(
            datum, held[0], held[1], _rho_product(datum, tv), "rho-product"
        )
    if _is_rho(tv):
        return XEvaluation(
            datum, held[0], held[1], _rho_product(datum, sv), "rho-product"
        )
    if not np.any(sv) or not np.any(tv):
        # X(u s, t) = X(s, u t) at u = 0, hence constant 1
        return XEvaluation(datum, held[0], held[1], 1.0 + 0.0j, "limit-fallback")
    s_regular = bool(np.all(np.abs(_root_pairings(datum, sv)) > tol))
    t_regular = bool(np.all(np.abs(_root_pairings(datum, tv)) > tol))
    if s_regular and t_regular:
        return XEvaluation(
            datum, held[0], held[1], _weyl_sum(datum, sv, tv, cap), "Weyl-sum"
        )
    value, err = _averaged(datum, sv, tv, s_regular, t_regular, cap, tol)
    return XEvaluation(datum, held[0], held[1], value, "limit-fallback", err)
