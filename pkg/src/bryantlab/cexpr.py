"""Calculus on finite sums of c * prod_k (z - p_k)^{a_k} with real exponents.

Expressions of this shape (``BranchExpr``) are closed under differentiation
and multiplication, and they are exactly the local models that appear as
Hopf-differential coefficients, developing-map derivatives and induced-metric
densities of the surfaces this package studies.  Real exponents make the
expressions multi-valued: a value is only defined relative to a choice of
argument for every ``z - p_k``, so evaluation along a path carries a
``BranchState`` that tracks a continuously varying argument per base point.

The module provides

* exact algebra (add / multiply / differentiate / logarithmic derivative /
  Schwarzian derivative),
* analytic continuation of values along polylines,
* contour-quadrature extraction of Laurent/Taylor coefficients and residues,
* a numeric check that the Schwarzian derivative is Moebius invariant,
* a JSON wire form used by the command-line artifacts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BranchTerm", "BranchExpr", "BranchState",
    "PathTooClose", "ZeroDerivative", "NonIntegerExponent", "RadiusConflict",
    "QuadratureError",
    "const", "factor", "term",
    "differentiate", "log_derivative", "schwarzian_from_derivative",
    "moebius_invariance_check",
    "eval_principal", "eval_state", "initial_state", "continue_state",
    "eval_continued",
    "laurent_coeffs", "taylor_coeffs", "residue", "roots_with_multiplicity",
    "factor_points", "branch_points", "min_exponent", "degree_bound",
    "invert_chart",
    "expr_to_json", "expr_from_json",
]

#: relative floor under which a term coefficient is dropped during
#: normalization (an exact-arithmetic zero never survives rounding by more).
COEFF_FLOOR = 1e-14

#: tolerance for recognizing an exponent as an integer.
INT_SNAP = 1e-9


class PathTooClose(Exception):
    """A continuation path passes closer to a base point than allowed."""

    def __init__(self, point: complex, distance: float, clearance: float):
        self.point, self.distance, self.clearance = point, distance, clearance
        super().__init__(
            f"path passes within {distance:.3e} of {point} "
            f"(clearance {clearance:.3e})")


class ZeroDerivative(Exception):
    """The supplied derivative expression is identically zero."""


class NonIntegerExponent(Exception):
    """Coefficient extraction at a point whose local exponents are not integers."""


class RadiusConflict(Exception):
    """No valid quadrature circle exists for the requested expansion point."""


class QuadratureError(Exception):
    """Contour quadrature failed to converge to the requested tolerance."""


def _is_int(a: float) -> bool:
    return abs(a - round(a)) <= INT_SNAP


@dataclass(frozen=True)
class BranchTerm:
    """One product c * prod (z - p)^a; ``factors`` maps base point to exponent."""

    coeff: complex
    factors: tuple[tuple[complex, float], ...]


@dataclass(frozen=True)
class BranchExpr:
    """Finite sum of :class:`BranchTerm`.

    Invariant: for every base point carried with a non-integer exponent by
    some term, all terms carry that point and their exponents there lie in a
    single residue class mod 1.  (Integer-exponent factors may be freely
    absent — absence is exponent 0.)  This keeps the multi-valuedness of the
    whole sum described by one character per base point, which the
    continuation, residue and Schwarzian routines rely on.
    """

    terms: tuple[BranchTerm, ...]

    def __post_init__(self):
        _check_branch_classes(self.terms)

    # -- convenience algebra ------------------------------------------------
    def __add__(self, other):
        other = _as_expr(other)
        return _make(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return _make(tuple(BranchTerm(-t.coeff, t.factors) for t in self.terms))

    def __sub__(self, other):
        return self + (-_as_expr(other))

    def __rsub__(self, other):
        return _as_expr(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return _make(tuple(BranchTerm(t.coeff * other, t.factors)
                               for t in self.terms))
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(BranchTerm(s.coeff * t.coeff, s.factors + t.factors))
        return _make(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * (1.0 / other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms


def _check_branch_classes(terms) -> None:
    classes: dict[complex, float] = {}
    carriers: dict[complex, int] = {}
    for t in terms:
        for p, a in t.factors:
            carriers[p] = carriers.get(p, 0) + 1
            if not _is_int(a):
                frac = a - round(a)
                if p in classes:
                    d = classes[p] - frac
                    if abs(d - round(d)) > INT_SNAP:
                        raise ValueError(
                            f"exponents at {p} differ by a non-integer")
                else:
                    classes[p] = frac
    for p in classes:
        if carriers[p] != len(terms):
            raise ValueError(
                f"branch point {p} with non-integer exponent must appear "
                "in every term")


def _as_expr(x) -> BranchExpr:
    if isinstance(x, BranchExpr):
        return x
    if isinstance(x, (int, float, complex)):
        return const(x)
    raise TypeError(f"cannot coerce {type(x)!r} to BranchExpr")


def _make(terms) -> BranchExpr:
    """Normalize: merge factors in a term, merge like terms, drop dust."""
    bucket: dict[tuple, complex] = {}
    for t in terms:
        fac: dict[complex, float] = {}
        for p, a in t.factors:
            fac[p] = fac.get(p, 0.0) + a
        items = tuple(sorted(
            ((p, a) for p, a in fac.items() if abs(a) > INT_SNAP),
            key=lambda pa: (pa[0].real, pa[0].imag)))
        bucket[items] = bucket.get(items, 0.0) + complex(t.coeff)
    if not bucket:
        return BranchExpr(())
    top = max(abs(c) for c in bucket.values())
    key = lambda kv: (len(kv[0]),
                      tuple((p.real, p.imag, a) for p, a in kv[0]))
    kept = tuple(BranchTerm(c, f) for f, c in sorted(bucket.items(), key=key)
                 if abs(c) > COEFF_FLOOR * top)
    return BranchExpr(kept)


def const(c: complex) -> BranchExpr:
    """The constant expression c (empty expression for c = 0)."""
    c = complex(c)
    return BranchExpr((BranchTerm(c, ()),) if c != 0 else ())


def factor(point: complex, exponent: float, coeff: complex = 1.0) -> BranchExpr:
    """Single power coeff * (z - point)^exponent."""
    return term(coeff, (point, exponent))


def term(coeff: complex, *factors: tuple[complex, float]) -> BranchExpr:
    """One product term coeff * prod (z - p)^a from (p, a) pairs."""
    return _make((BranchTerm(complex(coeff),
                             tuple((complex(p), float(a)) for p, a in factors)),))


def factor_points(e: BranchExpr) -> list[complex]:
    """All base points appearing in e, in canonical order."""
    pts = {p for t in e.terms for p, _ in t.factors}
    return sorted(pts, key=lambda p: (p.real, p.imag))


def branch_points(e: BranchExpr) -> list[complex]:
    """Base points carrying a non-integer exponent in some term."""
    pts = {p for t in e.terms for p, a in t.factors if not _is_int(a)}
    return sorted(pts, key=lambda p: (p.real, p.imag))


def min_exponent(e: BranchExpr, p: complex) -> float:
    """Smallest exponent of (z - p) over all terms (absent factor counts 0).

    This is a lower bound for the vanishing order of e at p; it is the exact
    order unless leading coefficients cancel.
    """
    p = complex(p)
    best = math.inf
    for t in e.terms:
        a = dict(t.factors).get(p, 0.0)
        best = min(best, a)
    return 0.0 if best is math.inf else best


def degree_bound(e: BranchExpr) -> float:
    """max over terms of the exponent sum: e(z) = O(z^degree_bound) at infinity."""
    if not e.terms:
        return -math.inf
    return max(sum(a for _, a in t.factors) for t in e.terms)


def differentiate(e: BranchExpr) -> BranchExpr:
    """d/dz by the product rule, exactly."""
    out = []
    for t in e.terms:
        for i, (p, a) in enumerate(t.factors):
            fac = list(t.factors)
            fac[i] = (p, a - 1.0)
            out.append(BranchTerm(t.coeff * a, tuple(fac)))
    return _make(tuple(out))


def invert_chart(e: BranchExpr) -> BranchExpr:
    """e(1/w) as an expression in w, up to a fixed branch choice.

    (1/w - p)^a is rewritten as (-p)^a (w - 1/p)^a w^{-a} for p != 0 and as
    w^{-a} for p = 0; the constants (-p)^a use principal powers, which picks
    one branch of the result (immaterial for order/degree bookkeeping and for
    |.|-based densities).
    """
    out = []
    for t in e.terms:
        c = t.coeff
        fac = []
        wexp = 0.0
        for p, a in t.factors:
            wexp -= a
            if p != 0:
                c *= (-p) ** a
                fac.append((1.0 / p, a))
        fac.append((0.0 + 0.0j, wexp))
        out.append(BranchTerm(c, tuple(fac)))
    return _make(tuple(out))


# ---------------------------------------------------------------------------
# evaluation and analytic continuation
# ---------------------------------------------------------------------------

def eval_principal(e: BranchExpr, z):
    """Evaluate with principal-branch powers; z may be a scalar or ndarray."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for t in e.terms:
        v = np.full_like(z, t.coeff)
        for p, a in t.factors:
            v = v * np.power(z - p, a)
        out = out + v
    return out if out.shape else complex(out)


@dataclass
class BranchState:
    """Current point plus one continuously-tracked argument per base point."""

    z: complex
    args: dict[complex, float] = field(default_factory=dict)

    def copy(self) -> "BranchState":
        return BranchState(self.z, dict(self.args))


def initial_state(points, z0: complex) -> BranchState:
    """State at z0 with principal arguments arg(z0 - p)."""
    z0 = complex(z0)
    return BranchState(z0, {complex(p): cmath.phase(z0 - p) for p in points})


def _seg_dist(a: complex, b: complex, p: complex) -> float:
    """Distance from p to the segment [a, b]."""
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(p - a)
    t = ((p - a).real * d.real + (p - a).imag * d.imag) / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def _default_clearance(points) -> float:
    pts = list(points)
    diam = max((abs(p - q) for p in pts for q in pts), default=0.0)
    return 1e-3 * (diam if diam > 0 else 1.0)


def continue_state(state: BranchState, path, clearance: float | None = None) -> BranchState:
    """Continue the tracked arguments along a polyline starting at state.z.

    Each segment is subdivided so that every step subtends a small angle at
    every tracked point; arguments are then updated by principal-branch
    increments.  Raises :class:`PathTooClose` if a segment comes within
    ``clearance`` of a tracked point.
    """
    pts = list(state.args)
    if clearance is None:
        clearance = _default_clearance(pts)
    st = state.copy()
    prev = complex(state.z)
    for raw in path:
        nxt = complex(raw)
        if nxt == prev:
            continue
        dmin = math.inf
        for p in pts:
            dist = _seg_dist(prev, nxt, p)
            if dist < clearance:
                raise PathTooClose(p, dist, clearance)
            dmin = min(dmin, dist)
        nstep = 1 if not pts else max(1, math.ceil(abs(nxt - prev) / (0.4 * dmin)))
        for k in range(1, nstep + 1):
            znew = prev + (nxt - prev) * (k / nstep)
            for p in pts:
                st.args[p] += cmath.phase((znew - p) / (st.z - p))
            st.z = znew
        prev = nxt
    return st


def eval_state(e: BranchExpr, state: BranchState) -> complex:
    """Evaluate e at state.z on the branch recorded by the state."""
    z = state.z
    out = 0.0 + 0.0j
    for t in e.terms:
        v = t.coeff
        for p, a in t.factors:
            w = z - p
            theta = state.args.get(p)
            if theta is None:
                theta = cmath.phase(w)
            v *= cmath.exp(a * (math.log(abs(w)) + 1j * theta))
        out += v
    return out


def eval_continued(e: BranchExpr, path, state: BranchState | None = None,
                   clearance: float | None = None):
    """Continue e along a polyline and evaluate at its endpoint.

    Parameters
    ----------
    e : BranchExpr
    path : sequence of complex
        Polyline vertices; continuation starts at ``path[0]`` (which must be
        ``state.z`` when a state is supplied).
    state : BranchState, optional
        Branch to start from; defaults to principal arguments at ``path[0]``.
    clearance : float, optional
        Minimum allowed distance between the path and any base point
        (default: 1e-3 times the diameter of the base-point set).

    Returns
    -------
    (value, state) : value of e at the endpoint on the continued branch, and
        the endpoint state (reusable for further continuation).
    """
    path = [complex(z) for z in path]
    if state is None:
        state = initial_state(factor_points(e), path[0])
    elif abs(complex(state.z) - path[0]) > 0:
        raise ValueError("path must start at state.z")
    st = continue_state(state, path[1:], clearance)
    return eval_state(e, st), st


# ---------------------------------------------------------------------------
# contour quadrature: Laurent / Taylor coefficients and residues
# ---------------------------------------------------------------------------

def _circle_values(e: BranchExpr, center: complex, r: float, n: int):
    """Values of e on the n-point circle, branch-continued around it.

    The branch is principal at the start node center + r; the continuation
    uses unwrapped arguments, so non-integer factors based outside the circle
    return to their initial branch after a full turn.
    """
    theta = 2.0 * np.pi * np.arange(n) / n
    z = center + r * np.exp(1j * theta)
    pts = factor_points(e)
    logs = {}
    for p in pts:
        w = z - p
        logs[p] = np.log(np.abs(w)) + 1j * np.unwrap(np.angle(w))
    vals = np.zeros(n, dtype=complex)
    for t in e.terms:
        s = np.full(n, complex(t.coeff))
        ex = np.zeros(n, dtype=complex)
        for p, a in t.factors:
            ex = ex + a * logs[p]
        vals += s * np.exp(ex)
    return vals


def _coeffs_at_radius(e, center, r, n, ks):
    vals = _circle_values(e, center, r, n)
    hat = np.fft.fft(vals) / n
    coeffs = np.array([hat[k % n] * r ** (-k) for k in ks])
    # quadrature cannot resolve c_k below machine noise amplified by r^{-k}
    floor = 50 * np.finfo(float).eps * np.abs(vals).max() \
        * np.array([r ** (-k) for k in ks])
    return coeffs, floor


def _quadrature_radius(e, p, radius):
    others = [q for q in factor_points(e) if q != p]
    nearest = min((abs(q - p) for q in others), default=math.inf)
    if radius is None:
        return min(1.0, 0.5 * nearest) if nearest < math.inf else 1.0
    if radius <= 0 or radius >= nearest:
        raise RadiusConflict(
            f"radius {radius} invalid at {p}: nearest other base point at "
            f"distance {nearest:.3e}")
    return float(radius)


def laurent_coeffs(e: BranchExpr, p: complex, kmin: int, kmax: int,
                   radius: float | None = None, abs_tol: float = 1e-12,
                   rel_tol: float = 1e-10, with_error: bool = False):
    """Laurent coefficients c_k of e at p for k = kmin..kmax, by contour FFT.

    Requires the local exponents of e at p to be integers (else the Laurent
    expansion does not exist); raises :class:`NonIntegerExponent` otherwise.
    Node counts double from 256 until successive approximations agree to
    ``abs_tol`` or ``rel_tol``, and a half-radius run cross-checks the result;
    :class:`QuadratureError` on failure to converge.  The branch of e is the
    principal one at the start node p + radius.
    """
    p = complex(p)
    for t in e.terms:
        a = dict(t.factors).get(p, 0.0)
        if not _is_int(a):
            raise NonIntegerExponent(
                f"local exponent {a} at {p} is not an integer")
    r = _quadrature_radius(e, p, radius)
    ks = list(range(kmin, kmax + 1))

    def run(rr):
        n = 256
        prev, _ = _coeffs_at_radius(e, p, rr, n, ks)
        for _ in range(5):
            n *= 2
            cur, floor = _coeffs_at_radius(e, p, rr, n, ks)
            diff = np.abs(cur - prev)
            allowed = np.maximum(np.maximum(abs_tol, rel_tol * np.abs(cur)),
                                 floor)
            if np.all(diff <= allowed):
                return cur, float(diff.max()), floor
            prev = cur
        raise QuadratureError(
            f"coefficients at {p} not converged (last delta {diff.max():.3e})")

    c1, e1, f1 = run(r)
    c2, e2, f2 = run(0.75 * r)
    cross = np.abs(c1 - c2)
    allowed = np.maximum(np.maximum(100 * abs_tol, 100 * rel_tol * np.abs(c1)),
                         10 * (f1 + f2))
    if not np.all(cross <= allowed):
        raise QuadratureError(
            f"two-radius cross-check failed at {p} "
            f"(max discrepancy {cross.max():.3e})")
    err = max(e1, e2, float(cross.max()))
    return (c1, err) if with_error else c1


def taylor_coeffs(e: BranchExpr, p: complex, n: int, **kw):
    """First n Taylor coefficients of e at p (e must be analytic at p)."""
    return laurent_coeffs(e, p, 0, n - 1, **kw)


def residue(e: BranchExpr, p: complex, with_error: bool = False, **kw):
    """Residue of e at p (the c_{-1} Laurent coefficient), with error estimate."""
    c, err = laurent_coeffs(e, p, -1, -1, with_error=True, **kw)
    return (complex(c[0]), err) if with_error else complex(c[0])


# ---------------------------------------------------------------------------
# logarithmic and Schwarzian derivatives
# ---------------------------------------------------------------------------

def _poly_mul(a, b):
    return np.convolve(a, b)


def _roots_with_multiplicity(coeffs, snap_points=()):
    """Roots of a polynomial (descending coeffs) as (root, multiplicity) pairs.

    Clusters numerically coincident roots, polishes a multiplicity-k cluster
    by Newton iteration on the (k-1)-st derivative, and snaps roots onto any
    supplied points they agree with to working precision.
    """
    c = np.asarray(coeffs, dtype=complex)
    big = np.abs(c).max()
    if big == 0:
        raise ValueError("zero polynomial")
    nz = np.nonzero(np.abs(c) > 1e-12 * big)[0]
    c = c[nz[0]:]
    if len(c) == 1:
        return []
    if len(c) == 2:
        return [(-c[1] / c[0], 1)]
    if len(c) == 3:
        a, b, cc = c
        disc = cmath.sqrt(b * b - 4 * a * cc)
        if abs(-b + disc) < abs(-b - disc):
            disc = -disc
        r1 = (-b + disc) / (2 * a)
        r2 = (cc / a) / r1 if r1 != 0 else (-b - disc) / (2 * a)
        if abs(r1 - r2) <= 1e-8 * max(1.0, abs(r1)):
            return [((r1 + r2) / 2, 2)]
        return [(r1, 1), (r2, 1)]

    raw = sorted(np.roots(c), key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(z) for z in raw))
    clusters: list[list[complex]] = []
    for z in raw:
        for cl in clusters:
            if abs(z - cl[0]) <= 1e-6 * scale:
                cl.append(z)
                break
        else:
            clusters.append([z])
    out = []
    for cl in clusters:
        k = len(cl)
        r = sum(cl) / k
        q = np.polyder(c, k - 1)
        dq = np.polyder(q)
        for _ in range(8):
            qv = np.polyval(q, r)
            dv = np.polyval(dq, r)
            if dv == 0:
                break
            step = qv / dv
            if not np.isfinite(step) or abs(step) > 0.5 * scale:
                break
            r -= step
        for p in snap_points:
            if abs(r - p) <= 1e-7 * max(1.0, abs(p)):
                r = complex(p)
                break
        out.append((complex(r), k))
    return out


def roots_with_multiplicity(coeffs, snap_points=()):
    """Public face of the clustered/polished polynomial root finder."""
    return _roots_with_multiplicity(coeffs, snap_points)


def log_derivative(e: BranchExpr) -> BranchExpr:
    """e'/e as an exact sum of simple poles.

    Factoring out the common power of (z - p) at every base point leaves an
    ordinary polynomial, whose roots (with multiplicity) contribute the
    remaining poles.  Raises :class:`ZeroDerivative` for the zero expression.
    """
    if e.is_zero():
        raise ZeroDerivative("expression is identically zero")
    pts = factor_points(e)
    mmin = {p: min_exponent(e, p) for p in pts}
    acc = None
    for t in e.terms:
        fac = dict(t.factors)
        tp = np.array([t.coeff], dtype=complex)
        for p in pts:
            n = fac.get(p, 0.0) - mmin[p]
            ni = round(n)
            if abs(n - ni) > INT_SNAP or ni < 0:
                raise ValueError("residual exponents must be nonnegative integers")
            for _ in range(ni):
                tp = _poly_mul(tp, np.array([1.0, -p], dtype=complex))
        acc = tp if acc is None else np.polyadd(acc, tp)
    out = const(0)
    for p in pts:
        if abs(mmin[p]) > INT_SNAP:
            out = out + factor(p, -1.0, mmin[p])
    if len(acc) > 1 and np.abs(acc).max() > 0:
        for r, k in _roots_with_multiplicity(acc, snap_points=pts):
            out = out + factor(r, -1.0, float(k))
    return out


def schwarzian_from_derivative(gprime: BranchExpr) -> BranchExpr:
    """Schwarzian derivative S(g) from g', as an exact expression.

    Uses S(g) = L' - L^2/2 with L = g''/g' = (log g')'.  Since L is a sum of
    simple poles with constant coefficients, the result has integer exponents
    (it is rational) whenever g' is a single term times a rational function.
    Raises :class:`ZeroDerivative` if g' is identically zero.
    """
    L = log_derivative(gprime)
    return differentiate(L) - 0.5 * (L * L)


def moebius_invariance_check(gprime: BranchExpr, a, samples,
                             g_base: complex = 0.0) -> float:
    """Max relative deviation |S(a*g) - S(g)| over the sample points.

    ``a`` is an SL(2,C) matrix acting by fractional-linear maps.  S(a*g) is
    computed numerically: the Taylor series of g' at each sample gives a local
    series for g, the Moebius image is sampled on a small circle, and its
    first series coefficients give the Schwarzian there.  S(g) comes from
    :func:`schwarzian_from_derivative`.  Samples must stay away from zeros
    and base points of g'.
    """
    a = np.asarray(a, dtype=complex)
    if abs(np.linalg.det(a) - 1.0) > 1e-9:
        raise ValueError("a must be unimodular")
    S = schwarzian_from_derivative(gprime)
    pts = factor_points(gprime)
    worst = 0.0
    for z0 in samples:
        z0 = complex(z0)
        dist = min((abs(z0 - p) for p in pts), default=1.0)
        if dist == 0:
            raise ValueError(f"sample {z0} is a base point of g'")
        K = 18
        # extraction radius near the analyticity boundary keeps the relative
        # roundoff amplification (dist/r)^K small
        gamma = taylor_coeffs(gprime, z0, K, radius=0.7 * dist, rel_tol=1e-9)
        gser = np.zeros(K + 1, dtype=complex)
        gser[1:] = gamma / np.arange(1, K + 1)
        # S(g) is invariant under g -> g + c, so the series constant is free:
        # choose radius and constant so the pole of the Moebius image provably
        # stays outside 1.3x the sampling circle (series tail bound).
        c21, c22 = a[1, 0], a[1, 1]
        choice = None
        rho = 0.125 * dist
        for _ in range(5):
            tail = sum(abs(gser[k]) * (1.3 * rho) ** k for k in range(1, K + 1))
            for shift in (g_base, g_base + 1.0, g_base + 1j, g_base - 2.0,
                          g_base + 3.0, g_base - 3j):
                d0 = abs(c21 * shift + c22)
                if d0 >= 2.0 * abs(c21) * tail and d0 >= 1e-3 * (abs(c21) + abs(c22)):
                    choice = (rho, shift)
                    break
            if choice:
                break
            rho *= 0.5
        if choice is None:
            raise ValueError(f"could not avoid the Moebius pole near {z0}")
        rho, shift = choice
        gser[0] = shift
        M = 128
        w = rho * np.exp(2j * np.pi * np.arange(M) / M)
        gv = np.polyval(gser[::-1], w)
        h = (a[0, 0] * gv + a[0, 1]) / (c21 * gv + c22)
        hh = np.fft.fft(h) / M
        h1 = hh[1] / rho
        h2 = hh[2] / rho ** 2
        h3 = hh[3] / rho ** 3
        if abs(h1) == 0:
            raise ValueError(f"g' vanishes at sample {z0}")
        s_num = 6.0 * h3 / h1 - 6.0 * (h2 / h1) ** 2
        s_sym = eval_principal(S, z0)
        dev = abs(s_num - s_sym) / max(1.0, abs(s_sym))
        worst = max(worst, dev)
    return worst


# ---------------------------------------------------------------------------
# JSON wire form
# ---------------------------------------------------------------------------

def expr_to_json(e: BranchExpr) -> dict:
    """Wire form: {"terms": [{"coeff": [re, im], "factors": [...]}, ...]}."""
    return {"terms": [
        {"coeff": [t.coeff.real, t.coeff.imag],
         "factors": [{"point": [p.real, p.imag], "exponent": a}
                     for p, a in t.factors]}
        for t in e.terms]}


def expr_from_json(d: dict) -> BranchExpr:
    """Inverse of :func:`expr_to_json`."""
    terms = []
    for t in d["terms"]:
        coeff = complex(t["coeff"][0], t["coeff"][1])
        fac = tuple((complex(f["point"][0], f["point"][1]), float(f["exponent"]))
                    for f in t["factors"])
        terms.append(BranchTerm(coeff, fac))
    return _make(tuple(terms))
