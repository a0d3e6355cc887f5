"""Integration of holomorphic null lifts and end monodromy.

A surface is described by a :class:`SurfaceSpec` on a punctured genus-0
domain, in one of two coordinate systems for the lift F into SL(2,C):

* :class:`SecondaryData` ``(g', omega, g(base))`` integrates the right system
  dF = F A with A = omega_hat(z) [[g, -g^2], [1, -g]]; g is recovered along
  the way by integrating g'.  The coefficients are generally multi-valued, so
  the transport carries a branch state.
* :class:`DualData` ``(G, Q)`` integrates the left system dF = A F with
  A = (Q_hat/G') [[G, -G^2], [1, -G]], whose coefficients are single-valued
  rational expressions on the punctured sphere.

Loops around punctures are planned as lassos — a spoke from the basepoint to
a circle of radius 0.4x the nearest-singularity distance, the circle, and the
spoke reversed — with automatic detours around other singular points.  The
monodromy of a loop is the transported frame started from the identity; with
loops composing left-to-right, transports multiply right-to-left, so the
product M[n-1] ... M[0] over all punctures (in spoke-angle order) is +-id.
All monodromy matrices are defined up to a common sign (the lift of a
developing map is a PSL(2,C) object; su2_defect and unitarizability are
insensitive to the sign).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import cexpr as cx
from .cexpr import BranchExpr, PathTooClose
from .sl2c import INF

__all__ = [
    "SecondaryData", "DualData", "SurfaceSpec", "RationalMap", "MonodromyRep",
    "StepSizeUnderflow", "LoopPlanningFailed", "NotDualizable",
    "DegenerateDifferential",
    "is_inf", "coefficient_matrix", "integrate_lift", "LiftTransport",
    "avoid_points", "loop_polyline", "plan_polyline", "monodromy",
    "monodromy_rep", "extract_gauss_maps", "dual_gauss_derivative",
    "dual_spec", "hopf_expr", "check_compat",
    "CompatReport", "branch_divisor", "invert_spec",
]


class StepSizeUnderflow(Exception):
    """The adaptive integrator was forced below the minimum step size."""


class LoopPlanningFailed(Exception):
    """No valid lasso exists for the requested puncture and basepoint."""


class NotDualizable(Exception):
    """The spec does not carry the data needed to form its dual."""


class DegenerateDifferential(Exception):
    """dF vanished to working precision; Gauss maps are undefined there."""


def is_inf(p) -> bool:
    """True for the point at infinity (any inf-valued complex)."""
    p = complex(p)
    return math.isinf(p.real) or math.isinf(p.imag)


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMap:
    """Rational function num/den with descending complex coefficients."""

    num: tuple[complex, ...]
    den: tuple[complex, ...] = (1.0 + 0.0j,)

    def __post_init__(self):
        for name in ("num", "den"):
            c = np.asarray(getattr(self, name), dtype=complex)
            big = np.abs(c).max()
            if big == 0:
                if name == "den":
                    raise ValueError("zero denominator")
                c = np.zeros(1, dtype=complex)
            else:
                nz = np.nonzero(np.abs(c) > 1e-14 * big)[0]
                c = c[nz[0]:]
            object.__setattr__(self, name, tuple(complex(x) for x in c))

    def __call__(self, z):
        return np.polyval(self.num, z) / np.polyval(self.den, z)

    def derivative(self) -> "RationalMap":
        n, d = np.array(self.num), np.array(self.den)
        w = np.polysub(np.polymul(np.polyder(n) if len(n) > 1 else [0.0], d),
                       np.polymul(n, np.polyder(d) if len(d) > 1 else [0.0]))
        return RationalMap(tuple(w), tuple(np.polymul(d, d)))

    def reciprocal_compose(self) -> "RationalMap":
        """The rational map w -> self(1/w)."""
        rn, rd = list(self.num)[::-1], list(self.den)[::-1]
        dn, dd = len(rn) - 1, len(rd) - 1
        if dd >= dn:
            rn = rn + [0.0] * (dd - dn)
        else:
            rd = rd + [0.0] * (dn - dd)
        return RationalMap(tuple(rn), tuple(rd))

    def poles(self) -> list[tuple[complex, int]]:
        """Finite poles with multiplicity (assumes num/den reduced)."""
        if len(self.den) == 1:
            return []
        return cx.roots_with_multiplicity(np.array(self.den))

    def degree(self) -> int:
        """Topological degree: max of numerator/denominator degree after
        cancelling common roots."""
        n, d = len(self.num) - 1, len(self.den) - 1
        if n == 0 and d == 0:
            return 0
        nr = cx.roots_with_multiplicity(np.array(self.num)) if n else []
        dr = cx.roots_with_multiplicity(np.array(self.den)) if d else []
        for r, k in nr:
            for i, (s, m) in enumerate(dr):
                if abs(r - s) <= 1e-8 * max(1.0, abs(r)):
                    c = min(k, m)
                    n -= c
                    d -= c
                    dr[i] = (s, m - c)
                    break
        return max(n, d)


@dataclass(frozen=True)
class SecondaryData:
    """Weierstrass-type data (g', omega, g at the basepoint)."""

    gprime: BranchExpr
    omega: BranchExpr
    g_base: complex = 0.0


@dataclass(frozen=True)
class DualData:
    """Single-valued data (G rational, Q_hat with integer exponents).

    ``dG`` optionally carries an exact factored form of G' used by curvature
    and compatibility routines; the integrator itself evaluates G'
    pointwise from the rational map.
    """

    G: RationalMap
    Q: BranchExpr
    dG: BranchExpr | None = None

    def __post_init__(self):
        for t in self.Q.terms:
            for _, a in t.factors:
                if abs(a - round(a)) > 1e-9:
                    raise ValueError(
                        "DualData Q must be single-valued "
                        "(integer exponents only)")


@dataclass(frozen=True)
class SurfaceSpec:
    """A punctured genus-0 domain plus lift data and a basepoint."""

    punctures: tuple[complex, ...]
    data: SecondaryData | DualData
    basepoint: complex
    genus: int = 0
    name: str = ""

    def __post_init__(self):
        if self.genus != 0:
            raise ValueError("only genus-0 domains are supported")
        object.__setattr__(self, "punctures",
                           tuple(complex(p) for p in self.punctures))
        object.__setattr__(self, "basepoint", complex(self.basepoint))


# ---------------------------------------------------------------------------
# coefficient matrices
# ---------------------------------------------------------------------------

def _gauss_matrix(h: complex, w: complex) -> np.ndarray:
    """w * [[h, -h^2], [1, -h]] — traceless by construction."""
    return np.array([[h * w, -h * h * w], [w, -h * w]])


def coefficient_matrix(spec: SurfaceSpec, z: complex, g_value: complex | None = None):
    """The ODE coefficient A at z and the side it acts on.

    Returns ``(A, side)`` with ``side`` either ``"right"`` (dF = F A,
    :class:`SecondaryData`) or ``"left"`` (dF = A F, :class:`DualData`).  For
    secondary data the current value of g must be supplied (it is a path
    functional, not a function of z); principal branches are used for the
    expression evaluations.
    """
    d = spec.data
    z = complex(z)
    if isinstance(d, SecondaryData):
        if g_value is None:
            raise ValueError("secondary data needs the current g value")
        w = cx.eval_principal(d.omega, z)
        return _gauss_matrix(complex(g_value), complex(w)), "right"
    gp = _dual_gprime(d)(z)
    q = cx.eval_principal(d.Q, z)
    return _gauss_matrix(complex(d.G(z)), complex(q / gp)), "left"


def _horner(coeffs, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in coeffs:
        acc = acc * z + c
    return acc


def _eval_expr_scalar(e: BranchExpr, z: complex) -> complex:
    """Principal-branch scalar evaluation without ndarray overhead."""
    out = 0.0 + 0.0j
    for t in e.terms:
        v = t.coeff
        for p, a in t.factors:
            v *= (z - p) ** a
        out += v
    return out


def _dual_gprime(d: DualData):
    if d.dG is not None:
        e = d.dG
        return lambda z: _eval_expr_scalar(e, z)
    gp = d.G.derivative()
    num, den = gp.num, gp.den
    return lambda z: _horner(num, z) / _horner(den, z)


# ---------------------------------------------------------------------------
# adaptive Dormand-Prince 5(4) on the lift system
# ---------------------------------------------------------------------------

_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)
_DP_E = tuple(b5 - b4 for b5, b4 in zip(_DP_B5, _DP_B4))


def _dopri_advance(fun, y, rtol, atol, hmin_abs):
    """Integrate dy/dt = fun(t, y) from t=0 to t=1 (fixed endpoints).

    The step is additionally capped so that h * ||dy/dt|| <= 0.5 * ||y||,
    the stability guard appropriate for linear systems (h ||A|| <= 1/2).
    """
    t = 0.0
    k1 = fun(0.0, y)
    ynorm = float(np.abs(y).max())
    fnorm = float(np.abs(k1).max())
    h = min(1.0, 0.5 * max(ynorm, atol) / (fnorm + 1e-300))
    nsteps = 0
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < hmin_abs:
            raise StepSizeUnderflow(f"step {h:.2e} at t={t:.6f}")
        ks = [k1]
        for i in range(1, 7):
            yi = y + h * sum(a * k for a, k in zip(_DP_A[i], ks))
            ks.append(fun(t + h * sum(_DP_A[i]), yi))
        y5 = y + h * sum(b * k for b, k in zip(_DP_B5, ks))
        err_vec = h * sum(e * k for e, k in zip(_DP_E, ks))
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.max(np.abs(err_vec) / scale))
        if err <= 1.0:
            t += h
            y = y5
            k1 = ks[6]  # FSAL: stage 7 is evaluated at (t + h, y5)
            nsteps += 1
            ynorm = float(np.abs(y).max())
            fnorm = float(np.abs(k1).max())
            h = min(h * min(5.0, 0.9 * err ** -0.2 if err > 0 else 5.0),
                    0.5 * max(ynorm, atol) / (fnorm + 1e-300))
        else:
            h *= max(0.2, 0.9 * err ** -0.2)
    return y, nsteps


class LiftTransport:
    """Frame transport F (and g, for secondary data) along polylines.

    Holds the current point, frame, branch state and (secondary) g value;
    ``advance`` continues them along a polyline starting at the current
    point.  Segments are subdivided so every integration window subtends a
    small angle at every branch point, which keeps the in-window principal
    continuation of the coefficients valid.
    """

    def __init__(self, spec: SurfaceSpec, rtol: float = 1e-12,
                 atol: float = 1e-12, clearance: float | None = None,
                 renormalize: bool = False):
        self.spec = spec
        self.rtol, self.atol = rtol, atol
        self.renormalize = renormalize
        self.steps = 0
        self.renorm_count = 0
        self.z = complex(spec.basepoint)
        self.F = np.eye(2, dtype=complex)
        d = spec.data
        self.secondary = isinstance(d, SecondaryData)
        if self.secondary:
            self.g = complex(d.g_base)
            pts = set(cx.factor_points(d.gprime)) | set(cx.factor_points(d.omega))
            self.state = cx.initial_state(sorted(pts, key=lambda p: (p.real, p.imag)),
                                          self.z)
            self._track = list(self.state.args)
        else:
            self.g = None
            self.state = None
            self._track = avoid_points(spec)
            self._dual_gp = _dual_gprime(d)
        self.clearance = clearance if clearance is not None \
            else cx._default_clearance(self._track or [0.0, 1.0])

    def branch_value(self, e: BranchExpr) -> complex:
        """e at the current point, on the branch carried by the transport.

        Only secondary-data transports carry a branch state; dual-data
        coefficients are single-valued and need none.
        """
        if not self.secondary:
            raise ValueError("dual-data transports carry no branch state")
        return self._eval_branch(e, self.z)

    # -- coefficient evaluation on the current branch -----------------------
    def _eval_branch(self, e: BranchExpr, z: complex) -> complex:
        """e at z on the branch anchored at the current state point."""
        st = self.state
        out = 0.0 + 0.0j
        for t in e.terms:
            v = t.coeff
            for p, a in t.factors:
                w = z - p
                th = st.args[p] + cmath.phase(w / (st.z - p))
                v *= cmath.exp(a * (math.log(abs(w)) + 1j * th))
            out += v
        return out

    def _rhs_secondary(self, za, dz):
        d = self.spec.data

        def fun(t, y):
            z = za + t * dz
            w = self._eval_branch(d.omega, z)
            gp = self._eval_branch(d.gprime, z)
            g = y[4]
            a11, a12, a21, a22 = g * w, -g * g * w, w, -g * w
            return dz * np.array([
                y[0] * a11 + y[1] * a21, y[0] * a12 + y[1] * a22,
                y[2] * a11 + y[3] * a21, y[2] * a12 + y[3] * a22,
                gp])
        return fun

    def _rhs_dual(self, za, dz):
        d = self.spec.data
        Q, gp = d.Q, self._dual_gp
        gn, gd = d.G.num, d.G.den

        def fun(t, y):
            z = za + t * dz
            w = _eval_expr_scalar(Q, z) / gp(z)
            Gv = _horner(gn, z) / _horner(gd, z)
            a11, a12, a21, a22 = Gv * w, -Gv * Gv * w, w, -Gv * w
            return dz * np.array([
                a11 * y[0] + a12 * y[2], a11 * y[1] + a12 * y[3],
                a21 * y[0] + a22 * y[2], a21 * y[1] + a22 * y[3]])
        return fun

    def advance(self, polyline) -> "LiftTransport":
        prev = self.z
        for raw in polyline:
            nxt = complex(raw)
            if nxt == prev:
                continue
            dmin = math.inf
            for p in self._track:
                dist = cx._seg_dist(prev, nxt, p)
                if dist < self.clearance:
                    raise PathTooClose(p, dist, self.clearance)
                dmin = min(dmin, dist)
            nsub = 1 if dmin is math.inf else \
                max(1, math.ceil(abs(nxt - prev) / (0.4 * dmin)))
            for k in range(1, nsub + 1):
                znew = prev + (nxt - prev) * (k / nsub)
                self._step_to(znew)
            prev = nxt
        return self

    def _step_to(self, znew: complex):
        za, dz = self.z, znew - self.z
        if self.secondary:
            y0 = np.array([*self.F.ravel(), self.g])
            fun = self._rhs_secondary(za, dz)
        else:
            y0 = self.F.ravel().copy()
            fun = self._rhs_dual(za, dz)
        y, n = _dopri_advance(fun, y0, self.rtol, self.atol, 1e-13)
        self.steps += n
        self.F = y[:4].reshape(2, 2)
        if self.renormalize:
            det = np.linalg.det(self.F)
            self.F /= np.sqrt(det)
            self.renorm_count += 1
        if self.secondary:
            self.g = complex(y[4])
            for p in self._track:
                self.state.args[p] += cmath.phase((znew - p) / (self.state.z - p))
            self.state.z = znew
        self.z = znew

    @property
    def det_drift(self) -> float:
        return abs(np.linalg.det(self.F) - 1.0)


def integrate_lift(spec: SurfaceSpec, path, rtol: float = 1e-12,
                   atol: float = 1e-12, renormalize: bool = False) -> np.ndarray:
    """Transport the identity frame along a polyline from the basepoint.

    ``path`` must start at ``spec.basepoint``.  Returns the frame at the end
    of the path: for secondary data this is the right-system transport, for
    dual data the left-system transport (both reduce to the same "continued
    frame" convention since F(base) = id).  Determinant drift is the
    integration-error indicator; renormalization is off by default and
    counted when enabled.
    """
    path = [complex(z) for z in path]
    if abs(path[0] - spec.basepoint) > 1e-12:
        raise ValueError("path must start at the basepoint")
    tr = LiftTransport(spec, rtol=rtol, atol=atol, renormalize=renormalize)
    tr.advance(path[1:])
    return tr.F


# ---------------------------------------------------------------------------
# loop planning and monodromy
# ---------------------------------------------------------------------------

def avoid_points(spec: SurfaceSpec) -> list[complex]:
    """Finite points integration paths must avoid (punctures, expression
    base points, poles of G, umbilics)."""
    pts: list[complex] = [p for p in spec.punctures if not is_inf(p)]
    d = spec.data
    if isinstance(d, SecondaryData):
        pts += cx.factor_points(d.gprime) + cx.factor_points(d.omega)
    else:
        pts += cx.factor_points(d.Q)
        if len(d.G.den) > 1:
            pts += [r for r, _ in cx.roots_with_multiplicity(np.array(d.G.den))]
        w = d.G.derivative().num
        if len(w) > 1:
            for r, _ in cx.roots_with_multiplicity(np.array(w)):
                pts.append(r)
        if d.dG is not None:
            pts += cx.factor_points(d.dG)
    out: list[complex] = []
    for p in pts:
        if not any(abs(p - q) <= 1e-10 * max(1.0, abs(q)) for q in out):
            out.append(p)
    return sorted(out, key=lambda p: (p.real, p.imag))


def _safe_polyline(a, b, avoid, clearance, depth=0):
    """Straight segment with recursive perpendicular detours around points."""
    worst, wd = None, math.inf
    for p in avoid:
        dist = cx._seg_dist(a, b, p)
        if dist < clearance and dist < wd:
            worst, wd = p, dist
    if worst is None or depth >= 8:
        return [a, b]
    d = b - a
    L2 = abs(d) ** 2
    t = ((worst - a).real * d.real + (worst - a).imag * d.imag) / L2
    t = min(0.9, max(0.1, t))
    foot = a + t * d
    away = foot - worst
    if abs(away) < 1e-14:
        away = 1j * d / abs(d)
    way = foot + away / abs(away) * (2.0 * clearance)
    left = _safe_polyline(a, way, avoid, clearance, depth + 1)
    right = _safe_polyline(way, b, avoid, clearance, depth + 1)
    return left[:-1] + right


def loop_polyline(spec: SurfaceSpec, puncture_index: int,
                  vertices: int = 48) -> list[complex]:
    """Positively-oriented lasso around one puncture, based at the basepoint.

    The circle radius is 0.4x the distance to the nearest other singular
    point; the spokes detour around singular points.  The loop around the
    puncture at infinity is a large clockwise circle (positively oriented
    as seen from infinity).  Raises :class:`LoopPlanningFailed` when the
    basepoint is too close to the puncture.
    """
    p = spec.punctures[puncture_index]
    base = complex(spec.basepoint)
    avoid = avoid_points(spec)
    if is_inf(p):
        radius = 2.0 * max([abs(q) for q in avoid] + [abs(base)]) + 1.0
        direction = base / abs(base) if base != 0 else 1.0 + 0.0j
        entry = radius * direction
        spoke = _safe_polyline(base, entry, avoid, 3.0 * _plan_clearance(avoid))
        th0 = cmath.phase(entry)
        circle = [radius * cmath.exp(1j * (th0 - 2 * math.pi * k / vertices))
                  for k in range(vertices + 1)]
        return spoke + circle[1:] + spoke[-2::-1]
    others = [q for q in avoid if abs(q - p) > 1e-10 * max(1.0, abs(p))]
    nearest = min((abs(q - p) for q in others), default=1.0 + abs(p))
    radius = 0.4 * nearest
    if abs(base - p) <= 1.2 * radius:
        raise LoopPlanningFailed(
            f"basepoint {base} too close to puncture {p} (loop radius "
            f"{radius:.3e})")
    entry = p + radius * (base - p) / abs(base - p)
    spoke = _safe_polyline(base, entry, others, 3.0 * _plan_clearance(avoid))
    th0 = cmath.phase(entry - p)
    circle = [p + radius * cmath.exp(1j * (th0 + 2 * math.pi * k / vertices))
              for k in range(vertices + 1)]
    return spoke + circle[1:] + spoke[-2::-1]


def plan_polyline(a: complex, b: complex, avoid,
                  clearance: float) -> list[complex]:
    """Polyline from a to b keeping ``clearance`` away from ``avoid`` points.

    A straight segment when possible; otherwise recursive perpendicular
    detours at twice the clearance (bounded depth, so pathological
    configurations degrade to the straight segment rather than recursing
    forever).
    """
    return _safe_polyline(complex(a), complex(b),
                          [complex(p) for p in avoid], float(clearance))


def dual_gauss_derivative(d: DualData):
    """Scalar evaluator ``z -> G'(z)``, preferring the exact factored dG."""
    return _dual_gprime(d)


def _plan_clearance(avoid) -> float:
    return cx._default_clearance(avoid if len(avoid) >= 2 else [0.0, 1.0])


def monodromy(spec: SurfaceSpec, puncture_index: int, rtol: float = 1e-12,
              atol: float = 1e-12) -> np.ndarray:
    """Monodromy matrix of the lift around one puncture (up to global sign)."""
    path = loop_polyline(spec, puncture_index)
    return integrate_lift(spec, path, rtol=rtol, atol=atol)


@dataclass
class MonodromyRep:
    """Monodromies around all punctures, ordered by spoke angle at the base.

    ``matrices[i]`` belongs to ``spec.punctures[order[i]]``.  Loops compose
    left-to-right in listed order; transports therefore multiply
    right-to-left, and ``product_defect`` is the distance of
    ``matrices[-1] @ ... @ matrices[0]`` from +-identity.  Matrices carry the
    usual overall sign ambiguity of lifted developing maps.
    """

    loops: list[list[complex]]
    matrices: list[np.ndarray]
    basepoint: complex
    order: list[int]
    product_defect: float = field(default=math.nan)


def monodromy_rep(spec: SurfaceSpec, rtol: float = 1e-12,
                  atol: float = 1e-12) -> MonodromyRep:
    """Compute all puncture monodromies and the +-id product defect."""
    base = complex(spec.basepoint)

    def spoke_angle(i):
        p = spec.punctures[i]
        if is_inf(p):
            direction = base / abs(base) if base != 0 else 1.0 + 0.0j
            return cmath.phase(direction)
        return cmath.phase(p - base)

    order = sorted(range(len(spec.punctures)), key=spoke_angle)
    loops = [loop_polyline(spec, i) for i in order]
    mats = [integrate_lift(spec, lp, rtol=rtol, atol=atol) for lp in loops]
    prod = np.eye(2, dtype=complex)
    for m in mats:
        prod = m @ prod
    eye = np.eye(2)
    defect = min(float(np.linalg.norm(prod - eye)),
                 float(np.linalg.norm(prod + eye)))
    return MonodromyRep(loops, mats, base, order, defect)


# ---------------------------------------------------------------------------
# Gauss maps, duality, compatibility
# ---------------------------------------------------------------------------

def extract_gauss_maps(zs, Fs, tol: float = 1e-12):
    """Both Gauss maps from frame samples along a path.

    Uses the null structure of dF: g = -dF12/dF11 = -dF22/dF21 and
    G = dF11/dF21 = dF12/dF22.  Differences of consecutive samples
    approximate dF; returns (z_mid, g, G) arrays.  Raises
    :class:`DegenerateDifferential` where dF vanishes to ``tol`` relative to
    its largest entry along the path.
    """
    Fs = np.asarray(Fs, dtype=complex)
    zs = np.asarray(zs, dtype=complex)
    dF = np.diff(Fs, axis=0)
    zmid = 0.5 * (zs[1:] + zs[:-1])
    scale = np.abs(dF).max()
    g = np.empty(len(dF), dtype=complex)
    G = np.empty(len(dF), dtype=complex)
    for i, m in enumerate(dF):
        a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        if max(abs(a), abs(c)) <= tol * scale:
            raise DegenerateDifferential(f"dF ~ 0 near z = {zmid[i]}")
        g[i] = -b / a if abs(a) >= abs(c) else -d / c
        G[i] = a / c if abs(c) >= abs(d) else b / d
    return zmid, g, G


def hopf_expr(spec: SurfaceSpec) -> BranchExpr:
    """Coefficient of the Hopf differential Q = omega dg as an expression."""
    d = spec.data
    if isinstance(d, DualData):
        return d.Q
    return d.omega * d.gprime


def dual_spec(spec: SurfaceSpec) -> SurfaceSpec:
    """Secondary-data spec of the dual surface of a DualData spec.

    The dual surface F# = F^{-1} has data (g#, omega#) = (G, -Q/dG); that is
    directly expressible when the spec carries an exact factored dG whose
    reciprocal is again an expression (a single product term).  Raises
    :class:`NotDualizable` otherwise (in particular for SecondaryData specs,
    whose secondary Gauss map is not part of the data).
    """
    d = spec.data
    if isinstance(d, SecondaryData):
        raise NotDualizable("secondary-data specs do not carry G")
    if d.dG is None or len(d.dG.terms) != 1:
        raise NotDualizable("need a single-term factored dG")
    if len(d.Q.terms) != 1:
        raise NotDualizable("need a single-term Q")
    t = d.dG.terms[0]
    inv_dG = cx.term(1.0 / t.coeff, *((p, -a) for p, a in t.factors))
    omega = -1.0 * (d.Q * inv_dG)
    g_base = complex(d.G(spec.basepoint))
    return SurfaceSpec(spec.punctures,
                       SecondaryData(d.dG, omega, g_base),
                       spec.basepoint, spec.genus,
                       name=(spec.name + "-dual") if spec.name else "dual")


def branch_divisor(G: RationalMap) -> dict[complex, int]:
    """Branch orders of a rational map (local degree minus one), INF included.

    Finite branch orders are the root multiplicities of the numerator of G'
    (this covers poles too: a pole of order m contributes m-1); the order at
    infinity comes from the same computation for G(1/w) at w = 0.
    """
    out: dict[complex, int] = {}
    w = G.derivative().num
    if len(w) > 1 or (len(w) == 1 and w[0] == 0):
        if any(abs(c) > 0 for c in w):
            for r, k in cx.roots_with_multiplicity(np.array(w)):
                out[r] = out.get(r, 0) + k
    h = G.reciprocal_compose()
    wh = h.derivative().num
    if any(abs(c) > 0 for c in wh):
        roots = cx.roots_with_multiplicity(np.array(wh))
        for r, k in roots:
            if abs(r) <= 1e-9:
                out[INF] = k
    return out


@dataclass
class CompatReport:
    """Outcome of the (G, Q) compatibility check.

    ``mismatches`` lists (point, Q_order, branch_order) at non-puncture
    points where the umbilic order of Q differs from the branching of G;
    ``end_rows`` lists (puncture, Q_order, branch_order) for reference.
    """

    ok: bool
    mismatches: list[tuple[complex, int, int]]
    end_rows: list[tuple[complex, int, int]]


def check_compat(G: RationalMap, Q: BranchExpr, punctures=()) -> CompatReport:
    """Check that zeros of Q match branch points of G away from punctures."""
    bd = branch_divisor(G)
    qpts = cx.factor_points(Q)

    def q_order(p):
        if is_inf(p):
            return -round(cx.degree_bound(Q)) - 4
        for q in qpts:
            if abs(p - q) <= 1e-8 * max(1.0, abs(q)):
                return round(cx.min_exponent(Q, q))
        return 0

    pts: list = []
    for p in list(bd) + cx.factor_points(Q) + list(punctures):
        if not any((is_inf(p) and is_inf(q)) or
                   (not is_inf(p) and not is_inf(q) and
                    abs(p - q) <= 1e-9 * max(1.0, abs(q))) for q in pts):
            pts.append(p)
    mismatches, end_rows = [], []
    for p in pts:
        me = next((q for q in punctures if
                   (is_inf(p) and is_inf(q)) or
                   (not is_inf(p) and not is_inf(q) and
                    abs(p - q) <= 1e-9 * max(1.0, abs(q)))), None)
        b = bd.get(p, 0) if not is_inf(p) else bd.get(INF, 0)
        if not is_inf(p):
            b = next((k for q, k in bd.items() if not is_inf(q) and
                      abs(p - q) <= 1e-9 * max(1.0, abs(q))), 0)
        row = (p, q_order(p), b)
        if me is not None:
            end_rows.append(row)
        elif row[1] != row[2]:
            mismatches.append(row)
    return CompatReport(not mismatches, mismatches, end_rows)


def invert_spec(spec: SurfaceSpec) -> SurfaceSpec:
    """The same surface in the w = 1/z chart (punctures and data mapped).

    Used for analysis near the puncture at infinity: the basepoint maps to
    1/basepoint, finite punctures p to 1/p (0 to infinity), 1-form data picks
    up dz = -dw/w^2 and Q dz^2 the factor w^{-4}.
    """
    d = spec.data
    punctures = tuple(INF if p == 0 else (0.0 if is_inf(p) else 1.0 / p)
                      for p in spec.punctures)
    base = 1.0 / spec.basepoint
    if isinstance(d, SecondaryData):
        gp = -1.0 * (cx.invert_chart(d.gprime) * cx.factor(0.0, -2.0))
        om = -1.0 * (cx.invert_chart(d.omega) * cx.factor(0.0, -2.0))
        data = SecondaryData(gp, om, d.g_base)
    else:
        q = cx.invert_chart(d.Q) * cx.factor(0.0, -4.0)
        dg = None
        if d.dG is not None:
            dg = -1.0 * (cx.invert_chart(d.dG) * cx.factor(0.0, -2.0))
        data = DualData(d.G.reciprocal_compose(), q, dg)
    return SurfaceSpec(punctures, data, base, spec.genus, spec.name)
