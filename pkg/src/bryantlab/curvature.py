"""Total absolute curvature two ways: quadrature and divisor bookkeeping.

The total absolute curvature of a surface with secondary Gauss map g is the
spherical area, with multiplicity, of the image of g: the integral over the
punctured domain of the pulled-back Fubini-Study density
rho = 4|g'|^2 / (1 + |g|^2)^2.  The dual total absolute curvature is the
same integral for the hyperbolic Gauss map G.  ``ta_quadrature`` evaluates
these integrals numerically for any spec, ``ta_gauss_bonnet`` evaluates the
matching closed forms on conical bookkeeping data (:class:`DivisorData`),
and ``rational_degree`` gives the exact dual value 4*pi*deg(G) when G is
rational.

When the requested Gauss map is not part of the spec's data it is recovered
exactly from the transported frame -- no finite differences.  For the right
system dF = F A the frame acts on the data by a Moebius map:
G = (F11 g + F12)/(F21 g + F22), and dG = dg / (F21 g + F22)^2 because
det F = 1.  For the left system dF = A F the inverse action gives
g = (G F22 - F12)/(F11 - G F21) and dg = dG / (F11 - G F21)^2.  The
densities are evaluated in the overflow-stable form
4 |dh|^2 / (|num|^2 + |den|^2)^2, whose denominator is bounded away from
zero by det F = 1.

Branch monodromy multiplies the lift by a monodromy matrix, which acts on g
by a Moebius transformation.  The Fubini-Study density is invariant under
that action exactly when the matrix is unitary up to sign, i.e. when the
action is a rotation of the g-sphere.  Monodromies of a closable spec are
unitary only after conjugating by the positive matrix c with c M c^-1 in
SU(2) for every monodromy M (c^2 = H solves M^* H M = H); the g-side
densities are therefore evaluated in that gauge -- g and the frame pushed
through c -- which is what makes the integrand a genuine single-valued
function on the punctured domain.  The G-side density needs no gauge: G is
single-valued on its own whenever it extends meromorphically, and its
total area is Moebius invariant.  For a spec whose monodromies admit no
unitarizer the primal density is not single-valued and no gauge can fix
that; the least-squares c is used and the result is formal.

Quadrature scheme: a smooth partition of unity (exp(-1/t) transitions)
splits the sphere into a log-polar chart around every finite puncture, a
log-polar chart around infinity in the w = 1/z coordinate, and a background
polar chart.  Radial nodes are Gauss-Legendre in log r -- geometric
clustering toward the puncture, the right grading for every integrable
conical order -- and angular nodes are the periodic trapezoid rule.
Punctured charts stop at a hole of radius eps, two further geometric shells
halve eps twice, and the three partial integrals are extrapolated in eps by
one Aitken step (order-2 Richardson, recorded in the result).  Shells are
accumulated from the outermost inward; a shell sequence that fails to decay
is the signature of a non-integrable end and raises :class:`DivergentEnd`
instead of returning a number.  Chart integrals are independent tasks
(``jobs``); the final reduction is an ordered sum, so results are identical
for every job count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cexpr as cx
from .holonomy import (DualData, LiftTransport, RationalMap, SecondaryData,
                       SurfaceSpec, avoid_points, is_inf, monodromy,
                       plan_polyline)

__all__ = [
    "DivisorData", "TAResult", "InequalityReport",
    "InvalidDivisor", "DivergentEnd", "ConstantMap",
    "ta_gauss_bonnet", "ta_quadrature", "rational_degree",
    "inequality_report",
]


class InvalidDivisor(Exception):
    """Divisor bookkeeping data violates one of its defining relations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{c}: {m}" for c, m in self.violations))


class DivergentEnd(Exception):
    """The area density is non-integrable at an end."""

    def __init__(self, where: str, decay_exponent: float, reason: str | None = None):
        self.where = where
        self.decay_exponent = decay_exponent
        if reason is None:
            reason = f"shell decay exponent {decay_exponent:.3g}"
        super().__init__(f"non-integrable density at {where} ({reason})")


class ConstantMap(Exception):
    """Degree requested for a constant rational map."""


# ---------------------------------------------------------------------------
# divisor bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisorData:
    """Conical bookkeeping data of a finite-total-curvature surface.

    ``ends[j] = (d_j, mu_j, mu_sharp_j)``: order of the Hopf differential,
    branching order of g (the conical order of the primal pseudometric) and
    branching order of G (``math.inf`` at an irregular end) at the j-th
    end.  ``umbilics[k]`` is the order of the Hopf differential at the k-th
    umbilic point.  Construction only normalizes shapes; the defining
    relations are reported by :meth:`violations` so that candidate data can
    be examined for contradictions.
    """

    ends: tuple[tuple[int, float, float], ...]
    umbilics: tuple[int, ...] = ()
    genus: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.ends:
            raise ValueError("at least one end is required")
        ends = []
        for e in self.ends:
            d, mu, mus = e
            if abs(d - round(d)) > 1e-9:
                raise ValueError(f"end order {d} is not an integer")
            ends.append((int(round(d)), float(mu), float(mus)))
        object.__setattr__(self, "ends", tuple(ends))
        um = []
        for x in self.umbilics:
            if abs(x - round(x)) > 1e-9 or round(x) < 1:
                raise ValueError(f"umbilic order {x} must be a positive "
                                 "integer")
            um.append(int(round(x)))
        object.__setattr__(self, "umbilics", tuple(um))

    @property
    def n(self) -> int:
        return len(self.ends)

    def degenerate(self) -> bool:
        """True for the totally umbilic divisor: a single end of order 0
        with trivial Gauss maps, where both pseudometrics vanish."""
        return (self.genus == 0 and self.umbilics == ()
                and self.ends == ((0, 0.0, 0.0),))

    def violations(self) -> list[tuple[str, str]]:
        """Violated defining relations as (code, message) pairs.

        Checked: the order sum rule sum(d) + sum(xi) = 4*genus - 4; the
        lower bound mu > -1; mu - d > 1 (>= 2 for integer mu); mu = mu#
        when d >= -1; mu# a non-negative integer when d >= -2 (regular
        end); mu# infinite when d <= -3 (irregular end).
        """
        out: list[tuple[str, str]] = []
        total = sum(d for d, _, _ in self.ends) + sum(self.umbilics)
        want = 4 * self.genus - 4
        if total != want:
            out.append(("order-sum",
                        f"sum of end and umbilic orders is {total}, "
                        f"not {want}"))
        for j, (d, mu, mus) in enumerate(self.ends):
            if mu <= -1.0 + 1e-12:
                out.append(("mu-floor", f"end {j}: mu = {mu} <= -1"))
            gap = mu - d
            is_int = abs(mu - round(mu)) <= 1e-9
            if gap <= 1.0 + 1e-12 or (is_int and gap < 2.0 - 1e-9):
                out.append(("mu-vs-q-order",
                            f"end {j}: mu - d = {gap} below the bound"))
            if d >= -2:
                ok = (math.isfinite(mus) and mus >= -1e-9
                      and abs(mus - round(mus)) <= 1e-9)
                if not ok:
                    out.append(("dual-mu-integer",
                                f"end {j}: d = {d} >= -2 but mu# = {mus}"))
            else:
                if math.isfinite(mus):
                    out.append(("irregular-dual-infinite",
                                f"end {j}: d = {d} <= -3 but mu# = {mus} "
                                "is finite"))
            if d >= -1 and math.isfinite(mus) and abs(mu - mus) > 1e-9:
                out.append(("mu-agree",
                            f"end {j}: d = {d} >= -1 but mu = {mu} != "
                            f"mu# = {mus}"))
        return out


def ta_gauss_bonnet(d: DivisorData, which: str = "primal") -> float:
    """Closed-form total absolute curvature from divisor bookkeeping.

    TA / (2 pi) = chi + sum_j mu_j + sum_k xi_k with chi = 2 - 2*genus,
    and the same with mu# for the dual value; by the order sum rule this
    equals 2*genus - 2 + sum_j (mu_j - d_j).  The totally umbilic divisor
    returns 0 for both values, and an irregular end makes the dual value
    ``math.inf``.  Raises :class:`InvalidDivisor` when the defining
    relations fail.
    """
    if which not in ("primal", "dual"):
        raise ValueError(f"which must be 'primal' or 'dual', got {which!r}")
    if d.degenerate():
        return 0.0
    bad = d.violations()
    if bad:
        raise InvalidDivisor(bad)
    chi = 2.0 - 2.0 * d.genus
    if which == "primal":
        return 2.0 * math.pi * (chi + sum(mu for _, mu, _ in d.ends)
                                + sum(d.umbilics))
    if any(not math.isfinite(mus) for _, _, mus in d.ends):
        return math.inf
    return 2.0 * math.pi * (chi + sum(mus for _, _, mus in d.ends)
                            + sum(d.umbilics))


def rational_degree(G: RationalMap) -> int:
    """Topological degree of a nonconstant rational map.

    The maximum of numerator and denominator degree after cancelling
    common roots; the dual total absolute curvature of a spec with
    hyperbolic Gauss map G is exactly 4*pi times this.  Raises
    :class:`ConstantMap` for degree zero.
    """
    deg = G.degree()
    if deg == 0:
        raise ConstantMap("rational map is constant")
    return deg


@dataclass(frozen=True)
class InequalityReport:
    """Checks of the general total-curvature bounds for one divisor.

    The two-sided data is (value, bound, margin, holds); ``osserman_equality``
    flags margin zero to tolerance, which characterizes all ends being
    embedded.  The odd-end fields are None unless genus is 0 and the number
    of ends is odd (n = 2m + 1 gives TA >= 4*pi*m).
    """

    cohn_vossen_bound: float
    cohn_vossen_margin: float
    cohn_vossen_strict: bool
    osserman_bound: float
    osserman_margin: float
    osserman_holds: bool
    osserman_equality: bool
    odd_end_m: int | None
    odd_end_bound: float | None
    odd_end_holds: bool | None


def inequality_report(d: DivisorData, ta: float,
                      ta_dual: float) -> InequalityReport:
    """Evaluate the strict area bound, the dual lower bound with its
    embeddedness equality case, and the odd-end lower bound."""
    n, g = d.n, d.genus
    cv_bound = 2.0 * math.pi * (n - 2 + 2 * g)
    cv_margin = ta - cv_bound
    oss_bound = 2.0 * math.pi * 2 * (g + n - 1)
    oss_margin = ta_dual - oss_bound
    oss_eq = (math.isfinite(oss_margin)
              and abs(oss_margin) <= 1e-9 * max(1.0, abs(oss_bound)))
    if g == 0 and n % 2 == 1:
        m = (n - 1) // 2
        ob: float | None = 4.0 * math.pi * m
        oh: bool | None = ta >= ob - 1e-9
        om: int | None = m
    else:
        om, ob, oh = None, None, None
    return InequalityReport(
        cohn_vossen_bound=cv_bound, cohn_vossen_margin=cv_margin,
        cohn_vossen_strict=cv_margin > 0.0,
        osserman_bound=oss_bound, osserman_margin=oss_margin,
        osserman_holds=oss_margin >= -1e-9, osserman_equality=oss_eq,
        odd_end_m=om, odd_end_bound=ob, odd_end_holds=oh)


# ---------------------------------------------------------------------------
# quadrature: charts and partition of unity
# ---------------------------------------------------------------------------

def _smoothstep(t):
    """C-infinity monotone 0 -> 1 transition on [0, 1]."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        b = np.where(t < 1.0,
                     np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return a / (a + b)


@dataclass(frozen=True)
class _Chart:
    kind: str        # "puncture" | "cap" | "bulk"
    center: complex  # the puncture for "puncture" charts, else 0
    outer: float     # outer radius in the chart coordinate
    label: str


def _plan_charts(spec: SurfaceSpec):
    """Chart list, per-puncture partition radii (r1, r2), and R0 < R1.

    Finite-puncture charts reach 0.4x the distance to the nearest other
    finite puncture (or to the infinity chart); the partition fades over
    [0.45, 0.95] of that reach.  The infinity chart owns |z| >= R0 with
    weight ramping to 1 at R1 = 2 R0; the background chart is a polar grid
    on |z| <= R1.
    """
    fin = [p for p in spec.punctures if not is_inf(p)]
    maxabs = max([abs(p) for p in fin] + [abs(spec.basepoint), 0.0])
    R0 = max(1.5, 2.0 * maxabs + 0.5)
    R1 = 2.0 * R0
    charts, rings = [], {}
    for p in sorted(fin, key=lambda q: (q.real, q.imag)):
        dists = [abs(p - q) for q in fin if q != p] + [R0 - abs(p)]
        reach = 0.4 * min(dists)
        rings[p] = (0.45 * reach, 0.95 * reach)
        charts.append(_Chart("puncture", p, 0.95 * reach,
                             f"puncture {p:.6g}"))
    charts.append(_Chart("cap", 0.0, 1.0 / R0, "infinity"))
    charts.append(_Chart("bulk", 0.0, R1, "background"))
    return charts, rings, R0, R1


def _partition_weight(chart: _Chart, z, rings, R0: float, R1: float):
    """Partition-of-unity weight of one chart at plane points z."""
    z = np.asarray(z)
    if chart.kind == "puncture":
        r1, r2 = rings[chart.center]
        return 1.0 - _smoothstep((np.abs(z - chart.center) - r1) / (r2 - r1))
    chi = _smoothstep((np.abs(z) - R0) / (R1 - R0))
    if chart.kind == "cap":
        return chi
    w = 1.0 - chi
    for p, (r1, r2) in rings.items():
        w = w - (1.0 - _smoothstep((np.abs(z - p) - r1) / (r2 - r1)))
    return np.clip(w, 0.0, 1.0)


@lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _log_ring(lo: float, hi: float, n: int):
    """Radii and effective radial weights (including r^2 d(log r))."""
    x, w = _leggauss(n)
    a, b = math.log(lo), math.log(hi)
    s = 0.5 * (a + b) + 0.5 * (b - a) * x
    r = np.exp(s)
    return r, 0.5 * (b - a) * w * r * r


def _lin_ring(hi: float, n: int):
    """Radii and effective radial weights (including r dr) on (0, hi)."""
    x, w = _leggauss(n)
    r = 0.5 * hi * (x + 1.0)
    return r, 0.5 * hi * w * r


def _chart_groups(chart: _Chart, level: tuple[int, int]):
    """Radial node groups: [main] for the background chart, else
    [main, shell, shell] with the shells halving the hole radius."""
    nr, _ = level
    if chart.kind == "bulk":
        return [_lin_ring(chart.outer, max(6, round(1.5 * nr)))]
    eps0 = chart.outer / 16.0
    m = max(4, nr // 2)
    return [_log_ring(eps0, chart.outer, nr),
            _log_ring(eps0 / 2.0, eps0, m),
            _log_ring(eps0 / 4.0, eps0 / 2.0, m)]


def _assemble(chart: _Chart, sums: list[float]) -> tuple[float, float]:
    """Chart value and epsilon-extrapolation residual from group sums.

    For punctured charts the partial integrals I(eps), I(eps/2), I(eps/4)
    get one Aitken step; shells that fail to decay (exponent <= 0.02, i.e.
    conical order <= -1) raise :class:`DivergentEnd`.
    """
    if len(sums) == 1:
        return sums[0], 0.0
    i0, t1, t2 = sums
    scale = abs(i0) + t1 + 1e-300
    if t2 > 1e-13 * scale:
        rate = math.log2(t1 / t2) if t1 > 0 else -math.inf
        if rate <= 0.02:
            raise DivergentEnd(chart.label, rate)
    i1, i2 = i0 + t1, i0 + t1 + t2
    if abs(i2) > 1e6:
        raise DivergentEnd(chart.label, math.nan)
    d1, d2 = i1 - i0, i2 - i1
    den = d2 - d1
    if abs(den) <= 1e-14 * max(abs(d1), abs(d2), 1e-300):
        return i2, abs(d2)
    star = i2 - d2 * d2 / den
    resid = abs(star - i2) * min(1.0, abs(d2) / max(abs(d1), 1e-300))
    return star, resid


# ---------------------------------------------------------------------------
# quadrature: densities
# ---------------------------------------------------------------------------

def _fs_projective(dh: float, num: complex, den: complex) -> float:
    """4 dh^2 / (|num|^2 + |den|^2)^2, scaled against overflow."""
    s = max(abs(num), abs(den))
    if s == 0.0 or not math.isfinite(s):
        return math.inf if s == 0.0 else 0.0
    q = abs(num / s) ** 2 + abs(den / s) ** 2
    v = dh / (s * s)
    return 4.0 * v * v / (q * q)


def _local_orders(expr, punctures):
    """Leading exponent of an expression at each puncture, read termwise.

    Finite punctures report the minimal (z - p)-exponent over the terms;
    the puncture at infinity reports the exponent in the w = 1/z chart of
    the quadratic differential expr dz^2, i.e. -(degree bound) - 4.
    Cancellations between terms can only raise the true order, so the
    reported value is a lower bound.
    """
    out = []
    for p in punctures:
        if is_inf(p):
            out.append((p, -cx.degree_bound(expr) - 4.0))
        else:
            out.append((p, cx.min_exponent(expr, p)))
    return out


def _check_integrable(spec: SurfaceSpec, which: str) -> None:
    """Raise :class:`DivergentEnd` when a local exponent shows the
    requested density is non-integrable at an end.

    An end where the Hopf differential has order <= -3 is an irregular
    singular point of the lift system: the map recovered from the frame
    there is essential, so its image area diverges.  That kills the dual
    density of secondary data and the primal density of dual data.  The
    primal density of secondary data is integrable for every conical end;
    the one exposed failure is a logarithmic branch point of g (g'
    exponent exactly -1).
    """
    d = spec.data
    if isinstance(d, SecondaryData):
        if which == "primal":
            gp_orders = _local_orders(d.gprime, spec.punctures)
            for p, a in gp_orders:
                a = a + 2.0 if is_inf(p) else a  # 1-form, not 2-form
                if abs(a + 1.0) <= 1e-9:
                    raise DivergentEnd(
                        f"end {p}", -1.0, "g has a logarithmic branch point")
            return
        hopf = d.omega * d.gprime
    else:
        if which == "dual":
            return
        hopf = d.Q
    for p, a in _local_orders(hopf, spec.punctures):
        if round(a) <= -3:
            raise DivergentEnd(
                f"end {p}", float(round(a)),
                f"Hopf differential has order {round(a)} <= -3, so the end "
                "is an irregular point and the recovered map is essential")


def _unitarizer(spec: SurfaceSpec, rtol: float = 1e-12) -> np.ndarray:
    """Positive determinant-1 matrix c that conjugates every puncture
    monodromy into SU(2), in the least-squares sense.

    c = H^(1/2) where the Hermitian H solves M^* H M = H for all loop
    matrices M, found from the stacked real-linear system by SVD.  When
    the solution space has extra dimensions (a reducible monodromy group)
    the projection of the identity onto it is preferred, which picks a
    positive element; a rep that admits no positive solution gets its
    eigenvalues clipped and the resulting gauge is formal.
    """
    finite = [i for i, p in enumerate(spec.punctures) if not is_inf(p)]
    if not finite:
        return np.eye(2, dtype=complex)
    herm = [np.array([[1.0, 0.0], [0.0, 0.0]], complex),
            np.array([[0.0, 0.0], [0.0, 1.0]], complex),
            np.array([[0.0, 1.0], [1.0, 0.0]], complex),
            np.array([[0.0, 1.0j], [-1.0j, 0.0]], complex)]
    blocks = []
    for i in finite:
        M = monodromy(spec, i, rtol=rtol, atol=rtol)
        cols = []
        for B in herm:
            R = M.conj().T @ B @ M - B
            cols.append([R[0, 0].real, R[1, 1].real,
                         R[0, 1].real, R[0, 1].imag])
        blocks.append(np.array(cols).T)
    _, sing, vt = np.linalg.svd(np.vstack(blocks))
    null = [vt[j] for j in range(4) if sing[j] <= 1e-8 * max(sing[0], 1e-30)]
    if not null:
        null = [vt[-1]]
    # Projecting the identity (coordinates (1, 1, 0, 0)) onto the solution
    # span is only a selection heuristic: any positive solution closes the
    # same surface family and gives the same area, because the gauges then
    # differ by a Moebius map that cannot change branching orders.
    eye_coord = np.array([1.0, 1.0, 0.0, 0.0])
    h = sum(float(eye_coord @ v) * v for v in null)
    H = sum(x * B for x, B in zip(h, herm))
    if np.trace(H).real < 0 or not np.any(h):
        H = sum(x * B for x, B in zip(null[-1], herm))
        if np.trace(H).real < 0:
            H = -H
    w, V = np.linalg.eigh(H)
    w = np.maximum(w, 1e-12 * float(w[-1]))
    c = (V * np.sqrt(w)) @ V.conj().T
    return c / np.sqrt(np.linalg.det(c))


def _node_density(spec: SurfaceSpec, which: str, c: np.ndarray):
    """(mode name, density(transport) -> float) for transported modes.

    ``c`` is the unitarizing gauge from :func:`_unitarizer`; the g-side
    densities evaluate the map pushed through it.
    """
    d = spec.data
    if isinstance(d, SecondaryData):
        if which == "primal":
            c00, c01 = complex(c[0, 0]), complex(c[0, 1])
            c10, c11 = complex(c[1, 0]), complex(c[1, 1])

            def f(tr: LiftTransport) -> float:
                gp = tr.branch_value(d.gprime)
                g = tr.g
                return _fs_projective(abs(gp), c00 * g + c01, c10 * g + c11)
            return "data-secondary", f

        def f(tr: LiftTransport) -> float:
            gp = tr.branch_value(d.gprime)
            F, g = tr.F, tr.g
            return _fs_projective(abs(gp), F[0, 0] * g + F[0, 1],
                                  F[1, 0] * g + F[1, 1])
        return "derived-hyperbolic", f
    N, D = np.array(d.G.num), np.array(d.G.den)
    W = np.array(d.G.derivative().num)
    c00, c01 = complex(c[0, 0]), complex(c[0, 1])
    c10, c11 = complex(c[1, 0]), complex(c[1, 1])

    def f(tr: LiftTransport) -> float:
        # raw recovered map is beta/alpha; continuation multiplies the
        # frame on the right, so the unitary gauge composes Moebius-c on
        # the recovered map: numerator/denominator pair c (beta, alpha).
        z, F = tr.z, tr.F
        nv, dv = np.polyval(N, z), np.polyval(D, z)
        alpha = dv * F[0, 0] - nv * F[1, 0]
        beta = nv * F[1, 1] - dv * F[0, 1]
        return _fs_projective(abs(np.polyval(W, z)),
                              c00 * beta + c01 * alpha,
                              c10 * beta + c11 * alpha)
    return "derived-secondary", f


def _rational_density(G: RationalMap):
    """Vectorized Fubini-Study pullback density of a rational map."""
    N, D = np.array(G.num), np.array(G.den)
    W = np.array(G.derivative().num)

    def f(z):
        nv, dv = np.polyval(N, z), np.polyval(D, z)
        s = np.maximum(np.abs(nv), np.abs(dv))
        s = np.where(s > 0.0, s, 1.0)
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            q = np.abs(nv / s) ** 2 + np.abs(dv / s) ** 2
            v = np.abs(np.polyval(W, z)) / (s * s)
            rho = 4.0 * v * v / (q * q)
        return np.nan_to_num(rho, nan=0.0, posinf=0.0, neginf=0.0)
    return f


# ---------------------------------------------------------------------------
# quadrature: chart evaluation
# ---------------------------------------------------------------------------

def _eval_chart_data(chart, rings, R0, R1, level, density):
    """Vectorized chart integral for densities that need no transport."""
    _, nth = level
    th = 2.0 * np.pi * np.arange(nth) / nth
    wth = 2.0 * np.pi / nth
    sums, nodes = [], 0
    for r, wr in _chart_groups(chart, level):
        R, TH = np.meshgrid(r, th, indexing="ij")
        WR = np.broadcast_to(wr[:, None], R.shape)
        pos = R * np.exp(1j * TH)
        if chart.kind == "cap":
            z = 1.0 / pos
            extra = R ** -4.0
        else:
            z = chart.center + pos
            extra = 1.0
        w = WR * wth * extra * _partition_weight(chart, z, rings, R0, R1)
        sums.append(float(np.sum(w * density(z))))
        nodes += R.size
    return sums, nodes, 0, 0


def _clear_node(z: complex, avoid, clearance: float):
    """Shift a node that sits inside the transport clearance of a
    singular point to just outside it (the quadrature weight is kept)."""
    for p in avoid:
        dist = abs(z - p)
        if dist < 1.5 * clearance:
            away = (z - p) / dist if dist > 1e-300 else 1.0 + 0.0j
            return p + 1.5 * clearance * away, 1
    return z, 0


def _eval_chart_transport(spec, chart, rings, R0, R1, level, density,
                          avoid, clearance, rtol):
    """Chart integral with the frame transported through every node.

    Nodes are visited spoke by spoke, from the chart's outer edge inward
    (for the infinity chart that is outward in the plane), so consecutive
    transport legs are short; routing detours around singular points and
    nodes inside the clearance are shifted to its edge and counted.
    """
    _, nth = level
    wth = 2.0 * np.pi / nth
    groups = _chart_groups(chart, level)
    seq = []
    for gi, (r, wr) in enumerate(groups):
        seq += [(float(r[j]), float(wr[j]), gi) for j in range(len(r))]
    seq.sort(key=lambda t: -t[0])
    sums = [0.0] * len(groups)
    nodes = shifted = bad = 0
    tr = LiftTransport(spec, rtol=rtol, atol=rtol, clearance=clearance)
    for i in range(nth):
        ang = cmath.exp(2j * np.pi * i / nth)
        for r, wr, gi in seq:
            pos = r * ang
            if chart.kind == "cap":
                z, extra = 1.0 / pos, r ** -4.0
            else:
                z, extra = chart.center + pos, 1.0
            z, moved = _clear_node(z, avoid, clearance)
            wpart = float(_partition_weight(chart, z, rings, R0, R1))
            if wpart < 1e-12:
                continue
            shifted += moved
            path = plan_polyline(tr.z, z, avoid, 1.2 * clearance)
            tr.advance(path[1:])
            rho = density(tr)
            if not math.isfinite(rho):
                bad += 1
                rho = 0.0
            sums[gi] += wr * wth * wpart * extra * rho
            nodes += 1
    return sums, nodes, shifted, bad


# ---------------------------------------------------------------------------
# quadrature: driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TAResult:
    """One total-absolute-curvature quadrature.

    ``error_estimate`` combines the change under grid refinement with the
    epsilon-extrapolation residuals; ``shifted_nodes`` counts quadrature
    nodes moved to the edge of the transport clearance, and
    ``overflow_nodes`` counts nodes whose density over- or underflowed and
    was taken as 0.  ``mode`` records how the density was obtained:
    directly from the data, or from the transported frame.
    """

    value: float
    error_estimate: float
    mode: str
    which: str
    nodes: int
    shifted_nodes: int
    overflow_nodes: int = 0
    richardson_order: int = 2
    chart_values: tuple[float, ...] = ()
    chart_labels: tuple[str, ...] = ()

    @property
    def value_over_pi(self) -> float:
        return self.value / math.pi


_LEVELS = {
    "data-rational": [(40, 120), (64, 192)],
    "data-secondary": [(12, 40), (18, 60)],
    "derived-hyperbolic": [(10, 36), (16, 56)],
    "derived-secondary": [(10, 36), (16, 56)],
}


def ta_quadrature(spec: SurfaceSpec, which: str = "primal",
                  tol: float = 1e-3, jobs: int = 1,
                  levels: list[tuple[int, int]] | None = None,
                  transport_rtol: float = 1e-9) -> TAResult:
    """Total absolute curvature by quadrature of the area density.

    ``which`` selects the map whose image area is measured: "primal" for
    the secondary Gauss map g, "dual" for the hyperbolic Gauss map G.  The
    density is taken directly from the data when the requested map is part
    of it (g for secondary data, G for dual data) and recovered exactly
    from the transported frame otherwise.  ``tol`` is the accuracy target
    the default grids are sized for; the returned estimate is reported
    honestly either way.  ``levels`` overrides the two (radial, angular)
    grid sizes; ``jobs`` evaluates charts concurrently with a deterministic
    ordered reduction.  Raises :class:`DivergentEnd` at a non-integrable
    end.
    """
    if which not in ("primal", "dual"):
        raise ValueError(f"which must be 'primal' or 'dual', got {which!r}")
    data = spec.data
    if isinstance(data, SecondaryData) and not data.gprime.terms:
        return TAResult(0.0, 0.0, "degenerate", which, 0, 0)
    _check_integrable(spec, which)
    charts, rings, R0, R1 = _plan_charts(spec)
    if isinstance(data, DualData) and which == "dual":
        mode, vec, node_fn = "data-rational", _rational_density(data.G), None
    else:
        vec = None
        gauge = np.eye(2, dtype=complex)
        if which == "primal":
            gauge = _unitarizer(spec)
        mode, node_fn = _node_density(spec, which, gauge)
    tspec = spec
    if mode == "data-secondary":
        # The density needs only g, never the frame: transporting with
        # omega zeroed keeps F constant, so step control follows g' alone
        # and the frame's exponential scale at a wild end never enters.
        tspec = SurfaceSpec(
            spec.punctures,
            SecondaryData(data.gprime, cx.const(0.0), data.g_base),
            basepoint=spec.basepoint, genus=spec.genus, name=spec.name)
    if levels is None:
        levels = _LEVELS[mode]
    avoid = avoid_points(spec)
    min_eps = min(c.outer / 16.0 for c in charts if c.kind != "bulk")
    clearance = min(cx._default_clearance(avoid or [0.0, 1.0]),
                    min_eps / 8.0)

    def eval_chart(args):
        chart, level = args
        if vec is not None:
            sums, nodes, moved, bad = _eval_chart_data(
                chart, rings, R0, R1, level, vec)
        else:
            sums, nodes, moved, bad = _eval_chart_transport(
                tspec, chart, rings, R0, R1, level, node_fn, avoid,
                clearance, transport_rtol)
        value, resid = _assemble(chart, sums)
        return value, resid, nodes, moved, bad

    per_level = []
    for level in levels:
        tasks = [(c, level) for c in charts]
        if jobs and jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                recs = list(ex.map(eval_chart, tasks))
        else:
            recs = [eval_chart(t) for t in tasks]
        per_level.append(recs)
    last = per_level[-1]
    prev = per_level[-2] if len(per_level) > 1 else last
    value = math.fsum(r[0] for r in last)
    refine = math.fsum(abs(a[0] - b[0]) for a, b in zip(last, prev))
    resid = math.fsum(r[1] for r in last)
    return TAResult(
        value=value, error_estimate=refine + resid, mode=mode, which=which,
        nodes=sum(r[2] for lev in per_level for r in lev),
        shifted_nodes=sum(r[3] for r in last),
        overflow_nodes=sum(r[4] for r in last),
        chart_values=tuple(r[0] for r in last),
        chart_labels=tuple(c.label for c in charts))
