"""Constructors for the explicit surface families, with expected metadata.

Each ``make_*`` function validates its parameters, builds the integrable
:class:`~bryantlab.holonomy.SurfaceSpec`, and wraps it in a :class:`Family`
carrying what the data is expected to produce: the surface type row, the
conical divisor, total absolute curvature on both sides, the hyperbolic
Gauss map, and a closed-form lift where one is known.  The registry behind
:func:`list_families` drives the ``catalog`` and ``build`` command-line
subcommands; :func:`build_family` is the string-keyed entry point they use.

Families whose closing problem is not settled by the data itself carry a
``period_status`` flag: ``"solved"`` (residue and monodromy conditions close
the surface for every admissible parameter), ``"open"`` (a parameter must be
tuned, consumed by the period-search module), ``"obstructed"`` (the search
provably cannot succeed), or ``"unavailable"`` (no constructor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.special import roots_jacobi

from . import cexpr as cx
from .cexpr import BranchExpr
from .constraints import SurfaceType, enumerate_types
from .curvature import DivisorData, ta_gauss_bonnet
from .holonomy import (INF, DualData, RationalMap, SecondaryData,
                       SurfaceSpec)

__all__ = [
    "BadParameter", "Inadmissible", "ClosedFormLift", "Family",
    "FamilyDescriptor", "list_families", "build_family", "family_to_json",
    "make_horosphere", "make_enneper", "make_enneper_dual",
    "make_catenoid_cousin", "make_trinoid", "make_fournoid",
    "make_o0_2_2", "make_o_1_2_2", "make_o_1_2_2_a",
    "make_o_2_4", "make_o_2_5", "make_o_2_2_2_0",
    "o_2_2_2_0_parameters",
]

TWO_PI = 2.0 * math.pi


class BadParameter(ValueError):
    """Constructor arguments violate a family's parameter constraints."""


class Inadmissible(ValueError):
    """Parameters are well-formed but fail the family's existence
    conditions (an admissibility inequality, a degenerate zero pattern)."""


# ---------------------------------------------------------------------------
# closed-form lifts
# ---------------------------------------------------------------------------

LiftEntry = BranchExpr | Callable[[complex], complex]


@dataclass(frozen=True)
class ClosedFormLift:
    """Explicit holomorphic lift, given entrywise.

    Entries are either expressions (continued along paths, so they may be
    multivalued) or plain callables (which must be entire/single-valued).
    ``side`` records which transport the lift solves: ``"right"`` for
    ``dF = F A`` (secondary data) and ``"left"`` for ``dF = A F`` (dual
    data); :meth:`transport` then reproduces what the integrator returns
    for the same path.
    """

    entries: tuple[tuple[LiftEntry, LiftEntry], tuple[LiftEntry, LiftEntry]]
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', "
                             f"got {self.side!r}")

    def frame(self, z: complex) -> np.ndarray:
        """The frame at z on principal branches."""
        z = complex(z)
        out = np.empty((2, 2), dtype=complex)
        for i in range(2):
            for j in range(2):
                e = self.entries[i][j]
                out[i, j] = (cx.eval_principal(e, z)
                             if isinstance(e, BranchExpr) else e(z))
        return out

    def frame_along(self, path) -> np.ndarray:
        """The frame at the end of ``path``, each entry continued from the
        principal branch at ``path[0]``."""
        path = [complex(z) for z in path]
        out = np.empty((2, 2), dtype=complex)
        for i in range(2):
            for j in range(2):
                e = self.entries[i][j]
                if isinstance(e, BranchExpr):
                    val, _ = cx.eval_continued(e, path)
                else:
                    val = e(path[-1])
                out[i, j] = val
        return out

    def transport(self, path) -> np.ndarray:
        """The transport matrix the integrator computes for ``path``.

        Right systems: F(z0)^{-1} F(z1); left systems: F(z1) F(z0)^{-1}.
        Both are independent of the constant solution ambiguity.
        """
        f0 = self.frame(path[0])
        f1 = self.frame_along(path)
        if self.side == "right":
            return np.linalg.inv(f0) @ f1
        return f1 @ np.linalg.inv(f0)


# ---------------------------------------------------------------------------
# descriptors and built families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyDescriptor:
    """Registry row for one family: name, parameter schema, expectations.

    ``params`` lists (name, constraint) pairs in call order; ``constructor``
    is None for families whose construction needs machinery outside this
    package (they are listed for completeness only).
    """

    name: str
    params: tuple[tuple[str, str], ...]
    expected_type: SurfaceType | None
    ta_formula: str
    period_status: str
    constructor: Callable[..., "Family"] | None = None
    notes: str = ""


@dataclass(frozen=True)
class Family:
    """A constructed surface family member plus expected metadata.

    ``expected_ta``/``expected_dual_ta`` are the curvature values the
    divisor bookkeeping yields (``math.inf`` for a divergent side, None
    when no divisor in the admissible dictionary exists); ``divisor`` is
    None in the latter case.  ``gauss_map``/``dG`` carry the hyperbolic
    Gauss map when it is known in closed form but is not part of the spec
    data; ``schwarzian_G`` evaluates its Schwarzian derivative pointwise.
    """

    name: str
    spec: SurfaceSpec
    descriptor: FamilyDescriptor
    params: tuple[tuple[str, complex], ...]
    expected_ta: float | None
    expected_dual_ta: float | None
    divisor: DivisorData | None = None
    gauss_map: RationalMap | None = None
    dG: BranchExpr | None = None
    schwarzian_G: Callable[[complex], complex] | None = None
    lift: ClosedFormLift | None = None
    notes: str = ""

    @property
    def period_status(self) -> str:
        return self.descriptor.period_status


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

def _real(x, name: str) -> float:
    try:
        xc = complex(x)
    except (TypeError, ValueError):
        raise BadParameter(f"{name} must be a real number, got {x!r}")
    if abs(xc.imag) > 1e-12 * max(1.0, abs(xc.real)) or not math.isfinite(
            xc.real):
        raise BadParameter(f"{name} must be a finite real number, got {x!r}")
    return float(xc.real)


def _posint(x, name: str, minimum: int = 1) -> int:
    xf = _real(x, name)
    if abs(xf - round(xf)) > 1e-9 or round(xf) < minimum:
        raise BadParameter(f"{name} must be an integer >= {minimum}, "
                           f"got {x!r}")
    return int(round(xf))


def _nonzero_complex(x, name: str) -> complex:
    try:
        xc = complex(x)
    except (TypeError, ValueError):
        raise BadParameter(f"{name} must be a complex number, got {x!r}")
    if xc == 0 or not (math.isfinite(xc.real) and math.isfinite(xc.imag)):
        raise BadParameter(f"{name} must be finite and nonzero")
    return xc


def _term(coeff: complex, *factors: tuple[complex, float]) -> BranchExpr:
    """One product term, dropping zero exponents."""
    kept = tuple((p, e) for p, e in factors if abs(e) > 1e-14)
    return cx.term(coeff, *kept)


@lru_cache(maxsize=1)
def _type_rows() -> dict[tuple[int, tuple[int, ...]], SurfaceType]:
    return {(s.genus, s.end_orders): s for s in enumerate_types(4.0)}


def _type_row(genus: int, orders: tuple[int, ...]) -> SurfaceType:
    key = (genus, tuple(sorted(orders, reverse=True)))
    return _type_rows()[key]


def _segment_power_integral(h: Callable[[complex], complex],
                            z_from: complex, z_to: complex,
                            alpha: float, n: int = 160) -> complex:
    """``integral of (z - z_from)^alpha * h(z)`` along the segment.

    ``h`` must be analytic on the segment; the endpoint power uses the
    branch that is the limit of factor-wise principal values along the
    segment, which matches how expression evaluation continues it.  Uses
    a Gauss-Jacobi rule with the singular weight at ``z_from``.
    """
    x, w = roots_jacobi(n, 0.0, alpha)
    delta = complex(z_to) - complex(z_from)
    nodes = z_from + delta * (1.0 + x) / 2.0
    acc = sum(wi * h(zi) for wi, zi in zip(w, nodes))
    return (delta / 2.0) ** (alpha + 1.0) * acc


def _segment_integral(e: BranchExpr, z_from: complex, z_to: complex,
                      n: int = 200) -> complex:
    """Integral of an expression regular on the segment, by Gauss-Legendre
    on factor-wise principal values."""
    x, w = np.polynomial.legendre.leggauss(n)
    delta = complex(z_to) - complex(z_from)
    mid = (complex(z_from) + complex(z_to)) / 2.0
    nodes = mid + delta * x / 2.0
    acc = sum(wi * cx.eval_principal(e, zi) for wi, zi in zip(w, nodes))
    return acc * delta / 2.0


def _shifted_antiderivative(numer_w: np.poly1d, pole: int,
                            shift: complex) -> RationalMap:
    """Antiderivative of ``numer_w(w) / w^pole`` dw as a rational map in z,
    with ``w = z - shift`` and the constant of integration set to vanish at
    infinity.  Requires the residue coefficient to be absent (no log term).
    """
    asc = list(numer_w.coeffs[::-1])
    big = max(abs(c) for c in asc) or 1.0
    b_asc = []
    for j, c in enumerate(asc):
        k = j - (pole - 1)
        if k == 0:
            if abs(c) > 1e-10 * big:
                raise ValueError("antiderivative has a log term")
            b_asc.append(0.0)
        else:
            b_asc.append(c / k)
    b_poly = np.poly1d(np.array(b_asc[::-1], dtype=complex))
    wz = np.poly1d([1.0, -complex(shift)])
    num = b_poly(wz)
    den = wz ** (pole - 1)
    return RationalMap(tuple(np.atleast_1d(num.coeffs)),
                       tuple(np.atleast_1d(den.coeffs)))


def _pole_pair_antiderivative(rhs: np.poly1d, m: int,
                              a: complex) -> RationalMap:
    """Solve G' = rhs(z) / ((z-1)^{m+2} (z-a)^2) for rational
    G = A(z) / ((z-1)^{m+1} (z-a)) with deg A <= m, by linear least
    squares on the defining polynomial identity.  Raises ValueError when
    the identity is inconsistent (a genuine log term)."""
    lin1 = np.poly1d([1.0, -1.0])
    lina = np.poly1d([1.0, -complex(a)])
    mult = (m + 1) * lina + lin1
    ncols, nrows = m + 1, m + 2
    mat = np.zeros((nrows, ncols), dtype=complex)
    for k in range(ncols):
        basis = np.poly1d([1.0] + [0.0] * k)
        col = basis.deriv() * lin1 * lina - basis * mult
        cc = np.atleast_1d(col.coeffs)
        mat[nrows - len(cc):, k] = cc
    vec = np.zeros(nrows, dtype=complex)
    rc = np.atleast_1d(rhs.coeffs)
    vec[nrows - len(rc):] = rc
    sol, *_ = np.linalg.lstsq(mat, vec, rcond=None)
    resid = np.abs(mat @ sol - vec).max()
    if resid > 1e-8 * max(1.0, np.abs(vec).max()):
        raise ValueError(f"no rational antiderivative (residual {resid:.2e})")
    num = np.poly1d(sol[::-1])
    den = lin1 ** (m + 1) * lina
    return RationalMap(tuple(np.atleast_1d(num.coeffs)),
                       tuple(np.atleast_1d(den.coeffs)))


def _schwarzian_eval(dg: BranchExpr) -> Callable[[complex], complex]:
    s = cx.schwarzian_from_derivative(dg)
    return lambda z: cx.eval_principal(s, z)


def _ta_pair(div: DivisorData) -> tuple[float, float]:
    return (ta_gauss_bonnet(div, "primal"), ta_gauss_bonnet(div, "dual"))


# ---------------------------------------------------------------------------
# flat and one-ended surfaces
# ---------------------------------------------------------------------------

def make_horosphere(a: complex = 1.0) -> Family:
    """The totally umbilic surface: g = 0, omega = a dz on the plane.

    The lift is ``[[1, 0], [a z, 1]]``; both curvature integrands vanish
    identically.  ``a`` must be nonzero.
    """
    a = _nonzero_complex(a, "a")
    data = SecondaryData(gprime=cx.const(0.0), omega=cx.const(a),
                         g_base=0.0)
    spec = SurfaceSpec(punctures=(INF,), data=data, basepoint=0.0,
                       name="horosphere")
    div = DivisorData(ends=((0, 0.0, 0.0),))
    ta, dual = _ta_pair(div)
    lift = ClosedFormLift(entries=(
        (cx.const(1.0), cx.const(0.0)),
        (_term(a, (0.0, 1.0)), cx.const(1.0))))
    return Family(
        name="horosphere", spec=spec, descriptor=_REGISTRY["horosphere"],
        params=(("a", a),), expected_ta=ta, expected_dual_ta=dual,
        divisor=div, lift=lift,
        notes="flat and totally umbilic; the Hopf differential vanishes "
              "identically, so both curvature integrals are zero")


def make_enneper(a: complex = 1.0) -> Family:
    """One irregular end: g = z with constant-coefficient omega.

    The attached closed-form lift (cosh/sinh entries) satisfies the frame
    equation with ``omega = a^2 dz``; a common alternative printing of
    this data as ``omega = a dz`` does not reproduce the same frame, and
    the frame-consistent convention is the one built here (the lift
    comparison test is the deciding oracle).  Total absolute curvature
    4*pi; the dual side diverges.
    """
    a = _nonzero_complex(a, "a")
    data = SecondaryData(gprime=cx.const(1.0), omega=cx.const(a * a),
                         g_base=0.0)
    spec = SurfaceSpec(punctures=(INF,), data=data, basepoint=0.0,
                       name="enneper")
    div = DivisorData(ends=((-4, 0.0, math.inf),))
    ta, dual = _ta_pair(div)
    lift = ClosedFormLift(entries=(
        (lambda z: np.cosh(a * z),
         lambda z: np.sinh(a * z) / a - z * np.cosh(a * z)),
        (lambda z: a * np.sinh(a * z),
         lambda z: np.cosh(a * z) - a * z * np.sinh(a * z))))
    return Family(
        name="enneper", spec=spec, descriptor=_REGISTRY["enneper"],
        params=(("a", a),), expected_ta=ta, expected_dual_ta=dual,
        divisor=div, lift=lift,
        schwarzian_G=lambda z, _c=-2.0 * a * a: _c,
        notes="the closed-form frame forces omega = a^2 dz (not a dz); "
              "G = tanh(a z)/a, so S(g) - S(G) = 2 a^2 = 2 Q exactly")


def make_enneper_dual(a: complex = 1.0) -> Family:
    """The dual of the one-ended cosh-frame surface.

    Duality swaps the two Gauss maps and negates the Hopf differential, so
    this surface is the single-valued-data spec with G = z and
    ``Q = -a^2 dz^2``; its lift is the entrywise inverse of the cosh
    frame.  Its induced metric is complete with divergent total absolute
    curvature, while its dual curvature is 4*pi.
    """
    a = _nonzero_complex(a, "a")
    data = DualData(G=RationalMap((1.0, 0.0)), Q=cx.const(-a * a),
                    dG=cx.const(1.0))
    spec = SurfaceSpec(punctures=(INF,), data=data, basepoint=0.0,
                       name="enneper_dual")
    lift = ClosedFormLift(side="left", entries=(
        (lambda z: np.cosh(a * z) - a * z * np.sinh(a * z),
         lambda z: z * np.cosh(a * z) - np.sinh(a * z) / a),
        (lambda z: -a * np.sinh(a * z),
         lambda z: np.cosh(a * z))))
    return Family(
        name="enneper_dual", spec=spec,
        descriptor=_REGISTRY["enneper_dual"],
        params=(("a", a),), expected_ta=math.inf,
        expected_dual_ta=ta_gauss_bonnet(
            DivisorData(ends=((-4, 0.0, math.inf),)), "primal"),
        divisor=None, lift=lift,
        notes="recomputing -dF F^{-1} from the closed-form frame gives "
              "omega# = -a^2 cosh^2(a z) dz (a printing of this 1-form "
              "with cos^2 and no sign drops both corrections); the end "
              "is irregular with unbounded conical order, so no finite "
              "divisor row exists and the curvature integral diverges")


# ---------------------------------------------------------------------------
# two regular ends
# ---------------------------------------------------------------------------

def make_catenoid_cousin(l: float, delta: int = 1, b: float = 0.0) -> Family:
    """Rotational surfaces and their warped variants on C minus {0}.

    Data ``g = ((delta^2-l^2)/(4l)) z^l + b``, ``omega = z^{-l-1} dz``;
    hyperbolic Gauss map ``z^delta``.  Needs ``l > 0``, ``delta`` a
    positive integer, ``l != delta``; ``b > 0`` (the warped case) is only
    admissible for integer ``l``.  Total absolute curvature ``4 pi l``,
    dual ``4 pi delta``.  The closed-form lift has unit determinant.
    """
    l = _real(l, "l")
    delta = _posint(delta, "delta")
    b = _real(b, "b")
    if l <= 0:
        raise BadParameter(f"l must be positive, got {l}")
    if l == delta:
        raise BadParameter("l = delta is the branched-covering degenerate "
                           "case; the data requires l != delta")
    if b < 0:
        raise BadParameter(f"b must be nonnegative, got {b}")
    if b > 0 and abs(l - round(l)) > 1e-9:
        raise BadParameter("b > 0 requires integer l (otherwise g is not "
                           "equivariant under the deck rotation)")
    cg = (delta ** 2 - l ** 2) / (4.0 * l)
    data = SecondaryData(
        gprime=_term((delta ** 2 - l ** 2) / 4.0, (0.0, l - 1.0)),
        omega=_term(1.0, (0.0, -l - 1.0)),
        g_base=cg + b)
    spec = SurfaceSpec(punctures=(0.0, INF), data=data, basepoint=1.0,
                       name=f"catenoid_cousin(l={l},delta={delta},b={b})")
    div = DivisorData(ends=((-2, l - 1.0, delta - 1.0),
                            (-2, l - 1.0, delta - 1.0)))
    ta, dual = _ta_pair(div)
    s = complex(np.sqrt(complex(delta ** 2 - l ** 2) / delta))
    half_sum, half_dif = (l + delta) / 2.0, (delta - l) / 2.0
    e11 = _term(s / (l - delta), (0.0, half_dif))
    e12 = (_term(-b * s / (l - delta), (0.0, half_dif))
           + _term(s * (delta - l) / (4.0 * l), (0.0, half_sum)))
    e21 = _term(s / (l + delta), (0.0, -half_sum))
    e22 = (_term(-b * s / (l + delta), (0.0, -half_sum))
           + _term(-s * (l + delta) / (4.0 * l), (0.0, -half_dif)))
    lift = ClosedFormLift(entries=((e11, e12), (e21, e22)))
    dG = _term(float(delta), (0.0, delta - 1.0))
    gmap = RationalMap((1.0,) + (0.0,) * delta)
    return Family(
        name="catenoid_cousin", spec=spec,
        descriptor=_REGISTRY["catenoid_cousin"],
        params=(("l", l), ("delta", delta), ("b", b)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=gmap, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        lift=lift,
        notes="embedded for b = 0, delta = 1, 0 < l < 1; b > 0 breaks "
              "rotational symmetry to a dihedral group")


def make_o_2_4(mu: float, t: float = 1.0) -> Family:
    """Two ends of orders -2 and -4 with umbilics on the imaginary axis.

    ``dg = t z^mu (z^2-a^2)/(z^2-1)^2 dz`` with ``a^2 = (mu+1)/(mu-1)``,
    ``Q = theta (z^2-a^2)/z^2 dz^2``, ``theta = mu(mu+2)(mu-1)/(4(mu+1))``,
    for ``-1 < mu < 0`` and ``t > 0``.  The residues of dg at the double
    poles +-1 vanish by the choice of a, so g exists on the universal
    cover.  The divisor carries conical orders mu at 0 and -mu at the
    irregular end, so the total absolute curvature is 8*pi for every mu
    in range (naive bookkeeping with order mu at both ends would give
    4*pi*(mu+2), which quadrature rejects).
    """
    mu = _real(mu, "mu")
    t = _real(t, "t")
    if not -1.0 < mu < 0.0:
        raise BadParameter(f"mu must lie in (-1, 0), got {mu}")
    if t <= 0:
        raise BadParameter(f"t must be positive, got {t}")
    a = complex(np.sqrt(complex((mu + 1.0) / (mu - 1.0))))
    theta = mu * (mu + 2.0) * (mu - 1.0) / (4.0 * (mu + 1.0))
    gp = _term(t, (0.0, mu), (a, 1.0), (-a, 1.0), (1.0, -2.0), (-1.0, -2.0))
    om = _term(theta / t, (0.0, -mu - 2.0), (1.0, 2.0), (-1.0, 2.0))
    h = lambda z: t * (z * z - a * a) / (z * z - 1.0) ** 2
    g_base = _segment_power_integral(h, 0.0, 0.5, mu)
    data = SecondaryData(gprime=gp, omega=om, g_base=g_base)
    spec = SurfaceSpec(punctures=(0.0, INF), data=data, basepoint=0.5,
                       name=f"o_2_4(mu={mu})")
    div = DivisorData(ends=((-2, mu, 0.0), (-4, -mu, math.inf)),
                      umbilics=(1, 1))
    ta, dual = _ta_pair(div)
    return Family(
        name="o_2_4", spec=spec, descriptor=_REGISTRY["o_2_4"],
        params=(("mu", mu), ("t", t)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        notes="t scans the one-parameter reducible deformation; the end "
              "at infinity carries conical order -mu, not mu, which the "
              "area quadrature confirms (8*pi, independent of mu)")


def make_o_2_5(mu: float, t: float = 1.0) -> Family:
    """Two ends of orders -2 and -5 with three symmetric umbilics.

    ``dg = t z^mu (z^3-a^3)/(z^3-1)^2 dz`` with ``a^3 = (mu+1)/(mu-2)``,
    ``Q = theta (z^3-a^3)/z^2 dz^2``, ``theta = mu(mu^2-4)/(4(mu+1))``,
    for real ``mu`` outside {0, -1, 2, -2} and ``t > 0``.  The residues
    of dg at the three cube roots of unity vanish by the choice of a.
    On ``-1 < mu < 0`` the divisor carries orders mu and 1 - mu, giving
    total absolute curvature 12*pi (bookkeeping with the reflected
    exponent -mu-1 at infinity would give 8*pi and disagrees with
    quadrature); outside that strip the conical orders switch branch.
    """
    mu = _real(mu, "mu")
    t = _real(t, "t")
    if mu in (0.0, -1.0, 2.0, -2.0):
        raise BadParameter(f"mu = {mu} is excluded (degenerate data)")
    if t <= 0:
        raise BadParameter(f"t must be positive, got {t}")
    a = float(np.cbrt((mu + 1.0) / (mu - 2.0)))
    theta = mu * (mu * mu - 4.0) / (4.0 * (mu + 1.0))
    zeta = complex(np.exp(2j * math.pi / 3.0))
    cube_a = (a, a * zeta, a * zeta ** 2)
    cube_1 = (1.0, zeta, zeta ** 2)
    gp = _term(t, (0.0, mu), *[(p, 1.0) for p in cube_a],
               *[(p, -2.0) for p in cube_1])
    om = _term(theta / t, (0.0, -mu - 2.0), *[(p, 2.0) for p in cube_1])
    if mu > -1.0:
        h = lambda z: t * (z ** 3 - a ** 3) / (z ** 3 - 1.0) ** 2
        g_base = _segment_power_integral(h, 0.0, 0.5, mu)
    else:
        g_base = 1.0
    data = SecondaryData(gprime=gp, omega=om, g_base=g_base)
    spec = SurfaceSpec(punctures=(0.0, INF), data=data, basepoint=0.5,
                       name=f"o_2_5(mu={mu})")
    beta0 = mu if mu > -1.0 else -mu - 2.0
    beta_inf = 1.0 - mu if mu < 2.0 else mu - 3.0
    div = DivisorData(ends=((-2, beta0, 0.0), (-5, beta_inf, math.inf)),
                      umbilics=(1, 1, 1))
    ta, dual = _ta_pair(div)
    return Family(
        name="o_2_5", spec=spec, descriptor=_REGISTRY["o_2_5"],
        params=(("mu", mu), ("t", t)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        notes="t scans the reducible deformation; conical orders "
              f"({beta0:g}, {beta_inf:g}) at (0, inf)")


# ---------------------------------------------------------------------------
# three regular ends
# ---------------------------------------------------------------------------

def make_trinoid(mu1: float, mu2: float, mu3: float) -> Family:
    """Irreducible three-ended surfaces with conical orders mu_j.

    Needs every ``mu_j > -1``, the strict spherical-triangle inequality
    ``cos^2 B1 + cos^2 B2 + cos^2 B3 + 2 cos B1 cos B2 cos B3 < 1`` with
    ``B_j = pi (mu_j + 1)``, and a non-double umbilic pattern
    (:class:`Inadmissible` otherwise).  Single-valued data: Q has the
    coefficients ``c_j = -mu_j (mu_j + 2)/2`` at the ends 0, 1, infinity
    and G is the degree-2 map branched at the two zeros of Q.  Total
    absolute curvature ``2 pi (4 + mu1 + mu2 + mu3)``; dual 8*pi.
    """
    mus = (_real(mu1, "mu1"), _real(mu2, "mu2"), _real(mu3, "mu3"))
    for j, m in enumerate(mus, start=1):
        if m <= -1.0:
            raise BadParameter(f"mu{j} must exceed -1, got {m}")
    cb = [math.cos(math.pi * (m + 1.0)) for m in mus]
    lhs = (cb[0] ** 2 + cb[1] ** 2 + cb[2] ** 2
           + 2.0 * cb[0] * cb[1] * cb[2])
    if not lhs < 1.0 - 1e-12:
        raise Inadmissible(
            f"cos^2 B1 + cos^2 B2 + cos^2 B3 + 2 cos B1 cos B2 cos B3 = "
            f"{lhs:.6f} is not < 1; no irreducible cone metric exists")
    c1, c2, c3 = (-m * (m + 2.0) / 2.0 for m in mus)
    double = (c1 * c1 + c2 * c2 + c3 * c3
              - 2.0 * (c1 * c2 + c2 * c3 + c3 * c1))
    scale = max(abs(c1), abs(c2), abs(c3)) ** 2
    if abs(double) <= 1e-12 * max(1.0, scale):
        raise Inadmissible("the umbilic discriminant vanishes (double "
                           "zero of Q); the Gauss map degenerates")
    if abs(c3) <= 1e-12 * max(1.0, math.sqrt(scale)):
        raise Inadmissible("c3 = 0 degenerates the umbilic quadratic")
    q1, q2 = np.roots([c3, c2 - c1 - c3, c1])
    q1, q2 = complex(q1), complex(q2)
    s = q1 + q2
    Q = _term(c3 / 2.0, (q1, 1.0), (q2, 1.0), (0.0, -2.0), (1.0, -2.0))
    dG = _term(1.0, (q1, 1.0), (q2, 1.0), (s / 2.0, -2.0))
    G = RationalMap((4.0, -2.0 * s, (q1 - q2) ** 2), (4.0, -2.0 * s))
    data = DualData(G=G, Q=Q, dG=dG)
    spec = SurfaceSpec(punctures=(0.0, 1.0, INF), data=data,
                       basepoint=-0.5j,
                       name=f"trinoid{mus}")
    div = DivisorData(ends=tuple((-2, m, 0.0) for m in mus),
                      umbilics=(1, 1))
    ta, dual = _ta_pair(div)
    signs = "".join("+" if c > 0 else "-" for c in (c1, c2, c3))
    return Family(
        name="trinoid", spec=spec, descriptor=_REGISTRY["trinoid"],
        params=(("mu1", mus[0]), ("mu2", mus[1]), ("mu3", mus[2])),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=G, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        notes=f"signature ({signs[0]},{signs[1]},{signs[2]}) from the "
              "signs of the Q coefficients at the ends")


def make_o0_2_2(mu: float, m: int, t: float = 1.0) -> Family:
    """Three ends of orders (0, -2, -2): a one-parameter reducible family.

    ``g = t z^{mu+1} (mu z - (mu+2)) / ((mu+2) z - mu)`` and the
    hyperbolic Gauss map has the same shape with ``m`` in place of
    ``mu``; ``Q = (m(m+2) - mu(mu+2))/4 dz^2/z^2``.  Needs
    ``-1 < mu < 0``, ``m`` a positive integer, ``t > 0``.  The ends sit
    at (1, 0, infinity) with conical orders (2, mu, mu); total absolute
    curvature ``4 pi (mu + 2)``, dual ``4 pi (m + 2)``.
    """
    mu = _real(mu, "mu")
    m = _posint(m, "m")
    t = _real(t, "t")
    if not -1.0 < mu < 0.0:
        raise BadParameter(f"mu must lie in (-1, 0), got {mu}")
    if t <= 0:
        raise BadParameter(f"t must be positive, got {t}")
    zs = mu / (mu + 2.0)
    zG = m / (m + 2.0)
    gp = _term(t * mu * (mu + 1.0) / (mu + 2.0),
               (0.0, mu), (1.0, 2.0), (zs, -2.0))
    cq = (m * (m + 2.0) - mu * (mu + 2.0)) / 4.0
    Q = _term(cq, (0.0, -2.0))
    om = _term(cq * (mu + 2.0) / (t * mu * (mu + 1.0)),
               (0.0, -mu - 2.0), (1.0, -2.0), (zs, 2.0))
    z0 = 0.5
    g_base = (t * z0 ** (mu + 1.0)
              * (mu * z0 - (mu + 2.0)) / ((mu + 2.0) * z0 - mu))
    data = SecondaryData(gprime=gp, omega=om, g_base=g_base)
    spec = SurfaceSpec(punctures=(1.0, 0.0, INF), data=data, basepoint=z0,
                       name=f"o0_2_2(mu={mu},m={m})")
    div = DivisorData(ends=((0, 2.0, 2.0), (-2, mu, float(m)),
                            (-2, mu, float(m))))
    ta, dual = _ta_pair(div)
    num = np.polymul([float(m), -(m + 2.0)], [1.0] + [0.0] * (m + 1))
    G = RationalMap(tuple(num), (m + 2.0, -float(m)))
    dG = _term(m * (m + 1.0) / (m + 2.0), (0.0, float(m)), (1.0, 2.0),
               (zG, -2.0))
    return Family(
        name="o0_2_2", spec=spec, descriptor=_REGISTRY["o0_2_2"],
        params=(("mu", mu), ("m", m), ("t", t)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=G, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        notes="no umbilic points; the order-0 end at z = 1 carries "
              "conical order 2 on both sides")


def make_o_1_2_2(mu: float, m: int, t: float = 1.0) -> Family:
    """Three ends of orders (-1, -2, -2) with one umbilic at infinity.

    ``dg = t z (z-1)^mu (z-p)^{-mu-2} / (z-a)^2 dz`` and
    ``dG = z (z-p)^{m-2} / (z-1)^{m+2} dz`` with
    ``a = -(m+mu+2)/(m-mu-2)`` and ``p = (a mu + a - a^2)/(a mu + a - 1)``
    chosen so the residues of dg at a and of dG at 1 vanish.  Needs
    ``-1 < mu < 0``, integer ``m >= 2``, ``t > 0``.  Ends at (0, 1, p)
    with conical orders (1, mu, mu); total absolute curvature
    ``4 pi (mu + 2)``, dual ``4 pi (m + 1)``.
    """
    mu = _real(mu, "mu")
    m = _posint(m, "m", minimum=2)
    t = _real(t, "t")
    if not -1.0 < mu < 0.0:
        raise BadParameter(f"mu must lie in (-1, 0), got {mu}")
    if t <= 0:
        raise BadParameter(f"t must be positive, got {t}")
    a = -(m + mu + 2.0) / (m - mu - 2.0)
    p = (a * mu + a - a * a) / (a * mu + a - 1.0)
    gp = _term(t, (0.0, 1.0), (1.0, mu), (p, -mu - 2.0), (a, -2.0))
    theta = (4.0 * m * m * (m * (m + 2.0) - mu * (mu + 2.0))
             / ((m + mu) ** 2 * (2.0 - m + mu) ** 2))
    Q = _term(theta, (0.0, -1.0), (1.0, -2.0), (p, -2.0))
    om = _term(theta / t, (0.0, -2.0), (1.0, -mu - 2.0), (p, mu),
               (a, 2.0))
    h = lambda z: t * z * (z - p) ** (-mu - 2.0) / (z - a) ** 2
    g_base = _segment_power_integral(h, 1.0, 0.5, mu)
    data = SecondaryData(gprime=gp, omega=om, g_base=g_base)
    spec = SurfaceSpec(punctures=(0.0, 1.0, p), data=data, basepoint=0.5,
                       name=f"o_1_2_2(mu={mu},m={m})")
    div = DivisorData(ends=((-1, 1.0, 1.0), (-2, mu, float(m)),
                            (-2, mu, float(m - 2))), umbilics=(1,))
    ta, dual = _ta_pair(div)
    numer_w = np.poly1d([1.0, 1.0]) * np.poly1d([1.0, 1.0 - p]) ** (m - 2)
    G = _shifted_antiderivative(numer_w, m + 2, 1.0)
    dG = _term(1.0, (0.0, 1.0), (p, float(m - 2)), (1.0, -float(m + 2)))
    return Family(
        name="o_1_2_2", spec=spec, descriptor=_REGISTRY["o_1_2_2"],
        params=(("mu", mu), ("m", m), ("t", t)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=G, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        notes="g is normalized to vanish at the z = 1 end; the double "
              "pole of dg at a has vanishing residue by the choice of p")


def make_o_1_2_2_a(case: int, mu: float, m: int) -> Family:
    """Curvature-8*pi members of the (-1, -2, -2) class, two data shapes.

    Case 1 (``m >= 3``): ``dG = z^2 (z-p)^{m-3}/(z-1)^{m+2} dz``.
    Case 2 (``m >= 1``): ``dG = z^2 (z-p)^{m-1}/((z-1)^{m+2}(z-a)^2) dz``
    with ``a`` the root of the residue condition at its double pole (the
    minus branch of the displayed square root; the plus branch fails the
    residue check and can collide with p).  In both cases
    ``Q = theta dz^2 / (z (z-1)^2 (z-p)^2)`` with the case's p, theta.
    Ends at (0, 1, p) with conical orders (2, mu, -mu-1); total absolute
    curvature 8*pi, dual ``4 pi (m+1)`` / ``4 pi (m+2)``.
    """
    if case not in (1, 2):
        raise BadParameter(f"case must be 1 or 2, got {case!r}")
    mu = _real(mu, "mu")
    if not -1.0 < mu < 0.0:
        raise BadParameter(f"mu must lie in (-1, 0), got {mu}")
    if case == 1:
        m = _posint(m, "m", minimum=3)
        denom = (m - 2.0) ** 2 - mu * mu
        p = (m * (m + 2.0) - mu * (mu + 2.0)) / denom
        theta = ((mu - 3.0 * m + 2.0) ** 2
                 * (m * (m + 2.0) - mu * (mu + 2.0)) / denom ** 2)
        dG = _term(1.0, (0.0, 2.0), (p, float(m - 3)), (1.0, -float(m + 2)))
        numer_w = (np.poly1d([1.0, 1.0]) ** 2
                   * np.poly1d([1.0, 1.0 - p]) ** (m - 3))
        G = _shifted_antiderivative(numer_w, m + 2, 1.0)
        a = None
        mus3 = float(m - 3)
    else:
        m = _posint(m, "m", minimum=1)
        p = (mu + m + 2.0) / (mu + m)
        theta = (m - mu) * (mu + m + 2.0) / (m + mu) ** 2
        disc = (9.0 * (m - mu) ** 2 + 16.0 * m * (mu + 1.0)
                + 16.0 * mu * (m + 1.0))
        if disc < 0:
            raise BadParameter("the apex quadratic has no real root for "
                               f"(mu, m) = ({mu}, {m})")
        chosen = None
        for sign in (-1.0, 1.0):
            cand = (m - mu + sign * math.sqrt(disc)) / (2.0 * (mu + m))
            trial = _term(1.0, (0.0, 2.0), (p, float(m - 1)),
                          (1.0, -float(m + 2)), (cand, -2.0))
            if abs(cand - p) < 1e-9 or abs(cand - 1.0) < 1e-9:
                continue
            if abs(cx.residue(trial, cand)) < 1e-8:
                chosen = cand
                dG = trial
                break
        if chosen is None:
            raise BadParameter("no root of the apex quadratic makes the "
                               "dG residue vanish")
        a = chosen
        rhs = np.poly1d([1.0, 0.0, 0.0]) * np.poly1d([1.0, -p]) ** (m - 1)
        G = _pole_pair_antiderivative(rhs, m, a)
        mus3 = float(m - 1)
    Q = _term(theta, (0.0, -1.0), (1.0, -2.0), (p, -2.0))
    data = DualData(G=G, Q=Q, dG=dG)
    spec = SurfaceSpec(punctures=(0.0, 1.0, p), data=data, basepoint=0.5,
                       name=f"o_1_2_2_a(case={case},mu={mu},m={m})")
    div = DivisorData(ends=((-1, 2.0, 2.0), (-2, mu, float(m)),
                            (-2, -mu - 1.0, mus3)), umbilics=(1,))
    ta, dual = _ta_pair(div)
    params = [("case", case), ("mu", mu), ("m", m)]
    if a is not None:
        params.append(("a", a))
    return Family(
        name="o_1_2_2_a", spec=spec, descriptor=_REGISTRY["o_1_2_2_a"],
        params=tuple(params),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=G, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        notes="conical orders (2, mu, -mu-1) sum against the umbilic to "
              "the curvature-8*pi budget for every mu in range")


# ---------------------------------------------------------------------------
# four regular ends
# ---------------------------------------------------------------------------

def make_fournoid(mu: float, a: float, p: float) -> Family:
    """Four symmetric ends at +-a, +-1/a; the period parameter is open.

    ``G = (p z^3 - z)/(z^2 - p)`` and Q proportional to the numerator of
    dG over the end factors, normalized so every end has Laurent
    coefficient ``-mu (mu+2)/4``.  Needs ``a`` in (0, 1), ``mu > -1``,
    real ``p`` outside {0, 1} with ``p a^4 - (3 p^2 - 1) a^2 + p != 0``
    (ends unbranched).  Total absolute curvature ``4 pi (2 mu + 3)``,
    dual 12*pi; closing the surface requires tuning p (period search).
    """
    mu = _real(mu, "mu")
    a = _real(a, "a")
    p = _real(p, "p")
    if not 0.0 < a < 1.0:
        raise BadParameter(f"a must lie in (0, 1), got {a}")
    if mu <= -1.0:
        raise BadParameter(f"mu must exceed -1, got {mu}")
    if p in (0.0, 1.0):
        raise BadParameter("p = 0 and p = 1 degenerate the Gauss map")
    guard = p * a ** 4 - (3.0 * p * p - 1.0) * a * a + p
    if abs(guard) < 1e-12:
        raise BadParameter("p a^4 - (3 p^2 - 1) a^2 + p = 0: the Gauss "
                           "map branches at an end")
    umb = cx.roots_with_multiplicity(
        np.array([p, 0.0, -(3.0 * p * p - 1.0), 0.0, p], dtype=complex))
    const = (-mu * (mu + 2.0) * a * a * (a * a - a ** -2.0) ** 2 / guard)
    ends = (a, -a, 1.0 / a, -1.0 / a)
    Q = _term(const * p, *[(r, float(k)) for r, k in umb],
              *[(e, -2.0) for e in ends])
    sp = complex(np.sqrt(complex(p)))
    dG = _term(p, *[(r, float(k)) for r, k in umb],
               (sp, -2.0), (-sp, -2.0))
    G = RationalMap((p, 0.0, -1.0, 0.0), (1.0, 0.0, -p))
    data = DualData(G=G, Q=Q, dG=dG)
    spec = SurfaceSpec(punctures=ends, data=data, basepoint=0.5j,
                       name=f"fournoid(mu={mu},a={a},p={p})")
    div = DivisorData(ends=tuple((-2, mu, 0.0) for _ in ends),
                      umbilics=tuple(k for _, k in umb))
    ta, dual = _ta_pair(div)
    return Family(
        name="fournoid", spec=spec, descriptor=_REGISTRY["fournoid"],
        params=(("mu", mu), ("a", a), ("p", p)),
        expected_ta=ta, expected_dual_ta=dual, divisor=div,
        gauss_map=G, dG=dG, schwarzian_G=_schwarzian_eval(dG),
        notes="the Q normalization puts Laurent coefficient "
              "-mu(mu+2)/4 at every end; reflections across the real "
              "and imaginary axes and the unit circle generate the "
              "symmetry group used by the period search")


# ---------------------------------------------------------------------------
# the obstructed (0, -2, -2, -2) family
# ---------------------------------------------------------------------------

def o_2_2_2_0_parameters(mu: float) -> tuple[float, float]:
    """Solve the two apex relations simultaneously for ``q`` and ``a``.

    For ``-1 < mu < -1/2`` the residue relation and the displayed
    ``a^2(q^2)`` relation are one curve in the (q, a) plane; this returns
    the branch with real ``q > 1`` and real ``a``.  Raises
    :class:`Inadmissible` when no such intersection exists.
    """
    mu = _real(mu, "mu")

    def asq(s: float) -> float:
        return (s + mu - 1.0) / (3.0 + mu - 3.0 * s)

    def f(s: float) -> float:
        A = asq(s)
        return 2.0 * mu * A / (A - 1.0) + 2.0 * A / (A - s) + 1.0

    grid = 1.0 + 1e-4 + np.linspace(0.0, 3.0, 6001) ** 2
    vals = []
    for s in grid:
        try:
            v = f(float(s))
        except ZeroDivisionError:
            v = math.inf
        vals.append(v)
    for (s1, v1), (s2, v2) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if (math.isfinite(v1) and math.isfinite(v2)
                and abs(v1) < 1e3 and abs(v2) < 1e3 and v1 * v2 < 0):
            s = brentq(f, float(s1), float(s2), xtol=1e-14)
            A = asq(s)
            if A > 0:
                return math.sqrt(s), math.sqrt(A)
    raise Inadmissible(f"no simultaneous solution of the apex relations "
                       f"with real q > 1 for mu = {mu}")


def make_o_2_2_2_0(mu: float, q: float | None = None) -> Family:
    """Data of class (0, -2, -2, -2) whose closing problem is obstructed.

    ``dg = (z^2-1)^mu (z^2-q^2) z^2 / (z^2-a^2)^2 dz`` on the sphere
    minus {1, -1, infinity, 0} with ``Q = -mu(mu+2)/(q^2-1) *
    (z^2-q^2)/(z^2-1)^2 dz^2``; ``a`` must satisfy both a residue
    relation at its double poles and a separate quadratic relation in
    ``(mu, q)``.  The two relations only intersect on a curve: passing
    ``q = None`` solves for the consistent value, while an explicit ``q``
    is checked and rejected with a report when the relations conflict.

    No parameter choice closes the surface: at the order -2 ends the
    squared difference of local frame exponents is ``2 (mu+1)^2 - 1 < 0``
    on the whole range ``-1 < mu < -1/2``, so the branch-twisted end
    monodromy is loxodromic and can never be conjugated into the unitary
    group.  The family is kept as integrable data; its formal divisor
    bookkeeping (curvature 8*pi) has no quadrature counterpart.
    """
    mu = _real(mu, "mu")
    if not -1.0 < mu < -0.5:
        raise BadParameter(f"mu must lie in (-1, -1/2), got {mu}")
    if q is None:
        q, a = o_2_2_2_0_parameters(mu)
    else:
        q = _real(q, "q")
        if q in (0.0, 1.0, -1.0):
            raise BadParameter("q must avoid 0 and +-1")
        den = 3.0 + mu - 3.0 * q * q
        if abs(den) < 1e-12:
            raise BadParameter("q^2 = (3 + mu)/3 degenerates the a^2 "
                               "relation")
        asq = (q * q + mu - 1.0) / den
        if asq <= 0:
            raise BadParameter(
                f"a^2 = {asq:.6g} <= 0: the displayed relation forces an "
                "imaginary apex for this q; no admissible data")
        a = math.sqrt(asq)
        res = (2.0 * mu * a / (a * a - 1.0)
               + 2.0 * a / (a * a - q * q) + 1.0 / a)
        if abs(res) > 1e-9:
            try:
                qc, _ = o_2_2_2_0_parameters(mu)
                hint = f"; the consistent value near this branch is q = {qc!r}"
            except Inadmissible:
                hint = ""
            raise BadParameter(
                "the residue relation and the a^2 relation conflict: "
                f"residue expression = {res:.6g} at (mu, q) = ({mu}, {q})"
                + hint)
    if abs(a) < 1e-9 or abs(a - 1.0) < 1e-9 or abs(a - q) < 1e-9:
        raise BadParameter("the apex collides with an end or umbilic")
    c = -mu * (mu + 2.0) / (q * q - 1.0)
    gp = _term(1.0, (1.0, mu), (-1.0, mu), (q, 1.0), (-q, 1.0),
               (0.0, 2.0), (a, -2.0), (-a, -2.0))
    Q = _term(c, (q, 1.0), (-q, 1.0), (1.0, -2.0), (-1.0, -2.0))
    om = _term(c, (1.0, -mu - 2.0), (-1.0, -mu - 2.0), (0.0, -2.0),
               (a, 2.0), (-a, 2.0))
    g_base = _segment_integral(gp, 0.0, 0.5j)
    data = SecondaryData(gprime=gp, omega=om, g_base=g_base)
    spec = SurfaceSpec(punctures=(1.0, -1.0, INF, 0.0), data=data,
                       basepoint=0.5j, name=f"o_2_2_2_0(mu={mu})")
    disc = 2.0 * (mu + 1.0) ** 2 - 1.0
    return Family(
        name="o_2_2_2_0", spec=spec, descriptor=_REGISTRY["o_2_2_2_0"],
        params=(("mu", mu), ("q", q), ("a", a)),
        expected_ta=8.0 * math.pi, expected_dual_ta=None, divisor=None,
        notes="formal bookkeeping value 8*pi only: the local exponent "
              f"discriminant at the order -2 ends is {disc:.4f} < 0, so "
              "the twisted end monodromy has real eigenvalues "
              "exp(+-pi sqrt(1 - 2 (mu+1)^2)) and no closed surface "
              "exists; no admissible divisor row matches complex "
              "exponents")


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _descriptor(name, params, type_key, ta_formula, period_status,
                constructor, notes=""):
    expected = _type_row(*type_key) if type_key is not None else None
    return FamilyDescriptor(
        name=name, params=tuple(params), expected_type=expected,
        ta_formula=ta_formula, period_status=period_status,
        constructor=constructor, notes=notes)


_REGISTRY: dict[str, FamilyDescriptor] = {}


def _register(desc: FamilyDescriptor) -> None:
    _REGISTRY[desc.name] = desc


_register(_descriptor(
    "horosphere", [("a", "nonzero complex, default 1")],
    (0, (0,)), "0", "solved", make_horosphere))
_register(_descriptor(
    "enneper", [("a", "nonzero complex, default 1")],
    (0, (-4,)), "4*pi", "solved", make_enneper))
_register(_descriptor(
    "enneper_dual", [("a", "nonzero complex, default 1")],
    (0, (-4,)), "inf", "solved", make_enneper_dual,
    notes="dual of the enneper family; divergent curvature integral"))
_register(_descriptor(
    "catenoid_cousin",
    [("l", "real > 0, l != delta"),
     ("delta", "positive integer, default 1"),
     ("b", "real >= 0, default 0; b > 0 needs integer l")],
    (0, (-2, -2)), "4*pi*l", "solved", make_catenoid_cousin))
_register(_descriptor(
    "trinoid",
    [("mu1", "real > -1"), ("mu2", "real > -1"), ("mu3", "real > -1")],
    (0, (-2, -2, -2)), "2*pi*(4 + mu1 + mu2 + mu3)", "solved",
    make_trinoid,
    notes="admissibility: strict spherical-triangle inequality and a "
          "non-double umbilic pattern"))
_register(_descriptor(
    "fournoid",
    [("mu", "real > -1"), ("a", "real in (0, 1)"),
     ("p", "real, not 0 or 1, ends unbranched")],
    (0, (-2, -2, -2, -2)), "4*pi*(2*mu + 3)", "open", make_fournoid,
    notes="p is the period parameter the closing search tunes"))
_register(_descriptor(
    "o0_2_2",
    [("mu", "real in (-1, 0)"), ("m", "positive integer"),
     ("t", "real > 0, default 1")],
    (0, (0, -2, -2)), "4*pi*(mu + 2)", "solved", make_o0_2_2))
_register(_descriptor(
    "o_1_2_2",
    [("mu", "real in (-1, 0)"), ("m", "integer >= 2"),
     ("t", "real > 0, default 1")],
    (0, (-1, -2, -2)), "4*pi*(mu + 2)", "solved", make_o_1_2_2))
_register(_descriptor(
    "o_1_2_2_a",
    [("case", "1 or 2"), ("mu", "real in (-1, 0)"),
     ("m", "integer >= 3 (case 1) or >= 1 (case 2)")],
    (0, (-1, -2, -2)), "8*pi", "solved", make_o_1_2_2_a))
_register(_descriptor(
    "o_2_4", [("mu", "real in (-1, 0)"), ("t", "real > 0, default 1")],
    (0, (-2, -4)), "8*pi", "solved", make_o_2_4,
    notes="a displayed bookkeeping value 4*pi*(mu+2) uses the wrong "
          "conical order at the irregular end; quadrature gives 8*pi"))
_register(_descriptor(
    "o_2_5",
    [("mu", "real, not in {0, -1, 2, -2}"), ("t", "real > 0, default 1")],
    (0, (-2, -5)), "12*pi on (-1, 0)", "open", make_o_2_5,
    notes="periods close on the displayed range; the flag stays open "
          "for general mu"))
_register(_descriptor(
    "o_2_2_2_0",
    [("mu", "real in (-1, -1/2)"),
     ("q", "real, consistent with the apex relations; default solved")],
    (0, (0, -2, -2, -2)), "8*pi (formal)", "obstructed",
    make_o_2_2_2_0,
    notes="integrable data only; the twisted end monodromy is "
          "loxodromic for every parameter, so no closed surface exists"))
_register(_descriptor(
    "genus1_2_2", [], (1, (-2, -2)),
    "greater than 8*pi (observed numerically)", "unavailable", None,
    notes="genus-one domain: needs elliptic-function data outside the "
          "punctured-sphere integrator"))
_register(_descriptor(
    "genus1_2_2_2", [], (1, (-2, -2, -2)),
    "close to 12*pi (deformation bound)", "unavailable", None,
    notes="genus-one domain: needs elliptic-function data outside the "
          "punctured-sphere integrator"))


def list_families() -> list[FamilyDescriptor]:
    """All registered family descriptors, constructible or not."""
    return list(_REGISTRY.values())


def build_family(name: str, **params) -> Family:
    """Construct a family member by registry name and keyword parameters.

    Raises :class:`BadParameter` for unknown names, families without a
    constructor, or unknown parameter keys; parameter-value errors
    propagate from the family constructor.
    """
    desc = _REGISTRY.get(name)
    if desc is None:
        known = ", ".join(sorted(_REGISTRY))
        raise BadParameter(f"unknown family {name!r}; known: {known}")
    if desc.constructor is None:
        raise BadParameter(f"family {name!r} has no constructor "
                           f"({desc.notes})")
    allowed = {k for k, _ in desc.params}
    unknown = set(params) - allowed
    if unknown:
        raise BadParameter(f"unknown parameter(s) {sorted(unknown)} for "
                           f"{name!r}; expected subset of {sorted(allowed)}")
    return desc.constructor(**params)


# ---------------------------------------------------------------------------
# JSON output
# ---------------------------------------------------------------------------

def _json_complex(z) -> object:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return "inf"
    return [z.real, z.imag]


def _json_float(x) -> object:
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf"
    return x


def family_to_json(fam: Family) -> dict:
    """JSON-serializable description of a built family (spec + metadata)."""
    spec = fam.spec
    d = spec.data
    if isinstance(d, SecondaryData):
        mode = "secondary"
        data = {
            "gprime": cx.expr_to_json(d.gprime),
            "omega": cx.expr_to_json(d.omega),
            "g_base": _json_complex(d.g_base),
        }
    else:
        mode = "dual"
        data = {
            "G": {"num": [_json_complex(c) for c in d.G.num],
                  "den": [_json_complex(c) for c in d.G.den]},
            "Q": cx.expr_to_json(d.Q),
            "dG": cx.expr_to_json(d.dG) if d.dG is not None else None,
        }
    div = None
    if fam.divisor is not None:
        div = {
            "ends": [[dd, mu, _json_float(ms)]
                     for dd, mu, ms in fam.divisor.ends],
            "umbilics": list(fam.divisor.umbilics),
            "genus": fam.divisor.genus,
        }
    exp_type = fam.descriptor.expected_type
    return {
        "family": fam.name,
        "name": spec.name,
        "params": {k: _json_complex(v) if isinstance(v, complex)
                   else v for k, v in fam.params},
        "punctures": [_json_complex(p) for p in spec.punctures],
        "basepoint": _json_complex(spec.basepoint),
        "genus": spec.genus,
        "mode": mode,
        "data": data,
        "metadata": {
            "type": exp_type.label if exp_type is not None else None,
            "expected_ta": _json_float(fam.expected_ta),
            "expected_dual_ta": _json_float(fam.expected_dual_ta),
            "ta_formula": fam.descriptor.ta_formula,
            "period_status": fam.period_status,
            "divisor": div,
            "notes": fam.notes,
        },
    }
