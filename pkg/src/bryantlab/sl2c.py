"""Linear algebra over SL(2,C) and the Hermitian model of hyperbolic 3-space.

Conventions (all arrays are numpy):

* ``Mat2C``  — a (2, 2) complex ndarray.
* ``H3Point`` — a positive-definite Hermitian (2, 2) ndarray of determinant 1;
  the model realizes H^3 as {a a* : a in SL(2,C)} inside the Hermitian
  matrices, with Minkowski coordinates
  f = [[x0 + x3, x1 + i x2], [x1 - i x2, x0 - x3]].
* ``BallPoint`` — a length-3 real ndarray with the Poincare unit-ball
  coordinates (x1, x2, x3) / (1 + x0).

The unitarizability routine measures how far a finite set of SL(2,C) matrices
is from being simultaneously conjugate into SU(2): it looks for a positive
Hermitian H with rho* H rho = H for every generator rho, which is a real
linear problem; the smallest singular value of the stacked system is the
reported defect and H^(1/2) conjugates the generators to (near-)unitary form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NotUnimodular", "INF",
    "star", "moebius_apply", "herm_point", "minkowski_coords", "to_ball",
    "from_ball", "su2_defect", "unitarizability", "UnitarizationResult",
    "random_su2",
]

#: sentinel for the point at infinity of the Riemann sphere
INF = complex(math.inf, 0.0)


class NotUnimodular(Exception):
    """A matrix expected in SL(2,C) has determinant away from 1."""


def star(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m, dtype=complex).conj().T


def moebius_apply(a, z: complex) -> complex:
    """Fractional-linear action of a on the Riemann sphere, INF included."""
    a = np.asarray(a, dtype=complex)
    if z == INF or (isinstance(z, complex) and math.isinf(abs(z))):
        return a[0, 0] / a[1, 0] if a[1, 0] != 0 else INF
    den = a[1, 0] * z + a[1, 1]
    if den == 0:
        return INF
    return (a[0, 0] * z + a[0, 1]) / den


def herm_point(F, tol: float = 1e-9) -> np.ndarray:
    """The H^3 point F F* of a frame F in SL(2,C).

    Raises :class:`NotUnimodular` when |det F - 1| > tol.
    """
    F = np.asarray(F, dtype=complex)
    d = np.linalg.det(F)
    if abs(d - 1.0) > tol:
        raise NotUnimodular(f"|det F - 1| = {abs(d - 1.0):.3e} > {tol:.1e}")
    return F @ star(F)


def minkowski_coords(f) -> tuple[float, float, float, float]:
    """Minkowski coordinates (x0, x1, x2, x3) of a Hermitian matrix point."""
    f = np.asarray(f, dtype=complex)
    x0 = 0.5 * (f[0, 0] + f[1, 1]).real
    x3 = 0.5 * (f[0, 0] - f[1, 1]).real
    x1 = f[0, 1].real
    x2 = f[0, 1].imag
    return x0, x1, x2, x3


def to_ball(f) -> np.ndarray:
    """Poincare unit-ball coordinates (x1, x2, x3)/(1 + x0) of an H^3 point."""
    x0, x1, x2, x3 = minkowski_coords(f)
    return np.array([x1, x2, x3]) / (1.0 + x0)


def from_ball(y) -> np.ndarray:
    """Hermitian H^3 point from Poincare ball coordinates (|y| < 1)."""
    y = np.asarray(y, dtype=float)
    s = 1.0 - float(y @ y)
    if s <= 0:
        raise ValueError("ball point must have |y| < 1")
    x0 = (1.0 + float(y @ y)) / s
    x1, x2, x3 = 2.0 * y / s
    return np.array([[x0 + x3, x1 + 1j * x2], [x1 - 1j * x2, x0 - x3]],
                    dtype=complex)


def su2_defect(m) -> float:
    """Distance of m from SU(2): max of ||m m* - I||_F and |det m - 1|."""
    m = np.asarray(m, dtype=complex)
    return max(float(np.linalg.norm(m @ star(m) - np.eye(2))),
               abs(np.linalg.det(m) - 1.0))


def random_su2(rng) -> np.ndarray:
    """Haar-ish random SU(2) element from a numpy Generator."""
    v = rng.normal(size=4)
    a, b, c, d = v / np.linalg.norm(v)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


# ---------------------------------------------------------------------------
# unitarizability
# ---------------------------------------------------------------------------

# orthonormal in the Frobenius metric, so SU(2) conjugation of the generators
# acts orthogonally on coordinates and the defect is exactly invariant
_SQ2 = math.sqrt(0.5)
_HERM_BASIS = (
    np.array([[1, 0], [0, 0]], dtype=complex),
    np.array([[0, 0], [0, 1]], dtype=complex),
    np.array([[0, _SQ2], [_SQ2, 0]], dtype=complex),
    np.array([[0, 1j * _SQ2], [-1j * _SQ2, 0]], dtype=complex),
)


def _herm_from_vec(x) -> np.ndarray:
    return sum(xi * b for xi, b in zip(x, _HERM_BASIS))


def _vec_from_herm(h) -> np.ndarray:
    return np.array([h[0, 0].real, h[1, 1].real,
                     h[0, 1].real / _SQ2, h[0, 1].imag / _SQ2])


@dataclass
class UnitarizationResult:
    """Outcome of the common-invariant-Hermitian-form search.

    Attributes
    ----------
    defect : float
        Smallest singular value of the stacked invariance system; zero iff an
        invariant Hermitian form exists (after generator-norm scaling).
    hermitian : ndarray
        The candidate form H, unit Frobenius norm, positive trace.
    conjugator : ndarray or None
        b = H^(1/2) scaled to det 1, so that b rho b^{-1} is (near) SU(2); None
        when no positive-definite candidate could be produced.
    clipped : bool
        True when H needed eigenvalue clipping to become positive definite and
        the clip changed it by more than the tolerance (a failure flag).
    clip_change : float
        Relative size of the eigenvalue clip that was applied.
    """

    defect: float
    hermitian: np.ndarray
    conjugator: np.ndarray | None
    clipped: bool
    clip_change: float


def unitarizability(generators, tol: float = 1e-8) -> UnitarizationResult:
    """Measure simultaneous conjugacy of SL(2,C) matrices into SU(2).

    Builds the real-linear system rho_j* H rho_j - H = 0 over Hermitian H
    (4 real unknowns), with each generator block scaled by max(1, ||rho||_F^2)
    so the defect is insensitive to matrix size.  The defect is exactly
    invariant under simultaneous conjugation of the generators by SU(2)
    elements and under sign flips rho -> -rho.

    When the smallest singular value is (nearly) degenerate the positive
    definite representative is searched inside the near-null space; a
    representation with H unique up to scale gets the minimal-norm (unit
    Frobenius) solution.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    rows = []
    for rho in gens:
        scale = max(1.0, float(np.linalg.norm(rho)) ** 2)
        block = np.empty((4, 4))
        for j, basis in enumerate(_HERM_BASIS):
            image = star(rho) @ basis @ rho - basis
            block[:, j] = _vec_from_herm(image) / scale
        rows.append(block)
    system = np.vstack(rows)
    _, sing, vt = np.linalg.svd(system)
    defect = float(sing[-1])

    # near-null space: singular directions not clearly above the smallest
    window = max(tol, 10.0 * defect)
    null = [vt[i] for i in range(3, -1, -1) if sing[i] <= window]

    def score(vec):
        h = _herm_from_vec(vec)
        if np.trace(h).real < 0:
            h = -h
        w = np.linalg.eigvalsh(h)
        return w[0] / max(abs(w).max(), 1e-300), h

    if len(null) == 1:
        _, best = score(null[0])
    else:
        best, best_score = None, -np.inf
        grid = np.linspace(0.0, np.pi, 64, endpoint=False)
        pairs = [(i, j) for i in range(len(null)) for j in range(i + 1, len(null))]
        candidates = [v for v in null]
        for i, j in pairs:
            for th in grid:
                candidates.append(np.cos(th) * null[i] + np.sin(th) * null[j])
        for v in candidates:
            n = np.linalg.norm(v)
            if n == 0:
                continue
            s, h = score(v / n)
            if s > best_score:
                best_score, best = s, h
    h = best / np.linalg.norm(best)

    w, u = np.linalg.eigh(h)
    clip_change = 0.0
    clipped = False
    if w[0] <= 0:
        wc = np.maximum(w, 1e-8 * w[-1])
        clip_change = float(np.abs(wc - w).max() / max(w[-1], 1e-300))
        clipped = clip_change > tol
        w = wc
    if w[-1] <= 0:
        return UnitarizationResult(defect, h, None, True, 1.0)
    b = u @ np.diag(np.sqrt(w)) @ star(u)
    b = b / np.sqrt(np.linalg.det(b).real)
    return UnitarizationResult(defect, h, b, clipped, clip_change)
