"""Circle-only monodromy trace at z=1 for o-2-2-20, vs indicial prediction."""
import cmath
import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from bryantlab import cexpr as cx
from bryantlab.holonomy import (LiftTransport, SecondaryData, SurfaceSpec,
                                loop_polyline)
from bryantlab.sl2c import INF


def cquad(f, xa, xb):
    re = quad(lambda x: f(x).real, xa, xb, limit=200)[0]
    im = quad(lambda x: f(x).imag, xa, xb, limit=200)[0]
    return re + 1j * im


mu = -0.75


def A(sv):
    return (mu + sv - 1.0) / (3.0 + mu - 3.0 * sv)


s = brentq(lambda sv: 2.0 * mu * A(sv) / (A(sv) - 1.0)
           + 2.0 * A(sv) / (A(sv) - sv) + 1.0, 1.02, 1.04)
q = cmath.sqrt(s)
a = cmath.sqrt(A(s))
C = -mu * (mu + 2.0) / (s - 1.0)
gp = cx.term(1.0, (1.0, mu), (-1.0, mu), (q, 1.0), (-q, 1.0),
             (0.0, 2.0), (a, -2.0), (-a, -2.0))
om = cx.term(C, (1.0, -mu - 2.0), (-1.0, -mu - 2.0), (0.0, -2.0),
             (a, 2.0), (-a, 2.0))
z0 = 0.5j
g_base = cquad(lambda x: cx.eval_principal(gp, x * z0) * z0, 1e-12, 1.0)
spec = SurfaceSpec((1.0, -1.0, 0.0, INF), SecondaryData(gp, om, g_base),
                   basepoint=z0)

# Transport from the basepoint to a circle start point, then measure the
# circle-only transport in that frame: M_circle = T_in^{-1} (full) where the
# transport object continues around the circle only.
r = 0.0056
start = 1.0 + r
tr = LiftTransport(spec)
tr.advance([0.5j, 0.5 + 0.5j, start + 0.5j, start])  # come in from above
T_in = tr.F.copy()
g_in = tr.g
nv = 96
circle = [1.0 + r * cmath.exp(2j * math.pi * k / nv) for k in range(1, nv + 1)]
tr.advance(circle)
T_out = tr.F.copy()
M_circ = np.linalg.inv(T_in) @ T_out
print("g at circle start:", g_in, " after loop:", tr.g)
print("pred g after loop: g(1) + e^{2 pi i (mu+1)}(g_in - g(1))")
print("circle monodromy:\n", np.array2string(M_circ, precision=5))
print("trace:", np.trace(M_circ), " det:", np.linalg.det(M_circ))
ev = np.linalg.eigvals(M_circ)
print("eigenvalues:", ev, " moduli:", np.abs(ev))
beta = math.sqrt(0.875)
pred = cmath.exp(math.pi * beta)
print("predicted |eigs| if exponents +-(i sqrt(0.875))/2:",
      pred, 1.0 / pred)
# what rotation multiplier does g pick up?
# g(1) = g_base + int_{z0}^{1} gp; estimate via incoming values: solve
# (g_after - g1) = lam (g_in - g1) for given lam = e^{2 pi i (mu+1)}:
lam = cmath.exp(2j * math.pi * (mu + 1.0))
g1 = (tr.g - lam * g_in) / (1.0 - lam)
print("implied g(1) =", g1, "  lam =", lam)
