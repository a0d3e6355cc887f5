"""Trace frame growth along the monodromy loop for o-2-2-20."""
import cmath

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


def F(sv):
    x = A(sv)
    return 2.0 * mu * x / (x - 1.0) + 2.0 * x / (x - sv) + 1.0


s = brentq(F, 1.02, 1.04)
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
loop = loop_polyline(spec, 0)
print(f"loop: {len(loop)} vertices, radius around 1:",
      abs(loop[len(loop) // 2] - 1.0))
tr = LiftTransport(spec)
prev_norm = 1.0
for k in range(1, len(loop)):
    tr.advance([loop[k]])
    n = float(np.abs(tr.F).max())
    if n > 5 * prev_norm or k % 12 == 0 or k == len(loop) - 1:
        print(f"k={k:3d} z={loop[k]:.4f} |F|max={n:.4e} g={tr.g:.4f} "
              f"det drift={tr.det_drift:.1e} steps={tr.steps}")
        prev_norm = max(n, prev_norm)
print("trace:", np.trace(tr.F))
