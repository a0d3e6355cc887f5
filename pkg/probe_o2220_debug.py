"""Debug the o-2-2-20 monodromy and unitarizer."""
import cmath

import numpy as np
from scipy.integrate import quad

from bryantlab import cexpr as cx
from bryantlab import sl2c
from bryantlab.curvature import _unitarizer, ta_quadrature
from bryantlab.holonomy import (SecondaryData, SurfaceSpec, monodromy,
                                monodromy_rep)
from bryantlab.sl2c import INF


def cquad(f, xa, xb):
    re = quad(lambda x: f(x).real, xa, xb, limit=200)[0]
    im = quad(lambda x: f(x).imag, xa, xb, limit=200)[0]
    return re + 1j * im


mu = -0.75
s, a2 = 1.027973387, 0.865822
# recompute precisely
from scipy.optimize import brentq


def A(sv):
    return (mu + sv - 1.0) / (3.0 + mu - 3.0 * sv)


def F(sv):
    x = A(sv)
    return 2.0 * mu * x / (x - 1.0) + 2.0 * x / (x - sv) + 1.0


s = brentq(F, 1.02, 1.04)
a2 = A(s)
q = cmath.sqrt(s)
a = cmath.sqrt(a2)
print(f"s={s!r} a2={a2!r} q={q} a={a}")
C = -mu * (mu + 2.0) / (s - 1.0)
gp = cx.term(1.0, (1.0, mu), (-1.0, mu), (q, 1.0), (-q, 1.0),
             (0.0, 2.0), (a, -2.0), (-a, -2.0))
om = cx.term(C, (1.0, -mu - 2.0), (-1.0, -mu - 2.0), (0.0, -2.0),
             (a, 2.0), (-a, 2.0))
z0 = 0.5j
g_base = cquad(lambda x: cx.eval_principal(gp, x * z0) * z0, 1e-12, 1.0)
print("g_base", g_base)
spec = SurfaceSpec((1.0, -1.0, 0.0, INF), SecondaryData(gp, om, g_base),
                   basepoint=z0)
Ms = [monodromy(spec, i) for i in range(3)]
for i, M in enumerate(Ms):
    print(f"M{i} around {spec.punctures[i]}:")
    print(np.array2string(M, precision=5, suppress_small=True))
    print("  su2 defect:", sl2c.su2_defect(M),
          " tr:", np.trace(M), " det:", np.linalg.det(M))
res = sl2c.unitarizability(Ms)
print("unitarizability:", res)
c = _unitarizer(spec)
print("gauge c:\n", c)
