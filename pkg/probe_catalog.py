"""Probe true TA values and parameter consistency for the remark families."""
import cmath
import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from bryantlab import cexpr as cx
from bryantlab.curvature import ta_quadrature
from bryantlab.holonomy import SecondaryData, SurfaceSpec
from bryantlab.sl2c import INF


def cquad(f, xa, xb):
    re = quad(lambda x: f(x).real, xa, xb, limit=200)[0]
    im = quad(lambda x: f(x).imag, xa, xb, limit=200)[0]
    return re + 1j * im


def probe_o24(mu, t=1.0):
    a2 = (mu + 1.0) / (mu - 1.0)
    a = cmath.sqrt(a2)
    th = mu * (mu + 2.0) * (mu - 1.0) / (4.0 * (mu + 1.0))
    gp = cx.term(t, (0.0, mu), (a, 1.0), (-a, 1.0), (1.0, -2.0), (-1.0, -2.0))
    om = cx.term(th / t, (0.0, -mu - 2.0), (1.0, 2.0), (-1.0, 2.0))
    # residues at the apexes +-1
    r1 = cx.residue(gp, 1.0)
    r2 = cx.residue(gp, -1.0)
    z0 = 0.5
    g_base = cquad(lambda x: 2.0 * x ** (2 * mu + 1) * (x ** 4 - a2)
                   / (x ** 4 - 1.0) ** 2, 0.0, math.sqrt(z0)) * t
    spec = SurfaceSpec((0.0, INF), SecondaryData(gp, om, g_base), basepoint=z0)
    r = ta_quadrature(spec, "primal")
    print(f"o-2-4 mu={mu}: res={abs(r1):.2e},{abs(r2):.2e} "
          f"TA/pi={r.value_over_pi:.6f} err={r.error_estimate:.2e} "
          f"printed={2*(mu+2):.4f}pi mine=8pi")


def probe_o25(mu, t=1.0):
    a3 = (mu + 1.0) / (mu - 2.0)
    a = -abs(a3) ** (1.0 / 3.0) if a3 < 0 else a3 ** (1.0 / 3.0)
    w = cmath.exp(2j * cmath.pi / 3.0)
    th = mu * (mu ** 2 - 4.0) / (4.0 * (mu + 1.0))
    gp = cx.term(t, (0.0, mu), (a, 1.0), (a * w, 1.0), (a * w ** 2, 1.0),
                 (1.0, -2.0), (w, -2.0), (w ** 2, -2.0))
    om = cx.term(th / t, (0.0, -mu - 2.0), (1.0, 2.0), (w, 2.0), (w ** 2, 2.0))
    rs = [abs(cx.residue(gp, p)) for p in (1.0, w, w ** 2)]
    z0 = 0.5
    g_base = cquad(lambda x: 2.0 * x ** (2 * mu + 1) * (x ** 6 - a3)
                   / (x ** 6 - 1.0) ** 2, 0.0, math.sqrt(z0)) * t
    spec = SurfaceSpec((0.0, INF), SecondaryData(gp, om, g_base), basepoint=z0)
    r = ta_quadrature(spec, "primal")
    print(f"o-2-5 mu={mu}: res={max(rs):.2e} "
          f"TA/pi={r.value_over_pi:.6f} err={r.error_estimate:.2e} "
          f"printed=8pi mine=12pi")


def o2220_consistency(mu):
    # a^2 = A(s) with s = q^2; bracket*a: 2 mu a^2/(a^2-1) + 2a^2/(a^2-s) + 1 = 0
    def A(s):
        return (mu + s - 1.0) / (3.0 + mu - 3.0 * s)

    def F(s):
        a2 = A(s)
        return 2.0 * mu * a2 / (a2 - 1.0) + 2.0 * a2 / (a2 - s) + 1.0

    roots = []
    grid = np.linspace(-6.0, 8.0, 14001)
    vals = []
    for s in grid:
        try:
            vals.append(F(s))
        except ZeroDivisionError:
            vals.append(np.nan)
    vals = np.array(vals)
    for i in range(len(grid) - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) \
                and vals[i] * vals[i + 1] < 0:
            try:
                r = brentq(F, grid[i], grid[i + 1])
            except ValueError:
                continue
            # discard sign flips across poles
            if abs(F(r)) < 1e-8:
                roots.append(r)
    return [(s, A(s)) for s in roots]


def probe_o2220(mu):
    pairs = o2220_consistency(mu)
    print(f"o-2-2-20 mu={mu}: consistent (q^2, a^2) pairs: "
          + ", ".join(f"({s:.6f}, {a2:.6f})" for s, a2 in pairs))
    for s, a2 in pairs:
        q = cmath.sqrt(s)
        a = cmath.sqrt(a2)
        bad = False
        for x, y in ((q, a),):
            for v in (0.0, 1.0, -1.0):
                if abs(x - v) < 1e-6 or abs(y - v) < 1e-6:
                    bad = True
        if abs(q - a) < 1e-6 or abs(q + a) < 1e-6:
            bad = True
        if bad:
            print(f"  skip degenerate (q={q}, a={a})")
            continue
        C = -mu * (mu + 2.0) / (s - 1.0)
        gp = cx.term(1.0, (1.0, mu), (-1.0, mu), (q, 1.0), (-q, 1.0),
                     (0.0, 2.0), (a, -2.0), (-a, -2.0))
        om = cx.term(C, (1.0, -mu - 2.0), (-1.0, -mu - 2.0), (0.0, -2.0),
                     (a, 2.0), (-a, 2.0))
        res = max(abs(cx.residue(gp, a)), abs(cx.residue(gp, -a)))
        # basepoint off the real axis, away from everything
        z0 = 0.5j if min(abs(q - 0.5j), abs(a - 0.5j)) > 0.2 else 0.4 + 0.4j
        g_base = cquad(lambda x: gp_scalar(gp, x * z0) * z0, 1e-12, 1.0)
        spec = SurfaceSpec((1.0, -1.0, 0.0, INF),
                           SecondaryData(gp, om, g_base), basepoint=z0)
        try:
            r = ta_quadrature(spec, "primal")
            print(f"  q={q:.6f} a={a:.6f} res={res:.2e} "
                  f"TA/pi={r.value_over_pi:.6f} err={r.error_estimate:.2e}")
        except Exception as e:  # noqa: BLE001
            print(f"  q={q:.6f} a={a:.6f} res={res:.2e} quadrature failed: {e}")


def gp_scalar(e, z):
    return cx.eval_principal(e, z)


def probe_o122a_case2(mu, m):
    p = (mu + m + 2.0) / (mu + m)
    rad = 9.0 * (m - mu) ** 2 + 16.0 * m * (mu + 1.0) + 16.0 * mu * (m + 1.0)
    for sign in (+1.0, -1.0):
        a = (m - mu + sign * math.sqrt(rad)) / (2.0 * (mu + m))
        num = np.polymul([1.0, 0.0, 0.0],
                         np.polynomial.polynomial.polypow([-p, 1.0], m - 1)[::-1]
                         if m > 1 else [1.0])
        dG = cx.term(1.0, (0.0, 2.0), *(((p, float(m - 1)),) if m > 1 else ()),
                     (1.0, float(-(m + 2))), (a, -2.0))
        r1 = cx.residue(dG, 1.0)
        ra = cx.residue(dG, a)
        print(f"o-1-2-2-a case2 mu={mu} m={m} sign={sign:+.0f}: a={a:.6f} "
              f"p={p:.6f} res1={abs(r1):.2e} resa={abs(ra):.2e}")


def probe_o122(mu, m):
    a = -(m + mu + 2.0) / (m - mu - 2.0)
    p = (a * mu + a - a * a) / (a * mu + a - 1.0)
    gp = cx.term(1.0, (0.0, 1.0), (1.0, mu), (p, -mu - 2.0), (a, -2.0))
    dG = cx.term(1.0, (0.0, 1.0), *(((p, float(m - 2)),) if m > 2 else ()),
                 (1.0, float(-(m + 2))))
    ra = cx.residue(gp, a)
    r1 = cx.residue(dG, 1.0)
    print(f"o-1-2-2 mu={mu} m={m}: a={a:.6f} p={p:.6f} "
          f"res_dg_a={abs(ra):.2e} res_dG_1={abs(r1):.2e}")


if __name__ == "__main__":
    for mu in (-0.5, -0.3):
        probe_o24(mu)
    probe_o25(-0.5)
    for mu in (-0.75, -0.6, -0.9):
        probe_o2220(mu)
    for m in (1, 2, 3):
        probe_o122a_case2(-0.5, m)
    for m in (2, 3):
        probe_o122(-0.5, m)
