"""Numerical laboratory for CMC-1 surfaces in hyperbolic 3-space.

Surfaces of constant mean curvature one in H^3 are produced from holomorphic
data via a null lift F into SL(2,C) with f = F F*.  The subpackages cover the
pipeline end to end: exact branch-point calculus (:mod:`bryantlab.cexpr`),
SL(2,C)/H^3 linear algebra (:mod:`bryantlab.sl2c`), lift integration and end
monodromy (:mod:`bryantlab.holonomy`), a catalog of named families
(:mod:`bryantlab.catalog`), total-curvature evaluation
(:mod:`bryantlab.curvature`), classification constraints and nonexistence
certificates (:mod:`bryantlab.constraints`), period closing
(:mod:`bryantlab.periods`), mesh export (:mod:`bryantlab.meshout`) and a
command-line interface (:mod:`bryantlab.cli`).
"""

__version__ = "0.1.0"
