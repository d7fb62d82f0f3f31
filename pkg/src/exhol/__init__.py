"""exhol: exact verification engine for G2/Spin(7) geometry with skew torsion.

Library layers, bottom up:

* :mod:`exhol.forms`      exterior algebra and dense tensors on R^n, n <= 8
* :mod:`exhol.lie`        Lie algebras, invariant d/delta, Levi-Civita
* :mod:`exhol.connection` metric connections with skew torsion, curvature,
                          the universal identity suite, Hull connection
* :mod:`exhol.g2`         canonical G2 structure, characteristic connection,
                          instanton checks, theorem validators (dim 7)
* :mod:`exhol.spin7`      canonical Spin(7) structure, torsion connection,
                          instanton checks, validators, G2 extension (dim 8)
* :mod:`exhol.manifest` / :mod:`exhol.runner` / :mod:`exhol.fuzz` /
  :mod:`exhol.cli`        manifest-driven verification and reporting
"""

from .scalars import ScalarMode, rat

__all__ = ["ScalarMode", "rat"]
__version__ = "0.1.0"
