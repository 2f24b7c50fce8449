"""Wasserstein reduced-order models for parametric 1D conservative PDEs.

Thin python surface over the C++ core: quantile-function transforms, W2
geometry (exp/log maps, barycenters), snapshot generators for the five
problem families, and the PCA / tangent-PCA / greedy-barycenter reduced
models with their error metrics.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
