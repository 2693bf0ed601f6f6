"""Pseudo-spectral laboratory for renormalized approximations of the 3D
stochastic Navier-Stokes equation on the torus."""

try:
    from ._nslab import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree build: module sits next to the build dir
    from _nslab import *  # noqa: F401,F403
