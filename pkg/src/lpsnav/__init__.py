"""lpsnav: shortest-path navigation on LPS Ramanujan graphs.

The package turns path-finding on the (p+1)-regular Cayley graphs X_{p,q} of
PSL2(F_q) into congruence-constrained sum-of-four-squares problems, factors
the resulting integral quaternions into generator words, and ships a
brute-force Cayley-graph oracle plus a subset-sum reduction exercising the
hardness side of the same diophantine machinery.
"""

__version__ = "0.1.0"

from .quaternion import GraphParams  # noqa: F401
from .foursquares import FourSquaresInstance, solve  # noqa: F401
from .navigator import NavConfig, diagonal_distance, general_navigate  # noqa: F401

__all__ = [
    "GraphParams",
    "FourSquaresInstance",
    "solve",
    "NavConfig",
    "diagonal_distance",
    "general_navigate",
    "__version__",
]
