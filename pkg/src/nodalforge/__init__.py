"""Real line arrangements and nodal surfaces built from folding polynomials.

The package constructs an exact polynomial family (Chebyshev, folding, real
folding, and the composed surface), locates and certifies every real
critical point, builds the associated real simple line arrangement with its
two-coloring, enumerates certified surface nodes, and evaluates the
closed-form bound tables that the node counts are checked against.
"""

__version__ = "0.1.0"

from .polynomials import (
    Polynomial,
    PolyMatrix,
    chebyshev,
    chmutov_surface,
    folding_complex,
    folding_matrix,
    folding_real,
)

__all__ = [
    "Polynomial",
    "PolyMatrix",
    "chebyshev",
    "chmutov_surface",
    "folding_complex",
    "folding_matrix",
    "folding_real",
    "__version__",
]
