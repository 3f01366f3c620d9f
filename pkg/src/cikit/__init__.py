"""Exact computational commutative algebra toolkit.

Groebner bases and graded module primitives, minimal free resolutions,
Koszul homology, graded-commutative minimal models, homotopy Lie algebra
truncations, conormal modules, and a corpus harness that runs the
complete-intersection rigidity statements as executable invariants.
"""

from .fields import QQ, GF, Field, FieldError
from .poly import PolyRing, Polynomial, MonomialOrder, DEGREVLEX, DEGLEX, LEX

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "GF",
    "Field",
    "FieldError",
    "PolyRing",
    "Polynomial",
    "MonomialOrder",
    "DEGREVLEX",
    "DEGLEX",
    "LEX",
    "__version__",
]
