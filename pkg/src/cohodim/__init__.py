"""Finitely presented groups, abelian invariants, coset enumeration and
simplicial cohomology of Pontryagin disk stages."""

__version__ = "0.1.0"

from .abgroup import FgAbelianGroup, IntMatrix, abelianization, smith_normal_form
from .errors import ResourceExceeded
from .fpgroup import ParseError, Presentation, Word, parse_presentation, parse_presentations
from .permgroup import PermutationGroup, to_permutation_group, todd_coxeter
from .simplicial import Coefficients, SimplicialComplex

__all__ = [
    "__version__",
    "Coefficients",
    "FgAbelianGroup",
    "IntMatrix",
    "ParseError",
    "PermutationGroup",
    "Presentation",
    "ResourceExceeded",
    "SimplicialComplex",
    "Word",
    "abelianization",
    "parse_presentation",
    "parse_presentations",
    "smith_normal_form",
    "to_permutation_group",
    "todd_coxeter",
]
