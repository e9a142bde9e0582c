"""Exact computations with finite-dimensional differential graded algebras.

Builds upper triangular DGAs, their tilted partners, and checks the
quasi-isomorphisms relating them over the rationals and prime fields.
"""

from .scalars import Field, QQ, GF, parse_scalar, scalar_arith
from .graded import GradedSpace, GradedMap
from .complexes import Complex, ChainMap, homology, cone, shift, is_exact, is_quasi_iso
from .algebra import DGAlgebra, DGAMorphism, check_dga, opposite
from .modules import DGModule, hom_complex, end_dga, tensor_over_algebra, dualize, free_module
from .triangular import build_triangular, verify_triangular
from .resolution import semifree_resolution, bimodule_replacement
from .tilt import TiltProblem, run_tilt
from .corollaries import ladkani_specialize, self_dual_corollary
from .fileformat import load, parse, serialize

__all__ = [
    "Field",
    "QQ",
    "GF",
    "parse_scalar",
    "scalar_arith",
    "GradedSpace",
    "GradedMap",
    "Complex",
    "ChainMap",
    "homology",
    "cone",
    "shift",
    "is_exact",
    "is_quasi_iso",
    "DGAlgebra",
    "DGAMorphism",
    "check_dga",
    "opposite",
    "DGModule",
    "hom_complex",
    "end_dga",
    "tensor_over_algebra",
    "dualize",
    "free_module",
    "build_triangular",
    "verify_triangular",
    "semifree_resolution",
    "bimodule_replacement",
    "TiltProblem",
    "run_tilt",
    "ladkani_specialize",
    "self_dual_corollary",
    "load",
    "parse",
    "serialize",
]

__version__ = "0.1.0"
