"""Exact symbolic toolkit for BiHom-Poisson algebras and their relatives."""

from .axioms import (
    check_admissible,
    check_bihom_associativity,
    check_bihom_commutativity,
    check_bihom_jacobi,
    check_bihom_leibniz,
    check_bihom_skew_symmetry,
    check_commuting_maps,
    check_jacobi_regular_form,
    check_morphism,
    check_multiplicativity,
    verify,
    verify_bihom_poisson,
)
from .constructions import commutator_bracket, depolarize, direct_sum, polarize, tensor_product, yau_twist
from .documents import dump_algebra, load_algebra
from .expr import eval_expr, parse_scalar, print_scalar
from .linalg import BiHomAlgebra, BilinearMap, LinearMap, apply_bilinear, apply_linear, compose_linear, invert_linear, is_regular
from .report import CheckResult, Report, dump_report
from .scalar import Polynomial, Scalar

__version__ = "0.1.0"
