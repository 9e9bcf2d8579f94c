"""Non-Hermitian quantum dynamics through generalized operator brackets."""

__version__ = "0.1.0"

from .brackets import (BracketMatrix, OperatorPair, eval_bracket,
                       lambda_density_derivative, make_lambda, make_omega,
                       make_omega_minus_plus, make_omega_xi, verify_mapping_identity)
from .dsl import evaluate, parse_expression, to_source
from .dynamics import (EvolutionSpec, compare_pictures, exact_propagate,
                       expectation_value, heisenberg_derivative, omega_xi_flow,
                       rk4_propagate, schrodinger_density_derivative)
from .models import builtin_model
from .operators import (HermitianSplit, anticommutator, commutator, hermitian_split,
                        hermiticity_defect, inverse_checked, matrix_exponential)
