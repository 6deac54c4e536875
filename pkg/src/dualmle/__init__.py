"""Maximum-likelihood degrees and critical points from a model or its dual variety."""

from .estimator import DualMLE, check_data_vector, check_model
from .groebner import (
    GroebnerBasis,
    Ideal,
    NotZeroDimensional,
    ResourceBudget,
    ResourceLimitExceeded,
    buchberger,
    dimension,
    eliminate,
    intersect,
    saturate,
    saturate_by_ideal,
)
from .likelihood import (
    DataVector,
    GenericityFailure,
    LikelihoodProblem,
    NongenericData,
    conormal_mle_ideal,
    dual_likelihood_ideal,
    lagrange_dual_system,
    lagrange_ideal,
    ml_degree,
    recover_primal,
    select_mle,
    standard_likelihood_ideal,
)
from .modelfile import ModelFile, format_model_file, load_model_file, parse_model_file
from .polynomial import DEGREVLEX, LEX, MonomialOrder, Polynomial, VariableSet
from .solver import certify_count, eliminant, isolate_real_roots, multiplication_matrix, solve_points
from .varieties import Model, conormal_ideal, dual_variety, jacobian, minors

__version__ = "0.1.0"
