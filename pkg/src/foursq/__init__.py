"""Restricted four-square representations over Lipschitz quaternions.

Solves m = x²+y²+z²+t² subject to ax+by+cz+dt landing in a target set
(squares, cubes, or powers of two), and verifies the underlying theorems
over integer ranges.
"""

from .lipschitz import (
    ArithmeticRangeError,
    Quaternion,
    conj,
    mul,
    norm,
    re,
    sandwich,
    try_div_right_exact,
)
from .arith import (
    four_square_reps,
    iroot,
    is_square,
    is_three_square,
    ord2,
    three_square_reps,
)
from .solver import (
    NoSolutionError,
    ResourceLimitError,
    RestrictedSolution,
    SystemQuadruple,
    TargetSet,
    TransformationRule,
    UnsupportedQuadrupleError,
    admissible_n,
    apply_rule,
    brute_force_oracle,
    builtin_rules,
    candidate_set,
    check_solution,
    companion_source,
    identity_suite,
    solve_linear_system,
    solve_restricted,
)
from .verifier import (
    VerificationJob,
    canonical_report_bytes,
    check_bounds,
    reduce_m,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticRangeError",
    "Quaternion",
    "conj",
    "mul",
    "norm",
    "re",
    "sandwich",
    "try_div_right_exact",
    "four_square_reps",
    "iroot",
    "is_square",
    "is_three_square",
    "ord2",
    "three_square_reps",
    "NoSolutionError",
    "ResourceLimitError",
    "RestrictedSolution",
    "SystemQuadruple",
    "TargetSet",
    "TransformationRule",
    "UnsupportedQuadrupleError",
    "admissible_n",
    "apply_rule",
    "brute_force_oracle",
    "builtin_rules",
    "candidate_set",
    "check_solution",
    "companion_source",
    "identity_suite",
    "solve_linear_system",
    "solve_restricted",
    "VerificationJob",
    "canonical_report_bytes",
    "check_bounds",
    "reduce_m",
    "verify_theorem",
    "__version__",
]
