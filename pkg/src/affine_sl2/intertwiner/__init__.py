from .conditions import (INDETERMINATE, ConditionReport, check_descent_conditions,
                         check_construction_conditions, fusion_gvm, fusion_irr)
from .construct import (AnnihilationFailure, HypothesisFailure, InconsistentRecursion,
                        TruncationTooShallow, build_components)
from .descend import DescentObstruction, QuotientTable, descend_to_irreducible, verify_quotient_commutators
from .extend import FullIntertwiner, TruncationOverflow, binom, extend_to_full
from .table import IntertwinerTable, zero_table
from .verify import (VerificationReport, verify_component_commutators, verify_jacobi_truncated,
                     verify_order_independence)

__all__ = [
    "INDETERMINATE", "ConditionReport", "check_descent_conditions", "check_construction_conditions",
    "fusion_gvm", "fusion_irr", "AnnihilationFailure", "HypothesisFailure", "InconsistentRecursion",
    "TruncationTooShallow", "build_components", "DescentObstruction", "QuotientTable",
    "descend_to_irreducible", "verify_quotient_commutators", "FullIntertwiner", "TruncationOverflow",
    "binom", "extend_to_full", "IntertwinerTable", "zero_table", "VerificationReport",
    "verify_component_commutators", "verify_jacobi_truncated", "verify_order_independence",
]
