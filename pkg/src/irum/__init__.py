"""Exact tests for random utility models and their irrational representations."""

from irum.bm import bm_polynomial, bm_table, check_regularity, is_full_support_rum, is_rum, rum_representation
from irum.bounds import (
    agreement_count,
    agreement_matrix,
    correlation_bound,
    correlation_decomposition,
    correlation_from_distribution,
    frechet_lower_bound,
    satisfies_correlation_bounds,
    satisfies_weak_correlation_bounds,
    weak_correlation_value,
)
from irum.core import (
    AlternativeSet,
    ChoiceFunction,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    all_choice_functions,
    enumerate_menus,
    irrational_choice_functions,
    is_rational,
    preferences,
    rational_choice_function,
)
from irum.demand import ContingencyTable, TwoBudgetData, extremal_table, irrational_share_bounds
from irum.errors import DatasetError, IrumError, PreconditionError, SizeLimitError
from irum.falsify import IrrationalFamily, alpha_bar, mixture, verify_monotonicity
from irum.io import parse_dataset
from irum.lp import FeasibilitySystem, find_representation, solve_feasibility
from irum.represent import (
    dual_decomposition,
    dual_irum_construction,
    irrational_representation,
    is_irum,
    is_pirum,
    necessary_mass_cap,
    partial_irrational_representation,
    pirum_representation,
    rum_decompose_irum_dual,
    sufficient_quarter,
)

__all__ = [
    "AlternativeSet",
    "ChoiceFunction",
    "ContingencyTable",
    "DatasetError",
    "FeasibilitySystem",
    "IrrationalFamily",
    "IrumError",
    "PreconditionError",
    "RandomChoiceModel",
    "SizeLimitError",
    "StochasticChoiceFunction",
    "TwoBudgetData",
    "aggregate",
    "agreement_count",
    "agreement_matrix",
    "all_choice_functions",
    "alpha_bar",
    "bm_polynomial",
    "bm_table",
    "check_regularity",
    "correlation_bound",
    "correlation_decomposition",
    "correlation_from_distribution",
    "dual_decomposition",
    "dual_irum_construction",
    "enumerate_menus",
    "extremal_table",
    "find_representation",
    "frechet_lower_bound",
    "irrational_choice_functions",
    "irrational_representation",
    "irrational_share_bounds",
    "is_full_support_rum",
    "is_irum",
    "is_pirum",
    "is_rational",
    "is_rum",
    "mixture",
    "necessary_mass_cap",
    "parse_dataset",
    "partial_irrational_representation",
    "pirum_representation",
    "preferences",
    "rational_choice_function",
    "rum_decompose_irum_dual",
    "rum_representation",
    "satisfies_correlation_bounds",
    "satisfies_weak_correlation_bounds",
    "solve_feasibility",
    "sufficient_quarter",
    "verify_monotonicity",
    "weak_correlation_value",
]
