"""Dobinski-type relations: Bell/Stirling-type numbers by exact normal-ordering
combinatorics and error-bounded series, Dirac-comb moment problems, generating
functions, and a truncated Fock-space verification layer.
"""

from .errors import DivergenceError, DobinskiError, PoleError, TermCapError
from .exact import (
    NormalForm,
    bell_number,
    bell_polynomial,
    bell_type_eval,
    falling_factorial,
    monomial_to_falling,
    restricted_bell,
    stirling2,
    stirling_type,
    triangle_row,
)
from .fock import (
    CoherentVector,
    FockTruncation,
    coherent_expect_exp,
    coherent_vector,
    expect_number_power,
    verify_normal_form,
)
from .genfun import (
    GenFunKind,
    GenFunSpec,
    egf_closed_form_bell,
    egf_eval,
    egf_partial_from_numbers,
    ogf_eval,
)
from .moments import (
    DiracComb,
    DistributionReport,
    MomentClass,
    atoms_in_range,
    build_comb,
    check_distribution,
    classify,
    export_comb_csv,
    moment,
)
from .poly import (
    HamiltonianSpec,
    PolynomialQ,
    format_poly_spec,
    monotone_tail_index,
    parse_poly_spec,
)
from .precision import DEFAULT_BITS
from .series import (
    CrossCheckReport,
    EvalResult,
    SeriesSpec,
    cross_check,
    eval_bell_type,
    eval_bell_type_poly,
    tail_bound_factorial_poly,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BITS",
    "CoherentVector",
    "CrossCheckReport",
    "DiracComb",
    "DistributionReport",
    "DivergenceError",
    "DobinskiError",
    "EvalResult",
    "FockTruncation",
    "GenFunKind",
    "GenFunSpec",
    "HamiltonianSpec",
    "MomentClass",
    "NormalForm",
    "PoleError",
    "PolynomialQ",
    "SeriesSpec",
    "TermCapError",
    "atoms_in_range",
    "bell_number",
    "bell_polynomial",
    "bell_type_eval",
    "build_comb",
    "check_distribution",
    "classify",
    "coherent_expect_exp",
    "coherent_vector",
    "cross_check",
    "egf_closed_form_bell",
    "egf_eval",
    "egf_partial_from_numbers",
    "eval_bell_type",
    "eval_bell_type_poly",
    "expect_number_power",
    "export_comb_csv",
    "falling_factorial",
    "format_poly_spec",
    "moment",
    "monomial_to_falling",
    "monotone_tail_index",
    "ogf_eval",
    "parse_poly_spec",
    "restricted_bell",
    "stirling2",
    "stirling_type",
    "triangle_row",
    "verify_normal_form",
]
