"""Certified evaluation of nested and transfinite square-root radicals.

The package computes two-sided enclosures for radicals
sqrt(a_1 + sqrt(a_2 + ...)), including sequences that carry one coefficient
past every finite index (transfinite radicals), with explicit width bounds
driven by golden-ratio tail caps.  On top of the enclosure engine sit the
special function U(r) with its bracketed inverse, a tail-supremum estimator
that converts convergence moduli into certified intervals, and a generic
continued-function evaluator with iterated-ceiling error bounds.
"""

from .caps import SupQuery, SupSequenceResult, sup_enclosure, sup_sequence_bounds
from .contfn import ContinuedSpec, cf_error_bound, cf_eval, cf_limit
from .kappa import (
    DEFAULT_DEPTH_CAP,
    LN_PHI,
    PHI,
    KappaResult,
    SubsetIndex,
    kappa_enclosure,
    kappa_limit,
    kappa_subset,
    phi_pow,
)
from .nested import (
    ARCTAN,
    LOG1P,
    OUTER_FUNCTIONS,
    SQRT,
    Enclosure,
    OuterFunction,
    nested_eval,
    seed_gap,
    seed_gap_pair,
    sqrt_nested_scaled,
    swap_adjacent,
)
from .seqspec import (
    RAMANUJAN_SUP_BOUND,
    CapTableTail,
    ConstantNormalizedTail,
    ConstantRawTail,
    OmegaTail,
    RamanujanTail,
    SequenceSpec,
    SpecError,
    TailModel,
    Term,
    ZeroTail,
    constant_normalized,
    constant_raw,
    explicit,
    family_term,
    golden,
    load_cap_table,
    make_family,
    parse_spec,
    power_tower,
    ramanujan,
    render_spec,
    tail_bounds,
)
from .ufunc import u_eval, u_inverse, u_spec, u_table

__version__ = "0.1.0"

__all__ = [
    "ARCTAN",
    "CapTableTail",
    "ConstantNormalizedTail",
    "ConstantRawTail",
    "ContinuedSpec",
    "DEFAULT_DEPTH_CAP",
    "Enclosure",
    "KappaResult",
    "LN_PHI",
    "LOG1P",
    "OUTER_FUNCTIONS",
    "OmegaTail",
    "OuterFunction",
    "PHI",
    "RAMANUJAN_SUP_BOUND",
    "RamanujanTail",
    "SQRT",
    "SequenceSpec",
    "SpecError",
    "SubsetIndex",
    "SupQuery",
    "SupSequenceResult",
    "TailModel",
    "Term",
    "ZeroTail",
    "cf_error_bound",
    "cf_eval",
    "cf_limit",
    "constant_normalized",
    "constant_raw",
    "explicit",
    "family_term",
    "golden",
    "kappa_enclosure",
    "kappa_limit",
    "kappa_subset",
    "load_cap_table",
    "make_family",
    "nested_eval",
    "parse_spec",
    "phi_pow",
    "power_tower",
    "ramanujan",
    "render_spec",
    "seed_gap",
    "seed_gap_pair",
    "sqrt_nested_scaled",
    "sup_enclosure",
    "sup_sequence_bounds",
    "swap_adjacent",
    "tail_bounds",
    "u_eval",
    "u_inverse",
    "u_spec",
    "u_table",
]
