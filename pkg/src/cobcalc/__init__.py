"""cobcalc: exact-arithmetic characteristic numbers, l-adic valuations,
power operations, and polynomial-generator criteria."""

from .valuation import (
    LadicDigits,
    ladic_digits,
    multinomial,
    nu,
    nu_factorial,
    nu_multinomial,
)
from .partitions import Partition, concat, enumerate_partitions
from .symfun import BPoly, SymFn, ZClass, convert, diagonal, expand_in_vars, pair, u_to_b, z_mul
from .chow import (
    ChowClass,
    LineTerm,
    ProjProduct,
    VirtualBundle,
    alpha,
    cf_chern,
    deg,
    newton_class,
    tangent_bundle,
)
from .stong import (
    StongDatum,
    build_X,
    congruence_check,
    s_number,
    s_number_bruteforce,
    signed_char_number,
    valuation_table,
)
from .steenrod import (
    RootPoly,
    power_op,
    power_op_oracle,
    power_op_untwisted,
    total_power_on_monomial,
)
from .adams import (
    MilnorExponent,
    TriDegree,
    decomposition_check,
    e2_rank,
    e2_rank_from_generators,
    ext_generators,
    milnor_count,
    vanishing_check,
)
from .criterion import (
    CandidateFamily,
    GeneratorVerdict,
    global_criterion,
    mgl_criterion,
    msp_criterion,
    stong_family,
)

__version__ = "0.1.0"

__all__ = [
    "BPoly",
    "CandidateFamily",
    "ChowClass",
    "GeneratorVerdict",
    "LadicDigits",
    "LineTerm",
    "MilnorExponent",
    "Partition",
    "ProjProduct",
    "RootPoly",
    "StongDatum",
    "SymFn",
    "TriDegree",
    "VirtualBundle",
    "ZClass",
    "alpha",
    "build_X",
    "cf_chern",
    "concat",
    "congruence_check",
    "convert",
    "decomposition_check",
    "deg",
    "diagonal",
    "e2_rank",
    "e2_rank_from_generators",
    "enumerate_partitions",
    "expand_in_vars",
    "ext_generators",
    "global_criterion",
    "ladic_digits",
    "mgl_criterion",
    "milnor_count",
    "msp_criterion",
    "multinomial",
    "newton_class",
    "nu",
    "nu_factorial",
    "nu_multinomial",
    "pair",
    "power_op",
    "power_op_oracle",
    "power_op_untwisted",
    "s_number",
    "s_number_bruteforce",
    "signed_char_number",
    "stong_family",
    "tangent_bundle",
    "total_power_on_monomial",
    "u_to_b",
    "valuation_table",
    "vanishing_check",
    "z_mul",
]
