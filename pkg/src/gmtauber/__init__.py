"""Weighted geometric mean summability diagnostics for positive
sequences, with an intuitionistic fuzzy number aggregation layer."""

from .mcore import (
    LogReal,
    MTolerance,
    TailWindow,
    Verdict,
    mabs,
    mdist,
    mdelta,
    star_converges_to,
    is_mstar_bounded,
)
from .weights import (
    WeightSequence,
    LambdaGrid,
    SvaPlusEstimate,
    lambda_index,
    partial_sum,
    sva_plus_estimate,
)
from .gmean import (
    GeoMeanState,
    weighted_geo_means,
    gbar_limit_estimate,
    decomposition_identity_check,
)
from .tauber import (
    TauberReport,
    ReportThresholds,
    slow_oscillation_estimate,
    tauber_con1_estimate,
    tauber_con2_estimate,
    landau_estimates,
    recoverability_report,
)
from .ifn import (
    IFN,
    EpsilonIFN,
    PartialOrder,
    AdditionLimitOutcome,
    IFNTauberReport,
    total_order_cmp,
    partial_order_cmp,
    add,
    subtract,
    multiply,
    scalar_mul,
    power,
    in_addition_region,
    addition_limit_check,
    zhangxu_limit_check,
    zhangxu_limit_check_sampled,
    oplus_convergence_check,
    otimes_convergence_check,
    ifwa_means,
    ifwg_means,
    np_oplus_verdict,
    gp_otimes_verdict,
    ifn_tauber_report,
)
from .generators import generate, generator_kind, list_generators

__version__ = "0.1.0"

__all__ = [
    "LogReal",
    "MTolerance",
    "TailWindow",
    "Verdict",
    "mabs",
    "mdist",
    "mdelta",
    "star_converges_to",
    "is_mstar_bounded",
    "WeightSequence",
    "LambdaGrid",
    "SvaPlusEstimate",
    "lambda_index",
    "partial_sum",
    "sva_plus_estimate",
    "GeoMeanState",
    "weighted_geo_means",
    "gbar_limit_estimate",
    "decomposition_identity_check",
    "TauberReport",
    "ReportThresholds",
    "slow_oscillation_estimate",
    "tauber_con1_estimate",
    "tauber_con2_estimate",
    "landau_estimates",
    "recoverability_report",
    "IFN",
    "EpsilonIFN",
    "PartialOrder",
    "AdditionLimitOutcome",
    "IFNTauberReport",
    "total_order_cmp",
    "partial_order_cmp",
    "add",
    "subtract",
    "multiply",
    "scalar_mul",
    "power",
    "in_addition_region",
    "addition_limit_check",
    "zhangxu_limit_check",
    "zhangxu_limit_check_sampled",
    "oplus_convergence_check",
    "otimes_convergence_check",
    "ifwa_means",
    "ifwg_means",
    "np_oplus_verdict",
    "gp_otimes_verdict",
    "ifn_tauber_report",
    "generate",
    "generator_kind",
    "list_generators",
    "__version__",
]
