"""Mutual information of the additive Gaussian-noise channel Y = X + N.

The channel posterior is treated as a Gibbs distribution at inverse
temperature beta (the snr), which turns I(X; Y) into thermodynamic
bookkeeping: a boundary entropy term plus an integral of heat along the
snr axis.  The package computes that integral two ways (the classical
balance, which fails for continuous inputs, and the generalized one,
which does not), plus an independent route through the mmse integral,
and checks them against closed forms and Monte Carlo.

The CLI (``thermomi sweep`` / ``thermomi verify``) lives in
:mod:`thermomi.cli`; figure rendering in :mod:`thermomi.plots` is kept
out of this namespace so importing the library never loads matplotlib.
"""
from ._version import __version__
from .boltzmann import (
    ChannelPoint,
    DiscretePosterior,
    GaussianPosterior,
    Posterior,
    beta_dependent_energy,
    energy,
    energy_dbeta,
    free_energy_identity_residual,
    heat_capacity,
    internal_energy,
    log_partition,
    mean_static_energy,
    posterior,
    posterior_entropy,
    posterior_mean_variance,
)
from .checks import CheckResult, run_verify
from .config import BetaGrid, RunConfig, config_from_dict, load_config
from .distributions import (
    InputDistribution,
    from_dict,
    make_discrete,
    make_gaussian,
    prior_entropy,
    prior_log_prob,
    prior_mean,
    prior_variance,
    second_moment,
)
from .errors import (
    AtomNotFound,
    BetaZero,
    ConfigError,
    DuplicateAtom,
    InvalidPrior,
    NonEquiprobablePrior,
    NonEquiprobablePriorWarning,
    NonFiniteIntegrand,
    NonFiniteValue,
    NonPositiveProbability,
    NonPositiveVariance,
    NotNormalized,
    ThermomiError,
    ToleranceNotReached,
    TooFewAtoms,
)
from .estimation import GsvCheck, conditional_mean, gsv_check, mi_gsv, mmse
from .quadrature import (
    QuadratureConfig,
    central_difference,
    integrate_beta,
    integrate_gaussian_weight,
    integrate_to_infinity,
)
from .reference import (
    McEstimate,
    OracleConfig,
    closed_form_mi,
    log_cosh,
    mc_incremental_mi_rate,
    mc_mmse,
    mc_mutual_information,
    mi_bernoulli_closed,
    mi_gaussian_closed,
)
from .sweep import (
    CSV_COLUMNS,
    SweepRecord,
    SweepReport,
    compute_record,
    parse_routes,
    run_sweep,
)
from .thermo import (
    MIResult,
    ROUTE_CLOSED_FORM,
    ROUTE_GSV,
    ROUTE_THERMO_CLASSICAL,
    ROUTE_THERMO_GENERALIZED,
    conditional_entropy,
    entropy_gap_vs_route,
    entropy_via_heat_capacity,
    expect_output,
    log_output_density,
    mi_thermo_classical,
    mi_thermo_generalized,
    mutual_information_parts_identity,
    output_density,
)

__all__ = [
    "__version__",
    "AtomNotFound",
    "BetaGrid",
    "BetaZero",
    "CSV_COLUMNS",
    "ChannelPoint",
    "CheckResult",
    "ConfigError",
    "DiscretePosterior",
    "DuplicateAtom",
    "GaussianPosterior",
    "GsvCheck",
    "InputDistribution",
    "InvalidPrior",
    "MIResult",
    "McEstimate",
    "NonEquiprobablePrior",
    "NonEquiprobablePriorWarning",
    "NonFiniteIntegrand",
    "NonFiniteValue",
    "NonPositiveProbability",
    "NonPositiveVariance",
    "NotNormalized",
    "OracleConfig",
    "Posterior",
    "QuadratureConfig",
    "ROUTE_CLOSED_FORM",
    "ROUTE_GSV",
    "ROUTE_THERMO_CLASSICAL",
    "ROUTE_THERMO_GENERALIZED",
    "RunConfig",
    "SweepRecord",
    "SweepReport",
    "ThermomiError",
    "ToleranceNotReached",
    "TooFewAtoms",
    "beta_dependent_energy",
    "central_difference",
    "closed_form_mi",
    "compute_record",
    "conditional_entropy",
    "conditional_mean",
    "config_from_dict",
    "energy",
    "energy_dbeta",
    "entropy_gap_vs_route",
    "entropy_via_heat_capacity",
    "expect_output",
    "free_energy_identity_residual",
    "from_dict",
    "gsv_check",
    "heat_capacity",
    "integrate_beta",
    "integrate_gaussian_weight",
    "integrate_to_infinity",
    "internal_energy",
    "load_config",
    "log_cosh",
    "log_output_density",
    "log_partition",
    "make_discrete",
    "make_gaussian",
    "mc_incremental_mi_rate",
    "mc_mmse",
    "mc_mutual_information",
    "mean_static_energy",
    "mi_bernoulli_closed",
    "mi_gaussian_closed",
    "mi_gsv",
    "mi_thermo_classical",
    "mi_thermo_generalized",
    "mmse",
    "mutual_information_parts_identity",
    "output_density",
    "parse_routes",
    "posterior",
    "posterior_entropy",
    "posterior_mean_variance",
    "prior_entropy",
    "prior_log_prob",
    "prior_mean",
    "prior_variance",
    "run_sweep",
    "run_verify",
    "second_moment",
]
