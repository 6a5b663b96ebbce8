"""Polynomial Pickands dependence functions for bivariate extreme-value copulas.

Bernstein-basis polynomial algebra, the full characterization of polynomial
Pickands functions (ellipsoid-intersection parameter space), the Bernstein
approximation submodel (polytope parameter space), dependence measures,
maximum-likelihood and CFG estimation, copula sampling, and a Monte Carlo
study harness.
"""

from .bernstein import (
    BernsteinPoly,
    PowerPoly,
    basis_eval,
    bernstein_approx,
    bernstein_to_power,
    binom_pmf,
    derivative_coeffs,
    elevate_degree,
    evaluate,
    global_minimum,
    poly_from_json,
    poly_to_json,
    power_to_bernstein,
    second_derivative_coeffs,
)
from .pickands import (
    CertificateInconclusiveError,
    GenericPickands,
    NonnegReport,
    NotSpectralDensityError,
    PickandsPoly,
    SpectralDensity,
    a_from_h,
    certify_nonnegative,
    comonotone,
    copula_cdf,
    copula_density,
    endpoint_functionals,
    h_from_a,
    independence,
    spectral_measure,
    validate_pickands,
    vee,
)
from .full_model import (
    Feasibility,
    FullModelParam,
    HypergeoSpec,
    InfeasibleThetaError,
    feasibility,
    hypergeo_pmf,
    sample_feasible,
    theta_to_h,
    theta_to_pickands,
)
from .submodel import (
    PiecewiseLinearPickands,
    SubmodelParam,
    in_submodel_a,
    in_submodel_h,
    lorentz_degree,
    submodel_nesting_check,
)
from .measures import (
    ApproxBound,
    DependenceReport,
    approx_error_bound,
    submodel_tau_range,
    tau_measures,
)
from .inference import (
    FitResult,
    OptimConfig,
    SampleSet,
    fit_cfg,
    fit_full,
    fit_sub,
    greatest_convex_minorant,
    log_likelihood,
)
from .simulation import (
    AsymmetricLogistic,
    PolynomialModel,
    ReferenceModel,
    StudyConfig,
    StudyError,
    StudyReport,
    SymmetricMixed,
    model_from_json,
    model_pickands,
    model_to_json,
    run_study,
    sample_copula,
    split_seed,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxBound",
    "AsymmetricLogistic",
    "BernsteinPoly",
    "CertificateInconclusiveError",
    "DependenceReport",
    "Feasibility",
    "FitResult",
    "FullModelParam",
    "GenericPickands",
    "HypergeoSpec",
    "InfeasibleThetaError",
    "NonnegReport",
    "NotSpectralDensityError",
    "OptimConfig",
    "PickandsPoly",
    "PiecewiseLinearPickands",
    "PolynomialModel",
    "PowerPoly",
    "ReferenceModel",
    "SampleSet",
    "SpectralDensity",
    "StudyConfig",
    "StudyError",
    "StudyReport",
    "SubmodelParam",
    "SymmetricMixed",
    "a_from_h",
    "approx_error_bound",
    "basis_eval",
    "bernstein_approx",
    "bernstein_to_power",
    "binom_pmf",
    "certify_nonnegative",
    "comonotone",
    "copula_cdf",
    "copula_density",
    "derivative_coeffs",
    "elevate_degree",
    "endpoint_functionals",
    "evaluate",
    "feasibility",
    "fit_cfg",
    "fit_full",
    "fit_sub",
    "global_minimum",
    "greatest_convex_minorant",
    "h_from_a",
    "hypergeo_pmf",
    "in_submodel_a",
    "in_submodel_h",
    "independence",
    "log_likelihood",
    "lorentz_degree",
    "model_from_json",
    "model_pickands",
    "model_to_json",
    "poly_from_json",
    "poly_to_json",
    "power_to_bernstein",
    "run_study",
    "sample_copula",
    "sample_feasible",
    "second_derivative_coeffs",
    "spectral_measure",
    "split_seed",
    "submodel_nesting_check",
    "submodel_tau_range",
    "tau_measures",
    "theta_to_h",
    "theta_to_pickands",
    "validate_pickands",
    "vee",
]
