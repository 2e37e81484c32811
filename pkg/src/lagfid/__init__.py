"""Numerical toolkit for mixed states attached to curves with densities on the
quantized two-sphere: fidelity / sub-fidelity / super-fidelity, Berezin-Toeplitz
operators, and closed-form semiclassical predictors for all of them."""

__version__ = "0.1.0"

from .hermitian import (
    HermitianOperator,
    eig_hermitian,
    loewner_leq,
    sqrt_psd,
    trace_norm,
    unitary_exp,
)
from .sphere import (
    CurveWithDensity,
    Level,
    bargmann_poisson_state,
    beta_integral,
    coherent_projector,
    equator_state,
    meridian_state,
    rotated_circle_state,
    rotation_operator,
    state_from_curve,
    su2_generator,
)
from .toeplitz import (
    GaussianSymbolParams,
    SphereSymbol,
    domination_check,
    egorov_conjugate,
    fidelity_upper_bound,
    gaussian_symbol,
    rotate_symbol,
    toeplitz_general,
    toeplitz_radial,
    trace_norm_sqrt_product,
)
from .metrics import (
    MetricReport,
    expectation,
    fidelity,
    metric_report,
    purity,
    sub_fidelity,
    super_fidelity,
    variance,
)
from .asymptotics import (
    IntersectionDatum,
    LagrangianPairData,
    predicted_fidelity_bound,
    predicted_purity,
    predicted_subfidelity,
    predicted_superfidelity,
    predicted_trace,
    predicted_trace_sq,
    principal_angles,
    sin_det_identity,
    sphere_intersection_data,
    symplectic_det_identity,
)
