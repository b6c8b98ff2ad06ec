"""Radial spherical Fourier analysis on Damek-Ricci spaces.

Spherical functions, the spectral transform pair with a calibrated
inversion constant, Schroedinger propagation, Sobolev norms, maximal
function experiments, and closed-form cross-checks on hyperbolic 3-space.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AccuracyError, ConfigError, DivergentIntegralError, DomainError,
    NumericalError, PoleError, SchromaxError,
)
from .space import (  # noqa: F401
    DAMEK_RICCI, HYPERBOLIC_H3, SpaceParams, bn_constant, c_function,
    damek_ricci, density, hyperbolic_h3, log_density_derivative,
    plancherel_density,
)
from .spherical import (  # noqa: F401
    Backend, PhiEvaluation, evaluate_phi, phi, phi_bessel_leading,
    phi_hc_leading, phi_matrix, phi_ode,
)
from .transform import (  # noqa: F401
    PropagatorSpec, RadialProfile, SobolevIndex, SpectralProfile,
    band_profile, forward_sft, gaussian_profile, inverse_sft,
    plancherel_constant, propagate, propagate_batch, sobolev_norm,
)
from .experiments import (  # noqa: F401
    MaximalReport, decomposition_residuals, dyadic_t_grid, maximal_function,
    maximal_ratio, oscillatory_integral, oscillatory_substitution_check,
    sharpness_sweep,
)
from .h3_oracle import (  # noqa: F401
    abel_identity_defect, euclid_propagator_r3, phi_h3,
)
