"""Power and spherical series of slice functions over real alternative algebras."""

from .algebra import (
    AlgebraConstants,
    AlgebraElement,
    AlgebraError,
    AlgebraSpec,
    ConePoint,
    InvalidArgumentError,
    NotInConeError,
    SpecMismatchError,
    algebra_constants,
    clifford,
    complex_numbers,
    compose,
    cone_decompose,
    octonions,
    quaternions,
    spec_from_config,
)
from .expansion import (
    ExpansionReport,
    contour_coeff_power,
    contour_coeff_spherical,
    derivative_from_spherical,
    expand,
    power_remainder,
    spherical_matrix,
    spherical_numbers_by_system,
    spherical_remainder,
    taylor_coeffs_by_derivative,
)
from .geometry import (
    CassiniBall,
    QuadratureError,
    SigmaBall,
    cassini_boundary,
    sigma,
    tau,
    theta_constant,
)
from .kernels import BACKEND
from .series import (
    PowerSeries,
    SphericalSeries,
    abel_radius,
    eval_power_series,
    eval_spherical_series,
    limit_laws_check,
    slice_power,
    spherical_poly,
)
from .stem import StemPolynomial, induce, representation_formula, slice_product

__version__ = "0.1.0"
