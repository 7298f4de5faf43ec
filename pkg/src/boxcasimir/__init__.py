"""Thermal Casimir energies and forces of fermion and electromagnetic fields in a box."""

__version__ = "0.1.0"

from .errors import (
    BracketError,
    CasimirError,
    DomainError,
    QuadratureError,
    SeriesNonConvergence,
    UnsupportedOrderError,
)
from .geometry import BoxGeometry, ThermalState
from .series import DEFAULT_POLICY, PrecisionPolicy, SeriesValue
from .special_functions import BesselOrder, bessel_k
from .fermion import (
    energy_T0,
    energy_finiteT,
    evaluate_box,
    force,
    force_T0,
    force_finiteT,
    free_energy,
    parallel_plate,
    waveguide,
)
from .em import EmResult, em_energy_T0, em_energy_finiteT
from .identities import IdentityParams, IdentityReport, verify_identity
from .analysis import (
    classify_regions,
    find_critical_aspect_T0,
    find_critical_curve,
    normalized_convergence_profile,
    zero_force_surface,
)

__all__ = [
    "BesselOrder", "BoxGeometry", "BracketError", "CasimirError", "DEFAULT_POLICY",
    "DomainError", "EmResult", "IdentityParams", "IdentityReport", "PrecisionPolicy",
    "QuadratureError", "SeriesNonConvergence", "SeriesValue", "ThermalState",
    "UnsupportedOrderError", "bessel_k", "classify_regions", "em_energy_T0",
    "em_energy_finiteT", "energy_T0", "energy_finiteT", "evaluate_box",
    "find_critical_aspect_T0", "find_critical_curve", "force", "force_T0",
    "force_finiteT", "free_energy", "normalized_convergence_profile",
    "parallel_plate", "verify_identity", "waveguide", "zero_force_surface",
]
