"""Height lower bounds and certificate assembly."""

from .certificate import (
    Certificate,
    SweepResult,
    VerificationReport,
    finram_certificate,
    grid_scan,
    optimize_theta,
    soundness_sweep,
    verify_certificate,
)
from .inequalities import (
    CriterionResult,
    ExcessInput,
    ExcessValue,
    excess_discriminant,
    garza_bound,
    garza_value,
    prefall_bound,
    relbocrit_bound,
    silverman_bound,
)
from .symbolic import Bound, PowerProduct, compare_bounds, power_bound

__all__ = [
    "Bound",
    "Certificate",
    "CriterionResult",
    "ExcessInput",
    "ExcessValue",
    "PowerProduct",
    "SweepResult",
    "VerificationReport",
    "compare_bounds",
    "excess_discriminant",
    "finram_certificate",
    "garza_bound",
    "garza_value",
    "grid_scan",
    "optimize_theta",
    "power_bound",
    "prefall_bound",
    "relbocrit_bound",
    "silverman_bound",
    "soundness_sweep",
    "verify_certificate",
]
