"""Number fields, their elements, heights and power tests."""

from .field import (
    FieldElement,
    NumberField,
    certify_irreducible,
    min_poly_over_Q,
    new_field,
    rational_field,
)
from .height import (
    HeightEstimate,
    archimedean_log_abs,
    embeddings,
    height,
    height_is_zero,
    height_of_minpoly,
)
from .powers import PowerTest, is_lth_power, local_obstruction
from .roots import RootDisk, isolate_roots

__all__ = [
    "FieldElement",
    "HeightEstimate",
    "NumberField",
    "PowerTest",
    "RootDisk",
    "archimedean_log_abs",
    "certify_irreducible",
    "embeddings",
    "height",
    "height_is_zero",
    "height_of_minpoly",
    "is_lth_power",
    "isolate_roots",
    "local_obstruction",
    "min_poly_over_Q",
    "new_field",
    "rational_field",
]
