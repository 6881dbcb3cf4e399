"""Sharp log-Sobolev and cubic Sobolev constants on discrete cycles."""

from ._core import (
    CyclelsiError,
    HypercontractivityReport,
    OptimizerConfig,
    RatioMinResult,
    cubic_deficit,
    dirichlet_form,
    entropy_of_square,
    estimate_alpha,
    estimate_alpha_product,
    estimate_cubic_constant,
    heat,
    hypercontractivity_check,
    l2_coercivity_constant,
    majorant_deficit,
    minimal_admissible_time,
    product_gap,
    scalar_deficit,
    sharp_constant,
    spectral_gap,
    spectral_gap_numeric,
    sup_norm_constant,
    variance,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
