"""Directional Gaussian wave-packet wavelets.

Closed-form space-domain and frequency-domain evaluation of an exact
wave-equation solution used as a directional mother wavelet, a 2D continuous
wavelet transform built on the closed-form spectrum, quadrature-based
uncertainty metrics, and the physical source fields the packet arises from.
"""

from gwpack.cwt import (
    AdmissibilityResult,
    InsufficientCoverageError,
    TransformCoefficients,
    admissibility_2d,
    admissibility_closed_form_3d,
    admissibility_nd,
    coverage_map,
    essential_band,
    family_member,
    family_spectrum,
    forward_cwt,
    inverse_cwt,
    log_spaced_scales,
    uniform_angles,
)
from gwpack.fields import (
    ComplexField,
    GridSpec,
    field_fft,
    field_ifft,
    read_field_csv,
    write_field_csv,
    write_pgm,
)
from gwpack.metrics import (
    MomentReport,
    SweepResult,
    centers_and_widths,
    full_report,
    l2_norm,
    resolving_powers,
    run_sweep,
    sweep_rows,
    uncertainty_products,
)
from gwpack.packet import (
    PacketParams,
    evaluate_beam,
    evaluate_beam_cutoff_limit,
    evaluate_gwp,
    evaluate_morlet_limit,
    evaluate_morlet_reference,
    evaluate_paraxial_time_limit,
    fourier_gwp,
    s_value,
    sample_field,
    theta,
)
from gwpack.sources import (
    advanced_field,
    beam_superposition_oracle,
    composite_pulse,
    elementary_pulse,
    is_singular,
    regularized_sum,
    retarded_field,
    spectral_density,
    spectral_transform,
)
from gwpack.special import bessel_k, sqrt_pos_re
from gwpack.verification import (
    CriterionResult,
    all_criteria,
    run_all,
    run_criterion,
    synthetic_test_image,
)

__all__ = [
    "AdmissibilityResult",
    "ComplexField",
    "CriterionResult",
    "GridSpec",
    "InsufficientCoverageError",
    "MomentReport",
    "PacketParams",
    "SweepResult",
    "TransformCoefficients",
    "admissibility_2d",
    "admissibility_closed_form_3d",
    "admissibility_nd",
    "advanced_field",
    "all_criteria",
    "beam_superposition_oracle",
    "bessel_k",
    "centers_and_widths",
    "composite_pulse",
    "coverage_map",
    "elementary_pulse",
    "essential_band",
    "evaluate_beam",
    "evaluate_beam_cutoff_limit",
    "evaluate_gwp",
    "evaluate_morlet_limit",
    "evaluate_morlet_reference",
    "evaluate_paraxial_time_limit",
    "family_member",
    "family_spectrum",
    "field_fft",
    "field_ifft",
    "forward_cwt",
    "fourier_gwp",
    "full_report",
    "inverse_cwt",
    "is_singular",
    "l2_norm",
    "log_spaced_scales",
    "read_field_csv",
    "regularized_sum",
    "resolving_powers",
    "retarded_field",
    "run_all",
    "run_criterion",
    "run_sweep",
    "s_value",
    "sample_field",
    "spectral_density",
    "spectral_transform",
    "sqrt_pos_re",
    "sweep_rows",
    "synthetic_test_image",
    "theta",
    "uncertainty_products",
    "uniform_angles",
    "write_field_csv",
    "write_pgm",
]

__version__ = "0.1.0"
