"""Deformed fermion oscillator models: spectra, Fock representations,
Jackson derivatives, generalized Fermi-Dirac series and gas thermodynamics.
"""

from .fdseries import SeriesValue, f_gen, h_gen, standard_fd
from .fock import (
    AlgebraReport,
    OperatorSet,
    build_fn_multimode,
    build_single_mode,
    build_state,
    check_algebra,
    ckn_undeformed_residuals,
    covariance_check,
    haar_unitary,
    spectrum_of_number_operator,
)
from .jackson import (
    jd_operator_identity_residual,
    jd_polynomial,
    pvc_jd_value,
    vpjc_jd_value,
)
from .models import (
    Model,
    NonNormalizableStateError,
    SeriesConvergenceError,
    SingularPointError,
)
from .spectra import (
    DeformedSpectrum,
    arik_coon_basic,
    basic_factorial,
    basic_number,
    ckn_spectrum,
    fn_spectrum,
    pvc_basic,
    spectrum,
    vpjc_basic,
    vpjc_recurrence_residual,
)
from .thermo import (
    EosPoint,
    TraceAverages,
    ckn_distribution,
    ckn_eos,
    ckn_mu_lowT,
    ckn_mu_numeric,
    exact_trace_occupation,
    fn_distribution,
    fn_eos,
    fn_mu_lowT,
    fn_mu_numeric,
    fn_pvc_comparison,
    occupation_ratio_solve,
    pvc_distribution,
    pvc_eos,
    q1_limit_distribution,
    virial_coefficients,
    vpjc_distribution,
    vpjc_zero_crossing,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraReport",
    "DeformedSpectrum",
    "EosPoint",
    "Model",
    "NonNormalizableStateError",
    "OperatorSet",
    "SeriesConvergenceError",
    "SeriesValue",
    "SingularPointError",
    "TraceAverages",
    "arik_coon_basic",
    "basic_factorial",
    "basic_number",
    "build_fn_multimode",
    "build_single_mode",
    "build_state",
    "check_algebra",
    "ckn_distribution",
    "ckn_eos",
    "ckn_mu_lowT",
    "ckn_mu_numeric",
    "ckn_spectrum",
    "ckn_undeformed_residuals",
    "covariance_check",
    "exact_trace_occupation",
    "f_gen",
    "fn_distribution",
    "fn_eos",
    "fn_mu_lowT",
    "fn_mu_numeric",
    "fn_pvc_comparison",
    "fn_spectrum",
    "h_gen",
    "haar_unitary",
    "jd_operator_identity_residual",
    "jd_polynomial",
    "occupation_ratio_solve",
    "pvc_basic",
    "pvc_distribution",
    "pvc_eos",
    "pvc_jd_value",
    "q1_limit_distribution",
    "spectrum",
    "spectrum_of_number_operator",
    "standard_fd",
    "virial_coefficients",
    "vpjc_basic",
    "vpjc_distribution",
    "vpjc_jd_value",
    "vpjc_recurrence_residual",
    "vpjc_zero_crossing",
]
