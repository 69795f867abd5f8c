"""Casimir forces in transmission-line circuits.

Two equivalent routes are implemented and cross-checked: the scattering
route (cavity matrices and mode densities, module qed) and the circuit
route (noise currents plus Kirchhoff laws, module fdt).  Forces are
evaluated on the positive imaginary frequency axis (module force), where
passive reflections are real and the integrand decays exponentially.
"""

from .circuit import (
    Capacitor,
    ComplexImmittance,
    ImpedanceExpr,
    Inductor,
    LineSpec,
    Open,
    Parallel,
    Resistor,
    Series,
    Short,
    decompose_parallel_rx,
    eval_impedance,
    eval_impedance_imaginary,
    format_netlist,
    parse_netlist,
)
from .constants import HBAR, K_B
from .errors import (
    InvariantViolationError,
    LossyMirrorError,
    NetlistError,
    PassivityError,
    QuadratureError,
    ResonanceError,
)
from .fdt import (
    CavityWaveAmplitudes,
    NoiseSpectrum,
    bose_weight,
    cavity_density_closed_form,
    cavity_wave_currents,
    charge_and_current_spectrum,
    energy_density_dual,
    fdt_energy_density_integrand,
    input_spectrum_line,
    input_spectrum_resistor,
    nyquist_current_spectrum,
)
from .force import (
    BoundaryPair,
    ForceResult,
    QuadratureConfig,
    SignSample,
    force_finite_temperature,
    force_zero_temperature,
    integrate_semi_infinite,
    mode_sum_oracle,
    reference_force,
    sign_profile,
)
from .mirrors import (
    Mirror,
    MirrorFlavor,
    energy_identity_residual,
    reflect_embedded,
    reflect_termination,
    reflection_imaginary_axis,
)
from .qed import (
    ScatterMatrices,
    ThermalSpec,
    cavity_density_integrand,
    force_integrand_real_axis,
    free_density_integrand,
    scattering_matrices,
    thermal_weight,
)

__version__ = "0.1.0"
