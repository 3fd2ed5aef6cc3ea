"""Three-wave mixing rainbows in a uniaxial crystal.

Phase-matching geometry and zeropoint-seeded cross sections for spontaneous
down conversion and its up-conversion counterpart.
"""
from .dispersion import (
    BBO,
    DispersionModel,
    Direction,
    DomainError,
    SellmeierSet,
    n_extraordinary,
    n_ordinary,
    wavevector_magnitude,
)
from .phasematch import (
    CrystalSetup,
    ModeSpec,
    PhaseMatchSolution,
    Polarization,
    Process,
    longitudinal_mismatch,
    optic_axis_angle,
    refract_exit,
    solve,
    solve_spdc_cone,
    solve_spuc_arc,
)
from .coupledmode import (
    CouplingConstants,
    GainResult,
    ModePairState,
    effective_mismatch,
    linearized_gain,
    ode_oracle,
    parametric_gain,
    sinc,
)
from .radiometry import (
    CrossSection,
    UndefinedRatioError,
    ZPFSpectrum,
    mode_sum_cross_section,
    scan_rainbow,
    spuc_spdc_ratio,
)
from .tables import RainbowRow, RainbowTable

__version__ = "0.1.0"
