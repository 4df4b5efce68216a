"""Linearized optomechanics with parametrically driven cavities.

Frequency-domain scattering and susceptibility matrices, Bogoliubov
(dressed-mode) bookkeeping, stability analysis, backaction-limited cooling
and microwave-optics transduction design.
"""

from .config import ScenarioConfig, load_config, validate_config
from .cooling import (
    CoolingResult,
    InjectedSqueezingParams,
    backaction_occupancy,
    backaction_spectrum,
    cooling_system,
    injected_squeezing_params,
    is_min_squeezing,
    min_injected_squeezing,
    optimal_pd_cooling,
    pd_cooling_detuning,
    quantum_backaction_limit,
    resonant_bath_occupation,
)
from .errors import (
    ConfigError,
    DegenerateRouthError,
    DiagonalizationError,
    NoPhysicalSqueezingError,
    NotSqueezeLikeError,
    OptomechError,
    QuadratureError,
    SingularMatrixError,
    UnstableSystemError,
    ZeroReflectionError,
    ZeroTransmissionError,
)
from .scenarios import run_preset, run_scenario
from .squeeze import (
    EffectiveSqueezing,
    SqueezeParams,
    bogoliubov_from_drive,
    drive_from_squeeze,
    effective_squeezing,
    lab_from_dressed,
    squeeze_matrix,
)
from .stability import (
    StabilityReport,
    cooling_instability_threshold,
    eigenvalue_stable,
    perturbative_mech_eigenvalue,
    routh_hurwitz_stable,
    stability_report,
    transducer_instability_sufficient,
)
from .system import (
    CavityParams,
    DressedParams,
    Mode,
    Spectrum,
    SystemParams,
    build_coupling_matrix,
    build_dressed_matrix,
    build_dynamical_matrix,
    dressed_params,
    scattering,
    susceptibility,
)
from .transduction import (
    BathSpec,
    NoiseBudget,
    TransducerDesign,
    added_noise,
    added_noise_lower_bound,
    conjugate_ratio,
    conversion_efficiency,
    db_to_squeeze,
    design_transducer,
    gamma_rate,
    impedance_match_modified,
    lorentzian_eta,
    noise_budget,
    optimal_output_squeeze_phase,
    optimal_pd_transduction,
    optimal_teleport_phases,
    teleportation_noise,
)

__version__ = "0.1.0"
