"""Physical-layer-security metrics for a pinching-antenna wiretap link.

A single radiating point on a dielectric waveguide serves a legitimate
node while an eavesdropper listens from its own service area.  Both
nodes are uniformly placed in rectangles beside the waveguide, and the
antenna activates directly opposite the legitimate node, so every
secrecy quantity reduces to functions of the two lateral offsets.

The package exposes the received-SNR distribution induced by that
geometry, closed-form-driven quadrature for the average secrecy
capacity, the probability of strictly positive secrecy capacity, and
the secrecy outage probability, plus Monte-Carlo estimators used for
cross-validation, a config-driven sweep engine, and a CLI.
"""

from .geometry import (
    SPEED_OF_LIGHT_M_S,
    NodeGeometry,
    Position3D,
    SystemConfig,
    channel_coefficient,
    db_to_linear,
    guided_wavelength,
    linear_to_db,
    reference_pathloss,
    snr_from_offset,
    waveguide_phase,
    wavelength,
)
from .quadrature import (
    QuadratureConvergenceError,
    QuadratureResult,
    integrate,
    integrate_sqrt_endpoint,
)
from .distribution import SnrDistribution
from .metrics import (
    CaseLimits,
    SecrecyRate,
    WiretapScenario,
    average_sc,
    case_limits,
    secrecy_capacity,
    sop,
    spsc,
    spsc_case_form,
)
from .montecarlo import (
    McEstimate,
    channel_snr_mismatch,
    estimate_asc,
    estimate_sop,
    estimate_spsc,
)
from .sweep import (
    ConfigError,
    FIGURE_CONFIG_NAMES,
    SweepResult,
    SweepRow,
    SweepSpec,
    ValidationReport,
    build_scenario,
    emit_csv,
    expand_curves,
    load_packaged_config,
    parse_config,
    run_figures,
    run_sweep,
    validate,
    write_figure_svg,
)

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT_M_S",
    "CaseLimits",
    "ConfigError",
    "FIGURE_CONFIG_NAMES",
    "McEstimate",
    "NodeGeometry",
    "Position3D",
    "QuadratureConvergenceError",
    "QuadratureResult",
    "SecrecyRate",
    "SnrDistribution",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "SystemConfig",
    "ValidationReport",
    "WiretapScenario",
    "average_sc",
    "build_scenario",
    "case_limits",
    "channel_coefficient",
    "channel_snr_mismatch",
    "db_to_linear",
    "emit_csv",
    "estimate_asc",
    "estimate_sop",
    "estimate_spsc",
    "expand_curves",
    "guided_wavelength",
    "integrate",
    "integrate_sqrt_endpoint",
    "linear_to_db",
    "load_packaged_config",
    "parse_config",
    "reference_pathloss",
    "run_figures",
    "run_sweep",
    "secrecy_capacity",
    "snr_from_offset",
    "sop",
    "spsc",
    "spsc_case_form",
    "validate",
    "waveguide_phase",
    "wavelength",
    "write_figure_svg",
    "__version__",
]
