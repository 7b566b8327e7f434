from .config import ConfigError, ParseError, RunConfig, Sweep, ValidationError, parse_config
from .output import emit_csv, emit_svg, read_csv
from .simulate import (
    Trajectory,
    ValidationReport,
    figure_config,
    figure_parameter_sets,
    run_simulation,
    simulate_params,
    validate_suite,
)
