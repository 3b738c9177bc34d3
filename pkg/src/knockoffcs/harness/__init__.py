from .config import SweepConfig, load_config, parse_config
from .plots import emit_plots
from .runner import RunRecord, run_sweep, run_trial, write_outputs

__all__ = [
    "SweepConfig",
    "RunRecord",
    "emit_plots",
    "load_config",
    "parse_config",
    "run_sweep",
    "run_trial",
    "write_outputs",
]
