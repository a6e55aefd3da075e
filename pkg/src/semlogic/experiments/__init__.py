from .config import ExperimentConfig, load_config
from .demo import run_demo
from .emit import emit, to_csv, to_json
from .harness import (
    LESSMORE_FIELDS,
    MISINFO_FIELDS,
    RESULT_FIELDS,
    ResultRow,
    run_bounds,
    run_simulation,
)

__all__ = [
    "ExperimentConfig",
    "LESSMORE_FIELDS",
    "MISINFO_FIELDS",
    "RESULT_FIELDS",
    "ResultRow",
    "emit",
    "load_config",
    "run_bounds",
    "run_demo",
    "run_simulation",
    "to_csv",
    "to_json",
]
