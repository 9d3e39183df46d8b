"""Runtime plumbing shared by the lab: settings, YAML defaults, run logs, artifacts."""

from core_runtime.config_loader import load_yaml_defaults
from core_runtime.run_logger import RunLogger, get_run_logger
from core_runtime.settings import Settings

__all__ = ["RunLogger", "Settings", "get_run_logger", "load_yaml_defaults"]
