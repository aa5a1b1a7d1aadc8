"""urtest: bootstrap unit root tests robust to time-varying errors."""
from .bootstrap import BootstrapConfig, BootstrapResult, run_bootstrap
from .series import ObservedSeries, TrendSpec
