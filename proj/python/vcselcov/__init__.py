"""VCSEL-array optical downlink coverage simulator with Q-learning divergence control."""

from vcselcov._core import (
    Config,
    __version__,
    calibrate_n0,
    coverage,
    exhaustive,
    load_config,
    parse_config,
    train,
)

__all__ = [
    "Config",
    "__version__",
    "calibrate_n0",
    "coverage",
    "exhaustive",
    "load_config",
    "parse_config",
    "train",
]
