"""
Configuration Package for hdlearn

Handles both environment-based configuration and YAML-based configuration.
"""

from hdlearn.config_parser.env import Config
from hdlearn.config_parser.manager import (
    ClassificationConfig,
    ClusteringConfig,
    ConfigManager,
    GraphConfig,
    HDLearnConfig,
    RegressionConfig,
)

__all__ = [
    "Config",
    "ConfigManager",
    "HDLearnConfig",
    "ClassificationConfig",
    "ClusteringConfig",
    "RegressionConfig",
    "GraphConfig",
]
