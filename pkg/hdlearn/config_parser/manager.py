"""
Configuration Management for hdlearn

Handles YAML-based configuration of model hyperparameters, output and
general run settings.
"""

import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from hdlearn.config_parser.env import Config as EnvConfig
from hdlearn.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass
class ClassificationConfig:
    """Hyperparameters of the classifier and its CV/selection/tuning runs."""
    dim: int = 10000
    levels: int = 10
    retrain_epochs: int = 0
    folds: int = 5
    direction: str = "backward"
    threshold: float = 0.0
    per_feature_ranges: bool = False
    grid_dims: List[int] = field(default_factory=lambda: [1000, 10000])
    grid_levels: List[int] = field(default_factory=lambda: [2, 10])
    grid_retrain: List[int] = field(default_factory=lambda: [0])
    quantum: bool = False
    shots: int = 0


@dataclass
class ClusteringConfig:
    k: int = 3
    max_iterations: int = 100
    dim: int = 10000
    levels: int = 10


@dataclass
class RegressionConfig:
    dim: int = 4096
    k: int = 8
    learning_rate: float = 0.02
    epochs: int = 50
    temperature: float = 0.01
    quantized: bool = False
    cluster_sample: int = 1000
    cluster_iterations: int = 20


@dataclass
class GraphConfig:
    dim: int = 10000
    directed: bool = False
    rounds: int = 10


@dataclass
class HDLearnConfig:
    """Main configuration for hdlearn."""
    classification: ClassificationConfig
    clustering: ClusteringConfig
    regression: RegressionConfig
    graph: GraphConfig
    output: Dict[str, Any]
    general: Dict[str, Any]


SECTIONS = {
    "classification": ClassificationConfig,
    "clustering": ClusteringConfig,
    "regression": RegressionConfig,
    "graph": GraphConfig,
}


class ConfigManager:
    """Manages YAML configuration for hdlearn."""

    DEFAULT_CONFIG_FILE = "configs/default.yml"

    @staticmethod
    def create_default_config() -> HDLearnConfig:
        """Create default configuration."""
        return HDLearnConfig(
            classification=ClassificationConfig(),
            clustering=ClusteringConfig(),
            regression=RegressionConfig(),
            graph=GraphConfig(),
            output={
                "print_config": True,
                "save_results": False,
                "output_file": "hdlearn_results.json",
                "table_format": "github",
            },
            general={
                "seed": EnvConfig.SEED,
                "workers": EnvConfig.WORKERS,
                "log_level": EnvConfig.log_level(),
            },
        )

    @staticmethod
    def save_default_config(file_path: str = None) -> str:
        """Save default configuration to YAML file."""
        if file_path is None:
            file_path = ConfigManager.DEFAULT_CONFIG_FILE

        config_dict = asdict(ConfigManager.create_default_config())
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, "w") as f:
            yaml.dump(config_dict, f, default_flow_style=False, indent=2, sort_keys=False)

        return file_path

    @staticmethod
    def load_config(file_path: Optional[str] = None) -> HDLearnConfig:
        """Load configuration from YAML file.

        ``file_path`` defaults to ``$HDLEARN_CONFIG``, then to the default file.
        A missing file yields the built-in defaults; a malformed one is an error.
        """
        if file_path is None:
            file_path = EnvConfig.CONFIG_FILE or ConfigManager.DEFAULT_CONFIG_FILE

        if not os.path.exists(file_path):
            logger.warning(f"Config file {file_path} not found; using built-in defaults")
            return ConfigManager.create_default_config()

        try:
            with open(file_path, "r") as f:
                config_dict = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Cannot parse {file_path}: {e}")

        if not isinstance(config_dict, dict):
            raise ConfigurationError(f"{file_path} must contain a mapping at the top level")
        config = ConfigManager._dict_to_config(config_dict)
        logger.debug(f"Loaded configuration from {file_path}")
        return config

    @staticmethod
    def _dict_to_config(config_dict: Dict[str, Any]) -> HDLearnConfig:
        """Convert dictionary to HDLearnConfig; absent keys keep their defaults."""
        defaults = ConfigManager.create_default_config()
        sections = {}
        for name, section_cls in SECTIONS.items():
            values = config_dict.get(name) or {}
            try:
                sections[name] = section_cls(**values)
            except TypeError as e:
                raise ConfigurationError(f"Invalid '{name}' section: {e}")

        output = dict(defaults.output)
        output.update(config_dict.get("output") or {})
        general = dict(defaults.general)
        general.update(config_dict.get("general") or {})
        return HDLearnConfig(output=output, general=general, **sections)

    @staticmethod
    def validate_config(config: HDLearnConfig) -> List[str]:
        """Validate configuration and return list of issues."""
        issues = []

        for name in ("classification", "clustering", "regression", "graph"):
            section = getattr(config, name)
            if section.dim < 2:
                issues.append(f"{name}.dim must be at least 2")

        if config.classification.levels < 2:
            issues.append("classification.levels must be at least 2")
        if config.classification.folds < 2:
            issues.append("classification.folds must be at least 2")
        if config.classification.direction not in ("backward", "forward"):
            issues.append(f"Unknown selection direction: {config.classification.direction}")
        if config.classification.shots < 0:
            issues.append("classification.shots must be >= 0")
        if config.clustering.k < 2:
            issues.append("clustering.k must be at least 2")
        if config.regression.learning_rate < 0:
            issues.append("regression.learning_rate must not be negative")
        if config.regression.temperature <= 0:
            issues.append("regression.temperature must be positive")
        if config.graph.rounds < 0:
            issues.append("graph.rounds must be >= 0")
        if int(config.general.get("workers", 1)) < 1:
            issues.append("general.workers must be at least 1")

        # Check output directory
        output_file = config.output.get("output_file")
        if config.output.get("save_results") and output_file:
            output_dir = os.path.dirname(output_file)
            if output_dir and not os.path.exists(output_dir):
                issues.append(f"Output directory does not exist: {output_dir}")

        return issues

    @staticmethod
    def resolve(config: HDLearnConfig, section: str, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Section values with explicit overrides (non-None) applied, plus the seed."""
        if section not in SECTIONS:
            raise ConfigurationError(f"Unknown config section: {section}")
        resolved = asdict(getattr(config, section))
        resolved["seed"] = int(config.general.get("seed", EnvConfig.SEED))
        for key, value in (overrides or {}).items():
            if value is not None:
                resolved[key] = value
        return resolved
