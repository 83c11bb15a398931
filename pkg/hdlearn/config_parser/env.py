"""Environment configuration for hdlearn."""

import os
from typing import Optional
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Process-wide defaults read from the environment (or a .env file)."""

    # Reproducibility
    SEED: int = int(os.getenv("HDLEARN_SEED", "42"))

    # Thread pool size for folds, grid cells and selection candidates
    WORKERS: int = int(os.getenv("HDLEARN_WORKERS", "1"))
    DEBUG: bool = os.getenv("HDLEARN_DEBUG", "false").lower() == "true"

    # YAML file used when --config is not given
    CONFIG_FILE: Optional[str] = os.getenv("HDLEARN_CONFIG")

    @classmethod
    def log_level(cls) -> str:
        return "DEBUG" if cls.DEBUG else "INFO"

    @classmethod
    def as_dict(cls) -> dict:
        """Environment-derived values, as printed with the resolved config."""
        return {
            "seed": cls.SEED,
            "workers": cls.WORKERS,
            "debug": cls.DEBUG,
            "config_file": cls.CONFIG_FILE,
        }
