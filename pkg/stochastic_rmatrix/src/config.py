"""
Configuration management for the stochastic R-matrix engine
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings:
    """Run settings; command-line flags override these."""

    def __init__(self):
        # Random evaluation
        self.seed: int = int(os.getenv("RKQ_SEED", "20240"))
        self.points: int = int(os.getenv("RKQ_POINTS", "3"))
        self.bound: int = int(os.getenv("RKQ_BOUND", "20"))
        self.max_resample: int = int(os.getenv("RKQ_MAX_RESAMPLE", "25"))

        # Execution
        self.jobs: int = int(os.getenv("RKQ_JOBS", "1"))
        self.log_level: str = os.getenv("RKQ_LOG_LEVEL", "INFO").upper()

        # Simulation
        self.sim_events: int = int(os.getenv("RKQ_SIM_EVENTS", "100000"))

        # Paths
        self.report_dir: Path = Path(os.getenv("RKQ_REPORT_DIR", "./reports"))

# Factory function to create settings
def load_config() -> Settings:
    """Load run configuration."""
    return Settings()

# Global settings instance
settings = Settings()
