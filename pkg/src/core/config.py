"""
Application settings loaded from .env via pydantic-settings.
"""
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

PACKAGED_DATA_DIR = Path(__file__).parent.parent / "data" / "circuits"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Dense truth tables are materialized, so n + m is capped
    TABLE_WIDTH_LIMIT: int = 24

    # Peak-mass threshold for spectral verification (4/pi^2 lower bound)
    SPECTRAL_THRESHOLD: float = 0.405

    # Bundled circuit directory; empty means the copy shipped inside the package
    DATA_DIR: str = ""

    # Exact search defaults
    SEARCH_MAX_TOFFOLI: int = 2
    SEARCH_MAX_GATES: int = 32
    SEARCH_MAX_STATES: int = 2_000_000
    SEARCH_WORKERS: int = 1
    SEARCH_CERTIFY_MAX_BITS: int = 3

    # linear_period_scan enumerates 2^(n*n) matrices
    LINEAR_SCAN_MAX_WIDTH: int = 4

    LOG_LEVEL: str = "WARNING"

    def data_dir(self) -> Path:
        return Path(self.DATA_DIR) if self.DATA_DIR else PACKAGED_DATA_DIR


settings = Settings()
