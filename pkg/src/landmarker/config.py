"""Application configuration using Pydantic Settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables (prefix ``LANDMARKER_``)."""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="LANDMARKER_", extra="ignore"
    )

    # Logging
    log_level: str = "INFO"
    log_format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    # Compute
    device: str = "cpu"
    num_workers: int = 0  # DataLoader workers; 0 loads in the training thread
    deterministic: bool = True

    # Reproducibility
    default_seed: int = 0

    # Run directory artifact names
    config_file: str = "config.json"
    history_file: str = "history.csv"
    checkpoint_name_best: str = "best.ckpt"
    checkpoint_name_last: str = "last.ckpt"


settings = Settings()
