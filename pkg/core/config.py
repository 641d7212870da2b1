"""
Configuration management for the DLO simulator
"""
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_prefix="DLO_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Settings
    app_title: str = Field("Spline DLO Simulator")
    debug: bool = Field(False)
    log_level: str = Field("INFO")

    # Run registry (SQLite)
    database_url: str = Field("sqlite:///./data/dlo_runs.db")
    record_runs: bool = Field(False)

    # Harness execution
    harness_workers: int = Field(1, ge=1)
    serial_timing: bool = Field(True)
    benchmark_warmup_steps: int = Field(10, ge=0)
    stability_probe_duration: float = Field(0.5, gt=0)


# Global settings instance
settings = Settings()
