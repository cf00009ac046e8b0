from pydantic_settings import BaseSettings, SettingsConfigDict

class Config(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="PM_",
        extra="ignore",
        case_sensitive=False,
    )

    # PM_TIME_BUDGET_SECS: default exact-solver timeout for CLI calls
    time_budget_secs: float = 30.0
    jobs: int = 1
    deterministic: bool = True
    seed: int = 0
    log_level: str = "WARNING"

def get_config() -> Config:
    return Config()
