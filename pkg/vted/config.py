"""Runtime settings, read from the environment with explicit overrides on top."""
import os
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

_ENVIRONMENT = {
    "jobs": "VTED_JOBS",
    "timeout": "VTED_TIMEOUT",
    "max_expansions": "VTED_MAX_EXPANSIONS",
    "max_tree_size": "VTED_MAX_TREE_SIZE",
}


class Settings(BaseModel):
    """Limits and parallelism shared by the parsers, the searches and the CLI.

    >>> Settings(jobs=4).jobs
    4
    """

    model_config = ConfigDict(frozen=True)

    max_tree_size: int = Field(default=10_000, ge=1)
    max_expansions: int = Field(default=10_000_000, ge=1)
    # Seconds; None disables the wall-clock limit.
    timeout: Optional[float] = Field(default=60.0, gt=0)
    jobs: int = Field(default=1, ge=1)

    @classmethod
    def from_env(cls, **overrides: Any) -> "Settings":
        """Build settings from the VTED_* environment variables. Keyword arguments that are not
        None take precedence over the environment.
        """
        values: dict[str, Any] = {}
        for field, variable in _ENVIRONMENT.items():
            raw = os.environ.get(variable)
            if raw is not None and raw.strip():
                values[field] = raw.strip()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls.model_validate(values)
