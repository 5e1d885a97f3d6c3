"""
Run configuration.

Values come from explicit CLI arguments first, then NKEX_* environment
variables, then the defaults below. Invalid combinations are rejected here,
before any group arithmetic starts.
"""

from __future__ import annotations

from enum import Enum
import logging
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.constants import DEFAULT_SAMPLES, SESSION_WORKERS, TRANSCRIPT_PATH
from src.models.models import PlatformDescriptor, ProtocolKind

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Command(str, Enum):
    VERIFY = "verify"
    KEX = "kex"
    ATTACK = "attack"
    CERTIFY = "certify"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class Config(BaseSettings):
    """Validated settings for one CLI invocation."""

    model_config = SettingsConfigDict(env_prefix="NKEX_", extra="ignore", frozen=True)

    command: Command
    platform: Optional[str] = None
    protocol: Optional[ProtocolKind] = None
    n: Optional[int] = Field(None, ge=1)
    seed: int = 0
    samples: int = Field(DEFAULT_SAMPLES, ge=1)
    exhaustive: bool = False
    engel_k: Optional[int] = Field(None, ge=1)
    output_format: OutputFormat = OutputFormat.TEXT
    output: Optional[Path] = None
    transcript: Path = Path(TRANSCRIPT_PATH)
    workers: int = Field(SESSION_WORKERS, ge=1)
    log_level: str = "WARNING"

    @field_validator("platform")
    @classmethod
    def validate_platform(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        try:
            return PlatformDescriptor.parse(v).spec
        except ValueError as e:
            # m < 2, composite moduli, p > 255
            raise ValueError(f"invalid platform {v!r}: {e}") from e

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {LOG_LEVELS}, got {v!r}")
        return level

    @model_validator(mode="after")
    def validate_combination(self) -> "Config":
        if self.command is not Command.ATTACK and self.platform is None:
            raise ValueError(f"'{self.command.value}' needs --platform")

        if self.command is Command.KEX:
            cls_ = self.descriptor.claimed_class
            protocol = self.protocol or ProtocolKind.I
            n = cls_ if protocol is ProtocolKind.I else cls_ - 1
            if protocol is ProtocolKind.I and n < 2:
                raise ValueError(f"Protocol I needs a platform of class n >= 2, {self.platform} has class {cls_}")
            if protocol is ProtocolKind.II and n < 1:
                raise ValueError(f"Protocol II needs a platform of class n + 1 >= 2, {self.platform} has class {cls_}")
            if self.n is not None and self.n != n:
                raise ValueError(
                    f"--n {self.n} disagrees with {self.platform}: Protocol {protocol.name} on class {cls_} means n = {n}"
                )
        return self

    @property
    def descriptor(self) -> Optional[PlatformDescriptor]:
        return PlatformDescriptor.parse(self.platform) if self.platform else None

    @property
    def session_protocol(self) -> ProtocolKind:
        return self.protocol or ProtocolKind.I

    @property
    def session_n(self) -> int:
        """n implied by the platform class and the protocol."""
        cls_ = self.descriptor.claimed_class
        return cls_ if self.session_protocol is ProtocolKind.I else cls_ - 1

    @property
    def log_level_value(self) -> int:
        return getattr(logging, self.log_level)
