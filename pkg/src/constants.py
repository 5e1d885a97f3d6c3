"""Constants (env-overridable)."""

from __future__ import annotations

import os

# Transcript wire format
TRANSCRIPT_MAGIC: bytes = b"NKEX"
TRANSCRIPT_VERSION: int = 0x01

# Platform header family tags
FAMILY_TAG_UNITRIANGULAR: int = 0x01
FAMILY_TAG_WREATH: int = 0x02

# Protocol tags
PROTOCOL_TAG_I: int = 0x01
PROTOCOL_TAG_II: int = 0x02

# u32 header params, u16 counts
MAX_HEADER_PARAM: int = 2**32 - 1
MAX_WIRE_COUNT: int = 2**16 - 1

# Wreath elements are encoded one byte per coordinate
MAX_WREATH_PRIME: int = 255

# Sampling / search budgets
DEFAULT_SAMPLES: int = int(os.getenv("NKEX_SAMPLES", "500"))
WITNESS_BUDGET: int = int(os.getenv("NKEX_WITNESS_BUDGET", "2000"))
EXHAUSTIVE_LIMIT: int = int(os.getenv("NKEX_EXHAUSTIVE_LIMIT", "4096"))
# exhaustive witness scans walk all pairs, so keep this one small
EXHAUSTIVE_WITNESS_LIMIT: int = int(os.getenv("NKEX_EXHAUSTIVE_WITNESS_LIMIT", "100"))

# Session runner
SESSION_WORKERS: int = int(os.getenv("NKEX_SESSION_WORKERS", "1"))

# CLI defaults
TRANSCRIPT_PATH: str = os.getenv("NKEX_TRANSCRIPT_PATH", "transcript.nkex")
LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
