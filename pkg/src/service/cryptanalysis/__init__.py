"""
Cryptanalysis Module.

- dlp: brute-force and baby-step giant-step discrete logarithm solvers
- band_attack: transcript-only key recovery on unitriangular platforms
"""

from src.service.cryptanalysis.band_attack import (
    ExponentExtractionError,
    UnsupportedPlatformError,
    break_many,
    break_protocol1_ut,
    break_protocol2_ut,
    break_transcript,
    extract_exponent_ut,
)
from src.service.cryptanalysis.dlp import (
    DlpInstance,
    DlpResult,
    OperationCounter,
    dlp_bruteforce,
    dlp_bsgs,
)

__all__ = [
    'DlpInstance',
    'DlpResult',
    'ExponentExtractionError',
    'OperationCounter',
    'UnsupportedPlatformError',
    'break_many',
    'break_protocol1_ut',
    'break_protocol2_ut',
    'break_transcript',
    'dlp_bruteforce',
    'dlp_bsgs',
    'extract_exponent_ut',
]
