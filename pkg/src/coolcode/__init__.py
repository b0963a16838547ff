"""Thermal-aware bus codes: cooling, low-power and error-correcting constructions with brute-force verifiers."""

from .cooling import (
    CodesetFamily,
    CoolingScheme,
    load_worked_example,
    partial_spread,
    perfect_cooling_code,
    spread,
    spread_cooling_code,
)
from .core import BinaryMatrix, Gf2mField, GfqField, Word
from .oracle import VerificationReport, verify_cooling

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "CodesetFamily",
    "CoolingScheme",
    "Gf2mField",
    "GfqField",
    "VerificationReport",
    "Word",
    "load_worked_example",
    "partial_spread",
    "perfect_cooling_code",
    "spread",
    "spread_cooling_code",
    "verify_cooling",
]
