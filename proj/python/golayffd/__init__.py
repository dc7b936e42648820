"""Golay [23,12,7] codec, FuzzyFind index and question templates."""

from ._core import (
    ContractError,
    FormatError,
    FuzzyIndex,
    decode,
    default_template,
    derive_template,
    encode,
    encode_record,
    entropy,
    hamming,
    information_gain,
    neighborhood,
    syndrome,
)

__all__ = [
    "ContractError",
    "FormatError",
    "FuzzyIndex",
    "decode",
    "default_template",
    "derive_template",
    "encode",
    "encode_record",
    "entropy",
    "hamming",
    "information_gain",
    "neighborhood",
    "syndrome",
]
