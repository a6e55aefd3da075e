"""Bit-level coding primitives used by the protocols and the classic baseline."""
from .arith import ac_decode, ac_encode, ac_read
from .bits import BitReader, BitString, BitWriter
from .elias import (
    decode_size,
    elias_gamma_decode,
    elias_gamma_encode,
    elias_gamma_read,
    encode_size,
    read_size,
)
from .enumerative import (
    binomial,
    decode_subset_fixed,
    encode_subset_fixed,
    rank_width,
    read_subset_fixed,
    subset_rank,
    subset_unrank,
)
from .gf2 import HashMatrix, find_weight_solutions, solve, syndrome, syndrome_of_support

__all__ = [
    "BitReader",
    "BitString",
    "BitWriter",
    "HashMatrix",
    "ac_decode",
    "ac_encode",
    "ac_read",
    "binomial",
    "decode_size",
    "decode_subset_fixed",
    "elias_gamma_decode",
    "elias_gamma_encode",
    "elias_gamma_read",
    "encode_size",
    "encode_subset_fixed",
    "find_weight_solutions",
    "rank_width",
    "read_size",
    "read_subset_fixed",
    "solve",
    "subset_rank",
    "subset_unrank",
    "syndrome",
    "syndrome_of_support",
]
