from __future__ import annotations

from ..errors import DomainError, TruncatedStream
from .bits import BitReader, BitString


def elias_gamma_encode(n: int) -> BitString:
    """``floor(log2 n)`` zeros followed by ``n`` in binary."""
    if n < 1:
        raise DomainError(f"Elias gamma needs n >= 1, got {n}")
    body = format(n, "b")
    return BitString("0" * (len(body) - 1) + body)


def elias_gamma_read(reader: BitReader) -> int:
    zeros = 0
    while reader.read_bit() == 0:
        zeros += 1
    if zeros > reader.remaining:
        raise TruncatedStream(f"gamma code needs {zeros} more bits, {reader.remaining} left")
    return (1 << zeros) | reader.read_int(zeros)


def elias_gamma_decode(bits: BitString | str) -> int:
    reader = BitReader(bits)
    value = elias_gamma_read(reader)
    reader.expect_end()
    return value


def encode_size(n: int) -> BitString:
    """Gamma code of ``n + 1`` so that zero is representable."""
    if n < 0:
        raise DomainError(f"size must be nonnegative, got {n}")
    return elias_gamma_encode(n + 1)


def read_size(reader: BitReader) -> int:
    return elias_gamma_read(reader) - 1


def decode_size(bits: BitString | str) -> int:
    return elias_gamma_decode(bits) - 1
