"""Bit strings and a sequential reader.

Bits are kept as a ``str`` of ``'0'``/``'1'`` characters: cheap slicing,
readable in tests, and fast enough for the message sizes simulated here.
"""
from __future__ import annotations

import struct
from typing import Iterable

from ..errors import CorruptStream, TruncatedStream


class BitString:
    __slots__ = ("_bits",)

    def __init__(self, bits: str | Iterable[int] = ""):
        if not isinstance(bits, str):
            bits = "".join("1" if b else "0" for b in bits)
        elif bits.strip("01"):
            raise ValueError("BitString accepts only '0' and '1' characters")
        self._bits = bits

    @classmethod
    def from_int(cls, value: int, width: int) -> BitString:
        """``value`` as exactly ``width`` bits, most significant first."""
        if value < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls(format(value, f"0{width}b") if width else "")

    def __len__(self) -> int:
        return len(self._bits)

    def __str__(self) -> str:
        return self._bits

    def __repr__(self) -> str:
        shown = self._bits if len(self._bits) <= 64 else self._bits[:61] + "..."
        return f"BitString({shown!r}, len={len(self._bits)})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BitString):
            return self._bits == other._bits
        if isinstance(other, str):
            return self._bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __add__(self, other: BitString) -> BitString:
        return BitString(self._bits + str(other))

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitString(self._bits[idx])
        return int(self._bits[idx])

    def to_list(self) -> list[int]:
        return [int(c) for c in self._bits]

    def to_int(self) -> int:
        return int(self._bits, 2) if self._bits else 0

    def to_bytes(self) -> bytes:
        """8-byte little-endian bit count, then bits packed MSB-first, zero padded."""
        n = len(self._bits)
        padded = self._bits + "0" * (-n % 8)
        body = int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""
        return struct.pack("<Q", n) + body

    @classmethod
    def from_bytes(cls, data: bytes) -> BitString:
        if len(data) < 8:
            raise TruncatedStream("missing 8-byte length header")
        (n,) = struct.unpack("<Q", data[:8])
        body = data[8:]
        need = (n + 7) // 8
        if len(body) < need:
            raise TruncatedStream(f"header declares {n} bits but only {8 * len(body)} present")
        if len(body) > need:
            raise CorruptStream("trailing bytes after packed bits")
        if not need:
            return cls("")
        bits = format(int.from_bytes(body, "big"), f"0{8 * need}b")
        if "1" in bits[n:]:
            raise CorruptStream("nonzero padding bits")
        return cls(bits[:n])


class BitWriter:
    """Append-only accumulator; ``getvalue`` freezes it into a ``BitString``."""

    def __init__(self) -> None:
        self._parts: list[str] = []
        self._len = 0

    def __len__(self) -> int:
        return self._len

    def write_bit(self, bit: int) -> None:
        self._parts.append("1" if bit else "0")
        self._len += 1

    def write_int(self, value: int, width: int) -> None:
        if width:
            self.write(BitString.from_int(value, width))

    def write(self, bits: BitString | str) -> None:
        s = str(bits)
        self._parts.append(s)
        self._len += len(s)

    def getvalue(self) -> BitString:
        return BitString("".join(self._parts))


class BitReader:
    def __init__(self, bits: BitString | str):
        self._bits = str(bits)
        self.pos = 0

    @property
    def remaining(self) -> int:
        return len(self._bits) - self.pos

    def read_bit(self) -> int:
        if self.pos >= len(self._bits):
            raise TruncatedStream("read past end of bit string")
        bit = self._bits[self.pos] == "1"
        self.pos += 1
        return int(bit)

    def read_int(self, width: int) -> int:
        if width == 0:
            return 0
        end = self.pos + width
        if end > len(self._bits):
            raise TruncatedStream(f"need {width} bits, {self.remaining} left")
        value = int(self._bits[self.pos:end], 2)
        self.pos = end
        return value

    def read(self, width: int) -> BitString:
        end = self.pos + width
        if end > len(self._bits):
            raise TruncatedStream(f"need {width} bits, {self.remaining} left")
        out = BitString(self._bits[self.pos:end])
        self.pos = end
        return out

    def expect_end(self) -> None:
        if self.remaining:
            raise CorruptStream(f"{self.remaining} unread trailing bits")
