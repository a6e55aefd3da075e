"""Order-0 adaptive arithmetic coder (Laplace add-one counts, 32-bit registers).

Stream layout: ``encode_size(len(tokens))`` followed by the coded payload.  The
final flush leaves the code value valid for any continuation, so the payload
may be followed by other data.  The decoder re-encodes what it decoded and
checks the result against the input, which both fixes the payload length and
catches truncated or damaged streams.
"""
from __future__ import annotations

from typing import Sequence

from ..errors import CorruptStream, DomainError, TruncatedStream
from .bits import BitReader, BitString, BitWriter
from .elias import encode_size, read_size

PRECISION = 32
_FULL = (1 << PRECISION) - 1
_HALF = 1 << (PRECISION - 1)
_QUARTER = 1 << (PRECISION - 2)
_THREE_QUARTERS = 3 * _QUARTER
MAX_TOTAL = 1 << 16
MAX_TOKENS = 1 << 32


class AdaptiveModel:
    def __init__(self, alphabet_size: int):
        if alphabet_size < 2:
            raise DomainError(f"alphabet size must be at least 2, got {alphabet_size}")
        self.counts = [1] * alphabet_size
        self.total = alphabet_size

    def interval(self, symbol: int) -> tuple[int, int]:
        lo = sum(self.counts[:symbol])
        return lo, lo + self.counts[symbol]

    def lookup(self, target: int) -> tuple[int, int, int]:
        lo = 0
        for symbol, c in enumerate(self.counts):
            if target < lo + c:
                return symbol, lo, lo + c
            lo += c
        raise CorruptStream("cumulative frequency out of range")

    def update(self, symbol: int) -> None:
        self.counts[symbol] += 1
        self.total += 1
        if self.total > MAX_TOTAL:
            self.counts = [(c + 1) // 2 for c in self.counts]
            self.total = sum(self.counts)


def _emit(out: BitWriter, bit: int, pending: int) -> None:
    out.write_bit(bit)
    if pending:
        out.write(("0" if bit else "1") * pending)


def ac_encode(tokens: Sequence[int], alphabet_size: int) -> BitString:
    model = AdaptiveModel(alphabet_size)
    out = BitWriter()
    out.write(encode_size(len(tokens)))
    if not tokens:
        return out.getvalue()
    low, high, pending = 0, _FULL, 0
    for symbol in tokens:
        if not 0 <= symbol < alphabet_size:
            raise DomainError(f"token {symbol} outside alphabet of size {alphabet_size}")
        span = high - low + 1
        cum_lo, cum_hi = model.interval(symbol)
        high = low + span * cum_hi // model.total - 1
        low = low + span * cum_lo // model.total
        while True:
            if high < _HALF:
                _emit(out, 0, pending)
                pending = 0
            elif low >= _HALF:
                _emit(out, 1, pending)
                pending = 0
                low -= _HALF
                high -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                pending += 1
                low -= _QUARTER
                high -= _QUARTER
            else:
                break
            low = 2 * low
            high = 2 * high + 1
        model.update(symbol)
    pending += 1
    _emit(out, 0 if low < _QUARTER else 1, pending)
    return out.getvalue()


def ac_read(reader: BitReader, alphabet_size: int) -> list[int]:
    """Decode one stream from ``reader``, leaving it positioned just past the payload."""
    count = read_size(reader)
    if count > MAX_TOKENS:
        raise CorruptStream(f"implausible token count {count}")
    if count == 0:
        return []
    model = AdaptiveModel(alphabet_size)
    start = reader.pos
    bits = str(reader.read(reader.remaining))
    n_avail = len(bits)

    def bit_at(i: int) -> int:
        return 1 if i < n_avail and bits[i] == "1" else 0

    value = 0
    for i in range(PRECISION):
        value = (value << 1) | bit_at(i)
    cursor = PRECISION
    low, high = 0, _FULL
    tokens = []
    for _ in range(count):
        span = high - low + 1
        target = ((value - low + 1) * model.total - 1) // span
        symbol, cum_lo, cum_hi = model.lookup(target)
        tokens.append(symbol)
        high = low + span * cum_hi // model.total - 1
        low = low + span * cum_lo // model.total
        while True:
            if high < _HALF:
                pass
            elif low >= _HALF:
                low -= _HALF
                high -= _HALF
                value -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                low -= _QUARTER
                high -= _QUARTER
                value -= _QUARTER
            else:
                break
            low = 2 * low
            high = 2 * high + 1
            value = (value << 1) | bit_at(cursor)
            cursor += 1
        model.update(symbol)
    # the encoder is deterministic, so a faithful stream must reproduce itself
    header = len(encode_size(count))
    expected = str(ac_encode(tokens, alphabet_size))[header:]
    if bits[: len(expected)] != expected:
        if cursor > n_avail or len(expected) > n_avail:
            raise TruncatedStream(f"stream ends after {n_avail} payload bits")
        raise CorruptStream("arithmetic payload does not decode consistently")
    reader.pos = start + len(expected)
    return tokens


def ac_decode(bits: BitString | str, alphabet_size: int) -> list[int]:
    reader = BitReader(bits)
    tokens = ac_read(reader, alphabet_size)
    reader.expect_end()
    return tokens
