"""End-to-end sender/receiver protocols with bidirectional bit accounting.

Every value that crosses from one party to the other is encoded into a
``BitString``, appended to the transcript, and decoded again by the recipient;
party-private kernels are only read on their owner's side.

Schemes
-------
known_r_enumerative
    Alice sends ``|ks|`` and the enumerative rank of ``ks`` inside ``kr``.
known_r_codebook
    Alice picks the first codeword of a shared random codebook that contains
    ``ks`` and avoids ``kr - kq``; falls back to the enumerative payload.
unknown_r
    Size exchange, then a GF(2) syndrome of ``ks``; Bob keeps the unique
    candidate inside ``kr`` matching the syndrome, or asks for a fallback.
misinfo
    Like ``unknown_r`` but Alice knows ``kr``; candidates lie outside ``kr``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .codec.bits import BitReader, BitString
from .codec.elias import encode_size, read_size
from .codec.enumerative import encode_subset_fixed, rank_width, read_subset_fixed
from .codec.gf2 import HashMatrix, find_weight_solutions, solve, syndrome_of_support
from .entropy import lam
from .errors import CodebookTooLarge, DecodeBudgetExceeded, PreconditionViolated
from .kernels import Kernel, Scenario


class Direction(str, enum.Enum):
    ALICE_TO_BOB = "A->B"
    BOB_TO_ALICE = "B->A"


class Status(str, enum.Enum):
    OK = "ok"
    FALLBACK_USED = "fallback"
    UNDETECTED_ERROR_POSSIBLE = "undetected_error_possible"


@dataclass(frozen=True)
class Message:
    direction: Direction
    label: str
    bits: BitString


@dataclass
class Transcript:
    messages: list[Message] = field(default_factory=list)

    def send(self, direction: Direction, label: str, bits: BitString) -> BitReader:
        """Record a message and hand the recipient a reader over it."""
        self.messages.append(Message(direction, label, bits))
        return BitReader(bits)

    @property
    def total_bits(self) -> int:
        return sum(len(msg.bits) for msg in self.messages)

    def bits_by_direction(self) -> dict[Direction, int]:
        out = {d: 0 for d in Direction}
        for msg in self.messages:
            out[msg.direction] += len(msg.bits)
        return out

    def __iter__(self) -> Iterator[Message]:
        return iter(self.messages)

    def concatenated(self) -> BitString:
        return BitString("".join(str(msg.bits) for msg in self.messages))


@dataclass(frozen=True)
class ProtocolConfig:
    seed: int = 0
    margin_bits: int = 8
    codebook_extra_bits: int = 3
    max_codebook_size: int = 1 << 22
    max_decode_candidates: int = 1 << 18
    decode_enabled: bool = True
    skip_on_budget: bool = True

    def __post_init__(self) -> None:
        if self.margin_bits < 1:
            raise ValueError("margin_bits must be at least 1")


@dataclass
class Outcome:
    transcript: Transcript
    k_shat: Kernel
    status: Status
    decode_skipped: bool = False
    scenario: Scenario = Scenario.KNOWN_R
    scheme: str = ""

    @property
    def total_bits(self) -> int:
        return self.transcript.total_bits

    def normalized_bits(self) -> float:
        return self.transcript.total_bits / self.k_shat.n_worlds


# helpers ----------------------------------------------------------------------


def _members_mask_to_kernel(m: int, universe: list[int], mask: int) -> Kernel:
    return Kernel.from_worlds(m, (universe[t] for t in range(len(universe)) if mask >> t & 1))


def _positions_within(inner: Kernel, outer: Kernel) -> list[int]:
    index = {w: j for j, w in enumerate(outer.worlds())}
    return [index[w] for w in inner.worlds()]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolated(message)


# known R -----------------------------------------------------------------------


def _enumerative_payload(ks: Kernel, kr: Kernel) -> BitString:
    positions = _positions_within(ks, kr)
    return encode_size(len(positions)) + encode_subset_fixed(positions, kr.popcount())


def _read_enumerative_payload(reader: BitReader, kr: Kernel) -> Kernel:
    k = read_size(reader)
    positions = read_subset_fixed(reader, kr.popcount(), k)
    members = kr.worlds()
    return Kernel.from_worlds(kr.m, (members[p] for p in positions))


def run_known_r_enumerative(ks: Kernel, kq: Kernel, kr: Kernel, cfg: ProtocolConfig | None = None) -> Outcome:
    """Alice sends ``|ks|`` then the rank of ``ks`` among ``|ks|``-subsets of ``kr``."""
    _require(ks.is_subset(kq), "sender kernel must lie inside the query kernel")
    _require(kq.is_subset(kr), "query kernel must lie inside the receiver kernel")
    transcript = Transcript()
    reader = transcript.send(Direction.ALICE_TO_BOB, "subset", _enumerative_payload(ks, kr))
    k_shat = _read_enumerative_payload(reader, kr)
    reader.expect_end()
    return Outcome(transcript, k_shat, Status.OK, scenario=Scenario.KNOWN_R, scheme="enumerative")


@dataclass(frozen=True)
class Codebook:
    """Shared random list of sub-kernels of ``kr``, regenerated from the seed.

    Codeword ``j`` keeps each member of ``kr`` independently with probability
    ``t``.  Draws come in blocks of ``BLOCK`` codewords; block ``b`` is a Philox
    stream keyed by the shared parameters at counter ``b``, so Bob regenerates
    only the block holding the index he receives.
    """

    seed: int
    kr: Kernel
    n_a: int
    n_b: int
    size: int

    BLOCK = 4096

    @property
    def keep_prob(self) -> float:
        return 1.0 if self.n_b == 0 else self.n_a / (self.n_a + self.n_b)

    @property
    def index_bits(self) -> int:
        return (self.size - 1).bit_length()

    def _key(self) -> np.ndarray:
        ss = np.random.SeedSequence([self.seed, self.kr.m, self.n_a, self.n_b, self.size, 0xC0DE])
        return ss.generate_state(2, np.uint64)

    def block(self, b: int) -> np.ndarray:
        """Boolean matrix ``(rows, |kr|)``: row ``r`` is codeword ``b * BLOCK + r``."""
        rows = min(self.BLOCK, self.size - b * self.BLOCK)
        width = self.kr.popcount()
        if self.n_b == 0:
            return np.ones((rows, width), dtype=bool)
        gen = np.random.Generator(np.random.Philox(key=self._key(), counter=[0, 0, 0, b]))
        return gen.random((rows, width)) < self.keep_prob

    def n_blocks(self) -> int:
        return -(-self.size // self.BLOCK)

    def codeword(self, j: int) -> Kernel:
        b, r = divmod(j, self.BLOCK)
        row = self.block(b)[r]
        members = self.kr.worlds()
        return Kernel.from_worlds(self.kr.m, (w for w, keep in zip(members, row) if keep))


def codebook_size(n_a: int, n_b: int, extra_bits: int) -> int:
    """``ceil(2^(2^m * lam(a, b) + extra))`` for realized sizes ``a = n_a/2^m``, ``b = n_b/2^m``."""
    exponent = lam(n_a, n_b) + extra_bits  # lam is homogeneous: 2^m * lam(a, b) == lam(n_a, n_b)
    return math.ceil(2.0 ** exponent)


def covering_masks(ks: Kernel, kq: Kernel, kr: Kernel) -> tuple[np.ndarray, np.ndarray]:
    """Masks over ``kr``'s members: must-include (``ks``) and must-exclude (``kr - kq``)."""
    inside = kr.to_array()
    must_in = ks.to_array()[inside]
    must_out = (~kq.to_array())[inside]
    return must_in, must_out


def _first_covering(book: Codebook, must_in: np.ndarray, must_out: np.ndarray) -> int | None:
    for b in range(book.n_blocks()):
        rows = book.block(b)
        ok = np.all(rows[:, must_in], axis=1) & ~np.any(rows[:, must_out], axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return b * book.BLOCK + int(hits[0])
    return None


def run_known_r_codebook(ks: Kernel, kq: Kernel, kr: Kernel, cfg: ProtocolConfig | None = None) -> Outcome:
    """Covering-codebook scheme; see ``Codebook``.

    Layout: 1-bit mode flag; covering mode adds ``|ks|``, ``|kr - kq|`` (so Bob
    can rebuild the codebook) and the fixed-width codeword index; fallback mode
    carries the enumerative payload.
    """
    cfg = cfg or ProtocolConfig()
    _require(ks.is_subset(kq), "sender kernel must lie inside the query kernel")
    _require(kq.is_subset(kr), "query kernel must lie inside the receiver kernel")
    n_a, n_b = ks.popcount(), kr.popcount() - kq.popcount()
    size = codebook_size(n_a, n_b, cfg.codebook_extra_bits)
    if size > cfg.max_codebook_size:
        raise CodebookTooLarge(f"codebook of {size} entries exceeds cap {cfg.max_codebook_size}")

    # Alice
    book = Codebook(cfg.seed, kr, n_a, n_b, size)
    must_in, must_out = covering_masks(ks, kq, kr)
    index = _first_covering(book, must_in, must_out)
    transcript = Transcript()
    if index is not None:
        header = BitString("1") + encode_size(n_a) + encode_size(n_b)
        reader = transcript.send(Direction.ALICE_TO_BOB, "codeword", header + BitString.from_int(index, book.index_bits))
    else:
        reader = transcript.send(Direction.ALICE_TO_BOB, "fallback", BitString("0") + _enumerative_payload(ks, kr))

    # Bob
    if reader.read_bit():
        got_a, got_b = read_size(reader), read_size(reader)
        bob_book = Codebook(cfg.seed, kr, got_a, got_b, codebook_size(got_a, got_b, cfg.codebook_extra_bits))
        k_shat = bob_book.codeword(reader.read_int(bob_book.index_bits))
        status = Status.OK
    else:
        k_shat = _read_enumerative_payload(reader, kr)
        status = Status.FALLBACK_USED
    reader.expect_end()
    return Outcome(transcript, k_shat, status, scenario=Scenario.KNOWN_R, scheme="codebook")


def codebook_hit_stats(ks: Kernel, kq: Kernel, kr: Kernel, cfg: ProtocolConfig | None = None) -> tuple[int, int, float]:
    """(qualifying codewords, codewords examined, exact per-codeword probability) over the first block."""
    cfg = cfg or ProtocolConfig()
    n_a, n_b = ks.popcount(), kr.popcount() - kq.popcount()
    book = Codebook(cfg.seed, kr, n_a, n_b, codebook_size(n_a, n_b, cfg.codebook_extra_bits))
    must_in, must_out = covering_masks(ks, kq, kr)
    rows = book.block(0)
    hits = int(np.count_nonzero(np.all(rows[:, must_in], axis=1) & ~np.any(rows[:, must_out], axis=1)))
    t = book.keep_prob
    return hits, rows.shape[0], t**n_a * (1.0 - t) ** n_b


# hashing with side information ---------------------------------------------------


def _syndrome_length(universe_size: int, weight: int, margin: int) -> int:
    return rank_width(universe_size, weight) + margin


def _bob_decode(
    m: int, universe: list[int], weight: int, mat: HashMatrix, target: int, cfg: ProtocolConfig
) -> tuple[Kernel | None, bool]:
    """Bob's candidate search. Returns ``(unique candidate or None, skipped)``."""
    if not cfg.decode_enabled:
        return None, True
    columns = [mat.column(w) for w in universe]
    space = solve(columns, target)
    if space is not None:
        work = min(1 << space.dim, math.comb(len(universe), weight))
        if work > cfg.max_decode_candidates:
            if not cfg.skip_on_budget:
                raise DecodeBudgetExceeded(f"candidate search needs {work} steps, cap {cfg.max_decode_candidates}")
            return None, True
    found = find_weight_solutions(columns, target, weight, limit=2, space=space)
    if len(found) == 1:
        return _members_mask_to_kernel(m, universe, found[0]), False
    return None, False


def _binning_rounds(
    transcript: Transcript,
    ks: Kernel,
    m: int,
    bob_universe: list[int],
    universe_size_alice: int,
    cfg: ProtocolConfig,
    scenario: Scenario,
) -> Outcome:
    """Shared tail: Alice's size, syndrome, Bob's ack, optional fallback.

    ``universe_size_alice`` is Alice's view of the candidate pool size (received
    from Bob or computed from ``kr``); ``bob_universe`` is Bob's pool itself.
    """
    n = 1 << m
    # Alice: size
    reader = transcript.send(Direction.ALICE_TO_BOB, "sender size", encode_size(ks.popcount()))
    weight = read_size(reader)  # Bob

    # both sides: syndrome length from exchanged sizes
    k_alice = _syndrome_length(universe_size_alice, ks.popcount(), cfg.margin_bits)
    mat_alice = HashMatrix.random(cfg.seed, k_alice, n)
    syn = syndrome_of_support(mat_alice, ks.worlds())
    reader = transcript.send(Direction.ALICE_TO_BOB, "syndrome", BitString.from_int(syn, k_alice))

    # Bob
    k_bob = _syndrome_length(len(bob_universe), weight, cfg.margin_bits)
    target = reader.read_int(k_bob)
    reader.expect_end()
    candidate, skipped = _bob_decode(m, bob_universe, weight, HashMatrix.random(cfg.seed, k_bob, n), target, cfg)
    if skipped:
        transcript.send(Direction.BOB_TO_ALICE, "ack (assumed)", BitString("1"))
        return Outcome(transcript, ks, Status.UNDETECTED_ERROR_POSSIBLE, True, scenario, "binning")
    if candidate is not None:
        transcript.send(Direction.BOB_TO_ALICE, "ack", BitString("1"))
        return Outcome(transcript, candidate, Status.OK, False, scenario, "binning")

    transcript.send(Direction.BOB_TO_ALICE, "nack", BitString("0"))
    reader = transcript.send(Direction.ALICE_TO_BOB, "fallback", encode_subset_fixed(ks.worlds(), n))
    k_shat = Kernel.from_worlds(m, read_subset_fixed(reader, n, weight))
    reader.expect_end()
    return Outcome(transcript, k_shat, Status.FALLBACK_USED, False, scenario, "binning")


def run_unknown_r(ks: Kernel, kr: Kernel, cfg: ProtocolConfig | None = None) -> Outcome:
    """Receiver side information unknown to the sender.

    Rounds: Bob sends ``|kr|``; Alice sends ``|ks|`` and a syndrome of length
    ``ceil(log2 C(|kr|, |ks|)) + margin``; Bob searches ``kr`` for the unique
    ``|ks|``-subset with that syndrome and acks, or nacks for a fallback.
    """
    cfg = cfg or ProtocolConfig()
    _require(ks.is_subset(kr), "sender kernel must lie inside the receiver kernel")
    transcript = Transcript()
    reader = transcript.send(Direction.BOB_TO_ALICE, "receiver size", encode_size(kr.popcount()))
    n_r = read_size(reader)  # Alice learns |kr| only from the message
    return _binning_rounds(transcript, ks, kr.m, kr.worlds(), n_r, cfg, Scenario.UNKNOWN_R)


def run_misinfo(ks: Kernel, kr: Kernel, cfg: ProtocolConfig | None = None) -> Outcome:
    """Sender corrects a receiver whose kernel is disjoint from hers.

    Alice knows ``kr``, so no receiver-size round; candidates are drawn from the
    complement of ``kr``, and Bob's final knowledge is ``k_shat`` alone.
    """
    cfg = cfg or ProtocolConfig()
    _require(ks.is_disjoint(kr), "misinformation scenario needs disjoint kernels")
    transcript = Transcript()
    outside = kr.complement().worlds()
    return _binning_rounds(transcript, ks, kr.m, outside, len(outside), cfg, Scenario.MISINFO)


def run_protocol(scenario: Scenario, ks: Kernel, kq: Kernel, kr: Kernel, cfg: ProtocolConfig, scheme: str = "enumerative") -> Outcome:
    scenario = Scenario(scenario)
    if scenario is Scenario.KNOWN_R:
        if scheme == "codebook":
            return run_known_r_codebook(ks, kq, kr, cfg)
        return run_known_r_enumerative(ks, kq, kr, cfg)
    if scenario is Scenario.UNKNOWN_R:
        return run_unknown_r(ks, kr, cfg)
    return run_misinfo(ks, kr, cfg)


# verification -------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    sender_entails_shat: bool
    shat_proves_query: bool
    challenge_closure: bool

    @property
    def passed(self) -> bool:
        return self.sender_entails_shat and self.shat_proves_query and self.challenge_closure


def verify_outcome(
    out: Outcome,
    ks: Kernel,
    kq: Kernel,
    kr: Kernel,
    rng: np.random.Generator | None = None,
    n_challenges: int = 16,
) -> Verdict:
    """Check ``S ⊢ Ŝ``, that Bob can prove ``Q``, and that every weaker query is provable.

    Bob's usable knowledge is ``Ŝ ∧ R`` except in the misinformation scenario,
    where ``Ŝ`` replaces his beliefs outright.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    shat = out.k_shat
    usable = shat if out.scenario is Scenario.MISINFO else shat.intersect(kr)
    first = ks.is_subset(shat)
    second = usable.is_subset(kq)
    closure = True
    outside = ~kq.to_array()
    for _ in range(n_challenges):
        extra = outside & (rng.random(outside.shape[0]) < 0.5)
        weaker = kq.union(Kernel.from_array(kq.m, extra))
        if not usable.is_subset(weaker):
            closure = False
            break
    return Verdict(first, second, closure)
