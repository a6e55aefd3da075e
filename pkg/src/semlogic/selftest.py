"""Quick invariant sweep behind ``semlogic selftest``; the pytest suite goes deeper."""
from __future__ import annotations

import math
import random
import sys
from typing import Callable, TextIO

import numpy as np

from . import entropy, logic
from .baseline import build_tree, deserialize_tree, evaluate_tree, serialize_tree
from .codec import (
    ac_decode,
    ac_encode,
    elias_gamma_decode,
    elias_gamma_encode,
    encode_subset_fixed,
    decode_subset_fixed,
    rank_width,
    subset_rank,
    subset_unrank,
)
from .kernels import Kernel, ModelParams, sample_misinfo, sample_nested
from .protocols import ProtocolConfig, Status, run_known_r_enumerative, run_misinfo, run_unknown_r, verify_outcome


def random_statement(rng: random.Random, m: int, depth: int = 4):
    if depth == 0 or rng.random() < 0.25:
        return logic.Var(rng.randint(1, m))
    kind = rng.choice((logic.Not, logic.And, logic.Or, logic.Implies))
    if kind is logic.Not:
        return logic.Not(random_statement(rng, m, depth - 1))
    return kind(random_statement(rng, m, depth - 1), random_statement(rng, m, depth - 1))


def _check_lambda() -> bool:
    ok = abs(entropy.lam(0.5, 0.5) - 1.0) < 1e-12 and entropy.lam(0.3, 0.0) == 0.0
    for a in np.linspace(0.01, 0.5, 20):
        for b in np.linspace(0.01, 0.5, 20):
            ok &= abs(entropy.lam(a, b) - (a + b) * entropy.h2(a / (a + b))) < 1e-12
            ok &= abs(entropy.lam(a, b) - entropy.lam(b, a)) < 1e-12
    return bool(ok)


def _check_logic() -> bool:
    rng = random.Random(1)
    for _ in range(300):
        m = rng.randint(1, 5)
        a, b = random_statement(rng, m), random_statement(rng, m)
        brute = all((not logic.evaluate(a, w)) or logic.evaluate(b, w) for w in range(1 << m))
        if logic.entails(a, b, m) != brute:
            return False
        k = logic.kernel_of(a, m)
        if logic.kernel_of(logic.synthesize(k), m) != k:
            return False
        if logic.parse(logic.to_text(a), m) != a:
            return False
    return True


def _check_codecs() -> bool:
    rng = random.Random(2)
    for _ in range(500):
        n = rng.randint(1, 10**6)
        if elias_gamma_decode(elias_gamma_encode(n)) != n:
            return False
        size = rng.randint(1, 64)
        subset = sorted(rng.sample(range(size), rng.randint(0, size)))
        if subset_unrank(subset_rank(subset), len(subset), size) != subset:
            return False
        bits = encode_subset_fixed(subset, size)
        if len(bits) != rank_width(size, len(subset)) or decode_subset_fixed(bits, size, len(subset)) != subset:
            return False
        alpha = rng.randint(2, 8)
        toks = [rng.randrange(alpha) for _ in range(rng.randint(0, 200))]
        if ac_decode(ac_encode(toks, alpha), alpha) != toks:
            return False
    return True


def _check_trees() -> bool:
    rng = np.random.default_rng(3)
    for _ in range(30):
        m = int(rng.integers(1, 8))
        k = Kernel.from_array(m, rng.random(1 << m) < rng.random())
        t = build_tree(k)
        if any(evaluate_tree(t, w) != (w in k) for w in range(1 << m)):
            return False
        if deserialize_tree(serialize_tree(t), m) != t:
            return False
    return True


def _check_protocols() -> bool:
    rng = np.random.default_rng(4)
    cfg = ProtocolConfig(seed=11)
    for m in (4, 5):
        known = ModelParams(m, 0.15, 0.3, 0.5, "known_r")
        unknown = ModelParams(m, 0.15, None, 0.5, "unknown_r")
        mis = ModelParams(m, 0.1, None, 0.5, "misinfo")
        for _ in range(100):
            d = sample_nested(known, rng)
            out = run_known_r_enumerative(d.ks, d.kq, d.kr, cfg)
            expected = len(elias_gamma_encode(d.ks.popcount() + 1)) + rank_width(d.kr.popcount(), d.ks.popcount())
            if out.total_bits != expected or not verify_outcome(out, d.ks, d.kq, d.kr).passed:
                return False
            for draw, runner in ((sample_nested(unknown, rng), run_unknown_r), (sample_misinfo(mis, rng), run_misinfo)):
                out = runner(draw.ks, draw.kr, cfg)
                if out.status is Status.OK and not verify_outcome(out, draw.ks, draw.kq, draw.kr).passed:
                    return False
    return True


def _check_ratio() -> bool:
    grid = (0.105, 0.12, 0.15, 0.2, 0.3, 0.4, 0.5)
    ratios = [entropy.misinfo_ratio(0.1, p) for p in grid]
    return all(x > y for x, y in zip(ratios, ratios[1:])) and math.isclose(ratios[-1], 1.0)


CHECKS: dict[str, Callable[[], bool]] = {
    "lambda identity and symmetry": _check_lambda,
    "entailment vs brute force, synthesis and print roundtrips": _check_logic,
    "codec roundtrips and rank field widths": _check_codecs,
    "decision tree exactness and serialization": _check_trees,
    "protocol bit accounting and verification": _check_protocols,
    "misinformation ratio monotone": _check_ratio,
}


def run(stream: TextIO | None = None) -> bool:
    stream = stream if stream is not None else sys.stdout
    all_ok = True
    for name, check in CHECKS.items():
        try:
            ok = check()
        except Exception as exc:  # report, keep going
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        all_ok &= ok
        stream.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    return all_ok
