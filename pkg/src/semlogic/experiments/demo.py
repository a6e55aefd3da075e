from __future__ import annotations

import sys
from pathlib import Path
from typing import Any, TextIO

from .. import entropy, logic
from ..errors import EntailmentViolation
from ..kernels import Scenario
from ..protocols import ProtocolConfig, run_protocol, verify_outcome


def run_demo(
    statement_s: str,
    statement_r: str,
    scenario: Scenario | str,
    m: int,
    seed: int = 0,
    statement_q: str | None = None,
    cfg: ProtocolConfig | None = None,
    scheme: str = "enumerative",
    stream: TextIO | None = None,
    dump_path: str | Path | None = None,
) -> dict[str, Any]:
    """Run one protocol on concrete statements, print a trace, return a JSON-able record."""
    scenario = Scenario(scenario)
    stream = stream if stream is not None else sys.stdout
    cfg = cfg or ProtocolConfig(seed=seed)
    s = logic.parse(statement_s, m)
    r = logic.parse(statement_r, m)
    q = logic.parse(statement_q, m) if statement_q and scenario is Scenario.KNOWN_R else s
    ks, kq, kr = (logic.kernel_of(x, m) for x in (s, q, r))

    if scenario is Scenario.MISINFO:
        if not ks.is_disjoint(kr):
            raise EntailmentViolation(
                f"misinfo needs inconsistent statements, but worlds {ks.intersect(kr).worlds()} satisfy both S and R"
            )
    else:
        if not ks.is_subset(kq):
            raise EntailmentViolation(f"S does not entail Q: worlds {ks.difference(kq).worlds()} satisfy S but not Q")
        if not kq.is_subset(kr):
            label = "Q" if scenario is Scenario.KNOWN_R else "S"
            raise EntailmentViolation(
                f"{label} does not entail R: worlds {kq.difference(kr).worlds()} satisfy {label} but not R"
            )

    out = run_protocol(scenario, ks, kq, kr, cfg, scheme)
    verdict = verify_outcome(out, ks, kq, kr)
    shat = logic.synthesize(out.k_shat)

    p = stream.write
    p(f"scenario {scenario.value}, m={m}, seed={cfg.seed}\n")
    p(f"  S = {logic.to_text(s)}  kernel {ks.worlds()}\n")
    if scenario is Scenario.KNOWN_R:
        p(f"  Q = {logic.to_text(q)}  kernel {kq.worlds()}\n")
    p(f"  R = {logic.to_text(r)}  kernel {kr.worlds()}\n")
    p(f"  {'round':<16} {'dir':<5} {'bits':<24} {'len':>4} {'total':>6}\n")
    running = 0
    rounds = []
    for msg in out.transcript:
        running += len(msg.bits)
        shown = str(msg.bits) if len(msg.bits) <= 24 else str(msg.bits)[:21] + "..."
        p(f"  {msg.label:<16} {msg.direction.value:<5} {shown:<24} {len(msg.bits):>4} {running:>6}\n")
        rounds.append({"label": msg.label, "direction": msg.direction.value, "bits": str(msg.bits)})
    p(f"  status {out.status.value}, decode skipped: {out.decode_skipped}\n")
    p(f"  Shat = {logic.to_text(shat)}  kernel {out.k_shat.worlds()}\n")
    p(
        f"  verify: S|-Shat {verdict.sender_entails_shat}, proves Q {verdict.shat_proves_query}, "
        f"challenges {verdict.challenge_closure}\n"
    )
    n = 1 << m
    if scenario is not Scenario.KNOWN_R or kq.popcount() < kr.popcount():
        a = ks.popcount() / n
        if scenario is Scenario.MISINFO:
            bound = entropy.lam(a, 1 - kr.popcount() / n - a)
        else:
            bound = entropy.lam(a, (kr.popcount() - kq.popcount()) / n)
        p(f"  cost {out.total_bits} bits = {out.total_bits / n:.4f} per world; realized-size bound {bound:.4f}\n")

    if dump_path is not None:
        Path(dump_path).write_bytes(out.transcript.concatenated().to_bytes())

    return {
        "scenario": scenario.value,
        "m": m,
        "seed": cfg.seed,
        "ks": ks.worlds(),
        "kq": kq.worlds(),
        "kr": kr.worlds(),
        "rounds": rounds,
        "total_bits": out.total_bits,
        "status": out.status.value,
        "decode_skipped": out.decode_skipped,
        "k_shat": out.k_shat.worlds(),
        "shat": logic.to_text(shat),
        "verdict": {
            "sender_entails_shat": verdict.sender_entails_shat,
            "shat_proves_query": verdict.shat_proves_query,
            "challenge_closure": verdict.challenge_closure,
        },
    }
