"""Deduction-aware communication over propositional logic.

Statements map to kernels (sets of satisfying worlds); protocols move enough
bits for the receiver to prove the sender's query, and the bound functions give
the per-world cost limits those protocols are measured against.
"""
from .entropy import bound_known_r, bound_misinfo, bound_unknown_r, h2, lam, misinfo_ratio
from .kernels import Kernel, ModelParams, Scenario, TripleSample, sample_misinfo, sample_nested
from .logic import entails, equivalent, evaluate, kernel_of, parse, synthesize, to_text
from .protocols import (
    Outcome,
    ProtocolConfig,
    Status,
    Transcript,
    run_known_r_codebook,
    run_known_r_enumerative,
    run_misinfo,
    run_unknown_r,
    verify_outcome,
)

__version__ = "0.1.0"

__all__ = [
    "Kernel",
    "ModelParams",
    "Outcome",
    "ProtocolConfig",
    "Scenario",
    "Status",
    "Transcript",
    "TripleSample",
    "bound_known_r",
    "bound_misinfo",
    "bound_unknown_r",
    "entails",
    "equivalent",
    "evaluate",
    "h2",
    "kernel_of",
    "lam",
    "misinfo_ratio",
    "parse",
    "run_known_r_codebook",
    "run_known_r_enumerative",
    "run_misinfo",
    "run_unknown_r",
    "sample_misinfo",
    "sample_nested",
    "synthesize",
    "to_text",
    "verify_outcome",
]
