"""Instrumented two-pass pairing heap with a linear-range potential analyzer."""

from ._core import (
    AnalyzedHeap,
    EmptyHeap,
    HeapError,
    InvalidHandle,
    NotADecrease,
    PairingHeap,
    TraceError,
    TraceParseError,
    classify,
    compare_with_oracle,
    gen_dijkstra,
    gen_random,
    gen_sorted,
    ledger_csv,
    node_potential,
    replay_outputs,
    size_potential,
    validate,
)

__all__ = [
    "AnalyzedHeap",
    "EmptyHeap",
    "HeapError",
    "InvalidHandle",
    "NotADecrease",
    "PairingHeap",
    "TraceError",
    "TraceParseError",
    "classify",
    "compare_with_oracle",
    "gen_dijkstra",
    "gen_random",
    "gen_sorted",
    "ledger_csv",
    "node_potential",
    "replay_outputs",
    "size_potential",
    "validate",
]
