"""Four-state automaton that outputs eta from binary expansions."""
from __future__ import annotations

import numpy as np

from . import words
from ._config import check_length

LABELS = (words.A, words.X, words.Y, words.Z)
# TRANSITIONS[state][bit]
TRANSITIONS = ((0, 1), (0, 2), (0, 3), (0, 1))


def run(bits, state: int = 0) -> int:
    for b in bits:
        state = TRANSITIONS[state][b]
    return state


def automaton_letter(n: int) -> int:
    """Letter code produced for ``n`` (read most significant bit first)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    bits = [int(c) for c in bin(n)[2:]]
    return LABELS[run(bits)]


def f_n_q(n: int, i: int) -> bytes:
    """End-state labels over all length-n inputs from ``q_i``, in lex order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if i not in range(4):
        raise ValueError("state index must be in 0..3")
    check_length(1 << n, "automaton output")
    trans = np.array(TRANSITIONS, dtype=np.uint8)
    states = np.array([i], dtype=np.uint8)
    for _ in range(n):
        # appending a bit doubles the list; lex order puts bit 0 first
        states = trans[states].reshape(-1)
    return np.array(LABELS, dtype=np.uint8)[states].tobytes()


def expected_f_n_q(n: int, i: int) -> bytes:
    """p^(n-1) tau^(n-1+i)(x)."""
    return words.p_n(n - 1) + bytes([words.tau_power_of(words.X, n - 1 + i)])


def automaton_prefix(length: int) -> bytes:
    """automaton_letter(0 .. length-1), vectorized over the bits of n."""
    check_length(length, "automaton output")
    n = np.arange(length, dtype=np.int64)
    state = np.zeros(length, dtype=np.uint8)
    trans = np.array(TRANSITIONS, dtype=np.uint8)
    top = max(int(length - 1).bit_length(), 1)
    for k in range(top - 1, -1, -1):
        bit = ((n >> k) & 1).astype(np.uint8)
        # leading zeros would send q1..q3 back to q0, but from q0 they are no-ops
        state = trans[state, bit]
    return np.array(LABELS, dtype=np.uint8)[state].tobytes()


def check_automaton(length: int) -> int | None:
    """First index where the automaton and eta disagree, or ``None``."""
    got = np.frombuffer(automaton_prefix(length), dtype=np.uint8)
    want = np.frombuffer(words.eta_prefix(length), dtype=np.uint8)
    bad = np.flatnonzero(got != want)
    return int(bad[0]) if len(bad) else None
