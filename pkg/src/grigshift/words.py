"""Combinatorics of the substitution a->axa, x->y, y->z, z->x and its subshift.

Words are ``bytes`` over the codes a=0, x=1, y=2, z=3.  Use :func:`word` to
encode ASCII strings and :func:`to_str` to decode.  Two-sided sequences are
handled through finite :class:`Window` objects carrying the integer position
of their first letter; the origin bar sits between positions 0 and 1.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from ._config import check_length
from .errors import (
    FourthPowerError,
    InsufficientContextError,
    InvalidWordError,
    PartitionError,
)

LETTERS = "axyz"
A, X, Y, Z = 0, 1, 2, 3
NON_A = (X, Y, Z)

_ENCODE = bytes.maketrans(LETTERS.encode(), bytes(range(4)))
_DECODE = bytes.maketrans(bytes(range(4)), LETTERS.encode())


def word(w) -> bytes:
    """Encode ``w`` (a str over ``axyz`` or already-encoded bytes)."""
    if isinstance(w, str):
        if w.strip(LETTERS):
            raise InvalidWordError(f"letters outside {{a,x,y,z}} in {w!r}")
        return w.encode().translate(_ENCODE)
    w = bytes(w)
    if w and max(w) > 3:
        raise InvalidWordError("encoded word contains codes outside 0..3")
    return w


def to_str(w: bytes) -> str:
    return bytes(w).translate(_DECODE).decode()


def letter(c) -> int:
    if isinstance(c, str):
        if len(c) != 1 or c not in LETTERS:
            raise InvalidWordError(f"not a letter: {c!r}")
        return LETTERS.index(c)
    if c not in range(4):
        raise InvalidWordError(f"not a letter code: {c!r}")
    return int(c)


# --------------------------------------------------------------------------
# substitutions


@dataclass(frozen=True)
class SubstitutionRule:
    name: str
    images: tuple  # images[code] is the encoded image of that letter

    def __post_init__(self):
        if len(self.images) != 4 or not all(self.images):
            raise InvalidWordError("a rule needs four nonempty images")

    def __call__(self, w) -> bytes:
        return apply_substitution(self, w)


TAU = SubstitutionRule("tau", (word("axa"), word("y"), word("z"), word("x")))
# Primitive recoding with the same fixed point.
ZETA = SubstitutionRule("zeta", (word("ax"), word("ay"), word("az"), word("ax")))


def apply_substitution(rule: SubstitutionRule, w) -> bytes:
    w = word(w)
    images = rule.images
    check_length(sum(len(images[c]) * k for c, k in Counter(w).items()))
    return b"".join([images[c] for c in w])


def iterate(rule: SubstitutionRule, w, times: int) -> bytes:
    w = word(w)
    for _ in range(times):
        w = apply_substitution(rule, w)
    return w


def tau_power_of(s: int, n: int) -> int:
    """``tau^n(s)`` for a non-a letter ``s``; tau permutes x->y->z->x."""
    s = letter(s)
    if s == A:
        raise InvalidWordError("tau^n(a) is a word; use p_n")
    return (s - 1 + n) % 3 + 1


def separator(n: int) -> int:
    """The middle letter ``tau^n(x)`` of p^(n+1) = p^(n) tau^n(x) p^(n)."""
    return tau_power_of(X, n)


def p_n(n: int) -> bytes:
    """``tau^n(a)``, built through p^(n+1) = p^(n) tau^n(x) p^(n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    check_length((1 << (n + 1)) - 1, f"p^({n})")
    return _p_n(n)


@lru_cache(maxsize=None)
def _p_n(n: int) -> bytes:
    if n == 0:
        return bytes([A])
    prev = _p_n(n - 1)
    return prev + bytes([separator(n - 1)]) + prev


def level_for_length(length: int) -> int:
    """Smallest n >= 0 with |p^(n)| = 2^(n+1) - 1 >= length."""
    n = 0
    while (1 << (n + 1)) - 1 < length:
        n += 1
    return n


def eta_prefix(length: int) -> bytes:
    """First ``length`` letters of the fixed point eta."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return b""
    check_length(length, "eta prefix")
    return _p_n(level_for_length(length))[:length]


# --------------------------------------------------------------------------
# factors and complexity


def _subword_source(length: int) -> bytes:
    # every factor of length <= |p^(n)| already appears in p^(n+3)
    return p_n(level_for_length(length) + 3)


def enumerate_subwords(length: int) -> frozenset:
    if length < 1:
        raise ValueError("length must be >= 1")
    src = _subword_source(length)
    return frozenset(src[i:i + length] for i in range(len(src) - length + 1))


def complexity(length: int) -> int:
    return len(enumerate_subwords(length))


def complexity_closed_form(length: int) -> int:
    if length < 1:
        raise ValueError("length must be >= 1")
    if length <= 3:
        return (4, 6, 8)[length - 1]
    n = length.bit_length() - 1
    k = length - (1 << n)
    if k < 1 << (n - 1):
        return (1 << (n + 1)) + (1 << (n - 1)) + 3 * k
    return (1 << (n + 1)) + (1 << n) + 2 * k


def suffix_array(s) -> np.ndarray:
    """Suffix array by prefix doubling."""
    s = np.frombuffer(bytes(s), dtype=np.uint8).astype(np.int64)
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = s.copy()
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - k] = rank[k:] if k < n else second[:0]
        sa = np.lexsort((second, rank))
        r1, r2 = rank[sa], second[sa]
        fresh = np.empty(n, dtype=np.int64)
        fresh[0] = 0
        fresh[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.cumsum(fresh)
        if rank.max() == n - 1 or k >= n:
            return sa
        k *= 2


def lcp_array(s, sa) -> np.ndarray:
    """Kasai: lcp[i] = common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0."""
    s = bytes(s)
    n = len(s)
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    lcp = np.zeros(n, dtype=np.int64)
    sa_list = sa.tolist()
    rank_list = rank.tolist()
    h = 0
    for i in range(n):
        r = rank_list[i]
        if r > 0:
            j = sa_list[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def distinct_factor_counts(s, max_length: int) -> np.ndarray:
    """``out[L]`` = number of distinct length-L factors of ``s``."""
    sa = suffix_array(s)
    lcp = lcp_array(s, sa)
    n = len(s)
    cap = max_length + 2
    suffix_lengths = np.bincount(np.minimum(n - sa, cap), minlength=cap + 1)
    lcp_hist = np.bincount(np.minimum(lcp[1:], cap), minlength=cap + 1)
    at_least_len = np.cumsum(suffix_lengths[::-1])[::-1]
    at_least_lcp = np.cumsum(lcp_hist[::-1])[::-1]
    out = at_least_len - at_least_lcp
    out[0] = 1
    return out[:max_length + 1]


def complexity_table(max_length: int) -> np.ndarray:
    """complexity(L) for L = 0..max_length, counted over one p^(n+3)."""
    return distinct_factor_counts(_subword_source(max_length), max_length)


def right_special_words(length: int) -> list:
    """Words of the given length with at least two one-letter extensions.

    Returns sorted ``(word, extensions)`` pairs; ``extensions`` is a frozenset
    of letter codes.
    """
    ext = {}
    for w in enumerate_subwords(length + 1):
        ext.setdefault(w[:-1], set()).add(w[-1])
    return sorted((w, frozenset(e)) for w, e in ext.items() if len(e) > 1)


def letter_frequency(length: int) -> dict:
    if length < 1:
        raise ValueError("length must be >= 1")
    counts = Counter(eta_prefix(length))
    return {LETTERS[c]: Fraction(k, length) for c, k in sorted(counts.items())}


# --------------------------------------------------------------------------
# powers


@dataclass(frozen=True)
class IndexReport:
    """Largest fractional power ``w^N v`` found in a scan of eta."""

    word: bytes       # the period w
    index: Fraction   # N + |v|/|w|
    position: int     # 1-based position of the occurrence in eta
    length: int       # |w^N v|

    @property
    def exponent(self) -> int:
        return self.index.numerator // self.index.denominator

    @property
    def tail(self) -> bytes:
        return self.word[:self.length - self.exponent * len(self.word)]


def max_index_scan(scan_length: int) -> IndexReport | None:
    """Maximal ``Ind(w, w^N v)`` with ``N >= 2`` over a prefix of eta.

    Returns ``None`` if the prefix contains no square.  Raises
    :class:`FourthPowerError` if an occurrence of index >= 4 turns up.
    """
    if scan_length < 8:
        raise ValueError("scan_length must be >= 8")
    s = eta_prefix(scan_length)
    runs, starts = kernels.longest_period_runs(
        np.frombuffer(s, dtype=np.uint8), scan_length // 2)
    best = None
    for p in range(1, scan_length // 2 + 1):
        r = int(runs[p])
        if r < p:
            continue
        idx = Fraction(r + p, p)
        if best is None or idx > best[0]:
            best = (idx, p, int(starts[p]))
    if best is None:
        return None
    idx, p, start = best
    report = IndexReport(s[start:start + p], idx, start + 1, int(runs[p]) + p)
    if idx >= 4:
        raise FourthPowerError(f"index {idx} at position {start + 1}")
    return report


# --------------------------------------------------------------------------
# windows of two-sided sequences


@dataclass(frozen=True)
class Window:
    """Finite factor of a two-sided sequence; ``letters[0]`` sits at ``offset``."""

    letters: bytes
    offset: int = 1

    def __post_init__(self):
        object.__setattr__(self, "letters", word(self.letters))

    def __len__(self):
        return len(self.letters)

    @property
    def start(self) -> int:
        return self.offset

    @property
    def end(self) -> int:
        """Position of the last letter."""
        return self.offset + len(self.letters) - 1

    def contains(self, pos: int) -> bool:
        return self.offset <= pos <= self.end

    def at(self, pos: int) -> int:
        if not self.contains(pos):
            raise InsufficientContextError(
                f"position {pos} outside window [{self.start}, {self.end}]")
        return self.letters[pos - self.offset]

    def slice(self, lo: int, hi: int) -> bytes:
        """Letters at positions lo..hi inclusive."""
        if not (self.contains(lo) and self.contains(hi)):
            raise InsufficientContextError(
                f"[{lo}, {hi}] not inside [{self.start}, {self.end}]")
        return self.letters[lo - self.offset:hi - self.offset + 1]

    def shift(self, k: int = 1) -> "Window":
        """Apply the shift ``T^k``: the letter at position p moves to p - k."""
        return Window(self.letters, self.offset - k)

    def straddles_origin(self) -> bool:
        return self.offset <= 1 and self.end >= 0

    def to_json(self) -> str:
        return json.dumps({"offset": self.offset, "letters": to_str(self.letters)})

    @classmethod
    def from_json(cls, text) -> "Window":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(word(data["letters"]), int(data["offset"]))

    def __str__(self):
        w = to_str(self.letters)
        cut = 1 - self.offset
        if 0 <= cut <= len(w):
            return f"{w[:cut]}|{w[cut:]}"
        return f"{w}@{self.offset}"


def reflect(w) -> bytes:
    return word(w)[::-1]


def reflect_origin(w: Window) -> Window:
    """Reflection at the origin bar: position i goes to 1 - i."""
    return Window(w.letters[::-1], 2 - w.offset - len(w.letters))


def is_symmetric_about(w: Window, p: int) -> bool:
    """``w_{p+k} == w_{p-k}`` wherever both positions lie in the window."""
    radius = min(p - w.start, w.end - p)
    if radius < 0:
        return False
    return all(w.at(p + k) == w.at(p - k) for k in range(1, radius + 1))


def eta_window(center: int, radius: int) -> Window:
    """Window of eta shifted so that ``eta_center`` (1-based) sits at position 1.

    Covers positions ``1 - radius .. radius``.
    """
    if center - radius < 1:
        raise InsufficientContextError("window would reach before eta_1")
    s = eta_prefix(center + radius - 1)
    return Window(s[center - radius - 1:], 1 - radius)


def random_eta_windows(rng, count: int, radius: int, prefix_length: int = 1 << 16):
    """Seeded sample of :func:`eta_window` windows."""
    centers = rng.integers(radius + 1, prefix_length - radius, size=count)
    return [eta_window(int(c), radius) for c in centers]


@dataclass(frozen=True)
class PartitionClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus <= 0 or self.modulus & (self.modulus - 1):
            raise ValueError("modulus must be a power of two")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range")


def partition_candidates(w: Window, n: int) -> list:
    """All residues mod 2^(n+1) consistent with the window."""
    period = 1 << (n + 1)
    pattern = np.frombuffer(bytes([255]) + p_n(n), dtype=np.uint8)
    letters = np.frombuffer(w.letters, dtype=np.uint8)
    positions = np.arange(w.start, w.end + 1)
    found = []
    for r in range(period):
        phase = (positions - r) % period
        seps = phase == 0
        if np.any(letters[seps] == A):
            continue
        if np.array_equal(letters[~seps], pattern[phase[~seps]]):
            found.append(r)
    return found


def n_partition(w: Window, n: int) -> PartitionClass:
    """Residue class of the separator positions of the n-decomposition."""
    period = 1 << (n + 1)
    if len(w) < 3 * period:
        raise InsufficientContextError(
            f"window too short: need {3 * period} letters for n={n}")
    found = partition_candidates(w, n)
    if not found:
        raise PartitionError("no valid partition: window is not a factor of the subshift")
    if len(found) > 1:
        raise PartitionError(f"ambiguous partition: residues {found}")
    return PartitionClass(period, found[0])


def special_word_window(s, radius: int) -> Window:
    """Positions ``-radius .. radius + 1`` of the sequence ``...p s | p...``."""
    s = letter(s)
    if s == A:
        raise InvalidWordError("special words exist for x, y, z only")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    block = p_n(level_for_length(radius + 1))
    full = Window(block + bytes([s]) + block, -len(block))
    return Window(full.slice(-radius, radius + 1), -radius)


# --------------------------------------------------------------------------
# derived sequence, repetitivity


def derived_sequence(length: int) -> bytes:
    """The separators r_1 r_2 ... of the 0-decomposition of eta."""
    return eta_prefix(2 * length)[1::2]


def isolation_violations(seq: bytes) -> list:
    """Positions where y/z are not flanked by x, or an x-run has length 2 or >= 4.

    Runs touching either end of ``seq`` are not judged.
    """
    bad = []
    n = len(seq)
    for i in range(1, n - 1):
        if seq[i] in (Y, Z) and (seq[i - 1] != X or seq[i + 1] != X):
            bad.append(i)
    i = 0
    while i < n:
        if seq[i] != X:
            i += 1
            continue
        j = i
        while j < n and seq[j] == X:
            j += 1
        if i > 0 and j < n and (j - i) not in (1, 3):
            bad.append(i)
        i = j
    return bad


def repetitivity_function(text: bytes, length: int) -> int:
    """Smallest M such that every length-M factor of ``text`` contains
    every length-``length`` factor of ``text``."""
    n = len(text)
    last = {}
    worst = {}
    for i in range(n - length + 1):
        f = text[i:i + length]
        prev = last.get(f, -1)
        gap = i - prev
        if gap > worst.get(f, 0):
            worst[f] = gap
        last[f] = i
    need = 0
    for f, i in last.items():
        # gap from the final occurrence to the end of the text
        tail = n - length + 1 - i
        need = max(need, worst[f], tail)
    return need + length - 1


def linear_repetitivity(prefix_length: int, lengths) -> dict:
    """``{L: R(L) / L}`` over a prefix of eta, with R from
    :func:`repetitivity_function`."""
    text = eta_prefix(prefix_length)
    return {L: Fraction(repetitivity_function(text, L), L) for L in lengths}
