"""Linear Schreier graphs in gap-word encoding, and the generator actions on windows.

A graph on vertices ``1..V`` is stored as its gap word (the letter between
vertices ``i`` and ``i+1``) plus a root.  Gap ``a`` is a single a-edge; gap
``x`` is a b- and a c-edge with d-loops on both endpoints; ``y`` carries b, d
with c-loops; ``z`` carries c, d with b-loops.  The end vertices get loops
b, c, d.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import words
from ._config import check_length
from .errors import InsufficientContextError, InvalidWordError
from .words import A, X, Y, Z, Window

GENERATORS = "abcd"

# gap letter -> (edge labels, loop label)
BUNDLES = {A: ("a", None), X: ("bc", "d"), Y: ("bd", "c"), Z: ("cd", "b")}

# relabelling applied by the graph substitution, on edge labels
THETA_LABELS = {"a": "a", "b": "d", "c": "b", "d": "c"}


def _bundle_image(s: int) -> int:
    labels = {THETA_LABELS[c] for c in BUNDLES[s][0]}
    return next(k for k, (lab, _) in BUNDLES.items() if set(lab) == labels)


# the relabelling acts on gap letters exactly as tau acts on x, y, z
assert all(_bundle_image(s) == words.TAU.images[s][0] for s in (X, Y, Z))


def is_word_prime(w: bytes) -> bool:
    """Starts and ends with a, and each adjacent pair holds exactly one a."""
    if not w or w[0] != A or w[-1] != A:
        return False
    return all((w[i] == A) != (w[i + 1] == A) for i in range(len(w) - 1))


@dataclass(frozen=True)
class LabeledLinearGraph:
    gaps: bytes
    root: int

    def __post_init__(self):
        object.__setattr__(self, "gaps", words.word(self.gaps))
        if not is_word_prime(self.gaps):
            raise InvalidWordError(f"not in Word': {words.to_str(self.gaps)!r}")
        if not 1 <= self.root <= self.vertices:
            raise InvalidWordError(f"root {self.root} outside 1..{self.vertices}")

    @property
    def vertices(self) -> int:
        return len(self.gaps) + 1

    def edges(self) -> list:
        """``(u, v, label)`` triples; loops have ``u == v``."""
        out = [(1, 1, c) for c in "bcd"]
        for i, s in enumerate(self.gaps, start=1):
            labels, loop = BUNDLES[s]
            out.extend((i, i + 1, c) for c in labels)
            if loop:
                out.append((i, i, loop))
                out.append((i + 1, i + 1, loop))
        out.extend((self.vertices, self.vertices, c) for c in "bcd")
        return out

    def label_degrees(self) -> dict:
        """``{vertex: {label: count}}``; loops count once."""
        deg = {v: dict.fromkeys(GENERATORS, 0) for v in range(1, self.vertices + 1)}
        for u, v, c in self.edges():
            deg[u][c] += 1
            if v != u:
                deg[v][c] += 1
        return deg

    def is_schreier_regular(self) -> bool:
        return all(all(k == 1 for k in d.values()) for d in self.label_degrees().values())

    def a_edge_count(self) -> int:
        return self.gaps.count(A)

    def with_root(self, root: int) -> "LabeledLinearGraph":
        return LabeledLinearGraph(self.gaps, root)

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertices,
                           "gaps": words.to_str(self.gaps),
                           "root": self.root})

    @classmethod
    def from_json(cls, text) -> "LabeledLinearGraph":
        data = json.loads(text) if isinstance(text, str) else text
        g = cls(words.word(data["gaps"]), int(data["root"]))
        if "vertices" in data and int(data["vertices"]) != g.vertices:
            raise InvalidWordError("vertex count does not match gaps")
        return g

    def to_dot(self) -> str:
        lines = ["graph schreier {"]
        for v in range(1, self.vertices + 1):
            extra = ", shape=doublecircle" if v == self.root else ""
            lines.append(f'  {v} [label="{v}"{extra}];')
        for u, v, c in self.edges():
            lines.append(f"  {u} -- {v} [label={c}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def root_vertex(w: Window) -> int:
    """Vertex index of position 1; vertex ``j`` sits at position ``offset + j - 1``."""
    root = 2 - w.offset
    if not 1 <= root <= len(w) + 1:
        raise InsufficientContextError("no root: position 1 is not a vertex of the window")
    return root


def graph_of_word(w: Window) -> LabeledLinearGraph:
    if not isinstance(w, Window):
        w = Window(w, 1)
    if not is_word_prime(w.letters):
        raise InvalidWordError(f"not in Word': {words.to_str(w.letters)!r}")
    return LabeledLinearGraph(w.letters, root_vertex(w))


def theta(g: LabeledLinearGraph) -> LabeledLinearGraph:
    """Graph substitution: each a-gap becomes a,x,a and labels b,c,d rotate."""
    # every a-gap left of the root adds two vertices
    root = g.root + 2 * g.gaps[:g.root - 1].count(A)
    return LabeledLinearGraph(words.TAU(g.gaps), root)


def substitute_window(w: Window, rule=words.TAU) -> Window:
    """Image of a window straddling the origin; the bar stays between the
    images of positions 0 and 1."""
    if not w.straddles_origin():
        raise InsufficientContextError("window must cover positions 0..1 or end at 0")
    left = w.letters[:1 - w.offset]
    return Window(rule(w.letters), 1 - len(rule(left)))


def gamma_n(n: int) -> LabeledLinearGraph:
    """Level-n graph with 2^n vertices, rooted at its rightmost vertex."""
    if n < 1:
        raise ValueError("n must be >= 1")
    check_length(1 << n, "graph")
    g = LabeledLinearGraph(bytes([A]), 2)
    for _ in range(n - 1):
        g = theta(g)
    return g


def canonical_form(g: LabeledLinearGraph) -> tuple:
    """``(gaps, root, reflected)``: the smaller of the graph and its mirror image."""
    mirror = (g.gaps[::-1], g.vertices + 1 - g.root)
    if mirror < (g.gaps, g.root):
        return mirror[0], mirror[1], True
    return g.gaps, g.root, False


def same_rooted_graph(g: LabeledLinearGraph, h: LabeledLinearGraph) -> bool:
    return canonical_form(g)[:2] == canonical_form(h)[:2]


def trimmed_window(w: Window, lo: int, hi: int) -> Window:
    """Positions lo..hi of ``w``, with a non-a letter dropped at either end."""
    letters = w.slice(lo, hi)
    if letters and letters[0] != A:
        letters, lo = letters[1:], lo + 1
    if letters and letters[-1] != A:
        letters = letters[:-1]
    if not letters or letters[0] != A or letters[-1] != A:
        raise InvalidWordError("untrimmable window")
    return Window(letters, lo)


# --------------------------------------------------------------------------
# generator actions

TRIGGERS = {"a": frozenset({A}), "b": frozenset({X, Y}),
            "c": frozenset({X, Z}), "d": frozenset({Y, Z})}


def act(s: str, w: Window) -> Window:
    """Action of one generator: move the bar across the first triggering letter."""
    try:
        trig = TRIGGERS[s]
    except KeyError:
        raise InvalidWordError(f"unknown generator {s!r}") from None
    if w.at(1) in trig:
        w.at(2)
        return w.shift(1)
    if w.at(0) in trig:
        w.at(-1)
        return w.shift(-1)
    return w


def act_group_word(g: str, w: Window) -> Window:
    """Apply the letters of ``g`` from right to left."""
    for s in reversed(g):
        w = act(s, w)
    return w


def displacement(g: str, w: Window) -> int:
    """Net shift k with ``act_group_word(g, w) == w.shift(k)``."""
    return w.offset - act_group_word(g, w).offset


KAPPA = {"a": "aca", "b": "d", "c": "b", "d": "c"}
RELATOR_BASES = {"ad": "ad" * 4, "adacac": "adacac" * 4}


def kappa(g: str) -> str:
    check_length(sum(len(KAPPA[c]) for c in g), "group word")
    return "".join(KAPPA[c] for c in g)


def lysenok_relator(k: int, base: str = "ad") -> str:
    """``kappa^k`` applied to ``(ad)^4`` or ``(adacac)^4``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    g = RELATOR_BASES.get(base, base)
    if g not in RELATOR_BASES.values():
        raise ValueError(f"unknown relator base {base!r}; use 'ad' or 'adacac'")
    for _ in range(k):
        g = kappa(g)
    return g
