"""Weighted Laplacians of the linear Schreier graphs as Jacobi matrices.

Edge labels a, b, c, d carry weights t, u, v, w.  Matrices come in two
arithmetic modes: float64 (``numpy`` arrays) and exact (tuples of
``Fraction``), picked from the parameter types and never mixed.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import schreier, words
from .errors import InvalidWordError, ParameterError
from .words import A, X, Y, Z, Window


@dataclass(frozen=True)
class WeightParams:
    t: float
    u: float
    v: float
    w: float

    def __post_init__(self):
        vals = (self.t, self.u, self.v, self.w)
        kinds = {isinstance(x, (int, Fraction)) for x in vals}
        if len(kinds) > 1:
            raise ParameterError("mixed exact and float parameters")
        if not kinds.pop():
            for name, x in zip("tuvw", vals):
                x = float(x)
                if not math.isfinite(x):
                    raise ParameterError(f"{name} is not finite")
                object.__setattr__(self, name, x)
        else:
            for name, x in zip("tuvw", vals):
                object.__setattr__(self, name, Fraction(x))

    @classmethod
    def parse(cls, text: str, exact: bool = False) -> "WeightParams":
        """Read ``"t,u,v,w"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4:
            raise ParameterError("expected four comma-separated values t,u,v,w")
        try:
            vals = [Fraction(s) if exact else float(s) for s in parts]
        except ValueError as exc:
            raise ParameterError(f"cannot parse parameters {text!r}: {exc}") from None
        return cls(*vals)

    @property
    def exact(self) -> bool:
        return isinstance(self.t, Fraction)

    @property
    def D(self):
        return self.u + self.v + self.w

    @property
    def in_P(self) -> bool:
        return (self.t != 0 and self.u + self.v != 0
                and self.u + self.w != 0 and self.v + self.w != 0)

    @property
    def anisotropic(self) -> bool:
        return not (self.u == self.v == self.w)

    def require_P(self):
        if not self.in_P:
            raise ParameterError(
                "parameters outside the admissible set: need t != 0, u+v != 0, "
                "u+w != 0 and v+w != 0")

    def edge_weight(self, label: str):
        return {"a": self.t, "b": self.u, "c": self.v, "d": self.w}[label]

    def __str__(self):
        return ",".join(str(x) for x in (self.t, self.u, self.v, self.w))


def weight_f(s, p: WeightParams):
    """Off-diagonal weight for the gap letter ``s``."""
    s = words.letter(s)
    return (p.t, p.D - p.w, p.D - p.v, p.D - p.u)[s]


def weight_g(pair, p: WeightParams):
    """Diagonal weight at a vertex between two gap letters, one of them a."""
    pair = words.word(pair)
    if len(pair) != 2 or (pair[0] == A) == (pair[1] == A):
        raise InvalidWordError(f"undefined pair {words.to_str(pair)!r}: need exactly one a")
    s = pair[0] if pair[1] == A else pair[1]
    return {X: p.w, Y: p.v, Z: p.u}[s]


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    diagonal: object
    off_diagonal: object

    def __post_init__(self):
        d, e = self.diagonal, self.off_diagonal
        if len(d) < 1 or len(e) != len(d) - 1:
            raise ValueError("need N >= 1 diagonal and N-1 off-diagonal entries")
        exact = all(isinstance(x, Fraction) for x in list(d) + list(e))
        if exact:
            object.__setattr__(self, "diagonal", tuple(d))
            object.__setattr__(self, "off_diagonal", tuple(e))
        else:
            d = np.array(d, dtype=np.float64)
            e = np.array(e, dtype=np.float64)
            d.flags.writeable = False
            e.flags.writeable = False
            object.__setattr__(self, "diagonal", d)
            object.__setattr__(self, "off_diagonal", e)

    @property
    def exact(self) -> bool:
        return isinstance(self.diagonal, tuple)

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def __eq__(self, other):
        if not isinstance(other, JacobiMatrix) or self.size != other.size:
            return NotImplemented if not isinstance(other, JacobiMatrix) else False
        return (list(self.diagonal) == list(other.diagonal)
                and list(self.off_diagonal) == list(other.off_diagonal))

    __hash__ = None

    def to_float(self) -> "JacobiMatrix":
        if not self.exact:
            return self
        return JacobiMatrix([float(x) for x in self.diagonal],
                            [float(x) for x in self.off_diagonal])

    def dense(self) -> np.ndarray:
        m = self.to_float()
        return (np.diag(m.diagonal) + np.diag(m.off_diagonal, 1)
                + np.diag(m.off_diagonal, -1))

    def is_persymmetric(self) -> bool:
        d, e = list(self.diagonal), list(self.off_diagonal)
        return d == d[::-1] and e == e[::-1]

    def to_csv(self) -> str:
        lines = ["diagonal,off_diagonal"]
        for i, x in enumerate(self.diagonal):
            e = _fmt(self.off_diagonal[i]) if i < self.size - 1 else ""
            lines.append(f"{_fmt(x)},{e}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        conv = str if self.exact else float
        return json.dumps({"size": self.size,
                           "diagonal": [conv(x) for x in self.diagonal],
                           "off_diagonal": [conv(x) for x in self.off_diagonal]})


def _fmt(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


def jacobi_from_word(w, p: WeightParams) -> JacobiMatrix:
    """Laplacian of the graph with gap word ``w``, read off letter by letter."""
    w = w.letters if isinstance(w, Window) else words.word(w)
    if not schreier.is_word_prime(w):
        raise InvalidWordError(f"not in Word': {words.to_str(w)!r}")
    fv = (p.t, p.D - p.w, p.D - p.v, p.D - p.u)
    gv = {X: p.w, Y: p.v, Z: p.u}
    off = [fv[s] for s in w]
    # interior vertices sit between an a-gap and a non-a gap
    diag = [p.D] + [gv[w[i] | w[i - 1]] for i in range(1, len(w))] + [p.D]
    return JacobiMatrix(diag, off)


def laplacian_from_graph(g: schreier.LabeledLinearGraph, p: WeightParams) -> JacobiMatrix:
    """Sum edge weights over an explicit edge list; loops count once."""
    n = g.vertices
    zero = Fraction(0) if p.exact else 0.0
    diag = [zero] * n
    off = [zero] * (n - 1)
    for a, b, label in g.edges():
        wt = p.edge_weight(label)
        if a == b:
            diag[a - 1] += wt
        else:
            if abs(a - b) != 1:
                raise InvalidWordError("edge between non-adjacent vertices")
            off[min(a, b) - 1] += wt
    return JacobiMatrix(diag, off)


def laplacian_gamma_n(n: int, p: WeightParams) -> JacobiMatrix:
    return laplacian_from_graph(schreier.gamma_n(n), p)


def finite_section(w: Window, p: WeightParams) -> JacobiMatrix:
    """Free-boundary section over the window with non-a end letters dropped."""
    letters = w.letters
    if len(letters) >= 1 and letters[0] != A:
        letters = letters[1:]
    if len(letters) >= 1 and letters[-1] != A:
        letters = letters[:-1]
    if not letters or letters[0] != A or letters[-1] != A:
        raise InvalidWordError("untrimmable window")
    return jacobi_from_word(letters, p)


# --------------------------------------------------------------------------
# transfer matrices


def site_coefficients(pair, p: WeightParams) -> tuple:
    """``(f_n, g_n)`` for the site whose letters at n-1, n are ``pair``."""
    pair = words.word(pair)
    return weight_f(pair[1], p), weight_g(pair, p)


def transfer_matrix(E, pair, p: WeightParams):
    """One-step matrix sending (u(n), f_{n-1} u(n-1)) to (u(n+1), f_n u(n)).

    Returns a 2x2 float array, or nested tuples of Fractions when both the
    parameters and ``E`` are exact.
    """
    f, g = site_coefficients(pair, p)
    return transfer_from_coefficients(E, f, g)


def transfer_from_coefficients(E, f, g):
    if f == 0:
        raise ParameterError("f vanishes: parameters outside the admissible set")
    if isinstance(E, (int, Fraction)) and isinstance(f, Fraction):
        E = Fraction(E)
        return (((E - g) / f, -1 / f), (f, Fraction(0)))
    return np.array([[(E - g) / f, -1.0 / f], [f, 0.0]], dtype=np.float64)


def window_coefficients(w: Window, lo: int, hi: int, p: WeightParams) -> list:
    """``(f_n, g_n)`` for sites lo..hi; needs letters lo-1..hi."""
    letters = w.slice(lo - 1, hi)
    return [site_coefficients(letters[i:i + 2], p) for i in range(len(letters) - 1)]


def integer_step(E: Fraction, f: Fraction, g: Fraction) -> tuple:
    """``(N, c)`` with N an integer matrix and N / c the one-step matrix."""
    entries = ((E - g) / f, -1 / f, f)
    c = math.lcm(*(x.denominator for x in entries))
    a, b, cf = (int(x * c) for x in entries)
    return ((a, b), (cf, 0)), c


def _mul(m, n):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def integer_product(mats: list):
    """Ordered product ``mats[-1] @ ... @ mats[0]`` by a balanced tree."""
    if not mats:
        return ((1, 0), (0, 1))
    layer = list(mats)
    while len(layer) > 1:
        nxt = [_mul(layer[i + 1], layer[i]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def exact_product_determinant(E, coeffs: list) -> Fraction:
    """Exact determinant of the transfer-matrix product over ``coeffs``."""
    E = Fraction(E)
    steps = [integer_step(E, Fraction(f), Fraction(g)) for f, g in coeffs]
    (a, b), (c, d) = integer_product([m for m, _ in steps])
    scale = math.prod(c_ for _, c_ in steps)
    return Fraction(a * d - b * c, scale * scale)
