"""Eigenvalues of Jacobi matrices, cover measures, density of states and the
three-block growth check for transfer matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels, operators, words
from .errors import InsufficientContextError, InvalidWordError
from .operators import JacobiMatrix, WeightParams
from .words import Window

DEFAULT_TOL = 1e-12


def _pivmin(e2: np.ndarray) -> float:
    return np.finfo(np.float64).tiny * max(1.0, float(e2.max()) if len(e2) else 1.0)


def sturm_count(m: JacobiMatrix, x) -> np.ndarray:
    """Number of eigenvalues strictly below each value in ``x``."""
    m = m.to_float()
    e2 = np.ascontiguousarray(m.off_diagonal ** 2)
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    return kernels.sturm_counts(np.ascontiguousarray(m.diagonal), e2, xs, _pivmin(e2))


def gershgorin_bounds(d: np.ndarray, e: np.ndarray) -> tuple:
    r = np.zeros(len(d))
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    return float(np.min(d - r)), float(np.max(d + r))


def _extreme(d, e2, pivmin, lo, hi, k, n_iter) -> float:
    """k-th smallest eigenvalue by scalar bisection."""
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        if kernels.sturm_counts(d, e2, np.array([mid]), pivmin)[0] > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _block_eigenvalues(d: np.ndarray, e: np.ndarray, tol: float) -> np.ndarray:
    n = len(d)
    if n == 1:
        return d.copy()
    e2 = np.ascontiguousarray(e * e)
    pivmin = _pivmin(e2)
    lo, hi = gershgorin_bounds(d, e)
    pad = 2 * np.finfo(np.float64).eps * max(abs(lo), abs(hi), 1.0) + 2 * pivmin
    lo, hi = lo - pad, hi + pad
    # locate the extremes first so the bracket, and the stopping width,
    # follow the spectral hull rather than the Gershgorin interval
    coarse = 60
    lmin = _extreme(d, e2, pivmin, lo, hi, 0, coarse)
    lmax = _extreme(d, e2, pivmin, lo, hi, n - 1, coarse)
    width = lmax - lmin
    slack = 4 * (hi - lo) * 2.0 ** -coarse + pad
    blo, bhi = lmin - slack, lmax + slack
    target = tol * width if width > 0 else tol * max(abs(lmax), 1.0)
    n_iter = max(1, math.ceil(math.log2((bhi - blo) / max(target, 1e-300))))
    return kernels.bisect_all(np.ascontiguousarray(d), e2, blo, bhi, n_iter, pivmin)


def eigenvalues(m: JacobiMatrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """All eigenvalues, ascending, by Sturm-count bisection.

    Zero off-diagonal entries split the matrix into independent blocks.
    Each eigenvalue is bracketed to width ``tol`` times the hull width of
    its block.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    m = m.to_float()
    d, e = m.diagonal, m.off_diagonal
    cuts = np.flatnonzero(e == 0) + 1
    bounds = [0, *cuts.tolist(), len(d)]
    parts = [_block_eigenvalues(np.array(d[a:b]), np.array(e[a:b - 1]), tol)
             for a, b in zip(bounds[:-1], bounds[1:])]
    return np.sort(np.concatenate(parts))


@dataclass(frozen=True)
class SpectrumEstimate:
    level: int
    eigenvalues: np.ndarray

    @property
    def hull(self) -> tuple:
        return float(self.eigenvalues[0]), float(self.eigenvalues[-1])

    @property
    def hull_width(self) -> float:
        lo, hi = self.hull
        return hi - lo

    def eps(self) -> float:
        """Cover radius tied to the level: hull width times 2^-n."""
        return self.hull_width * 2.0 ** -self.level

    def measure(self) -> float:
        return measure_estimate(self.eigenvalues, self.eps())


def level_spectrum(n: int, p: WeightParams, tol: float = DEFAULT_TOL) -> SpectrumEstimate:
    p.require_P()
    return SpectrumEstimate(n, eigenvalues(operators.laplacian_gamma_n(n, p), tol))


def spectrum_tower(n_max: int, p: WeightParams, tol: float = DEFAULT_TOL,
                   n_min: int = 1) -> list:
    if n_max < n_min:
        raise ValueError("n_max must be >= n_min")
    p.require_P()
    return [level_spectrum(n, p, tol) for n in range(n_min, n_max + 1)]


def measure_estimate(eigs, eps: float) -> float:
    """Length of the union of the intervals [lambda - eps, lambda + eps]."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    x = np.sort(np.asarray(eigs, dtype=np.float64))
    if len(x) == 0:
        return 0.0
    gaps = np.diff(x)
    # each gap contributes its length, capped at the 2*eps the intervals overlap by
    return float(2 * eps + np.minimum(gaps, 2 * eps).sum())


def ids(eigs, E: float) -> Fraction:
    """Fraction of eigenvalues <= E."""
    x = np.sort(np.asarray(eigs, dtype=np.float64))
    if len(x) == 0:
        raise ValueError("empty spectrum")
    return Fraction(int(np.searchsorted(x, E, side="right")), len(x))


def ids_table(eigs, energies) -> list:
    return [(float(E), ids(eigs, E)) for E in energies]


def ids_sup_distance(eigs1, eigs2, atol: float = 1e-9) -> float:
    """sup_E |N_1(E) - N_2(E)| for the two normalized counting functions.

    Points of either set closer than ``atol`` are treated as one, so a
    degenerate eigenvalue shared by both sets but resolved a few ulps apart
    does not register as a spurious step.
    """
    a = np.sort(np.asarray(eigs1, dtype=np.float64))
    b = np.sort(np.asarray(eigs2, dtype=np.float64))
    pts = np.union1d(a, b)
    # right end of each cluster of points chained within atol
    last = np.append(np.diff(pts) > atol, True)
    pts = pts[last]
    fa = np.searchsorted(a, pts, side="right") / len(a)
    fb = np.searchsorted(b, pts, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


# --------------------------------------------------------------------------
# growth of solutions along special sequences


@dataclass(frozen=True)
class GordonWitness:
    """``...w w | w v...`` around the origin of the special sequence for ``s``."""

    s: int
    m: int
    block: bytes
    prefix: bytes

    def __post_init__(self):
        if len(self.prefix) != len(self.block) - 1 or not self.block.startswith(self.prefix):
            raise InvalidWordError("prefix must be the block minus its last letter")

    @property
    def scale(self) -> int:
        return len(self.block)

    def window(self) -> Window:
        """The special sequence on positions -2L .. 2L+1."""
        return words.special_word_window(self.s, 2 * self.scale)

    def verify(self) -> bool:
        w = self.window()
        L = self.scale
        return (w.slice(-2 * L + 1, 0) == self.block * 2
                and w.slice(1, 2 * L - 1) == self.block + self.prefix)


def gordon_witnesses(s, k_max: int) -> list:
    """Witnesses for m = 0..k_max with block p^(3m+k) s, k = 0, 1, 2 for x, y, z."""
    s = words.letter(s)
    if s == words.A:
        raise InvalidWordError("witnesses exist for x, y, z only")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    k = s - 1
    out = []
    for m in range(k_max + 1):
        v = words.p_n(3 * m + k)
        wit = GordonWitness(s, m, v + bytes([s]), v)
        if not wit.verify():
            raise AssertionError(f"witness m={m} does not match the special sequence")
        out.append(wit)
    return out


@dataclass(frozen=True)
class GrowthReport:
    witness: GordonWitness
    energy: float
    log_norms: dict      # offset -> log of the solution norm at base + offset
    determinants: dict   # offset -> exact determinant of the product, or None

    @property
    def ratio(self) -> float:
        """max(|u_{2L}|, |u_L|, |u_{-L}|) / |u_0| (can overflow to inf)."""
        return math.exp(min(700.0, self.log_ratio))

    @property
    def log_ratio(self) -> float:
        L = self.witness.scale
        return max(self.log_norms[k] for k in (2 * L, L, -L)) - self.log_norms[0]

    @property
    def holds(self) -> bool:
        return self.log_ratio >= math.log(0.25)

    @property
    def max_det_error(self) -> float:
        errs = [abs(float(d - 1)) for d in self.determinants.values() if d is not None]
        return max(errs, default=0.0)


# the base site sits one step left of the bar, so that the L-periodic stretch
# of coefficients covers sites -L .. 2L-1 on both sides of it
BASE_SITE = -1


def _propagate(coeffs, E, u0, inverse=False) -> float:
    """Log norm after applying the one-step matrices (or their inverses, in
    reverse order) to ``u0``, renormalizing as we go."""
    u = np.array(u0, dtype=np.float64)
    log = math.log(np.hypot(*u))
    u /= np.hypot(*u)
    seq = reversed(coeffs) if inverse else coeffs
    for f, g in seq:
        f, g = float(f), float(g)
        if inverse:
            # inverse of [[(E-g)/f, -1/f], [f, 0]] is [[0, 1/f], [-f, (E-g)/f]]
            u = np.array([u[1] / f, -f * u[0] + (E - g) / f * u[1]])
        else:
            u = np.array([(E - g) / f * u[0] - u[1] / f, f * u[0]])
        nrm = np.hypot(*u)
        log += math.log(nrm)
        u /= nrm
    return log


def gordon_growth_check(witness: GordonWitness, E: float, p: WeightParams,
                        u0=(1.0, 0.0), exact_determinants: bool = True) -> GrowthReport:
    """Norms of the solution seeded by ``u0`` at the base site and L, 2L, -L
    sites away; optionally the exact determinants of the three products."""
    p.require_P()
    L = witness.scale
    w = witness.window()
    n0 = BASE_SITE
    if not (w.contains(n0 - L - 1) and w.contains(n0 + 2 * L)):
        raise InsufficientContextError("window too small for the growth check")
    fwd = operators.window_coefficients(w, n0 + 1, n0 + 2 * L, p)
    back = operators.window_coefficients(w, n0 - L + 1, n0, p)
    logs = {0: math.log(np.hypot(*u0)),
            L: _propagate(fwd[:L], E, u0),
            2 * L: _propagate(fwd, E, u0),
            -L: _propagate(back, E, u0, inverse=True)}
    dets = dict.fromkeys((L, 2 * L, -L))
    if exact_determinants:
        Eq = Fraction(E)
        dets = {L: operators.exact_product_determinant(Eq, fwd[:L]),
                2 * L: operators.exact_product_determinant(Eq, fwd),
                -L: operators.exact_product_determinant(Eq, back)}
    return GrowthReport(witness, float(E), logs, dets)


def sample_energies(spectrum: SpectrumEstimate, count: int, seed: int) -> np.ndarray:
    """Seeded uniform energies in the hull of ``spectrum``."""
    rng = np.random.default_rng(seed)
    lo, hi = spectrum.hull
    return rng.uniform(lo, hi, size=count)
