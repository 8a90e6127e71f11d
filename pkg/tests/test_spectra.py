import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigshift import operators as op
from grigshift import spectra, words
from grigshift.errors import ParameterError
from grigshift.operators import JacobiMatrix, WeightParams

ANISO = WeightParams(1.0, 1.0, 2.0, 3.0)
ISO = WeightParams(0.25, 0.25, 0.25, 0.25)


def charpoly_roots(d, e, dps=50):
    """Roots of det(x - J) from the leading-minor recurrence, in high precision."""
    with mpmath.workdps(dps):
        prev, cur = [mpmath.mpf(1)], [-mpmath.mpf(d[0]), mpmath.mpf(1)]
        for i in range(1, len(d)):
            # p_i = (x - d_i) p_{i-1} - e_{i-1}^2 p_{i-2}; coefficients low to high
            nxt = [mpmath.mpf(0)] * (len(cur) + 1)
            for k, c in enumerate(cur):
                nxt[k + 1] += c
                nxt[k] -= mpmath.mpf(d[i]) * c
            for k, c in enumerate(prev):
                nxt[k] -= mpmath.mpf(e[i - 1]) ** 2 * c
            prev, cur = cur, nxt
        roots = mpmath.polyroots(cur[::-1], maxsteps=400, extraprec=400)
        return sorted(float(mpmath.re(r)) for r in roots)


def random_jacobi(rng, n):
    return JacobiMatrix(rng.uniform(-3, 3, n), rng.uniform(0.2, 2, n - 1) * rng.choice([-1, 1], n - 1))


class TestEigenvalues:
    def test_two_by_two(self):
        assert spectra.eigenvalues(JacobiMatrix([6.0, 6.0], [2.0])) == pytest.approx([4, 8], abs=1e-11)

    def test_three_by_three(self):
        got = spectra.eigenvalues(JacobiMatrix([2.0, 2.0, 2.0], [1.0, 1.0]))
        assert got == pytest.approx([2 - math.sqrt(2), 2, 2 + math.sqrt(2)], abs=1e-11)

    def test_single(self):
        assert spectra.eigenvalues(JacobiMatrix([1.5], [])).tolist() == [1.5]

    def test_against_charpoly(self, rng):
        for _ in range(30):
            m = random_jacobi(rng, int(rng.integers(2, 9)))
            assert np.abs(spectra.eigenvalues(m) - charpoly_roots(m.diagonal, m.off_diagonal)).max() < 1e-9

    def test_section_against_charpoly(self):
        m = op.jacobi_from_word("axaya", ANISO)
        assert m.size == 6
        ref = charpoly_roots(m.diagonal, m.off_diagonal)
        assert np.abs(spectra.eigenvalues(m) - ref).max() < 1e-9

    def test_zero_off_diagonal_splits(self):
        m = JacobiMatrix([1.0, 2.0, 5.0, 7.0], [0.5, 0.0, 1.0])
        ref = np.linalg.eigvalsh(m.dense())
        assert np.abs(spectra.eigenvalues(m) - ref).max() < 1e-10

    def test_tolerance_positive(self):
        with pytest.raises(ValueError):
            spectra.eigenvalues(JacobiMatrix([1.0, 1.0], [1.0]), tol=0)

    @pytest.mark.parametrize("n", [4, 7, 9])
    def test_level_against_lapack(self, n):
        est = spectra.level_spectrum(n, ANISO)
        ref = np.linalg.eigvalsh(op.laplacian_gamma_n(n, ANISO).dense())
        assert np.abs(est.eigenvalues - ref).max() <= 1e-11 * est.hull_width * 4

    def test_sturm_counts(self, rng):
        m = random_jacobi(rng, 40)
        ref = np.linalg.eigvalsh(m.dense())
        xs = rng.uniform(-6, 6, 50)
        assert spectra.sturm_count(m, xs).tolist() == [int((ref < x).sum()) for x in xs]

    @given(st.integers(3, 60), st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_interlacing(self, n, seed):
        m = random_jacobi(np.random.default_rng(seed), n)
        big = spectra.eigenvalues(m)
        small = spectra.eigenvalues(JacobiMatrix(m.diagonal[:-1], m.off_diagonal[:-1]))
        slack = 1e-10
        assert np.all(big[:-1] <= small + slack) and np.all(small <= big[1:] + slack)

    def test_deterministic(self, rng):
        m = random_jacobi(rng, 200)
        assert spectra.eigenvalues(m).tobytes() == spectra.eigenvalues(m).tobytes()


class TestTower:
    def test_dimensions(self):
        tower = spectra.spectrum_tower(6, ANISO)
        assert [len(s.eigenvalues) for s in tower] == [2 ** n for n in range(1, 7)]
        assert tower[0].eigenvalues.tolist() == pytest.approx([5.0, 7.0])

    def test_markov_norm(self):
        for s in spectra.spectrum_tower(8, ISO):
            lo, hi = s.hull
            assert -1 - 1e-12 <= lo and hi <= 1 + 1e-12

    def test_rejects_outside_P(self):
        with pytest.raises(ParameterError):
            spectra.spectrum_tower(3, WeightParams(1.0, 1.0, -1.0, 2.0))

    @pytest.mark.parametrize("n", [3, 6, 9])
    @pytest.mark.parametrize("perm", [(1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)])
    def test_relabel_symmetry(self, n, perm):
        # permuting the weights of b, c, d moves each two-label bundle x, y, z
        # onto another; relabelling the letters the same way keeps the spectrum
        labels = "bcd"
        weights = dict(zip(labels, (ANISO.u, ANISO.v, ANISO.w)))
        sigma = {labels[i]: labels[j] for i, j in enumerate(perm)}
        moved = WeightParams(ANISO.t, *(weights[sigma[c]] for c in labels))
        bundles = {words.X: "bc", words.Y: "bd", words.Z: "cd"}
        inverse = {v: k for k, v in sigma.items()}
        letter_map = {s: next(t for t, lab in bundles.items()
                              if set(lab) == {inverse[c] for c in bundles[s]})
                      for s in bundles}
        w = words.p_n(n - 1)
        relabelled = bytes(letter_map.get(c, c) for c in w)
        base = spectra.eigenvalues(op.jacobi_from_word(w, ANISO))
        other = spectra.eigenvalues(op.jacobi_from_word(relabelled, moved))
        assert np.abs(base - other).max() < 1e-9


class TestMeasure:
    @pytest.mark.parametrize("eigs,eps,value", [([0, 1], 0.1, 0.4), ([0, 0.05], 0.1, 0.25),
                                                ([], 0.1, 0.0), ([3], 0.5, 1.0)])
    def test_values(self, eigs, eps, value):
        assert spectra.measure_estimate(eigs, eps) == pytest.approx(value)

    @given(st.lists(st.floats(-10, 10), max_size=30), st.floats(0.001, 2))
    def test_against_sweep(self, eigs, eps):
        total, end = 0.0, -math.inf
        for x in sorted(eigs):
            lo, hi = x - eps, x + eps
            total += hi - max(lo, end)
            end = hi
        assert spectra.measure_estimate(eigs, eps) == pytest.approx(total, abs=1e-9)

    def test_eps_positive(self):
        with pytest.raises(ValueError):
            spectra.measure_estimate([0.0], 0.0)


class TestIds:
    @pytest.mark.parametrize("E,value", [(1, Fraction(2, 3)), (-5, 0), (9, 1), (0, Fraction(1, 3))])
    def test_values(self, E, value):
        assert spectra.ids([0, 1, 2], E) == value

    def test_sup_distance(self):
        assert spectra.ids_sup_distance([0, 1], [0, 1]) == 0
        assert spectra.ids_sup_distance([0, 1], [2, 3]) == 1
        assert spectra.ids_sup_distance([0.0, 2.0], [1.0, 2.0, 3.0, 4.0]) == pytest.approx(0.5)

    @given(st.lists(st.floats(-5, 5), min_size=1, max_size=20),
           st.lists(st.floats(-5, 5), min_size=1, max_size=20))
    def test_sup_distance_on_grid(self, a, b):
        grid = np.union1d(a, b)
        brute = max(abs(float(spectra.ids(a, E) - spectra.ids(b, E))) for E in grid)
        assert spectra.ids_sup_distance(a, b, atol=0.0) == pytest.approx(brute)

    def test_sup_distance_merges_near_ties(self):
        a = [0.0, 1.0 + 2e-15, 1.0 + 2e-15, 2.0]
        b = [0.0, 1.0, 1.0, 2.0]
        assert spectra.ids_sup_distance(a, b, atol=0.0) == 0.5
        assert spectra.ids_sup_distance(a, b) == 0

    @pytest.mark.slow
    def test_consecutive_levels_converge(self):
        levels = {n: spectra.level_spectrum(n, ANISO).eigenvalues for n in range(8, 15)}
        dist = [spectra.ids_sup_distance(levels[n], levels[n + 1]) for n in range(8, 14)]
        print("sup-distances n=8..13: " + ", ".join(f"{float(d):.5f}" for d in dist))
        assert all(b < a for a, b in zip(dist, dist[1:]))


class TestGordon:
    @pytest.mark.parametrize("s,m,block", [("x", 0, "ax"), ("y", 0, "axay"), ("z", 0, "axayaxaz")])
    def test_witness_blocks(self, s, m, block):
        wit = spectra.gordon_witnesses(s, 1)[m]
        assert words.to_str(wit.block) == block
        assert wit.prefix == wit.block[:-1]
        assert wit.verify()

    def test_x_pattern(self):
        wit = spectra.gordon_witnesses("x", 1)[0]
        w = wit.window()
        assert words.to_str(w.slice(-3, 3)) == "axaxaxa"

    @pytest.mark.parametrize("s", "xyz")
    def test_scales(self, s):
        k = "xyz".index(s)
        assert [w.scale for w in spectra.gordon_witnesses(s, 2)] == [2 ** (3 * m + k + 1) for m in range(3)]

    def test_midpoint_example(self):
        level = spectra.level_spectrum(8, ANISO)
        E = 0.5 * sum(level.hull)
        wit = spectra.gordon_witnesses("x", 1)[1]
        assert wit.scale == 16
        rep = spectra.gordon_growth_check(wit, E, ANISO)
        assert rep.holds
        assert all(d == 1 for d in rep.determinants.values())

    def test_far_energy_grows(self):
        wit = spectra.gordon_witnesses("y", 1)[1]
        rep = spectra.gordon_growth_check(wit, 100.0, ANISO)
        assert rep.log_ratio > 10

    def test_against_plain_products(self, rng):
        # renormalized propagation equals plain float products at small scale
        wit = spectra.gordon_witnesses("z", 1)[0]
        L = wit.scale
        w = wit.window()
        for E in rng.uniform(-4, 7, 10):
            rep = spectra.gordon_growth_check(wit, E, ANISO, u0=(0.6, 0.8))
            coeffs = op.window_coefficients(w, 0, 2 * L - 1, ANISO)
            m = np.eye(2)
            for j, (f, g) in enumerate(coeffs, start=1):
                m = op.transfer_from_coefficients(E, f, g) @ m
                if j == L:
                    assert math.log(np.linalg.norm(m @ [0.6, 0.8])) == pytest.approx(rep.log_norms[L])
            assert math.log(np.linalg.norm(m @ [0.6, 0.8])) == pytest.approx(rep.log_norms[2 * L])

    def test_coefficients_periodic_around_base(self):
        for s in "xyz":
            for wit in spectra.gordon_witnesses(s, 2):
                L = wit.scale
                c = op.window_coefficients(wit.window(), -L, 2 * L - 1, ANISO)
                assert c[:L] == c[L:2 * L] == c[2 * L:]

    def test_rejects_a(self):
        with pytest.raises(Exception):
            spectra.gordon_witnesses("a", 1)
