import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigshift import schreier, words
from grigshift.errors import InsufficientContextError, InvalidWordError
from grigshift.schreier import LabeledLinearGraph, canonical_form, graph_of_word
from grigshift.words import Window, to_str, word

word_prime = st.lists(st.sampled_from("xyz"), min_size=0, max_size=40).map(
    lambda seps: "a" + "".join(s + "a" for s in seps))


def edge_multiset(g):
    return sorted((min(u, v), max(u, v), c) for u, v, c in g.edges())


def explicit_theta(g):
    """Graph substitution on an explicit edge list: relabel b,c,d and put
    two new vertices (joined by b, c with d-loops) inside each a-edge."""
    pos = {}
    nxt = 1
    for v in range(1, g.vertices + 1):
        pos[v] = nxt
        if v < g.vertices:
            nxt += 3 if g.gaps[v - 1] == words.A else 1
    edges = []
    for u, v, c in g.edges():
        if c == "a" and u != v:
            p = pos[u]
            edges += [(p, p + 1, "a"), (p + 1, p + 2, "b"), (p + 1, p + 2, "c"),
                      (p + 1, p + 1, "d"), (p + 2, p + 2, "d"), (p + 2, p + 3, "a")]
        else:
            edges.append((pos[u], pos[v], schreier.THETA_LABELS[c]))
    return sorted((min(u, v), max(u, v), c) for u, v, c in edges), pos[g.root]


class TestGraphOfWord:
    def test_single_a(self):
        g = graph_of_word(Window(word("a"), 1))
        assert g.vertices == 2 and g.root == 1
        assert edge_multiset(g) == sorted([(1, 2, "a")] + [(v, v, c) for v in (1, 2) for c in "bcd"])

    def test_axa(self):
        g = graph_of_word(Window(word("axa"), 1))
        assert g.vertices == 4
        assert canonical_form(g)[:2] == canonical_form(schreier.gamma_n(2))[:2]

    @pytest.mark.parametrize("s", ["ya", "ax", "aa", "axya", ""])
    def test_rejects_non_word_prime(self, s):
        with pytest.raises(InvalidWordError):
            graph_of_word(Window(word(s), 1))

    def test_no_root(self):
        with pytest.raises(InsufficientContextError):
            graph_of_word(Window(word("axa"), 3))

    @given(word_prime, st.data())
    def test_regular(self, s, data):
        root = data.draw(st.integers(1, len(s) + 1))
        g = LabeledLinearGraph(word(s), root)
        assert g.is_schreier_regular()


class TestTheta:
    def test_gamma_one_to_two(self):
        g2 = schreier.theta(schreier.gamma_n(1))
        assert g2 == schreier.gamma_n(2)
        assert (to_str(g2.gaps), g2.root) == ("axa", 4)

    def test_single_a_image(self):
        assert to_str(schreier.theta(graph_of_word(Window(word("a"), 1))).gaps) == "axa"

    def test_not_idempotent(self):
        g = schreier.gamma_n(1)
        assert schreier.theta(g).vertices != g.vertices

    @given(word_prime, st.data())
    def test_against_explicit_edges(self, s, data):
        g = LabeledLinearGraph(word(s), data.draw(st.integers(1, len(s) + 1)))
        h = schreier.theta(g)
        edges, root = explicit_theta(g)
        assert edge_multiset(h) == edges
        assert h.root == root

    @given(word_prime, st.data())
    def test_intertwines_with_tau(self, s, data):
        offset = data.draw(st.integers(1 - len(s), 1))
        w = Window(word(s), offset)
        lhs = schreier.theta(graph_of_word(w))
        rhs = graph_of_word(schreier.substitute_window(w))
        assert canonical_form(lhs) == canonical_form(rhs)

    @pytest.mark.parametrize("k", range(0, 10))
    def test_intertwines_on_p(self, k):
        w = Window(words.p_n(k), 1)
        assert schreier.theta(graph_of_word(w)) == graph_of_word(schreier.substitute_window(w))

    def test_root_doubling_rule(self):
        # odd roots go to 2i-1, even roots to 2i on alternating gap words
        g = LabeledLinearGraph(word("axaya"), 1)
        for i in range(1, g.vertices + 1):
            r = schreier.theta(g.with_root(i)).root
            assert r == (2 * i - 1 if i % 2 else 2 * i)


class TestGamma:
    @pytest.mark.parametrize("n", range(1, 15))
    def test_two_constructions(self, n):
        g = schreier.gamma_n(n)
        assert g.vertices == 2 ** n
        assert g.a_edge_count() == 2 ** (n - 1)
        assert g.root == g.vertices
        h = graph_of_word(Window(words.p_n(n - 1), 1))
        assert canonical_form(g)[:2] == canonical_form(h)[:2]

    def test_gap_letters(self):
        assert to_str(schreier.gamma_n(2).gaps) == "axa"
        assert schreier.gamma_n(1).vertices == 2

    def test_json_and_dot(self):
        g = schreier.gamma_n(3)
        data = json.loads(g.to_json())
        assert data == {"vertices": 8, "gaps": "axayaxa", "root": 8}
        assert LabeledLinearGraph.from_json(g.to_json()) == g
        dot = g.to_dot()
        assert dot.count("[label=a]") == 4
        assert all(f"[label={c}]" in dot for c in "bcd")


class TestCanonical:
    def test_reflection_pairs(self, rng):
        for w in words.random_eta_windows(rng, 50, 30):
            u = schreier.trimmed_window(w, -10, 11)
            v = words.reflect_origin(u)
            assert canonical_form(graph_of_word(u))[:2] == canonical_form(graph_of_word(v))[:2]

    def test_root_distinguishes(self):
        g = schreier.gamma_n(2)
        assert canonical_form(g) != canonical_form(g.with_root(2))

    def test_symmetric_root(self):
        g = LabeledLinearGraph(word("axaxa"), 3)
        assert canonical_form(g) == (g.gaps, 3, False)

    def test_two_to_one(self, rng):
        # all shifts of a long eta window, cut to the same radius: every
        # canonical graph has exactly the window and its reflection as preimages
        base = words.eta_window(5000, 400)
        seen = set()
        for k in range(-300, 300):
            u = schreier.trimmed_window(base.shift(k), -12, 13)
            seen.add(u)
            seen.add(words.reflect_origin(u))
        classes = {}
        for u in seen:
            classes.setdefault(canonical_form(graph_of_word(u))[:2], set()).add(u)
        assert all(len(c) == 2 for c in classes.values())


class TestActions:
    def test_a_shifts_right(self):
        w = Window(word("axaya"), -1)          # w0 = x, w1 = a
        assert w.at(0) == words.X and w.at(1) == words.A
        assert schreier.act("a", w) == w.shift(1)
        assert schreier.act("d", w) == w

    def test_b_involution(self):
        w = Window(word("xayax"), -1)          # w0 = a, w1 = y
        once = schreier.act("b", w)
        assert once == w.shift(1)
        assert schreier.act("b", once) == w

    def test_insufficient_context(self):
        with pytest.raises(InsufficientContextError):
            schreier.act("a", Window(word("xa"), 0))

    def test_unknown_generator(self):
        with pytest.raises(InvalidWordError):
            schreier.act("e", Window(word("axa"), -1))

    @pytest.mark.parametrize("g", ["aa", "bb", "cc", "dd", "adadadad"])
    def test_identities(self, g, rng):
        for w in words.random_eta_windows(rng, 200, 20):
            assert schreier.act_group_word(g, w) == w

    @pytest.mark.parametrize("pair,single", [("bc", "d"), ("cb", "d"), ("bd", "c"),
                                             ("db", "c"), ("cd", "b"), ("dc", "b")])
    def test_klein(self, pair, single, rng):
        for w in words.random_eta_windows(rng, 1000, 10):
            assert schreier.act_group_word(pair, w) == schreier.act(single, w)

    @given(st.integers(40, 60000), st.text(alphabet="abcd", max_size=12))
    @settings(max_examples=200)
    def test_local_shift(self, center, g):
        w = words.eta_window(center, len(g) + 4)
        k = schreier.displacement(g, w)
        assert abs(k) <= len(g)
        assert schreier.act_group_word(g, w) == w.shift(k)
        for s in g:
            assert abs(schreier.displacement(s, w)) <= 1

    def test_right_to_left(self):
        w = Window(word("axayaxa"), -2)
        assert schreier.act_group_word("ab", w) == schreier.act("a", schreier.act("b", w))


class TestRelators:
    def test_k0(self):
        assert schreier.lysenok_relator(0) == "adadadad"

    def test_k1(self):
        assert schreier.lysenok_relator(1) == "acac" * 4

    def test_k1_second_base(self):
        assert schreier.lysenok_relator(1, "adacac") == "acacacabacab" * 4

    @pytest.mark.parametrize("k", range(4))
    def test_ad_family_identity(self, k, rng):
        g = schreier.lysenok_relator(k)
        for w in words.random_eta_windows(rng, 100, len(g) + 4):
            assert schreier.act_group_word(g, w) == w

    @pytest.mark.parametrize("k", range(3))
    def test_adacac_family_identity(self, k, rng):
        g = schreier.lysenok_relator(k, "adacac")
        for w in words.random_eta_windows(rng, 100, len(g) + 4):
            assert schreier.act_group_word(g, w) == w

    def test_non_relator_moves_something(self, rng):
        wins = words.random_eta_windows(rng, 100, 10)
        assert any(schreier.act_group_word("ad", w) != w for w in wins)

    def test_bad_base(self):
        with pytest.raises(ValueError):
            schreier.lysenok_relator(1, "abc")
