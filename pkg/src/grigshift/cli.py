"""Command line: ``grigshift <group> <command> [options]``.

Exit status is 0 on success, 2 for invalid input or a failed check, 1 for an
internal error and 64 for unknown flags or commands.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import automaton, io, operators, schreier, spectra, words
from .errors import GrigshiftError

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 64


class CheckFailed(Exception):
    """A verification command found a counterexample."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        code = EXIT_USAGE
        if not (message.startswith("unrecognized arguments")
                or message.startswith("invalid choice")
                or "invalid choice" in message):
            code = EXIT_INVALID
        self.exit(code, f"{self.prog}: error: {message}\n")


def _params(args) -> operators.WeightParams:
    p = operators.WeightParams.parse(args.params, exact=getattr(args, "exact", False))
    return p


def _spectral_params(args) -> operators.WeightParams:
    p = _params(args)
    p.require_P()
    return p


def _window(args) -> words.Window:
    return words.Window(words.word(args.window), args.offset)


# --------------------------------------------------------------------------
# word


def cmd_word_gen(args):
    if args.p is not None:
        return words.to_str(words.p_n(args.p)) + "\n"
    return words.to_str(words.eta_prefix(args.eta)) + "\n"


def cmd_word_complexity(args):
    if args.method == "enumerate":
        values = [words.complexity(L) for L in range(1, args.max + 1)]
    else:
        values = words.complexity_table(args.max)[1:].tolist()
    rows = [(L, c, words.complexity_closed_form(L)) for L, c in enumerate(values, start=1)]
    return io.to_csv(["L", "complexity", "closed_form"], rows)


def cmd_word_index(args):
    rep = words.max_index_scan(args.scan)
    if rep is None:
        return "none\n"
    return json.dumps({"index": str(rep.index), "position": rep.position,
                       "period": len(rep.word), "length": rep.length,
                       "word": words.to_str(rep.word)}) + "\n"


def cmd_word_partition(args):
    if args.window is not None:
        w = _window(args)
    else:
        w = words.Window(words.eta_prefix(args.eta), args.offset)
    pc = words.n_partition(w, args.n)
    return f"{pc.residue} mod {pc.modulus}\n"


def cmd_word_subwords(args):
    return "".join(words.to_str(w) + "\n" for w in sorted(words.enumerate_subwords(args.length)))


def cmd_word_special(args):
    if args.length is not None:
        rows = words.right_special_words(args.length)
        return io.to_csv(["word", "extensions"],
                         [(words.to_str(w), words.to_str(bytes(sorted(e)))) for w, e in rows])
    return words.special_word_window(args.letter, args.radius).to_json() + "\n"


def cmd_word_reflect(args):
    if args.offset is None:
        return words.to_str(words.reflect(words.word(args.window))) + "\n"
    return words.reflect_origin(_window(args)).to_json() + "\n"


def cmd_word_frequency(args):
    freq = words.letter_frequency(args.length)
    return io.to_csv(["letter", "frequency"], sorted(freq.items()))


def cmd_word_zeta(args):
    got = words.iterate(words.ZETA, "a", args.n)
    if args.n >= 1:
        want = words.p_n(args.n - 1) + bytes([words.separator(args.n - 1)])
        if got != want:
            raise CheckFailed(f"zeta^{args.n}(a) differs from p^({args.n - 1}) tau^{args.n - 1}(x)")
    return words.to_str(got) + "\n"


def cmd_word_substitute(args):
    return words.to_str(words.apply_substitution(
        words.TAU if args.rule == "tau" else words.ZETA, words.word(args.window))) + "\n"


def cmd_word_repetitivity(args):
    lengths = [1 << k for k in range(1, args.max_log + 1)]
    ratios = words.linear_repetitivity(args.prefix, lengths)
    rows = [(L, r * L, float(r)) for L, r in ratios.items()]
    return io.to_csv(["L", "R", "ratio"], rows)


def cmd_word_isolation(args):
    bad = words.isolation_violations(words.derived_sequence(args.length))
    if bad:
        raise CheckFailed(f"isolation fails at derived positions {bad[:10]}")
    return f"OK n={args.length}\n"


# --------------------------------------------------------------------------
# automaton


def cmd_automaton_check(args):
    first = automaton.check_automaton(args.n)
    if first is not None:
        raise CheckFailed(f"first disagreement at n={first}")
    for k in range(1, min(args.fnq_max, 30) + 1):
        for i in range(4):
            if automaton.f_n_q(k, i) != automaton.expected_f_n_q(k, i):
                raise CheckFailed(f"f_n_q disagrees at n={k}, i={i}")
    last = args.n - 1
    if last >= 0 and automaton.automaton_letter(last) != words.eta_prefix(args.n)[-1]:
        raise CheckFailed(f"first disagreement at n={last}")
    return f"OK n={args.n}\n"


def cmd_automaton_fnq(args):
    return words.to_str(automaton.f_n_q(args.n, args.i)) + "\n"


# --------------------------------------------------------------------------
# graph and group


def _emit_graph(g, fmt):
    return g.to_dot() if fmt == "dot" else g.to_json() + "\n"


def cmd_graph_gamma(args):
    return _emit_graph(schreier.gamma_n(args.n), args.format)


def cmd_graph_word(args):
    g = schreier.graph_of_word(_window(args))
    for _ in range(args.theta):
        g = schreier.theta(g)
    if args.format == "canonical":
        gaps, root, refl = schreier.canonical_form(g)
        return json.dumps({"gaps": words.to_str(gaps), "root": root, "reflected": refl}) + "\n"
    return _emit_graph(g, args.format)


def _random_windows(args, radius):
    rng = np.random.default_rng(args.seed)
    return words.random_eta_windows(rng, args.samples, radius)


def cmd_group_relator(args):
    g = schreier.lysenok_relator(args.k, args.base)
    if not args.samples:
        return g + "\n"
    bad = sum(schreier.act_group_word(g, w) != w
              for w in _random_windows(args, len(g) + 4))
    if bad:
        raise CheckFailed(f"{bad} of {args.samples} windows moved by {g}")
    return f"{g}\nOK windows={args.samples}\n"


def cmd_group_act(args):
    w = _window(args)
    out = schreier.act(args.g, w) if len(args.g) == 1 else schreier.act_group_word(args.g, w)
    return out.to_json() + "\n"


# --------------------------------------------------------------------------
# matrices


def cmd_matrix_export(args):
    p = _params(args)
    if args.word is not None:
        m = operators.jacobi_from_word(words.word(args.word), p)
    elif args.section is not None:
        m = operators.finite_section(words.Window(words.word(args.section), 1), p)
    else:
        m = operators.laplacian_gamma_n(args.n, p)
    return m.to_csv() if args.format == "csv" else m.to_json() + "\n"


def cmd_matrix_weights(args):
    p = _params(args)
    rows = [("f", s, operators.weight_f(s, p)) for s in words.LETTERS]
    rows += [("g", pair, operators.weight_g(pair, p)) for pair in ("ax", "ay", "az")]
    return io.to_csv(["function", "argument", "value"], rows)


def cmd_matrix_transfer(args):
    p = _spectral_params(args)
    w = words.word(args.word)
    m = np.eye(2)
    for i in range(len(w) - 1):
        m = operators.transfer_matrix(args.energy, w[i:i + 2], p) @ m
    return io.to_csv(["entry", "value"],
                     [("m11", float(m[0, 0])), ("m12", float(m[0, 1])),
                      ("m21", float(m[1, 0])), ("m22", float(m[1, 1])),
                      ("det", float(np.linalg.det(m)))])


# --------------------------------------------------------------------------
# spectra


def cmd_spectrum_tower(args):
    p = _spectral_params(args)
    tower = spectra.spectrum_tower(args.n, p, args.tol, n_min=args.n_min)
    if args.format == "svg":
        return io.tower_svg([(s.level, s.eigenvalues) for s in tower], title=f"params {p}")
    rows = [(s.level, i, float(e)) for s in tower for i, e in enumerate(s.eigenvalues)]
    return io.to_csv(["n", "index", "eigenvalue"], rows)


def cmd_spectrum_measure(args):
    p = _spectral_params(args)
    tower = spectra.spectrum_tower(args.n_max, p, args.tol, n_min=args.n_min)
    rows = [(s.level, s.eps(), spectra.measure_estimate(s.eigenvalues, s.eps())) for s in tower]
    return io.to_csv(["n", "eps", "measure"], rows)


def cmd_spectrum_ids(args):
    p = _spectral_params(args)
    (s,) = spectra.spectrum_tower(args.n, p, args.tol, n_min=args.n)
    lo, hi = s.hull
    pad = 0.05 * (hi - lo)
    grid = np.linspace(lo - pad, hi + pad, args.points)
    return io.to_csv(["E", "ids"], [(float(E), spectra.ids(s.eigenvalues, E)) for E in grid])


def cmd_gordon_check(args):
    p = _spectral_params(args)
    level = spectra.level_spectrum(args.level, p)
    energies = spectra.sample_energies(level, args.samples, args.seed)
    rows = []
    failures = 0
    for s in args.letters:
        for wit in spectra.gordon_witnesses(s, args.k_max):
            reports = [spectra.gordon_growth_check(wit, float(E), p) for E in energies]
            bad = sum(not r.holds for r in reports)
            det_err = max(r.max_det_error for r in reports)
            failures += bad + (det_err > 1e-10)
            rows.append((s, wit.m, wit.scale, len(reports), bad,
                         min(r.log_ratio for r in reports), det_err))
    text = io.to_csv(["s", "m", "scale", "energies", "violations",
                      "min_log_ratio", "max_det_error"], rows)
    if failures:
        sys.stdout.write(text)
        raise CheckFailed(f"{failures} growth-bound or determinant failures")
    return text


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grigshift", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    parser.add_argument("--out", help="write output here instead of stdout")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group, name, func, help_):
        sp = group.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def params(sp, default="1,1,2,3"):
        sp.add_argument("--params", default=default, help="weights t,u,v,w")

    def window(sp, offset_default=1):
        sp.add_argument("--window", required=True, help="letters over a,x,y,z")
        sp.add_argument("--offset", type=int, default=offset_default,
                        help="position of the first letter (origin bar sits before 1)")

    g = groups.add_parser("word", help="substitution words").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "gen", cmd_word_gen, "print p^(n) or a prefix of eta")
    ex = sp.add_mutually_exclusive_group(required=True)
    ex.add_argument("--p", type=int, help="level n of p^(n)")
    ex.add_argument("--eta", type=int, help="prefix length")
    sp = command(g, "complexity", cmd_word_complexity, "complexity table as CSV")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--method", choices=["table", "enumerate"], default="table")
    sp = command(g, "index", cmd_word_index, "largest power index in a prefix of eta")
    sp.add_argument("--scan", type=int, default=1 << 16)
    sp = command(g, "partition", cmd_word_partition, "n-partition residue of a window")
    sp.add_argument("--n", type=int, required=True)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--window")
    src.add_argument("--eta", type=int, help="use this many letters of eta")
    sp.add_argument("--offset", type=int, default=1)
    sp = command(g, "subwords", cmd_word_subwords, "all factors of one length")
    sp.add_argument("--length", type=int, required=True)
    sp = command(g, "special", cmd_word_special,
                 "window of the special sequence for s, or right-special words")
    sp.add_argument("--letter", choices=["x", "y", "z"], default="x")
    sp.add_argument("--radius", type=int, default=8)
    sp.add_argument("--length", type=int, help="list right-special words of this length")
    sp = command(g, "reflect", cmd_word_reflect, "reverse a word or reflect a window at the origin")
    sp.add_argument("--window", required=True)
    sp.add_argument("--offset", type=int, help="reflect at the origin bar")
    sp = command(g, "frequency", cmd_word_frequency, "letter frequencies in a prefix of eta")
    sp.add_argument("--length", type=int, required=True)
    sp = command(g, "zeta", cmd_word_zeta, "iterate the recoding on a and check it")
    sp.add_argument("--n", type=int, required=True)
    sp = command(g, "substitute", cmd_word_substitute, "apply one substitution")
    sp.add_argument("--window", required=True)
    sp.add_argument("--rule", choices=["tau", "zeta"], default="tau")
    sp = command(g, "repetitivity", cmd_word_repetitivity, "repetitivity ratios R(L)/L")
    sp.add_argument("--prefix", type=int, default=1 << 16)
    sp.add_argument("--max-log", type=int, default=8, help="largest L is 2^max_log")
    sp = command(g, "isolation", cmd_word_isolation, "check the derived sequence pattern")
    sp.add_argument("--length", type=int, default=1 << 15)

    g = groups.add_parser("automaton", help="binary automaton").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "check", cmd_automaton_check, "compare the automaton with eta")
    sp.add_argument("--n", type=int, default=1 << 20, help="number of letters")
    sp.add_argument("--fnq-max", type=int, default=12)
    sp = command(g, "fnq", cmd_automaton_fnq, "labels over all length-n inputs from q_i")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, default=0)

    g = groups.add_parser("graph", help="Schreier graphs").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "gamma", cmd_graph_gamma, "level-n graph")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=["dot", "json"], default="json")
    sp = command(g, "word", cmd_graph_word, "graph of a window")
    window(sp)
    sp.add_argument("--theta", type=int, default=0, help="apply the graph substitution k times")
    sp.add_argument("--format", choices=["dot", "json", "canonical"], default="json")

    g = groups.add_parser("group", help="generator actions").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "relator", cmd_group_relator, "relator word, optionally checked")
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--base", choices=["ad", "adacac"], default="ad")
    sp.add_argument("--samples", type=int, default=0,
                    help="check on this many random windows of eta")
    sp = command(g, "act", cmd_group_act, "act by a group word on a window")
    sp.add_argument("--g", required=True, help="word over a,b,c,d, applied right to left")
    window(sp, offset_default=0)

    g = groups.add_parser("matrix", help="Jacobi matrices").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "export", cmd_matrix_export, "Laplacian of a level or a word")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--word", help="gap word instead of a level")
    sp.add_argument("--section", help="finite section of a factor, trimmed to a at both ends")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--exact", action="store_true", help="rational arithmetic")
    params(sp)
    sp = command(g, "weights", cmd_matrix_weights, "values of f and g")
    sp.add_argument("--exact", action="store_true")
    params(sp)
    sp = command(g, "transfer", cmd_matrix_transfer, "transfer-matrix product over a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--energy", type=float, required=True)
    params(sp)

    g = groups.add_parser("spectrum", help="spectra of the level Laplacians").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "tower", cmd_spectrum_tower, "eigenvalues per level")
    sp.add_argument("--n", type=int, required=True, help="highest level")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--format", choices=["csv", "svg"], default="csv")
    sp.add_argument("--tol", type=float, default=spectra.DEFAULT_TOL)
    params(sp)
    sp = command(g, "measure", cmd_spectrum_measure, "cover measures per level")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--tol", type=float, default=spectra.DEFAULT_TOL)
    params(sp)
    sp = command(g, "ids", cmd_spectrum_ids, "integrated density of states on a grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--tol", type=float, default=spectra.DEFAULT_TOL)
    params(sp)

    g = groups.add_parser("gordon", help="three-block growth bound").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = command(g, "check", cmd_gordon_check, "check the growth bound on random energies")
    sp.add_argument("--k-max", type=int, default=2)
    sp.add_argument("--level", type=int, default=10)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--letters", default="xyz")
    params(sp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        text = args.func(args)
    except CheckFailed as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (GrigshiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
