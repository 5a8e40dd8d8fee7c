"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 on numeric or
resource failures (crossing budget, dimension limit, failed cross-check).
Random braids come from ``numpy.random.Generator(PCG64(seed))``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import _accel
from .anyons import fusion_paths, path_count
from .circuits import Circuit, classify, gate_library, make_gate, prob_first_qubit_one
from .compiler import GateTarget, compile as compile_target, sk_refine, verify_result
from .computer import (
    execute_braid,
    initialize,
    leakage,
    measure_pair,
    prob_via_jones,
    readout_distribution,
    target_prob0,
)
from .constants import A, ORACLE_TOL
from .formats import FormatError, format_braid_word, matrix_to_json, parse_braid_word, target_from_json
from .kcode import Subspace, is_k_code, max_k
from .links import (
    BraidWord,
    LinkDiagram,
    bracket_polynomial,
    count_components,
    count_minima,
    jones_at,
    kauffman_bracket,
    plat_closure,
    random_braid_word,
    writhe,
)

PRNG = "numpy PCG64"


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _sci(x: float) -> str:
    """Compact scientific form without exponent padding: 1e-8, 2.5e-10."""
    mant, exp = f"{x:.1e}".split("e")
    return f"{mant.rstrip('0').rstrip('.')}e{int(exp)}"


def _fmt_cx(z: complex) -> str:
    return f"{_fmt(z.real)} {'+' if z.imag >= 0 else '-'} {_fmt(abs(z.imag))}i"


# -- input helpers -----------------------------------------------------------


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _braid(args) -> BraidWord:
    if args.braid and args.word is not None:
        raise UsageError("give either --braid or --word, not both")
    if args.braid:
        return parse_braid_word(_read_text(args.braid))
    if args.word is None:
        raise UsageError("a braid is required: --braid FILE or --word '...' --strands N")
    if args.strands is None:
        raise UsageError("--word needs --strands")
    return parse_braid_word(f"n={args.strands}\n{args.word}")


def _diagram(args) -> tuple[LinkDiagram, BraidWord | None]:
    if getattr(args, "diagram", None):
        return LinkDiagram.from_json(_read_text(args.diagram)), None
    b = _braid(args)
    if b.strands % 2:
        raise UsageError("plat closure needs an even number of strands")
    return plat_closure(b), b


# -- subcommands -------------------------------------------------------------


def cmd_dims(args):
    if args.anyons < 0:
        raise UsageError("--anyons must be non-negative")
    enumerated = len(fusion_paths(args.anyons, args.end))
    counted = path_count(args.anyons, args.end)
    if enumerated != counted:
        raise NumericFailure(f"enumeration gives {enumerated} but transfer matrix gives {counted}")
    return {"anyons": args.anyons, "end": args.end, "count": enumerated}, str(enumerated)


def cmd_bracket(args):
    d, _ = _diagram(args)
    if args.export:
        Path(args.export).write_text(d.to_json() + "\n")
    value = kauffman_bracket(d, A)
    poly = bracket_polynomial(d)
    doc = {
        "crossings": d.n_crossings,
        "A": _cx(A),
        "bracket": _cx(value),
        "polynomial": {str(e): c for e, c in poly.items()},
    }
    return doc, f"bracket at A: {_fmt_cx(value)}  ({d.n_crossings} crossings)"


def cmd_jones(args):
    d, _ = _diagram(args)
    v = jones_at(d)
    doc = {
        "components": count_components(d),
        "writhe": writhe(d),
        "minima": count_minima(d),
        "jones": _cx(v),
    }
    text = f"V(exp(2 pi i/5)) = {_fmt_cx(v)}  (c={doc['components']}, w={doc['writhe']}, m={doc['minima']})"
    return doc, text


def _simulate(b: BraidWord, pair: int):
    if b.strands % 2 or b.strands < 4:
        raise UsageError("the register needs an even number of anyons, at least 4")
    r = execute_braid(initialize(b.strands), b)
    return r, measure_pair(r, pair)


def cmd_simulate(args):
    b = _braid(args)
    r, p0 = _simulate(b, args.pair)
    lk = leakage(r)
    dist = readout_distribution(r)
    doc = {"word": str(b), "strands": b.strands, "pair": args.pair, "prob0": p0, "leakage": lk, "readout": dist}
    return doc, f"prob0 = {_fmt(p0)}\nleakage = {_fmt(lk)}"


def cmd_verify(args):
    if args.random is not None:
        if args.seed is None:
            raise UsageError("--random needs an explicit --seed")
        if args.strands is None or args.len is None:
            raise UsageError("--random needs --strands and --len")
        if args.braid or args.word is not None:
            raise UsageError("--random cannot be combined with --braid/--word")
        if args.strands % 2 or args.strands < 4:
            raise UsageError("--strands must be even and at least 4")
        rng = np.random.Generator(np.random.PCG64(args.seed))
        braids = [random_braid_word(rng, args.strands, args.len) for _ in range(args.random)]
    else:
        braids = [_braid(args)]
    cases = []
    for b in braids:
        _, sim = _simulate(b, 1)
        formula = prob_via_jones(b)
        cases.append({"word": str(b), "simulated": sim, "formula": formula, "diff": abs(sim - formula)})
    agree = sum(c["diff"] <= ORACLE_TOL for c in cases)
    worst = max(c["diff"] for c in cases)
    doc = {"checked": len(cases), "agree": agree, "tol": ORACLE_TOL, "max_diff": worst, "cases": cases}
    if args.seed is not None:
        doc["seed"] = args.seed
        doc["prng"] = PRNG
    text = f"{agree}/{len(cases)} agree ≤ {_sci(ORACLE_TOL)} (max diff {worst:.3e})"
    if agree != len(cases):
        raise NumericFailure(text, doc)
    return doc, text


def _target(args) -> GateTarget:
    if args.target and args.gate:
        raise UsageError("give either --target or --gate, not both")
    if args.target:
        return target_from_json(_read_json(args.target))
    return target_from_json({"name": args.gate or "x", "scope": args.scope})


def _compile(args, target: GateTarget):
    result = compile_target(target, args.depth, args.leakage_tol)
    if args.sk_levels:
        result = sk_refine(target, result, args.sk_levels)
    return result


def cmd_compile(args):
    target = _target(args)
    result = _compile(args, target)
    dist, leak = verify_result(result, target)
    doc = {"word": str(result.word), "strands": result.word.strands, **result.sidecar()}
    if args.out:
        out = Path(args.out)
        out.write_text(format_braid_word(result.word))
        out.with_suffix(".json").write_text(json.dumps(result.sidecar(), indent=2) + "\n")
    if abs(dist - result.distance) > 1e-10:
        raise NumericFailure(f"recomputed distance {dist} differs from search value {result.distance}", doc)
    text = (
        f"word: {result.word or '(empty)'}  (n={result.word.strands})\n"
        f"distance = {_fmt(result.distance)}\nleakage_bound = {_fmt(result.leakage_bound)}"
    )
    return doc, text


def cmd_kcode(args):
    w = Subspace.from_json(_read_text(args.subspace))
    if args.max_k:
        k = max_k(w, args.tol, args.basis, args.threads)
        return {"n": w.n, "d": w.d, "dim": w.dim, "max_k": k}, f"max k = {k}"
    if args.k is None:
        raise UsageError("give --k K or --max-k")
    if not 0 <= args.k <= w.n:
        raise UsageError(f"--k must lie in 0..{w.n}")
    res = is_k_code(w, args.k, args.tol, args.basis, args.threads)
    doc = {"n": w.n, "d": w.d, "dim": w.dim, "k": args.k, "holds": res.holds, "witness": None}
    text = f"{args.k}-code: {'yes' if res.holds else 'no'}"
    if res.witness is not None:
        doc["witness"] = {
            "support": list(res.witness.support),
            "label": res.witness.label,
            "operator": matrix_to_json(res.witness.operator),
        }
        text += f"\nwitness: {res.witness.label}"
    return doc, text


def cmd_demo(args):
    if args.anyons % 4 or args.anyons < 4:
        raise UsageError("--anyons must be a positive multiple of 4 for the demo")
    name = args.gate
    lib = gate_library()
    if name not in lib or lib[name].shape != (2, 2):
        raise UsageError(f"--gate must be a one-qubit gate from: {', '.join(k for k, m in lib.items() if m.shape == (2, 2))}")
    # 1. classical step: compile the target into a braid on batch 1
    target = GateTarget(lib[name], (1,))
    result = _compile(args, target)
    word = BraidWord(result.word.letters, args.anyons)
    # 2-4. initialise, braid, measure pair 1
    r, p0 = _simulate(word, 1)
    p_topo = 1.0 - p0
    # reference circuit
    n_q = args.anyons // 4
    p_ref = prob_first_qubit_one(Circuit(n_q, (make_gate(name, (0,)),)))
    p_target = 1.0 - target_prob0(target.matrix)
    gap = abs(p_topo - p_ref)
    bound = 2.0 * result.distance
    doc = {
        "gate": name,
        "anyons": args.anyons,
        "word": str(result.word),
        "distance": result.distance,
        "leakage": leakage(r),
        "prob1_topological": p_topo,
        "prob1_circuit": p_ref,
        "prob1_target": p_target,
        "difference": gap,
        "bound": bound,
        "within_bound": gap <= bound + 1e-12,
        "verdict_topological": classify(p_topo),
        "verdict_circuit": classify(p_ref),
    }
    text = "\n".join(
        [
            f"target gate: {name} on qubit 1 ({args.anyons} anyons)",
            f"compiled word: {result.word or '(empty)'}  distance {_fmt(result.distance)}",
            f"p(1) topological = {_fmt(p_topo)}",
            f"p(1) circuit     = {_fmt(p_ref)}",
            f"|difference| = {_fmt(gap)} (bound 2*distance = {_fmt(bound)})",
            f"verdict: {doc['verdict_topological']} (circuit: {doc['verdict_circuit']})",
        ]
    )
    if not doc["within_bound"]:
        raise NumericFailure("topological and circuit probabilities differ by more than 2*distance", doc)
    return doc, text


# -- parser ------------------------------------------------------------------


def _common(p, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="emit one JSON document on stdout")
    p.add_argument("--threads", type=int, default=default, help="worker threads for parallel kernels")
    p.add_argument("--seed", type=int, default=default, help=f"seed for the {PRNG} generator")


def _braid_args(p):
    p.add_argument("--braid", help="braid word file ('n=<strands>' then letters)")
    p.add_argument("--word", help="letters inline, e.g. '1 -2 3'")
    p.add_argument("--strands", type=int, help="strand count for --word")


def _compile_args(p, default_depth):
    p.add_argument("--depth", type=int, default=default_depth, help="maximum word length searched")
    p.add_argument("--leakage-tol", type=float, default=1e-2, help="two-batch leakage tolerance")
    p.add_argument("--sk-levels", type=int, default=0, help="Solovay-Kitaev refinement levels")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tqcsim", description="Topological quantum computation toolkit.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dims", help="number of fusion paths")
    p.add_argument("--anyons", type=int, required=True)
    p.add_argument("--end", type=int, default=0, choices=[0, 1, 2, 3])
    p.set_defaults(func=cmd_dims)

    for name, func, helptext in (
        ("bracket", cmd_bracket, "Kauffman bracket of a plat closure"),
        ("jones", cmd_jones, "Jones polynomial at exp(2 pi i/5)"),
    ):
        p = sub.add_parser(name, help=helptext)
        _braid_args(p)
        p.add_argument("--diagram", help="diagram JSON instead of a braid")
        if name == "bracket":
            p.add_argument("--export", help="write the diagram JSON here")
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="initialise, braid and measure")
    _braid_args(p)
    p.add_argument("--pair", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="simulation vs Jones-polynomial formula")
    _braid_args(p)
    p.add_argument("--random", type=int, help="number of random braids")
    p.add_argument("--len", type=int, help="length of random braids")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compile", help="compile a gate target into a braid word")
    p.add_argument("--target", help="gate target JSON file")
    p.add_argument("--gate", help="named gate from the library")
    p.add_argument("--scope", type=int, nargs="+", default=[1], help="batch indices for --gate")
    p.add_argument("--out", help="write the braid here and a .json sidecar next to it")
    _compile_args(p, 8)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("kcode", help="check the k-code condition")
    p.add_argument("--subspace", required=True, help="subspace JSON file")
    p.add_argument("--k", type=int)
    p.add_argument("--max-k", action="store_true")
    p.add_argument("--basis", choices=["units", "pauli"], default="units")
    p.add_argument("--tol", type=float, default=ORACLE_TOL)
    p.set_defaults(func=cmd_kcode)

    p = sub.add_parser("demo", help="compile, run and compare one gate end to end")
    p.add_argument("--gate", default="x")
    p.add_argument("--anyons", type=int, default=4)
    _compile_args(p, 8)
    p.set_defaults(func=cmd_demo)

    for p in sub.choices.values():
        _common(p, suppress=True)
    return parser


def _emit(doc, text, as_json: bool):
    if as_json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be at least 1")
    _accel.set_threads(args.threads)
    try:
        doc, text = args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"tqcsim: error: {exc}", file=sys.stderr)
        return 1
    except NumericFailure as exc:
        message = exc.args[0]
        if len(exc.args) > 1 and args.json:
            _emit(exc.args[1], message, True)
        print(f"tqcsim: {message}", file=sys.stderr)
        return 2
    except (RuntimeError, FloatingPointError, np.linalg.LinAlgError, MemoryError) as exc:
        print(f"tqcsim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"tqcsim: error: {exc}", file=sys.stderr)
        return 1
    _emit(doc, text, args.json)
    return 0
