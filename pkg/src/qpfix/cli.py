"""Command-line front end.

Exit status: 0 when every check passes (or a fixed point is certified),
1 when a checked property fails, 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import io
from ._rational import INFINITE, format_rational, parse_rational
from .certifier import PROFILES, CertificationError, certify, explain
from .io import SchemaError
from .picard import iterate
from .search import GenConfig, d2_agreement_search, soundness_search
from .sequences import CAUCHY_KINDS, MODES, check_convergence, classify_cauchy, find_limits
from .space import SpaceError, axiom_report, check_d1, conjugate, minimal_k, symmetrize

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(args, doc, human: str) -> None:
    sys.stdout.write(io.dumps(doc) if args.json else human)


def _guard(fn):
    """Turn input problems into exit status 2 with a one-line message."""
    def wrapped(args):
        try:
            return fn(args)
        except (SchemaError, SpaceError, CertificationError, InputError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return BAD_INPUT
    return wrapped


@_guard
def cmd_verify(args) -> int:
    space = io.load_space(args.space)
    if args.minimal_k:
        if not check_d1(space)[0]:
            raise InputError(f"{args.space}: minimal K needs a zero diagonal")
        mk = minimal_k(space)
        _emit(args, {"minimal_k": format_rational(mk)}, f"minimal K: {format_rational(mk)}\n")
        return OK if mk != INFINITE else FAIL
    report = axiom_report(space, args.k)
    doc = io.axiom_report_to_dict(report)
    mark = lambda ok: "pass" if ok else "FAIL"
    lines = [
        f"space: {args.space}  (K = {format_rational(report.k)})",
        f"  D1 zero self-distance   {mark(report.d1_holds)}",
        f"  D2 chain inequality     {mark(report.d2_holds)}",
    ]
    w = report.d2_witness
    if w is not None:
        lines.append(
            f"     witness D({w.x},{w.y}) = {format_rational(w.distance)} > "
            f"{format_rational(report.k)} * {format_rational(w.chain.total)} "
            f"via {' -> '.join(w.chain.nodes)}"
        )
    lines.append(f"  T0 separation           {mark(report.t0_holds)}")
    if report.t0_witness:
        lines.append(f"     witness {report.t0_witness}")
    lines.append(f"  limit uniqueness        {mark(report.hausdorff_finite)}  (informational)")
    lines.append(f"  minimal K               {format_rational(report.minimal_k)}")
    _emit(args, doc, "\n".join(lines) + "\n")
    return OK if report.all_hold else FAIL


@_guard
def cmd_derive(args) -> int:
    space = io.load_space(args.space)
    derived = conjugate(space) if args.conjugate else symmetrize(space)
    text = io.dumps(io.space_to_dict(derived))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


@_guard
def cmd_classify(args) -> int:
    seq = io.load_sequence(args.sequence)
    eps = args.epsilon
    if args.kind:
        v = classify_cauchy(seq, args.kind, eps)
        doc = io.cauchy_to_dict(v)
        if v.holds_on_prefix:
            human = f"{v.kind} Cauchy at eps={eps}: holds on prefix from n0={v.witness_n0}\n"
        else:
            k, n, d = v.violation
            human = (f"{v.kind} Cauchy at eps={eps}: fails, "
                     f"violation (k={k}, n={n}) distance {format_rational(d)}\n")
        _emit(args, doc, human)
        return OK if v.holds_on_prefix else FAIL
    if args.limit is not None:
        seq.space.index(args.limit)
        ok, start = check_convergence(seq, args.limit, args.mode, eps)
        doc = {"mode": args.mode, "limit": args.limit, "epsilon": format_rational(eps),
               "converges": ok, "from_index": start}
        human = (f"{args.mode}-convergence to {args.limit} at eps={eps}: "
                 + (f"holds from index {start}\n" if ok else "fails\n"))
        _emit(args, doc, human)
        return OK if ok else FAIL
    limits = find_limits(seq, args.mode, eps)
    doc = {"mode": args.mode, "epsilon": format_rational(eps), "limits": list(limits)}
    _emit(args, doc, f"{args.mode}-limits at eps={eps}: {{{', '.join(limits)}}}\n")
    return OK if limits else FAIL


@_guard
def cmd_solve(args) -> int:
    space = io.load_space(args.space)
    f = io.map_from_dict(io.read_json(args.map), str(args.map))
    try:
        f.validate(space)
    except SpaceError as exc:
        raise InputError(f"{args.map}: {exc}") from None
    x0 = args.x0 if args.x0 is not None else space.points[0]
    space.index(x0)
    orbit = iterate(space, f, x0, args.max_steps)
    doc = io.orbit_to_dict(orbit)
    t = orbit.termination
    human = (
        "orbit: " + " -> ".join(orbit.entries) + "\n"
        + "steps: " + (", ".join(doc["step_dists"]) or "-") + "\n"
        + f"termination: {t.kind}"
        + ("" if t.kind != "fixed_point" else f" at index {t.index} ({orbit.fixed_point})")
        + ("" if t.kind != "cycle" else f" length {t.length} from index {t.start}")
        + "\n"
    )
    _emit(args, doc, human)
    return OK if orbit.fixed_point is not None else FAIL


@_guard
def cmd_certify(args) -> int:
    problem, file_profile = io.load_problem(args.problem)
    profile = args.profile or file_profile or "fix1"
    cert = certify(problem, profile)
    doc = io.certificate_to_dict(cert)
    _emit(args, doc, explain(cert))
    return OK if cert.fixed_point is not None else FAIL


@_guard
def cmd_search(args) -> int:
    try:
        config = GenConfig(point_count=args.points, seed=args.seed, trials=args.trials)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.mode == "d2-oracle":
        comparisons, bad = d2_agreement_search(config, nondegenerate=config.point_count >= 2)
        findings = [
            {"trial": d.trial, "k": format_rational(d.k), "check_d2": d.fast,
             "oracle": d.oracle, "space": io.space_to_dict(d.space)}
            for d in bad
        ]
        summary = {"mode": args.mode, "comparisons": comparisons, "findings": findings}
        human = f"d2 oracle agreement: {comparisons - len(bad)}/{comparisons}\n"
    else:
        report = soundness_search(config, mutant=args.mutant, workers=args.workers)
        findings = [
            {"trial": c.trial, "termination": c.termination,
             "problem": io.problem_to_dict(c.problem, "fix1")}
            for c in report.counterexamples
        ]
        summary = {"mode": args.mode, "trials": report.trials, "certified": report.certified,
                   "mutant": args.mutant, "findings": findings}
        human = (f"soundness: {report.trials} trials, {report.certified} certified, "
                 f"{len(findings)} counterexamples\n")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for item in findings:
            doc = item.get("problem") or item["space"]
            (out / f"finding-{item['trial']:05d}.json").write_text(io.dumps(doc), encoding="utf-8")
    _emit(args, summary, human)
    return OK if not findings else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpfix",
        description="Axiom checks and fixed-point certificates for finite "
                    "quasi-pseudometric type spaces.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=fn)
        return p

    p = add("verify", cmd_verify, "check D1, D2, T0 and limit uniqueness")
    p.add_argument("space")
    p.add_argument("--k", type=_rational_arg, help="override the declared K")
    p.add_argument("--minimal-k", action="store_true", help="report only the minimal K")

    p = add("derive", cmd_derive, "write the conjugate or symmetrized space")
    p.add_argument("space")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--conjugate", action="store_true")
    g.add_argument("--symmetrize", action="store_true")
    p.add_argument("-o", "--output")

    p = add("classify", cmd_classify, "Cauchy / convergence classification of a sequence file")
    p.add_argument("sequence")
    p.add_argument("--kind", choices=CAUCHY_KINDS)
    p.add_argument("--mode", choices=MODES, default="D")
    p.add_argument("--limit")
    p.add_argument("--epsilon", type=_rational_arg, required=True)

    p = add("solve", cmd_solve, "run the Picard iteration")
    p.add_argument("space")
    p.add_argument("map")
    p.add_argument("--x0")
    p.add_argument("--max-steps", type=int, default=100)

    p = add("certify", cmd_certify, "certify a problem against a theorem profile")
    p.add_argument("problem")
    p.add_argument("--profile", choices=sorted(PROFILES))

    p = add("search", cmd_search, "random oracle agreement or soundness search")
    p.add_argument("--mode", choices=("d2-oracle", "soundness"), required=True)
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutant", action="store_true",
                   help="negate the contraction verdict (harness self-test)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="directory for finding files")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    if getattr(args, "max_steps", 1) < 1:
        print("error: --max-steps must be at least 1", file=sys.stderr)
        return BAD_INPUT
    if getattr(args, "epsilon", 1) <= 0:
        print("error: --epsilon must be positive", file=sys.stderr)
        return BAD_INPUT
    if getattr(args, "k", None) is not None and args.k <= 0:
        print("error: --k must be positive", file=sys.stderr)
        return BAD_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
