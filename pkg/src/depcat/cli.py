"""``depcat`` command line: check, eval, laws, bridge.

Exit codes: 0 everything passed, 1 a verdict or law failed, 2 parse or IO
error, 3 the environment is not an algebra of the signature.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional

from . import bridge, cwf, finset, parser, termmodel
from .checker import Checker
from .interpreter import AlgebraViolation, Interpreter, finset_structure, generic_structure
from .judgements import TermJ
from .signature import IllFormedFormat, IllTypedAxiom, from_source, validate_signature

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ALGEBRA = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc


def _load(path: str):
    try:
        src = parser.parse_file(_read(path))
        return src, validate_signature(from_source(src))
    except parser.ParseError as exc:
        raise InputError(f"{path}:{exc.span}: {exc.message}") from exc
    except (IllFormedFormat, IllTypedAxiom) as exc:
        raise InputError(f"{path}: {exc}") from exc


class Out:
    """Plain lines or one JSON object per item, in input order."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def item(self, text: str, **fields):
        if self.fmt == "json":
            print(json.dumps(fields, ensure_ascii=False, default=str), file=self.stream)
        else:
            print(text, file=self.stream)


# ---------------------------------------------------------------- check


def cmd_check(args) -> int:
    src, sig = _load(args.file)
    ch = Checker(sig)
    out = Out(args.format)
    failed = 0
    for item in src.checks():
        v = ch.check(item.judgement)
        label = parser.pretty_judgement(item.judgement, arrows=True)
        if v.ok:
            out.item("OK", verdict="OK", judgement=label, span=str(item.span))
        else:
            failed += 1
            out.item(
                f"FAIL {v.describe()}@{item.span}",
                verdict="FAIL",
                judgement=label,
                span=str(item.span),
                reason=v.describe(),
            )
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- eval


def _finset_interpreter(sig, env_path: Optional[str]):
    m = finset.finset_model()
    literals = finset.parse_env(_read(env_path)).structure if env_path else {}
    structure = finset_structure(m, sig, literals)
    it = Interpreter(m, sig, structure)
    it.validate()
    return it


def cmd_eval(args) -> int:
    src, sig = _load(args.file)
    try:
        if args.model == "finset":
            it = _finset_interpreter(sig, args.env)
        else:
            it = Interpreter(termmodel.term_model(sig), sig, generic_structure(sig))
    except finset.LiteralError as exc:
        raise InputError(f"{args.env}: {exc}") from exc
    out = Out(args.format)
    failed = 0
    for item in src.evals():
        res = it.interpret(TermJ(item.ctx, item.tm, item.ty))
        label = f"{parser.pretty(item.tm, item.ctx, True)} : {parser.pretty(item.ty, item.ctx, True)}"
        if not res.ok:
            failed += 1
            out.item(f"FAIL {res.reason}@{item.span}", verdict="FAIL", term=label, span=str(item.span), reason=res.reason)
            continue
        if args.model == "term":
            shown = parser.pretty(it.checker.normalize_term(item.ctx, res.value, item.ty), item.ctx, True)
        else:
            shown = repr(res.value)
        out.item(f"{label} = {shown}", verdict="OK", term=label, value=shown, span=str(item.span))
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- laws


def _law_reports(args) -> list[cwf.LawReport]:
    seed, budget = args.seed, args.budget
    if args.model == "finset":
        reps = [finset.check_laws(budget=budget, seed=seed, exhaustive=not args.random_only)]
        if args.derived:
            reps.append(finset.check_derived(budget=max(budget, 60), seed=seed))
        return reps
    if args.model == "term":
        if args.sig:
            _, sig = _load(args.sig)
            return [termmodel.check_laws(sig, budget, seed)]
        return [termmodel.check_cwf_laws_on_term_model(seed=seed, stride=max(1, 200 // max(budget, 1)))]
    c = bridge.parse_ctxccc(_read(args.instance)) if args.instance else bridge.default_instance()
    return [bridge.check_d_laws(c, budget, seed)]


def cmd_laws(args) -> int:
    out = Out(args.format)
    started = time.perf_counter()
    reps = _law_reports(args)
    print(f"# model={reps[0].model} seed={args.seed} budget={args.budget}", file=sys.stderr)
    for rep in reps:
        for r in rep.results:
            out.item(r.line(), **r.as_dict())
    failing = set().union(*(r.failing for r in reps))
    mutants = []
    if args.mutants and args.model == "finset":
        base = reps[0]
        for name in finset.MUTANTS:
            o = finset.run_mutant(name, args.budget, args.seed, base)
            mutants.append(o)
            out.item(o.line(), mutant=o.mutant, caught=o.caught, failing=sorted(o.newly_failing))
        o = bridge.run_decomposition_mutant(args.seed)
        mutants.append(o)
        out.item(o.line(), mutant=o.mutant, caught=o.caught, failing=sorted(o.newly_failing))
    if args.figures:
        paths = render_figures(reps, Path(args.figures), time.perf_counter() - started)
        for p in paths:
            print(f"# wrote {p}", file=sys.stderr)
    missed = [o for o in mutants if not o.caught]
    return EXIT_FAIL if failing or missed else EXIT_OK


def render_figures(reps: list[cwf.LawReport], directory: Path, seconds: float) -> list[Path]:
    """Per-law bar charts of checked and failed instances."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory.mkdir(parents=True, exist_ok=True)
    colours = {"PASS": "#4c956c", "FAIL": "#c8553d", "CONDITIONAL": "#f2a541", "SKIP": "#9aa0a6"}
    written = []
    for rep in reps:
        names = [r.name for r in rep.results]
        fig, ax = plt.subplots(figsize=(max(6.0, 0.32 * len(names)), 4.2))
        ax.bar(names, [r.checked for r in rep.results], color=[colours[r.status] for r in rep.results])
        ax.bar(names, [r.failed for r in rep.results], color="black", alpha=0.35)
        ax.set_ylabel("instances checked (dark: failed)")
        ax.set_title(f"{rep.model}: {len(rep.failing)} failing of {len(names)} (seed {rep.seed}, {seconds:.1f}s)")
        ax.tick_params(axis="x", labelrotation=70, labelsize=7)
        fig.tight_layout()
        path = directory / f"laws-{rep.model.replace(':', '_')}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


# ---------------------------------------------------------------- bridge


def cmd_bridge(args) -> int:
    try:
        c = bridge.parse_ctxccc(_read(args.instance)) if args.instance else bridge.default_instance()
    except finset.LiteralError as exc:
        raise InputError(f"{args.instance}: {exc}") from exc
    out = Out(args.format)
    rep = bridge.bridge_suite(c, args.seed)
    for r in rep.results.values():
        out.item(r.line(), **r.as_dict())
    bad = bool(rep.failing)
    if args.stlc:
        src, sig = _load(args.stlc)
        js = [(i.judgement.ctx, i.judgement.tm, i.judgement.ty) for i in src.checks() if isinstance(i.judgement, TermJ)]
        for row in bridge.stlc_suite(c, sig, js):
            bad |= not row.ok
            text = f"STLC {'OK' if row.ok else 'FAIL'} {row.label}" + (f" {row.detail}" if row.detail else "")
            out.item(text, stlc=row.label, ok=row.ok, detail=row.detail or None)
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="depcat", description="Dependent type theory kernel and its categorical models.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide every 'check' item of a file")
    p.add_argument("file")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("eval", parents=[common], help="interpret every 'eval' item of a file")
    p.add_argument("file")
    p.add_argument("--model", choices=("finset", "term"), default="finset")
    p.add_argument("--env", help="FinSet algebra for the signature's constants")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("laws", parents=[common], help="run the model law suite")
    p.add_argument("--model", choices=("finset", "term", "bridge"), default="finset")
    p.add_argument("--budget", type=int, default=200, help="number of random instances")
    p.add_argument("--derived", action="store_true", help="also run the derived-former laws (finset)")
    p.add_argument("--random-only", action="store_true", help="skip the exhaustive small shapes (finset)")
    p.add_argument("--mutants", action="store_true", help="also run the fault-injection mutants (finset)")
    p.add_argument("--sig", help="signature file whose types join the term-model sampler")
    p.add_argument("--instance", help=".ctxccc instance for --model bridge")
    p.add_argument("--figures", metavar="DIR", help="write per-law bar charts (needs matplotlib)")
    p.set_defaults(run=cmd_laws)

    p = sub.add_parser("bridge", parents=[common], help="round-trip a finite CtxCCC through D and S")
    p.add_argument("--instance", help=".ctxccc file (default: atoms o={0,1}, i={a}, depth 3)")
    p.add_argument("--stlc", help="file of simply typed 'check' items to evaluate both ways")
    p.set_defaults(run=cmd_bridge)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AlgebraViolation as exc:
        print(f"algebra violation: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA


if __name__ == "__main__":
    sys.exit(main())
