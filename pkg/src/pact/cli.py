"""``pact`` command line.

Exit codes: 0 every clause passed, 1 some clause failed, 2 usage or input
error, 3 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .corpus import CorpusSpec, generate_corpus
from .embeddings import induce_action, product_embedding, verify_gamma_embedding
from .errors import GuardError, PactError, ValidationError
from .funcspace import THEOREMS, build_bundle
from .globalization import globalize, verify_globalization
from .gamma import check_premorphism
from .numeric import mobius_axiom_check, ray_funcspace_check, ray_phi_check
from .report import Report
from .serialize import (
    Aux,
    ParseError,
    action_to_json,
    aux_from_json,
    dumps,
    load_json,
    parse_instance,
    space_from_json,
    space_to_json,
)
from .sweep import (
    ALL_THEOREMS,
    FUNCSPACE_THEOREMS,
    PARAMETER_SPACES,
    TARGETS,
    check_induced,
    embedding_for,
    run_checks,
    summarize,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class _Out:
    def __init__(self, fmt: str, witness: bool) -> None:
        self.fmt = fmt
        self.witness = witness

    def emit(self, payload: dict[str, Any], text: str) -> None:
        print(dumps(payload) if self.fmt == "json" else text)


def _load_aux(path: str | None, inline: Aux) -> Aux:
    if path is None:
        return inline
    obj = load_json(path)
    try:
        if isinstance(obj, dict) and "points" in obj:
            return Aux(x=space_from_json(obj, "$"))
        return aux_from_json(obj, "$")
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _x_spaces(aux: Aux) -> dict:
    return {"aux": aux.x} if aux.x is not None else dict(PARAMETER_SPACES)


# -- subcommands -----------------------------------------------------------------


def cmd_check(args, out: _Out) -> int:
    _, _, a, _ = parse_instance(args.file, validate=False)
    report = check_premorphism(a)
    out.emit(report.to_dict(), report.render(out.witness))
    return EXIT_OK if report.passed else EXIT_FAIL


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows)


def cmd_globalize(args, out: _Out) -> int:
    _, _, a, _ = parse_instance(args.file)
    env = globalize(a)
    report = verify_globalization(env)
    classes = {
        env.space.points[env.class_index(a.group.index[b[0][0]], a.space.index[b[0][1]])]: [
            list(p) for p in b
        ]
        for b in env.classes
    }
    payload = {
        "classes": classes,
        "space": space_to_json(env.space),
        "mu": action_to_json(env.mu)["theta"],
        "iota": env.iota.as_dict(),
        "report": report.to_dict(),
    }
    rows = [["class", "members"]] + [
        [c, " ".join(f"({g},{x})" for g, x in m)] for c, m in classes.items()
    ]
    mu_rows = [["g"] + list(env.space.points)] + [
        [g] + [env.mu.apply(g, w) for w in env.space.points] for g in a.group.elements
    ]
    text = "\n".join(
        [
            f"enveloping space: {len(env.space)} classes",
            _table(rows),
            "opens:",
            "  " + "  ".join("{" + ",".join(o) + "}" for o in env.space.canonical_opens()),
            "mu:",
            _table(mu_rows),
            report.render(out.witness),
        ]
    )
    out.emit(payload, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_induce(args, out: _Out) -> int:
    _, Y, a, inline = parse_instance(args.file)
    aux = _load_aux(args.aux, inline)
    if args.target == "funcspace":
        if aux.x is None:
            raise ValidationError("--target funcspace needs aux with a parameter space 'x'")
        e = embedding_for("funcspace", Y, aux.x)
    elif args.target == "prod" and aux.factors:
        factors = list(aux.factors)
        factors.insert(aux.slot, Y)
        e = product_embedding(factors, aux.slot, list(aux.basepoints))
    else:
        e = embedding_for(args.target, Y)
    gamma_report = verify_gamma_embedding(e)
    induced_report = check_induced(e, a)
    report = Report(f"induce via {args.target}")
    report.extend(gamma_report, "gamma-embedding: ")
    report.extend(induced_report, "induced: ")
    payload: dict[str, Any] = {"report": report.to_dict(), "embedding": e.c.as_dict()}
    text = report.render(out.witness)
    if induced_report.passed:
        ahat = induce_action(e, a)
        payload["induced"] = action_to_json(ahat)
        text = dumps(action_to_json(ahat)) + "\n" + text
    out.emit(payload, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def _render_sweep(outcomes, out: _Out) -> tuple[dict, str]:
    summary = summarize(outcomes)
    lines = []
    for o in outcomes:
        if not o.passed or (out.fmt == "text" and out.witness):
            tag = f"{o.instance} {o.theorem}" + (f" X={o.x}" if o.x else "")
            lines.append(f"{tag}: " + o.report.render(out.witness))
    lines.append(
        f"{summary['instances']} instances, {summary['checks']} checks, "
        f"{summary['failures']} failures"
    )
    for name, t in summary["by_theorem"].items():
        lines.append(f"  {name}: {t['checks']} checks, {t['failures']} failures")
    return summary, "\n".join(lines)


def _theorems(name: str) -> list[str]:
    return list(ALL_THEOREMS) if name == "all" else [name]


def _sweep(instances, theorems, xs, out: _Out) -> int:
    outcomes = []
    for inst in instances:
        outcomes.extend(run_checks(inst.name, inst.action, theorems, xs))
    summary, text = _render_sweep(outcomes, out)
    out.emit(summary, text)
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAIL


def cmd_verify(args, out: _Out) -> int:
    if args.corpus is not None:
        if args.file is not None:
            raise ValidationError("give either an instance file or --corpus, not both")
        spec_obj = load_json(args.corpus) if Path(args.corpus).exists() else json.loads(args.corpus)
        spec = CorpusSpec.from_json(spec_obj)
        xs = _x_spaces(_load_aux(args.aux, Aux()))
        return _sweep(generate_corpus(spec), _theorems(args.theorem), xs, out)
    if args.file is None:
        raise ValidationError("verify needs an instance file or --corpus")
    _, _, a, inline = parse_instance(args.file)
    aux = _load_aux(args.aux, inline)
    if args.theorem in FUNCSPACE_THEOREMS and aux.x is not None:
        report = THEOREMS[args.theorem](build_bundle(aux.x, a))
        out.emit(report.to_dict(), report.render(out.witness))
        return EXIT_OK if report.passed else EXIT_FAIL
    outcomes = run_checks(Path(args.file).name, a, _theorems(args.theorem), _x_spaces(aux))
    summary, text = _render_sweep(outcomes, out)
    out.emit(summary, text)
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAIL


def cmd_corpus(args, out: _Out) -> int:
    spec = CorpusSpec(
        mode="random" if args.random else "exhaustive",
        groups=tuple(args.groups),
        min_points=args.min_points,
        max_points=args.max_points,
        count=args.count,
        seed=args.seed,
        up_to_iso=not args.labeled,
    )
    if args.theorem is None:
        items = [{"name": i.name, "instance": action_to_json(i.action)} for i in generate_corpus(spec)]
        text = "\n".join(f"{i['name']}" for i in items) + f"\n{len(items)} instances"
        out.emit({"spec": spec.to_json(), "instances": items}, text)
        return EXIT_OK
    return _sweep(generate_corpus(spec), _theorems(args.theorem), dict(PARAMETER_SPACES), out)


def cmd_demo(args, out: _Out) -> int:
    if args.example == "zline":
        reports = [ray_phi_check(args.samples, args.seed)]
    elif args.example == "zfunc":
        reports = [ray_funcspace_check(args.grid_size, args.samples, args.seed)]
    else:
        reports = [mobius_axiom_check(args.samples, args.seed)]
    payload = {
        "seed": args.seed,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    out.emit(payload, "\n".join(r.render(out.witness) for r in reports))
    return EXIT_OK if payload["passed"] else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--witness", action="store_true", help="print failing witnesses")
    common.add_argument(
        "--guard-scale",
        type=float,
        default=None,
        help="multiply every size guard (same as PACT_GUARD_SCALE; at your own risk)",
    )

    p = argparse.ArgumentParser(
        prog="pact", description="Check partial actions on finite spaces and their globalizations."
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check the partial-action laws")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("globalize", parents=[common], help="build and verify the enveloping space")
    s.add_argument("file")
    s.set_defaults(func=cmd_globalize)

    s = sub.add_parser("induce", parents=[common], help="induce the action through a Gamma-embedding")
    s.add_argument("file")
    s.add_argument("--target", choices=TARGETS, required=True)
    s.add_argument("--aux")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("verify", parents=[common], help="run theorem checkers")
    s.add_argument("file", nargs="?")
    s.add_argument("--theorem", choices=ALL_THEOREMS + ("all",), default="all")
    s.add_argument("--aux")
    s.add_argument("--corpus", help="corpus spec as a JSON file or inline JSON")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="generate or sweep a corpus")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--random", action="store_true")
    s.add_argument("--groups", nargs="+", default=["trivial", "Z2"])
    s.add_argument("--min-points", type=int, default=1)
    s.add_argument("--max-points", type=int, default=2)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--labeled", action="store_true", help="keep isomorphic topologies apart")
    s.add_argument("--theorem", choices=ALL_THEOREMS + ("all",))
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("demo", parents=[common], help="sampled checks of the infinite examples")
    s.add_argument("example", choices=("zline", "zfunc", "mobius"))
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid-size", type=int, default=5)
    s.set_defaults(func=cmd_demo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    previous = os.environ.get("PACT_GUARD_SCALE")
    if args.guard_scale is not None:
        os.environ["PACT_GUARD_SCALE"] = str(args.guard_scale)
    out = _Out(args.format, args.witness)
    try:
        return args.func(args, out)
    except GuardError as exc:
        print(f"pact: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PactError, json.JSONDecodeError) as exc:
        print(f"pact: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if previous is None:
            os.environ.pop("PACT_GUARD_SCALE", None)
        else:
            os.environ["PACT_GUARD_SCALE"] = previous


if __name__ == "__main__":
    sys.exit(main())
