"""Run every checker over one action, or over a stream of generated ones."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .embeddings import (
    GammaEmbedding,
    cone_finite,
    function_space,
    hyperspace,
    induce_action,
    product_embedding,
)
from .errors import ValidationError
from .funcspace import THEOREMS, build_bundle, check_bundle
from .gamma import PartialAction, check_G_map, check_premorphism
from .globalization import globalize, verify_globalization
from .report import Report
from .topology import FiniteSpace, discrete, sierpinski

PARAMETER_SPACES: dict[str, FiniteSpace] = {
    "singleton": discrete(["p"]),
    "discrete-2": discrete(["p", "q"]),
    "sierpinski": sierpinski("p", "q"),
}

FUNCSPACE_THEOREMS = tuple(THEOREMS)
INSTANCE_THEOREMS = ("axioms", "globalize", "induce", "domains")
ALL_THEOREMS = INSTANCE_THEOREMS + FUNCSPACE_THEOREMS
TARGETS = ("kx", "cone", "prod", "funcspace")

PRODUCT_FACTOR = sierpinski("s0", "s1")


@lru_cache(maxsize=256)
def _embedding(kind: str, space: FiniteSpace, x: FiniteSpace | None = None) -> GammaEmbedding:
    if kind == "kx":
        return hyperspace(space)[1]
    if kind == "cone":
        return cone_finite(space)[1]
    if kind == "prod":
        return product_embedding([space, PRODUCT_FACTOR], 0, ["s1"])
    if kind == "funcspace":
        return function_space(x, space)[1]
    raise ValidationError(f"unknown target {kind!r}")


def embedding_for(kind: str, space: FiniteSpace, x: FiniteSpace | None = None) -> GammaEmbedding:
    """Cached Gamma-embedding of ``space`` of the given kind."""
    return _embedding(kind, space, x if kind == "funcspace" else None)


def check_induced(e: GammaEmbedding, a: PartialAction) -> Report:
    """The induced action is a partial action and ``c`` is a G-map into it."""
    report = Report(f"action induced through the {e.kind} embedding")
    try:
        ahat = induce_action(e, a)
    except ValidationError as exc:
        report.add("induced action satisfies the partial-action laws", False, str(exc))
        return report
    report.add("induced action satisfies the partial-action laws", True)
    gm = check_G_map(e.c, a, ahat)
    report.add("c is a G-map", gm.passed, None if gm.passed else gm.failures()[0].witness)
    return report


def check_domains(a: PartialAction, x: FiniteSpace) -> Report:
    """Induced domains computed from sigma match the closed-form descriptions."""
    report = Report("induced domains")
    b = build_bundle(x, a)
    report.extend(check_bundle(b))
    h = embedding_for("kx", a.space)
    bad = None
    for g, t in zip(a.group.elements, a.theta):
        if h.sigma[t].dom != h.carrier.upper(t.dom):
            bad = {"g": g, "dom": a.space.sorted_labels(t.dom)}
            break
    report.add("dom(sigma_K(theta_g)) = dom(theta_g)^+", bad is None, bad)
    return report


@dataclass(frozen=True)
class Outcome:
    instance: str
    theorem: str
    x: str | None
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "theorem": self.theorem,
            "x": self.x,
            "passed": self.passed,
            "report": self.report.to_dict(),
        }


def run_checks(
    name: str,
    a: PartialAction,
    theorems: Iterable[str] = ALL_THEOREMS,
    xs: Mapping[str, FiniteSpace] = PARAMETER_SPACES,
) -> list[Outcome]:
    theorems = list(theorems)
    unknown = set(theorems) - set(ALL_THEOREMS)
    if unknown:
        raise ValidationError(f"unknown theorem {sorted(unknown)[0]!r}")
    out: list[Outcome] = []
    if "axioms" in theorems:
        out.append(Outcome(name, "axioms", None, check_premorphism(a)))
    if "globalize" in theorems:
        out.append(Outcome(name, "globalize", None, verify_globalization(globalize(a))))
    if "induce" in theorems:
        for kind in ("kx", "cone", "prod"):
            out.append(Outcome(name, f"induce-{kind}", None, check_induced(embedding_for(kind, a.space), a)))
        for xname, x in xs.items():
            e = embedding_for("funcspace", a.space, x)
            out.append(Outcome(name, "induce-funcspace", xname, check_induced(e, a)))
    wanted = [t for t in FUNCSPACE_THEOREMS if t in theorems]
    if "domains" in theorems or wanted:
        for xname, x in xs.items():
            if "domains" in theorems:
                out.append(Outcome(name, "domains", xname, check_domains(a, x)))
            if wanted:
                b = build_bundle(x, a)
                for t in wanted:
                    out.append(Outcome(name, t, xname, THEOREMS[t](b)))
    return out


def summarize(outcomes: Iterable[Outcome]) -> dict:
    outcomes = list(outcomes)
    failed = [o for o in outcomes if not o.passed]
    by_theorem: dict[str, list[int]] = {}
    for o in outcomes:
        tally = by_theorem.setdefault(o.theorem, [0, 0])
        tally[0] += 1
        tally[1] += not o.passed
    return {
        "checks": len(outcomes),
        "failures": len(failed),
        "instances": len({o.instance for o in outcomes}),
        "by_theorem": {k: {"checks": v[0], "failures": v[1]} for k, v in sorted(by_theorem.items())},
        "first_failure": failed[0].to_dict() if failed else None,
    }
