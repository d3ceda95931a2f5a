"""Enveloping spaces (globalizations) of partial actions.

``X_G`` is the quotient of ``G x X`` by ``(g,x) ~ (h,y)`` iff ``x`` lies in
``dom(theta_{h^-1 g})`` and ``theta_{h^-1 g}(x) = y``.  ``G`` acts globally on
it by ``g.[h,x] = [gh,x]`` and ``x -> [e,x]`` embeds ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from scipy.cluster.hierarchy import DisjointSet

from .errors import ValidationError
from .gamma import (
    PartialAction,
    PartialHomeo,
    check_premorphism,
    group_space,
    is_nice,
    make_action,
    restrict_global,
)
from .report import Report, first
from .topology import (
    ContinuousMap,
    FiniteSpace,
    is_continuous,
    is_embedding,
    is_open_map,
    product,
    quotient,
    relabel,
)


def related(a: PartialAction, g: int, x: int, h: int, y: int) -> bool:
    """``(g,x) R (h,y)`` on group/point indices."""
    G = a.group
    k = G.table[G.inverse_index[h]][g]
    return a.theta[k].fwd.get(x) == y


def _pairs(a: PartialAction):
    return itertools.product(range(len(a.group)), range(len(a.space)))


def enveloping_relation(a: PartialAction) -> list[tuple[tuple[str, str], ...]]:
    """Blocks of the relation on ``G x X``, each sorted, blocks sorted by least member."""
    G, X = a.group, a.space
    ds = DisjointSet(list(_pairs(a)))
    for g, x in _pairs(a):
        for h in range(len(G)):
            y = a.theta[G.table[G.inverse_index[h]][g]].fwd.get(x)
            if y is not None:
                ds.merge((g, x), (h, y))
    blocks = [
        tuple(sorted((G.elements[g], X.points[x]) for g, x in subset))
        for subset in ds.subsets()
    ]
    return sorted(blocks)


def check_equivalence(a: PartialAction) -> Report:
    """The relation is reflexive, symmetric and equal to its transitive closure."""
    report = Report("enveloping relation is an equivalence")
    G, X = a.group, a.space
    pts = list(_pairs(a))
    lab = lambda p: (G.elements[p[0]], X.points[p[1]])  # noqa: E731
    bad = first(p for p in pts if not related(a, *p, *p))
    report.add("reflexive", bad is None, None if bad is None else lab(bad))
    rel = {(p, q): related(a, *p, *q) for p in pts for q in pts}
    bad = first((p, q) for (p, q), v in rel.items() if v != rel[q, p])
    report.add("symmetric", bad is None, None if bad is None else [lab(bad[0]), lab(bad[1])])
    ds = DisjointSet(pts)
    for (p, q), v in rel.items():
        if v:
            ds.merge(p, q)
    bad = first((p, q) for (p, q), v in rel.items() if v != ds.connected(p, q))
    report.add(
        "transitive (relation equals its equivalence closure)",
        bad is None,
        None if bad is None else [lab(bad[0]), lab(bad[1])],
    )
    return report


def class_label(g: str, x: str) -> str:
    return f"[{g},{x}]"


@dataclass(frozen=True)
class EnvelopingSpace:
    """Globalization of ``source``.

    ``gx`` is ``G x X`` with point ``(g,x)`` at index ``g*|X| + x``;
    ``q.assignment`` gives the class index of every such point.
    """

    source: PartialAction
    gx: FiniteSpace
    classes: tuple[tuple[tuple[str, str], ...], ...]
    space: FiniteSpace
    mu: PartialAction
    iota: ContinuousMap
    q: ContinuousMap

    def cls(self, g: str, x: str) -> str:
        """Label of the class ``[g,x]``."""
        n = len(self.source.space)
        k = self.source.group.index[g] * n + self.source.space.index[x]
        return self.space.points[self.q.assignment[k]]

    def class_index(self, g: int, x: int) -> int:
        return self.q.assignment[g * len(self.source.space) + x]


def globalize(a: PartialAction) -> EnvelopingSpace:
    G, X = a.group, a.space
    gx = product([group_space(G), X])
    blocks = enveloping_relation(a)
    qspace, q = quotient(gx, [[f"({g},{x})" for g, x in b] for b in blocks])
    names = {p: "[" + p[1:-1] + "]" for p in qspace.points}
    space = relabel(qspace, names)
    q = ContinuousMap(gx, space, q.assignment)
    n = len(X)
    rep = {}
    for k in range(len(gx)):
        rep.setdefault(q.assignment[k], divmod(k, n))
    theta = {}
    for g in range(len(G)):
        pairs = tuple(
            sorted((c, q.assignment[G.table[g][h] * n + x]) for c, (h, x) in rep.items())
        )
        theta[G.elements[g]] = PartialHomeo(space, pairs)
    mu = make_action(G, space, theta)
    e = G.identity_index
    iota = ContinuousMap(X, space, tuple(q.assignment[e * n + x] for x in range(n)))
    return EnvelopingSpace(a, gx, tuple(blocks), space, mu, iota, q)


def _transport(env: EnvelopingSpace) -> Report:
    """Restricting ``mu`` to ``iota(X)`` gives back ``source`` under ``iota``."""
    report = Report("restriction recovers theta")
    src, iota = env.source, env.iota
    image = [iota(x) for x in src.space.points]
    try:
        restricted = restrict_global(env.mu, image)
    except ValidationError as exc:
        report.add("restriction of mu to iota(X) is a partial action", False, str(exc))
        return report
    back = {iota(x): x for x in src.space.points}
    bad = None
    for g in src.group.elements:
        got = {back[u]: back[v] for u, v in restricted(g).as_dict().items()}
        if got != src(g).as_dict():
            bad = {"g": g, "expected": src(g).as_dict(), "got": got}
            break
    report.add("mu restricted to iota(X) equals theta under iota", bad is None, bad)
    return report


def verify_globalization(env: EnvelopingSpace) -> Report:
    report = Report("globalization")
    src = env.source
    G, X = src.group, src.space
    n = len(X)
    report.extend(check_equivalence(src))
    bad = None
    for (g, x), (h, y) in itertools.product(_pairs(src), repeat=2):
        same = env.class_index(g, x) == env.class_index(h, y)
        if same != related(src, g, x, h, y):
            bad = [(G.elements[g], X.points[x]), (G.elements[h], X.points[y])]
            break
    report.add("classes are exactly the relation classes", bad is None, bad)

    mu = env.mu
    prem = check_premorphism(mu)
    report.add(
        "mu satisfies the action laws",
        prem.passed,
        None if prem.passed else prem.failures()[0].witness,
    )
    report.add("mu is global", mu.is_global())
    nice = is_nice(mu)
    report.add("mu continuous (per g, G discrete)", nice.passed)
    bad = None
    for g, (h, x) in itertools.product(range(len(G)), _pairs(src)):
        lhs = mu.theta[g].fwd.get(env.class_index(h, x))
        if lhs != env.class_index(G.table[g][h], x):
            bad = {"g": G.elements[g], "class": env.space.points[env.class_index(h, x)]}
            break
    report.add("mu(g,[h,x]) = [gh,x]", bad is None, bad)
    e = G.identity_index
    bad = None
    for g, x in _pairs(src):
        if env.q.assignment[g * n + x] != mu.theta[g].fwd.get(env.iota.assignment[x]):
            bad = {"g": G.elements[g], "x": X.points[x]}
            break
    report.add("q(g,x) = mu(g, iota(x))", bad is None, bad)
    report.add(
        "iota(x) = [e,x]",
        all(env.iota.assignment[x] == env.class_index(e, x) for x in range(n)),
    )

    iota, q = env.iota, env.q
    report.add("iota continuous", is_continuous(iota))
    report.add("iota injective", iota.is_injective())
    report.add("q continuous", is_continuous(q))
    report.add("q open", is_open_map(q))
    report.add("q surjective", q.is_surjective())
    orbit = orbit_mask(mu, iota.image(X.full))
    report.add(
        "G.iota(X) = X_G",
        orbit == env.space.full,
        env.space.sorted_labels(env.space.full & ~orbit),
    )
    if is_nice(src).passed:
        image = iota.image(X.full)
        report.add(
            "iota is an open embedding (source nice)",
            is_embedding(iota) and is_open_map(iota) and env.space.is_open_mask(image),
        )
    else:
        report.skip("iota is an open embedding (source nice)", "source is not nice")
    nontrivial = any(t.pairs for g, t in enumerate(src.theta) if g != e)
    report.add(
        "|classes| = |G||X| iff every theta_g (g != e) is empty",
        (len(env.space) == len(G) * n) == (not nontrivial) and len(env.space) <= len(G) * n,
        {"classes": len(env.space), "|G||X|": len(G) * n},
    )
    report.extend(_transport(env))
    return report


def open_restriction_globalize(
    a: PartialAction, subset: Iterable[str]
) -> tuple[EnvelopingSpace, ContinuousMap, Report]:
    """Globalize the restriction of a global action to an open set ``U``.

    Returns ``U_G``, the map ``j([g,u]) = g.u`` into the original space and a
    report on ``j`` being a homeomorphism onto the open set ``G.U``.
    """
    if not a.is_global():
        raise ValidationError("open_restriction_globalize needs a global action")
    Y = a.space
    m = Y.mask(subset)
    if not Y.is_open_mask(m):
        raise ValidationError(f"{Y.sorted_labels(m)} is not open")
    env = globalize(restrict_global(a, Y.labels(m)))
    U = env.source.space
    G = a.group
    to_y = [Y.index[u] for u in U.points]
    values: dict[int, set[int]] = {}
    for g, u in itertools.product(range(len(G)), range(len(U))):
        values.setdefault(env.class_index(g, u), set()).add(a.theta[g].fwd[to_y[u]])
    report = Report("open restriction embedding j")
    bad = first(c for c, v in values.items() if len(v) != 1)
    report.add(
        "j well defined on classes", bad is None, None if bad is None else env.space.points[bad]
    )
    j = ContinuousMap(env.space, Y, tuple(min(values[c]) for c in range(len(env.space))))
    report.add("j injective", j.is_injective())
    report.add("j continuous", is_continuous(j))
    report.add("j open", is_open_map(j))
    report.add("j embedding", is_embedding(j))
    orbit = orbit_mask(a, m)
    image = j.image(env.space.full)
    report.add("j(U_G) = G.U", image == orbit, {"image": Y.sorted_labels(image), "G.U": Y.sorted_labels(orbit)})
    report.add("j(U_G) open", Y.is_open_mask(image))
    return env, j, report


def orbit_mask(a: PartialAction, m: int) -> int:
    out = 0
    for t in a.theta:
        out |= t.image(m)
    return out


