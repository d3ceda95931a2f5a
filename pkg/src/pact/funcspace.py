"""Partial actions induced on function spaces and the theorems relating them.

Given a partial action ``theta`` on ``Y`` and a finite (hence compact) space
``X``, ``theta_hat(g)`` sends a map ``f`` with ``f(X)`` inside ``dom(theta_g)``
to ``theta_g o f``.  Each checker below computes both sides of a statement
independently and compares them; it never assumes the statement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .embeddings import FunctionSpace, GammaEmbedding, function_space, function_space_data, induce_action
from .errors import PactError
from .gamma import PartialAction, action_domain, action_map, check_G_map, is_nice
from .globalization import EnvelopingSpace, globalize, orbit_mask
from .report import Report, first
from .topology import (
    ContinuousMap,
    FiniteSpace,
    bits,
    compose_maps,
    identity_map,
    is_continuous,
    is_embedding,
    is_open_map,
    separation,
)


@dataclass(frozen=True)
class FuncSpaceBundle:
    """``C(x, Y)`` with the action induced from ``a`` on ``Y``."""

    x: FiniteSpace
    a: PartialAction
    fs: FunctionSpace
    embedding: GammaEmbedding
    ahat: PartialAction

    @property
    def cxy(self) -> FiniteSpace:
        return self.fs.space

    @property
    def c(self) -> ContinuousMap:
        return self.embedding.c

    @cached_property
    def evs(self) -> dict[str, ContinuousMap]:
        return {p: self.fs.ev(p) for p in self.x.points}

    @cached_property
    def env_y(self) -> EnvelopingSpace:
        return globalize(self.a)

    @cached_property
    def env_c(self) -> EnvelopingSpace:
        return globalize(self.ahat)

    @cached_property
    def c_yg(self) -> FunctionSpace:
        """``C(x, Y_G)``."""
        return function_space_data(self.x, self.env_y.space)


def check_bundle(b: FuncSpaceBundle) -> Report:
    report = Report("function-space bundle")
    fs, a, ahat = b.fs, b.a, b.ahat
    G = a.group
    bad = first(
        G.elements[g]
        for g in range(len(G))
        if ahat.theta[g].dom != fs.subbasic(b.x.full, a.theta[g].dom)
    )
    report.add("dom(theta_hat(g)) = <X, Y_{g^-1}>", bad is None, None if bad is None else {"g": bad})
    bad = None
    for g in range(len(G)):
        fw = a.theta[g].fwd
        for k, j in ahat.theta[g].pairs:
            if fs.maps[j] != tuple(fw[v] for v in fs.maps[k]):
                bad = {"g": G.elements[g], "f": fs.space.points[k]}
                break
        if bad:
            break
    report.add("theta_hat(g)(f) = theta_g o f", bad is None, bad)
    report.add("c is a G-map", check_G_map(b.c, a, ahat).passed)
    bad = first(p for p, ev in b.evs.items() if not check_G_map(ev, ahat, a).passed)
    report.add("every ev_p is a G-map", bad is None, None if bad is None else {"p": bad})
    ident = identity_map(a.space)
    bad = first(p for p, ev in b.evs.items() if compose_maps(ev, b.c) != ident)
    report.add("ev_p o c = id_Y", bad is None, None if bad is None else {"p": bad})
    return report


def build_bundle(x: FiniteSpace, a: PartialAction) -> FuncSpaceBundle:
    _, emb = function_space(x, a.space)
    ahat = induce_action(emb, a)
    bundle = FuncSpaceBundle(x, a, emb.carrier, emb, ahat)
    report = check_bundle(bundle)
    if not report.passed:
        bad = report.failures()[0]
        raise PactError(f"bundle invariant broken: {bad.name} at {bad.witness}")
    return bundle


def _per_g_continuous(a: PartialAction) -> list[bool]:
    X = a.space
    return [
        not any(t.image(X.nbhd[i] & t.dom) & ~X.nbhd[j] for i, j in t.pairs) for t in a.theta
    ]


def check_continuity_equiv(b: FuncSpaceBundle) -> Report:
    """theta continuous <=> theta_hat continuous, plus theta = ev_p o theta_hat o alpha."""
    report = Report("continuity transfer")
    report.notes.append("G finite discrete: continuity on G*Y is continuity of each theta_g")
    a, ahat = b.a, b.ahat
    left = is_continuous(action_map(a))
    right = is_continuous(action_map(ahat))
    per_a, per_hat = _per_g_continuous(a), _per_g_continuous(ahat)
    names = a.group.elements
    report.add("theta continuous on G*Y", left, {"g": first(g for g, ok in zip(names, per_a) if not ok)})
    bad = first(g for g, ok in zip(names, per_hat) if not ok)
    report.add("theta_hat continuous on G*C(X,Y)", right, {"g": bad})
    report.add(
        "theta continuous <=> theta_hat continuous",
        left == right,
        {"theta": left, "theta_hat": right, "g": bad},
    )
    report.add(
        "per-g reduction agrees",
        all(per_a) == left and all(per_hat) == right,
    )
    bad = None
    c = b.c.assignment
    for g, t in enumerate(a.theta):
        th = ahat.theta[g].fwd
        for y, z in t.pairs:
            img = th.get(c[y])
            for p, ev in b.evs.items():
                if img is None or ev.assignment[img] != z:
                    bad = {"g": a.group.elements[g], "y": a.space.points[y], "p": p}
                    break
            if bad:
                break
        if bad:
            break
    report.add("theta(g,y) = ev_p(theta_hat(g, c_y))", bad is None, bad)
    return report


def check_nice_equiv(b: FuncSpaceBundle) -> Report:
    report = Report("niceness transfer")
    gy, my = action_domain(b.a)
    gc, mc = action_domain(b.ahat)
    left, right = gy.is_open_mask(my), gc.is_open_mask(mc)
    report.add("G*Y open in G x Y", left)
    report.add("G*C(X,Y) open in G x C(X,Y)", right)
    report.add("G*Y open <=> G*C(X,Y) open", left == right, {"G*Y": left, "G*C": right})
    na, nh = is_nice(b.a).passed, is_nice(b.ahat).passed
    report.add("theta nice <=> theta_hat nice", na == nh, {"theta": na, "theta_hat": nh})
    return report


def _class_map(
    source: EnvelopingSpace, target: EnvelopingSpace, rule
) -> tuple[list[int | None], object]:
    """Push each point (g, x) of ``source.gx`` through ``rule`` and collect per class."""
    n = len(source.source.space)
    values: dict[int, set[int]] = {}
    for k in range(len(source.gx)):
        g, x = divmod(k, n)
        values.setdefault(source.q.assignment[k], set()).add(rule(g, x))
    bad = first(c for c, v in values.items() if len(v) != 1)
    out = [min(values[c]) for c in range(len(source.space))]
    return out, bad


def j_embed(b: FuncSpaceBundle) -> tuple[ContinuousMap, Report]:
    """``J[g,y] = [g,c_y]`` from ``Y_G`` into ``C(X,Y)_G`` with its left inverses ``K_p``."""
    report = Report("J embedding of Y_G into C(X,Y)_G")
    ey, ec = b.env_y, b.env_c
    c = b.c.assignment
    values, bad = _class_map(ey, ec, lambda g, y: ec.class_index(g, c[y]))
    report.add("J well defined", bad is None, None if bad is None else ey.space.points[bad])
    J = ContinuousMap(ey.space, ec.space, tuple(values))
    gm = check_G_map(J, ey.mu, ec.mu)
    report.add("J is a G-map", gm.passed, None if gm.passed else gm.failures()[0].witness)
    report.add("J is an embedding", is_embedding(J))
    Z = J.image(ey.space.full)
    report.add("Z = J(Y_G) invariant", orbit_mask(ec.mu, Z) == Z)
    ident = identity_map(ey.space)
    for p, ev in b.evs.items():
        kv, bad = _class_map(ec, ey, lambda g, f: ey.class_index(g, ev.assignment[f]))
        report.add(f"K_{p} well defined", bad is None, None if bad is None else ec.space.points[bad])
        K = ContinuousMap(ec.space, ey.space, tuple(kv))
        report.add(f"K_{p} o J = id", compose_maps(K, J) == ident)
        bad = first(w for w in bits(Z) if J.assignment[K.assignment[w]] != w)
        report.add(
            f"J o K_{p} = id on Z", bad is None, None if bad is None else ec.space.points[bad]
        )
    closed = ec.space.is_closed_mask(Z)
    if separation(b.a.space, "T2"):
        report.add("Z closed (Y Hausdorff)", closed)
    else:
        report.skip("Z closed (Y Hausdorff)", f"Y is not Hausdorff; Z closed = {closed}")
    return J, report


def check_t1_t2_equiv(b: FuncSpaceBundle) -> Report:
    report = Report("separation transfer")
    for ax in ("T1", "T2"):
        l, r = separation(b.env_y.space, ax), separation(b.env_c.space, ax)
        report.add(f"Y_G {ax} <=> C(X,Y)_G {ax}", l == r, {"Y_G": l, "C(X,Y)_G": r})
    return report


def check_clopen_corollary(b: FuncSpaceBundle) -> Report:
    """Y_g clopen for all g <=> Y_G Hausdorff <=> C(X,Y)_G Hausdorff.

    The three-way equivalence is asserted for Hausdorff (here: discrete) ``Y``;
    otherwise the trivial group on the Sierpinski space is a counterexample to
    (i) => (ii), so only (ii) <=> (iii) is asserted.
    """
    report = Report("clopen domains corollary")
    Y = b.a.space
    clopen = all(Y.is_open_mask(t.cod) and Y.is_closed_mask(t.cod) for t in b.a.theta)
    t2_y = separation(b.env_y.space, "T2")
    t2_c = separation(b.env_c.space, "T2")
    values = {"Y_g clopen": clopen, "Y_G T2": t2_y, "C(X,Y)_G T2": t2_c}
    report.add("Y_G T2 <=> C(X,Y)_G T2", t2_y == t2_c, values)
    if separation(Y, "T2"):
        report.add("Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2", clopen == t2_y == t2_c, values)
    else:
        report.skip(
            "Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2",
            f"Y is not compact Hausdorff; values {values}",
        )
    return report


def xi_embed(b: FuncSpaceBundle) -> tuple[ContinuousMap, Report]:
    """``xi[g,psi] = mu_g o iota o psi`` from ``C(X,Y)_G`` into ``C(X,Y_G)``."""
    report = Report("xi embedding of C(X,Y)_G into C(X,Y_G)")
    nice = is_nice(b.a).passed
    report.add("theta nice", nice)
    ey, ec, target = b.env_y, b.env_c, b.c_yg
    mu, iota = ey.mu.theta, ey.iota.assignment
    maps = b.fs.maps

    def xi_point(g: int, f: int) -> int:
        return target.point(tuple(mu[g].fwd[iota[v]] for v in maps[f]))

    values, bad = _class_map(ec, None, xi_point)
    report.add("xi well defined", bad is None, None if bad is None else ec.space.points[bad])
    xi = ContinuousMap(ec.space, target.space, tuple(values))
    image = xi.image(ec.space.full)
    report.add("xi injective", xi.is_injective())
    report.add("xi continuous", is_continuous(xi))
    report.add("xi(C(X,Y)_G) open", target.space.is_open_mask(image))
    report.add("xi homeomorphism onto image", is_embedding(xi) and is_open_map(xi))
    bad = None
    G = ey.source.group
    for g, w in itertools.product(range(len(G)), range(len(ec.space))):
        lhs = xi.assignment[ec.mu.theta[g].fwd[w]]
        F = target.maps[xi.assignment[w]]
        rhs = target.point(tuple(mu[g].fwd[v] for v in F))
        if lhs != rhs:
            bad = {"g": G.elements[g], "class": ec.space.points[w]}
            break
    report.add("xi(mu_hat_theta(g,w)) = mu_theta_hat(g, xi(w))", bad is None, bad)
    J, _ = j_embed(b)
    bad = first(
        ey.space.points[w]
        for w in range(len(ey.space))
        if xi.assignment[J.assignment[w]] != target.constant(w)
    )
    report.add("xi o J = constant-map embedding of Y_G", bad is None, bad)
    return xi, report


THEOREMS = {
    "continuity": check_continuity_equiv,
    "nice": check_nice_equiv,
    "j-embed": lambda b: j_embed(b)[1],
    "t1t2": check_t1_t2_equiv,
    "clopen": check_clopen_corollary,
    "xi": lambda b: xi_embed(b)[1],
}


def run_theorem(b: FuncSpaceBundle, name: str) -> Report:
    return THEOREMS[name](b)
