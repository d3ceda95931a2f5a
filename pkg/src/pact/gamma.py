"""The inverse monoid of partial homeomorphisms and partial group actions.

A partial action of a finite group ``G`` on a finite space ``X`` is stored in
its family form: one :class:`PartialHomeo` ``theta(g)`` per group element,
with ``dom(theta(g))`` the set of points ``x`` for which ``g.x`` exists.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import ValidationError, check_guard
from .groups import FiniteGroup
from .report import Report, first
from .topology import (
    ContinuousMap,
    FiniteSpace,
    bits,
    discrete,
    is_continuous,
    product,
    subspace,
)

MAX_GAMMA_CANDIDATES = 10**6


@dataclass(frozen=True)
class PartialHomeo:
    """Homeomorphism between two open subsets of ``ambient``.

    ``pairs`` lists ``(source index, target index)`` sorted by source.  The
    empty map is the zero of the monoid; ``identity(X)`` is its unit.
    """

    ambient: FiniteSpace
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        problem = self.defect()
        if problem:
            raise ValidationError(problem)

    def defect(self) -> str | None:
        """Why this is not an element of the monoid, or ``None``."""
        n = len(self.ambient)
        src = [i for i, _ in self.pairs]
        dst = [j for _, j in self.pairs]
        if any(not 0 <= k < n for k in src + dst):
            return "map leaves the ambient space"
        if src != sorted(set(src)):
            return "pairs must be sorted with distinct sources"
        if len(set(dst)) != len(dst):
            return "map is not injective"
        label = self.ambient.sorted_labels
        if not self.ambient.is_open_mask(self.dom):
            return f"domain {label(self.dom)} is not open"
        if not self.ambient.is_open_mask(self.cod):
            return f"image {label(self.cod)} is not open"
        nb = self.ambient.nbhd
        for i, j in self.pairs:
            if self.image(nb[i] & self.dom) & ~nb[j]:
                return f"map is not continuous at {self.ambient.points[i]!r}"
            if self.preimage(nb[j] & self.cod) & ~nb[i]:
                return f"inverse is not continuous at {self.ambient.points[j]!r}"
        return None

    @classmethod
    def from_mapping(cls, ambient: FiniteSpace, mapping: Mapping[str, str]) -> "PartialHomeo":
        idx = ambient.index
        try:
            pairs = sorted((idx[x], idx[y]) for x, y in mapping.items())
        except KeyError as exc:
            raise ValidationError(f"unknown point {exc.args[0]!r}") from None
        return cls(ambient, tuple(pairs))

    @cached_property
    def fwd(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def bwd(self) -> dict[int, int]:
        return {j: i for i, j in self.pairs}

    @cached_property
    def dom(self) -> int:
        return sum(1 << i for i, _ in self.pairs)

    @cached_property
    def cod(self) -> int:
        return sum(1 << j for _, j in self.pairs)

    def __call__(self, point: str) -> str:
        i = self.ambient.index[point]
        if i not in self.fwd:
            raise ValidationError(f"{point!r} is outside the domain")
        return self.ambient.points[self.fwd[i]]

    def image(self, m: int) -> int:
        return sum(1 << self.fwd[i] for i in bits(m) if i in self.fwd)

    def preimage(self, m: int) -> int:
        return sum(1 << self.bwd[j] for j in bits(m) if j in self.bwd)

    def as_dict(self) -> dict[str, str]:
        p = self.ambient.points
        return {p[i]: p[j] for i, j in self.pairs}

    def domain_labels(self) -> list[str]:
        return self.ambient.sorted_labels(self.dom)

    def __repr__(self) -> str:
        return f"PartialHomeo({self.as_dict()})"


def identity(space: FiniteSpace, subset: Iterable[str] | None = None) -> PartialHomeo:
    m = space.full if subset is None else space.mask(subset)
    return PartialHomeo(space, tuple((i, i) for i in bits(m)))


def empty(space: FiniteSpace) -> PartialHomeo:
    return PartialHomeo(space, ())


def compose(psi: PartialHomeo, phi: PartialHomeo) -> PartialHomeo:
    """``psi`` after ``phi`` on the largest domain where that makes sense."""
    if psi.ambient != phi.ambient:
        raise ValidationError("cannot compose maps on different spaces")
    f = psi.fwd
    return PartialHomeo(phi.ambient, tuple((i, f[j]) for i, j in phi.pairs if j in f))


def invert(phi: PartialHomeo) -> PartialHomeo:
    return PartialHomeo(phi.ambient, tuple(sorted((j, i) for i, j in phi.pairs)))


def leq(psi: PartialHomeo, phi: PartialHomeo) -> bool:
    """``psi`` is a restriction of ``phi``."""
    f = phi.fwd
    return all(f.get(i) == j for i, j in psi.pairs)


def restrict(phi: PartialHomeo, m: int) -> PartialHomeo:
    return PartialHomeo(phi.ambient, tuple(p for p in phi.pairs if (m >> p[0]) & 1))


def enumerate_gamma(space: FiniteSpace) -> list[PartialHomeo]:
    """Every homeomorphism between open subsets of ``space``, in a fixed order."""
    opens = space.open_masks()
    by_size: dict[int, list[int]] = {}
    for u in opens:
        by_size.setdefault(u.bit_count(), []).append(u)
    bound = sum(len(us) ** 2 * math.factorial(k) for k, us in by_size.items())
    check_guard("candidate bijections between open sets", bound, MAX_GAMMA_CANDIDATES)
    out = []
    for u in opens:
        src = list(bits(u))
        for v in by_size[len(src)]:
            for perm in itertools.permutations(bits(v)):
                try:
                    out.append(PartialHomeo(space, tuple(zip(src, perm))))
                except ValidationError:
                    pass
    return out


# -- partial actions ----------------------------------------------------------


@dataclass(frozen=True)
class PartialAction:
    """A map ``g -> theta(g)`` from a finite group into the monoid above.

    The constructor does not check the action laws; :func:`make_action`
    does, and :func:`check_premorphism` reports on them.
    """

    group: FiniteGroup
    space: FiniteSpace
    theta: tuple[PartialHomeo, ...]

    def __post_init__(self) -> None:
        if len(self.theta) != len(self.group):
            raise ValidationError("one partial homeomorphism per group element required")
        for g, t in zip(self.group.elements, self.theta):
            if t.ambient != self.space:
                raise ValidationError(f"theta({g}) acts on a different space")

    def __call__(self, g: str) -> PartialHomeo:
        return self.theta[self.group.index[g]]

    def apply(self, g: str, x: str) -> str | None:
        """``g.x`` or ``None`` when undefined."""
        t = self(g)
        j = t.fwd.get(self.space.index[x])
        return None if j is None else self.space.points[j]

    def domain(self, g: str) -> frozenset[str]:
        """Points ``x`` with ``g.x`` defined (the set written X_{g^-1})."""
        return self.space.labels(self(g).dom)

    def is_global(self) -> bool:
        return all(t.dom == self.space.full for t in self.theta)

    def theta_dict(self) -> dict[str, dict[str, str]]:
        return {g: t.as_dict() for g, t in zip(self.group.elements, self.theta)}


def make_action(
    group: FiniteGroup, space: FiniteSpace, theta: Mapping[str, PartialHomeo | Mapping[str, str]]
) -> PartialAction:
    """Validated partial action; ``theta`` may omit the identity element only."""
    unknown = set(theta) - set(group.elements)
    if unknown:
        raise ValidationError(f"theta names unknown group element {sorted(unknown)[0]!r}")
    values = []
    for g in group.elements:
        if g not in theta:
            if g != group.identity:
                raise ValidationError(f"theta({g}) is missing")
            values.append(identity(space))
            continue
        t = theta[g]
        if not isinstance(t, PartialHomeo):
            try:
                t = PartialHomeo.from_mapping(space, t)
            except ValidationError as exc:
                raise ValidationError(f"theta({g}): {exc}") from None
        values.append(t)
    action = PartialAction(group, space, tuple(values))
    report = check_premorphism(action)
    if not report.passed:
        bad = report.failures()[0]
        raise ValidationError(f"not a partial action: {bad.name} fails at {bad.witness}")
    return action


def global_action(
    group: FiniteGroup, space: FiniteSpace, perms: Mapping[str, Mapping[str, str]]
) -> PartialAction:
    return make_action(group, space, {g: PartialHomeo.from_mapping(space, p) for g, p in perms.items()})


def trivial_action(group: FiniteGroup, space: FiniteSpace) -> PartialAction:
    """Every non-identity element acts by the empty map."""
    return make_action(
        group, space, {g: empty(space) for g in group.elements if g != group.identity}
    )


def _premorphism_clauses(a: PartialAction, report: Report) -> bool:
    G, X = a.group, a.space
    th = a.theta
    e = G.identity_index
    ok_id = report.add("theta_e = id_X", th[e] == identity(X), {"g": G.identity})
    bad = first(g for g in range(len(G)) if th[G.inverse_index[g]] != invert(th[g]))
    ok_inv = report.add(
        "theta_{g^-1} = theta_g^-1", bad is None, None if bad is None else {"g": G.elements[bad]}
    )
    bad = first(
        (g, h)
        for g in range(len(G))
        for h in range(len(G))
        if not leq(compose(th[g], th[h]), th[G.table[g][h]])
    )
    ok_le = report.add(
        "theta_g o theta_h <= theta_gh",
        bad is None,
        None if bad is None else _witness_gh(a, *bad),
    )
    return ok_id.ok and ok_inv.ok and ok_le.ok


def _witness_gh(a: PartialAction, g: int, h: int, x: int | None = None) -> dict:
    G = a.group
    w = {"g": G.elements[g], "h": G.elements[h]}
    if x is None:
        t = compose(a.theta[g], a.theta[h])
        gh = a.theta[G.table[g][h]]
        x = first(i for i, j in t.pairs if gh.fwd.get(i) != j)
    if x is not None:
        w["x"] = a.space.points[x]
    return w


def _family_clauses(a: PartialAction, report: Report) -> bool:
    """(PA1')-(PA2') for the family theta_g: X_{g^-1} -> X_g, with X_g = im(theta_g)."""
    G, X = a.group, a.space
    th = a.theta
    n = len(G)
    Xg = [t.cod for t in th]
    inv = G.inverse_index
    bad = first(g for g in range(n) if th[g].dom != Xg[inv[g]])
    ok_shape = report.add(
        "family: dom theta_g = X_{g^-1}", bad is None, None if bad is None else {"g": G.elements[bad]}
    )
    e = G.identity_index
    ok_pa1 = report.add(
        "PA1': X_e = X and theta_e = id",
        Xg[e] == X.full and th[e] == identity(X),
        {"g": G.elements[e]},
    )
    bad_incl = None
    bad_eq = None
    for g, h in itertools.product(range(n), repeat=2):
        s = Xg[inv[g]] & Xg[G.table[inv[g]][h]]
        if bad_incl is None:
            img = th[g].image(s)
            if s & ~th[g].dom or img & ~(Xg[g] & Xg[h]):
                x = first(bits((s & ~th[g].dom) or s))
                bad_incl = {"g": G.elements[g], "h": G.elements[h], "x": X.points[x]}
        if bad_eq is None:
            t = Xg[inv[h]] & Xg[G.table[inv[h]][inv[g]]]
            gh = th[G.table[g][h]]
            for x in bits(t):
                y = th[h].fwd.get(x)
                z = None if y is None else th[g].fwd.get(y)
                if z is None or gh.fwd.get(x) != z:
                    bad_eq = _witness_gh(a, g, h, x)
                    break
    ok_incl = report.add(
        "PA2': theta_g(X_{g^-1} & X_{g^-1}h) in X_g & X_h", bad_incl is None, bad_incl
    )
    ok_eq = report.add(
        "PA2': theta_g theta_h = theta_gh on X_{h^-1} & X_{h^-1 g^-1}", bad_eq is None, bad_eq
    )
    return ok_shape.ok and ok_pa1.ok and ok_incl.ok and ok_eq.ok


def _set_clauses(a: PartialAction, report: Report) -> bool:
    """(PA1)-(PA3) for the partial map G*X -> X, (g, x) -> theta_g(x)."""
    G, X = a.group, a.space
    th = a.theta
    n, m = len(G), len(X)

    def act(g: int, x: int) -> int | None:
        return th[g].fwd.get(x)

    pa1 = None
    for g, x in itertools.product(range(n), range(m)):
        y = act(g, x)
        if y is not None and act(G.inverse_index[g], y) != x:
            pa1 = {"g": G.elements[g], "x": X.points[x]}
            break
    pa2 = None
    for g, h, x in itertools.product(range(n), range(n), range(m)):
        y = act(h, x)
        z = None if y is None else act(g, y)
        if z is not None and act(G.table[g][h], x) != z:
            pa2 = {"g": G.elements[g], "h": G.elements[h], "x": X.points[x]}
            break
    e = G.identity_index
    pa3 = first({"x": X.points[x]} for x in range(m) if act(e, x) != x)
    ok1 = report.add("PA1: g^-1.(g.x) = x", pa1 is None, pa1)
    ok2 = report.add("PA2: g.(h.x) = (gh).x", pa2 is None, pa2)
    ok3 = report.add("PA3: e.x = x", pa3 is None, pa3)
    return ok1.ok and ok2.ok and ok3.ok


def check_premorphism(a: PartialAction) -> Report:
    """Unital premorphism laws, the (PA1')-(PA2') family laws and the set laws.

    The three formulations are evaluated independently and must agree.
    """
    report = Report("partial action laws")
    prem = _premorphism_clauses(a, report)
    fam = _family_clauses(a, report)
    sets = _set_clauses(a, report)
    report.add(
        "premorphism, family and set formulations agree",
        prem == fam == sets,
        {"premorphism": prem, "family": fam, "set": sets},
    )
    return report


def restrict_global(a: PartialAction, subset: Iterable[str]) -> PartialAction:
    """Restriction of a global action to ``subset``: g.x is kept when it stays inside."""
    if not a.is_global():
        g = first(g for g, t in zip(a.group.elements, a.theta) if t.dom != a.space.full)
        raise ValidationError(f"action is not global: theta({g}) is partial")
    m = a.space.mask(subset)
    if not m:
        raise ValidationError("cannot restrict to the empty set")
    sub = subspace(a.space, a.space.labels(m))
    pos = sub.index
    pts = a.space.points
    theta = {}
    for g, t in zip(a.group.elements, a.theta):
        pairs = tuple(
            (pos[pts[i]], pos[pts[j]]) for i, j in t.pairs if (m >> i) & 1 and (m >> j) & 1
        )
        try:
            theta[g] = PartialHomeo(sub, pairs)
        except ValidationError as exc:
            raise ValidationError(f"restriction of theta({g}) is not topological: {exc}") from None
    return make_action(a.group, sub, theta)


# -- niceness -----------------------------------------------------------------


def group_space(group: FiniteGroup) -> FiniteSpace:
    """``G`` with the discrete topology."""
    return discrete(group.elements)


def action_domain(a: PartialAction) -> tuple[FiniteSpace, int]:
    """``G x X`` and the mask of ``G*X`` inside it."""
    gx = product([group_space(a.group), a.space])
    n = len(a.space)
    m = 0
    for g, t in enumerate(a.theta):
        for i in bits(t.dom):
            m |= 1 << (g * n + i)
    return gx, m


def action_map(a: PartialAction) -> ContinuousMap:
    """The partial action as a map ``G*X -> X`` out of the subspace ``G*X``."""
    gx, m = action_domain(a)
    sub = subspace(gx, gx.labels(m))
    n = len(a.space)
    assignment = []
    for p in sub.points:
        k = gx.index[p]
        g, x = divmod(k, n)
        assignment.append(a.theta[g].fwd[x])
    return ContinuousMap(sub, a.space, tuple(assignment))


def is_nice(a: PartialAction) -> Report:
    """Continuity of the action map and openness of ``G*X``.

    With ``G`` discrete, ``G x X`` is a disjoint union of copies of ``X``; the
    two extensional properties then reduce to per-element statements about
    ``theta(g)``.  Both forms are computed and compared.
    """
    report = Report("nice partial action")
    report.notes.append(
        "G is finite and discrete: G*X open <=> every dom(theta_g) open; "
        "theta continuous <=> every theta_g continuous"
    )
    X = a.space
    bad = first(g for g, t in zip(a.group.elements, a.theta) if not X.is_open_mask(t.dom))
    dom_open = report.add(
        "every dom(theta_g) open", bad is None, None if bad is None else {"g": bad}
    )
    bad = first(
        g
        for g, t in zip(a.group.elements, a.theta)
        if any(t.image(X.nbhd[i] & t.dom) & ~X.nbhd[j] for i, j in t.pairs)
    )
    each_cont = report.add(
        "every theta_g continuous", bad is None, None if bad is None else {"g": bad}
    )
    gx, m = action_domain(a)
    ext_open = report.add("G*X open in G x X", gx.is_open_mask(m), {"G*X": gx.sorted_labels(m)})
    ext_cont = report.add("action map G*X -> X continuous", is_continuous(action_map(a)))
    report.add(
        "discrete-G reduction agrees",
        dom_open.ok == ext_open.ok and each_cont.ok == ext_cont.ok,
        {"per-g": [dom_open.ok, each_cont.ok], "extensional": [ext_open.ok, ext_cont.ok]},
    )
    return report


def check_G_map(f: ContinuousMap, aX: PartialAction, aY: PartialAction) -> Report:
    """``f`` is equivariant wherever ``aX`` is defined."""
    if aX.group != aY.group:
        raise ValidationError("G-map check needs both actions of the same group")
    if f.dom != aX.space or f.cod != aY.space:
        raise ValidationError("map does not go between the two acted spaces")
    report = Report("G-map")
    report.add("map continuous", is_continuous(f))
    witness = None
    for g, (tx, ty) in enumerate(zip(aX.theta, aY.theta)):
        for i, j in tx.pairs:
            fx = f.assignment[i]
            if ty.fwd.get(fx) != f.assignment[j]:
                witness = {"g": aX.group.elements[g], "x": aX.space.points[i]}
                break
        if witness:
            break
    report.add("g.f(x) defined and equal to f(g.x)", witness is None, witness)
    return report
