"""Gamma-embeddings and the partial actions they induce.

A Gamma-embedding of ``X`` into ``Z`` is an embedding ``c: X -> Z`` together
with a semigroup homomorphism ``sigma`` from the partial homeomorphisms of
``X`` to those of ``Z`` such that ``c(x)`` lies in ``dom(sigma(f))`` and
``sigma(f)(c(x)) = c(f(x))`` whenever ``x`` is in ``dom(f)``.  Here ``sigma``
is tabulated over every element of ``enumerate_gamma(X)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import ValidationError, check_guard
from .gamma import (
    PartialAction,
    PartialHomeo,
    compose,
    enumerate_gamma,
    identity,
    invert,
    make_action,
)
from .report import Report
from .topology import (
    ContinuousMap,
    FiniteSpace,
    bits,
    is_continuous,
    is_embedding,
    is_open_map,
    product,
    product_index,
    quotient,
    relabel,
    set_label,
    sierpinski,
    space_from_generator_masks,
)

MAX_HYPERSPACE_POINTS = 12
MAX_FUNCTIONS = 10**5


@dataclass(frozen=True)
class GammaEmbedding:
    source: FiniteSpace
    target: FiniteSpace
    c: ContinuousMap
    sigma: dict[PartialHomeo, PartialHomeo] = field(hash=False)
    kind: str = ""
    notes: tuple[str, ...] = ()
    carrier: Any = field(default=None, hash=False, compare=False)

    def __call__(self, f: PartialHomeo) -> PartialHomeo:
        return self.sigma[f]

    def is_unital(self) -> bool:
        return self.sigma.get(identity(self.source)) == identity(self.target)


def tabulate(
    source: FiniteSpace,
    target: FiniteSpace,
    c: ContinuousMap,
    rule: Callable[[PartialHomeo], PartialHomeo],
    kind: str,
    notes: Sequence[str] = (),
    carrier: Any = None,
) -> GammaEmbedding:
    sigma = {f: rule(f) for f in enumerate_gamma(source)}
    return GammaEmbedding(source, target, c, sigma, kind, tuple(notes), carrier)


def _show(f: PartialHomeo) -> dict[str, str]:
    return f.as_dict()


def verify_gamma_embedding(e: GammaEmbedding) -> Report:
    report = Report(f"Gamma-embedding ({e.kind})" if e.kind else "Gamma-embedding")
    report.notes.extend(e.notes)
    report.add("c is an embedding", is_embedding(e.c))
    gamma = enumerate_gamma(e.source)
    missing = next((f for f in gamma if f not in e.sigma), None)
    report.add("sigma defined on all of Gamma(X)", missing is None, missing and _show(missing))
    if missing is not None:
        return report
    bad = next(
        (f for f in gamma if e.sigma[f].ambient != e.target or e.sigma[f].defect()), None
    )
    report.add(
        "every sigma(f) is a partial homeomorphism of Z",
        bad is None,
        None if bad is None else {"f": _show(bad), "defect": e.sigma[bad].defect()},
    )
    if bad is not None:
        return report
    witness = None
    for f, g in itertools.product(gamma, repeat=2):
        if e.sigma[compose(f, g)] != compose(e.sigma[f], e.sigma[g]):
            witness = {"f": _show(f), "g": _show(g)}
            break
    report.add("sigma(f o g) = sigma(f) o sigma(g)", witness is None, witness)
    bad = next((f for f in gamma if e.sigma[invert(f)] != invert(e.sigma[f])), None)
    report.add("sigma(f^-1) = sigma(f)^-1", bad is None, bad and _show(bad))
    img = None
    diag = None
    ca = e.c.assignment
    for f in gamma:
        s = e.sigma[f].fwd
        for i, j in f.pairs:
            if ca[i] not in s:
                img = img or {"f": _show(f), "x": e.source.points[i]}
            elif s[ca[i]] != ca[j]:
                diag = diag or {"f": _show(f), "x": e.source.points[i]}
    report.add("im(sigma x c) inside Gamma(Z)*Z", img is None, img)
    report.add("sigma(f)(c(x)) = c(f(x))", diag is None, diag)
    if not e.is_unital():
        report.notes.append("sigma(id_X) is not id_Z; induced actions use id_Z for the identity")
    return report


def induce_action(e: GammaEmbedding, a: PartialAction) -> PartialAction:
    """``g -> sigma(theta(g))``, with the identity sent to ``id_Z``."""
    if a.space != e.source:
        raise ValidationError("action does not live on the embedded space")
    theta = {g: e.sigma[t] for g, t in zip(a.group.elements, a.theta)}
    theta[a.group.identity] = identity(e.target)
    return make_action(a.group, e.target, theta)


# -- open embeddings ----------------------------------------------------------


def open_embedding_gamma(c: ContinuousMap) -> GammaEmbedding:
    """``sigma(f) = c f c^-1`` on ``c(dom f)`` for an open embedding ``c``."""
    if not (is_embedding(c) and is_open_map(c)):
        raise ValidationError("c must be an open embedding")
    ca = c.assignment

    def rule(f: PartialHomeo) -> PartialHomeo:
        return PartialHomeo(c.cod, tuple(sorted((ca[i], ca[j]) for i, j in f.pairs)))

    return tabulate(c.dom, c.cod, c, rule, "open embedding")


# -- hyperspace ---------------------------------------------------------------


@dataclass(frozen=True)
class Hyperspace:
    base: FiniteSpace
    space: FiniteSpace
    subsets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_pos", {m: k for k, m in enumerate(self.subsets)})

    def point(self, m: int) -> int:
        """Index of the subset ``m`` (a bitmask over the base space)."""
        return self._pos[m]

    def lower(self, v: int) -> int:
        """``V^-``: subsets meeting ``V``."""
        return sum(1 << k for k, a in enumerate(self.subsets) if a & v)

    def upper(self, v: int) -> int:
        """``V^+``: subsets contained in ``V``."""
        return sum(1 << k for k, a in enumerate(self.subsets) if a & ~v == 0)


def hyperspace_space(s: FiniteSpace) -> Hyperspace:
    """Nonempty subsets of ``s`` with the Vietoris topology."""
    check_guard("hyperspace base points", len(s), MAX_HYPERSPACE_POINTS)
    subsets = sorted(range(1, 1 << len(s)), key=lambda m: (m.bit_count(), s.sorted_labels(m)))
    labels = [set_label(s.labels(m)) for m in subsets]
    shell = Hyperspace(s, space_from_generator_masks(labels, ()), tuple(subsets))
    gens = []
    for v in s.open_masks():
        if v:
            gens += [shell.lower(v), shell.upper(v)]
    return Hyperspace(s, space_from_generator_masks(labels, gens), tuple(subsets))


def hyperspace(s: FiniteSpace) -> tuple[FiniteSpace, GammaEmbedding]:
    h = hyperspace_space(s)
    pos = h._pos
    c = ContinuousMap(s, h.space, tuple(pos[1 << i] for i in range(len(s))))

    def rule(f: PartialHomeo) -> PartialHomeo:
        pairs = [(pos[m], pos[f.image(m)]) for m in h.subsets if m & ~f.dom == 0]
        return PartialHomeo(h.space, tuple(sorted(pairs)))

    return h.space, tabulate(s, h.space, c, rule, "hyperspace", carrier=h)


# -- finite-model cone --------------------------------------------------------

APEX = "apex"


def cone_finite(s: FiniteSpace) -> tuple[FiniteSpace, GammaEmbedding]:
    """Cone over ``s`` with the unit interval replaced by the Sierpinski space.

    ``(1,x)`` plays the role of ``tx`` for ``t > 0``; the level ``0 x s`` is
    collapsed to the apex.  ``sigma(f)`` moves ``(1,x)`` to ``(1,f(x))`` and
    fixes the apex exactly when ``f`` is defined on all of ``s``.
    """
    T = sierpinski("0", "1")
    P = product([T, s])
    n = len(s)
    blocks = [[f"(1,{x})"] for x in s.points]
    if n:
        blocks.append([f"(0,{x})" for x in s.points])
    qspace, eta = quotient(P, blocks)
    apex_label = f"(0,{min(s.points)})" if n else None
    cone = relabel(qspace, {p: APEX if p == apex_label else p for p in qspace.points})
    eta = ContinuousMap(P, cone, eta.assignment)
    top = [eta.assignment[n + i] for i in range(n)]  # (1,x) sits at index n + i
    c = ContinuousMap(s, cone, tuple(top))
    apex = cone.index.get(APEX)

    def rule(f: PartialHomeo) -> PartialHomeo:
        pairs = [(top[i], top[j]) for i, j in f.pairs]
        if n and f.dom == s.full:
            pairs.append((apex, apex))
        return PartialHomeo(cone, tuple(sorted(pairs)))

    notes = (
        "finite-model cone: [0,1] replaced by the Sierpinski space {0,1} with {1} open",
        "apex lies in dom(sigma(f)) exactly when dom(f) is the whole space",
    )
    return cone, tabulate(s, cone, c, rule, "finite-model cone", notes, carrier=eta)


# -- products -----------------------------------------------------------------


def product_embedding(
    factors: Sequence[FiniteSpace], i: int, basepoints: Sequence[str]
) -> GammaEmbedding:
    """Embed factor ``i`` as a slice through the other factors' basepoints."""
    if not 0 <= i < len(factors):
        raise ValidationError(f"factor index {i} out of range")
    others = [k for k in range(len(factors)) if k != i]
    if len(basepoints) != len(others):
        raise ValidationError(f"expected {len(others)} basepoints, got {len(basepoints)}")
    base = {}
    for k, b in zip(others, basepoints):
        if b not in factors[k].index:
            raise ValidationError(f"basepoint {b!r} is not a point of factor {k}")
        base[k] = factors[k].index[b]
    P = product(factors)
    X = factors[i]

    def at(x: int) -> list[int]:
        return [x if k == i else base[k] for k in range(len(factors))]

    c = ContinuousMap(X, P, tuple(product_index(factors, at(x)) for x in range(len(X))))
    coords = list(itertools.product(*(range(len(f)) for f in factors)))

    def rule(f: PartialHomeo) -> PartialHomeo:
        pairs = []
        for k, co in enumerate(coords):
            j = f.fwd.get(co[i])
            if j is not None:
                pairs.append((k, product_index(factors, co[:i] + (j,) + co[i + 1 :])))
        return PartialHomeo(P, tuple(sorted(pairs)))

    return tabulate(X, P, c, rule, f"product slot {i}")


# -- function spaces ----------------------------------------------------------


def function_label(x: FiniteSpace, y: FiniteSpace, assignment: Sequence[int]) -> str:
    pairs = sorted((x.points[i], y.points[j]) for i, j in enumerate(assignment))
    return "f{" + ",".join(f"{p}→{v}" for p, v in pairs) + "}"


@dataclass(frozen=True)
class FunctionSpace:
    """Continuous maps ``x -> y`` with the compact-open topology."""

    x: FiniteSpace
    y: FiniteSpace
    space: FiniteSpace
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_position", {m: k for k, m in enumerate(self.maps)})

    def point(self, assignment: Sequence[int]) -> int:
        return self._position[tuple(assignment)]

    def label(self, assignment: Sequence[int]) -> str:
        return self.space.points[self.point(assignment)]

    def as_map(self, k: int) -> ContinuousMap:
        return ContinuousMap(self.x, self.y, self.maps[k])

    def subbasic(self, K: int, V: int) -> int:
        """``<K,V>``: maps sending the set ``K`` into ``V`` (both bitmasks)."""
        out = 0
        for k, f in enumerate(self.maps):
            if all((V >> f[p]) & 1 for p in bits(K)):
                out |= 1 << k
        return out

    def constant(self, yi: int) -> int:
        return self.point((yi,) * len(self.x))

    def ev(self, p: str) -> ContinuousMap:
        i = self.x.index[p]
        return ContinuousMap(self.space, self.y, tuple(f[i] for f in self.maps))


def function_space_data(x: FiniteSpace, y: FiniteSpace) -> FunctionSpace:
    """All continuous maps ``x -> y``, topologised by the subbasis ``<K,V>``.

    For a fixed ``K`` the subbasic sets containing ``f`` are ``<K,V>`` with
    ``V`` an open superset of ``f(K)``; their intersection is ``<K, O(f(K))>``
    with ``O`` the smallest open hull.  So each minimal neighbourhood is an
    intersection over the ``2^|x|`` subsets ``K`` only.
    """
    if not len(x):
        raise ValidationError("the parameter space of C(X,Y) must be nonempty")
    check_guard("candidate maps |Y|^|X|", len(y) ** len(x), MAX_FUNCTIONS)
    maps = tuple(
        f
        for f in itertools.product(range(len(y)), repeat=len(x))
        if is_continuous(ContinuousMap(x, y, f))
    )
    labels = [function_label(x, y, f) for f in maps]
    shell = FunctionSpace(x, y, space_from_generator_masks(labels, ()), maps)
    subsets = range(1, 1 << len(x))
    full = (1 << len(maps)) - 1
    cache: dict[tuple[int, int], int] = {}
    nbhd = []
    for f in maps:
        u = full
        for K in subsets:
            img = 0
            for p in bits(K):
                img |= 1 << f[p]
            key = (K, y.open_hull(img))
            if key not in cache:
                cache[key] = shell.subbasic(*key)
            u &= cache[key]
        nbhd.append(u)
    return FunctionSpace(x, y, FiniteSpace(tuple(labels), tuple(nbhd)), maps)


def function_space(x: FiniteSpace, y: FiniteSpace) -> tuple[FiniteSpace, GammaEmbedding]:
    """``C(x,y)`` and the embedding of ``y`` as constant maps."""
    fs = function_space_data(x, y)
    c = ContinuousMap(y, fs.space, tuple(fs.constant(j) for j in range(len(y))))

    def rule(f: PartialHomeo) -> PartialHomeo:
        return sigma_function_space(fs, f)

    return fs.space, tabulate(y, fs.space, c, rule, "function space", carrier=fs)


def sigma_function_space(fs: FunctionSpace, f: PartialHomeo) -> PartialHomeo:
    """``<X, dom f> -> <X, im f>``, ``r -> f o r``."""
    pairs = []
    fw = f.fwd
    for k, r in enumerate(fs.maps):
        if all(v in fw for v in r):
            pairs.append((k, fs.point(tuple(fw[v] for v in r))))
    return PartialHomeo(fs.space, tuple(sorted(pairs)))
