"""Generated instances for sweeps.

Exhaustive mode walks every topology on ``n`` points (up to relabelling,
unless ``up_to_iso`` is off) and every valid ``theta``; random mode is
deterministic per seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterator

from .errors import ValidationError, check_guard
from .gamma import (
    PartialAction,
    PartialHomeo,
    check_premorphism,
    enumerate_gamma,
    identity,
    invert,
    make_action,
    restrict,
    restrict_global,
)
from .groups import FiniteGroup, cyclic, klein_four, symmetric, trivial_group
from .topology import FiniteSpace, bits, space_from_generator_masks

MAX_EXHAUSTIVE_POINTS = 4
MAX_EXHAUSTIVE_THETAS = 10**6
MAX_RANDOM_POINTS = 8


def group_by_name(name: str) -> FiniteGroup:
    """``trivial``, ``Z<n>``, ``S<n>`` or ``klein``."""
    if name == "trivial":
        return trivial_group()
    if name == "klein":
        return klein_four()
    if len(name) > 1 and name[0] in "ZS" and name[1:].isdigit():
        n = int(name[1:])
        return cyclic(n) if name[0] == "Z" else symmetric(n)
    raise ValidationError(f"unknown group name {name!r}")


@dataclass(frozen=True)
class CorpusSpec:
    mode: str = "exhaustive"
    groups: tuple[str, ...] = ("trivial", "Z2")
    min_points: int = 1
    max_points: int = 2
    count: int = 100
    seed: int = 0
    up_to_iso: bool = True

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValidationError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if not 1 <= self.min_points <= self.max_points:
            raise ValidationError("need 1 <= min_points <= max_points")
        if self.count < 0:
            raise ValidationError("count must be non-negative")
        for g in self.groups:
            group_by_name(g)
        limit = MAX_EXHAUSTIVE_POINTS if self.mode == "exhaustive" else MAX_RANDOM_POINTS
        check_guard(f"{self.mode} corpus points", self.max_points, limit)

    @classmethod
    def from_json(cls, obj: Any) -> "CorpusSpec":
        if not isinstance(obj, dict):
            raise ValidationError("corpus spec must be an object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValidationError(f"unknown corpus spec key {sorted(unknown)[0]!r}")
        data = dict(obj)
        if "groups" in data:
            data["groups"] = tuple(data["groups"])
        return cls(**data)

    def to_json(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "groups": list(self.groups),
            "min_points": self.min_points,
            "max_points": self.max_points,
            "count": self.count,
            "seed": self.seed,
            "up_to_iso": self.up_to_iso,
        }


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    action: PartialAction
    tags: tuple[str, ...] = field(default=())


# -- topologies ----------------------------------------------------------------


def _labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _relabel_nbhd(nbhd: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(nbhd)
    for i, m in enumerate(nbhd):
        out[perm[i]] = sum(1 << perm[j] for j in bits(m))
    return tuple(out)


def all_topologies(n: int, up_to_iso: bool = True) -> list[FiniteSpace]:
    """Every topology on ``0..n-1`` as a space, optionally one per isomorphism class."""
    check_guard("topology enumeration points", n, MAX_EXHAUSTIVE_POINTS)
    choices = []
    for i in range(n):
        rest = [j for j in range(n) if j != i]
        choices.append(
            [(1 << i) | sum(1 << rest[k] for k in bits(s)) for s in range(1 << (n - 1))]
        )
    found: set[tuple[int, ...]] = set()
    for nb in itertools.product(*choices):
        if any(nb[j] & ~nb[i] for i in range(n) for j in bits(nb[i])):
            continue
        if up_to_iso:
            nb = min(_relabel_nbhd(nb, p) for p in itertools.permutations(range(n)))
        found.add(nb)
    # finer topologies first: discrete space leads, indiscrete comes last
    order = sorted(found, key=lambda nb: (sum(bin(m).count("1") for m in nb), nb))
    return [FiniteSpace(_labels(n), nb) for nb in order]


def random_space(rng: random.Random, n: int) -> FiniteSpace:
    k = rng.randint(0, n + 1)
    gens = [rng.randrange(1 << n) for _ in range(k)]
    return space_from_generator_masks(_labels(n), gens)


# -- actions -------------------------------------------------------------------


def _inverse_pairs(G: FiniteGroup) -> list[int]:
    """One representative of every ``{g, g^-1}`` with ``g != e``."""
    seen: set[int] = set()
    reps = []
    for g in range(len(G)):
        if g == G.identity_index or g in seen:
            continue
        reps.append(g)
        seen.update({g, G.inverse_index[g]})
    return reps


def _assemble(G: FiniteGroup, X: FiniteSpace, chosen: dict[int, PartialHomeo]) -> PartialAction:
    theta = [identity(X)] * len(G)
    for g, t in chosen.items():
        theta[g] = t
        theta[G.inverse_index[g]] = invert(t)
    return PartialAction(G, X, tuple(theta))


def all_actions(G: FiniteGroup, X: FiniteSpace) -> Iterator[PartialAction]:
    """Every partial action of ``G`` on ``X``, in a fixed order."""
    gamma = enumerate_gamma(X)
    involutive = [f for f in gamma if invert(f) == f]
    reps = _inverse_pairs(G)
    pools = [involutive if G.inverse_index[g] == g else gamma for g in reps]
    total = 1
    for p in pools:
        total *= len(p)
    check_guard("exhaustive theta candidates", total, MAX_EXHAUSTIVE_THETAS)
    for combo in itertools.product(*pools):
        a = _assemble(G, X, dict(zip(reps, combo)))
        if check_premorphism(a).passed:
            yield a


def _restricted_sample(rng: random.Random, G: FiniteGroup, n: int) -> PartialAction | None:
    """Restrict left translation on ``G x S`` to a random open set of ``n`` points."""
    S = random_space(rng, rng.randint(1, min(n, 4)))
    W_points = [f"{g}|{s}" for g in G.elements for s in S.points]
    nb = []
    for g in range(len(G)):
        for s in range(len(S)):
            nb.append(sum(1 << (g * len(S) + t) for t in bits(S.nbhd[s])))
    W = FiniteSpace(tuple(W_points), tuple(nb))
    theta = {}
    for g in range(len(G)):
        theta[G.elements[g]] = {
            f"{G.elements[h]}|{s}": f"{G.elements[G.table[g][h]]}|{s}"
            for h in range(len(G))
            for s in S.points
        }
    glob = make_action(G, W, theta)
    sized = [m for m in W.open_masks() if bin(m).count("1") == n]
    opens = sized or [m for m in W.open_masks() if 0 < bin(m).count("1") <= n]
    if not opens:
        return None
    U = rng.choice(opens)
    a = restrict_global(glob, W.labels(U))
    names = {p: str(i) for i, p in enumerate(a.space.points)}
    X = FiniteSpace(tuple(names[p] for p in a.space.points), a.space.nbhd)
    return PartialAction(G, X, tuple(PartialHomeo(X, t.pairs) for t in a.theta))


def _rejection_sample(
    rng: random.Random, G: FiniteGroup, n: int, tries: int = 200
) -> PartialAction | None:
    X = random_space(rng, n)
    gamma = enumerate_gamma(X)
    opens = X.open_masks()
    involutive = [f for f in gamma if invert(f) == f]
    reps = _inverse_pairs(G)
    for _ in range(tries):
        chosen = {}
        for g in reps:
            pool = involutive if G.inverse_index[g] == g else gamma
            f = rng.choice(pool)
            chosen[g] = restrict(f, rng.choice([m for m in opens if m & ~f.dom == 0]))
        a = _assemble(G, X, chosen)
        if check_premorphism(a).passed:
            return a
    return None


def random_instance(rng: random.Random, G: FiniteGroup, min_points: int, max_points: int) -> PartialAction:
    while True:
        n = rng.randint(min_points, max_points)
        sampler = _restricted_sample if rng.random() < 0.5 else _rejection_sample
        a = sampler(rng, G, n)
        if a is not None and min_points <= len(a.space) <= max_points:
            return a


# -- driver ----------------------------------------------------------------------


def generate_corpus(spec: CorpusSpec) -> Iterator[CorpusInstance]:
    if spec.mode == "exhaustive":
        for gname in spec.groups:
            G = group_by_name(gname)
            for n in range(spec.min_points, spec.max_points + 1):
                for t, X in enumerate(all_topologies(n, spec.up_to_iso)):
                    for k, a in enumerate(all_actions(G, X)):
                        yield CorpusInstance(f"{gname}/n{n}/top{t}/theta{k}", a, ("exhaustive",))
        return
    rng = random.Random(spec.seed)
    groups = [group_by_name(g) for g in spec.groups]
    for i in range(spec.count):
        k = rng.randrange(len(groups))
        a = random_instance(rng, groups[k], spec.min_points, spec.max_points)
        yield CorpusInstance(f"random{spec.seed}/{spec.groups[k]}/{i}", a, ("random",))
