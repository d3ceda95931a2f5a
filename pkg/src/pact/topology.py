"""Finite topological spaces and continuous maps between them.

A finite topology is stored through the minimal open neighbourhood of every
point (as an integer bitmask over the point order).  Every open set is a union
of minimal neighbourhoods, so the full open family is recovered on demand by
:attr:`FiniteSpace.opens`; that enumeration is size guarded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ValidationError, check_guard

MAX_OPENS = 2**16


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def tuple_label(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def set_label(parts: Iterable[str]) -> str:
    return "{" + ",".join(sorted(parts)) + "}"


@dataclass(frozen=True)
class FiniteSpace:
    """A finite set of labelled points with a topology.

    ``nbhd[i]`` is the bitmask of the smallest open set containing
    ``points[i]``.  Build instances with :func:`make_space` or
    :func:`space_from_opens` rather than directly.
    """

    points: tuple[str, ...]
    nbhd: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            seen = set()
            dup = next(p for p in self.points if p in seen or seen.add(p))
            raise ValidationError(f"duplicate point {dup!r}")
        if len(self.nbhd) != len(self.points):
            raise ValidationError("one neighbourhood per point required")
        full = (1 << len(self.points)) - 1
        for i, u in enumerate(self.nbhd):
            if not (u >> i) & 1 or u & ~full:
                raise ValidationError(f"bad neighbourhood for point {self.points[i]!r}")
            for j in bits(u):
                if self.nbhd[j] & ~u:
                    raise ValidationError(
                        f"neighbourhood system not transitive at {self.points[i]!r}"
                    )

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"FiniteSpace(points={list(self.points)}, opens={self.canonical_opens()})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for p in subset:
            try:
                m |= 1 << self.index[p]
            except KeyError:
                raise ValidationError(f"unknown point {p!r}") from None
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in bits(mask))

    def sorted_labels(self, mask: int) -> list[str]:
        return sorted(self.points[i] for i in bits(mask))

    # -- open and closed sets -------------------------------------------------

    def is_open_mask(self, m: int) -> bool:
        return all(self.nbhd[i] & ~m == 0 for i in bits(m))

    def is_open(self, subset: Iterable[str]) -> bool:
        return self.is_open_mask(self.mask(subset))

    def is_closed_mask(self, m: int) -> bool:
        return self.is_open_mask(self.full & ~m)

    def is_closed(self, subset: Iterable[str]) -> bool:
        return self.is_closed_mask(self.mask(subset))

    def open_hull(self, m: int) -> int:
        """Smallest open set containing the set ``m``."""
        out = 0
        for i in bits(m):
            out |= self.nbhd[i]
        return out

    def closure(self, m: int) -> int:
        """Smallest closed set containing ``m``."""
        return sum(1 << j for j in range(len(self.points)) if self.nbhd[j] & m)

    def specializes(self, x: str, y: str) -> bool:
        """``x <= y`` in the specialisation order: every open containing x contains y."""
        return bool((self.nbhd[self.index[x]] >> self.index[y]) & 1)

    def open_masks(self) -> tuple[int, ...]:
        return self._open_masks

    @cached_property
    def _open_masks(self) -> tuple[int, ...]:
        family = {0}
        for u in dict.fromkeys(self.nbhd):
            family |= {v | u for v in family}
            check_guard("number of open sets", len(family), MAX_OPENS)
        return tuple(sorted(family))

    @property
    def opens(self) -> tuple[frozenset[str], ...]:
        return tuple(self.labels(m) for m in self.open_masks())

    def canonical_opens(self) -> list[list[str]]:
        return sorted(self.sorted_labels(m) for m in self.open_masks())


def space_from_generator_masks(points: Sequence[str], generators: Iterable[int]) -> FiniteSpace:
    """Like :func:`make_space` with generators given as bitmasks over ``points``."""
    pts = tuple(points)
    return FiniteSpace(pts, _close_generators(len(pts), generators))


def _close_generators(n: int, generators: Iterable[int]) -> tuple[int, ...]:
    full = (1 << n) - 1
    nbhd = [full] * n
    for g in generators:
        for i in bits(g):
            nbhd[i] &= g
    return tuple(nbhd)


def make_space(points: Sequence[str], generators: Iterable[Iterable[str]] = ()) -> FiniteSpace:
    """Smallest topology on ``points`` containing every generator."""
    pts = tuple(points)
    index = {p: i for i, p in enumerate(pts)}
    masks = []
    for gen in generators:
        m = 0
        for p in gen:
            if p not in index:
                raise ValidationError(f"generator references unknown point {p!r}")
            m |= 1 << index[p]
        masks.append(m)
    if len(index) != len(pts):
        FiniteSpace(pts, (0,) * len(pts))  # raises with the duplicate named
    return FiniteSpace(pts, _close_generators(len(pts), masks))


def space_from_opens(points: Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    """Build a space from an explicit open family, rejecting non-topologies."""
    opens = [list(u) for u in opens]
    space = make_space(points, opens)
    given = {space.mask(u) for u in opens}
    missing = [m for m in (0, space.full) if m not in given]
    if missing:
        raise ValidationError(f"opens must contain {space.sorted_labels(missing[0])}")
    for u, v in itertools.combinations(sorted(given), 2):
        for w, op in ((u | v, "union"), (u & v, "intersection")):
            if w not in given:
                raise ValidationError(
                    f"opens not closed under {op}: {space.sorted_labels(u)} and "
                    f"{space.sorted_labels(v)}"
                )
    return space


def discrete(points: Sequence[str]) -> FiniteSpace:
    return FiniteSpace(tuple(points), tuple(1 << i for i in range(len(points))))


def indiscrete(points: Sequence[str]) -> FiniteSpace:
    full = (1 << len(points)) - 1
    return FiniteSpace(tuple(points), (full,) * len(points))


def sierpinski(closed: str = "0", open_: str = "1") -> FiniteSpace:
    """Two points, the second one open."""
    return make_space([closed, open_], [[open_]])


def empty_space() -> FiniteSpace:
    return FiniteSpace((), ())


# -- continuous maps ----------------------------------------------------------


@dataclass(frozen=True)
class ContinuousMap:
    """A total function between finite spaces.

    Construction only checks totality; continuity is reported by
    :func:`is_continuous` so that candidate maps can be represented too.
    ``assignment[i]`` is the codomain index of ``dom.points[i]``.
    """

    dom: FiniteSpace
    cod: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != len(self.dom):
            raise ValidationError("assignment must be total on the domain")
        if any(not 0 <= j < len(self.cod) for j in self.assignment):
            raise ValidationError("assignment leaves the codomain")

    @classmethod
    def from_mapping(
        cls, dom: FiniteSpace, cod: FiniteSpace, mapping: Mapping[str, str]
    ) -> "ContinuousMap":
        missing = [p for p in dom.points if p not in mapping]
        if missing:
            raise ValidationError(f"map undefined at {missing[0]!r}")
        extra = set(mapping) - set(dom.points)
        if extra:
            raise ValidationError(f"map defined at unknown point {sorted(extra)[0]!r}")
        try:
            return cls(dom, cod, tuple(cod.index[mapping[p]] for p in dom.points))
        except KeyError as exc:
            raise ValidationError(f"map value {exc.args[0]!r} not in codomain") from None

    def __call__(self, point: str) -> str:
        return self.cod.points[self.assignment[self.dom.index[point]]]

    def as_dict(self) -> dict[str, str]:
        return {p: self.cod.points[j] for p, j in zip(self.dom.points, self.assignment)}

    def image(self, m: int) -> int:
        out = 0
        for i in bits(m):
            out |= 1 << self.assignment[i]
        return out

    def preimage(self, m: int) -> int:
        return sum(1 << i for i, j in enumerate(self.assignment) if (m >> j) & 1)

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    def is_surjective(self) -> bool:
        return self.image(self.dom.full) == self.cod.full


def identity_map(s: FiniteSpace) -> ContinuousMap:
    return ContinuousMap(s, s, tuple(range(len(s))))


def compose_maps(f: ContinuousMap, g: ContinuousMap) -> ContinuousMap:
    """``f`` after ``g``."""
    if g.cod != f.dom:
        raise ValidationError("maps are not composable")
    return ContinuousMap(g.dom, f.cod, tuple(f.assignment[j] for j in g.assignment))


def is_continuous(m: ContinuousMap) -> bool:
    # preimages of opens are open iff the map is monotone for the specialisation order
    return all(
        m.image(m.dom.nbhd[i]) & ~m.cod.nbhd[m.assignment[i]] == 0 for i in range(len(m.dom))
    )


def is_open_map(m: ContinuousMap) -> bool:
    return all(m.cod.is_open_mask(m.image(u)) for u in m.dom.nbhd)


def is_embedding(m: ContinuousMap) -> bool:
    if not m.is_injective() or not is_continuous(m):
        return False
    return all(
        m.preimage(m.cod.nbhd[m.assignment[i]]) == m.dom.nbhd[i] for i in range(len(m.dom))
    )


def is_homeomorphism(m: ContinuousMap) -> bool:
    return m.is_surjective() and is_embedding(m)


# -- constructions ------------------------------------------------------------


def subspace(s: FiniteSpace, subset: Iterable[str]) -> FiniteSpace:
    """Subspace topology on ``subset``; points keep the order of ``s``."""
    m = s.mask(subset)
    keep = list(bits(m))
    pos = {i: k for k, i in enumerate(keep)}
    nbhd = []
    for i in keep:
        nbhd.append(sum(1 << pos[j] for j in bits(s.nbhd[i] & m)))
    return FiniteSpace(tuple(s.points[i] for i in keep), tuple(nbhd))


def inclusion(s: FiniteSpace, subset: Iterable[str]) -> ContinuousMap:
    sub = subspace(s, subset)
    return ContinuousMap(sub, s, tuple(s.index[p] for p in sub.points))


def product(spaces: Sequence[FiniteSpace]) -> FiniteSpace:
    """Product topology; points are labelled ``(x1,...,xn)`` in lexicographic index order."""
    if not spaces:
        raise ValidationError("product of an empty list of spaces")
    sizes = [len(s) for s in spaces]
    strides = [1] * len(spaces)
    for k in range(len(spaces) - 2, -1, -1):
        strides[k] = strides[k + 1] * sizes[k + 1]
    points = []
    nbhd = []
    for combo in itertools.product(*(range(n) for n in sizes)):
        points.append(tuple_label([s.points[i] for s, i in zip(spaces, combo)]))
        cells = [list(bits(s.nbhd[i])) for s, i in zip(spaces, combo)]
        u = 0
        for cell in itertools.product(*cells):
            u |= 1 << sum(c * st for c, st in zip(cell, strides))
        nbhd.append(u)
    return FiniteSpace(tuple(points), tuple(nbhd))


def product_index(spaces: Sequence[FiniteSpace], coords: Sequence[int]) -> int:
    idx = 0
    for s, c in zip(spaces, coords):
        idx = idx * len(s) + c
    return idx


def projection(spaces: Sequence[FiniteSpace], k: int, prod: FiniteSpace | None = None) -> ContinuousMap:
    prod = prod if prod is not None else product(spaces)
    sizes = [len(s) for s in spaces]
    assignment = [coords[k] for coords in itertools.product(*(range(n) for n in sizes))]
    return ContinuousMap(prod, spaces[k], tuple(assignment))


def quotient(
    s: FiniteSpace, partition: Iterable[Iterable[str]]
) -> tuple[FiniteSpace, ContinuousMap]:
    """Quotient by a partition; each block is labelled by its least member.

    Blocks appear in the order of their labels.  ``V`` is open in the result
    exactly when its preimage is open in ``s``.
    """
    blocks = []
    owner: dict[int, int] = {}
    for raw in partition:
        block = list(raw)
        if not block:
            raise ValidationError("partition has an empty block")
        m = s.mask(block)
        for i in bits(m):
            if i in owner:
                raise ValidationError(f"point {s.points[i]!r} lies in two blocks")
            owner[i] = -1
        blocks.append((min(block), m))
    if len(owner) != len(s):
        loose = next(p for i, p in enumerate(s.points) if i not in owner)
        raise ValidationError(f"partition does not cover point {loose!r}")
    blocks.sort()
    block_mask = [m for _, m in blocks]
    for b, m in enumerate(block_mask):
        for i in bits(m):
            owner[i] = b

    def saturate(m: int) -> int:
        out = 0
        for b in {owner[i] for i in bits(m)}:
            out |= block_mask[b]
        return out

    nbhd = []
    for m in block_mask:
        cur = m
        while True:
            nxt = saturate(s.open_hull(cur))
            if nxt == cur:
                break
            cur = nxt
        nbhd.append(sum(1 << b for b in {owner[i] for i in bits(cur)}))
    q_space = FiniteSpace(tuple(label for label, _ in blocks), tuple(nbhd))
    q = ContinuousMap(s, q_space, tuple(owner[i] for i in range(len(s))))
    return q_space, q


def relabel(s: FiniteSpace, names: Mapping[str, str]) -> FiniteSpace:
    return FiniteSpace(tuple(names[p] for p in s.points), s.nbhd)


# -- separation ---------------------------------------------------------------

AXIOMS = ("T0", "T1", "T2", "regular")


def separation(s: FiniteSpace, axiom: str) -> bool:
    n = len(s)
    if axiom == "T0":
        return not any(
            (s.nbhd[i] >> j) & 1 and (s.nbhd[j] >> i) & 1
            for i, j in itertools.combinations(range(n), 2)
        )
    if axiom == "T1":
        return all(s.is_closed_mask(1 << i) for i in range(n))
    if axiom == "T2":
        # minimal neighbourhoods are the hardest pair to separate
        return all(
            s.nbhd[i] & s.nbhd[j] == 0 for i, j in itertools.combinations(range(n), 2)
        )
    if axiom == "regular":
        # the largest closed set missing x is the complement of its minimal neighbourhood
        return all(s.nbhd[i] & s.open_hull(s.full & ~s.nbhd[i]) == 0 for i in range(n))
    raise ValidationError(f"unknown separation axiom {axiom!r}; expected one of {AXIOMS}")


def is_discrete(s: FiniteSpace) -> bool:
    return all(u == 1 << i for i, u in enumerate(s.nbhd))
