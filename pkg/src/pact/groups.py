"""Finite groups given by multiplication tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import ValidationError, check_guard

MAX_ORDER = 24


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``elements``; ``table[i][j]`` is the index of ``elements[i] * elements[j]``.

    Use :func:`make_group` (or the named constructors) to get a validated group.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity_index: int
    inverse_index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self) -> str:
        return self.elements[self.identity_index]

    def mul(self, g: str, h: str) -> str:
        return self.elements[self.table[self.index[g]][self.index[h]]]

    def inv(self, g: str) -> str:
        return self.elements[self.inverse_index[self.index[g]]]

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i))

    def table_labels(self) -> list[list[str]]:
        return [[self.elements[k] for k in row] for row in self.table]


def make_group(elements: Sequence[str], table: Sequence[Sequence[str]]) -> FiniteGroup:
    """Validate a multiplication table (row ``g``, column ``h`` holds ``gh``)."""
    elems = tuple(elements)
    if not elems:
        raise ValidationError("a group needs at least one element")
    check_guard("group order", len(elems), MAX_ORDER)
    index = {g: i for i, g in enumerate(elems)}
    if len(index) != len(elems):
        raise ValidationError("duplicate group element")
    if len(table) != len(elems) or any(len(row) != len(elems) for row in table):
        raise ValidationError("table must be |G| x |G|")
    try:
        tab = tuple(tuple(index[x] for x in row) for row in table)
    except KeyError as exc:
        raise ValidationError(f"table entry {exc.args[0]!r} is not an element") from None
    n = len(elems)
    for i, j, k in itertools.product(range(n), repeat=3):
        if tab[tab[i][j]][k] != tab[i][tab[j][k]]:
            raise ValidationError(
                f"not associative: ({elems[i]}{elems[j]}){elems[k]} != {elems[i]}({elems[j]}{elems[k]})"
            )
    units = [e for e in range(n) if all(tab[e][g] == g == tab[g][e] for g in range(n))]
    if not units:
        raise ValidationError("table has no identity element")
    e = units[0]
    inverse = []
    for g in range(n):
        inv = [h for h in range(n) if tab[g][h] == e == tab[h][g]]
        if not inv:
            raise ValidationError(f"element {elems[g]!r} has no inverse")
        inverse.append(inv[0])
    return FiniteGroup(elems, tab, e, tuple(inverse))


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order ``n`` on ``e, a, a2, ..., a{n-1}``."""
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    check_guard("group order", n, MAX_ORDER)
    names = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    names = names[:n]
    table = [[names[(i + j) % n] for j in range(n)] for i in range(n)]
    return make_group(names, table)


def klein_four() -> FiniteGroup:
    names = ["e", "a", "b", "c"]
    table = [[names[i ^ j] for j in range(4)] for i in range(4)]
    return make_group(names, table)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``n <= 4`` letters, elements named in cycle notation."""
    if n < 1:
        raise ValidationError("symmetric group degree must be >= 1")
    if n > 4:
        raise ValidationError("symmetric group degree is limited to 4")
    perms = list(itertools.permutations(range(n)))
    names = [_cycle_name(p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    # (gh)(x) = g(h(x))
    table = [
        [names[pos[tuple(g[h[x]] for x in range(n))]] for h in perms] for g in perms
    ]
    return make_group(names, table)
