"""JSON literals for spaces, groups and actions.

Space::

    {"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]}
    {"points": ["0", "1"], "generators": [["1"]]}

Group::

    {"elements": ["e", "a"], "table": [["e", "a"], ["a", "e"]]}
    {"cyclic": 3}   {"symmetric": 3}   {"klein": true}   {"trivial": true}

Action (``theta(e)`` may be omitted)::

    {"group": ..., "space": ..., "theta": {"a": {"dom": ["0"], "map": {"0": "0"}}}}

An instance file is an action literal with an optional ``"aux"`` object:
``{"x": space}`` for function spaces, ``{"factors": [space, ...], "slot": i,
"basepoints": [...]}`` for products.  Dumps are canonical: re-parsing a dump
and dumping again gives the same string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .gamma import PartialAction, PartialHomeo, identity, make_action
from .groups import FiniteGroup, cyclic, klein_four, make_group, symmetric, trivial_group
from .topology import FiniteSpace, make_space, space_from_opens


class ParseError(ValidationError):
    """Malformed or invalid input, anchored at a file and JSON location."""


def _at(where: str, exc: Exception) -> ParseError:
    return ParseError(f"{where}: {exc}")


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise ParseError(f"{where}: {msg}")


def _only(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ParseError(f"{where}: unknown key {unknown[0]!r}")


def _strings(value: Any, where: str) -> list[str]:
    _expect(isinstance(value, list), where, "expected a list of strings")
    for k, v in enumerate(value):
        _expect(isinstance(v, str), f"{where}[{k}]", f"expected a string, got {v!r}")
    return list(value)


# -- spaces --------------------------------------------------------------------


def space_from_json(obj: Any, where: str = "$") -> FiniteSpace:
    _expect(isinstance(obj, dict), where, "space literal must be an object")
    _only(obj, {"points", "opens", "generators"}, where)
    _expect("points" in obj, where, "space literal needs 'points'")
    points = _strings(obj["points"], f"{where}.points")
    has_opens, has_gens = "opens" in obj, "generators" in obj
    _expect(has_opens != has_gens, where, "give exactly one of 'opens' or 'generators'")
    key = "opens" if has_opens else "generators"
    _expect(isinstance(obj[key], list), f"{where}.{key}", "expected a list of point lists")
    sets = [_strings(s, f"{where}.{key}[{k}]") for k, s in enumerate(obj[key])]
    try:
        if has_opens:
            return space_from_opens(points, sets)
        return make_space(points, sets)
    except ValidationError as exc:
        raise _at(where, exc) from None


def space_to_json(s: FiniteSpace) -> dict[str, Any]:
    return {"points": list(s.points), "opens": s.canonical_opens()}


# -- groups --------------------------------------------------------------------

_NAMED = {"cyclic": cyclic, "symmetric": symmetric}


def group_from_json(obj: Any, where: str = "$") -> FiniteGroup:
    _expect(isinstance(obj, dict), where, "group literal must be an object")
    try:
        for name, ctor in _NAMED.items():
            if name in obj:
                _expect(len(obj) == 1, where, f"'{name}' takes no other keys")
                n = obj[name]
                _expect(isinstance(n, int) and not isinstance(n, bool), f"{where}.{name}", "expected an integer")
                return ctor(n)
        if "klein" in obj:
            _expect(obj == {"klein": True}, where, "use {\"klein\": true}")
            return klein_four()
        if "trivial" in obj:
            _expect(obj == {"trivial": True}, where, "use {\"trivial\": true}")
            return trivial_group()
        _only(obj, {"elements", "table"}, where)
        _expect("elements" in obj and "table" in obj, where, "group literal needs 'elements' and 'table'")
        elements = _strings(obj["elements"], f"{where}.elements")
        _expect(isinstance(obj["table"], list), f"{where}.table", "expected a list of rows")
        table = [_strings(r, f"{where}.table[{k}]") for k, r in enumerate(obj["table"])]
        return make_group(elements, table)
    except ParseError:
        raise
    except ValidationError as exc:
        raise _at(where, exc) from None


def group_to_json(g: FiniteGroup) -> dict[str, Any]:
    return {"elements": list(g.elements), "table": [list(r) for r in g.table_labels()]}


# -- actions -------------------------------------------------------------------


def action_from_json(obj: Any, where: str = "$", validate: bool = True) -> PartialAction:
    """Parse an action literal.

    With ``validate=False`` each ``theta(g)`` must still be a partial
    homeomorphism, but the action laws are left for :func:`check_premorphism`
    to report on.
    """
    _expect(isinstance(obj, dict), where, "action literal must be an object")
    for key in ("group", "space", "theta"):
        _expect(key in obj, where, f"action literal needs '{key}'")
    group = group_from_json(obj["group"], f"{where}.group")
    space = space_from_json(obj["space"], f"{where}.space")
    raw = obj["theta"]
    _expect(isinstance(raw, dict), f"{where}.theta", "expected an object keyed by group element")
    theta: dict[str, dict[str, str]] = {}
    for g, entry in raw.items():
        here = f"{where}.theta.{g}"
        _expect(isinstance(entry, dict), here, "expected {\"dom\": [...], \"map\": {...}}")
        _only(entry, {"dom", "map"}, here)
        _expect("map" in entry and isinstance(entry["map"], dict), here, "needs a 'map' object")
        mapping = entry["map"]
        for x, y in mapping.items():
            _expect(isinstance(y, str), f"{here}.map.{x}", "expected a point name")
        if "dom" in entry:
            dom = _strings(entry["dom"], f"{here}.dom")
            _expect(
                sorted(dom) == sorted(mapping),
                f"{here}.dom",
                f"dom {sorted(dom)} differs from the keys of map {sorted(mapping)}",
            )
        theta[g] = dict(mapping)
    try:
        if validate:
            return make_action(group, space, theta)
        return _unchecked_action(group, space, theta)
    except ValidationError as exc:
        raise _at(f"{where}.theta", exc) from None


def _unchecked_action(group: FiniteGroup, space: FiniteSpace, theta: dict) -> PartialAction:
    unknown = sorted(set(theta) - set(group.elements))
    if unknown:
        raise ValidationError(f"theta names unknown group element {unknown[0]!r}")
    values = []
    for g in group.elements:
        if g not in theta:
            if g != group.identity:
                raise ValidationError(f"theta({g}) is missing")
            values.append(identity(space))
            continue
        try:
            values.append(PartialHomeo.from_mapping(space, theta[g]))
        except ValidationError as exc:
            raise ValidationError(f"theta({g}): {exc}") from None
    return PartialAction(group, space, tuple(values))


def action_to_json(a: PartialAction) -> dict[str, Any]:
    theta = {}
    for g, t in zip(a.group.elements, a.theta):
        theta[g] = {"dom": t.domain_labels(), "map": dict(sorted(t.as_dict().items()))}
    return {"group": group_to_json(a.group), "space": space_to_json(a.space), "theta": theta}


# -- instance files -------------------------------------------------------------


@dataclass(frozen=True)
class Aux:
    x: FiniteSpace | None = None
    factors: tuple[FiniteSpace, ...] = ()
    slot: int = 0
    basepoints: tuple[str, ...] = ()


def aux_from_json(obj: Any, where: str = "$.aux") -> Aux:
    _expect(isinstance(obj, dict), where, "aux must be an object")
    _only(obj, {"x", "factors", "slot", "basepoints"}, where)
    x = space_from_json(obj["x"], f"{where}.x") if "x" in obj else None
    raw = obj.get("factors", [])
    _expect(isinstance(raw, list), f"{where}.factors", "expected a list of spaces")
    factors = tuple(space_from_json(f, f"{where}.factors[{k}]") for k, f in enumerate(raw))
    slot = obj.get("slot", 0)
    _expect(isinstance(slot, int) and not isinstance(slot, bool), f"{where}.slot", "expected an integer")
    base = tuple(_strings(obj.get("basepoints", []), f"{where}.basepoints"))
    return Aux(x, factors, slot, base)


def aux_to_json(aux: Aux) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if aux.x is not None:
        out["x"] = space_to_json(aux.x)
    if aux.factors:
        out["factors"] = [space_to_json(f) for f in aux.factors]
        out["slot"] = aux.slot
        out["basepoints"] = list(aux.basepoints)
    return out


@dataclass(frozen=True)
class Instance:
    action: PartialAction
    aux: Aux = field(default_factory=Aux)

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def space(self) -> FiniteSpace:
        return self.action.space


def instance_from_json(obj: Any, where: str = "$", validate: bool = True) -> Instance:
    _expect(isinstance(obj, dict), where, "instance must be an object")
    _only(obj, {"group", "space", "theta", "aux"}, where)
    action = action_from_json({k: v for k, v in obj.items() if k != "aux"}, where, validate)
    aux = aux_from_json(obj["aux"], f"{where}.aux") if "aux" in obj else Aux()
    return Instance(action, aux)


def instance_to_json(inst: Instance) -> dict[str, Any]:
    out = action_to_json(inst.action)
    aux = aux_to_json(inst.aux)
    if aux:
        out["aux"] = aux
    return out


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{p}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def parse_instance(
    path: str | Path, validate: bool = True
) -> tuple[FiniteGroup, FiniteSpace, PartialAction, Aux]:
    try:
        inst = instance_from_json(load_json(path), validate=validate)
    except ParseError as exc:
        msg = str(exc)
        raise ParseError(msg if msg.startswith(str(path)) else f"{path}: {msg}") from None
    return inst.group, inst.space, inst.action, inst.aux


def parse_aux(path: str | Path) -> Aux:
    try:
        return aux_from_json(load_json(path), "$")
    except ParseError as exc:
        msg = str(exc)
        raise ParseError(msg if msg.startswith(str(path)) else f"{path}: {msg}") from None


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, no ASCII escaping."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
