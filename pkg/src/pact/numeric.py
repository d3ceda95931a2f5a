"""Sampled checks of two infinite examples.

* ``Z`` acting partially on ``Y = (0, inf)`` by translation, with
  ``Y_n = (max(0, n), inf)`` and ``theta_n(y) = n + y`` on ``Y_{-n}``.
* ``GL(2, R)`` acting partially on ``R`` by Moebius transformations,
  defined where ``cx + d != 0``.

Identities that hold exactly in the reals are checked in exact rational
arithmetic on the sampled floats; the rest use the tolerances below.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ValidationError

AFFINE_TOL = 1e-9
MOBIUS_REL_TOL = 1e-6
MOBIUS_ABS_FLOOR = 1e-12
SINGULAR = 1e-12


@dataclass
class Law:
    """Tally for one sampled law."""

    law: str
    checked: int = 0
    violations: int = 0
    skipped: int = 0
    worst_error: float = 0.0
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, ok: bool, error: float = 0.0, witness: Any = None) -> None:
        self.checked += 1
        if error > self.worst_error:
            self.worst_error = error
            if ok and self.violations == 0:
                self.witness = witness
        if not ok:
            if self.violations == 0:
                self.witness = witness
            self.violations += 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "law": self.law,
            "checked": self.checked,
            "passed": self.passed,
            "violations": self.violations,
            "skipped": self.skipped,
            "worst_error": self.worst_error,
            "witness": self.witness,
        }


@dataclass
class NumericReport:
    title: str
    seed: int
    laws: dict[str, Law] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)

    def law(self, name: str) -> Law:
        return self.laws.setdefault(name, Law(name))

    @property
    def passed(self) -> bool:
        return all(l.passed for l in self.laws.values())

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "seed": self.seed,
            "passed": self.passed,
            "laws": [l.to_dict() for l in self.laws.values()],
            "counts": dict(self.counts),
        }

    def render(self, witness: bool = True) -> str:
        lines = [f"{self.title} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'}"]
        for l in self.laws.values():
            status = "pass" if l.passed else "fail"
            extra = f", {l.skipped} undefined" if l.skipped else ""
            lines.append(
                f"  [{status:>4}] {l.law}: {l.checked} checked, {l.violations} violations"
                f"{extra}, worst error {l.worst_error:.3g}"
            )
            if witness and l.witness is not None and not l.passed:
                lines.append(f"         witness: {l.witness}")
        lines.extend(f"  {k}: {v}" for k, v in self.counts.items())
        return "\n".join(lines)


# -- translation on the open ray ---------------------------------------------


def ray_domain(n: int, y: float) -> bool:
    """``y in Y_n``."""
    return y > max(0, n)


def ray_apply(n: int, y: float) -> float | None:
    """``theta_n(y)``, or ``None`` outside ``Y_{-n}``."""
    return n + y if ray_domain(-n, y) else None


def ray_related(n: int, y: float, m: int, z: float, tol: float = AFFINE_TOL) -> bool:
    """``(n,y) R (m,z)``: ``y in Y_{m-n}`` and ``m + z = n + y``."""
    return ray_domain(m - n, y) and abs((m + z) - (n + y)) <= tol


def ray_phi(n: int, y: float) -> float:
    return n + y


def _open_uniform(rng: random.Random, lo: float, hi: float) -> float:
    while True:
        v = rng.uniform(lo, hi)
        if lo < v < hi:
            return v


def ray_phi_check(samples: int, seed: int = 0) -> NumericReport:
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = random.Random(seed)
    report = NumericReport("Z on (0,inf): Phi(n,y) = n + y", seed)
    bicond = report.law("Phi(n,y) = Phi(m,z) <=> (n,y) R (m,z)")
    report.counts["related pairs"] = 0
    pa1 = report.law("PA1: theta_-n(theta_n(y)) = y")
    pa2 = report.law("PA2: theta_n o theta_m <= theta_(n+m)")
    pa3 = report.law("PA3: theta_0 = id")
    gmap = report.law("Phi(k+n,y) = k + Phi(n,y) (exact)")
    for _ in range(samples):
        n, m, k = (rng.randint(-20, 20) for _ in range(3))
        y = _open_uniform(rng, 0.0, 50.0)
        z = _open_uniform(rng, 0.0, 50.0)
        if rng.random() < 0.5:
            cand = n + y - m
            if 0.0 < cand < 50.0:
                z = cand
        phi_eq = abs(ray_phi(n, y) - ray_phi(m, z)) <= AFFINE_TOL
        rel = ray_related(n, y, m, z)
        wit = {"n": n, "y": y, "m": m, "z": z}
        bicond.record(phi_eq == rel, 0.0, wit)
        report.counts["related pairs"] += rel

        t = ray_apply(n, y)
        if t is None:
            pa1.skipped += 1
        else:
            back = ray_apply(-n, t)
            err = math.inf if back is None else abs(back - y)
            pa1.record(err <= AFFINE_TOL, err, {"n": n, "y": y})
        inner = ray_apply(m, y)
        outer = None if inner is None else ray_apply(n, inner)
        if outer is None:
            pa2.skipped += 1
        else:
            whole = ray_apply(n + m, y)
            err = math.inf if whole is None else abs(whole - outer)
            pa2.record(err <= AFFINE_TOL, err, {"n": n, "m": m, "y": y})
        pa3.record(ray_apply(0, y) == y, 0.0, {"y": y})
        fy = Fraction(y)
        gmap.record((k + n) + fy == k + (n + fy), 0.0, {"k": k, "n": n, "y": y})
    return report


def funcspace_witness(F) -> tuple[int, tuple[Fraction, ...]]:
    """``(n, f)`` with ``f > 0`` and ``f + n = F``: ``n = floor(min F) - 1``, ``f = F - n``."""
    values = tuple(Fraction(v) for v in F)
    if not values:
        raise ValidationError("F must have at least one value")
    n = math.floor(min(values)) - 1
    return n, tuple(v - n for v in values)


def funcspace_related(n: int, f, m: int, g, tol: float = AFFINE_TOL) -> bool:
    """``(n,f) R (m,g)`` for the induced action: ``f in C(X,Y)_{m-n}`` and ``theta_{n-m} o f = g``."""
    if not all(ray_domain(m - n, v) for v in f):
        return False
    return all(abs(ray_apply(n - m, u) - v) <= tol for u, v in zip(f, g))


def ray_funcspace_check(grid_size: int, samples: int, seed: int = 0) -> NumericReport:
    if grid_size < 1:
        raise ValidationError("grid_size must be at least 1")
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = random.Random(seed)
    report = NumericReport(f"Z on C(X,(0,inf)), |X| = {grid_size}: phi(n,f) = f + n", seed)
    surj = report.law("phi(n, F - n) = F with F - n > 0 (exact)")
    sep = report.law("phi(n,f) = phi(m,g) <=> (n,f) R (m,g)")
    for _ in range(samples):
        F = [rng.uniform(-20.0, 20.0) for _ in range(grid_size)]
        n, f = funcspace_witness(F)
        ok = all(v > 0 for v in f) and all(v + n == Fraction(w) for v, w in zip(f, F))
        surj.record(ok, 0.0, {"F": F, "n": n})

        n1, m1 = rng.randint(-20, 20), rng.randint(-20, 20)
        f1 = [_open_uniform(rng, 0.0, 50.0) for _ in range(grid_size)]
        g1 = [_open_uniform(rng, 0.0, 50.0) for _ in range(grid_size)]
        if rng.random() < 0.5:
            cand = [v + n1 - m1 for v in f1]
            if all(0.0 < v < 50.0 for v in cand):
                g1 = cand
        phi_eq = all(abs((u + n1) - (v + m1)) <= AFFINE_TOL for u, v in zip(f1, g1))
        rel = funcspace_related(n1, f1, m1, g1)
        sep.record(phi_eq == rel, 0.0, {"n": n1, "f": f1, "m": m1, "g": g1})
        report.counts["related pairs"] = report.counts.get("related pairs", 0) + rel
    return report


# -- Moebius transformations ---------------------------------------------------


@dataclass(frozen=True)
class MoebiusElement:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if abs(self.det) <= SINGULAR:
            raise ValidationError(f"degenerate matrix {self.entries}")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        a, b, c, d = self.entries
        p, q, r, s = other.entries
        return MoebiusElement(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def inverse(self) -> "MoebiusElement":
        k = self.det
        return MoebiusElement(self.d / k, -self.b / k, -self.c / k, self.a / k)


IDENTITY = MoebiusElement(1.0, 0.0, 0.0, 1.0)


def mobius_apply(g: MoebiusElement, x: float) -> float | None:
    den = g.c * x + g.d
    if abs(den) <= SINGULAR:
        return None
    return (g.a * x + g.b) / den


def _close(u: float, v: float) -> tuple[bool, float]:
    err = abs(u - v) / max(abs(u), abs(v), 1.0)
    return math.isclose(u, v, rel_tol=MOBIUS_REL_TOL, abs_tol=MOBIUS_ABS_FLOOR), err


def random_moebius(rng: random.Random, min_det: float = 0.1) -> MoebiusElement:
    while True:
        a, b, c, d = (rng.uniform(-5.0, 5.0) for _ in range(4))
        if abs(a * d - b * c) > min_det:
            return MoebiusElement(a, b, c, d)


def mobius_axiom_check(samples: int, seed: int = 0) -> NumericReport:
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = random.Random(seed)
    report = NumericReport("GL(2,R) on R by Moebius transformations", seed)
    pa1 = report.law("PA1: g^-1.(g.x) = x")
    pa2 = report.law("PA2: g.(h.x) = (gh).x")
    pa3 = report.law("PA3: I.x = x (exact)")
    for _ in range(samples):
        g, h = random_moebius(rng), random_moebius(rng)
        x = rng.uniform(-10.0, 10.0)
        gx = mobius_apply(g, x)
        if gx is None:
            pa1.skipped += 1
        else:
            back = mobius_apply(g.inverse(), gx)
            wit = {"g": g.entries, "x": x, "g.x": gx, "back": back}
            if back is None:
                pa1.record(False, math.inf, wit)
            else:
                ok, err = _close(back, x)
                pa1.record(ok, err, wit)
        hx = mobius_apply(h, x)
        ghx = None if hx is None else mobius_apply(g, hx)
        if ghx is None:
            pa2.skipped += 1
        else:
            direct = mobius_apply(g @ h, x)
            wit = {"g": g.entries, "h": h.entries, "x": x, "g.(h.x)": ghx, "(gh).x": direct}
            if direct is None:
                pa2.record(False, math.inf, wit)
            else:
                ok, err = _close(ghx, direct)
                pa2.record(ok, err, wit)
        pa3.record(mobius_apply(IDENTITY, x) == x, 0.0, {"x": x})
    return report
