"""Orbits and periodic cycles of the set-valued map, with exact certificates.

Every point of the smallest family set carries F = [0, 1], so any tuple
of distinct such points is a periodic cycle; iterates of the base map
collapse to 0 (zero mode) or decay dyadically below 1/32 (tent mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bonding import BaseMap, SetValuedMap, eval_F, eval_f
from .exact import ONE, ZERO


@dataclass(frozen=True)
class StepCertificate:
    """Evidence that ``successor`` belongs to F(``point``)."""

    point: Fraction
    successor: Fraction
    kind: str  # "singleton" | "lower-bracket"
    bound: Fraction


@dataclass(frozen=True)
class Cycle:
    """Periodic cycle: distinct points, each step exactly certified."""

    points: tuple[Fraction, ...]
    certificates: tuple[StepCertificate, ...]

    @property
    def period(self) -> int:
        return len(self.points)

    def least_rotation_period(self) -> int:
        """Smallest p dividing the length with points[i] == points[i+p]."""
        n = len(self.points)
        for p in range(1, n + 1):
            if n % p == 0 and all(self.points[i] == self.points[(i + p) % n]
                                  for i in range(n)):
                return p
        return n

    def to_json_obj(self) -> dict:
        return {
            "points": [str(p) for p in self.points],
            "period": self.period,
            "least_rotation_period": self.least_rotation_period(),
            "certificates": [
                {"point": str(c.point), "successor": str(c.successor),
                 "kind": c.kind, "bound": str(c.bound)}
                for c in self.certificates
            ],
        }


@dataclass(frozen=True)
class Orbit:
    """Finite forward orbit with per-step certificates."""

    points: tuple[Fraction, ...]
    selector: str
    certificates: tuple[StepCertificate, ...] = field(default_factory=tuple)


def _certify_step(m: SetValuedMap, x: Fraction, y: Fraction) -> StepCertificate:
    fb = eval_F(m, x)
    if fb.is_singleton:
        if fb.point_value != y:
            raise ValueError(
                f"step {x} -> {y} invalid: image is the singleton {{{fb.point_value}}}")
        return StepCertificate(x, y, "singleton", fb.point_value)
    if fb.lower_max >= y:
        return StepCertificate(x, y, "lower-bracket", fb.lower_max)
    raise ValueError(f"step {x} -> {y} not certified: lower bracket {fb.lower_max}")


def make_cycle(m: SetValuedMap, n: int) -> Cycle:
    """Period-n cycle from the first n discovered endpoints of the
    smallest set, sorted ascending."""
    if n < 1:
        raise ValueError("period must be >= 1")
    pts = sorted(e.point for e in m.family.c1.endpoints(n))
    certs = tuple(_certify_step(m, pts[i], pts[(i + 1) % n]) for i in range(n))
    return Cycle(tuple(pts), certs)


def iterate_f(base: BaseMap, t: Fraction, k: int) -> list[Fraction]:
    """Exact forward iterates f(t), f^2(t), ..., f^k(t)."""
    out = []
    x = t
    for _ in range(k):
        x = eval_f(base, x)
        out.append(x)
    return out


def verify_orbit(m: SetValuedMap, points: list[Fraction]) -> dict:
    """Per-step certification report for a candidate orbit."""
    steps = []
    failures = []
    for i in range(len(points) - 1):
        x, y = points[i], points[i + 1]
        fb = eval_F(m, x)
        if fb.is_singleton:
            ok = fb.point_value == y
            kind = "singleton"
            bound = fb.point_value
        else:
            ok = fb.lower_max >= y
            kind = "lower-bracket"
            bound = fb.lower_max
        entry = {"index": i, "from": str(x), "to": str(y),
                 "kind": kind, "bound": str(bound), "ok": ok}
        if not ok:
            entry["upper"] = str(fb.upper_max if not fb.is_singleton else bound)
            failures.append(entry)
        steps.append(entry)
    seen: dict[Fraction, int] = {}
    repeats = []
    for i, p in enumerate(points):
        if p in seen:
            repeats.append({"value": str(p), "first": seen[p], "again": i})
        else:
            seen[p] = i
    return {"steps": steps, "failures": failures, "ok": not failures,
            "repeated_values": repeats,
            "length": len(points)}


def verify_cycle(m: SetValuedMap, cyc: Cycle) -> dict:
    """verify_orbit on the cycle traversed once and closed up."""
    closed = list(cyc.points) + [cyc.points[0]]
    rep = verify_orbit(m, closed)
    rep["period"] = cyc.period
    rep["least_rotation_period"] = cyc.least_rotation_period()
    rep["distinct"] = len(set(cyc.points)) == cyc.period
    rep["ok"] = rep["ok"] and rep["distinct"]
    return rep
