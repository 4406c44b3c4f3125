"""The base map f, the set-valued bonding map F, and property checkers.

The base map is exactly evaluable because membership of a rational point
in the gap-attached Cantor set is exactly decidable.  Two modes exist:

* ``zero`` -- f identically 0 (default for inverse-limit work);
* ``tent`` -- on each maximal gap (a, b) of {0} + C0 + {1}, the tent
  with apex at the midpoint and height min((b-a)/4, 1/32).  Heights
  vanish with gap length, which gives continuity on C0, keeps every
  value below 1/8 = min C0, and keeps f(t) < t on (0, 1].

F(t) is {f(t)} off C0 and [0, sup of the membership indices] on C0; the
sup is reported as a certified bracket over the family's dyadic grid.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cantor import (
    CantorFamily,
    DEFAULT_MAX_STAGE,
    GapAttachedCantor,
)
from .exact import UNIT, ClosedInterval, IntervalSet, ONE, ZERO

MAX_TENT_HEIGHT = Fraction(1, 32)
MIN_C0 = Fraction(1, 8)

MODES = ("zero", "tent")


@dataclass(frozen=True)
class BaseMap:
    """Continuous single-valued base map; vanishes on {0} plus the big set."""

    mode: str
    c0: GapAttachedCantor

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


def eval_f(base: BaseMap, t: Fraction) -> Fraction:
    """Exact value of the base map at a rational point of [0, 1]."""
    if t < 0 or t > 1:
        raise ValueError("point outside [0, 1]")
    if base.mode == "zero":
        return ZERO
    if base.c0.membership(t).is_in:
        return ZERO
    a, b = base.c0.gap_of(t)
    height = min((b - a) / 4, MAX_TENT_HEIGHT)
    mid = (a + b) / 2
    half = (b - a) / 2
    return height * (1 - abs(t - mid) / half)


@dataclass(frozen=True)
class FBracket:
    """Certified bracket for one evaluation of the set-valued map.

    When ``point_value`` is set, F(t) is exactly that singleton.
    Otherwise [0, lower_max] is certified inside F(t) and F(t) is
    certified inside [0, upper_max].
    """

    lower_max: Fraction
    upper_max: Fraction
    point_value: Optional[Fraction] = None

    @property
    def is_singleton(self) -> bool:
        return self.point_value is not None


class SetValuedMap:
    """The bonding map: base map plus a dyadic family of nested sets."""

    def __init__(self, base: BaseMap, family: CantorFamily):
        if base.c0 is not family.c0:
            raise ValueError("base map and family must share the big set")
        self.base = base
        self.family = family
        self._cover_cache: dict[tuple[int, int], "GraphCover"] = {}

    @property
    def mode(self) -> str:
        return self.base.mode

    def positive_grid(self, level: int) -> list[Fraction]:
        if level > self.family.level:
            raise ValueError("requested level exceeds the family level")
        denom = 2 ** level
        return [Fraction(k, denom) for k in range(1, denom + 1)]

    def graph_cover(self, stage: int, level: int) -> "GraphCover":
        key = (stage, level)
        cover = self._cover_cache.get(key)
        if cover is None:
            cover = _build_graph_cover(self, stage, level)
            self._cover_cache[key] = cover
        return cover


def make_map(mode: str, family: CantorFamily) -> SetValuedMap:
    return SetValuedMap(BaseMap(mode, family.c0), family)


def eval_F(m: SetValuedMap, t: Fraction, level: Optional[int] = None,
           max_stage: int = DEFAULT_MAX_STAGE) -> FBracket:
    """Certified bracket for F(t) over the level's dyadic grid."""
    if level is None:
        level = m.family.level
    c0m = m.family.c0.membership(t)
    if c0m.is_out:
        v = eval_f(m.base, t)
        return FBracket(v, v, v)
    lower = ZERO
    upper = ONE
    for r in m.positive_grid(level):
        mem = m.family.member(r).membership(t, max_stage)
        if mem.is_in:
            lower = r
        elif mem.is_out:
            upper = r
            break
    return FBracket(lower, upper)


# ---------------------------------------------------------------------------
# outer cover of the graph


@dataclass
class GraphCover:
    """Finite outer box cover of the graph of F with exact corners."""

    boxes: list[tuple[ClosedInterval, ClosedInterval]]
    stage: int
    level: int

    def contains_point(self, t: Fraction, y: Fraction) -> bool:
        return any(xb.contains(t) and yb.contains(y) for xb, yb in self.boxes)

    def area(self) -> Fraction:
        return sum((xb.width * yb.width for xb, yb in self.boxes), ZERO)

    def column_footprint(self, min_height: Fraction) -> IntervalSet:
        """x-set over which the cover reaches at least min_height."""
        return IntervalSet(xb for xb, yb in self.boxes if yb.hi >= min_height)

    def csv_rows(self) -> list[str]:
        rows = ["x_lo,x_hi,y_lo,y_hi"]
        for xb, yb in self.boxes:
            rows.append(f"{xb.lo},{xb.hi},{yb.lo},{yb.hi}")
        return rows


def _tent_hull_max(base: BaseMap, seg: ClosedInterval) -> Fraction:
    """Exact max of the tent map over a segment disjoint from the big set."""
    mid_t = (seg.lo + seg.hi) / 2
    a, b = base.c0.gap_of(mid_t)
    apex = (a + b) / 2
    if seg.lo <= apex <= seg.hi:
        return min((b - a) / 4, MAX_TENT_HEIGHT)
    return max(eval_f(base, seg.lo), eval_f(base, seg.hi))


def _build_graph_cover(m: SetValuedMap, stage: int, level: int) -> GraphCover:
    cov = m.family.c0.stage(stage)
    grid = m.positive_grid(level)
    f_bound = ZERO if m.mode == "zero" else MAX_TENT_HEIGHT
    boxes: list[tuple[ClosedInterval, ClosedInterval]] = []
    for comp in cov:
        ub = ONE
        for r in grid:
            if m.family.member(r).stage(stage).intersect_interval(comp).is_empty:
                ub = r
                break
        boxes.append((comp, ClosedInterval(ZERO, max(ub, f_bound))))
    for gap in cov.complement_in(UNIT):
        if m.mode == "zero":
            ymax = ZERO
        else:
            ymax = _tent_hull_max(m.base, gap)
        boxes.append((gap, ClosedInterval(ZERO, ymax)))
    boxes.sort(key=lambda pair: (pair[0].lo, pair[0].hi))
    return GraphCover(boxes, stage, level)


def graph_cover(m: SetValuedMap, stage: int, level: int) -> GraphCover:
    return m.graph_cover(stage, level)


# ---------------------------------------------------------------------------
# checkers


def _limit_in_all_covers(m: SetValuedMap, t, y, stage, level) -> Optional[int]:
    """First stage whose cover misses (t, y), or None if all contain it."""
    for d in range(stage + 1):
        if not m.graph_cover(d, level).contains_point(t, y):
            return d
    return None


def check_usc(m: SetValuedMap, samples: int, stage: int,
              level: Optional[int] = None, seed: int = 0) -> dict:
    """Convergent test sequences whose limits must stay in every cover."""
    if level is None:
        level = m.family.level
    rng = random.Random(seed)
    c1 = m.family.c1
    eps = c1.endpoints(64)
    results = []
    failures = []
    for i in range(samples):
        kind = i % 3
        if kind == 0:
            # limit point on the smallest set with top value 1, approached
            # through deeper stage endpoints carrying value 1 themselves
            t = eps[rng.randrange(len(eps))].point
            terms = []
            for d in range(2, 6):
                comp = c1.stage(d).component_containing(t)
                other = comp.lo if comp.hi == t else comp.hi
                terms.append((other, ONE))
            limit = (t, ONE)
        elif kind == 1:
            # sequence along the single-valued graph inside a gap
            gaps = m.family.c0.stage(3).complement_in(UNIT).components
            gap = gaps[rng.randrange(len(gaps))]
            target = (gap.lo + gap.hi) / 2
            terms = []
            for k in range(1, 5):
                tk = target + gap.width / (8 * k)
                terms.append((tk, eval_f(m.base, tk)))
            limit = (target, eval_f(m.base, target))
        else:
            terms = [(ZERO, ZERO)] * 4
            limit = (ZERO, ZERO)
        bad_stage = _limit_in_all_covers(m, limit[0], limit[1], stage, level)
        record = {
            "kind": ("top", "graph", "fixed")[kind],
            "limit": [str(limit[0]), str(limit[1])],
            "terms": [[str(a), str(b)] for a, b in terms],
            "ok": bad_stage is None,
        }
        if bad_stage is not None:
            record["escaped_at_stage"] = bad_stage
            failures.append(record)
        results.append(record)
    return {"sequences": len(results), "failures": failures,
            "ok": not failures, "stage": stage, "level": level}


def check_weak_continuity(m: SetValuedMap, points: list[Fraction], stage: int,
                          tolerance: Fraction = Fraction(1, 64),
                          level: Optional[int] = None) -> dict:
    """Two-sided witness search at certified points of the smallest set.

    For each point t and each grid index s, exhibits t' distinct from t
    inside the smallest set (hence inside every C_s) within tolerance.
    """
    if level is None:
        level = m.family.level
    c1 = m.family.c1
    witnesses = []
    failures = []
    for t in points:
        if not c1.membership(t).is_in:
            failures.append({"point": str(t), "reason": "not a certified member"})
            continue
        found = None
        for d in range(stage + 1):
            comp = c1.stage(d).component_containing(t)
            if comp is None:
                break
            other = comp.lo if comp.hi == t else (comp.hi if comp.lo == t else None)
            if other is None:
                # interior of the bracket: take the nearer component end
                other = comp.lo if (t - comp.lo) <= (comp.hi - t) else comp.hi
            if other != t and abs(other - t) < tolerance:
                found = (other, d)
                break
        if found is None:
            failures.append({"point": str(t), "reason": "witness search exhausted"})
            continue
        other, d = found
        entry = {"point": str(t), "witness": str(other),
                 "distance": str(abs(other - t)), "stage": d}
        for s in m.positive_grid(level):
            entry.setdefault("indices", []).append(str(s))
            if not m.family.member(s).membership(other).is_in:
                failures.append({"point": str(t), "index": str(s),
                                 "reason": "witness lost certification"})
        witnesses.append(entry)
    return {"witnesses": witnesses, "failures": failures, "ok": not failures}


def check_ivp_consistency(m: SetValuedMap, grid: int,
                          level: Optional[int] = None,
                          max_stage: int = DEFAULT_MAX_STAGE,
                          seed: int = 0) -> dict:
    """Image-shape checks plus direct intermediate-value spot checks.

    Every evaluated image is a closed interval anchored at 0 or a
    singleton, and together with passing usc/weak-continuity suites the
    intermediate value property follows; spot checks additionally
    exhibit explicit witnesses between sampled argument pairs.
    """
    if level is None:
        level = m.family.level
    rng = random.Random(seed)
    shape_failures = []
    for k in range(grid + 1):
        t = Fraction(k, grid)
        fb = eval_F(m, t, level, max_stage)
        if fb.is_singleton:
            continue
        if not (ZERO <= fb.lower_max <= fb.upper_max <= ONE):
            shape_failures.append({"point": str(t)})
    c1_eps = [e.point for e in m.family.c1.endpoints(64)]
    spots = []
    spot_failures = []
    for _ in range(8):
        x1 = c1_eps[rng.randrange(len(c1_eps))]
        x2 = Fraction(1, 2) if x1 != Fraction(1, 2) else Fraction(17, 32)
        lo, hi = min(x1, x2), max(x1, x2)
        y = Fraction(rng.randrange(1, 16), 16)
        witness = next((p for p in c1_eps if lo < p < hi), None)
        record = {"x1": str(x1), "x2": str(x2), "y": str(y)}
        if witness is not None:
            fb = eval_F(m, witness, level, max_stage)
            record["witness"] = str(witness)
            record["certified"] = bool(fb.lower_max >= y)
            if not record["certified"]:
                spot_failures.append(record)
        else:
            record["witness"] = None
            spot_failures.append(record)
        spots.append(record)
    return {"shape_failures": shape_failures, "spots": spots,
            "spot_failures": spot_failures,
            "ok": not shape_failures and not spot_failures}


def _wide_gaps(c0: GapAttachedCantor, min_width: Fraction, stage: int):
    """True maximal gaps of {0}+C0+{1} of width >= min_width, via covers."""
    gaps = []
    for seg in c0.stage(stage).complement_in(UNIT):
        a, b = c0.gap_of((seg.lo + seg.hi) / 2)
        if (b - a) >= min_width and (a, b) not in gaps:
            gaps.append((a, b))
    return sorted(set(gaps))


def check_light(m: SetValuedMap, y_grid: int, stage: int,
                level: Optional[int] = None) -> dict:
    """Point-preimage interior check, split by mode.

    Zero mode is reported not light with an explicit gap witness for the
    value 0.  Tent mode bounds every positive grid value's preimage by a
    thin stage cover plus finitely many exact tent-leg points.
    """
    if level is None:
        level = m.family.level
    c0 = m.family.c0
    if m.mode == "zero":
        a, b = c0.gap_of(Fraction(1, 2))
        return {"light": False, "mode": "zero",
                "witness_value": "0",
                "witness_interval": [str(a), str(b)],
                "ok": True}
    grid = m.positive_grid(level)
    rows = []
    for k in range(1, y_grid + 1):
        y = Fraction(k, y_grid)
        below = [r for r in grid if r < y]
        r = max(below) if below else ZERO
        cover = m.family.member(r).stage(stage)
        tent_points = []
        for a, b in _wide_gaps(c0, 4 * y, stage):
            h = min((b - a) / 4, MAX_TENT_HEIGHT)
            if h < y:
                continue
            mid = (a + b) / 2
            half = (b - a) / 2
            off = half * (1 - y / h)
            tent_points.extend([mid - off, mid + off])
        rows.append({"y": str(y), "cover_index": str(r),
                     "cover_measure": str(cover.measure()),
                     "tent_point_count": len(tent_points)})
    zero_row = {"y": "0", "cover_measure": str(c0.stage(stage).measure()),
                "structure": "{0,1} plus the big set: nowhere dense"}
    return {"light": True, "mode": "tent", "rows": rows,
            "value_zero": zero_row, "ok": True}


def check_not_almost_nonfissile(m: SetValuedMap, stage: int = 6,
                                level: Optional[int] = None) -> dict:
    """Open subset of the graph containing no nonfissile point."""
    if level is None:
        level = m.family.level
    quarter = Fraction(1, 4)
    comp = m.family.c0.stage(stage).component_containing(quarter)
    y_range = (Fraction(1, 2), ONE)
    samples = [e.point for e in m.family.c1.endpoints(32) if comp.contains(e.point)]
    fissile_failures = []
    for t in samples:
        fb = eval_F(m, t, level)
        if fb.is_singleton or fb.lower_max <= ZERO:
            fissile_failures.append(str(t))
    half = Fraction(1, 2)
    half_fb = eval_F(m, half, level)
    return {
        "box": {"x": [str(comp.lo), str(comp.hi)],
                "y": [str(y_range[0]), str(y_range[1])]},
        "sampled_points": len(samples),
        "fissile_failures": fissile_failures,
        "nonfissile_example": {"point": "1/2",
                               "singleton": half_fb.is_singleton,
                               "value": str(half_fb.point_value)
                               if half_fb.is_singleton else None},
        "ok": not fissile_failures and len(samples) > 0,
    }


def check_empty_interior(m: SetValuedMap, stages: list[int],
                         level: Optional[int] = None, grid_n: int = 8) -> dict:
    """Exact cover areas per stage plus escape of every sampled open box."""
    if level is None:
        level = m.family.level
    if list(stages) != sorted(stages):
        raise ValueError("stages must be increasing")
    per_stage = []
    areas = []
    for d in stages:
        cover = m.graph_cover(d, level)
        total = cover.area()
        c1_area = m.family.c1.stage(d).measure()
        areas.append(total)
        per_stage.append({"stage": d, "total_area": str(total),
                          "c1_portion_area": str(c1_area),
                          "footprint": str(m.family.c0.stage(d).measure())})
    decreasing = all(a > b for a, b in zip(areas, areas[1:]))
    escapes = []
    all_escape = True
    for i in range(grid_n):
        for j in range(grid_n):
            xb = ClosedInterval(Fraction(i, grid_n), Fraction(i + 1, grid_n))
            y_hi = Fraction(j + 1, grid_n)
            first_escape = None
            for d in stages:
                cover = m.graph_cover(d, level)
                tall = cover.column_footprint(y_hi)
                if not IntervalSet([xb]).issubset(tall):
                    first_escape = d
                    break
            if first_escape is None:
                all_escape = False
            escapes.append({"box": [str(xb.lo), str(xb.hi), str(Fraction(j, grid_n)),
                                    str(y_hi)],
                            "escape_stage": first_escape})
    return {"per_stage": per_stage, "strictly_decreasing": decreasing,
            "boxes": escapes, "all_boxes_escape": all_escape,
            "ok": decreasing and all_escape}
