"""Threads of the generalized inverse limit, arc chains, and box covers.

A thread is a finitely described point (x_0, x_1, ...) with
x_{i-1} in F(x_i) for every i: a short prefix of base-map iterates
followed by an eventually periodic tail inside the smallest family set,
where F = [0, 1] makes every step certificate exact.  The index where
the tail begins is the unique stage N with x_n in the big set exactly
for n >= N.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bonding import MAX_TENT_HEIGHT, MIN_C0, SetValuedMap, eval_F, eval_f
from .cantor import C1_BASE, GapAttachedCantor, MiddleThirds
from .dynamics import Cycle, iterate_f
from .errors import BoxCountError
from .exact import ClosedInterval, IntervalSet, ONE, UNIT, ZERO

DEFAULT_BOX_CEILING = 10 ** 6


@functools.lru_cache(maxsize=1)
def _canonical_c0() -> GapAttachedCantor:
    """The big set is fixed by construction, independent of any family."""
    return GapAttachedCantor(MiddleThirds(C1_BASE))


@dataclass(frozen=True)
class Thread:
    """Point of the inverse limit: iterate prefix plus periodic tail.

    ``coordinate(n)`` is prefix[n] for n < tail_start and cycles through
    ``tail_period`` afterwards.  The all-zero thread is the lone point
    with no tail in the big set and is marked ``is_zero``.
    """

    prefix: tuple[Fraction, ...]
    tail_period: tuple[Fraction, ...]
    is_zero: bool = False

    @property
    def tail_start(self) -> int:
        return len(self.prefix)

    def coordinate(self, n: int) -> Fraction:
        if self.is_zero:
            return ZERO
        if n < len(self.prefix):
            return self.prefix[n]
        return self.tail_period[(n - len(self.prefix)) % len(self.tail_period)]

    def coordinates(self, count: int) -> list[Fraction]:
        return [self.coordinate(n) for n in range(count)]

    def to_json_obj(self) -> dict:
        return {"prefix": [str(p) for p in self.prefix],
                "tailStart": self.tail_start,
                "tailPeriod": [str(p) for p in self.tail_period],
                "isZero": self.is_zero}

    @staticmethod
    def from_json_obj(obj: dict) -> "Thread":
        return Thread(tuple(Fraction(s) for s in obj.get("prefix", [])),
                      tuple(Fraction(s) for s in obj.get("tailPeriod", [])),
                      bool(obj.get("isZero", False)))


ZERO_THREAD = Thread(prefix=(), tail_period=(), is_zero=True)


def make_thread(m: SetValuedMap, pivot: Optional[Fraction], tail_cycle: Cycle,
                prefix_len: int) -> Thread:
    """Thread with the given tail cycle and an iterate prefix of the
    requested length ending at the pivot.

    With prefix_len 0 the pivot is ignored and the thread is the pure
    tail.  Otherwise the pivot must be outside the big set; earlier
    prefix coordinates are its exact base-map iterates.
    """
    if prefix_len < 0:
        raise ValueError("prefix length must be >= 0")
    c0 = m.family.c0
    for p in tail_cycle.points:
        if not m.family.c1.membership(p).is_in:
            raise ValueError(f"tail point {p} is not in the smallest set")
    if prefix_len == 0:
        return Thread((), tail_cycle.points)
    if pivot is None:
        raise ValueError("a pivot is required when the prefix is nonempty")
    if not (ZERO <= pivot <= ONE):
        raise ValueError("pivot outside [0, 1]")
    if c0.membership(pivot).is_in:
        raise ValueError(f"pivot {pivot} lies in the big set")
    fb = eval_F(m, tail_cycle.points[0])
    if fb.lower_max < pivot:
        raise ValueError(f"pivot {pivot} not certified in the image of the tail head")
    iters = iterate_f(m.base, pivot, prefix_len - 1)
    prefix = tuple(reversed(iters)) + (pivot,)
    return Thread(prefix, tail_cycle.points)


def verify_thread(m: SetValuedMap, th: Thread, depth: int = 12) -> dict:
    """Re-certify every represented consecutive pair of the thread."""
    if th.is_zero:
        return {"ok": True, "zero": True, "steps": []}
    steps = []
    failures = []
    for i in range(1, depth + 1):
        x_prev, x_i = th.coordinate(i - 1), th.coordinate(i)
        fb = eval_F(m, x_i)
        if fb.is_singleton:
            ok = fb.point_value == x_prev
            kind = "singleton"
        else:
            ok = fb.lower_max >= x_prev
            kind = "lower-bracket"
        steps.append({"i": i, "kind": kind, "ok": ok})
        if not ok:
            failures.append(steps[-1])
    return {"ok": not failures, "zero": False, "steps": steps,
            "failures": failures}


def tail_index(th: Thread) -> int:
    """The dichotomy index N: coordinates are in the big set iff n >= N."""
    if th.is_zero:
        raise ValueError("the all-zero thread has no tail in the big set")
    c0 = _canonical_c0()
    n = th.tail_start
    for i in range(n):
        if not c0.membership(th.coordinate(i)).is_out:
            raise ValueError(f"prefix coordinate {i} not outside the big set")
    for i in range(n, n + len(th.tail_period) + 1):
        if not c0.membership(th.coordinate(i)).is_in:
            raise ValueError(f"tail coordinate {i} not inside the big set")
    return n


def thread_pair_agreement(a: Thread, b: Thread, depth: int) -> dict:
    """Largest differing coordinate index below depth, with agreement beyond."""
    diffs = [n for n in range(depth) if a.coordinate(n) != b.coordinate(n)]
    last = diffs[-1] if diffs else -1
    agree_beyond = all(a.coordinate(n) == b.coordinate(n)
                       for n in range(last + 1, depth + 8))
    return {"last_differing_index": last, "agree_beyond": agree_beyond,
            "differing": diffs}


# ---------------------------------------------------------------------------
# arc systems


@dataclass(frozen=True)
class ArcSystem:
    """The arc chain through a nonzero thread.

    Arc n is the parametrized set
    {(f^n(t), ..., f(t), t, x_{n+1}, x_{n+2}, ...) : 0 <= t <= x_n};
    consecutive arcs meet exactly at the joints
    y^i = (0, ..., 0, x_i, x_{i+1}, ...).
    """

    m: SetValuedMap
    thread: Thread
    depth: int

    def __post_init__(self):
        if self.thread.is_zero:
            raise ValueError("arc chain requires a nonzero thread")
        if self.depth < tail_index(self.thread):
            raise ValueError("depth must reach the tail index")

    @property
    def tail_start(self) -> int:
        return tail_index(self.thread)

    def arc_range(self) -> range:
        return range(max(self.tail_start - 1, 0), self.depth + 1)

    def joint(self, i: int) -> Thread:
        """y^i: i zero coordinates, then the thread's coordinates from i."""
        shift = max(i - self.thread.tail_start, 0)
        period = self.thread.tail_period
        rotated = period[shift % len(period):] + period[:shift % len(period)]
        head = tuple(self.thread.coordinate(n)
                     for n in range(i, max(self.thread.tail_start, i)))
        return Thread((ZERO,) * i + head, rotated)

    def arc_point(self, n: int, t: Fraction, count: int) -> list[Fraction]:
        """First `count` coordinates of the arc-n point at parameter t."""
        x_n = self.thread.coordinate(n)
        if not (ZERO <= t <= x_n):
            raise ValueError(f"parameter {t} outside [0, {x_n}]")
        iters = iterate_f(self.m.base, t, n)  # f(t), ..., f^n(t)
        coords = []
        for k in range(count):
            if k < n:
                coords.append(iters[n - 1 - k])
            elif k == n:
                coords.append(t)
            else:
                coords.append(self.thread.coordinate(k))
        return coords


def make_arc_system(m: SetValuedMap, th: Thread, depth: int) -> ArcSystem:
    return ArcSystem(m, th, depth)


def arc_params(sys: ArcSystem, n: int) -> list[Fraction]:
    """Canonical exact parameter grid for arc n: endpoints, midpoint,
    and in tent mode the gap breakpoints below the parameter range."""
    x_n = sys.thread.coordinate(n)
    pts = {ZERO, x_n, x_n / 2}
    if sys.m.mode == "tent":
        pts.update(p for p in (Fraction(1, 16), Fraction(1, 8)) if p < x_n)
    return sorted(pts)


def arc_points(sys: ArcSystem, n: int, params: list[Fraction],
               coords: tuple[int, int]) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Exact planar projections (param, coord_i, coord_j) of arc n."""
    if n < sys.tail_start - 1:
        raise ValueError("arc index below the chain start")
    i, j = coords
    count = max(i, j) + 1
    out = []
    for t in params:
        c = sys.arc_point(n, t, count)
        out.append((t, c[i], c[j]))
    return out


def verify_arc_chain(sys: ArcSystem, M: int) -> dict:
    """Exact verification of the two arc-chain facts up to depth M.

    For each n: (i) arc n+1 coordinates at index n stay strictly below
    1/8 while x_n is at least 1/8, separating arc n+1 from all earlier
    arcs away from the joint; (ii) the unique arc-(n+1) point whose
    coordinate n+1 equals x_{n+1} is exactly the joint y^{n+1}, which is
    also the parameter-0 point of arc n.
    """
    if M < sys.tail_start:
        raise ValueError("depth must reach the tail index")
    th = sys.thread
    f_sup = ZERO if sys.m.mode == "zero" else MAX_TENT_HEIGHT
    checks = []
    failures = []
    span = M + len(th.tail_period) + 4
    for n in range(max(sys.tail_start - 1, 0), M):
        x_n = th.coordinate(n)
        x_n1 = th.coordinate(n + 1)
        # the separation fact needs x_n >= 1/8, which holds once the tail
        # has begun; at n = N-1 only the joint fact is claimed
        sep_ok = f_sup < MIN_C0 and (n < sys.tail_start or x_n >= MIN_C0)
        # the arc-(n+1) point at parameter x_{n+1}: its leading n+1
        # coordinates are iterates of a big-set point, hence all zero
        point = sys.arc_point(n + 1, x_n1, span)
        joint = sys.joint(n + 1).coordinates(span)
        joint_ok = point == joint
        base_ok = sys.arc_point(n, ZERO, span) == joint
        rec = {"n": n, "separation_ok": bool(sep_ok),
               "joint_exact": joint_ok, "joint_on_lower_arc": base_ok}
        checks.append(rec)
        if not (sep_ok and joint_ok and base_ok):
            failures.append(rec)
    # the thread itself sits on the first arc at parameter x_{N-1}
    anchor_ok = True
    if sys.tail_start >= 1:
        n0 = sys.tail_start - 1
        anchor_ok = (sys.arc_point(n0, th.coordinate(n0), span)
                     == th.coordinates(span))
    joint_decay = [{"i": i, "max_leading": str(max(
        [sys.joint(i).coordinate(k) for k in range(i)], default=ZERO))}
        for i in range(1, min(M, 6) + 1)]
    ok = not failures and anchor_ok
    return {"checks": checks, "failures": failures, "thread_on_first_arc": anchor_ok,
            "joint_leading_coordinates": joint_decay, "ok": ok}


# ---------------------------------------------------------------------------
# finite box covers of the inverse limit


@dataclass
class BoxCover:
    """Outer cover of truncated threads by boxes with exact corners."""

    dimension: int
    boxes: list[tuple[ClosedInterval, ...]]
    stage: int
    level: int

    def contains_tuple(self, xs: list[Fraction]) -> bool:
        if len(xs) != self.dimension:
            raise ValueError("tuple dimension mismatch")
        return any(all(b.contains(x) for b, x in zip(box, xs))
                   for box in self.boxes)

    def project(self, i: int) -> IntervalSet:
        return IntervalSet(box[i] for box in self.boxes)

    def csv_rows(self) -> list[str]:
        head = ",".join(f"x{i}_lo,x{i}_hi" for i in range(self.dimension))
        rows = [head]
        for box in self.boxes:
            rows.append(",".join(f"{iv.lo},{iv.hi}" for iv in box))
        return rows


def mahavier_cover(m: SetValuedMap, n: int, stage: int, level: int,
                   ceiling: int = DEFAULT_BOX_CEILING) -> BoxCover:
    """Compose graph-cover boxes into an outer cover of (x_0, ..., x_n).

    A pair (x_i, x_{i-1}) lies in the graph of F, covered by a box
    (T, Y) with x_i in T and x_{i-1} in Y.  Chains of boxes survive only
    while consecutive coordinate constraints intersect; constraints are
    propagated eagerly and empty chains pruned.
    """
    if n < 1:
        raise ValueError("need at least two coordinates")
    gboxes = m.graph_cover(stage, level).boxes
    chains: list[tuple[ClosedInterval, ...]] = [
        (yb, tb) for tb, yb in gboxes]
    for _ in range(2, n + 1):
        nxt = []
        for chain in chains:
            last = chain[-1]
            for tb, yb in gboxes:
                shared = last.intersect(yb)
                if shared is None:
                    continue
                nxt.append(chain[:-1] + (shared, tb))
                if len(nxt) > ceiling:
                    raise BoxCountError(
                        f"box chains exceeded ceiling {ceiling}")
        chains = nxt
    chains.sort()
    return BoxCover(n + 1, chains, stage, level)


def check_treelike_hypotheses(m: SetValuedMap, stage: int) -> dict:
    """Finite certificates for the tree-likeness hypotheses.

    (i) any value of F taken outside the big set is a singleton below
    1/8 = min of every stage cover, so the preimage of the big set stays
    inside the big set; (ii) stage-cover component widths shrink to 0
    (total disconnectedness at finite resolution); (iii) nondegenerate
    images occur only at points of the big set, by construction of F.
    """
    c0 = m.family.c0
    f_sup = ZERO if m.mode == "zero" else MAX_TENT_HEIGHT
    cover_min = c0.stage(stage).min()
    preimage_ok = f_sup < cover_min and cover_min == MIN_C0
    widths = [str(c0.stage(d).max_component_width()) for d in range(stage + 1)]
    shrinking = all(
        c0.stage(d + 1).max_component_width() <= c0.stage(d).max_component_width()
        for d in range(stage)) and (
        c0.stage(stage).max_component_width()
        < c0.stage(0).max_component_width() / 8)
    return {"preimage_ok": bool(preimage_ok),
            "singleton_sup": str(f_sup), "cover_min": str(cover_min),
            "max_component_widths": widths,
            "widths_shrink": bool(shrinking),
            "nondegenerate_only_on_big_set": True,
            "ok": bool(preimage_ok and shrinking)}
