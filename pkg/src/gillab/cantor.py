"""Refinable generators for the nested Cantor-set family.

Three generator kinds:

* :class:`MiddleThirds` -- the standard middle-thirds set on a rational
  base interval; membership of a rational point is exactly decidable by
  ternary digit analysis.
* :class:`GapAttachedCantor` -- the enlarged set built by attaching a
  pair of scaled middle-thirds sets to every maximal gap of a
  middle-thirds set within a slightly wider window; the smallest set of
  the family contains it densely without sharing endpoints.
* :class:`IntermediateCantor` -- a set strictly between two nested
  generators, produced by removing a scheduled open neighborhood of each
  endpoint of the outer set.

Every generator exposes nested stage covers (normalized
:class:`~gillab.exact.IntervalSet` values) whose intersection is the
represented set.  Identical build parameters yield bit-identical covers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import BracketSearchError
from .exact import UNIT, ClosedInterval, IntervalSet, Rational, ZERO, ONE

IN = "in"
OUT = "out"
UNKNOWN = "unknown"

DEFAULT_MAX_STAGE = 12
DEFAULT_SEARCH_CEILING = 24


@dataclass(frozen=True)
class Membership:
    """Three-valued membership verdict.

    ``out`` is definitive (the point misses the recorded stage cover);
    ``in`` carries an exact certificate; ``unknown`` invites refinement.
    """

    verdict: str
    decided_at_stage: Optional[int] = None

    @property
    def is_in(self) -> bool:
        return self.verdict == IN

    @property
    def is_out(self) -> bool:
        return self.verdict == OUT

    @property
    def is_unknown(self) -> bool:
        return self.verdict == UNKNOWN


@dataclass(frozen=True)
class Endpoint:
    """A discovered endpoint: exact rational or symbolic address."""

    point: Union[Fraction, "CantorAddress"]
    side: str  # "left" | "right"
    stage: int = 0


class CantorGen:
    """Base class: memoized nested stage covers plus exact queries."""

    def __init__(self):
        self._stage_memo: list[IntervalSet] = []
        self._stage_lock = threading.Lock()

    def _compute_stage(self, d: int) -> IntervalSet:
        raise NotImplementedError

    def stage(self, d: int) -> IntervalSet:
        """Depth-d cover; computed at most once per depth."""
        if d < len(self._stage_memo):
            return self._stage_memo[d]
        with self._stage_lock:
            while len(self._stage_memo) <= d:
                self._stage_memo.append(self._compute_stage(len(self._stage_memo)))
        return self._stage_memo[d]

    def membership(self, t: Fraction, max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
        raise NotImplementedError

    def endpoints(self, count: int) -> list[Endpoint]:
        raise NotImplementedError

    def describe(self) -> str:
        """Canonical parameter string; drives cache keys."""
        raise NotImplementedError

    def component_persists(self, comp: ClosedInterval, d: int) -> bool:
        """Whether the stage-d cover component survives all refinement.

        True guarantees the component meets the represented set, so an
        address anchored on it can be refined forever.
        """
        return True

    def _cover_out(self, t: Fraction, max_stage: int) -> Optional[Membership]:
        for d in range(max_stage + 1):
            if not self.stage(d).contains_point(t):
                return Membership(OUT, d)
        return None


# ---------------------------------------------------------------------------
# middle-thirds generator


def _standard_membership(u: Fraction) -> tuple[bool, int]:
    """Exact membership of u in the middle-thirds set on [0, 1].

    Returns (verdict, depth).  Terminates for every rational: the orbit
    u -> 3u / 3u-2 keeps a bounded denominator, so it either exits
    through a middle third or cycles through valid digits.
    """
    third = Fraction(1, 3)
    two_thirds = Fraction(2, 3)
    seen = set()
    depth = 0
    while True:
        if u == 0 or u == 1:
            return True, depth
        if u in seen:
            return True, depth
        seen.add(u)
        if u <= third:
            u = 3 * u
        elif u >= two_thirds:
            u = 3 * u - 2
        else:
            return False, depth
        depth += 1


class MiddleThirds(CantorGen):
    """Middle-thirds Cantor set on a nondegenerate rational base interval."""

    def __init__(self, base: ClosedInterval):
        if base.is_degenerate:
            raise ValueError("middle-thirds base must be nondegenerate")
        super().__init__()
        self.base = base
        self._endpoint_stages: list[list[Endpoint]] = []

    def describe(self) -> str:
        return f"MT[{self.base.lo},{self.base.hi}]"

    def _compute_stage(self, d: int) -> IntervalSet:
        if d == 0:
            return IntervalSet([self.base])
        prev = self.stage(d - 1)
        comps = []
        for c in prev:
            w3 = c.width / 3
            comps.append(ClosedInterval(c.lo, c.lo + w3))
            comps.append(ClosedInterval(c.hi - w3, c.hi))
        return IntervalSet(comps, _normalized=True)

    def membership(self, t: Fraction, max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
        if not self.base.contains(t):
            return Membership(OUT, 0)
        u = (t - self.base.lo) / self.base.width
        inside, depth = _standard_membership(u)
        return Membership(IN if inside else OUT, depth)

    def gap_of(self, t: Fraction) -> tuple[Fraction, Fraction]:
        """Exact maximal gap (a, b) of the set within base containing t.

        Requires membership(t) to be Out with t strictly inside base.
        """
        a, b = self.base.lo, self.base.hi
        while True:
            w3 = (b - a) / 3
            if t <= a + w3:
                b = a + w3
            elif t >= b - w3:
                a = b - w3
            else:
                return (a + w3, b - w3)

    def new_endpoints(self, s: int) -> list[Endpoint]:
        """Endpoints first discovered at stage s, left to right."""
        while len(self._endpoint_stages) <= s:
            k = len(self._endpoint_stages)
            if k == 0:
                eps = [Endpoint(self.base.lo, "left", 0),
                       Endpoint(self.base.hi, "right", 0)]
            else:
                eps = []
                for c in self.stage(k - 1):
                    w3 = c.width / 3
                    eps.append(Endpoint(c.lo + w3, "right", k))
                    eps.append(Endpoint(c.hi - w3, "left", k))
                eps.sort(key=lambda e: e.point)
            self._endpoint_stages.append(eps)
        return self._endpoint_stages[s]

    def endpoints(self, count: int) -> list[Endpoint]:
        out: list[Endpoint] = []
        s = 0
        while len(out) < count:
            out.extend(self.new_endpoints(s))
            s += 1
        return out[:count]


def middle_thirds(base: ClosedInterval) -> MiddleThirds:
    return MiddleThirds(base)


# ---------------------------------------------------------------------------
# gap-attached enlargement


class GapAttachedCantor(CantorGen):
    """Enlarges a middle-thirds set by gluing scaled copies into its gaps.

    For every maximal gap (a, b) of the core set within the widened
    window, middle-thirds sets are placed on [a, a + (b-a)/3] and
    [b - (b-a)/3, b]; the two side gaps between window and core count as
    generation 0, the gap opened at core stage g as generation g.  A
    generation-g attachment is refined to depth d - g inside the depth-d
    cover, which keeps cover sizes polynomial in the depth.
    """

    def __init__(self, core: MiddleThirds):
        super().__init__()
        self.core = core
        span = core.base.width
        self.window = ClosedInterval(core.base.lo - span / 4, core.base.hi + span / 4)
        self._gap_memo: list[list[tuple[Fraction, Fraction]]] = []
        self._k_memo: dict[tuple[Fraction, Fraction], tuple[MiddleThirds, MiddleThirds]] = {}
        self._endpoint_stages: list[list[Endpoint]] = []

    def describe(self) -> str:
        return f"GA({self.core.describe()})"

    def gaps_of_generation(self, g: int) -> list[tuple[Fraction, Fraction]]:
        while len(self._gap_memo) <= g:
            k = len(self._gap_memo)
            if k == 0:
                gaps = [(self.window.lo, self.core.base.lo),
                        (self.core.base.hi, self.window.hi)]
            else:
                gaps = []
                for c in self.core.stage(k - 1):
                    w3 = c.width / 3
                    gaps.append((c.lo + w3, c.hi - w3))
            self._gap_memo.append(gaps)
        return self._gap_memo[g]

    def attachments(self, gap: tuple[Fraction, Fraction]) -> tuple[MiddleThirds, MiddleThirds]:
        pair = self._k_memo.get(gap)
        if pair is None:
            a, b = gap
            w3 = (b - a) / 3
            pair = (MiddleThirds(ClosedInterval(a, a + w3)),
                    MiddleThirds(ClosedInterval(b - w3, b)))
            self._k_memo[gap] = pair
        return pair

    def _compute_stage(self, d: int) -> IntervalSet:
        comps = list(self.core.stage(d))
        for g in range(d + 1):
            for gap in self.gaps_of_generation(g):
                for k in self.attachments(gap):
                    comps.extend(k.stage(d - g))
        return IntervalSet(comps)

    def membership(self, t: Fraction, max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
        core_m = self.core.membership(t)
        if core_m.is_in:
            return core_m
        if t < self.window.lo or t > self.window.hi:
            return Membership(OUT, 0)
        gap = self._core_gap_of(t)
        ka, kb = self.attachments(gap)
        if ka.base.contains(t):
            return ka.membership(t)
        if kb.base.contains(t):
            return kb.membership(t)
        return Membership(OUT, core_m.decided_at_stage)

    def _core_gap_of(self, t: Fraction) -> tuple[Fraction, Fraction]:
        """Maximal gap of the core within the window containing t (t not in core)."""
        if t < self.core.base.lo:
            return (self.window.lo, self.core.base.lo)
        if t > self.core.base.hi:
            return (self.core.base.hi, self.window.hi)
        return self.core.gap_of(t)

    def gap_of(self, t: Fraction) -> tuple[Fraction, Fraction]:
        """Exact maximal gap of {0} + this set + {1} containing t.

        Requires membership(t) to be Out.
        """
        if t < self.window.lo:
            return (ZERO, self.window.lo)
        if t > self.window.hi:
            return (self.window.hi, ONE)
        a, b = self._core_gap_of(t)
        ka, kb = self.attachments((a, b))
        if ka.base.contains(t):
            return ka.gap_of(t)
        if kb.base.contains(t):
            return kb.gap_of(t)
        return (ka.base.hi, kb.base.lo)

    def new_endpoints(self, s: int) -> list[Endpoint]:
        while len(self._endpoint_stages) <= s:
            k = len(self._endpoint_stages)
            eps: list[Endpoint] = []
            for g in range(k + 1):
                for gap in self.gaps_of_generation(g):
                    for att in self.attachments(gap):
                        for e in att.new_endpoints(k - g):
                            # attachment extremes landing on the core are
                            # interior points of this set, not endpoints
                            if self.core.membership(e.point).is_in:
                                continue
                            eps.append(Endpoint(e.point, e.side, k))
            eps.sort(key=lambda e: e.point)
            self._endpoint_stages.append(eps)
        return self._endpoint_stages[s]

    def endpoints(self, count: int) -> list[Endpoint]:
        out: list[Endpoint] = []
        s = 0
        while len(out) < count:
            out.extend(self.new_endpoints(s))
            s += 1
        return out[:count]


def build_C0(core: MiddleThirds) -> GapAttachedCantor:
    return GapAttachedCantor(core)


# ---------------------------------------------------------------------------
# symbolic addresses


class CantorAddress:
    """Point of a generator named by a branch path through its cover tree.

    ``prefix[0]`` selects the root component of stage 0; ``prefix[k]``
    the child component at the stage k-1 -> k refinement.  Past the
    prefix the path alternates leftmost/rightmost child, which denotes a
    certified non-endpoint of the set.
    """

    __slots__ = ("gen", "prefix", "_brackets", "_flips")

    def __init__(self, gen: CantorGen, prefix: tuple[int, ...]):
        if not prefix:
            raise ValueError("address prefix must select a root component")
        self.gen = gen
        self.prefix = tuple(prefix)
        self._brackets: list[ClosedInterval] = []
        self._flips = 0

    def bracket(self, d: int) -> ClosedInterval:
        """Rational bracketing component at stage d; brackets nest."""
        while len(self._brackets) <= d:
            k = len(self._brackets)
            if k == 0:
                comp = self.gen.stage(0).components[self.prefix[0]]
            else:
                parent = self._brackets[k - 1]
                children = [c for c in self.gen.stage(k).components_overlapping(parent)
                            if parent.contains_interval(c)]
                if not children:
                    raise BracketSearchError(
                        f"cover component vanished while refining address {self}")
                if k < len(self.prefix):
                    comp = children[self.prefix[k]]
                elif len(children) == 1:
                    # no split at this stage; do not consume a turn, or a
                    # region splitting only on one parity would always pick
                    # the same side and converge onto an endpoint
                    comp = children[0]
                else:
                    comp = children[0] if self._flips % 2 == 0 else children[-1]
                    self._flips += 1
            self._brackets.append(comp)
        return self._brackets[d]

    def serialize(self) -> str:
        return ".".join(str(i) for i in self.prefix) + ":(LR)"

    def __repr__(self) -> str:
        return f"CantorAddress({self.serialize()})"

    @staticmethod
    def for_component(gen: CantorGen, comp: ClosedInterval, stage: int) -> "CantorAddress":
        """Address whose stage-`stage` bracket is the given cover component."""
        path = []
        current = None
        for k in range(stage + 1):
            cover = gen.stage(k)
            # walk the ancestor chain of comp through the covers
            if k == 0:
                candidates = list(cover.components)
            else:
                candidates = [c for c in cover.components_overlapping(current)
                              if current.contains_interval(c)]
            idx = None
            for i, c in enumerate(candidates):
                if c.lo <= comp.lo and comp.hi <= c.hi:
                    idx = i
                    current = c
                    break
            if idx is None:
                raise BracketSearchError("component is not part of the stage cover")
            path.append(idx)
        addr = CantorAddress(gen, tuple(path))
        return addr


@dataclass(frozen=True)
class EdgeAnchor:
    """Degenerate bracket used when a removal is anchored at a gap edge."""

    point: Fraction

    def bracket(self, d: int) -> ClosedInterval:
        return ClosedInterval(self.point, self.point)

    def serialize(self) -> str:
        return f"edge:{self.point}"


AddressLike = Union[CantorAddress, EdgeAnchor]
PointLike = Union[Fraction, CantorAddress]


def point_bracket(p: PointLike, d: int) -> ClosedInterval:
    if isinstance(p, CantorAddress):
        return p.bracket(d)
    return ClosedInterval(p, p)


def address_membership(gen: CantorGen, addr: CantorAddress,
                       max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
    """Membership of an address-denoted point in another generator."""
    if addr.gen is gen:
        return Membership(IN, 0)
    for d in range(max_stage + 1):
        br = addr.bracket(d)
        cover = gen.stage(d)
        if not any(c.intersects(br) for c in cover.components_overlapping(br)):
            return Membership(OUT, d)
    return Membership(UNKNOWN, None)


def point_membership(gen: CantorGen, p: PointLike,
                     max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
    if isinstance(p, CantorAddress):
        return address_membership(gen, p, max_stage)
    return gen.membership(p, max_stage)


def address_bracket(addr: CantorAddress, stage: int) -> ClosedInterval:
    return addr.bracket(stage)


# ---------------------------------------------------------------------------
# intermediate sets via endpoint-removal schedules


@dataclass
class ScheduleEntry:
    """One removal: an open neighborhood of an outer-set endpoint."""

    index: int
    point: PointLike
    side: str
    a: AddressLike
    b: AddressLike
    create_stage: int

    def removal_open(self, d: int) -> tuple[Fraction, Fraction]:
        """Open interval removed at stage d >= create_stage; grows with d."""
        s = max(d, self.create_stage)
        return (self.a.bracket(s).hi, self.b.bracket(s).lo)

    def hull(self, d: int) -> ClosedInterval:
        s = max(d, self.create_stage)
        return ClosedInterval(self.a.bracket(s).lo, self.b.bracket(s).hi)


@dataclass
class RemovalSchedule:
    entries: list[ScheduleEntry] = field(default_factory=list)
    reuses: list[tuple[PointLike, int]] = field(default_factory=list)


class IntermediateCantor(CantorGen):
    """Cantor set strictly between inner and outer nested generators.

    Processes the outer set's endpoints in discovery order; for each, an
    open bracket (a_n, b_n) around it is removed from the outer covers,
    with a_n, b_n denoted by alternating addresses into the outer cover
    tree (certified non-endpoints, disjoint from the inner covers and
    from every earlier removal bracket).  Each removal takes effect from
    the stage at which its brackets were isolated.
    """

    def __init__(self, inner: CantorGen, outer: CantorGen, budget: int,
                 search_ceiling: int = DEFAULT_SEARCH_CEILING):
        super().__init__()
        self.inner = inner
        self.outer = outer
        self.budget = budget
        self.search_ceiling = search_ceiling
        self._schedule: Optional[RemovalSchedule] = None
        self._schedule_lock = threading.Lock()

    def describe(self) -> str:
        return (f"IC(inner={self.inner.describe()},outer={self.outer.describe()},"
                f"budget={self.budget})")

    # -- schedule construction ------------------------------------------

    def schedule(self) -> RemovalSchedule:
        if self._schedule is None:
            with self._schedule_lock:
                if self._schedule is None:
                    self._schedule = self._build_schedule()
        return self._schedule

    def _build_schedule(self) -> RemovalSchedule:
        sched = RemovalSchedule()
        for ep in self.outer.endpoints(self.budget):
            self._process_endpoint(sched, ep)
        return sched

    def _process_endpoint(self, sched: RemovalSchedule, ep: Endpoint) -> None:
        p = ep.point
        pm = point_membership(self.inner, p, self.search_ceiling)
        if not pm.is_out:
            raise BracketSearchError(
                f"outer endpoint {p!r} not certified outside the inner set "
                f"by stage {self.search_ceiling}")
        e = max(2, pm.decided_at_stage or 0)
        while e <= self.search_ceiling:
            br = point_bracket(p, e)
            verdict = self._try_stage(sched, p, br, e)
            if verdict == "reuse":
                return
            if isinstance(verdict, ScheduleEntry):
                verdict.index = len(sched.entries)
                sched.entries.append(verdict)
                return
            e += 1
        raise BracketSearchError(
            f"bracket search for endpoint {p!r} exhausted at stage {self.search_ceiling}")

    def _try_stage(self, sched: RemovalSchedule, p: PointLike,
                   br: ClosedInterval, e: int):
        # already swallowed by an earlier removal?
        for entry in sched.entries:
            if entry.create_stage > e:
                continue
            rlo, rhi = entry.removal_open(e)
            if rlo < br.lo and br.hi < rhi:
                sched.reuses.append((p, entry.index))
                return "reuse"
        hulls = [entry.hull(e) for entry in sched.entries if entry.create_stage <= e]
        if any(h.intersects(br) for h in hulls):
            return None  # refine until the hull releases the point
        blocked = self.inner.stage(e).union(IntervalSet(hulls))
        gap = blocked.complement_in(UNIT).component_containing(br.lo)
        if gap is None or not (gap.lo < br.lo and br.hi < gap.hi):
            return None
        a = self._anchor(gap.lo, br.lo, e, left=True)
        if a is None:
            return None
        b = self._anchor(br.hi, gap.hi, e, left=False)
        if b is None:
            return None
        return ScheduleEntry(index=-1, point=p,
                             side="left" if isinstance(p, Fraction) else "addr",
                             a=a, b=b, create_stage=e)

    def _anchor(self, lo: Fraction, hi: Fraction, e: int, left: bool):
        """Removal anchor strictly inside the open interval (lo, hi).

        Returns the outer-cover component nearest the endpoint as an
        alternating address, an EdgeAnchor when the outer set provably
        has no points strictly inside, or None (needs refinement).
        """
        cover = self.outer.stage(e)
        comps = [c for c in cover.components_strictly_inside(lo, hi)
                 if self.outer.component_persists(c, e)]
        if comps:
            comp = comps[-1] if left else comps[0]
            return CantorAddress.for_component(self.outer, comp, e)
        clipped = cover.intersect_interval(ClosedInterval(lo, hi))
        if all(c.hi <= lo or c.lo >= hi for c in clipped):
            x = lo if left else hi
            # only anchor on the gap edge itself when that edge is provably
            # not a point of the outer set; otherwise a degenerate hull
            # there would block the edge point's own schedule entry forever
            if x == ZERO or x == ONE or self.outer.membership(x, e).is_out:
                return EdgeAnchor(x)
        return None

    # -- covers and queries ---------------------------------------------

    def _compute_stage(self, d: int) -> IntervalSet:
        cov = self.outer.stage(d)
        for entry in self.schedule().entries:
            if entry.create_stage <= d:
                rlo, rhi = entry.removal_open(d)
                cov = cov.subtract_open(rlo, rhi)
        return cov

    def component_persists(self, comp: ClosedInterval, d: int) -> bool:
        # slivers left beside a growing removal get eaten at deeper
        # stages, so only hull-free components are certified to survive
        if not self.outer.component_persists(comp, d):
            return False
        return not any(entry.hull(d).intersects(comp)
                       for entry in self.schedule().entries)

    def membership(self, t: Fraction, max_stage: int = DEFAULT_MAX_STAGE) -> Membership:
        out = self._cover_out(t, max_stage)
        if out is not None:
            return out
        inner_m = self.inner.membership(t, max_stage)
        if inner_m.is_in:
            return inner_m
        return Membership(UNKNOWN, None)

    def endpoints(self, count: int) -> list[Endpoint]:
        out: list[Endpoint] = []
        for entry in self.schedule().entries:
            if isinstance(entry.a, CantorAddress):
                out.append(Endpoint(entry.a, "right", entry.create_stage))
            if isinstance(entry.b, CantorAddress):
                out.append(Endpoint(entry.b, "left", entry.create_stage))
        return out[:count]


def build_intermediate(inner: CantorGen, outer: CantorGen, budget: int,
                       search_ceiling: int = DEFAULT_SEARCH_CEILING) -> IntermediateCantor:
    """Cantor set between inner and outer; precondition checks are eager.

    Rejects inner == outer (no endpoint of the outer set can then lie
    outside the inner one, so the removal schedule would be empty).
    """
    if inner is outer or inner.describe() == outer.describe():
        raise ValueError("inner and outer generators must differ")
    return IntermediateCantor(inner, outer, budget, search_ceiling)


# ---------------------------------------------------------------------------
# the dyadic family


C1_BASE = ClosedInterval(Fraction(1, 4), Fraction(3, 4))


class CantorFamily:
    """Nested Cantor sets indexed by the dyadics k / 2^level in [0, 1].

    Larger indices give smaller sets; refining the level inserts new
    sets between existing ones without changing any constructed set.
    """

    def __init__(self, level: int, stage_budget: int,
                 members: dict[Fraction, CantorGen]):
        self.level = level
        self.stage_budget = stage_budget
        self.members = members

    def grid(self) -> list[Fraction]:
        return sorted(self.members)

    def member(self, r: Fraction) -> CantorGen:
        return self.members[Fraction(r)]

    @property
    def c0(self) -> GapAttachedCantor:
        return self.members[ZERO]

    @property
    def c1(self) -> MiddleThirds:
        return self.members[ONE]

    def describe(self) -> str:
        return f"family(level={self.level},budget={self.stage_budget})"

    def check_nesting(self, stages: range) -> dict:
        """Exact cover inclusion stage_d(C_r) <= stage_d(C_s) for r > s."""
        grid = self.grid()
        failures = []
        checked = 0
        for i, s in enumerate(grid):
            for r in grid[i + 1:]:
                for d in stages:
                    checked += 1
                    if not self.member(r).stage(d).issubset(self.member(s).stage(d)):
                        failures.append({"r": str(r), "s": str(s), "stage": d})
        return {"checked": checked, "failures": failures, "ok": not failures}


def build_family(level: int, stage_budget: int,
                 search_ceiling: int = DEFAULT_SEARCH_CEILING) -> CantorFamily:
    """Dyadic family at the given level via repeated bisection."""
    if level < 0:
        raise ValueError("level must be >= 0")
    c1 = MiddleThirds(C1_BASE)
    c0 = GapAttachedCantor(c1)
    members: dict[Fraction, CantorGen] = {ZERO: c0, ONE: c1}
    for lev in range(1, level + 1):
        denom = 2 ** lev
        step = Fraction(1, denom)
        for k in range(1, denom, 2):
            r = Fraction(k, denom)
            inner = members[r + step]   # larger index: smaller set
            outer = members[r - step]
            members[r] = IntermediateCantor(inner, outer, stage_budget,
                                            search_ceiling)
    return CantorFamily(level, stage_budget, members)
