from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gillab.bonding import (
    MAX_TENT_HEIGHT,
    MIN_C0,
    BaseMap,
    check_empty_interior,
    check_ivp_consistency,
    check_light,
    check_not_almost_nonfissile,
    check_usc,
    check_weak_continuity,
    eval_F,
    eval_f,
    make_map,
)

unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=729)


class TestBaseMap:
    def test_unknown_mode_rejected(self, family):
        with pytest.raises(ValueError):
            BaseMap("sine", family.c0)

    def test_zero_mode_is_zero(self, zero_map):
        for t in (F(0), F(1, 16), F(1, 2), F(1)):
            assert eval_f(zero_map.base, t) == 0

    def test_tent_known_values(self, tent_map):
        base = tent_map.base
        assert eval_f(base, F(1, 16)) == F(1, 32)
        assert eval_f(base, F(1, 32)) == F(1, 64)
        assert eval_f(base, F(1, 2)) == F(1, 72)
        assert eval_f(base, F(0)) == 0
        assert eval_f(base, F(1)) == 0

    def test_tent_vanishes_on_big_set(self, tent_map):
        for t in (F(1, 8), F(1, 4), F(19, 24), F(7, 8)):
            assert eval_f(tent_map.base, t) == 0

    def test_halving_rule_below_apex(self, tent_map):
        # on (0, 1/8) the tent has apex 1/16 and height 1/32, so the
        # left leg is t/2
        for t in (F(1, 64), F(1, 100), F(3, 64)):
            assert eval_f(tent_map.base, t) == t / 2

    def test_outside_unit_rejected(self, tent_map):
        with pytest.raises(ValueError):
            eval_f(tent_map.base, F(9, 8))

    @given(unit_rationals)
    @settings(max_examples=100)
    def test_contraction_bounds(self, tent_map, t):
        v = eval_f(tent_map.base, t)
        assert 0 <= v <= MAX_TENT_HEIGHT < MIN_C0
        if t > 0:
            assert v < t


class TestEvalF:
    def test_full_interval_on_smallest_set(self, zero_map):
        for t in (F(1, 4), F(5, 12), F(3, 4)):
            fb = eval_F(zero_map, t)
            assert not fb.is_singleton
            assert fb.lower_max == 1 and fb.upper_max == 1

    def test_singleton_off_big_set(self, zero_map, tent_map):
        fb = eval_F(zero_map, F(1, 2))
        assert fb.is_singleton and fb.point_value == 0
        fb = eval_F(tent_map, F(1, 2))
        assert fb.is_singleton and fb.point_value == F(1, 72)

    def test_zero_endpoint(self, zero_map):
        fb = eval_F(zero_map, F(0))
        assert fb.is_singleton and fb.point_value == 0

    def test_big_set_only_point(self, zero_map):
        # 1/8 is in the big set but outside every intermediate member
        fb = eval_F(zero_map, F(1, 8))
        assert not fb.is_singleton
        assert fb.lower_max == 0
        assert fb.upper_max == F(1, 4)

    def test_level_cap(self, zero_map):
        with pytest.raises(ValueError):
            eval_F(zero_map, F(1, 4), level=5)

    def test_bracket_order(self, zero_map):
        for t in (F(1, 8), F(1, 6), F(5, 24), F(1, 4)):
            fb = eval_F(zero_map, t)
            if not fb.is_singleton:
                assert 0 <= fb.lower_max <= fb.upper_max <= 1


class TestGraphCover:
    def test_boxes_sorted_and_cached(self, tent_map):
        cov1 = tent_map.graph_cover(4, 2)
        cov2 = tent_map.graph_cover(4, 2)
        assert cov1 is cov2
        xs = [xb.lo for xb, _ in cov1.boxes]
        assert xs == sorted(xs)

    def test_footprint_covers_unit(self, tent_map):
        cov = tent_map.graph_cover(5, 2)
        assert cov.column_footprint(F(0)).to_text() == "0..1"

    def test_graph_points_inside(self, zero_map, tent_map):
        for m in (zero_map, tent_map):
            for d in range(7):
                cov = m.graph_cover(d, 2)
                for t in (F(0), F(1, 16), F(1, 2), F(9, 10), F(1)):
                    assert cov.contains_point(t, eval_f(m.base, t)), (m.mode, d, t)

    def test_full_fibers_inside(self, zero_map):
        cov = zero_map.graph_cover(6, 2)
        for t in (F(1, 4), F(5, 12), F(3, 4)):
            for y in (F(0), F(1, 3), F(1), F(7, 8)):
                assert cov.contains_point(t, y)

    def test_area_decreases(self, zero_map):
        areas = [zero_map.graph_cover(d, 2).area() for d in range(7)]
        assert all(a > b for a, b in zip(areas, areas[1:]))

    def test_csv_rows(self, zero_map):
        rows = zero_map.graph_cover(1, 2).csv_rows()
        assert rows[0] == "x_lo,x_hi,y_lo,y_hi"
        assert len(rows) == len(zero_map.graph_cover(1, 2).boxes) + 1


class TestCheckers:
    def test_usc(self, zero_map, tent_map):
        for m in (zero_map, tent_map):
            rep = check_usc(m, 60, 6, seed=3)
            assert rep["ok"], rep["failures"][:2]

    def test_usc_deterministic(self, zero_map):
        assert check_usc(zero_map, 30, 5, seed=9) == check_usc(zero_map, 30, 5, seed=9)

    def test_weak_continuity(self, zero_map, family):
        pts = [e.point for e in family.c1.endpoints(12)]
        rep = check_weak_continuity(zero_map, pts, 12)
        assert rep["ok"], rep["failures"][:2]
        for w in rep["witnesses"]:
            assert F(w["distance"]) < F(1, 64)

    def test_weak_continuity_rejects_outsider(self, zero_map):
        rep = check_weak_continuity(zero_map, [F(1, 2)], 8)
        assert not rep["ok"]

    def test_ivp(self, zero_map, tent_map):
        for m in (zero_map, tent_map):
            rep = check_ivp_consistency(m, 32, seed=1)
            assert rep["ok"], rep

    def test_light_dichotomy(self, zero_map, tent_map):
        zrep = check_light(zero_map, 8, 6)
        assert zrep["ok"] and not zrep["light"]
        lo, hi = F(zrep["witness_interval"][0]), F(zrep["witness_interval"][1])
        assert (lo, hi) == (F(17, 36), F(19, 36))
        trep = check_light(tent_map, 8, 6)
        assert trep["ok"] and trep["light"]
        assert all(F(r["cover_measure"]) < 1 for r in trep["rows"])

    def test_not_almost_nonfissile(self, zero_map):
        rep = check_not_almost_nonfissile(zero_map)
        assert rep["ok"]
        assert rep["nonfissile_example"]["singleton"]

    def test_empty_interior(self, zero_map):
        rep = check_empty_interior(zero_map, list(range(0, 7)))
        assert rep["ok"]
        for d, row in enumerate(rep["per_stage"]):
            assert F(row["c1_portion_area"]) == F(1, 2) * F(2, 3) ** d

    def test_empty_interior_needs_sorted_stages(self, zero_map):
        with pytest.raises(ValueError):
            check_empty_interior(zero_map, [3, 1])
