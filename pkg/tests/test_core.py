from __future__ import annotations

import numpy as np
import pytest

from chain_of_scheduling.core import (
    Event,
    InputError,
    Instance,
    Location,
    TravelLookupError,
    TravelModel,
    ViolationKind,
    check_feasible,
    dump_instance,
    is_feasible,
    make_schedule,
    pair_compatible,
    parse_instance,
    schedule_utility,
    travel_time,
)
from chain_of_scheduling.core.codec import load_instance, save_instance
from chain_of_scheduling.core.model import format_clock
from chain_of_scheduling.core.travel import windows_overlap
from chain_of_scheduling.solvers import solve_dp_topk
from tests.conftest import matrix_instance, planar_instance, seeded_instance


def _event(event_id: str, start: int, end: int, x: float = 0.0, y: float = 0.0) -> Event:
    return Event(id=event_id, start=start, end=end, location=Location(x, y))


class TestModel:
    def test_event_window_must_be_ordered(self):
        with pytest.raises(InputError):
            _event("a", 600, 600)
        with pytest.raises(InputError):
            _event("a", 600, 1441)

    def test_event_window_label(self):
        assert _event("a", 540, 630).window == "09:00-10:30"
        assert format_clock(0) == "00:00"

    def test_location_rejects_nan(self):
        with pytest.raises(InputError):
            Location(float("nan"), 0.0)

    def test_duplicate_ids_rejected(self):
        with pytest.raises(InputError, match="Duplicate"):
            Instance(
                events=(_event("a", 540, 600), _event("a", 610, 700)),
                travel=TravelModel.planar(1.0),
                utilities={"a": 0.5},
            )

    def test_utilities_must_match_events(self):
        with pytest.raises(InputError, match="Missing"):
            Instance(
                events=(_event("a", 540, 600),),
                travel=TravelModel.planar(1.0),
                utilities={},
            )
        with pytest.raises(InputError, match="unknown"):
            Instance(
                events=(_event("a", 540, 600),),
                travel=TravelModel.planar(1.0),
                utilities={"a": 0.5, "b": 0.1},
            )

    @pytest.mark.parametrize("score", [-0.1, 1.5, float("nan")])
    def test_utility_out_of_range(self, score):
        with pytest.raises(InputError):
            Instance(
                events=(_event("a", 540, 600),),
                travel=TravelModel.planar(1.0),
                utilities={"a": score},
            )

    def test_incomplete_matrix_rejected(self):
        with pytest.raises(InputError, match="lacks pair"):
            Instance(
                events=(_event("a", 540, 600), _event("b", 610, 700)),
                travel=TravelModel.from_matrix({"a": {"a": 0, "b": 5}, "b": {"b": 0}}),
                utilities={"a": 0.5, "b": 0.5},
            )

    def test_planar_needs_positive_speed(self):
        with pytest.raises(InputError):
            TravelModel.planar(0.0)

    def test_unknown_event_lookup(self, small_instance):
        with pytest.raises(InputError, match="Unknown event id"):
            small_instance.event("nope")
        assert small_instance.has_event("e01")
        assert not small_instance.has_event("nope")

    def test_label_falls_back_to_user(self, small_instance, repair_scene):
        assert small_instance.label == "tester"
        assert repair_scene.label == "repair-scene"


class TestTravel:
    def test_planar_rounds_up(self):
        model = TravelModel.planar(0.5)
        a, b = _event("a", 540, 600, 0.0, 0.0), _event("b", 610, 700, 3.0, 4.0)
        assert travel_time(model, a, b) == 10
        c = _event("c", 610, 700, 1.0, 0.0)
        model = TravelModel.planar(0.3)
        assert travel_time(model, a, c) == 4
        d = _event("d", 610, 700, 0.0, 3.0)
        assert travel_time(TravelModel.planar(0.5), a, d) == 6

    def test_same_event_and_same_venue_are_free(self):
        model = TravelModel.planar(1.0)
        a = _event("a", 540, 600, 2.0, 2.0)
        b = _event("b", 600, 660, 2.0, 2.0)
        assert travel_time(model, a, a) == 0
        assert travel_time(model, a, b) == 0

    def test_matrix_lookup(self):
        instance = matrix_instance(
            {"A": (540, 600), "B": (610, 700)},
            {"A": 0.1, "B": 0.2},
            overrides={("A", "B"): 7},
        )
        a, b = instance.event("A"), instance.event("B")
        assert travel_time(instance.travel, a, b) == 7
        assert travel_time(instance.travel, b, a) == 10

    def test_missing_matrix_pair_names_the_pair(self):
        model = TravelModel.from_matrix({"A": {"A": 0}})
        a, b = _event("A", 540, 600), _event("B", 610, 700)
        with pytest.raises(TravelLookupError, match=r"\('A', 'B'\)"):
            travel_time(model, a, b)

    def test_compatibility_boundary(self):
        model = TravelModel.planar(1.0)
        a = _event("a", 540, 600, 0.0, 0.0)
        exact = _event("b", 610, 700, 10.0, 0.0)
        short = _event("c", 609, 700, 10.0, 0.0)
        assert pair_compatible(model, a, exact)
        assert not pair_compatible(model, a, short)
        assert not pair_compatible(model, exact, a)

    def test_touching_windows_at_one_venue_are_compatible(self):
        model = TravelModel.planar(1.0)
        a = _event("a", 540, 600, 1.0, 1.0)
        b = _event("b", 600, 660, 1.0, 1.0)
        assert pair_compatible(model, a, b)
        # Closed windows: the shared minute still counts as overlap.
        assert windows_overlap(a, b)


class TestFeasibility:
    def test_empty_and_singleton_are_feasible(self, small_instance):
        assert check_feasible(small_instance, []) == []
        assert is_feasible(small_instance, ["e02"])

    def test_travel_violation_is_adjacent(self, small_instance):
        violations = check_feasible(small_instance, ["e01", "e02"])
        assert [(v.kind, v.first, v.second) for v in violations] == [
            (ViolationKind.TRAVEL, 0, 1)
        ]
        assert "e01 ends 10:00" in violations[0].detail

    def test_duplicates_reported(self, small_instance):
        violations = check_feasible(small_instance, ["e01", "e03", "e01"])
        kinds = {v.kind for v in violations}
        assert ViolationKind.DUPLICATE in kinds
        duplicate = next(v for v in violations if v.kind is ViolationKind.DUPLICATE)
        assert (duplicate.first, duplicate.second) == (0, 2)

    def test_non_adjacent_overlap_reported(self):
        instance = matrix_instance(
            {"A": (540, 700), "B": (560, 600), "C": (650, 720)},
            {"A": 0.1, "B": 0.2, "C": 0.3},
            travel=0,
        )
        violations = check_feasible(instance, ["B", "C", "A"])
        overlap = [v for v in violations if v.kind is ViolationKind.OVERLAP]
        assert [(v.first, v.second) for v in overlap] == [(0, 2)]

    def test_unknown_id_raises(self, small_instance):
        with pytest.raises(InputError):
            check_feasible(small_instance, ["e01", "ghost"])

    def test_make_schedule(self, small_instance):
        schedule = make_schedule(small_instance, ["e01", "e03"])
        assert schedule.event_ids == ("e01", "e03")
        assert schedule.feasible
        assert schedule.total_utility == schedule_utility(small_instance, ["e01", "e03"])
        assert schedule.total_utility == pytest.approx(1.1)


class TestInvariants:
    def test_reversing_a_strictly_gapped_schedule_breaks_it(self):
        checked = 0
        for seed in range(30):
            instance = seeded_instance(15, seed)
            for schedule in solve_dp_topk(instance, 5).schedules:
                events = [instance.event(event_id) for event_id in schedule.event_ids]
                if len(events) < 2:
                    continue
                if any(b.start <= a.end for a, b in zip(events, events[1:])):
                    continue
                assert is_feasible(instance, schedule.event_ids)
                assert not is_feasible(instance, schedule.event_ids[::-1])
                checked += 1
        assert checked > 0

    def test_compatible_pairs_do_not_share_time(self):
        rng = np.random.default_rng(17)
        for seed in range(10):
            instance = seeded_instance(25, seed)
            events = instance.events
            for _ in range(200):
                i, j = rng.integers(len(events), size=2)
                a, b = events[int(i)], events[int(j)]
                if not pair_compatible(instance.travel, a, b):
                    continue
                assert a.end <= b.start
                if a.end < b.start:
                    assert not windows_overlap(a, b)

    def test_planar_travel_triangle_inequality(self):
        rng = np.random.default_rng(29)
        for seed in range(10):
            instance = seeded_instance(25, seed)
            events = instance.events
            for _ in range(200):
                a, b, c = (events[int(i)] for i in rng.integers(len(events), size=3))
                direct = travel_time(instance.travel, a, c)
                detour = travel_time(instance.travel, a, b) + travel_time(instance.travel, b, c)
                assert direct <= detour + 2


class TestCodec:
    def test_round_trip_planar(self, small_instance):
        assert parse_instance(dump_instance(small_instance)) == small_instance

    def test_round_trip_matrix_file(self, repair_scene, tmp_path):
        path = tmp_path / "scene.json"
        save_instance(repair_scene, path)
        loaded = load_instance(path)
        assert loaded == repair_scene
        assert loaded.instance_id == "repair-scene"
        assert loaded.travel.matrix["B"]["C"] == 30

    def test_description_survives(self):
        instance = planar_instance({"a": (540, 600, 0.0, 0.0)}, {"a": 0.4})
        text = dump_instance(instance).replace('"id": "a",', '"id": "a", "description": "jazz",')
        assert parse_instance(text).event("a").description == "jazz"

    def test_malformed_document_is_a_value_error(self):
        with pytest.raises(ValueError):
            parse_instance('{"user_id": "u", "events": []}')
        with pytest.raises(ValueError):
            parse_instance("not json")
