import pytest
from hypothesis import given, strategies as st

from scensched.model import (
    ObjectiveKind,
    Schedule,
    disbalance,
    evaluate,
    evaluate_scenario,
    from_processing_times,
    instance_from_dict,
    instance_to_dict,
    make_instance,
    scenario_optima,
    schedule_from_dict,
    schedule_to_dict,
    single_scenario_optimum,
)
from scensched.oracle import iter_canonical_assignments

from conftest import small_suite


def test_from_processing_times_sorts_and_matches_spt():
    inst = from_processing_times([1, 2, 3], 1, [[0, 1, 2]])
    assert inst.weights == (3, 2, 1)
    # SPT completion times 1, 3, 6 sum to 10
    assert evaluate_scenario(inst, Schedule((0, 0, 0)), 0) == 10


def test_from_processing_times_single_job():
    inst = from_processing_times([5], 3, [[0]])
    for i in range(3):
        assert evaluate_scenario(inst, Schedule((i,)), 0) == 5


def test_from_processing_times_two_equal_jobs():
    inst = from_processing_times([2, 2], 2, [[0, 1]])
    assert evaluate_scenario(inst, Schedule((0, 1)), 0) == 4
    assert evaluate_scenario(inst, Schedule((0, 0)), 0) == 6


def _spt_total_completion(p, assignment, members, m):
    """Independent simulator: SPT order per machine, scenario jobs only."""
    total = 0
    for i in range(m):
        times = sorted(p[j] for j in members if assignment[j] == i)
        clock = 0
        for t in times:
            clock += t
            total += clock
    return total


def test_weighted_positions_equal_spt_completion_times():
    import random

    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 8)
        m = rng.randint(1, 3)
        p = [rng.randint(0, 9) for _ in range(n)]
        members = [j for j in range(n) if rng.random() < 0.7]
        inst = from_processing_times(p, m, [members])
        raw = [rng.randrange(m) for _ in range(n)]
        # map the input-order assignment onto the sorted instance
        sched = Schedule(tuple(raw[orig] for orig in inst.original_order))
        assert evaluate_scenario(inst, sched, 0) == _spt_total_completion(
            p, raw, members, m
        )


def test_original_order_remaps_scenarios():
    # input job 0 is lightest; internally it must come last
    inst = make_instance(2, [1, 5, 3], [[0], [1, 2]])
    assert inst.weights == (5, 3, 1)
    assert inst.original_order == (1, 2, 0)
    assert inst.scenarios[0] == frozenset({2})
    assert inst.scenarios[1] == frozenset({0, 1})


def test_evaluate_scenario_weighted_positions():
    inst = make_instance(2, [3, 2, 1], [[0, 1, 2]])
    sched = Schedule((0, 1, 0))
    # machine 0 holds weights 3 (pos 1) and 1 (pos 2); machine 1 holds 2 (pos 1)
    assert evaluate_scenario(inst, sched, 0) == 3 * 1 + 1 * 2 + 2 * 1


def test_unit_jobs_balanced_and_stacked():
    inst = make_instance(2, [1] * 5, [[0, 1, 2, 3, 4]])
    assert evaluate_scenario(inst, Schedule((0, 1, 0, 1, 0)), 0) == 9  # (l+1)^2, l=2
    assert evaluate_scenario(inst, Schedule((0,) * 5), 0) == 15  # (2l+1)(l+1)


def test_evaluate_scenario_index_error():
    inst = make_instance(2, [1], [[0]])
    with pytest.raises(IndexError):
        evaluate_scenario(inst, Schedule((0,)), 1)


def test_single_scenario_optimum_examples():
    assert single_scenario_optimum(make_instance(2, [1] * 5, [[0, 1, 2, 3, 4]]), 0) == 9
    inst = make_instance(2, [4, 3, 2, 1], [[0, 1, 2, 3]])
    assert single_scenario_optimum(inst, 0) == 13
    assert single_scenario_optimum(make_instance(3, [7], [[0]]), 0) == 7
    assert single_scenario_optimum(make_instance(2, [1, 1], [[]]), 0) == 0


def test_single_scenario_optimum_is_enumeration_minimum():
    inst = make_instance(2, [4, 3, 2, 1], [[0, 1, 2, 3]])
    best = min(
        evaluate_scenario(inst, Schedule(tuple(a)), 0)
        for a in iter_canonical_assignments(4, 2)
    )
    assert best == 13


def test_round_robin_formula_is_enumeration_minimum_on_suite():
    for inst in small_suite(30):
        for k in range(inst.K):
            best = min(
                evaluate_scenario(inst, Schedule(tuple(a)), k)
                for a in iter_canonical_assignments(inst.n, inst.m)
            )
            assert best == single_scenario_optimum(inst, k)


def test_evaluate_minmax_on_cut_gadget():
    inst = make_instance(2, [1, 1], [[0, 1]])
    assert evaluate(inst, Schedule((0, 1)), ObjectiveKind.MINMAX).aggregate == 2
    assert evaluate(inst, Schedule((0, 0)), ObjectiveKind.MINMAX).aggregate == 3


def test_empty_scenario_costs_nothing():
    inst = make_instance(2, [4, 2], [[0, 1], []])
    for assign in ((0, 0), (0, 1)):
        assert evaluate(inst, Schedule(assign), ObjectiveKind.MINMAX).per_scenario[1] == 0


def test_regret_sum_equals_minavg_shift():
    for inst in small_suite(20):
        opts = sum(scenario_optima(inst))
        for assign in iter_canonical_assignments(inst.n, inst.m):
            sched = Schedule(tuple(assign))
            avg = evaluate(inst, sched, ObjectiveKind.MINAVG).aggregate
            reg = evaluate(inst, sched, ObjectiveKind.REGRET_SUM).aggregate
            assert reg == avg - opts


def test_adding_job_outside_all_scenarios_changes_nothing():
    inst = make_instance(2, [4, 3, 1], [[0, 1], [2]])
    bigger = make_instance(2, [4, 3, 2, 1], [[0, 1], [3]])  # weight-2 job in no scenario
    for assign in iter_canonical_assignments(3, 2):
        sched = Schedule(tuple(assign))
        grown = Schedule((assign[0], assign[1], 0, assign[2]))
        for kind in ObjectiveKind:
            assert (
                evaluate(inst, sched, kind).per_scenario
                == evaluate(bigger, grown, kind).per_scenario
            )


@given(st.data())
def test_machine_relabeling_invariance(data):
    inst = small_suite(10)[data.draw(st.integers(0, 9))]
    assign = data.draw(
        st.lists(
            st.integers(0, inst.m - 1), min_size=inst.n, max_size=inst.n
        )
    )
    perm = data.draw(st.permutations(range(inst.m)))
    sched = Schedule(tuple(assign))
    relabeled = Schedule(tuple(perm[i] for i in assign))
    for kind in ObjectiveKind:
        assert evaluate(inst, sched, kind) == evaluate(inst, relabeled, kind)


@given(st.data())
def test_full_disbalance_dominates_final(data):
    inst = small_suite(10)[data.draw(st.integers(0, 9))]
    assign = data.draw(
        st.lists(st.integers(0, inst.m - 1), min_size=inst.n, max_size=inst.n)
    )
    rep = disbalance(inst, Schedule(tuple(assign)))
    assert all(f >= d >= 0 for f, d in zip(rep.full_fk, rep.final_dk))


def test_disbalance_examples():
    inst = make_instance(2, [1] * 4, [[0, 1, 2, 3]])
    rr = disbalance(inst, Schedule((0, 1, 0, 1)))
    assert rr.final_d == 0 and rr.full_f == 1
    stacked = disbalance(inst, Schedule((0, 0, 0, 0)))
    assert stacked.final_d == 4 and stacked.full_f == 4
    halves = disbalance(inst, Schedule((0, 0, 1, 1)))
    assert halves.final_d == 0 and halves.full_f == 2


def test_invalid_instances_rejected():
    with pytest.raises(ValueError):
        make_instance(0, [1], [[0]])
    with pytest.raises(ValueError):
        make_instance(1, [], [[0]])
    with pytest.raises(ValueError):
        make_instance(1, [1], [])
    with pytest.raises(ValueError):
        make_instance(1, [1], [[1]])
    with pytest.raises(ValueError):
        make_instance(1, [-1], [[0]])


def test_json_round_trip():
    doc = {"m": 2, "weights": [1, 5, 3], "scenarios": [[0], [1, 2]]}
    inst = instance_from_dict(doc)
    assert instance_to_dict(inst) == doc
    sched_doc = {"assignment": [1, 0, 1]}
    sched = schedule_from_dict(inst, sched_doc)
    assert schedule_to_dict(inst, sched) == sched_doc
    # input job 1 (weight 5) is internal job 0
    assert sched.assignment[0] == 0
