import pytest

from scensched.generators import gen_random
from scensched.model import (
    evaluate_scenario,
    make_instance,
    single_scenario_optimum,
)
from scensched.two_scenario import solve_two_scenarios

from conftest import two_scenario_suite


def _assert_ideal(inst, sched):
    for k in (0, 1):
        assert evaluate_scenario(inst, sched, k) == single_scenario_optimum(inst, k)


def test_requires_two_scenarios():
    inst = make_instance(2, [1, 1], [[0], [1], [0, 1]])
    with pytest.raises(ValueError):
        solve_two_scenarios(inst)


def test_overlapping_unit_example():
    inst = make_instance(2, [1, 1, 1], [[0, 1], [1, 2]])
    sched = solve_two_scenarios(inst)
    assert evaluate_scenario(inst, sched, 0) == 2
    assert evaluate_scenario(inst, sched, 1) == 2
    _assert_ideal(inst, sched)


def test_identical_scenarios_round_robin():
    inst = make_instance(3, [9, 7, 4, 4, 2], [[0, 1, 2, 3, 4], [0, 1, 2, 3, 4]])
    _assert_ideal(inst, solve_two_scenarios(inst))


def test_disjoint_scenarios():
    for seed in range(30):
        inst = gen_random(8, 2 + seed % 3, 2, w_max=7, density=0.5, seed=7000 + seed)
        # make the scenarios disjoint by clipping the overlap from scenario 1
        s0, s1 = inst.scenarios
        trimmed = make_instance(
            inst.m,
            list(inst.weights),
            [sorted(s0), sorted(s1 - s0)],
        )
        _assert_ideal(trimmed, solve_two_scenarios(trimmed))


def test_jobs_outside_both_scenarios_are_harmless():
    inst = make_instance(2, [5, 4, 3, 2], [[0], [3]])
    _assert_ideal(inst, solve_two_scenarios(inst))


def test_single_machine():
    inst = make_instance(1, [3, 2, 1], [[0, 1], [1, 2]])
    sched = solve_two_scenarios(inst)
    assert sched.assignment == (0, 0, 0)
    _assert_ideal(inst, sched)


def test_ideal_on_seeded_suite():
    for inst in two_scenario_suite(60):
        _assert_ideal(inst, solve_two_scenarios(inst))
