import pytest

from scensched.generators import (
    Graph,
    ScenarioMatrix,
    gen_coloring,
    gen_maxcut,
    gen_partition3,
    gen_random,
    gen_unsplittable,
    is_unsplittable,
    matrix_to_instance,
    partition3_block_weights,
    partition3_tight_bound,
)
from scensched.model import GuardExceeded, ObjectiveKind, disbalance
from scensched.oracle import brute_force


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 1), (1, 0)))


def test_coloring_single_edge():
    inst = gen_coloring(Graph(2, ((0, 1),)), 2)
    assert brute_force(inst, ObjectiveKind.MINMAX).best_value == 2


def test_coloring_triangle_not_two_colorable():
    inst = gen_coloring(Graph(3, ((0, 1), (1, 2), (0, 2))), 2)
    assert brute_force(inst, ObjectiveKind.MINMAX).best_value == 3


def test_coloring_bipartite_graphs_cost_two():
    path = Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))
    cycle = Graph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)))
    for g in (path, cycle):
        inst = gen_coloring(g, 2)
        assert brute_force(inst, ObjectiveKind.MINMAX).best_value == 2


def test_coloring_edgeless_graph_yields_empty_scenario():
    inst = gen_coloring(Graph(3, ()), 2)
    assert inst.K == 1
    assert brute_force(inst, ObjectiveKind.MINAVG).best_value == 0


def test_maxcut_values():
    assert brute_force(gen_maxcut(Graph(2, ((0, 1),))), ObjectiveKind.MINAVG).best_value == 2
    triangle = gen_maxcut(Graph(3, ((0, 1), (1, 2), (0, 2))))
    # 3|E| - maxcut = 9 - 2
    assert brute_force(triangle, ObjectiveKind.MINAVG).best_value == 7


def test_maxcut_objective_is_three_e_minus_cut():
    g = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))
    inst = gen_maxcut(g)
    best = brute_force(inst, ObjectiveKind.MINAVG).best_value
    maxcut = 0
    for mask in range(1 << g.n_vertices):
        cut = sum(1 for u, v in g.edges if ((mask >> u) ^ (mask >> v)) & 1)
        maxcut = max(maxcut, cut)
    assert best == 3 * len(g.edges) - maxcut


def test_partition3_structure():
    for m in (2, 3):
        a = [1, 2, 1]
        inst = gen_partition3(a, m)
        assert inst.n == (2 * m + 2) * len(a)
        assert inst.K == 3
        q = partition3_block_weights(a, m)
        # block j = jobs with weight q[j] or q[j] + a[j]; scenario meets each in 2m jobs
        for j, qj in enumerate(q):
            block = {
                job
                for job in range(inst.n)
                if inst.weights[job] in (qj, qj + a[j])
            }
            assert len(block) == 2 * m + 2
            for k in range(3):
                assert len(block & inst.scenarios[k]) == 2 * m


def test_partition3_weight_sequence():
    assert partition3_block_weights([1, 1, 1], 2) == [576, 24, 1]
    assert partition3_tight_bound([1, 1, 1], 2) == 3833


def test_partition3_validation():
    with pytest.raises(ValueError):
        gen_partition3([], 2)
    with pytest.raises(ValueError):
        gen_partition3([0, 1], 2)
    with pytest.raises(ValueError):
        gen_partition3([1, 1], 1)


def test_unsplittable_base_matrix():
    matrix = gen_unsplittable(2, 2)
    assert matrix.rows == (
        (1, 0, 1, 1),
        (0, 1, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 0),
    )
    assert matrix.column_sums() == (3, 3, 3, 3)


def test_unsplittable_shapes_and_column_sums():
    for q in (2, 3, 4):
        m2 = gen_unsplittable(q, 2)
        assert m2.n_cols == 2 * q
        assert m2.n_rows == q * q
        assert m2.uniform_column_sum() == q * q - q + 1
        m3 = gen_unsplittable(q, 3)
        assert m3.n_cols == 3 * q
        assert m3.n_rows == q**3 + q
        assert m3.uniform_column_sum() == q**3 - q**2 + 2 * q - 1


def test_unsplittable_check_on_generated_matrices():
    assert is_unsplittable(gen_unsplittable(2, 2))
    assert is_unsplittable(gen_unsplittable(3, 2))
    assert is_unsplittable(gen_unsplittable(2, 3))


def test_unsplittable_check_counterexamples():
    all_ones = ScenarioMatrix(((1, 1), (1, 1)))
    assert not is_unsplittable(all_ones)
    with pytest.raises(GuardExceeded):
        is_unsplittable(gen_unsplittable(5, 2))


def test_matrix_to_instance_shape():
    inst = matrix_to_instance(gen_unsplittable(2, 2), 100)
    assert inst.n == 7
    assert inst.K == 4
    assert inst.weights == (100,) * 4 + (99,) * 3


def test_matrix_to_instance_optimum_separates_rows():
    inst = matrix_to_instance(gen_unsplittable(2, 2), 100)
    res = brute_force(inst, ObjectiveKind.MINAVG)
    sides = set(res.best_schedule.assignment[:4])
    extra_sides = set(res.best_schedule.assignment[4:])
    assert len(sides) == 1 and len(extra_sides) == 1 and sides != extra_sides
    # heavy rows all precede the extras, forcing a prefix spread of the column sum
    assert disbalance(inst, res.best_schedule).full_f == 3


def test_matrix_to_instance_validation():
    with pytest.raises(ValueError):
        matrix_to_instance(ScenarioMatrix(((1, 0), (1, 1))), 100)
    with pytest.raises(ValueError):
        matrix_to_instance(gen_unsplittable(2, 2), 1)


def test_gen_random_determinism_and_density_one():
    a = gen_random(8, 3, 3, w_max=9, density=0.5, seed=42)
    b = gen_random(8, 3, 3, w_max=9, density=0.5, seed=42)
    assert a == b
    full = gen_random(5, 2, 2, w_max=1, density=1.0, seed=0)
    assert all(s == frozenset(range(5)) for s in full.scenarios)


def test_gen_random_validation():
    with pytest.raises(ValueError):
        gen_random(0, 1, 1, seed=0)
    with pytest.raises(ValueError):
        gen_random(1, 1, 1, density=0.0, seed=0)
    with pytest.raises(ValueError):
        gen_random(1, 1, 1, w_max=0, seed=0)
