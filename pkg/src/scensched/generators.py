"""Instance constructions: graph-based gadgets, the three-way partition
family, unsplittable scenario matrices, and seeded random instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .model import GuardExceeded, Instance, make_instance


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n_vertices-1."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)


@dataclass(frozen=True)
class ScenarioMatrix:
    """0/1 matrix with jobs as rows and scenarios as columns."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("matrix needs at least one row")
        width = len(self.rows[0])
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            if any(v not in (0, 1) for v in r):
                raise ValueError("entries must be 0 or 1")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[c] for r in self.rows) for c in range(self.n_cols))

    def uniform_column_sum(self) -> int | None:
        sums = set(self.column_sums())
        return sums.pop() if len(sums) == 1 else None


# ---------------------------------------------------------------------------
# Graph gadgets: one unit job per vertex, one two-job scenario per edge.
# ---------------------------------------------------------------------------


def gen_coloring(g: Graph, m: int) -> Instance:
    """Coloring gadget: the max objective is 2 iff the graph is m-colorable.

    An edgeless graph yields one empty scenario (the model requires K >= 1).
    """
    scenarios = [list(e) for e in g.edges] or [[]]
    return make_instance(m, [1] * g.n_vertices, scenarios)


def gen_maxcut(g: Graph) -> Instance:
    """Cut gadget on two machines: a cut edge's scenario costs 2, an uncut
    one costs 3, so the sum objective equals 3|E| minus the cut size."""
    return gen_coloring(g, 2)


# ---------------------------------------------------------------------------
# Three-way partition family (three scenarios, geometric weight blocks)
# ---------------------------------------------------------------------------

_WHITE_PROFILES = ((0, 1), (1, 2), (0, 2))


def partition3_block_weights(a: list[int], m: int) -> list[int]:
    """The geometric block weights (4*m*n*a_max)^(n-j), j = 1..n."""
    n = len(a)
    base = 4 * m * n * max(a)
    return [base ** (n - j) for j in range(1, n + 1)]


def gen_partition3(a: list[int], m: int) -> Instance:
    """Three-scenario family encoding a three-way number partition.

    Block j holds three "white" jobs of weight Q_j on pair profiles, three
    "black" jobs of weight Q_j + a_j on the same profiles, and 2(m-2) "gray"
    jobs of weight Q_j in all three scenarios, so every scenario meets every
    block in exactly 2m jobs.
    """
    if m < 2:
        raise ValueError("need at least two machines")
    if not a or any(not isinstance(v, int) or v < 1 for v in a):
        raise ValueError("need a nonempty list of positive integers")
    n = len(a)
    q = partition3_block_weights(a, m)
    for j in range(n - 1):
        assert q[j] > q[j + 1] + a[j + 1], "block weights must dominate later blocks"

    weights: list[int] = []
    profiles: list[tuple[int, ...]] = []
    for j in range(n):
        for prof in _WHITE_PROFILES:
            weights.append(q[j])
            profiles.append(prof)
        for prof in _WHITE_PROFILES:
            weights.append(q[j] + a[j])
            profiles.append(prof)
        for _ in range(2 * (m - 2)):
            weights.append(q[j])
            profiles.append((0, 1, 2))
    scenarios = [
        [job for job, prof in enumerate(profiles) if k in prof] for k in range(3)
    ]
    return make_instance(m, weights, scenarios)


def partition3_tight_bound(a: list[int], m: int) -> Fraction:
    """Max-objective lower bound met exactly by yes-instances (machines 1, 2;
    gray machines contribute equally everywhere and are not counted here)."""
    q = partition3_block_weights(a, m)
    total = sum(
        (8 * (j + 1) - 2) * q[j] + (4 * (j + 1) - 2) * a[j] for j in range(len(a))
    )
    return total + Fraction(sum(a), 3)


# ---------------------------------------------------------------------------
# Unsplittable matrices
# ---------------------------------------------------------------------------


def gen_unsplittable(q: int, t: int, *, max_rows: int = 5000) -> ScenarioMatrix:
    """The recursive unsplittable family: tq columns, uniform column sums,
    rows and column sums both monic degree-t polynomials in q.

    Base (t=2): an identity-next-to-ones block over q-1 copies of
    (ones | ones-minus-identity).  Step: complement the previous matrix,
    append a ones column block, and pad with enough (ones | ones-minus-
    identity) copies to restore uniform column sums; the copy count that
    balances the columns is exactly the previous matrix's column sum.
    """
    if q < 2 or t < 2:
        raise ValueError("need q >= 2 and t >= 2")
    identity = [[1 if i == j else 0 for j in range(q)] for i in range(q)]
    ones = [[1] * q for _ in range(q)]
    hole = [[1 - identity[i][j] for j in range(q)] for i in range(q)]

    rows = [identity[i] + ones[i] for i in range(q)]
    for _ in range(q - 1):
        rows.extend(ones[i] + hole[i] for i in range(q))

    for level in range(3, t + 1):
        width = (level - 1) * q
        colsum = sum(r[0] for r in rows)
        complement = [[1 - v for v in r] for r in rows]
        new_rows = [r + [1] * q for r in complement]
        for _ in range(colsum):
            new_rows.extend([1] * width + hole[i] for i in range(q))
        rows = new_rows
        if len(rows) > max_rows:
            raise GuardExceeded(f"matrix grew past {max_rows} rows at level {level}")

    matrix = ScenarioMatrix(tuple(tuple(r) for r in rows))
    assert matrix.uniform_column_sum() is not None, "columns failed to balance"
    return matrix


def is_unsplittable(matrix: ScenarioMatrix, *, max_rows: int = 20) -> bool:
    """True iff no proper nonempty row subset has uniform column sums."""
    r = matrix.n_rows
    if r > max_rows:
        raise GuardExceeded(f"{r} rows exceed the 2^rows subset-check guard of {max_rows}")
    cols = matrix.n_cols
    for mask in range(1, (1 << r) - 1):
        sums = [0] * cols
        for i in range(r):
            if mask & (1 << i):
                row = matrix.rows[i]
                for c in range(cols):
                    sums[c] += row[c]
        if len(set(sums)) == 1:
            return False
    return True


def matrix_to_instance(matrix: ScenarioMatrix, eps_denominator: int = 100) -> Instance:
    """Two-machine instance from a uniform-column matrix.

    One weight-D job per row (D = eps_denominator), plus column-sum many
    jobs of weight D-1 in every scenario; this realizes "weight 1 - eps"
    extras with eps = 1/D in integer weights.
    """
    if eps_denominator < 2:
        raise ValueError("eps denominator must be at least 2")
    c = matrix.uniform_column_sum()
    if c is None:
        raise ValueError("matrix columns must have a uniform sum")
    d = eps_denominator
    weights = [d] * matrix.n_rows + [d - 1] * c
    scenarios = []
    for col in range(matrix.n_cols):
        members = [i for i in range(matrix.n_rows) if matrix.rows[i][col]]
        members.extend(range(matrix.n_rows, matrix.n_rows + c))
        scenarios.append(members)
    return make_instance(2, weights, scenarios)


# ---------------------------------------------------------------------------
# Seeded random instances
# ---------------------------------------------------------------------------


def gen_random(
    n: int, m: int, K: int, *, w_max: int = 9, density: float = 0.5, seed: int = 0
) -> Instance:
    """Random instance: weights uniform on 1..w_max, independent memberships.

    Draw order is pinned (all weights first, then memberships job-major), so
    equal parameters give identical instances.
    """
    if n < 1 or m < 1 or K < 1:
        raise ValueError("n, m, K must all be at least 1")
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    rng = random.Random(seed)
    weights = [rng.randint(1, w_max) for _ in range(n)]
    members: list[list[int]] = [[] for _ in range(K)]
    for j in range(n):
        for k in range(K):
            if rng.random() < density:
                members[k].append(j)
    return make_instance(m, weights, members)
