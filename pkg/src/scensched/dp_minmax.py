"""Exact pseudopolynomial solver for the min-max (and max-regret) objective,
plus the rounding wrapper that turns it into an approximation scheme.

The state after placing the first j jobs is the pair of m x K matrices
(Y, Z): per machine and scenario, Y counts placed scenario jobs and Z holds
the accumulated weighted completion time.  Placing job j on machine i adds
``w_j * (y_ik + 1)`` to ``z_ik`` for every scenario k containing j.  Only
reachable states are stored, layer by layer, keyed canonically: each state's
rows are sorted, which merges machine-symmetric states (the objectives are
invariant under machine relabeling).  Predecessor links allow rebuilding one
optimal assignment by forward replay.

The rounding wrapper scales weights by rho = W*eps/(m*n^2) and rounds up:
the exact optimum of the rounded instance, evaluated under original weights,
is within a factor 1+eps of the true optimum, and the rounded weights are at
most m*n^2/eps + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    GuardExceeded,
    Instance,
    ObjectiveKind,
    Schedule,
    SolveResult,
    evaluate,
    scenario_optima,
)

DEFAULT_MAX_STATES = 2_000_000


def solve_pseudo(
    inst: Instance,
    kind: ObjectiveKind = ObjectiveKind.MINMAX,
    *,
    max_states: int = DEFAULT_MAX_STATES,
) -> SolveResult:
    """Exact optimum for MINMAX or REGRET_MAX over load/cost states."""
    if kind not in (ObjectiveKind.MINMAX, ObjectiveKind.REGRET_MAX):
        raise ValueError(f"load/cost solver handles minmax and regret-max, not {kind.value}")
    n, m, K = inst.n, inst.m, inst.K
    w = inst.weights
    job_scens = inst.job_scenarios

    zero_row = (0,) * (2 * K)
    start = tuple([zero_row] * m)
    # layers[j]: canonical state -> (previous canonical state, row index that
    # received job j-1), with the lexicographically least link kept so the
    # result does not depend on iteration order.
    layers: list[dict] = [{start: None}]
    for j in range(n):
        wj = w[j]
        ks = job_scens[j]
        nxt: dict = {}
        for state in layers[-1]:
            rows = list(state)
            for r in range(m):
                row = state[r]
                y = list(row[:K])
                z = list(row[K:])
                for k in ks:
                    z[k] += wj * (y[k] + 1)
                    y[k] += 1
                rows[r] = tuple(y) + tuple(z)
                new_state = tuple(sorted(rows))
                rows[r] = row
                link = (state, r)
                old = nxt.get(new_state)
                if old is None or link < old:
                    nxt[new_state] = link
        if len(nxt) > max_states:
            raise GuardExceeded(
                f"load/cost state layer grew past {max_states} states at job {j + 1}"
            )
        layers.append(nxt)

    if kind is ObjectiveKind.REGRET_MAX:
        opts = scenario_optima(inst)
    else:
        opts = (0,) * K

    best = None
    for state in layers[n]:
        per = [0] * K
        for row in state:
            for k in range(K):
                per[k] += row[K + k]
        value = max(c - o for c, o in zip(per, opts))
        if best is None or (value, state) < best:
            best = (value, state)
    assert best is not None
    value, final_state = best
    return SolveResult(value=value, schedule=_rebuild(inst, layers, final_state))


def _rebuild(inst: Instance, layers: list[dict], final_state) -> Schedule:
    """Replay the predecessor chain, lowest machine index on row ties."""
    n, m, K = inst.n, inst.m, inst.K
    chain = []
    state = final_state
    for j in range(n, 0, -1):
        prev, r = layers[j][state]
        chain.append((prev, r))
        state = prev
    chain.reverse()

    zero_row = (0,) * (2 * K)
    machine_rows = [zero_row] * m
    assign = [0] * n
    for j, (prev_canonical, r) in enumerate(chain):
        assert tuple(sorted(machine_rows)) == prev_canonical, "replay drifted off the stored chain"
        target = prev_canonical[r]
        i = machine_rows.index(target)
        wj = inst.weights[j]
        y = list(target[:K])
        z = list(target[K:])
        for k in inst.job_scenarios[j]:
            z[k] += wj * (y[k] + 1)
            y[k] += 1
        machine_rows[i] = tuple(y) + tuple(z)
        assign[j] = i
    return Schedule(tuple(assign))


@dataclass(frozen=True)
class FptasResult:
    """Approximation result: value is under the *original* weights."""

    value: int
    schedule: Schedule
    rounded: Instance


def fptas(
    inst: Instance,
    eps: Fraction | int | str,
    *,
    max_states: int = DEFAULT_MAX_STATES,
) -> FptasResult:
    """(1+eps)-approximation for MINMAX via weight rounding.

    Rounds each weight to ceil(w_j / rho) with rho = W*eps/(m*n^2), solves the
    rounded instance exactly, and reports that schedule's cost under the
    original weights.  eps must be positive and the largest weight nonzero.
    Zero weights round to zero and keep their place at the end of the order.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    W = inst.max_weight
    if W == 0:
        raise ValueError("largest weight must be positive")
    n, m = inst.n, inst.m
    # ceil(w / rho) = ceil(w * m * n^2 * eps.den / (W * eps.num)), exactly.
    num = m * n * n * eps.denominator
    den = W * eps.numerator
    rounded_weights = tuple(-((-wj * num) // den) for wj in inst.weights)
    rounded = Instance(
        m=m,
        weights=rounded_weights,
        scenarios=inst.scenarios,
        original_order=inst.original_order,
    )
    result = solve_pseudo(rounded, ObjectiveKind.MINMAX, max_states=max_states)
    value = evaluate(inst, result.schedule, ObjectiveKind.MINMAX).aggregate
    return FptasResult(value=value, schedule=result.schedule, rounded=rounded)
