"""Balance theory for unit weights: profile classes, the two-machine cone,
its Hilbert basis, and the equalization procedures built on top.

A job's *profile* is the exact set of scenarios containing it; profiles are
indexed by a fixed bijection sigma (lexicographic by characteristic vector).
For two machines, a pair (x, y) of per-profile count vectors describes a
schedule; it has zero final disbalance in every scenario exactly when
``Mx = My`` for the 0/1 scenario-membership matrix M.  The nonnegative
integer points of the cone ``C = {(x, y) >= 0 : Mx = My}`` are generated by
its finitely many irreducible points (a Hilbert basis), and splitting a
schedule into basis classes lets one reassign jobs so that every prefix stays
nearly balanced while per-scenario machine counts -- and hence the
unit-weight sum objective, which depends only on those counts -- are
preserved.

The basis is computed by a completion procedure over the homogeneous system:
grow candidate vectors breadth-first from the unit vectors, extend a
candidate by a coordinate only when that reduces its defect against the
system (scalar-product test), and discard anything dominated by an already
found minimal solution.  The procedure returns exactly the minimal nonzero
solutions; the classical norm bound for basis elements is asserted on the
way out.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass

from .model import (
    GuardExceeded,
    Instance,
    ObjectiveKind,
    Schedule,
    disbalance,
)
from .oracle import optimal_schedules

DEFAULT_MAX_K = 3


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


def profile_index(profile, K: int) -> int:
    """sigma: subset of [K] -> 0..2^K-1, lexicographic by membership vector."""
    idx = 0
    for k in profile:
        if not 0 <= k < K:
            raise ValueError(f"scenario {k} out of range for K={K}")
        idx |= 1 << (K - 1 - k)
    return idx


def index_profile(idx: int, K: int) -> frozenset[int]:
    return frozenset(k for k in range(K) if idx & (1 << (K - 1 - k)))


def job_profile(inst: Instance, j: int) -> frozenset[int]:
    return frozenset(inst.job_scenarios[j])


def _scenario_columns(K: int) -> list[list[int]]:
    """Per scenario k, the sigma indices of profiles containing k."""
    return [
        [idx for idx in range(1 << K) if idx & (1 << (K - 1 - k))] for k in range(K)
    ]


# ---------------------------------------------------------------------------
# Cone and Hilbert basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LatticePoint:
    """Per-profile counts on machine 1 (x) and machine 2 (y)."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def vector(self) -> tuple[int, ...]:
        return self.x + self.y

    @property
    def l1(self) -> int:
        return sum(self.x) + sum(self.y)

    @property
    def linf(self) -> int:
        return max(self.vector())


@dataclass(frozen=True)
class HilbertBasis:
    K: int
    elements: tuple[LatticePoint, ...]  # sorted ascending by flat vector


def in_cone(point: LatticePoint, K: int) -> bool:
    """Membership in C: nonnegative and equal per-scenario sums on both sides."""
    P = 1 << K
    if len(point.x) != P or len(point.y) != P:
        return False
    if any(v < 0 for v in point.vector()):
        return False
    for cols in _scenario_columns(K):
        if sum(point.x[c] for c in cols) != sum(point.y[c] for c in cols):
            return False
    return True


def basis_norm_cap(K: int) -> int:
    """Classical max-norm bound for basis elements of the cone."""
    return (2 ** (2 ** (K + 1))) * math.factorial(K) ** 2


def hilbert_basis(K: int, *, max_k: int = DEFAULT_MAX_K) -> HilbertBasis:
    """All irreducible nonzero lattice points of the two-machine cone.

    For this homogeneous system a point is irreducible exactly when it is
    minimal under componentwise order among the nonzero points, so the
    completion procedure below returns the full basis.
    """
    if K > max_k:
        raise GuardExceeded(f"Hilbert basis guard: K={K} exceeds {max_k}")
    if K < 1:
        raise ValueError("K must be at least 1")
    P = 1 << K
    dim = 2 * P
    cols = []
    for idx in range(P):
        cols.append(tuple(1 if idx & (1 << (K - 1 - k)) else 0 for k in range(K)))
    for idx in range(P):
        cols.append(tuple(-c for c in cols[idx]))
    zero_defect = (0,) * K

    minimal: list[tuple[int, ...]] = []

    def dominated(v) -> bool:
        return any(all(b[c] <= v[c] for c in range(dim)) for b in minimal)

    frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
    for i in range(dim):
        unit = tuple(1 if c == i else 0 for c in range(dim))
        frontier[unit] = cols[i]

    cap = basis_norm_cap(K)
    while frontier:
        for v in sorted(frontier):
            if frontier[v] == zero_defect and not dominated(v):
                minimal.append(v)
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for v, defect in frontier.items():
            if defect == zero_defect:
                continue
            for i in range(dim):
                # Extend only along coordinates that reduce the defect.
                if sum(d * c for d, c in zip(defect, cols[i])) < 0:
                    v2 = list(v)
                    v2[i] += 1
                    v2 = tuple(v2)
                    if not dominated(v2):
                        nxt[v2] = tuple(d + c for d, c in zip(defect, cols[i]))
        frontier = nxt

    points = []
    for v in minimal:
        point = LatticePoint(x=v[:P], y=v[P:])
        assert point.linf <= cap, "basis element exceeds the classical norm bound"
        points.append(point)
    points.sort(key=lambda p: p.vector())
    return HilbertBasis(K=K, elements=tuple(points))


def decompose(point: LatticePoint, basis: HilbertBasis) -> list[LatticePoint]:
    """Write a cone point as a multiset sum of basis elements.

    Greedy largest-first subtraction with backtracking; a decomposition
    always exists for cone points by the Hilbert property.
    """
    if not in_cone(point, basis.K):
        raise ValueError("point is not in the cone")
    elems = sorted(basis.elements, key=lambda b: (-b.l1, b.vector()))
    vectors = [b.vector() for b in elems]
    target = point.vector()
    dim = len(target)

    def rec(i: int, rem: tuple[int, ...]):
        if not any(rem):
            return []
        if i == len(vectors):
            return None
        b = vectors[i]
        max_copies = min(
            (rem[c] // b[c] for c in range(dim) if b[c]), default=0
        )
        for copies in range(max_copies, -1, -1):
            nxt = tuple(rem[c] - copies * b[c] for c in range(dim))
            rest = rec(i + 1, nxt)
            if rest is not None:
                return [elems[i]] * copies + rest
        return None

    result = rec(0, target)
    if result is None:
        raise RuntimeError("no decomposition found -- this falsifies the basis")
    return result


# ---------------------------------------------------------------------------
# Profile round robin (pairwise redistribution behind the final-disbalance
# bound for optimal schedules)
# ---------------------------------------------------------------------------


def profile_round_robin(inst: Instance, sched: Schedule, i1: int, i2: int) -> Schedule:
    """Rebalance machines i1, i2 by alternating within each profile class.

    Jobs on the two machines are grouped by profile; within a class they are
    reassigned alternately (canonical order) to i1, i2.  The resulting final
    count difference between the pair is at most 2^(K-1) per scenario: each
    scenario sees at most 2^(K-1) profile classes, each contributing at most
    one to the difference.
    """
    _check_pair(inst, i1, i2)
    _require_unit_weights(inst)
    K = inst.K
    classes: dict[int, list[int]] = {}
    for j in range(inst.n):
        if sched.assignment[j] in (i1, i2):
            classes.setdefault(profile_index(inst.job_scenarios[j], K), []).append(j)
    new_assignment = list(sched.assignment)
    for idx in sorted(classes):
        for pos, j in enumerate(classes[idx]):
            new_assignment[j] = i1 if pos % 2 == 0 else i2
    return Schedule(tuple(new_assignment))


# ---------------------------------------------------------------------------
# Equalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EqualizeReport:
    """Pairwise disbalance before/after one equalization, per scenario."""

    machines: tuple[int, int]
    aux_jobs: tuple[int, ...]  # auxiliary singletons added per scenario
    pre_final: tuple[int, ...]
    pre_full: tuple[int, ...]
    post_final: tuple[int, ...]
    post_full: tuple[int, ...]
    extended_final: tuple[int, ...]  # with auxiliaries, must be all zero


def lemma_final_bound_sq(K: int) -> int:
    """Square of the final-disbalance bound sqrt(K)*2^(K-1) for optima."""
    return K * 4 ** (K - 1)


def prop8_closed_form(K: int) -> int:
    """The closed-form pairwise full-disbalance certificate (astronomical)."""
    b = basis_norm_cap(K)
    return (b + 1) ** (2 * 2**K) * 2 * 2**K * b


def basis_l1_sum(basis: HilbertBasis) -> int:
    """Certified pairwise full-disbalance bound after equalization.

    Across the reassignment scan, at most one working copy per basis element
    is partially consumed at any time, so every prefix imbalance is at most
    the sum of the elements' l1 norms.
    """
    return sum(b.l1 for b in basis.elements)


def _require_unit_weights(inst: Instance) -> None:
    if any(w != 1 for w in inst.weights):
        raise ValueError("balance procedures require unit weights")


def _check_pair(inst: Instance, i1: int, i2: int) -> None:
    if i1 == i2:
        raise ValueError("need two distinct machines")
    for i in (i1, i2):
        if not 0 <= i < inst.m:
            raise ValueError(f"machine {i} out of range")


def _pair_scan_disbalance(inst, assignment, i1, i2, aux=()):
    """Final/full per-scenario count differences restricted to a machine pair.

    ``aux`` lists (scenario, side) singleton jobs appended after the real
    jobs, side 0 meaning i1.  Returns (real_final, real_full, extended_final).
    """
    K = inst.K
    diff = [0] * K
    full = [0] * K
    for j in range(inst.n):
        a = assignment[j]
        if a == i1 or a == i2:
            delta = 1 if a == i1 else -1
            for k in inst.job_scenarios[j]:
                diff[k] += delta
                if abs(diff[k]) > full[k]:
                    full[k] = abs(diff[k])
    real_final = tuple(abs(v) for v in diff)
    real_full = tuple(full)
    for k, side in aux:
        diff[k] += 1 if side == 0 else -1
    return real_final, real_full, tuple(abs(v) for v in diff)


def equalize_two(
    inst: Instance,
    sched: Schedule,
    i1: int,
    i2: int,
    *,
    basis: HilbertBasis | None = None,
    with_report: bool = False,
):
    """Reassign the jobs of machines i1, i2 to bound their prefix imbalance.

    The pair sub-schedule is padded with per-scenario auxiliary singletons on
    the deficit side until its final disbalance is zero, encoded as a cone
    point, decomposed over the Hilbert basis, and rebuilt by scanning jobs in
    canonical order (auxiliaries last): each job consumes the first open slot
    over basis classes, preferring the i1 side.  Auxiliaries are then dropped.

    Preserves per-scenario counts outside the pair and never increases the
    pair's count imbalance, so on an optimal input (the intended use; a
    warning flags likely non-optimal ones) the unit-weight sum objective is
    preserved exactly.
    """
    _check_pair(inst, i1, i2)
    _require_unit_weights(inst)
    K = inst.K
    P = 1 << K
    if basis is None:
        basis = hilbert_basis(K)
    assignment = sched.assignment

    pair_jobs = [j for j in range(inst.n) if assignment[j] in (i1, i2)]
    x = [0] * P
    y = [0] * P
    c1 = [0] * K
    c2 = [0] * K
    for j in pair_jobs:
        idx = profile_index(inst.job_scenarios[j], K)
        if assignment[j] == i1:
            x[idx] += 1
            for k in inst.job_scenarios[j]:
                c1[k] += 1
        else:
            y[idx] += 1
            for k in inst.job_scenarios[j]:
                c2[k] += 1

    d = [abs(a - b) for a, b in zip(c1, c2)]
    if any(dk * dk > lemma_final_bound_sq(K) for dk in d):
        warnings.warn(
            "pair final disbalance exceeds the optimal-schedule bound; "
            "the input schedule is likely not optimal",
            stacklevel=2,
        )
    aux: list[tuple[int, int]] = []
    for k in range(K):
        if d[k]:
            side = 0 if c1[k] < c2[k] else 1
            sigma_k = 1 << (K - 1 - k)
            (x if side == 0 else y)[sigma_k] += d[k]
            aux.extend((k, side) for _ in range(d[k]))

    point = LatticePoint(x=tuple(x), y=tuple(y))
    assert in_cone(point, K), "padded pair counts must balance per scenario"
    multiplicity = Counter(decompose(point, basis))
    classes = [
        (b, [list(b.vector()) for _ in range(multiplicity[b])])
        for b in basis.elements
        if multiplicity[b]
    ]

    scan = [(profile_index(inst.job_scenarios[j], K), j) for j in pair_jobs]
    scan.extend((1 << (K - 1 - k), None) for k, _ in aux)
    sides: list[int] = []
    for sigma_j, _ in scan:
        placed = False
        for _, copies in classes:
            for copy in copies:
                if copy[sigma_j] > 0:
                    copy[sigma_j] -= 1
                    sides.append(0)
                    placed = True
                elif copy[P + sigma_j] > 0:
                    copy[P + sigma_j] -= 1
                    sides.append(1)
                    placed = True
                if placed:
                    break
            if placed:
                break
        if not placed:
            raise RuntimeError("slot scan failed -- this falsifies the decomposition")
        if __debug__:
            for _, copies in classes:
                for a, b in zip(copies, copies[1:]):
                    assert all(u <= v for u, v in zip(a, b)), (
                        "copies of one basis element must stay monotone"
                    )
    # every fully consumed copy accounts for one cone element, so the scan
    # must exhaust all slots exactly
    assert all(not any(copy) for _, copies in classes for copy in copies)

    new_assignment = list(assignment)
    for pos, j in enumerate(pair_jobs):
        new_assignment[j] = i1 if sides[pos] == 0 else i2
    result = Schedule(tuple(new_assignment))

    if not with_report:
        return result
    pre_final, pre_full, _ = _pair_scan_disbalance(inst, assignment, i1, i2)
    aux_sides = [(k, sides[len(pair_jobs) + t]) for t, (k, _) in enumerate(aux)]
    post_final, post_full, ext_final = _pair_scan_disbalance(
        inst, result.assignment, i1, i2, aux_sides
    )
    aux_counts = [0] * K
    for k, _ in aux:
        aux_counts[k] += 1
    report = EqualizeReport(
        machines=(i1, i2),
        aux_jobs=tuple(aux_counts),
        pre_final=pre_final,
        pre_full=pre_full,
        post_final=post_final,
        post_full=post_full,
        extended_final=ext_final,
    )
    return result, report


def _machine_scenario_counts(inst: Instance, assignment) -> list[list[int]]:
    counts = [[0] * inst.K for _ in range(inst.m)]
    for j in range(inst.n):
        for k in inst.job_scenarios[j]:
            counts[assignment[j]][k] += 1
    return counts


def equalize_all(
    inst: Instance,
    sched: Schedule,
    *,
    threshold=None,
    use_closed_form: bool = False,
    max_iter: int = 10_000,
    basis: HilbertBasis | None = None,
) -> Schedule:
    """Drive pairwise equalization until every machine is near average load.

    While some machine's scenario count differs from the scenario average by
    more than ``threshold`` (default 2*K*f with f the certified pairwise
    bound; the astronomically large closed form is available behind
    ``use_closed_form``), equalize that machine against the currently
    lightest/heaviest one.  The summed deviation from average strictly
    decreases each round -- checked at runtime, since a violation would
    falsify the implementation -- which forces termination.
    """
    _require_unit_weights(inst)
    K = inst.K
    if basis is None:
        basis = hilbert_basis(K)
    if threshold is None:
        f = prop8_closed_form(K) if use_closed_form else basis_l1_sum(basis)
        threshold = 2 * K * f
    m = inst.m
    sizes = [len(s) for s in inst.scenario_jobs]

    current = sched
    counts = _machine_scenario_counts(inst, current.assignment)

    def potential() -> int:
        # Scaled by m so it stays integral: sum |m*c_ik - |S_k||.
        return sum(
            abs(m * counts[i][k] - sizes[k]) for i in range(m) for k in range(K)
        )

    def violation():
        for i in range(m):
            for k in range(K):
                if abs(m * counts[i][k] - sizes[k]) > m * threshold:
                    return i, k
        return None

    pot = potential()
    iterations = 0
    while (viol := violation()) is not None:
        if iterations >= max_iter:
            raise GuardExceeded(
                f"equalization did not settle within {max_iter} rounds "
                f"(potential {pot}) -- this falsifies the implementation"
            )
        i, k = viol
        if m * counts[i][k] > sizes[k]:
            partner = min(range(m), key=lambda i2: (counts[i2][k], i2))
        else:
            partner = min(range(m), key=lambda i2: (-counts[i2][k], i2))
        current = equalize_two(inst, current, i, partner, basis=basis)
        counts = _machine_scenario_counts(inst, current.assignment)
        new_pot = potential()
        if not new_pot < pot:
            raise AssertionError(
                f"potential failed to decrease ({pot} -> {new_pot}) -- "
                "this falsifies the implementation"
            )
        pot = new_pot
        iterations += 1
    return current


# ---------------------------------------------------------------------------
# Empirical probe for the bounded-full-disbalance conjecture
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    n: int
    m: int
    K: int
    trials: int
    seed: int
    per_trial: tuple[int, ...]  # min over all optima of the full disbalance
    max_observed: int
    achieving_trials: tuple[int, ...]


def conjecture_probe(
    n: int,
    m: int,
    K: int,
    trials: int,
    seed: int,
    *,
    density: float = 0.5,
    w_max: int = 1,
    guard_bits: float = 32.0,
) -> ProbeReport:
    """Measure, over seeded random instances, the smallest full disbalance
    achievable by *any* optimal schedule of the sum objective.

    Trial t uses seed ``seed + t``.  Reports the per-trial minima, their
    maximum, and which trials attain it.
    """
    from .generators import gen_random

    per_trial = []
    for t in range(trials):
        instance = gen_random(n, m, K, w_max=w_max, density=density, seed=seed + t)
        optima = optimal_schedules(instance, ObjectiveKind.MINAVG, guard_bits=guard_bits)
        per_trial.append(min(disbalance(instance, s).full_f for s in optima))
    max_observed = max(per_trial) if per_trial else 0
    achieving = tuple(t for t, v in enumerate(per_trial) if v == max_observed)
    return ProbeReport(
        n=n,
        m=m,
        K=K,
        trials=trials,
        seed=seed,
        per_trial=tuple(per_trial),
        max_observed=max_observed,
        achieving_trials=achieving,
    )
