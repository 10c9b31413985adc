"""Total-completion-time scheduling under job-subset scenarios."""

from .model import (
    CostVector,
    DisbalanceReport,
    GuardExceeded,
    Instance,
    ObjectiveKind,
    Schedule,
    SolveResult,
    disbalance,
    evaluate,
    evaluate_scenario,
    from_processing_times,
    instance_from_dict,
    instance_hash,
    instance_to_dict,
    make_instance,
    scenario_optima,
    schedule_from_dict,
    schedule_to_dict,
    single_scenario_optimum,
)
from .oracle import (
    OracleResult,
    brute_force,
    expected_uniform_cost,
    iter_canonical_assignments,
    optimal_schedules,
)
from .two_scenario import solve_two_scenarios
from .dp_minmax import FptasResult, fptas, solve_pseudo
from .dp_minavg import solve_minavg, solve_regret_sum
from .dp_config import solve_config
from .approx import minavg_derandomized, minmax_all_on_one
from .balance import (
    EqualizeReport,
    HilbertBasis,
    LatticePoint,
    ProbeReport,
    conjecture_probe,
    decompose,
    equalize_all,
    equalize_two,
    hilbert_basis,
    in_cone,
    profile_index,
    profile_round_robin,
)
from .generators import (
    Graph,
    ScenarioMatrix,
    gen_coloring,
    gen_maxcut,
    gen_partition3,
    gen_random,
    gen_unsplittable,
    is_unsplittable,
    matrix_to_instance,
    partition3_tight_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
