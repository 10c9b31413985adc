"""Shared seeded instance suites for the module tests and the acceptance run."""

from scensched.generators import gen_random


def weighted_suite(count=300):
    """General instances: n <= 8, m <= 3, K <= 3, weights <= 6."""
    return [
        gen_random(3 + i % 6, 2 + i % 2, 1 + i % 3, w_max=6, density=0.6, seed=1000 + i)
        for i in range(count)
    ]


def unit_suite(count=300):
    """Unit-weight instances: n <= 10, m <= 4, K <= 3."""
    return [
        gen_random(4 + i % 7, 2 + i % 3, 1 + i % 3, w_max=1, density=0.6, seed=2000 + i)
        for i in range(count)
    ]


def two_scenario_suite(count=200):
    """K = 2 instances: n <= 10, m <= 4, weights <= 9."""
    return [
        gen_random(4 + i % 7, 2 + i % 3, 2, w_max=9, density=0.5, seed=3000 + i)
        for i in range(count)
    ]


def k2_unit_suite(count=300):
    """Unit-weight K <= 2 instances: n <= 8, m <= 3."""
    return [
        gen_random(4 + i % 5, 2 + i % 2, 1 + i % 2, w_max=1, density=0.6, seed=4000 + i)
        for i in range(count)
    ]


def small_suite(count=60):
    """Instances with n <= 7 for full-enumeration properties."""
    return [
        gen_random(3 + i % 5, 2 + i % 2, 1 + i % 3, w_max=5, density=0.6, seed=5000 + i)
        for i in range(count)
    ]
