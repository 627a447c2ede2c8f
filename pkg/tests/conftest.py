"""Shared fixtures: a session-wide solution cache so expensive cells are
solved once no matter how many tests touch them."""

import pytest

from chainfo.complexity import assemble_report
from chainfo.measures import assemble_measures
from chainfo.pipeline import SolutionCache, cache_get_or_compute


@pytest.fixture(scope="session")
def cache():
    return SolutionCache()


@pytest.fixture(scope="session")
def cell(cache):
    """cell(state, rc) -> (RadialSolution, MomentumSolution), cached."""

    def get(state, rc):
        return cache_get_or_compute(cache, state, rc)

    return get


@pytest.fixture(scope="session")
def measures(cell):
    """measures(state, rc, alpha=0.6, beta=3.0) -> MeasureSet, cached."""
    memo = {}

    def get(state, rc, alpha=0.6, beta=3.0):
        key = (state, rc, alpha, beta)
        if key not in memo:
            memo[key] = assemble_measures(*cell(state, rc), alpha, beta)
        return memo[key]

    return get


@pytest.fixture(scope="session")
def report(measures):
    """report(state, rc) -> ComplexityReport with b in {2/3, 1}, cached."""
    memo = {}

    def get(state, rc, alpha=0.6, beta=3.0):
        key = (state, rc, alpha, beta)
        if key not in memo:
            memo[key] = assemble_report(measures(state, rc, alpha, beta))
        return memo[key]

    return get
