"""Shared fixtures and brute-force oracles for the test suite."""

import itertools
import random

import pytest

from epsmult import _kernels
from epsmult.ideal_core import MonomialIdeal


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the jit kernels outside any timed section
    _kernels.warmup()


@pytest.fixture
def rng():
    return random.Random(20240817)


def box_points(bounds):
    """All lattice points p with 0 <= p_i <= bounds_i (inclusive)."""
    return itertools.product(*(range(b + 1) for b in bounds))


def brute_members(gens, bounds):
    """Membership oracle: points of the box divisible by some generator."""
    out = set()
    for p in box_points(bounds):
        if any(all(g[i] <= p[i] for i in range(len(p))) for g in gens):
            out.add(p)
    return out


def brute_socle(ideal: MonomialIdeal, bounds):
    """Points of sat(I) \\ I inside the (inclusive) box, by raw scanning."""
    sat = ideal.saturate()
    return {p for p in box_points(bounds)
            if sat.contains(p) and not ideal.contains(p)}


def random_proper_ideal(rng, d, max_exp, max_gens):
    while True:
        gens = []
        for _ in range(rng.randint(1, max_gens)):
            g = tuple(rng.randint(0, max_exp) for _ in range(d))
            if any(g):
                gens.append(g)
        if gens:
            return MonomialIdeal.from_gens(d, gens)
