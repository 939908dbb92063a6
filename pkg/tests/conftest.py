"""Shared fixtures: packaged domains, random generators, brute-force helpers."""

import json
import random
from importlib.resources import files
from itertools import combinations

import pytest

from triex.context import (FormalContext, TriadicContext, subposition,
                           triadic_from_json)
from triex.implications import l_closure


def _packaged(name: str) -> dict:
    return json.loads(files("triex.data").joinpath(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def transit() -> TriadicContext:
    return triadic_from_json(_packaged("transit.json"))


@pytest.fixture(scope="session")
def tiny() -> TriadicContext:
    return triadic_from_json(_packaged("tiny.json"))


def random_triadic(rng: random.Random) -> TriadicContext:
    n_g = rng.randint(0, 6)
    n_m = rng.randint(1, 5)
    n_b = rng.randint(1, 3)
    objs = [f"g{i}" for i in range(n_g)]
    attrs = [f"m{i}" for i in range(n_m)]
    conds = [f"c{i}" for i in range(n_b)]
    density = rng.uniform(0.2, 0.8)
    inc = [(g, m, b) for g in objs for m in attrs for b in conds
           if rng.random() < density]
    return TriadicContext(objs, attrs, conds, inc)


def random_dyadic(rng: random.Random) -> FormalContext:
    n_g = rng.randint(0, 8)
    n_m = rng.randint(1, 6)
    objs = [f"g{i}" for i in range(n_g)]
    attrs = [f"m{i}" for i in range(n_m)]
    density = rng.uniform(0.2, 0.8)
    inc = [(g, m) for g in objs for m in attrs if rng.random() < density]
    return FormalContext(objs, attrs, inc)


def powerset(items):
    items = list(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def assert_theory_matches(domain: TriadicContext, kc) -> None:
    """Entailment from the recorded table equals the subposition theory, per subset."""
    for size in range(1, len(domain.conditions) + 1):
        for d in combinations(domain.conditions, size):
            rules = kc.implications_for(d)
            stacked = subposition([domain.slice(c) for c in d])
            for p in powerset(domain.attributes):
                assert l_closure(rules, p) == stacked.closure(p), (
                    f"theory mismatch for {sorted(d)} at premise {sorted(p)}")
