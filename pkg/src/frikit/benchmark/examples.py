"""Seeded generators for the seven benchmark skeletons."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..rulebase import LinguisticPartition, Observation, Rule, RuleBase, select_flanking
from ..sets import FuzzySet, less_than, singleton, trapezoid, triangle

TRI, TRAP, SINGLE = "triangular", "trapezoidal", "singleton"


@dataclass(frozen=True)
class Skeleton:
    example_id: int
    dims: int
    antecedent: str
    consequent: str
    observation: str
    n_terms: int


SKELETONS = {
    1: Skeleton(1, 1, TRI, TRI, TRI, 2),
    2: Skeleton(2, 1, TRI, TRI, TRI, 4),
    3: Skeleton(3, 1, TRI, TRAP, TRAP, 4),
    4: Skeleton(4, 1, TRAP, TRAP, SINGLE, 4),
    5: Skeleton(5, 1, TRI, TRI, SINGLE, 4),
    6: Skeleton(6, 3, TRI, TRAP, TRI, 3),
    7: Skeleton(7, 3, TRI, TRAP, SINGLE, 3),
}

RANGE = (0.0, 10.0)


@dataclass(frozen=True)
class Sampling:
    """Parameter ranges, as fractions of a partition cell or of the free gap."""

    support: tuple[float, float] = (0.45, 0.85)
    margin: float = 0.04
    peak: tuple[float, float] = (0.3, 0.7)
    obs_width: tuple[float, float] = (0.3, 0.9)


FIXED = Sampling()
WIDE = Sampling(support=(0.2, 0.94), margin=0.02, peak=(0.05, 0.95), obs_width=(0.05, 1.0))


@dataclass(frozen=True)
class BenchInstance:
    example_id: int
    rb: RuleBase
    obs: Observation
    provenance: str
    seed: int
    iteration: Optional[int] = None

    @property
    def skeleton(self) -> Skeleton:
        return SKELETONS[self.example_id]


def _term(rng: np.random.Generator, kind: str, lo: float, hi: float, s: Sampling, label: str) -> FuzzySet:
    cell = hi - lo
    length = rng.uniform(*s.support) * cell
    start = lo + s.margin * cell + rng.uniform(0.0, max(cell * (1 - 2 * s.margin) - length, 0.0))
    end = start + length
    if kind == TRI:
        return triangle(start, start + rng.uniform(*s.peak) * length, end, label)
    a, b = np.sort(rng.uniform(*s.peak, size=2))
    if b - a < 0.05:
        a, b = a - 0.025, b + 0.025
    return trapezoid(start, start + a * length, start + b * length, end, label)


def _partition(rng, kind, n, s, name, prefix) -> LinguisticPartition:
    lo, hi = RANGE
    edges = np.linspace(lo, hi, n + 1)
    terms = tuple(_term(rng, kind, edges[j], edges[j + 1], s, f"{prefix}_{{{j + 1}}}") for j in range(n))
    return LinguisticPartition(name, RANGE, terms)


def _observation(rng, kind, left: FuzzySet, right: FuzzySet, s: Sampling, label: str) -> FuzzySet | None:
    if kind == SINGLE:
        a, b = left.xs[-1], right.xs[0]
        return singleton(a + rng.uniform(0.05, 0.95) * (b - a), label)
    lo = float(left.xs[left.mus.argmax()])
    hi = float(right.xs[right.mus.argmax()])
    span = hi - lo
    if span <= 0:
        return None
    c = lo + rng.uniform(0.2, 0.8) * span
    half = rng.uniform(*s.obs_width) * span / 2
    lf = c - half * rng.uniform(0.3, 1.0)
    rf = c + half * rng.uniform(0.3, 1.0)
    if kind == TRI:
        return triangle(lf, c, rf, label)
    w = half * rng.uniform(0.05, 0.4)
    return trapezoid(lf, c - w / 2, c + w / 2, rf, label)


def sample_instance(example_id: int, rng: np.random.Generator, s: Sampling = FIXED,
                    max_tries: int = 200):
    """Draw one instance of a skeleton; ``None`` when no flanked observation was found."""
    sk = SKELETONS[example_id]
    n = sk.n_terms
    for _ in range(max_tries):
        inputs = tuple(_partition(rng, sk.antecedent, n, s, f"x{k + 1}", f"A_{k + 1};") for k in range(sk.dims))
        output = _partition(rng, sk.consequent, n, s, "y", "B")
        rules = tuple(Rule((j,) * sk.dims, j) for j in range(n))
        rb = RuleBase(inputs, output, rules)
        gap = int(rng.integers(0, n - 1))
        obs_sets = []
        for k in range(sk.dims):
            left, right = inputs[k].terms[gap], inputs[k].terms[gap + 1]
            o = _observation(rng, sk.observation, left, right, s, f"A*_{k + 1}")
            if o is None or not (less_than(left, o, (0.0, 1.0)) and less_than(o, right, (0.0, 1.0))):
                break
            obs_sets.append(o)
        else:
            obs = Observation(tuple(obs_sets))
            pair = select_flanking(rb, obs)
            if pair.ordered and (pair.lower, pair.upper) == (gap, gap + 1):
                return rb, obs
    return None


def build_example(example_id: int, seed: int = 42) -> BenchInstance:
    """Fixed-seed instance of a skeleton: the same seed always gives the same instance."""
    if example_id not in SKELETONS:
        raise ValueError(f"example id must be 1..7, got {example_id!r}")
    rng = np.random.default_rng([int(seed), example_id])
    out = sample_instance(example_id, rng, FIXED)
    if out is None:  # pragma: no cover - the sampler always succeeds for these ranges
        raise RuntimeError(f"could not build example {example_id} for seed {seed}")
    rb, obs = out
    return BenchInstance(example_id, rb, obs, "fixed-seed", int(seed))


def instance_at(example_id: int, seed: int, iteration: int) -> BenchInstance | None:
    """The ``iteration``-th sample of the search stream for ``(seed, example_id)``."""
    rng = np.random.default_rng([int(seed), example_id, int(iteration)])
    out = sample_instance(example_id, rng, WIDE, max_tries=1)
    if out is None:
        return None
    return BenchInstance(example_id, out[0], out[1], "searched", int(seed), int(iteration))
