"""Rules, partitions, observations, flanking-rule selection and set distances."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidRuleBase, NoFlankingRules
from .sets import (
    TOL,
    FuzzySet,
    alpha_cuts,
    breakpoint_levels,
    is_cnf,
    less_than,
    reference_point,
    same_set,
)


@dataclass(frozen=True)
class LinguisticPartition:
    dimension_name: str
    range: tuple[float, float]
    terms: tuple[FuzzySet, ...]

    def __post_init__(self):
        object.__setattr__(self, "range", (float(self.range[0]), float(self.range[1])))
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def width(self) -> float:
        return self.range[1] - self.range[0]


@dataclass(frozen=True)
class Rule:
    """``antecedents`` and ``consequent`` are 0-based term indices."""

    antecedents: tuple[int, ...]
    consequent: int
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(int(i) for i in self.antecedents))


@dataclass(frozen=True)
class RuleBase:
    inputs: tuple[LinguisticPartition, ...]
    output: LinguisticPartition
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        for r in self.rules:
            if len(r.antecedents) != len(self.inputs):
                raise DimensionMismatch(
                    f"rule {r} has {len(r.antecedents)} antecedents for {len(self.inputs)} inputs")
            for k, i in enumerate(r.antecedents):
                if not 0 <= i < len(self.inputs[k].terms):
                    raise InvalidRuleBase(f"antecedent index {i + 1} invalid in input {k + 1}")
            if not 0 <= r.consequent < len(self.output.terms):
                raise InvalidRuleBase(f"consequent index {r.consequent + 1} invalid")

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    def antecedent(self, rule: int | Rule, dim: int) -> FuzzySet:
        r = self.rules[rule] if isinstance(rule, int) else rule
        return self.inputs[dim].terms[r.antecedents[dim]]

    def antecedents(self, rule: int | Rule) -> tuple[FuzzySet, ...]:
        return tuple(self.antecedent(rule, k) for k in range(self.n_inputs))

    def consequent(self, rule: int | Rule) -> FuzzySet:
        r = self.rules[rule] if isinstance(rule, int) else rule
        return self.output.terms[r.consequent]

    def all_sets(self) -> list[FuzzySet]:
        out = [t for p in self.inputs for t in p.terms]
        out.extend(self.output.terms)
        return out


@dataclass(frozen=True)
class Observation:
    sets: tuple[FuzzySet, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, k: int) -> FuzzySet:
        return self.sets[k]


@dataclass(frozen=True)
class FlankingPair:
    lower: int
    upper: int
    ordered: bool = True  # False when chosen by the reference-point fallback

    @property
    def is_match(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class DistancePair:
    d_lower: float
    d_upper: float


@dataclass
class ValidationReport:
    cnf_violations: list[str] = field(default_factory=list)
    ordering_violations: list[str] = field(default_factory=list)
    duplicate_antecedents: list[str] = field(default_factory=list)
    other: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.cnf_violations or self.ordering_violations
                    or self.duplicate_antecedents or self.other)

    def lines(self) -> list[str]:
        out = []
        for name in ("cnf_violations", "ordering_violations", "duplicate_antecedents", "other"):
            out.extend(f"{name}: {msg}" for msg in getattr(self, name))
        return out


def default_levels(rb: RuleBase, obs: Observation | None = None) -> np.ndarray:
    sets = rb.all_sets() + (list(obs.sets) if obs is not None else [])
    return breakpoint_levels(*sets)


def validate_rulebase(rb: RuleBase, levels: Sequence[float] | None = None) -> ValidationReport:
    rep = ValidationReport()
    lv = default_levels(rb) if levels is None else np.asarray(levels, dtype=float)
    parts = [(f"input {k + 1}", p) for k, p in enumerate(rb.inputs)] + [("output", rb.output)]
    cnf_ok: dict[int, bool] = {}
    for where, p in parts:
        lo, hi = p.range
        if not lo < hi:
            rep.other.append(f"{where}: empty range [{lo:g} {hi:g}]")
        for j, t in enumerate(p.terms):
            c = is_cnf(t)
            cnf_ok[id(t)] = c.ok
            if not c.ok:
                flags = [n for n in ("normal", "convex") if not getattr(c, n)]
                rep.cnf_violations.append(f"{where} term {j + 1} {t.label!r} is not {'/'.join(flags)}")
            if t.xs[0] < lo - TOL or t.xs[-1] > hi + TOL:
                rep.other.append(f"{where} term {j + 1} {t.label!r} leaves range [{lo:g} {hi:g}]")
    if len(rb.rules) < 2:
        rep.other.append(f"rule base has {len(rb.rules)} rule(s); at least 2 required")
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(rb.rules):
        if r.antecedents in seen:
            rep.duplicate_antecedents.append(
                f"rules {seen[r.antecedents] + 1} and {i + 1} share antecedents {[a + 1 for a in r.antecedents]}")
        else:
            seen[r.antecedents] = i
    # ordering between the antecedents of distinct rules, per dimension
    for k in range(rb.n_inputs):
        used = sorted({r.antecedents[k] for r in rb.rules})
        terms = [(j, rb.inputs[k].terms[j]) for j in used if cnf_ok[id(rb.inputs[k].terms[j])]]
        for (ja, a), (jb, b) in zip(terms, terms[1:]):
            if not (less_than(a, b, lv) or less_than(b, a, lv)):
                rep.ordering_violations.append(
                    f"input {k + 1}: terms {ja + 1} and {jb + 1} are not strictly ordered")
    return rep


def _cut_arrays(sets: Sequence[FuzzySet], alpha):
    inf = np.empty(len(sets))
    sup = np.empty(len(sets))
    for k, s in enumerate(sets):
        i, u = alpha_cuts(s, [alpha])
        inf[k], sup[k] = i[0], u[0]
    return inf, sup


def fuzzy_distance(a: Sequence[FuzzySet], b: Sequence[FuzzySet], alpha: float = 0.0,
                   kind: str = "euclidean-endpoints", rp_mode: str = "core-mid") -> DistancePair:
    """Distance between two set vectors, aggregated over dimensions.

    ``euclidean-endpoints`` gives separate lower/upper endpoint distances;
    ``center`` and ``reference-point`` give the same value in both slots.
    """
    if isinstance(a, Observation):
        a = a.sets
    if isinstance(b, Observation):
        b = b.sets
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} vs {len(b)} dimensions")
    if kind == "euclidean-endpoints":
        ia, sa = _cut_arrays(a, alpha)
        ib, sb = _cut_arrays(b, alpha)
        return DistancePair(float(np.sqrt(np.sum((ia - ib) ** 2))), float(np.sqrt(np.sum((sa - sb) ** 2))))
    if kind == "center":
        ia, sa = _cut_arrays(a, alpha)
        ib, sb = _cut_arrays(b, alpha)
        d = float(np.sqrt(np.sum(((ia + sa) / 2 - (ib + sb) / 2) ** 2)))
        return DistancePair(d, d)
    if kind == "reference-point":
        d = math.sqrt(sum((reference_point(x, rp_mode) - reference_point(y, rp_mode)) ** 2 for x, y in zip(a, b)))
        return DistancePair(d, d)
    raise ValueError(f"unknown distance kind {kind!r}")


def _check_observation(rb: RuleBase, obs: Observation) -> None:
    if len(obs) != rb.n_inputs:
        raise DimensionMismatch(f"observation has {len(obs)} dimension(s), rule base expects {rb.n_inputs}")


def matching_rule(rb: RuleBase, obs: Observation) -> int | None:
    _check_observation(rb, obs)
    for i, r in enumerate(rb.rules):
        if all(same_set(rb.antecedent(r, k), obs[k]) for k in range(rb.n_inputs)):
            return i
    return None


def select_flanking(rb: RuleBase, obs: Observation, levels: Sequence[float] | None = None,
                    rp_mode: str = "core-mid") -> FlankingPair:
    """Pick the two rules whose antecedents bracket the observation.

    Rules ordered strictly below (above) the observation in every dimension
    are the lower (upper) candidates; the closest candidate by aggregated
    reference-point distance wins.  When no rule pair brackets the
    observation in every dimension, sides are decided by the sign of the
    range-normalised reference-point offset summed over dimensions.
    """
    _check_observation(rb, obs)
    hit = matching_rule(rb, obs)
    if hit is not None:
        return FlankingPair(hit, hit)
    lv = default_levels(rb, obs) if levels is None else np.asarray(levels, dtype=float)
    n = rb.n_inputs
    obs_rp = np.array([reference_point(s, rp_mode) for s in obs.sets])
    widths = np.array([p.width for p in rb.inputs])

    def key(i: int) -> tuple:
        rp = np.array([reference_point(rb.antecedent(i, k), rp_mode) for k in range(n)])
        return (float(np.sqrt(np.sum((rp - obs_rp) ** 2))), rb.rules[i].antecedents)

    below, above = [], []
    for i in range(len(rb.rules)):
        ants = rb.antecedents(i)
        if all(less_than(ants[k], obs[k], lv) for k in range(n)):
            below.append(i)
        elif all(less_than(obs[k], ants[k], lv) for k in range(n)):
            above.append(i)
    if below and above:
        return FlankingPair(min(below, key=key), min(above, key=key))

    below, above = [], []
    for i in range(len(rb.rules)):
        rp = np.array([reference_point(rb.antecedent(i, k), rp_mode) for k in range(n)])
        side = float(np.sum((rp - obs_rp) / widths))
        if side < -TOL:
            below.append(i)
        elif side > TOL:
            above.append(i)
    if not below or not above:
        raise NoFlankingRules("observation lies outside the antecedent hull (extrapolation is not supported)")
    return FlankingPair(min(below, key=key), min(above, key=key), ordered=False)
