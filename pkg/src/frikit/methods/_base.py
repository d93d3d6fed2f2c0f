"""Shared plumbing for the interpolation engines."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from ..conclusion import Conclusion, InterpolationConfig, InterpolationWeights, MethodId
from ..errors import DegenerateGeometry
from ..rulebase import FlankingPair, Observation, RuleBase, default_levels
from ..sets import TOL, AlphaCut, FuzzySet, alpha_cuts, from_cuts, reference_point


@dataclass
class Problem:
    rb: RuleBase
    obs: Observation
    cfg: InterpolationConfig
    pair: FlankingPair
    notes: list[str] = field(default_factory=list)

    @cached_property
    def levels(self) -> np.ndarray:
        if self.cfg.alpha_levels is not None:
            return np.asarray(self.cfg.alpha_levels, dtype=float)
        return default_levels(self.rb, self.obs)

    @property
    def n(self) -> int:
        return self.rb.n_inputs

    @cached_property
    def A1(self) -> tuple[FuzzySet, ...]:
        return self.rb.antecedents(self.pair.lower)

    @cached_property
    def A2(self) -> tuple[FuzzySet, ...]:
        return self.rb.antecedents(self.pair.upper)

    @property
    def B1(self) -> FuzzySet:
        return self.rb.consequent(self.pair.lower)

    @property
    def B2(self) -> FuzzySet:
        return self.rb.consequent(self.pair.upper)

    def rp(self, s: FuzzySet) -> float:
        return reference_point(s, self.cfg.rp_mode)

    def rps(self, sets: Sequence[FuzzySet]) -> np.ndarray:
        return np.array([self.rp(s) for s in sets])

    def aspect_in(self, k: int) -> float:
        return self.cfg.aspect if self.cfg.aspect is not None else self.rb.inputs[k].width

    @property
    def aspect_out(self) -> float:
        return self.cfg.aspect if self.cfg.aspect is not None else self.rb.output.width

    @cached_property
    def lambda_core(self) -> float:
        """Relative position of the observation between the flanking reference points."""
        r1, r2, rs = self.rps(self.A1), self.rps(self.A2), self.rps(self.obs.sets)
        return self.clamp01(ratio(norm(rs - r1), norm(r2 - r1)), "lambda_core")

    def clamp01(self, value: float, name: str) -> float:
        if value < 0.0 or value > 1.0:
            self.notes.append(f"{name}={value:.6g} clamped to [0, 1]")
            return min(1.0, max(0.0, value))
        return value


def norm(v) -> float:
    return float(np.sqrt(np.sum(np.square(v))))


def ratio(num: float, den: float) -> float:
    if den <= TOL:
        raise DegenerateGeometry("flanking antecedents share their reference point")
    return num / den


def cuts(s: FuzzySet, levels) -> tuple[np.ndarray, np.ndarray]:
    return alpha_cuts(s, levels)


def anchored(s: FuzzySet, target: float, rp_mode: str) -> FuzzySet:
    """Translate ``s`` so that its reference point sits at ``target``."""
    return s.shifted(target - reference_point(s, rp_mode))


def blend(sets: Sequence[FuzzySet], weights: Sequence[float], levels, rp_mode: str,
          at: float, label: str = "") -> FuzzySet:
    """Cut-wise weighted mean of sets after moving their reference points to ``at``."""
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    inf = np.zeros(len(levels))
    sup = np.zeros(len(levels))
    for wk, s in zip(w, sets):
        if wk == 0.0:
            continue
        i, u = alpha_cuts(s, levels)
        r = reference_point(s, rp_mode)
        inf += wk * (i - r)
        sup += wk * (u - r)
    out = from_cuts(levels, inf, np.maximum(sup, inf), label)
    return anchored(out, at, rp_mode)


def shepard(distances: np.ndarray, values: np.ndarray, power: float = 2.0) -> tuple[float, np.ndarray]:
    """Inverse-distance weighted mean; an exact hit returns the hit's value."""
    d = np.asarray(distances, dtype=float)
    zero = d <= TOL
    if zero.any():
        w = zero.astype(float)
    else:
        w = 1.0 / d ** power
    w = w / w.sum()
    return float(np.dot(w, values)), w


def geometric_mean(values) -> float:
    v = np.asarray(values, dtype=float)
    if np.any(v <= 0):
        return 0.0
    return float(math.exp(np.mean(np.log(v))))


def is_trapezoidal(s: FuzzySet) -> bool:
    """True when the set is fully described by its four characteristic points."""
    inner = s.mus[(s.mus > TOL) & (s.mus < 1 - TOL)]
    return inner.size == 0


def nested(inf, sup, tol: float = 1e-9) -> bool:
    inf, sup = np.asarray(inf, float), np.asarray(sup, float)
    scale = max(1.0, float(np.max(np.abs(np.concatenate([inf, sup])))))
    t = tol * scale
    return bool(np.all(inf <= sup + t) and np.all(np.diff(inf) >= -t) and np.all(np.diff(sup) <= t))


def nested_or_family(method: MethodId, levels, inf, sup, weights: InterpolationWeights,
                     notes=(), label: str = "B*") -> Conclusion:
    """Shape conclusion when the cuts nest, alpha family otherwise."""
    inf = np.asarray(inf, dtype=float)
    sup = np.asarray(sup, dtype=float)
    notes = list(notes)
    if nested(inf, sup):
        inf = np.maximum.accumulate(inf)
        sup = np.minimum.accumulate(sup)
        sup = np.maximum(sup, inf)
        shape = from_cuts(levels, inf, sup, label)
        return Conclusion(method, shape=shape, weights=weights, notes=tuple(notes))
    notes.append("cuts do not nest; conclusion kept as an alpha family")
    fam = tuple(AlphaCut(float(a), float(i), float(u)) for a, i, u in zip(levels, inf, sup))
    return Conclusion(method, alpha_family=fam, weights=weights, notes=tuple(notes))
