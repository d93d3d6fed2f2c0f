"""MACI: interpolation in a transformed coordinate space.

Each set is encoded by its reference point and the non-negative steps
between consecutive level endpoints walking outwards from the core.  The
coordinates are interpolated KH-style and decoded, so every conclusion is a
convex normal set.
"""
from __future__ import annotations

import math

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..sets import FuzzySet, from_cuts
from ._base import Problem, anchored, cuts

SQRT2 = math.sqrt(2.0)


def encode(s: FuzzySet, levels, rp: float) -> np.ndarray:
    """[sqrt2*rp, half-core, left steps (top-down)..., right steps (top-down)...]."""
    inf, sup = cuts(s, levels)
    left = np.diff(inf)[::-1]
    right = -np.diff(sup)[::-1]
    return np.concatenate([[SQRT2 * rp, (sup[-1] - inf[-1]) / 2], left, right])


def decode(vec: np.ndarray, levels) -> tuple[float, np.ndarray, np.ndarray]:
    n = len(levels) - 1
    rp = vec[0] / SQRT2
    half = vec[1]
    left = vec[2:2 + n]
    right = vec[2 + n:]
    inf = np.empty(n + 1)
    sup = np.empty(n + 1)
    inf[-1], sup[-1] = -half, half
    inf[:-1] = -half - np.cumsum(left)[::-1]
    sup[:-1] = half + np.cumsum(right)[::-1]
    return rp, inf, sup


def maci(p: Problem) -> Conclusion:
    lv = p.levels
    lam = p.lambda_core
    rp1, rp2, rpo = p.rps(p.A1), p.rps(p.A2), p.rps(p.obs.sets)
    e1 = np.array([encode(s, lv, r) for s, r in zip(p.A1, rp1)])
    e2 = np.array([encode(s, lv, r) for s, r in zip(p.A2, rp2)])
    eo = np.array([encode(s, lv, r) for s, r in zip(p.obs.sets, rpo)])
    d1 = np.sqrt(np.sum((eo - e1) ** 2, axis=0))
    d2 = np.sqrt(np.sum((e2 - eo) ** 2, axis=0))
    tot = d1 + d2
    coord_lam = np.where(tot > 0, d1 / np.where(tot > 0, tot, 1.0), lam)
    coord_lam[0] = lam
    b1 = encode(p.B1, lv, p.rp(p.B1))
    b2 = encode(p.B2, lv, p.rp(p.B2))
    bs = (1 - coord_lam) * b1 + coord_lam * b2
    rb, inf, sup = decode(bs, lv)
    shape = anchored(from_cuts(lv, inf, sup, "B*"), rb, p.cfg.rp_mode)
    return Conclusion(MethodId.MACI, shape=shape, weights=InterpolationWeights(lambda_core=lam))
