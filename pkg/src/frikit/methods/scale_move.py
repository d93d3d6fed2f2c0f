"""Scale and move transformation.

The intermediate rule A' -> B' is a vertex-wise blend of the flanking rules
driven by representative values.  The transformation turning A' into the
observation (support scaling, then vertex moves in support-relative
coordinates) is replayed on B'.  The result is finally placed so that its
representative value obeys the same ratio as the antecedents.
"""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..errors import DegenerateGeometry
from ..sets import TOL, FuzzySet, alpha_cuts, from_cuts, representative_value, singleton
from ._base import Problem, geometric_mean


def vertex_blend(a: FuzzySet, b: FuzzySet, lam: float, levels) -> tuple[np.ndarray, np.ndarray]:
    ia, sa = alpha_cuts(a, levels)
    ib, sb = alpha_cuts(b, levels)
    return (1 - lam) * ia + lam * ib, (1 - lam) * sa + lam * sb


def relative(inf: np.ndarray, sup: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Support width and vertex positions relative to the support."""
    w = sup[0] - inf[0]
    if w <= TOL:
        half = np.full(len(inf), 0.5)
        return 0.0, half, half.copy()
    return w, (inf - inf[0]) / w, (sup - inf[0]) / w


def lambdas(p: Problem) -> tuple[list[float], float]:
    lam = []
    for k in range(p.n):
        r1 = representative_value(p.A1[k])
        r2 = representative_value(p.A2[k])
        ro = representative_value(p.obs.sets[k])
        gap = abs(r2 - r1)
        lam.append(p.clamp01(abs(ro - r1) / gap, f"lambda_rep_{k + 1}") if gap > TOL else 0.5)
    return lam, float(np.mean(lam))


def settle(left: np.ndarray, right: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    """Walk up the levels keeping cuts nested and ordered; report any clamping."""
    left, right = left.copy(), right.copy()
    clamped = False
    left[0], right[0] = 0.0, 1.0
    for j in range(1, len(left)):
        lo, hi = left[j - 1], right[j - 1]
        l_new = min(max(left[j], lo), hi)
        r_new = min(max(right[j], lo), hi)
        if l_new > r_new:
            l_new = r_new = (l_new + r_new) / 2
        if abs(l_new - left[j]) > 1e-12 or abs(r_new - right[j]) > 1e-12:
            clamped = True
        left[j], right[j] = l_new, r_new
    return left, right, clamped


def scale_move(p: Problem) -> Conclusion:
    lv = p.levels
    lam_k, lam_b = lambdas(p)
    ratios, d_left, d_right = [], np.zeros(len(lv)), np.zeros(len(lv))
    for k in range(p.n):
        ia, sa = vertex_blend(p.A1[k], p.A2[k], lam_k[k], lv)
        io, so = alpha_cuts(p.obs.sets[k], lv)
        wa, la, ra = relative(ia, sa)
        wo, lo, ro = relative(io, so)
        if wa <= TOL:
            if wo > TOL:
                raise DegenerateGeometry("intermediate antecedent has zero support")
            ratios.append(1.0)
        else:
            ratios.append(wo / wa)
        if wo > TOL and wa > TOL:
            d_left += lo - la
            d_right += ro - ra
    d_left /= p.n
    d_right /= p.n
    ib, sb = vertex_blend(p.B1, p.B2, lam_b, lv)
    wb, lb, rb = relative(ib, sb)
    width = wb * geometric_mean(ratios)
    target = (1 - lam_b) * representative_value(p.B1) + lam_b * representative_value(p.B2)
    weights = InterpolationWeights(lambda_rep=lam_b)
    if width <= TOL:
        return Conclusion(MethodId.SCALE_MOVE, shape=singleton(target, "B*"), weights=weights)
    left, right, clamped = settle(lb + d_left, rb + d_right)
    notes = ("vertex moves clamped to keep the set convex",) if clamped else ()
    shape = from_cuts(lv, left * width, right * width, "B*")
    shape = shape.shifted(target - representative_value(shape))
    return Conclusion(MethodId.SCALE_MOVE, shape=shape, weights=weights, notes=notes)
