"""GM: interpolated rule at the observation's reference point, then mismatch handling.

Stage 1 builds the intermediate rule A^i -> B^i by cut-wise blending of the
flanking sets after aligning their reference points.  Stage 2 maps B^i onto
the conclusion: each half-support of B^i is rescaled by the ratio between
the observation's and A^i's half-supports, and the membership difference
between the observation and A^i, read at matching relative positions, is
added to the rescaled consequent.
"""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..errors import DegenerateGeometry
from ..sets import TOL, FuzzySet, is_cnf, make_set, membership
from ._base import Problem, anchored, blend, geometric_mean


def intermediate_rule(p: Problem) -> tuple[list[FuzzySet], FuzzySet, list[float]]:
    """Stage 1: A^i per dimension and B^i, anchored at the observation's reference points."""
    lv = p.levels
    lam = p.lambda_core
    ra1, ra2, rao = p.rps(p.A1), p.rps(p.A2), p.rps(p.obs.sets)
    ai, lams = [], []
    for k in range(p.n):
        gap = abs(ra2[k] - ra1[k])
        lk = p.clamp01(abs(rao[k] - ra1[k]) / gap, f"lambda_{k + 1}") if gap > TOL else lam
        lams.append(lk)
        ai.append(blend([p.A1[k], p.A2[k]], [1 - lk, lk], lv, p.cfg.rp_mode, rao[k], f"A^i_{k + 1}"))
    rb1, rb2 = p.rp(p.B1), p.rp(p.B2)
    bi = blend([p.B1, p.B2], [1 - lam, lam], lv, p.cfg.rp_mode, rb1 + lam * (rb2 - rb1), "B^i")
    return ai, bi, lams


def halves(s: FuzzySet, rp: float) -> tuple[float, float]:
    return rp - float(s.xs[0]), float(s.xs[-1]) - rp


def half_scale(num: float, den: float) -> float:
    if den <= TOL:
        if num <= TOL:
            return 1.0
        raise DegenerateGeometry("interpolated antecedent has a collapsed half-support")
    return num / den


def scales(p: Problem, ai: list[FuzzySet]) -> tuple[float, float]:
    """TFR rates: geometric mean over dimensions of the half-support ratios."""
    sl, sr = [], []
    for k in range(p.n):
        r = p.rp(p.obs.sets[k])
        lo, ro = halves(p.obs.sets[k], r)
        li, ri = halves(ai[k], r)
        sl.append(half_scale(lo, li))
        sr.append(half_scale(ro, ri))
    return geometric_mean(sl), geometric_mean(sr)


def relative_knots(s: FuzzySet, rp: float) -> np.ndarray:
    lh, rh = halves(s, rp)
    xs = s.xs
    out = []
    if lh > TOL:
        out.extend((xs[xs <= rp] - rp) / lh)
    if rh > TOL:
        out.extend((xs[xs >= rp] - rp) / rh)
    return np.asarray(out, dtype=float)


def relative_membership(s: FuzzySet, rp: float, t: np.ndarray) -> np.ndarray:
    lh, rh = halves(s, rp)
    x = np.where(t < 0, rp + t * lh, rp + t * rh)
    return membership(s, x)


def gm(p: Problem) -> Conclusion:
    ai, bi, lams = intermediate_rule(p)
    s_l, s_r = scales(p, ai)
    rb = p.rp(bi)
    bl, br = halves(bi, rb)
    out_l, out_r = s_l * bl, s_r * br
    rao = p.rps(p.obs.sets)
    knots = [np.array([-1.0, 0.0, 1.0]), relative_knots(bi, rb)]
    for k in range(p.n):
        knots.append(relative_knots(p.obs.sets[k], rao[k]))
        knots.append(relative_knots(ai[k], rao[k]))
    t = np.unique(np.clip(np.concatenate(knots), -1.0, 1.0))

    def value(tt):
        delta = np.zeros_like(tt)
        for k in range(p.n):
            delta += relative_membership(p.obs.sets[k], rao[k], tt) - relative_membership(ai[k], rao[k], tt)
        return relative_membership(bi, rb, tt) + delta / p.n

    v = value(t)
    # add the crossings of the clip bounds so clipping stays piecewise linear
    extra = []
    for c in (0.0, 1.0):
        a, b = v[:-1] - c, v[1:] - c
        cross = np.flatnonzero(a * b < 0)
        extra.extend(t[cross] + (t[cross + 1] - t[cross]) * a[cross] / (a[cross] - b[cross]))
    if extra:
        t = np.unique(np.concatenate([t, extra]))
        v = value(t)
    v = np.clip(v, 0.0, 1.0)
    if out_l <= TOL:
        keep = (t >= 0) | (t == -1.0)
        t, v = t[keep], v[keep]
    if out_r <= TOL:
        keep = (t <= 0) | (t == 1.0)
        t, v = t[keep], v[keep]
    y = np.where(t < 0, rb + t * out_l, rb + t * out_r)
    pts = list(zip(y.tolist(), v.tolist()))
    # a collapsed half leaves a zero point stacked on the peak
    if len(pts) > 1 and pts[0][0] == pts[1][0] and pts[0][1] <= pts[1][1]:
        pts.pop(0)
    if len(pts) > 1 and pts[-1][0] == pts[-2][0] and pts[-1][1] <= pts[-2][1]:
        pts.pop()
    shape = make_set(pts, "B*")
    if is_cnf(shape).ok:
        shape = anchored(shape, rb, p.cfg.rp_mode)
    else:
        p.notes.append("mismatch correction produced a set that is not convex and normal")
    return Conclusion(MethodId.GM, shape=shape,
                      weights=InterpolationWeights(lambda_core=p.lambda_core))
