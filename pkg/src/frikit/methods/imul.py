"""IMUL: core edges from their own distance ratios, flanks with a fuzziness correction."""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..sets import TOL, characteristic_points, trapezoid
from ._base import Problem, nested_or_family, norm, ratio
from .crf import require_trapezoidal


def imul(p: Problem) -> Conclusion:
    require_trapezoidal(p, "IMUL")
    c1 = [characteristic_points(s) for s in p.A1]
    c2 = [characteristic_points(s) for s in p.A2]
    co = [characteristic_points(s) for s in p.obs.sets]
    b1 = characteristic_points(p.B1)
    b2 = characteristic_points(p.B2)
    lam = p.lambda_core

    def edge_lambda(get, name):
        v1 = np.array([get(c) for c in c1])
        v2 = np.array([get(c) for c in c2])
        vo = np.array([get(c) for c in co])
        return p.clamp01(ratio(norm(vo - v1), norm(v2 - v1)), name)

    lam_l = edge_lambda(lambda c: c.lc, "lambda_left")
    lam_r = edge_lambda(lambda c: c.rc, "lambda_right")
    rb1, rb2 = p.rp(p.B1), p.rp(p.B2)
    tail = rb2 - rb1 if p.cfg.imul_core_term == "difference" else rb2 + rb1
    lcb = (1 - lam_l) * b1.lc + lam_l * b2.lc + (lam - lam_l) * tail
    rcb = (1 - lam_r) * b1.rc + lam_r * b2.rc + (lam - lam_r) * tail

    ra1, ra2 = p.rps(p.A1), p.rps(p.A2)
    gap = np.abs(ra2 - ra1)
    gap = np.where(gap > TOL, gap, np.inf)

    def correction(flank):
        s = np.array([(1 - lam) * flank(a1) + lam * flank(a2) for a1, a2 in zip(c1, c2)])
        s_obs = np.array([flank(a) for a in co])
        return 1.0 + norm((s_obs - s) / gap)

    r_l = (1 - lam) * (b1.lc - b1.lf) + lam * (b2.lc - b2.lf)
    r_r = (1 - lam) * (b1.rf - b1.rc) + lam * (b2.rf - b2.rc)
    fl = r_l * correction(lambda c: c.lc - c.lf)
    fr = r_r * correction(lambda c: c.rf - c.rc)
    weights = InterpolationWeights(lambda_core=lam, lambda_left=lam_l, lambda_right=lam_r)
    notes = [] if p.cfg.imul_core_term == "difference" else ["printed sum form of the core term in use"]
    if lcb <= rcb:
        shape = trapezoid(lcb - fl, lcb, rcb, rcb + fr, "B*")
        return Conclusion(MethodId.IMUL, shape=shape, weights=weights, notes=tuple(notes))
    return nested_or_family(MethodId.IMUL, [0.0, 1.0], [lcb - fl, lcb], [rcb + fr, rcb],
                            weights, notes)
