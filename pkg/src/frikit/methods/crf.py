"""CRF: core position by distance ratios, flanks by conserved relative fuzziness."""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..errors import DegenerateGeometry, MethodInapplicable
from ..sets import TOL, characteristic_points, trapezoid
from ._base import Problem, geometric_mean, is_trapezoidal, norm, ratio


def require_trapezoidal(p: Problem, name: str) -> None:
    sets = list(p.A1) + list(p.A2) + list(p.obs.sets) + [p.B1, p.B2]
    for s in sets:
        if not is_trapezoidal(s):
            raise MethodInapplicable(f"{name} needs trapezoidal sets; {s.label or s!r} is not",
                                     set=s.label)


def flank_ratio(obs_flank: float, blended: float) -> float:
    """Observation flank over the blended antecedent flank (1 when both vanish)."""
    if blended <= TOL:
        if obs_flank <= TOL:
            return 1.0
        raise DegenerateGeometry("antecedent flank vanishes while the observation's does not")
    return obs_flank / blended


def crf(p: Problem) -> Conclusion:
    require_trapezoidal(p, "CRF")
    c1 = [characteristic_points(s) for s in p.A1]
    c2 = [characteristic_points(s) for s in p.A2]
    co = [characteristic_points(s) for s in p.obs.sets]
    widths = np.array([q.width for q in p.rb.inputs])
    mid = lambda c: (c.lc + c.rc) / 2  # noqa: E731
    m1 = np.array([mid(c) for c in c1])
    m2 = np.array([mid(c) for c in c2])
    mo = np.array([mid(c) for c in co])
    lam = p.clamp01(ratio(norm((mo - m1) / widths), norm((m2 - m1) / widths)), "lambda_core")
    lam_k = []
    for k in range(p.n):
        gap = abs(m2[k] - m1[k])
        lam_k.append(p.clamp01(abs(mo[k] - m1[k]) / gap, f"lambda_{k + 1}") if gap > TOL else lam)
    gl, gu = [], []
    for k in range(p.n):
        a1, a2, ao, lk = c1[k], c2[k], co[k], lam_k[k]
        gl.append(flank_ratio(ao.lc - ao.lf, (1 - lk) * (a1.lc - a1.lf) + lk * (a2.lc - a2.lf)))
        gu.append(flank_ratio(ao.rf - ao.rc, (1 - lk) * (a1.rf - a1.rc) + lk * (a2.rf - a2.rc)))
    b1 = characteristic_points(p.B1)
    b2 = characteristic_points(p.B2)
    center = mid(b1) + lam * (mid(b2) - mid(b1))
    core = (1 - lam) * (b1.rc - b1.lc) + lam * (b2.rc - b2.lc)
    fl = ((1 - lam) * (b1.lc - b1.lf) + lam * (b2.lc - b2.lf)) * geometric_mean(gl)
    fu = ((1 - lam) * (b1.rf - b1.rc) + lam * (b2.rf - b2.rc)) * geometric_mean(gu)
    lc, rc = center - core / 2, center + core / 2
    shape = trapezoid(lc - fl, lc, rc, rc + fu, "B*")
    return Conclusion(MethodId.CRF, shape=shape, weights=InterpolationWeights(lambda_core=lam))
