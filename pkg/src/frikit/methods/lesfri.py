"""LESFRI: least-squares set interpolation and cut-wise single-rule reasoning."""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..sets import alpha_cuts
from ._base import Problem, nested_or_family, shepard
from .fripoc import consequent_position


def feat_ls(p: Problem, terms, at: float) -> tuple[np.ndarray, np.ndarray]:
    """Cut endpoints of the set at reference point ``at`` fitted to the shifted terms.

    Each term, moved onto ``at``, is a sample of the unknown set; minimising
    the weighted squared endpoint residuals (weights ``1/d**p``) gives the
    weighted mean of the samples.
    """
    lv = p.levels
    rps = p.rps(terms)
    _, w = shepard(np.abs(rps - at), rps, p.cfg.power_p)
    samples = []
    for s, r in zip(terms, rps):
        i, u = alpha_cuts(s, lv)
        samples.append(np.concatenate([i - r, u - r]))
    fit = np.average(np.array(samples), axis=0, weights=w)
    n = len(lv)
    return at + fit[:n], at + fit[n:]


def lesfri(p: Problem) -> Conclusion:
    lv = p.levels
    rao = p.rps(p.obs.sets)
    dl = np.zeros(len(lv))
    du = np.zeros(len(lv))
    for k, part in enumerate(p.rb.inputs):
        ii, ui = feat_ls(p, part.terms, rao[k])
        io, uo = alpha_cuts(p.obs.sets[k], lv)
        dl += (io - ii) / part.width
        du += (uo - ui) / part.width
    scale = p.rb.output.width / p.n
    rb, rule_w = consequent_position(p)
    ib, ub = feat_ls(p, p.rb.output.terms, rb)
    inf = ib + dl * scale
    sup = ub + du * scale
    weights = InterpolationWeights(rule_weights=tuple(float(x) for x in rule_w))
    return nested_or_family(MethodId.LESFRI, lv, inf, sup, weights)
