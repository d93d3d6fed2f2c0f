"""Alpha-cut engines: KH, stabilised KH and VKK.

All three work level by level and return the conclusion as an alpha family,
which can represent abnormal (inverted or non-nested) results.
"""
from __future__ import annotations

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..sets import TOL, AlphaCut
from ._base import Problem, cuts, geometric_mean


def _cut_matrix(sets, levels):
    inf = np.empty((len(sets), len(levels)))
    sup = np.empty_like(inf)
    for k, s in enumerate(sets):
        inf[k], sup[k] = cuts(s, levels)
    return inf, sup


def _family(levels, inf, sup):
    return tuple(AlphaCut(float(a), float(i), float(u)) for a, i, u in zip(levels, inf, sup))


def _inverse_distance(d1, d2, b1, b2, literal=False):
    """Endpoint of the conclusion given its distances to the two flanking antecedents."""
    tot = d1 + d2
    safe = np.where(tot > 0, tot, 1.0)
    if literal:
        out = (d1 * b1 + d2 * b2) / safe
    else:
        out = (d2 * b1 + d1 * b2) / safe
    out = np.where(d1 <= 0, b1, out)
    return np.where((d2 <= 0) & (d1 > 0), b2, out)


def kh(p: Problem) -> Conclusion:
    lv = p.levels
    i1, s1 = _cut_matrix(p.A1, lv)
    i2, s2 = _cut_matrix(p.A2, lv)
    io, so = _cut_matrix(p.obs.sets, lv)
    ib1, sb1 = cuts(p.B1, lv)
    ib2, sb2 = cuts(p.B2, lv)
    dl1 = np.sqrt(np.sum((io - i1) ** 2, axis=0))
    dl2 = np.sqrt(np.sum((i2 - io) ** 2, axis=0))
    du1 = np.sqrt(np.sum((so - s1) ** 2, axis=0))
    du2 = np.sqrt(np.sum((s2 - so) ** 2, axis=0))
    literal = p.cfg.paper_literal_kh
    inf = _inverse_distance(dl1, dl2, ib1, ib2, literal)
    sup = _inverse_distance(du1, du2, sb1, sb2, literal)
    if literal:
        p.notes.append("printed (transposed) distance weights in use")
    top = -1
    weights = InterpolationWeights(
        lambda_left=float(dl1[top] / (dl1[top] + dl2[top])) if dl1[top] + dl2[top] > 0 else 0.0,
        lambda_right=float(du1[top] / (du1[top] + du2[top])) if du1[top] + du2[top] > 0 else 0.0,
    )
    return Conclusion(MethodId.KH, alpha_family=_family(lv, inf, sup), weights=weights)


def kh_stabilized(p: Problem) -> Conclusion:
    """Every rule contributes with weight ``1 / d**N``, N the number of inputs."""
    lv = p.levels
    rb = p.rb
    io, so = _cut_matrix(p.obs.sets, lv)
    m = len(rb.rules)
    dl = np.empty((m, len(lv)))
    du = np.empty_like(dl)
    bi = np.empty_like(dl)
    bs = np.empty_like(dl)
    for r in range(m):
        ia, sa = _cut_matrix(rb.antecedents(r), lv)
        dl[r] = np.sqrt(np.sum((io - ia) ** 2, axis=0))
        du[r] = np.sqrt(np.sum((so - sa) ** 2, axis=0))
        bi[r], bs[r] = cuts(rb.consequent(r), lv)
    power = p.n
    inf = _stabilized(dl, bi, power)
    sup = _stabilized(du, bs, power)
    w = 1.0 / np.maximum(dl[:, -1], TOL) ** power
    weights = InterpolationWeights(rule_weights=tuple(float(x) for x in w / w.sum()))
    return Conclusion(MethodId.KH_STAB, alpha_family=_family(lv, inf, sup), weights=weights)


def _stabilized(d, b, power):
    zero = d <= 0
    with np.errstate(divide="ignore"):
        w = np.where(zero, 0.0, 1.0 / np.where(zero, 1.0, d) ** power)
    out = np.sum(w * b, axis=0) / np.sum(w, axis=0).clip(min=np.finfo(float).tiny)
    hit = zero.any(axis=0)
    if hit.any():
        exact = np.sum(np.where(zero, b, 0.0), axis=0) / np.maximum(zero.sum(axis=0), 1)
        out = np.where(hit, exact, out)
    return out


def vkk(p: Problem) -> Conclusion:
    """Centre and relative width interpolation, level by level.

    Widths are carried as ratios to the geometric mean antecedent width; at
    levels where a flanking antecedent has zero width the ratio is undefined
    and absolute widths are interpolated instead.
    """
    lv = p.levels
    i1, s1 = _cut_matrix(p.A1, lv)
    i2, s2 = _cut_matrix(p.A2, lv)
    io, so = _cut_matrix(p.obs.sets, lv)
    ib1, sb1 = cuts(p.B1, lv)
    ib2, sb2 = cuts(p.B2, lv)
    if p.cfg.vkk_distance == "center":
        c1, c2, co = (i1 + s1) / 2, (i2 + s2) / 2, (io + so) / 2
    elif p.cfg.vkk_distance == "reference-point":
        c1 = np.repeat(p.rps(p.A1)[:, None], len(lv), axis=1)
        c2 = np.repeat(p.rps(p.A2)[:, None], len(lv), axis=1)
        co = np.repeat(p.rps(p.obs.sets)[:, None], len(lv), axis=1)
    else:
        raise ValueError(f"unsupported VKK distance {p.cfg.vkk_distance!r}")
    d1 = np.sqrt(np.sum((co - c1) ** 2, axis=0))
    d2 = np.sqrt(np.sum((c2 - co) ** 2, axis=0))
    # normalising by d1 + d2 keeps the weights affine off the A1-A2 line
    d12 = d1 + d2
    d12 = np.where(d12 > 0, d12, 1.0)
    cb1, cb2 = (ib1 + sb1) / 2, (ib2 + sb2) / 2
    wb1, wb2 = sb1 - ib1, sb2 - ib2
    center = (d2 * cb1 + d1 * cb2) / d12
    wa1 = np.array([geometric_mean(col) for col in (s1 - i1).T])
    wa2 = np.array([geometric_mean(col) for col in (s2 - i2).T])
    wao = np.array([geometric_mean(col) for col in (so - io).T])
    scale = np.maximum(np.max(np.abs(np.concatenate([i1, s1, i2, s2]))), 1.0)
    rel = (wa1 > TOL * scale) & (wa2 > TOL * scale)
    safe1 = np.where(rel, wa1, 1.0)
    safe2 = np.where(rel, wa2, 1.0)
    width_rel = wao * (d2 * wb1 / safe1 + d1 * wb2 / safe2) / d12
    width_abs = (d2 * wb1 + d1 * wb2) / d12
    width = np.where(rel, width_rel, width_abs)
    inf = center - width / 2
    sup = center + width / 2
    lam = float(d1[-1] / (d1[-1] + d2[-1])) if d1[-1] + d2[-1] > 0 else 0.0
    return Conclusion(MethodId.VKK, alpha_family=_family(lv, inf, sup),
                      weights=InterpolationWeights(lambda_core=lam))
