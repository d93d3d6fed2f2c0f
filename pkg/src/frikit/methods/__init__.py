"""The ten interpolation engines behind :func:`interpolate`."""
from __future__ import annotations

from typing import Callable

from ..conclusion import Conclusion, InterpolationConfig, MethodId
from ..errors import NotCnf
from ..rulebase import FlankingPair, Observation, RuleBase, select_flanking
from ..sets import AlphaCut, alpha_cuts, is_cnf
from ._base import Problem
from .alpha import kh, kh_stabilized, vkk
from .crf import crf
from .fripoc import fripoc
from .gm import gm
from .imul import imul
from .lesfri import lesfri
from .maci import maci
from .scale_move import scale_move

ENGINES: dict[MethodId, Callable[[Problem], Conclusion]] = {
    MethodId.KH: kh,
    MethodId.KH_STAB: kh_stabilized,
    MethodId.VKK: vkk,
    MethodId.MACI: maci,
    MethodId.CRF: crf,
    MethodId.IMUL: imul,
    MethodId.GM: gm,
    MethodId.FRIPOC: fripoc,
    MethodId.LESFRI: lesfri,
    MethodId.SCALE_MOVE: scale_move,
}


def _matched(method: MethodId, p: Problem) -> Conclusion:
    b = p.B1
    notes = (f"observation matches rule {p.pair.lower + 1}",)
    if method.alpha_based:
        inf, sup = alpha_cuts(b, p.levels)
        fam = tuple(AlphaCut(float(a), float(i), float(u)) for a, i, u in zip(p.levels, inf, sup))
        return Conclusion(method, alpha_family=fam, notes=notes)
    return Conclusion(method, shape=b, notes=notes)


def interpolate(method: str | MethodId, rb: RuleBase, obs: Observation,
                cfg: InterpolationConfig | None = None,
                pair: FlankingPair | None = None) -> Conclusion:
    """Run one interpolation method.

    ``pair`` overrides flanking-rule selection; when it names a single rule
    twice the matched consequent is returned unchanged.
    """
    m = MethodId.parse(method)
    cfg = cfg or InterpolationConfig()
    if not isinstance(obs, Observation):
        obs = Observation(tuple(obs))
    for k, s in enumerate(obs.sets):
        if not is_cnf(s).ok:
            raise NotCnf(f"observation in input {k + 1} is not convex and normal")
    if pair is None:
        pair = select_flanking(rb, obs, rp_mode=cfg.rp_mode)
    p = Problem(rb, obs, cfg, pair)
    if pair.is_match:
        out = _matched(m, p)
    else:
        out = ENGINES[m](p)
        if not pair.ordered:
            p.notes.append("flanking rules chosen by reference-point distance")
    notes = tuple(out.notes) + tuple(p.notes)
    return Conclusion(out.method, out.shape, out.alpha_family, out.weights, notes,
                      (pair.lower, pair.upper))


__all__ = ["ENGINES", "interpolate", "Problem"]
