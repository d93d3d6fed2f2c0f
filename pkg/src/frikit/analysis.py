"""Verdicts on conclusions: abnormality, piecewise linearity and method comparison."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .conclusion import ALL_METHODS, Conclusion, InterpolationConfig, MethodId
from .errors import FriError
from .rulebase import Observation, RuleBase, default_levels
from .sets import TOL, is_cnf

INVERSION = "endpoint-inversion"
NON_NESTED = "non-nested-cuts"
NON_NORMAL = "non-normal"
LINEAR_TOL = 1e-9


@dataclass(frozen=True)
class AbnormalityReport:
    abnormal: bool
    first_violation_alpha: Optional[float] = None
    violation_kind: Optional[str] = None
    max_inversion: float = 0.0
    kinds: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"abnormal": self.abnormal, "first_violation_alpha": self.first_violation_alpha,
                "violation_kind": self.violation_kind, "max_inversion": self.max_inversion,
                "kinds": list(self.kinds)}

    @classmethod
    def from_dict(cls, d: dict) -> "AbnormalityReport":
        return cls(d["abnormal"], d["first_violation_alpha"], d["violation_kind"],
                   d["max_inversion"], tuple(d["kinds"]))


@dataclass(frozen=True)
class LinearityReport:
    piecewise_linear: bool
    max_deviation: float
    worst_alpha: float

    def as_dict(self) -> dict:
        return {"piecewise_linear": self.piecewise_linear, "max_deviation": self.max_deviation,
                "worst_alpha": self.worst_alpha}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearityReport":
        return cls(d["piecewise_linear"], d["max_deviation"], d["worst_alpha"])


def _scale(*arrays) -> float:
    vals = np.concatenate([np.ravel(a) for a in arrays])
    vals = vals[np.isfinite(vals)]
    return max(1.0, float(np.abs(vals).max())) if vals.size else 1.0


def _levels(c: Conclusion, cfg: InterpolationConfig) -> np.ndarray:
    # a family is judged on the levels it was computed at; a shape on a dense grid too
    if c.alpha_family is not None:
        return c.levels
    return np.union1d(c.levels, cfg.dense_grid())


def _superlevel_runs(mus: np.ndarray, alpha: float) -> int:
    above = mus >= alpha - TOL
    return int(np.sum(above[1:] & ~above[:-1]) + above[0])


def detect_abnormality(c: Conclusion, cfg: InterpolationConfig | None = None) -> AbnormalityReport:
    """Scan the conclusion's cuts upwards from 0 for inversions, broken nesting and a low peak."""
    cfg = cfg or InterpolationConfig()
    lv = _levels(c, cfg)
    found: dict[str, float] = {}
    max_inv = 0.0
    if c.shape is not None:
        s = c.shape
        rep = is_cnf(s)
        if not rep.normal:
            over = lv[lv > s.height + TOL]
            found[NON_NORMAL] = float(over[0]) if over.size else 1.0
        if not rep.convex:
            for a in lv[lv > 0]:
                if _superlevel_runs(s.mus, a) > 1:
                    found[NON_NESTED] = float(a)
                    break
    else:
        inf, sup = c.cuts(lv)
        tol = 1e-9 * _scale(inf, sup)
        gap = inf - sup
        bad = np.flatnonzero(gap > tol)
        if bad.size:
            found[INVERSION] = float(lv[bad[0]])
            max_inv = float(gap.max())
        grow = np.flatnonzero((np.diff(inf) < -tol) | (np.diff(sup) > tol))
        if grow.size:
            found[NON_NESTED] = float(lv[grow[0] + 1])
    if not found:
        return AbnormalityReport(False)
    kinds = tuple(k for k in (INVERSION, NON_NESTED, NON_NORMAL) if k in found)
    first = min(kinds, key=lambda k: (found[k], kinds.index(k)))
    return AbnormalityReport(True, found[first], first, max_inv, kinds)


def _cuts_on(c: Conclusion, grid: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return c.cuts(grid)


def breakpoint_config(cfg: InterpolationConfig) -> InterpolationConfig:
    return cfg.with_(alpha_levels=None, polar_thetas=0)


def dense_config(cfg: InterpolationConfig, rb: RuleBase, obs: Observation) -> InterpolationConfig:
    lv = np.union1d(default_levels(rb, obs), cfg.dense_grid())
    return cfg.with_(alpha_levels=tuple(float(a) for a in lv), polar_thetas=cfg.dense_levels)


def run_dense(method, rb: RuleBase, obs: Observation, cfg: InterpolationConfig | None = None) -> Conclusion:
    """Run a method on the breakpoint levels refined by the dense grid."""
    from .methods import interpolate

    cfg = cfg or InterpolationConfig()
    return interpolate(method, rb, obs, dense_config(cfg, rb, obs))


def check_linearity(method, rb: RuleBase, obs: Observation,
                    cfg: InterpolationConfig | None = None) -> LinearityReport:
    """Compare the breakpoint-level conclusion, linearly interpolated, with a dense run."""
    from .methods import interpolate

    cfg = cfg or InterpolationConfig()
    grid = cfg.dense_grid()
    coarse = interpolate(method, rb, obs, breakpoint_config(cfg))
    dense = interpolate(method, rb, obs, dense_config(cfg, rb, obs))
    ia, sa = _cuts_on(coarse, grid)
    ib, sb = _cuts_on(dense, grid)
    dev = np.maximum(_nan_abs(ia - ib, ia, ib), _nan_abs(sa - sb, sa, sb))
    k = int(np.argmax(dev))
    worst = float(dev[k])
    return LinearityReport(worst <= LINEAR_TOL, worst, float(grid[k]))


def _nan_abs(diff, a, b):
    out = np.abs(diff)
    one_missing = np.isnan(a) ^ np.isnan(b)
    out = np.where(np.isnan(a) & np.isnan(b), 0.0, out)
    return np.where(one_missing, np.inf, out)


@dataclass
class MethodRow:
    method: MethodId
    status: str
    abnormal: Optional[bool] = None
    linear: Optional[bool] = None
    geometry: Optional[tuple[float, float, float, float]] = None
    conclusion: Optional[Conclusion] = None
    abnormality: Optional[AbnormalityReport] = None
    linearity: Optional[LinearityReport] = None
    error: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {"method": self.method.value, "status": self.status, "abnormal": self.abnormal,
               "linear": self.linear, "geometry": list(self.geometry) if self.geometry else None}
        if self.conclusion is not None:
            out["conclusion"] = self.conclusion.describe()
        if self.abnormality is not None:
            out["abnormality"] = self.abnormality.as_dict()
        if self.linearity is not None:
            out["linearity"] = self.linearity.as_dict()
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "MethodRow":
        def opt(key, build):
            return None if d.get(key) is None else build(d[key])

        return cls(MethodId.parse(d["method"]), d["status"], d["abnormal"], d["linear"],
                   opt("geometry", tuple), opt("conclusion", Conclusion.from_dict),
                   opt("abnormality", AbnormalityReport.from_dict),
                   opt("linearity", LinearityReport.from_dict), d.get("error"))


@dataclass
class ComparisonMatrix:
    rows: list[MethodRow] = field(default_factory=list)

    def row(self, method) -> MethodRow:
        m = MethodId.parse(method)
        return next(r for r in self.rows if r.method is m)

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonMatrix":
        return cls([MethodRow.from_dict(r) for r in d["rows"]])


def evaluate(method, rb: RuleBase, obs: Observation, cfg: InterpolationConfig | None = None,
             linearity: bool = True) -> MethodRow:
    """Run one method and attach its verdicts; errors become the row status."""
    from .methods import interpolate

    cfg = cfg or InterpolationConfig()
    m = MethodId.parse(method)
    try:
        c = interpolate(m, rb, obs, cfg)
        ab = detect_abnormality(run_dense(m, rb, obs, cfg), cfg)
        lin = check_linearity(m, rb, obs, cfg) if linearity else None
    except FriError as e:
        return MethodRow(m, f"error:{e.code}", error=e.to_dict())
    try:
        geom = c.geometry()
    except Exception:  # pragma: no cover - geometry of a valid conclusion always exists
        geom = None
    return MethodRow(m, "ok", ab.abnormal, None if lin is None else lin.piecewise_linear,
                     geom, c, ab, lin)


def compare_methods(rb: RuleBase, obs: Observation, methods: Iterable | None = None,
                    cfg: InterpolationConfig | None = None, linearity: bool = True) -> ComparisonMatrix:
    """One row per method in method-id order."""
    chosen: Sequence[MethodId] = ALL_METHODS if methods is None else [MethodId.parse(m) for m in methods]
    order = {m: i for i, m in enumerate(ALL_METHODS)}
    chosen = sorted(dict.fromkeys(chosen), key=order.__getitem__)
    return ComparisonMatrix([evaluate(m, rb, obs, cfg, linearity) for m in chosen])
