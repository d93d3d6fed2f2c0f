"""Method identifiers, configuration and the conclusion value type."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .sets import TOL, AlphaCut, FuzzySet, alpha_cuts, from_cuts, is_cnf, make_set


class MethodId(str, enum.Enum):
    KH = "KH"
    KH_STAB = "KH_STAB"
    VKK = "VKK"
    MACI = "MACI"
    CRF = "CRF"
    IMUL = "IMUL"
    GM = "GM"
    FRIPOC = "FRIPOC"
    LESFRI = "LESFRI"
    SCALE_MOVE = "SCALE_MOVE"

    @classmethod
    def parse(cls, name: "str | MethodId") -> "MethodId":
        if isinstance(name, MethodId):
            return name
        key = str(name).strip().upper().replace("-", "_")
        aliases = {"KH_STABILIZED": "KH_STAB", "SCALEMOVE": "SCALE_MOVE", "SCALE&MOVE": "SCALE_MOVE"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown method {name!r}; expected one of {[m.value for m in cls]}") from None

    @property
    def alpha_based(self) -> bool:
        return self in ALPHA_METHODS


ALPHA_METHODS = frozenset({MethodId.KH, MethodId.KH_STAB, MethodId.VKK})
ALL_METHODS = tuple(MethodId)


@dataclass(frozen=True)
class InterpolationConfig:
    """Knobs shared by all methods.

    ``alpha_levels=None`` means the union of the breakpoint levels of every
    set involved (always containing 0 and 1).  ``aspect=None`` scales the
    membership axis by the width of each dimension's range.
    """

    alpha_levels: Optional[tuple[float, ...]] = None
    dense_levels: int = 1001
    rp_mode: str = "core-mid"
    polar_thetas: int = 181  # 0 keeps only the vertex angles of the sets involved
    power_p: float = 2.0
    aspect: Optional[float] = None
    paper_literal_kh: bool = False
    imul_core_term: str = "difference"  # or "sum", the printed form
    vkk_distance: str = "center"

    def __post_init__(self):
        if self.alpha_levels is not None:
            lv = tuple(sorted(float(a) for a in self.alpha_levels))
            if not lv or lv[0] != 0.0 or lv[-1] != 1.0:
                raise ValueError("alpha_levels must be sorted and contain 0 and 1")
            if any(not 0.0 <= a <= 1.0 for a in lv):
                raise ValueError("alpha_levels must lie in [0, 1]")
            object.__setattr__(self, "alpha_levels", lv)
        if self.dense_levels < 2:
            raise ValueError("dense_levels must be at least 2")
        if self.imul_core_term not in ("difference", "sum"):
            raise ValueError("imul_core_term is 'difference' or 'sum'")

    def with_(self, **kw) -> "InterpolationConfig":
        return replace(self, **kw)

    def dense_grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.dense_levels)


@dataclass(frozen=True)
class InterpolationWeights:
    lambda_core: Optional[float] = None
    lambda_left: Optional[float] = None
    lambda_right: Optional[float] = None
    lambda_rep: Optional[float] = None
    rule_weights: Optional[tuple[float, ...]] = None

    def as_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in self.__dict__.items() if v is not None}


@dataclass(frozen=True)
class FuzzinessDescriptor:
    fl: float
    fu: float
    core_len: float
    gap_lower: float = 0.0
    gap_upper: float = 0.0


@dataclass(frozen=True)
class Conclusion:
    method: MethodId
    shape: Optional[FuzzySet] = None
    alpha_family: Optional[tuple[AlphaCut, ...]] = None
    weights: InterpolationWeights = field(default_factory=InterpolationWeights)
    notes: tuple[str, ...] = ()
    rules: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.shape is None) == (self.alpha_family is None):
            raise ValueError("exactly one of shape / alpha_family must be given")

    @property
    def levels(self) -> np.ndarray:
        if self.alpha_family is not None:
            return np.array([c.alpha for c in self.alpha_family])
        lv = np.unique(np.concatenate([[0.0, 1.0], self.shape.mus]))
        return lv

    def cuts(self, levels: Sequence[float] | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Cut endpoints at ``levels`` (NaN where a shape has no cut).

        Alpha families are linearly interpolated between their own levels.
        """
        if self.alpha_family is not None:
            own = self.levels
            inf = np.array([c.inf for c in self.alpha_family])
            sup = np.array([c.sup for c in self.alpha_family])
            if levels is None:
                return inf, sup
            lv = np.asarray(levels, dtype=float)
            return np.interp(lv, own, inf), np.interp(lv, own, sup)
        lv = self.levels if levels is None else np.asarray(levels, dtype=float)
        return shape_cuts(self.shape, lv)

    def to_set(self, label: str = "B*") -> FuzzySet:
        """Breakpoint form; raises for alpha families that are not nested intervals."""
        if self.shape is not None:
            return self.shape
        lv = self.levels
        inf, sup = self.cuts()
        if np.any(inf > sup + TOL) or np.any(np.diff(inf) < -TOL) or np.any(np.diff(sup) > TOL):
            raise ValueError("alpha family is abnormal and has no breakpoint form")
        return from_cuts(lv, inf, np.maximum(sup, inf), label)

    def geometry(self) -> tuple[float, float, float, float]:
        """(lf, lc, rc, rf) read off the cuts at 0 and 1."""
        inf, sup = self.cuts([0.0, 1.0])
        return float(inf[0]), float(inf[1]), float(sup[1]), float(sup[0])

    def describe(self) -> dict:
        out = {"method": self.method.value, "weights": self.weights.as_dict(), "notes": list(self.notes)}
        if self.rules is not None:
            out["rules"] = [self.rules[0] + 1, self.rules[1] + 1]
        if self.shape is not None:
            out["shape"] = [[p.x, p.mu] for p in self.shape.points]
        else:
            out["alpha_family"] = [[c.alpha, c.inf, c.sup] for c in self.alpha_family]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Conclusion":
        """Inverse of :meth:`describe`."""
        rules = d.get("rules")
        common = dict(weights=InterpolationWeights(**{k: tuple(v) if k == "rule_weights" else v
                                                      for k, v in d.get("weights", {}).items()}),
                      notes=tuple(d.get("notes", ())),
                      rules=None if rules is None else (rules[0] - 1, rules[1] - 1))
        m = MethodId.parse(d["method"])
        if "shape" in d:
            return cls(m, shape=make_set([tuple(pt) for pt in d["shape"]], "B*"), **common)
        fam = tuple(AlphaCut(float(a), float(i), float(u)) for a, i, u in d["alpha_family"])
        return cls(m, alpha_family=fam, **common)


def shape_cuts(s: FuzzySet, levels) -> tuple[np.ndarray, np.ndarray]:
    """Outermost cut endpoints of an arbitrary (possibly non-convex) shape."""
    lv = np.atleast_1d(np.asarray(levels, dtype=float))
    if is_cnf(s).convex:
        ok = lv <= s.height + TOL
        inf = np.full(lv.shape, np.nan)
        sup = np.full(lv.shape, np.nan)
        if ok.any():
            i, u = alpha_cuts(s, np.minimum(lv[ok], s.height))
            inf[ok], sup[ok] = i, u
        return inf, sup
    xs, mus = s.xs, s.mus
    inf = np.full(lv.shape, np.inf)
    sup = np.full(lv.shape, -np.inf)
    for k in range(len(xs)):
        reach = mus[k] >= lv - TOL
        inf = np.where(reach, np.minimum(inf, xs[k]), inf)
        sup = np.where(reach, np.maximum(sup, xs[k]), sup)
    for k in range(len(xs) - 1):
        x0, x1, m0, m1 = xs[k], xs[k + 1], mus[k], mus[k + 1]
        if m1 == m0:
            continue
        t = (lv - m0) / (m1 - m0)
        inside = (t >= 0) & (t <= 1)
        xc = x0 + np.clip(t, 0, 1) * (x1 - x0)
        inf = np.where(inside, np.minimum(inf, xc), inf)
        sup = np.where(inside, np.maximum(sup, xc), sup)
    lv0 = lv <= 0
    inf[lv0] = xs[0]
    sup[lv0] = xs[-1]
    inf[~np.isfinite(inf)] = np.nan
    sup[~np.isfinite(sup)] = np.nan
    return inf, sup
