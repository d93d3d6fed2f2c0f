"""Scikit-learn style front end: fit a rule base, predict conclusions."""
from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .analysis import AbnormalityReport, detect_abnormality, run_dense
from .conclusion import Conclusion, InterpolationConfig, MethodId
from .fis import RuleBaseDocument
from .rulebase import Observation, RuleBase, validate_rulebase
from .sets import FuzzySet

RP_MODES = ("core-mid", "support-mid", "cog")


def uniform_levels(n: Optional[int]) -> Optional[tuple[float, ...]]:
    """``n`` evenly spaced alpha levels including 0 and 1; ``None`` keeps breakpoint levels."""
    if n is None:
        return None
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"levels must be an integer >= 2, got {n!r}")
    return tuple(np.linspace(0.0, 1.0, int(n)).tolist())


def check_rule_base(X) -> RuleBase:
    """Accept a :class:`RuleBase` or a parsed document and reject invalid bases."""
    if isinstance(X, RuleBaseDocument):
        X = X.rule_base()
    if not isinstance(X, RuleBase):
        raise TypeError(f"expected a RuleBase or RuleBaseDocument, got {type(X).__name__}")
    report = validate_rulebase(X)
    if not report.ok:
        raise ValueError("invalid rule base: " + "; ".join(report.lines()))
    return X


def check_observations(X, n_inputs: int) -> list[Observation]:
    """Normalise one observation, a tuple of sets or a list of either into a list."""
    if isinstance(X, Observation):
        items = [X]
    elif isinstance(X, FuzzySet):
        items = [Observation((X,))]
    elif isinstance(X, (list, tuple)) and X and all(isinstance(s, FuzzySet) for s in X):
        items = [Observation(tuple(X))]
    elif isinstance(X, (list, tuple)):
        items = [x if isinstance(x, Observation) else Observation(tuple(x)) for x in X]
    else:
        raise TypeError(f"cannot read observations from {type(X).__name__}")
    for k, o in enumerate(items):
        if len(o) != n_inputs:
            raise ValueError(f"observation {k} has {len(o)} inputs, the rule base has {n_inputs}")
    return items


class FuzzyRuleInterpolator(BaseEstimator):
    """Interpolate conclusions from a sparse rule base with one of the ten methods.

    Parameters
    ----------
    method : str
        Method token, case-insensitive (``"KH"``, ``"SCALE_MOVE"``, ...).
    levels : int or None
        Number of uniform alpha levels; ``None`` uses every breakpoint level.
    rp_mode : str
        Reference point: ``"core-mid"``, ``"support-mid"`` or ``"cog"``.
    polar_thetas : int
        Uniform ray count for FRIPOC; 0 keeps vertex angles only.
    power_p : float
        Shepard exponent for FRIPOC and LESFRI.
    paper_literal_kh : bool
        Use the printed KH weights instead of the inverse-distance form.

    Examples
    --------
    >>> from frikit.sets import triangle
    >>> from frikit.rulebase import LinguisticPartition, Rule, RuleBase
    >>> x = LinguisticPartition("x", (0, 10), (triangle(0, 1, 2), triangle(8, 9, 10)))
    >>> y = LinguisticPartition("y", (0, 10), (triangle(0, 1, 2), triangle(8, 9, 10)))
    >>> rb = RuleBase((x,), y, (Rule((0,), 0), Rule((1,), 1)))
    >>> est = FuzzyRuleInterpolator(method="KH").fit(rb)
    >>> est.predict(triangle(4, 5, 6))[0].geometry()
    (4.0, 5.0, 5.0, 6.0)
    """

    def __init__(self, method: str = "KH", levels: Optional[int] = None, rp_mode: str = "core-mid",
                 polar_thetas: int = 181, power_p: float = 2.0, paper_literal_kh: bool = False):
        self.method = method
        self.levels = levels
        self.rp_mode = rp_mode
        self.polar_thetas = polar_thetas
        self.power_p = power_p
        self.paper_literal_kh = paper_literal_kh

    def _config(self) -> InterpolationConfig:
        if self.rp_mode not in RP_MODES:
            raise ValueError(f"rp_mode must be one of {RP_MODES}, got {self.rp_mode!r}")
        if self.polar_thetas < 0:
            raise ValueError("polar_thetas must be >= 0")
        if not self.power_p > 0:
            raise ValueError("power_p must be positive")
        return InterpolationConfig(alpha_levels=uniform_levels(self.levels), rp_mode=self.rp_mode,
                                   polar_thetas=int(self.polar_thetas), power_p=float(self.power_p),
                                   paper_literal_kh=bool(self.paper_literal_kh))

    def fit(self, X, y=None):
        """Store the rule base ``X``; ``y`` is ignored because consequents live in the rules."""
        self.method_ = MethodId.parse(self.method)
        self.config_ = self._config()
        self.rule_base_ = check_rule_base(X)
        self.n_inputs_ = self.rule_base_.n_inputs
        return self

    def predict(self, X) -> list[Conclusion]:
        """One conclusion per observation."""
        from .methods import interpolate

        check_is_fitted(self, "rule_base_")
        return [interpolate(self.method_, self.rule_base_, o, self.config_)
                for o in check_observations(X, self.n_inputs_)]

    def abnormality(self, X) -> list[AbnormalityReport]:
        """Abnormality verdicts on the dense alpha sweep of each observation."""
        check_is_fitted(self, "rule_base_")
        return [detect_abnormality(run_dense(self.method_, self.rule_base_, o, self.config_), self.config_)
                for o in check_observations(X, self.n_inputs_)]
