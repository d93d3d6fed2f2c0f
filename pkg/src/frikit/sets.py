"""Convex normal piecewise-linear fuzzy sets.

A :class:`FuzzySet` is an ordered sequence of ``(x, mu)`` breakpoints with
linear membership between them and zero membership outside the first and the
last abscissa.  Vertical edges are written as two breakpoints sharing ``x``;
membership at such an abscissa takes the larger value, so alpha-cuts are
closed intervals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlphaOutOfRange,
    DegenerateArea,
    EmptySet,
    MembershipOutOfRange,
    NotCnf,
    NotConvex,
    UnorderedAbscissae,
)

#: absolute tolerance for structural predicates (plateaus, strictness, equality)
TOL = 1e-12

RP_MODES = ("core-mid", "support-mid", "cog")


@dataclass(frozen=True)
class Breakpoint:
    x: float
    mu: float


@dataclass(frozen=True)
class AlphaCut:
    alpha: float
    inf: float
    sup: float


@dataclass(frozen=True)
class CharacteristicPoints:
    lf: float
    lc: float
    rc: float
    rf: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.lf, self.lc, self.rc, self.rf)


@dataclass(frozen=True)
class PolarCut:
    theta: float
    rho: float
    hit: bool = True


@dataclass(frozen=True)
class CnfReport:
    normal: bool
    convex: bool
    bounded: bool

    @property
    def ok(self) -> bool:
        return self.normal and self.convex and self.bounded


@dataclass(frozen=True)
class FuzzySet:
    """Piecewise-linear fuzzy set; build it with :func:`make_set` or the shape helpers."""

    points: tuple[Breakpoint, ...]
    label: str = field(default="", compare=False)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points], dtype=float)

    @cached_property
    def mus(self) -> np.ndarray:
        return np.array([p.mu for p in self.points], dtype=float)

    @property
    def height(self) -> float:
        return float(self.mus.max())

    @property
    def support(self) -> tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    @property
    def is_singleton(self) -> bool:
        return self.xs[-1] - self.xs[0] <= TOL and self.height >= 1.0 - TOL

    @cached_property
    def _peak(self) -> tuple[int, int]:
        """First and last index of the maximal plateau (convex sets only)."""
        top = self.mus.max()
        idx = np.flatnonzero(self.mus >= top - TOL)
        return int(idx[0]), int(idx[-1])

    def __call__(self, x):
        return membership(self, x)

    def shifted(self, dx: float) -> "FuzzySet":
        return FuzzySet(tuple(Breakpoint(p.x + dx, p.mu) for p in self.points), self.label)

    def scaled(self, factor: float, origin: float = 0.0) -> "FuzzySet":
        pts = tuple(Breakpoint(origin + factor * (p.x - origin), p.mu) for p in self.points)
        if factor < 0:
            pts = tuple(reversed(pts))
        return FuzzySet(pts, self.label)

    def with_label(self, label: str) -> "FuzzySet":
        return FuzzySet(self.points, label)

    def __repr__(self) -> str:
        body = " ".join(f"({p.x:g},{p.mu:g})" for p in self.points)
        return f"FuzzySet({self.label!r}: {body})"


def make_set(points: Iterable, label: str = "") -> FuzzySet:
    """Validate breakpoints and build a set.

    ``points`` may hold :class:`Breakpoint` objects or ``(x, mu)`` pairs.
    Consecutive duplicates (same ``x`` and ``mu``) are collapsed.
    """
    pts = [p if isinstance(p, Breakpoint) else Breakpoint(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise EmptySet("a fuzzy set needs at least one breakpoint")
    for p in pts:
        if not math.isfinite(p.x):
            raise UnorderedAbscissae(f"non-finite abscissa {p.x!r}")
        if not (0.0 <= p.mu <= 1.0) or math.isnan(p.mu):
            raise MembershipOutOfRange(f"membership {p.mu!r} outside [0, 1]")
    for a, b in zip(pts, pts[1:]):
        if b.x < a.x:
            raise UnorderedAbscissae(f"abscissae decrease: {a.x!r} -> {b.x!r}")
    out = [pts[0]]
    for p in pts[1:]:
        if p.x == out[-1].x and p.mu == out[-1].mu:
            continue
        out.append(p)
    return FuzzySet(tuple(out), label)


def from_arrays(xs: Sequence[float], mus: Sequence[float], label: str = "") -> FuzzySet:
    if len(xs) != len(mus):
        raise ValueError("xs and mus differ in length")
    return make_set(zip(xs, mus), label)


def triangle(a: float, b: float, c: float, label: str = "") -> FuzzySet:
    return make_set([(a, 0.0), (b, 1.0), (c, 0.0)], label)


def trapezoid(a: float, b: float, c: float, d: float, label: str = "") -> FuzzySet:
    return make_set([(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)], label)


def singleton(x: float, label: str = "") -> FuzzySet:
    return make_set([(x, 1.0)], label)


def membership(s: FuzzySet, x):
    """Membership degree of ``x`` (scalar or array)."""
    xs, mus = s.xs, s.mus
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros(xa.shape, dtype=float)
    lo = np.searchsorted(xs, xa, side="left")
    hi = np.searchsorted(xs, xa, side="right")
    hit = hi > lo
    for k in np.flatnonzero(hit):
        out[k] = mus[lo[k]:hi[k]].max()
    inner = ~hit & (lo > 0) & (lo < len(xs))
    if inner.any():
        k = lo[inner]
        x0, x1 = xs[k - 1], xs[k]
        m0, m1 = mus[k - 1], mus[k]
        out[inner] = m0 + (m1 - m0) * (xa[inner] - x0) / (x1 - x0)
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def is_cnf(s: FuzzySet, tol: float = TOL) -> CnfReport:
    mus = s.mus
    normal = bool(abs(mus.max() - 1.0) <= tol)
    d = np.diff(mus)
    # unimodal: no rise after the first fall
    falling = d < -tol
    rising = d > tol
    convex = True
    if falling.any():
        first_fall = int(np.flatnonzero(falling)[0])
        convex = not rising[first_fall:].any()
    bounded = bool(np.all(np.isfinite(s.xs)))
    return CnfReport(normal=normal, convex=convex, bounded=bounded)


def _require_convex(s: FuzzySet) -> None:
    if not is_cnf(s).convex:
        raise NotConvex(f"set {s.label!r} is not convex")


def _require_cnf(s: FuzzySet) -> None:
    rep = is_cnf(s)
    if not rep.convex:
        raise NotCnf(f"set {s.label!r} is not convex")
    if not rep.normal:
        raise NotCnf(f"set {s.label!r} is not normal (height {s.height:g})")


def alpha_cuts(s: FuzzySet, levels) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised infima and suprema of the cuts of a convex set at ``levels``."""
    _require_convex(s)
    lv = np.asarray(levels, dtype=float)
    if np.any(lv < -TOL) or np.any(lv > s.height + TOL):
        raise AlphaOutOfRange(f"levels outside [0, {s.height:g}]")
    lv = np.clip(lv, 0.0, s.height)
    xs, mus = s.xs, s.mus
    p0, p1 = s._peak
    inf = _flank_inverse(xs[: p0 + 1], mus[: p0 + 1], lv)
    sup = -_flank_inverse(-xs[p1:][::-1], mus[p1:][::-1], lv)
    return inf, sup


def _flank_inverse(xs: np.ndarray, mus: np.ndarray, lv: np.ndarray) -> np.ndarray:
    # mus is non-decreasing; smallest x with membership >= level
    mus = np.maximum.accumulate(mus)
    k = np.searchsorted(mus, lv - TOL, side="left")
    k = np.clip(k, 0, len(xs) - 1)
    out = xs[k].copy()
    mid = (k > 0) & (lv > 0)
    if mid.any():
        kk = k[mid]
        m0, m1 = mus[kk - 1], mus[kk]
        x0, x1 = xs[kk - 1], xs[kk]
        span = m1 - m0
        frac = np.where(span > TOL, (lv[mid] - m0) / np.where(span > TOL, span, 1.0), 1.0)
        frac = np.clip(frac, 0.0, 1.0)
        # exact breakpoints at the ends so cuts at breakpoint levels never cross by an ulp
        out[mid] = np.where(frac >= 1.0, x1, x0 + frac * (x1 - x0))
    out[lv <= 0] = xs[0]
    return out


def alpha_cut(s: FuzzySet, alpha: float) -> AlphaCut:
    """Closed interval of points with membership at least ``alpha``.

    The cut at ``alpha = 0`` is the closed support.
    """
    if not (0.0 <= alpha <= 1.0):
        raise AlphaOutOfRange(f"alpha={alpha!r} outside [0, 1]")
    inf, sup = alpha_cuts(s, [alpha])
    return AlphaCut(float(alpha), float(inf[0]), float(sup[0]))


def characteristic_points(s: FuzzySet) -> CharacteristicPoints:
    _require_cnf(s)
    inf, sup = alpha_cuts(s, [0.0, 1.0])
    return CharacteristicPoints(float(inf[0]), float(inf[1]), float(sup[1]), float(sup[0]))


def representative_value(s: FuzzySet) -> float:
    """Centre of gravity of the area under the membership curve."""
    xs, mus = s.xs, s.mus
    if xs[-1] - xs[0] <= TOL:
        if s.height >= 1.0 - TOL:
            return float(xs[0])
        raise DegenerateArea(f"set {s.label!r} has zero-length support and is not a singleton")
    x0, x1 = xs[:-1], xs[1:]
    m0, m1 = mus[:-1], mus[1:]
    w = x1 - x0
    area = float(np.sum(w * (m0 + m1) / 2.0))
    if area <= TOL * max(1.0, xs[-1] - xs[0]):
        raise DegenerateArea(f"set {s.label!r} encloses no area")
    moment = float(np.sum(w / 6.0 * (x0 * (2 * m0 + m1) + x1 * (m0 + 2 * m1))))
    return moment / area


def reference_point(s: FuzzySet, mode: str = "core-mid") -> float:
    if mode == "core-mid":
        cp = characteristic_points(s)
        return (cp.lc + cp.rc) / 2.0
    if mode == "support-mid":
        _require_cnf(s)
        return (s.xs[0] + s.xs[-1]) / 2.0
    if mode == "cog":
        _require_cnf(s)
        return representative_value(s)
    raise ValueError(f"unknown reference point mode {mode!r}; expected one of {RP_MODES}")


def boundary(s: FuzzySet, aspect: float = 1.0) -> np.ndarray:
    """Graph of the membership function closed down to the baseline, in (x, aspect*mu)."""
    pts = [(p.x, aspect * p.mu) for p in s.points]
    if pts[0][1] > 0:
        pts.insert(0, (pts[0][0], 0.0))
    if pts[-1][1] > 0:
        pts.append((pts[-1][0], 0.0))
    return np.array(pts, dtype=float)


def polar_distances(s: FuzzySet, thetas, aspect: float, center: float) -> tuple[np.ndarray, np.ndarray]:
    """Distance from ``(center, 0)`` to the boundary along each ray.

    Returns ``(rho, hit)``; rays that miss the curve get ``rho = 0`` and
    ``hit = False``.
    """
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    dx, dy = np.cos(th), np.sin(th)
    dx = np.where(np.abs(dx) < 1e-15, 0.0, dx)
    b = boundary(s, aspect)
    b[:, 0] -= center
    rho = np.full(th.shape, -np.inf)
    eps = 1e-12 * max(1.0, float(np.abs(b).max()))
    for (px, py), (qx, qy) in zip(b[:-1], b[1:]):
        ex, ey = qx - px, qy - py
        denom = dx * ey - dy * ex
        par = np.abs(denom) <= eps * max(1.0, math.hypot(ex, ey))
        safe = np.where(par, 1.0, denom)
        t = (px * ey - py * ex) / safe
        u = (px * dy - py * dx) / safe
        ok = ~par & (t >= -eps) & (u >= -1e-12) & (u <= 1 + 1e-12)
        rho = np.where(ok, np.maximum(rho, t), rho)
        # ray running along the segment
        col = par & (np.abs(px * dy - py * dx) <= eps)
        if col.any():
            far = np.maximum(px * dx + py * dy, qx * dx + qy * dy)
            rho = np.where(col & (far >= -eps), np.maximum(rho, far), rho)
    hit = np.isfinite(rho)
    rho = np.where(hit, np.maximum(rho, 0.0), 0.0)
    return rho, hit


def polar_cut(s: FuzzySet, theta: float, aspect: float, center: float | None = None,
              rp_mode: str = "core-mid") -> PolarCut:
    """Polar cut of ``s`` about its reference point in the plane ``(x, aspect*mu)``."""
    if not (0.0 <= theta <= math.pi):
        raise ValueError(f"theta={theta!r} outside [0, pi]")
    if aspect <= 0:
        raise ValueError("aspect must be positive")
    _require_cnf(s)
    c = reference_point(s, rp_mode) if center is None else center
    rho, hit = polar_distances(s, [theta], aspect, c)
    return PolarCut(float(theta), float(rho[0]), bool(hit[0]))


def less_than(a: FuzzySet, b: FuzzySet, levels: Sequence[float] = (0.0, 1.0), tol: float = TOL) -> bool:
    """Strict ordering: both cut endpoints of ``a`` lie left of those of ``b`` at every level."""
    _require_cnf(a)
    _require_cnf(b)
    ia, sa = alpha_cuts(a, levels)
    ib, sb = alpha_cuts(b, levels)
    return bool(np.all(ib - ia > tol) and np.all(sb - sa > tol))


def breakpoint_levels(*sets: FuzzySet) -> np.ndarray:
    """Union of the membership levels of the given sets, always containing 0 and 1."""
    lv = {0.0, 1.0}
    for s in sets:
        lv.update(float(m) for m in s.mus)
    arr = np.array(sorted(lv))
    keep = np.concatenate([[True], np.diff(arr) > TOL])
    return arr[keep]


def membership_deviation(a: FuzzySet, b: FuzzySet) -> float:
    """Largest absolute membership difference between two piecewise-linear sets."""
    grid = np.union1d(a.xs, b.xs)
    if len(grid) > 1:
        w = np.diff(grid)
        probe = np.concatenate([grid, grid[:-1] + 1e-9 * w, grid[1:] - 1e-9 * w])
    else:
        probe = grid
    return float(np.max(np.abs(membership(a, probe) - membership(b, probe))))


def same_set(a: FuzzySet, b: FuzzySet, tol: float = TOL) -> bool:
    if a.points == b.points:
        return True
    return membership_deviation(a, b) <= tol and abs(a.xs[0] - b.xs[0]) <= tol and abs(a.xs[-1] - b.xs[-1]) <= tol


def from_cuts(levels, inf, sup, label: str = "") -> FuzzySet:
    """Rebuild a set from nested cuts listed at increasing levels (last level = 1)."""
    lv = np.asarray(levels, dtype=float)
    left = [(float(x), float(m)) for x, m in zip(inf, lv)]
    right = [(float(x), float(m)) for x, m in zip(sup[::-1], lv[::-1])]
    return make_set(left + right, label)
