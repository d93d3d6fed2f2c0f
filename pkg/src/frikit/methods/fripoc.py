"""FRIPOC: polar-cut set interpolation and single-rule reasoning.

Sets are described by the distance from their reference point to the
membership curve along rays at fixed angles, in the plane where the
membership axis is stretched by the dimension's aspect.
"""
from __future__ import annotations

import math

import numpy as np

from ..conclusion import Conclusion, InterpolationWeights, MethodId
from ..sets import TOL, FuzzySet, boundary, make_set, polar_distances
from ._base import Problem, anchored, norm, shepard


def vertex_angles(s: FuzzySet, center: float, aspect: float) -> np.ndarray:
    b = boundary(s, aspect)
    dx, dy = b[:, 0] - center, b[:, 1]
    keep = np.hypot(dx, dy) > TOL
    return np.arctan2(dy[keep], dx[keep])


def theta_grid(p: Problem) -> np.ndarray:
    """Vertex angles of every set involved, plus a uniform grid unless ``polar_thetas`` is 0."""
    parts = [np.array([0.0, math.pi / 2, math.pi])]
    if p.cfg.polar_thetas > 0:
        parts.append(np.linspace(0.0, math.pi, p.cfg.polar_thetas))
    for k, part in enumerate(p.rb.inputs):
        a = p.aspect_in(k)
        for s in list(part.terms) + [p.obs.sets[k]]:
            parts.append(vertex_angles(s, p.rp(s), a))
    for s in p.rb.output.terms:
        parts.append(vertex_angles(s, p.rp(s), p.aspect_out))
    th = np.unique(np.clip(np.concatenate(parts), 0.0, math.pi))
    keep = np.concatenate([[True], np.diff(th) > 1e-13])
    return th[keep]


def rho(s: FuzzySet, thetas, aspect: float, center: float) -> np.ndarray:
    return polar_distances(s, thetas, aspect, center)[0]


def feat_p(p: Problem, terms, at: float, thetas, aspect: float) -> tuple[np.ndarray, np.ndarray]:
    """Polar distances of the set interpolated at reference point ``at`` from a partition."""
    rps = p.rps(terms)
    _, w = shepard(np.abs(rps - at), rps, p.cfg.power_p)
    out = np.zeros(len(thetas))
    for wk, s, r in zip(w, terms, rps):
        if wk > 0:
            out += wk * rho(s, thetas, aspect, r)
    return out, w


def consequent_position(p: Problem) -> tuple[float, np.ndarray]:
    """Reference point of B^i: inverse squared-distance weighting over all rules."""
    rao = p.rps(p.obs.sets)
    d = np.array([norm(p.rps(p.rb.antecedents(i)) - rao) for i in range(len(p.rb.rules))])
    rbs = np.array([p.rp(p.rb.consequent(i)) for i in range(len(p.rb.rules))])
    return shepard(d, rbs, 2.0)


def polar_to_set(thetas, rhos, center: float, aspect: float, label: str = "B*") -> FuzzySet:
    """Boundary points of a polar description, sorted into a membership function."""
    r = np.maximum(rhos, 0.0)
    x = center + r * np.cos(thetas)
    mu = np.clip(r * np.sin(thetas) / aspect, 0.0, 1.0)
    mu = np.where((thetas <= 0.0) | (thetas >= math.pi), 0.0, mu)
    x = np.where(np.abs(x - center) <= 1e-15 * max(1.0, abs(center)), center, x)
    order = np.argsort(x, kind="stable")
    return make_set(drop_collinear(x[order], mu[order]), label)


def drop_collinear(xs: np.ndarray, mus: np.ndarray, tol: float = 1e-12) -> list[tuple[float, float]]:
    """Breakpoints without the interior points that lie on the chord between kept points."""
    keep = [0]
    for i in range(1, len(xs) - 1):
        k = keep[-1]
        x0, m0, x1, m1 = xs[k], mus[k], xs[i + 1], mus[i + 1]
        if x1 - x0 > 0 and xs[k + 1] > x0:
            seg = slice(k + 1, i + 1)
            on_line = m0 + (m1 - m0) * (xs[seg] - x0) / (x1 - x0)
            if np.all(np.abs(on_line - mus[seg]) <= tol):
                continue
        keep.append(i)
    keep.append(len(xs) - 1)
    return [(float(xs[i]), float(mus[i])) for i in keep]


def correct(s: FuzzySet) -> tuple[FuzzySet, list[str]]:
    """Smallest convex normal set above ``s``: monotone envelopes on both sides of the peak."""
    xs, mus = s.xs.copy(), s.mus.copy()
    top = int(np.argmax(mus))
    fixed = mus.copy()
    fixed[:top + 1] = np.maximum.accumulate(mus[:top + 1])
    fixed[top:] = np.maximum.accumulate(mus[top:][::-1])[::-1]
    notes = []
    if np.any(fixed - mus > 1e-12):
        notes.append("polar correction filled dents to keep the set convex")
    pts = list(zip(xs.tolist(), fixed.tolist()))
    if fixed[top] < 1.0 - TOL:
        notes.append(f"polar correction raised the peak from {fixed[top]:.6g} to 1")
        pts[top] = (pts[top][0], 1.0)
    return make_set(pts, s.label), notes


def fripoc(p: Problem) -> Conclusion:
    th = theta_grid(p)
    rao = p.rps(p.obs.sets)
    rel = np.zeros(len(th))
    for k, part in enumerate(p.rb.inputs):
        a = p.aspect_in(k)
        rho_i, _ = feat_p(p, part.terms, rao[k], th, a)
        rho_o = rho(p.obs.sets[k], th, a, rao[k])
        big = rho_i > TOL * a
        rel += np.where(big, (rho_o - rho_i) / np.where(big, rho_i, 1.0), (rho_o - rho_i) / a)
    rel /= p.n
    rb, rule_w = consequent_position(p)
    ab = p.aspect_out
    rho_b, _ = feat_p(p, p.rb.output.terms, rb, th, ab)
    rho_s = np.maximum(rho_b * (1.0 + rel), 0.0)
    if np.any(rho_b * (1.0 + rel) < 0):
        p.notes.append("negative polar distances clamped to zero")
    shape, fixes = correct(polar_to_set(th, rho_s, rb, ab))
    p.notes.extend(fixes)
    shape = anchored(shape, rb, p.cfg.rp_mode)
    return Conclusion(MethodId.FRIPOC, shape=shape,
                      weights=InterpolationWeights(rule_weights=tuple(float(x) for x in rule_w)))
