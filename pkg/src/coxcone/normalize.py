"""Projection of rays onto the affine hyperplane where coordinates sum to 1.

Every positive root has positive coordinate sum, so scaling by that sum
maps them into a compact slice where the action of the group becomes a
partially-defined "dot action".  Accumulation points of the normalized
roots lie in the isotropic set of the form.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .datum import CoxeterDatum
from .errors import FiniteGroup, LeftDomain, OnV0
from .numeric import EPS, GridIndex, frozen
from .reflections import GroupElement, RootRecord, act, generate_roots, roots_by_level

LIMIT_CLUSTER_GRID = 1e-4
LIMIT_ISOTROPY_TOL = 1e-3


def phi(v: np.ndarray) -> float:
    """Coordinate sum; the linear functional whose level set is the slice."""
    return float(np.sum(v))


def normalize(v: np.ndarray) -> np.ndarray:
    """Scale v to coordinate sum 1.  Raises OnV0 when the sum is ~0.

    Negative sums are allowed: a ray and its opposite normalize to the
    same point of the slice.
    """
    total = phi(v)
    if abs(total) <= EPS:
        raise OnV0("cannot normalize a vector with coordinate sum zero")
    return v / total


def dot_act(datum: CoxeterDatum, w: GroupElement, x: np.ndarray) -> np.ndarray:
    """Act by w, then renormalize.  Undefined when the image has
    coordinate sum ~0 (the point is outside the domain of w)."""
    image = act(w, x)
    total = phi(image)
    if abs(total) <= EPS:
        raise LeftDomain("group image lands on the zero-sum hyperplane")
    return image / total


def normalized_roots_by_level(
        datum: CoxeterDatum, max_depth: int) -> dict[int, list[RootRecord]]:
    """Positive roots by depth, each scaled to coordinate sum 1."""
    levels = roots_by_level(generate_roots(datum, max_depth))
    return {
        depth: [RootRecord(normalize(r.coords), r.depth) for r in level]
        for depth, level in levels.items()
    }


@dataclass(frozen=True)
class LimitRootEstimate:
    """A normalized deep root kept as an empirical limit candidate."""

    point: np.ndarray
    isotropy: float
    source_depth: int

    def __post_init__(self):
        object.__setattr__(self, "point", frozen(self.point))


def approximate_limit_roots(
        datum: CoxeterDatum, max_depth: int,
        isotropy_tol: float = LIMIT_ISOTROPY_TOL,
        cluster_grid: float = LIMIT_CLUSTER_GRID) -> list[LimitRootEstimate]:
    """Near-isotropic normalized roots from the two deepest levels.

    Normalizes the roots of the top two generation levels, keeps those
    with self-pairing within isotropy_tol of zero, and deduplicates on a
    cluster_grid-sized grid.  Purely empirical: no convergence guarantee.
    Finite groups exhaust their roots early and have no limit points.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    levels = roots_by_level(generate_roots(datum, max_depth))
    top = max(levels)
    if top < max_depth:  # enumeration stalled: every root was found
        raise FiniteGroup("a finite root system has no accumulation points")
    deepest = list(levels[top])
    if top - 1 in levels:
        deepest = list(levels[top - 1]) + deepest
    seen = GridIndex(grid=cluster_grid)
    estimates: list[LimitRootEstimate] = []
    for record in deepest:
        point = normalize(record.coords)
        isotropy = datum.bilinear(point, point)
        if abs(isotropy) > isotropy_tol:
            continue
        if seen.add(point):
            estimates.append(LimitRootEstimate(point, isotropy, record.depth))
    return estimates


def isotropy_defect(datum: CoxeterDatum, v: np.ndarray) -> float:
    """|(v, v)|; zero exactly on the isotropic set."""
    return abs(datum.bilinear(v, v))


def normalized_roots_to_csv(
        datum: CoxeterDatum, levels: dict[int, list[RootRecord]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"x_{g}" for g in datum.generators] + ["depth", "isotropy"])
    for depth in sorted(levels):
        for record in levels[depth]:
            writer.writerow([repr(float(c)) for c in record.coords]
                            + [record.depth,
                               repr(datum.bilinear(record.coords, record.coords))])
    return buffer.getvalue()


def limit_roots_to_json(datum: CoxeterDatum,
                        estimates: list[LimitRootEstimate]) -> dict:
    return {
        "generators": list(datum.generators),
        "estimates": [
            {
                "point": [float(c) for c in e.point],
                "isotropy": float(e.isotropy),
                "source_depth": e.source_depth,
            }
            for e in estimates
        ],
    }
