"""The equivariant map from the Davis complex into the normalized cone.

The empty subset goes to an interior basepoint; a spherical subset goes to
the normalized average of the basepoint's orbit under its finite parabolic,
which lands on exactly the walls of that subset.  Chains map to affinely
independent frames, points extend barycentrically, and a group element acts
on the result through the dot action.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cone import (
    ConePoint,
    average_over_parabolic,
    find_interior_basepoint,
    in_fundamental_chamber,
)
from .datum import CoxeterDatum
from .davis import (
    DavisBall,
    DavisCell,
    ball_cells,
    build_davis_ball,
    canonicalize_cell,
    minimal_coset_matrix,
    point_stabilizer,
    uniform_point,
)
from .errors import (
    DegenerateSimplex,
    InvariantViolation,
    NotInterior,
    NotSpherical,
)
from .normalize import dot_act, normalize
from .numeric import EPS, WALL_TOL, frozen
from .parabolic import SphericalPoset, classify_parabolic, enumerate_spherical_poset
from .reflections import element_from_word, parabolic_closure

SIMPLEX_TOL = 1e-8
SEPARATION_TOL = 1e-7
ISOTROPY_TOL = 1e-9


def _interior_coords(datum: CoxeterDatum, v0: ConePoint | np.ndarray) -> np.ndarray:
    if isinstance(v0, ConePoint):
        if not v0.in_interior:
            raise NotInterior("basepoint is not interior to the fundamental domain")
        return np.asarray(v0.coords, dtype=float)
    coords = np.asarray(v0, dtype=float)
    if not in_fundamental_chamber(datum, coords).interior:
        raise NotInterior("basepoint is not interior to the fundamental domain")
    return coords


def vertex_image(datum: CoxeterDatum, subset, v0: ConePoint | np.ndarray,
                 mode: str = "linear") -> np.ndarray:
    """Normalized image of the vertex of a spherical subset.

    "linear" (the default) averages the orbit of the basepoint under the
    finite parabolic with the linear action and then normalizes; this is
    the version whose wall and membership properties are guaranteed.
    "dot" averages the dot-action images instead, for comparison.
    """
    base = _interior_coords(datum, v0)
    members = datum.sort_subset(subset)
    if not members:
        return normalize(base)
    if mode == "linear":
        return normalize(average_over_parabolic(datum, members, base))
    if mode == "dot":
        if not classify_parabolic(datum, members).is_spherical:
            raise NotSpherical(f"subset {members!r} generates an infinite subgroup")
        orbit = [dot_act(datum, w, normalize(base))
                 for w in parabolic_closure(datum, members)]
        return np.mean(orbit, axis=0)
    raise ValueError(f"unknown vertex image mode {mode!r}")


@dataclass(frozen=True)
class VertexImageTable:
    basepoint: ConePoint  # normalized interior basepoint
    mode: str
    images: Mapping[frozenset[str], np.ndarray]

    def image(self, subset: frozenset[str]) -> np.ndarray:
        return self.images[subset]


def build_vertex_image_table(datum: CoxeterDatum,
                             poset: SphericalPoset | None = None,
                             v0: ConePoint | np.ndarray | None = None,
                             mode: str = "linear") -> VertexImageTable:
    """Vertex images for every spherical subset, validated in linear mode:
    each image lies on exactly its own walls, is fixed by the dot action of
    its subset, and stays in the fundamental domain."""
    if poset is None:
        poset = enumerate_spherical_poset(datum)
    if v0 is None:
        v0 = find_interior_basepoint(datum)
    base = _interior_coords(datum, v0)
    normalized_base = ConePoint(normalize(base), True)
    images: dict[frozenset[str], np.ndarray] = {}
    for subset in poset.elements:
        images[subset] = frozen(vertex_image(datum, subset, normalized_base, mode))
    table = VertexImageTable(normalized_base, mode, images)
    if mode == "linear":
        _validate_table(datum, table)
    return table


def _validate_table(datum: CoxeterDatum, table: VertexImageTable) -> None:
    if np.max(np.abs(table.image(frozenset()) - table.basepoint.coords)) > EPS:
        raise InvariantViolation("empty subset must map to the basepoint")
    for subset, v in table.images.items():
        if not in_fundamental_chamber(datum, v).member:
            raise InvariantViolation("vertex image left the fundamental domain")
        walls = datum.wall_values(v)
        for s in datum.generators:
            value = walls[datum.index(s)]
            if s in subset:
                if abs(value) > WALL_TOL:
                    raise InvariantViolation(
                        f"image of {sorted(subset)} missed the wall of {s!r}")
                moved = dot_act(datum, element_from_word(datum, (s,)), v)
                if np.max(np.abs(moved - v)) > WALL_TOL:
                    raise InvariantViolation(
                        f"image of {sorted(subset)} is not fixed by {s!r}")
            elif value >= -EPS:
                raise InvariantViolation(
                    f"image of {sorted(subset)} touched the wall of {s!r}")


def affine_independence_margin(images: Sequence[np.ndarray]) -> float:
    """Smallest singular value of the difference frame; large means the
    points span a nondegenerate simplex."""
    if len(images) <= 1:
        return np.inf
    diffs = np.array([np.asarray(p, dtype=float) - np.asarray(images[0], dtype=float)
                      for p in images[1:]])
    return float(np.linalg.svd(diffs, compute_uv=False)[-1])


def chain_simplex_check(images: Sequence[np.ndarray],
                        tol: float = SIMPLEX_TOL) -> bool:
    """Affine independence of the vertex images along a chain."""
    return affine_independence_margin(images) > tol


def embed_chamber_point(point, table: VertexImageTable) -> np.ndarray:
    """Barycentric extension of the vertex images over the carrier chain."""
    images = [table.image(t) for t in point.carrier]
    if not chain_simplex_check(images):
        raise DegenerateSimplex(
            "chain vertex images are affinely dependent; the basepoint or "
            "the numerics are bad")
    return np.sum([w * img for w, img in zip(point.weights, images)], axis=0)


@dataclass(frozen=True)
class EmbeddedPoint:
    source: DavisCell
    image: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "image", frozen(self.image))


def embed_cell(datum: CoxeterDatum, cell: DavisCell,
               table: VertexImageTable) -> EmbeddedPoint:
    """Image of a cell: the element's dot action on the chamber image.

    Representatives of the same cell give the same image because the
    chamber image of a point is linearly fixed by the point's stabilizer.
    """
    canonical = canonicalize_cell(datum, cell)
    chamber_image = embed_chamber_point(canonical.point, table)
    return EmbeddedPoint(
        canonical, dot_act(datum, canonical.element, chamber_image))


@dataclass(frozen=True)
class EmbeddingReport:
    chambers: int
    samples: int
    equivariance_ok: bool
    injectivity_ok: bool
    mirror_ok: bool
    isotropy_ok: bool
    max_equivariance_violation: float
    min_separation: float
    max_on_wall_violation: float   # for s in the stabilizer, should be ~0
    min_off_wall_margin: float     # for s outside, should be clearly nonzero
    max_isotropy: float

    @property
    def all_passed(self) -> bool:
        return (self.equivariance_ok and self.injectivity_ok
                and self.mirror_ok and self.isotropy_ok)

    def to_json(self) -> dict:
        return {
            "chambers": self.chambers,
            "samples": self.samples,
            "equivariance_ok": self.equivariance_ok,
            "injectivity_ok": self.injectivity_ok,
            "mirror_ok": self.mirror_ok,
            "isotropy_ok": self.isotropy_ok,
            "max_equivariance_violation": self.max_equivariance_violation,
            "min_separation": self.min_separation,
            "max_on_wall_violation": self.max_on_wall_violation,
            "min_off_wall_margin": self.min_off_wall_margin,
            "max_isotropy": self.max_isotropy,
            "all_passed": self.all_passed,
        }


def _cell_key(cell: DavisCell) -> tuple:
    return (cell.element.word, tuple(tuple(sorted(t)) for t in cell.point.carrier),
            tuple(round(w, 9) for w in cell.point.weights))


def verify_embedding(datum: CoxeterDatum, radius: int,
                     table: VertexImageTable,
                     ball: DavisBall | None = None) -> EmbeddingReport:
    """Check the embedding on a ball: equivariance of the group action,
    injectivity on the barycenter sample, wall alignment of the mirrors,
    and isotropy of every image.  Failures are reported, never raised."""
    if ball is None:
        ball = build_davis_ball(datum, radius)
    cells = ball_cells(datum, ball)
    embedded = [embed_cell(datum, c, table) for c in cells]
    chamber_image = {chain: embed_chamber_point(uniform_point(chain), table)
                     for chain in ball.chamber.simplices}
    stabilizers = {chain: datum.sort_subset(chain[0])
                   for chain in ball.chamber.simplices}

    # equivariance: embedding the moved cell (through its canonical
    # representative) agrees with moving the embedded image
    max_equi = 0.0
    for u in ball.elements:
        for cell, emb in zip(cells, embedded):
            chain = cell.point.carrier
            product = u.matrix @ cell.element.matrix
            reduced, _ = minimal_coset_matrix(datum, product, stabilizers[chain])
            direct = normalize(reduced @ chamber_image[chain])
            acted = dot_act(datum, u, emb.image)
            max_equi = max(max_equi, float(np.max(np.abs(direct - acted))))

    # injectivity: cells with distinct canonical forms get separated images
    keys = [_cell_key(c) for c in cells]
    first_index: dict[tuple, int] = {}
    max_dup = 0.0
    images = np.array([e.image for e in embedded])
    for i, key in enumerate(keys):
        if key in first_index:
            gap = float(np.max(np.abs(images[i] - images[first_index[key]])))
            max_dup = max(max_dup, gap)
        else:
            first_index[key] = i
    reps = images[sorted(first_index.values())]
    gaps = np.max(np.abs(reps[:, None, :] - reps[None, :, :]), axis=2)
    gaps[np.diag_indices(len(reps))] = np.inf
    min_sep = float(np.min(gaps)) if len(reps) > 1 else np.inf

    # mirror alignment on the identity chamber: on a wall iff s stabilizes
    max_on = 0.0
    min_off = np.inf
    for chain in ball.chamber.simplices:
        walls = datum.wall_values(chamber_image[chain])
        stab = point_stabilizer(uniform_point(chain))
        for s in datum.generators:
            value = abs(float(walls[datum.index(s)]))
            if s in stab:
                max_on = max(max_on, value)
            else:
                min_off = min(min_off, value)

    max_iso = max(float(datum.bilinear(e.image, e.image)) for e in embedded)

    return EmbeddingReport(
        chambers=len(ball.elements),
        samples=len(cells),
        equivariance_ok=max_equi < WALL_TOL and max_dup < WALL_TOL,
        injectivity_ok=bool(min_sep > SEPARATION_TOL),
        mirror_ok=max_on < WALL_TOL <= min_off,
        isotropy_ok=max_iso <= ISOTROPY_TOL,
        max_equivariance_violation=max(max_equi, max_dup),
        min_separation=min_sep,
        max_on_wall_violation=max_on,
        min_off_wall_margin=float(min_off),
        max_isotropy=max_iso,
    )


def embedded_complex_to_json(datum: CoxeterDatum, ball: DavisBall,
                             table: VertexImageTable) -> list[dict]:
    out = []
    for cell in ball_cells(datum, ball):
        emb = embed_cell(datum, cell, table)
        out.append({
            "word": list(cell.element.word),
            "carrier": [list(ball.chamber.subset_key(t))
                        for t in cell.point.carrier],
            "barycentric": list(cell.point.weights),
            "image": [float(c) for c in emb.image],
            "isotropy": float(datum.bilinear(emb.image, emb.image)),
        })
    return out
