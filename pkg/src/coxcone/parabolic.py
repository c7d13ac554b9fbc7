"""Classification of standard parabolic subgroups by the restricted form.

A subset of the generators spans a finite subgroup exactly when the
restricted bilinear form is positive definite.  Irreducible affine subsets
are positive semidefinite with a one-dimensional radical spanned by a
strictly positive vector; everything else is lumped into "other-infinite".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .datum import CoxeterDatum
from .errors import NotSpherical, RankTooLarge
from .numeric import WALL_TOL
from .reflections import GroupElement, parabolic_closure

MINOR_TOL = 1e-10
MAX_ENUMERATION_RANK = 20


class ParabolicKind(str, Enum):
    FINITE = "finite"
    AFFINE = "affine-irreducible"
    OTHER_INFINITE = "other-infinite"


@dataclass(frozen=True)
class ParabolicClass:
    subset: tuple[str, ...]
    kind: ParabolicKind
    radical_vector: np.ndarray | None = None  # full-length, zero off the subset

    @property
    def is_spherical(self) -> bool:
        return self.kind is ParabolicKind.FINITE


def _submatrix(datum: CoxeterDatum, subset: Sequence[str]) -> np.ndarray:
    idx = [datum.index(s) for s in subset]
    return datum.gram[np.ix_(idx, idx)]


def _is_positive_definite(b: np.ndarray) -> bool:
    """Leading principal minors, with an eigenvalue check near zero."""
    k = b.shape[0]
    if k == 0:
        return True
    minors = [float(np.linalg.det(b[: j + 1, : j + 1])) for j in range(k)]
    if all(m > MINOR_TOL for m in minors):
        return True
    if any(m < -MINOR_TOL for m in minors):
        return False
    # some minor is numerically on the fence; let the spectrum decide
    return bool(np.min(np.linalg.eigvalsh(b)) > MINOR_TOL)


def is_connected(datum: CoxeterDatum, subset: Sequence[str]) -> bool:
    """Whether the bond graph (edges where m >= 3) is connected on subset."""
    members = list(subset)
    if len(members) <= 1:
        return True
    reached = {members[0]}
    stack = [members[0]]
    while stack:
        s = stack.pop()
        for t in members:
            if t not in reached and datum.matrix.order(s, t) >= 3:
                reached.add(t)
                stack.append(t)
    return len(reached) == len(members)


def classify_parabolic(datum: CoxeterDatum, subset: Iterable[str]) -> ParabolicClass:
    """Classify the standard parabolic subgroup on `subset`.

    The empty set classifies as finite (the trivial group).  Affine
    requires a connected bond graph, a positive semidefinite restricted
    form with one-dimensional kernel, and a strictly positive kernel
    vector; the returned radical vector is scaled to maximum entry 1 and
    padded with zeros outside the subset.
    """
    members = datum.sort_subset(subset)
    b = _submatrix(datum, members)
    if _is_positive_definite(b):
        return ParabolicClass(members, ParabolicKind.FINITE)

    if is_connected(datum, members):
        eigvals, eigvecs = np.linalg.eigh(b)
        near_zero = np.abs(eigvals) <= MINOR_TOL * max(1.0, float(np.max(np.abs(b))))
        if float(eigvals[0]) >= -MINOR_TOL and int(np.sum(near_zero)) == 1:
            kernel = eigvecs[:, int(np.argmax(near_zero))]
            if kernel.sum() < 0:
                kernel = -kernel
            if np.min(kernel) > WALL_TOL:
                radical = np.zeros(datum.rank)
                for s, value in zip(members, kernel / np.max(kernel)):
                    radical[datum.index(s)] = value
                return ParabolicClass(members, ParabolicKind.AFFINE, radical)
    return ParabolicClass(members, ParabolicKind.OTHER_INFINITE)


@dataclass(frozen=True)
class SphericalPoset:
    """All subsets generating finite subgroups, ordered by inclusion."""

    generator_order: tuple[str, ...]
    elements: tuple[frozenset[str], ...]
    covers: tuple[tuple[frozenset[str], frozenset[str]], ...]

    def subset_key(self, subset: frozenset[str]) -> tuple[str, ...]:
        return tuple(g for g in self.generator_order if g in subset)

    def __contains__(self, subset) -> bool:
        return frozenset(subset) in set(self.elements)


def enumerate_spherical_poset(datum: CoxeterDatum) -> SphericalPoset:
    """Find every spherical subset by growing from the singletons.

    A candidate of size k+1 is tested only if all its k-subsets are
    already spherical (subsets of spherical sets are spherical, so this
    prunes nothing valid), then accepted when its restricted form is
    positive definite.
    """
    if datum.rank > MAX_ENUMERATION_RANK:
        raise RankTooLarge(
            f"rank {datum.rank} exceeds the enumeration limit {MAX_ENUMERATION_RANK}")
    gens = datum.generators
    spherical: set[frozenset[str]] = {frozenset()}
    current: list[frozenset[str]] = [frozenset((g,)) for g in gens]
    spherical.update(current)
    while current:
        grown: set[frozenset[str]] = set()
        for base in current:
            for g in gens:
                if g in base:
                    continue
                candidate = frozenset(base | {g})
                if candidate in spherical or candidate in grown:
                    continue
                if any(candidate - {h} not in spherical for h in candidate):
                    continue
                if classify_parabolic(datum, candidate).is_spherical:
                    grown.add(candidate)
        spherical.update(grown)
        current = sorted(grown, key=lambda t: tuple(g for g in gens if g in t))

    def key(t: frozenset[str]) -> tuple:
        return (len(t), tuple(g for g in gens if g in t))

    elements = tuple(sorted(spherical, key=key))
    covers = tuple(
        (small, big)
        for big in elements
        for small in elements
        if len(small) + 1 == len(big) and small < big)
    return SphericalPoset(gens, elements, covers)


def enumerate_finite_parabolic_elements(
        datum: CoxeterDatum, subset: Iterable[str]) -> list[GroupElement]:
    """All elements of the finite parabolic subgroup on `subset`."""
    members = datum.sort_subset(subset)
    if not classify_parabolic(datum, members).is_spherical:
        raise NotSpherical(f"subset {members!r} generates an infinite subgroup")
    return parabolic_closure(datum, members)


def poset_to_json(poset: SphericalPoset) -> dict:
    nodes = [{"subset": list(poset.subset_key(t)), "kind": ParabolicKind.FINITE.value}
             for t in poset.elements]
    edges = [[list(poset.subset_key(a)), list(poset.subset_key(b))]
             for a, b in poset.covers]
    return {"nodes": nodes, "edges": edges}
