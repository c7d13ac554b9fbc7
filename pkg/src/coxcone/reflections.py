"""Reflection action, reduced words, and breadth-first root generation.

Group elements are compared through their action matrices (the reflection
representation is faithful), so every element has one canonical reduced
word: the lexicographically least one, produced by repeatedly stripping
the smallest generator that shortens from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .datum import INFINITE, CoxeterDatum, in_positive_cone
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidBond,
    IsotropicMirror,
)
from .numeric import DEDUP_GRID, EPS, GridIndex, frozen

ROOT_CAP = 100_000
ELEMENT_CAP = 200_000


def reflection_matrix(datum: CoxeterDatum, x: np.ndarray) -> np.ndarray:
    """Matrix of the reflection in x:  v -> v - 2 (x,v)/(x,x) x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (datum.rank,):
        raise DimensionMismatch(f"expected a vector of length {datum.rank}")
    xx = datum.bilinear(x, x)
    if abs(xx) <= EPS:
        raise IsotropicMirror(f"(x, x) = {xx:g} is too close to 0")
    return np.eye(datum.rank) - (2.0 / xx) * np.outer(x, datum.gram @ x)


def reflect(datum: CoxeterDatum, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Reflect v in the vector x; preserves the bilinear form."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.shape != (datum.rank,) or v.shape != (datum.rank,):
        raise DimensionMismatch(f"expected vectors of length {datum.rank}")
    xx = datum.bilinear(x, x)
    if abs(xx) <= EPS:
        raise IsotropicMirror(f"(x, x) = {xx:g} is too close to 0")
    return v - (2.0 * datum.bilinear(x, v) / xx) * x


def simple_reflection_matrix(datum: CoxeterDatum, s: str) -> np.ndarray:
    """Matrix of the reflection in the simple root of s."""
    i = datum.index(s)
    m = np.eye(datum.rank)
    m[i, :] -= 2.0 * datum.gram[i, :]
    return m


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A group element: canonical reduced word plus cached action matrix."""

    word: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", frozen(self.matrix))

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return np.max(np.abs(self.matrix - other.matrix)) <= EPS

    def __repr__(self) -> str:
        name = ".".join(self.word) if self.word else "1"
        return f"GroupElement({name})"


def act(w: GroupElement, v: np.ndarray) -> np.ndarray:
    """Apply the cached action matrix of w to v."""
    v = np.asarray(v, dtype=float)
    n = w.matrix.shape[0]
    if v.shape != (n,):
        raise DimensionMismatch(f"expected a vector of length {n}")
    return w.matrix @ v


def identity_element(datum: CoxeterDatum) -> GroupElement:
    return GroupElement((), np.eye(datum.rank))


class WordInfo(NamedTuple):
    length: int
    descents: frozenset[str]  # generators a with w(alpha_a) a negative root
    word: tuple[str, ...]     # canonical reduced word


def _is_negative_root(v: np.ndarray) -> bool:
    return bool(np.max(v) <= EPS)


def _canonical_word(datum: CoxeterDatum, matrix: np.ndarray,
                    inverse: np.ndarray, budget: int) -> tuple[str, ...]:
    """Lexicographically least reduced word, by smallest-descent stripping.

    A generator a is a valid first letter exactly when the inverse image of
    its simple root is a negative root; taking the smallest such a at every
    step yields the least reduced word.
    """
    n = datum.rank
    w = matrix.copy()
    winv = inverse.copy()
    letters: list[str] = []
    for _ in range(budget + 1):
        if np.max(np.abs(w - np.eye(n))) <= EPS:
            return tuple(letters)
        for s in datum.generators:
            if _is_negative_root(winv[:, datum.index(s)]):
                r = simple_reflection_matrix(datum, s)
                w = r @ w
                winv = winv @ r
                letters.append(s)
                break
        else:
            raise BudgetExceeded("no descent found; matrix is not a group element")
    raise BudgetExceeded("word reduction exceeded its budget")


def length_and_descents(datum: CoxeterDatum, word: Sequence[str] | GroupElement) -> WordInfo:
    """Length, descent set and canonical reduced word of an arbitrary word.

    The descent set holds the generators a whose simple root is sent to a
    negative root, i.e. those with len(w r_a) = len(w) - 1.
    """
    if isinstance(word, GroupElement):
        letters: Sequence[str] = word.word
    else:
        letters = tuple(word)
    n = datum.rank
    mat = np.eye(n)
    inv = np.eye(n)
    for s in letters:
        r = simple_reflection_matrix(datum, s)
        mat = mat @ r
        inv = r @ inv
    reduced = _canonical_word(datum, mat, inv, budget=max(len(letters), 1))
    descents = frozenset(
        s for s in datum.generators
        if _is_negative_root(mat[:, datum.index(s)]))
    return WordInfo(len(reduced), descents, reduced)


def element_from_word(datum: CoxeterDatum, word: Sequence[str]) -> GroupElement:
    """Group element of a (not necessarily reduced) word, in canonical form."""
    mat = np.eye(datum.rank)
    for s in word:
        mat = mat @ simple_reflection_matrix(datum, s)
    info = length_and_descents(datum, tuple(word))
    return GroupElement(info.word, mat)


def multiply(datum: CoxeterDatum, u: GroupElement, w: GroupElement) -> GroupElement:
    """Product uw in canonical form."""
    return element_from_word(datum, u.word + w.word)


def inverse_element(datum: CoxeterDatum, w: GroupElement) -> GroupElement:
    """Inverse of w (generators are involutions, so reverse the word)."""
    return element_from_word(datum, tuple(reversed(w.word)))


def dihedral_orbit_closed_form(m: float, c: float | None, i: int) -> tuple[float, float]:
    """Coefficients of the i-th forward image of the first simple root
    under the rotation r_first r_second in a rank-2 subgroup.

    For a finite bond of order m the coefficients are
    sin((2i+1)t)/sin(t) and sin(2it)/sin(t) with t = pi/m.  For an
    infinite bond with form value c < -1 the sines become hyperbolic with
    t = arccosh(-c); at the boundary value c = -1 they degenerate to the
    integer pair (2i+1, 2i).
    """
    if m != INFINITE:
        if not float(m).is_integer() or m < 2:
            raise InvalidBond(f"bond order {m} must be an integer >= 2 or infinite")
        t = math.pi / m
        return (math.sin((2 * i + 1) * t) / math.sin(t),
                math.sin(2 * i * t) / math.sin(t))
    c = -1.0 if c is None else float(c)
    if c > -1.0:
        raise InvalidBond(f"infinite bond requires a form value <= -1, got {c}")
    if c == -1.0:
        return (float(2 * i + 1), float(2 * i))
    t = math.acosh(-c)
    return (math.sinh((2 * i + 1) * t) / math.sinh(t),
            math.sinh(2 * i * t) / math.sinh(t))


@dataclass(frozen=True)
class RootRecord:
    """A positive root with its breadth-first generation level."""

    coords: np.ndarray
    depth: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coords", frozen(self.coords))


def generate_roots(datum: CoxeterDatum, max_depth: int,
                   cap: int = ROOT_CAP) -> list[RootRecord]:
    """All positive roots reachable from the simple ones within `max_depth`
    rounds of simple reflections.

    Level 0 is the simple roots themselves; each later level applies every
    simple reflection to the previous frontier and keeps the new positive
    roots.  Images that land outside the positive cone are negatives of
    roots already seen and are skipped.  Results are sorted by level then
    coordinates.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    n = datum.rank
    mats = [simple_reflection_matrix(datum, s) for s in datum.generators]
    seen = GridIndex(grid=DEDUP_GRID)
    records: list[RootRecord] = []
    frontier: list[np.ndarray] = []
    for i, _ in enumerate(datum.generators):
        e = np.zeros(n)
        e[i] = 1.0
        seen.add(e)
        records.append(RootRecord(e, 0))
        frontier.append(e)
    for depth in range(1, max_depth + 1):
        fresh: list[np.ndarray] = []
        for beta in frontier:
            for r in mats:
                gamma = r @ beta
                if not in_positive_cone(gamma):
                    continue
                if seen.add(gamma):
                    fresh.append(gamma)
        if not fresh:
            break
        fresh.sort(key=lambda v: tuple(v))
        for gamma in fresh:
            records.append(RootRecord(gamma, depth))
        if len(records) > cap:
            raise BudgetExceeded(f"root generation passed the cap of {cap}")
        frontier = fresh
    return records


def roots_by_level(records: Iterable[RootRecord]) -> dict[int, list[RootRecord]]:
    levels: dict[int, list[RootRecord]] = {}
    for rec in records:
        levels.setdefault(rec.depth, []).append(rec)
    return levels


def enumerate_ball(datum: CoxeterDatum, radius: int,
                   generators: Sequence[str] | None = None,
                   cap: int = ELEMENT_CAP) -> list[GroupElement]:
    """All elements of length <= radius, sorted by (length, word).

    Elements are deduplicated through their action matrices; the word kept
    for each is its lexicographically least reduced word.  An optional
    generator subset restricts the search to that standard parabolic
    subgroup (whose length function agrees with the full one).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return _ball(datum, generators, radius, cap)


def parabolic_closure(datum: CoxeterDatum, generators: Sequence[str],
                      cap: int = ELEMENT_CAP) -> list[GroupElement]:
    """Every element of the parabolic subgroup on `generators`; raises
    BudgetExceeded if the subgroup does not close up within the cap."""
    return _ball(datum, generators, None, cap)


def _ball(datum: CoxeterDatum, generators: Sequence[str] | None,
          radius: int | None, cap: int) -> list[GroupElement]:
    gens = datum.generators if generators is None else datum.sort_subset(generators)
    n = datum.rank
    mats = {s: simple_reflection_matrix(datum, s) for s in gens}
    cols = {s: datum.index(s) for s in gens}

    out: list[GroupElement] = [identity_element(datum)]
    frontier: list[tuple[tuple[str, ...], np.ndarray]] = [((), np.eye(n))]
    level = 0
    while frontier and (radius is None or level < radius):
        level += 1
        index = GridIndex(grid=DEDUP_GRID)
        fresh: dict[int, tuple[tuple[str, ...], np.ndarray]] = {}
        for word, mat in frontier:
            for s in gens:
                # ascent test: w(alpha_s) positive means len(w r_s) grows
                if np.min(mat[:, cols[s]]) < -EPS:
                    continue
                grown = mat @ mats[s]
                candidate = word + (s,)
                idx = index.find(grown)
                if idx is None:
                    index.add(grown)
                    fresh[len(fresh)] = (candidate, grown)
                elif candidate < fresh[idx][0]:
                    fresh[idx] = (candidate, fresh[idx][1])
        if not fresh:
            break
        batch = sorted(fresh.values(), key=lambda it: it[0])
        for word, mat in batch:
            out.append(GroupElement(word, mat))
        if len(out) > cap:
            raise BudgetExceeded(f"ball enumeration passed the cap of {cap}")
        frontier = batch
    return out


def element_index(elements: Iterable[GroupElement]) -> GridIndex:
    """Grid index over action matrices, for membership tests."""
    index = GridIndex(grid=DEDUP_GRID)
    for el in elements:
        index.add(el.matrix)
    return index


def roots_to_json(records: Iterable[RootRecord]) -> list[dict]:
    return [{"coords": [float(x) for x in rec.coords], "depth": rec.depth}
            for rec in records]


def ball_to_json(elements: Iterable[GroupElement]) -> list[dict]:
    return [{"word": list(el.word), "length": el.length} for el in elements]
