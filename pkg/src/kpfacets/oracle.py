"""Exhaustive ground-truth deciders for desk-scale instances.

Nothing here is clever on purpose: every answer comes from enumerating the
whole cube or every subset, so it can be used to check the recognizer and
the reductions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .core import Inequality, KnapsackInstance, Point, check_pair
from .exact_linalg import affine_rank, as_rational_vector, convex_weights

DEFAULT_LIMIT = 22


class OracleLimitError(ValueError):
    """Input is too large for exhaustive enumeration."""


def _check_limit(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise OracleLimitError(f"{what} {size} exceeds oracle limit {limit}")


@dataclass(frozen=True)
class CssInstance:
    """Critical subset sum: is ``t - 1`` a subset sum of ``w`` while ``t`` is not?"""

    w: tuple[int, ...]
    t: int

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        if any((not isinstance(x, int)) or x < 1 for x in self.w):
            raise ValueError(f"CSS weights must be positive integers, got {self.w}")
        if not isinstance(self.t, int):
            raise TypeError("CSS target must be an integer")


@dataclass(frozen=True)
class EvcInstance:
    """Exact vertex cover: is the minimum vertex cover of size exactly ``k``?"""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices) or u == v:
                raise ValueError(f"bad edge ({u}, {v}) for {self.num_vertices} vertices")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.k < 0:
            raise ValueError("k must be nonnegative")


@dataclass(frozen=True)
class OracleReport:
    valid: bool
    face_dim: int
    is_facet: bool
    tight_points: tuple[Point, ...]


def _cube(n: int) -> np.ndarray:
    """All of {0,1}^n as rows, lexicographic order."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.int8)


def _dot(cube: np.ndarray, coeffs: Sequence[int]) -> np.ndarray:
    if sum(abs(c) for c in coeffs) < 2**62:
        return cube.astype(np.int64) @ np.array(coeffs, dtype=np.int64)
    return cube.astype(object) @ np.array(list(coeffs), dtype=object)


def _feasible_rows(instance: KnapsackInstance, limit: int) -> np.ndarray:
    _check_limit(instance.n, limit, "dimension")
    cube = _cube(instance.n)
    return cube[_dot(cube, instance.a) <= instance.b]


def enumerate_feasible(instance: KnapsackInstance, limit: int = DEFAULT_LIMIT) -> list[Point]:
    """Every 0/1 point with ``a . x <= b``, lexicographic order."""
    return [tuple(int(v) for v in row) for row in _feasible_rows(instance, limit)]


def brute_analyze(instance: KnapsackInstance, ineq: Inequality, limit: int = DEFAULT_LIMIT) -> OracleReport:
    check_pair(instance, ineq)
    feas = _feasible_rows(instance, limit)
    vals = _dot(feas, ineq.alpha)
    valid = bool((vals <= ineq.beta).all())
    tight_rows = feas[vals == ineq.beta]
    tight = tuple(tuple(int(v) for v in row) for row in tight_rows)
    face_dim = affine_rank(list(tight)) - 1
    return OracleReport(valid, face_dim, valid and face_dim == instance.n - 1, tight)


def _subset_sums(w: Sequence[int]) -> dict[int, int]:
    """Every subset sum of ``w`` mapped to the first bitmask (by enumeration order) reaching it."""
    sums = {0: 0}
    for i, x in enumerate(w):
        for s, mask in list(sums.items()):
            sums.setdefault(s + x, mask | (1 << i))
    return sums


def _mask_to_indices(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def css_witness(css: CssInstance, limit: int = DEFAULT_LIMIT) -> Optional[tuple[int, ...]]:
    """Indices of a subset summing to ``t - 1`` when the CSS answer is yes."""
    _check_limit(len(css.w), limit, "item count")
    sums = _subset_sums(css.w)
    if css.t - 1 in sums and css.t not in sums:
        return _mask_to_indices(sums[css.t - 1], len(css.w))
    return None


def solve_css(css: CssInstance, limit: int = DEFAULT_LIMIT) -> bool:
    return css_witness(css, limit) is not None


def minimum_vertex_cover(evc: EvcInstance, limit: int = DEFAULT_LIMIT) -> tuple[int, ...]:
    _check_limit(evc.num_vertices, limit, "vertex count")
    edge_masks = [(1 << u) | (1 << v) for u, v in evc.edges]
    for size in range(evc.num_vertices + 1):
        for cover in combinations(range(evc.num_vertices), size):
            mask = sum(1 << v for v in cover)
            if all(mask & e for e in edge_masks):
                return cover
    raise AssertionError("the full vertex set is always a cover")


def evc_witness(evc: EvcInstance, limit: int = DEFAULT_LIMIT) -> Optional[tuple[int, ...]]:
    cover = minimum_vertex_cover(evc, limit)
    return cover if len(cover) == evc.k else None


def solve_evc(evc: EvcInstance, limit: int = DEFAULT_LIMIT) -> bool:
    return evc_witness(evc, limit) is not None


def partition_witness(a: Sequence[int], limit: int = DEFAULT_LIMIT) -> Optional[tuple[int, ...]]:
    _check_limit(len(a), limit, "item count")
    total = sum(a)
    if total % 2:
        return None
    sums = _subset_sums(a)
    if total // 2 in sums:
        return _mask_to_indices(sums[total // 2], len(a))
    return None


def solve_partition(a: Sequence[int], limit: int = DEFAULT_LIMIT) -> bool:
    return partition_witness(a, limit) is not None


def knapsack_max(c: Sequence[int], instance: KnapsackInstance, limit: int = DEFAULT_LIMIT) -> tuple[int, Point]:
    """Exhaustive ``max c . x`` over the knapsack set with a lexicographically first argmax."""
    if len(c) != instance.n:
        raise ValueError(f"objective has length {len(c)}, instance {instance.n}")
    feas = _feasible_rows(instance, limit)
    vals = _dot(feas, c)
    best = int(np.argmax(vals))
    return int(vals[best]), tuple(int(v) for v in feas[best])


def verify_exact_knapsack(c: Sequence[int], instance: KnapsackInstance, L: int, limit: int = DEFAULT_LIMIT) -> bool:
    return knapsack_max(c, instance, limit)[0] == L


def check_membership(point: Sequence, instance: KnapsackInstance, limit: int = DEFAULT_LIMIT) -> Optional[list[Fraction]]:
    """Convex weights over :func:`enumerate_feasible` when ``point`` is in the knapsack polytope."""
    point = as_rational_vector(point)
    if len(point) != instance.n:
        raise ValueError(f"point has dimension {len(point)}, instance {instance.n}")
    return convex_weights(point, enumerate_feasible(instance, limit))
