"""Knapsack instances, inequalities, block normalization and basic solutions.

Index conventions: instances and inequalities use the caller's (original)
0-based indexing. A :class:`NormalizedProblem` works in a *reordered* space:
blocks of equal positive coefficient first (coefficients increasing, weights
non-decreasing inside a block), then the zero-coefficient tail sorted by
weight. ``perm[j]`` is the original index of reordered position ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterator, Optional, Sequence

Point = tuple  # tuple[int, ...] of 0/1 entries


def _check_nonneg_ints(name: str, values: Sequence[int]) -> tuple[int, ...]:
    out = tuple(values)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{name} entries must be integers, got {v!r}")
        if v < 0:
            raise ValueError(f"{name} entries must be nonnegative, got {v}")
    return out


@dataclass(frozen=True)
class KnapsackInstance:
    """The constraint ``a . x <= b`` over binary ``x``."""

    a: tuple[int, ...]
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", _check_nonneg_ints("a", self.a))
        _check_nonneg_ints("b", (self.b,))

    @property
    def n(self) -> int:
        return len(self.a)

    def weight(self, x: Sequence[int]) -> int:
        return sum(ai for ai, xi in zip(self.a, x) if xi)

    def feasible(self, x: Sequence[int]) -> bool:
        return self.weight(x) <= self.b

    def full_dimensional(self) -> bool:
        return max(self.a, default=0) <= self.b


@dataclass(frozen=True)
class Inequality:
    """Candidate inequality ``alpha . x <= beta`` with nonnegative integer data."""

    alpha: tuple[int, ...]
    beta: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_nonneg_ints("alpha", self.alpha))
        _check_nonneg_ints("beta", (self.beta,))

    @property
    def n(self) -> int:
        return len(self.alpha)

    def value(self, x: Sequence[int]) -> int:
        return sum(ci for ci, xi in zip(self.alpha, x) if xi)

    def scaled(self, factor: int) -> "Inequality":
        return Inequality(tuple(factor * c for c in self.alpha), factor * self.beta)


def check_pair(instance: KnapsackInstance, ineq: Inequality) -> None:
    if instance.n != ineq.n:
        raise ValueError(f"instance has dimension {instance.n}, inequality {ineq.n}")


@dataclass(frozen=True)
class NormalizedProblem:
    n: int
    gamma: tuple[int, ...]
    block_bounds: tuple[int, ...]  # i_0 = 0 <= i_1 <= ... <= i_K
    perm: tuple[int, ...]
    a_sorted: tuple[int, ...]
    _prefix: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self._prefix:
            pre = []
            for k in range(self.K):
                lo, hi = self.block_bounds[k], self.block_bounds[k + 1]
                pre.append(tuple(accumulate(self.a_sorted[lo:hi], initial=0)))
            object.__setattr__(self, "_prefix", tuple(pre))

    @property
    def K(self) -> int:
        return len(self.gamma)

    @property
    def blocks(self) -> tuple[range, ...]:
        """Reordered positions of each block."""
        bb = self.block_bounds
        return tuple(range(bb[k], bb[k + 1]) for k in range(self.K))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        bb = self.block_bounds
        return tuple(bb[k + 1] - bb[k] for k in range(self.K))

    @property
    def support_end(self) -> int:
        """``i_K``: number of positive-coefficient variables."""
        return self.block_bounds[-1]

    @property
    def tail(self) -> range:
        return range(self.support_end, self.n)

    def original_block(self, k: int) -> tuple[int, ...]:
        return tuple(self.perm[j] for j in self.blocks[k])

    def original_tail(self) -> tuple[int, ...]:
        return tuple(self.perm[j] for j in self.tail)

    def to_original(self, x: Sequence[int]) -> Point:
        out = [0] * self.n
        for j, v in enumerate(x):
            out[self.perm[j]] = v
        return tuple(out)

    def to_reordered(self, x: Sequence[int]) -> Point:
        return tuple(x[p] for p in self.perm)

    def profile_value(self, z: Sequence[int]) -> int:
        return sum(g * c for g, c in zip(self.gamma, z))

    def profile_weight(self, z: Sequence[int]) -> int:
        """``a . x[z]``, the least weight of any point with block counts ``z``."""
        return sum(pre[c] for pre, c in zip(self._prefix, z))

    def truncated(self) -> "NormalizedProblem":
        """Same blocks with the zero-coefficient tail removed."""
        m = self.support_end
        return NormalizedProblem(
            n=m,
            gamma=self.gamma,
            block_bounds=self.block_bounds,
            perm=tuple(range(m)),
            a_sorted=self.a_sorted[:m],
            _prefix=self._prefix,
        )


def normalize(instance: KnapsackInstance, ineq: Inequality) -> NormalizedProblem:
    """Group variables into blocks of equal positive coefficient."""
    check_pair(instance, ineq)
    a, alpha = instance.a, ineq.alpha
    gamma = tuple(sorted({c for c in alpha if c > 0}))
    rank = {g: k for k, g in enumerate(gamma)}
    # blocks by gamma, zero tail last; ties on weight broken by original index
    key = lambda i: (rank.get(alpha[i], len(gamma)), a[i], i)  # noqa: E731
    perm = tuple(sorted(range(instance.n), key=key))
    bounds = [0]
    for g in gamma:
        bounds.append(bounds[-1] + sum(1 for c in alpha if c == g))
    return NormalizedProblem(
        n=instance.n,
        gamma=gamma,
        block_bounds=tuple(bounds),
        perm=perm,
        a_sorted=tuple(a[i] for i in perm),
    )


@dataclass(frozen=True)
class BasicSolution:
    """A ``z``-basic solution in the reordered space.

    ``kind`` is ``("minimal",)`` for ``x[z]`` or ``("variant", k, i)`` for the
    block-``k`` variant with 1-based in-block index ``i``.
    """

    point: Point
    profile: tuple[int, ...]
    kind: tuple = ("minimal",)


def _check_profile(np_: NormalizedProblem, z: Sequence[int]) -> tuple[int, ...]:
    z = tuple(z)
    if len(z) != np_.K:
        raise ValueError(f"profile has length {len(z)}, expected {np_.K}")
    for zk, size in zip(z, np_.block_sizes):
        if not 0 <= zk <= size:
            raise ValueError(f"profile entry {zk} outside [0, {size}]")
    return z


def minimal_point(np_: NormalizedProblem, z: Sequence[int]) -> list[int]:
    x = [0] * np_.n
    for lo, zk in zip(np_.block_bounds, z):
        for j in range(lo, lo + zk):
            x[j] = 1
    return x


def minimal_basic(np_: NormalizedProblem, z: Sequence[int]) -> BasicSolution:
    z = _check_profile(np_, z)
    return BasicSolution(tuple(minimal_point(np_, z)), z)


def block_variants(np_: NormalizedProblem, z: Sequence[int], k: int) -> list[BasicSolution]:
    """Single in-block swaps of ``x[z]`` that keep the block count.

    Blocks with ``z_k`` equal to 0 or the block size have no variants.
    """
    z = _check_profile(np_, z)
    if not 0 <= k < np_.K:
        raise ValueError(f"block index {k} outside [0, {np_.K})")
    size = np_.block_sizes[k]
    zk = z[k]
    if zk == 0 or zk == size:
        return []
    base = minimal_point(np_, z)
    lo = np_.block_bounds[k]
    out = []
    for i in range(1, size + 1):
        if i == zk:
            continue
        x = list(base)
        if i < zk:
            x[lo + i - 1] = 0
            x[lo + zk] = 1
        else:
            x[lo + zk - 1] = 0
            x[lo + i - 1] = 1
        out.append(BasicSolution(tuple(x), z, ("variant", k, i)))
    return out


def basic_solutions(np_: NormalizedProblem, z: Sequence[int]) -> list[BasicSolution]:
    """``x[z]`` followed by every block's variants, blocks in order."""
    out = [minimal_basic(np_, z)]
    for k in range(np_.K):
        out.extend(block_variants(np_, z, k))
    return out


def iter_profiles(np_: NormalizedProblem, tight_to: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Profiles in lexicographic order, optionally only those of value ``tight_to``."""
    sizes = np_.block_sizes
    gamma = np_.gamma
    K = len(sizes)
    # largest value still reachable from blocks k..K-1
    reach = [0] * (K + 1)
    for k in range(K - 1, -1, -1):
        reach[k] = reach[k + 1] + gamma[k] * sizes[k]

    z = [0] * K

    def rec(k: int, remaining: Optional[int]) -> Iterator[tuple[int, ...]]:
        if k == K:
            if remaining is None or remaining == 0:
                yield tuple(z)
            return
        for c in range(sizes[k] + 1):
            if remaining is not None:
                left = remaining - gamma[k] * c
                if left < 0:
                    break
                if left > reach[k + 1]:
                    continue
            else:
                left = None
            z[k] = c
            yield from rec(k + 1, left)

    yield from rec(0, tight_to)


def enumerate_profiles(np_: NormalizedProblem, tight_to: Optional[int] = None) -> list[tuple[int, ...]]:
    return list(iter_profiles(np_, tight_to))
