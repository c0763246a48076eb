"""Instance generators for the hardness reductions and the Gu sequence they use."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Inequality, KnapsackInstance
from .oracle import CssInstance, EvcInstance

# substitutes used when an input falls outside a construction's preconditions
CANONICAL_NO = CssInstance((1, 1), 2)
CANONICAL_YES = CssInstance((1,), 2)


@dataclass(frozen=True)
class GuTable:
    """``f_1 = f_2 = f_3 = 1``, ``f_i = f_{i-2} + f_{i-1}``; ``terms[j-1]`` is ``f_j``."""

    terms: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        return self.terms[j - 1]

    def __len__(self) -> int:
        return len(self.terms)

    def prefix_sum(self, j: int) -> int:
        """``f_1 + ... + f_j``."""
        return sum(self.terms[:j])


def gu_sequence(m: int) -> GuTable:
    if m < 1:
        raise ValueError("need at least one term")
    f = [1, 1, 1][:m]
    while len(f) < m:
        f.append(f[-2] + f[-1])
    return GuTable(tuple(f))


def gu_decompose(r: int, tau: int) -> tuple[int, ...]:
    """1-based indices ``S`` in ``[2r+1]`` with ``f(S) = tau``, largest index first.

    Greedy from the top works because each term is at most one more than
    the sum of all earlier terms.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    f = gu_sequence(2 * r + 1)
    total = f.prefix_sum(2 * r + 1)
    if not 0 <= tau <= total:
        raise ValueError(f"tau={tau} outside [0, {total}]")
    out = []
    rem = tau
    for j in range(2 * r + 1, 0, -1):
        if f[j] <= rem:
            out.append(j)
            rem -= f[j]
    assert rem == 0
    return tuple(out)


def evc_to_css(evc: EvcInstance) -> tuple[CssInstance, list[str]]:
    """Exact vertex cover to critical subset sum via base-``(n+1)`` digits.

    Returns the instance and a list of notes; ``k > n`` (never a yes
    instance, and outside the digit argument) maps to a fixed no-instance.
    """
    n, m = evc.num_vertices, len(evc.edges)
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    if evc.k > n:
        return CANONICAL_NO, [f"k={evc.k} exceeds vertex count {n}; emitted canonical no-instance"]
    base = n + 1
    powers = [base ** (j + 1) for j in range(m)]
    w = [1 + sum(p for p, e in zip(powers, evc.edges) if v in e) for v in range(n)]
    w += powers
    t = n - evc.k + 1 + sum(powers)
    return CssInstance(tuple(w), t), []


def css_to_supporting(css: CssInstance) -> tuple[Inequality, KnapsackInstance]:
    """``w . x <= t - 1`` against ``w . x <= t``."""
    if css.t < 1:
        raise ValueError("supporting-hyperplane construction needs t >= 1")
    return Inequality(css.w, css.t - 1), KnapsackInstance(css.w, css.t)


def css_to_ek(css: CssInstance) -> tuple[tuple[int, ...], KnapsackInstance, int]:
    """Objective ``w``, constraint ``w . x <= t`` and target value ``t - 1``."""
    if css.t < 0:
        raise ValueError("exact-knapsack construction needs t >= 0")
    return css.w, KnapsackInstance(css.w, css.t), css.t - 1


@dataclass(frozen=True)
class FacetReductionParams:
    L: int
    r: int
    N: int
    substituted: bool = False
    notes: tuple[str, ...] = ()


def _prepare_css(css: CssInstance) -> tuple[CssInstance, list[str]]:
    """Bring ``css`` to ``t >= 2`` and ``w_i <= t - 1`` without changing its answer."""
    t = css.t
    if t <= 0:
        return CANONICAL_NO, [f"t={t} <= 0 makes t-1 unreachable; emitted canonical no-instance"]
    if t in css.w:
        return CANONICAL_NO, [f"an item equals t={t}; emitted canonical no-instance"]
    kept = tuple(x for x in css.w if x < t)
    notes = []
    if len(kept) < len(css.w):
        notes.append(f"dropped {len(css.w) - len(kept)} item(s) heavier than t={t}")
    if t == 1:
        # no item equals 1 here, so 0 is reachable and 1 is not
        return CANONICAL_YES, notes + ["t=1 with no unit item; emitted canonical yes-instance"]
    return CssInstance(kept, t), notes


def css_to_facets(css: CssInstance) -> tuple[Inequality, KnapsackInstance, FacetReductionParams]:
    """Critical subset sum to knapsack facet recognition.

    The output inequality is facet-defining for the output knapsack polytope
    iff the CSS answer is yes.
    """
    prepared, notes = _prepare_css(css)
    w, t = prepared.w, prepared.t
    n = len(w)
    L = sum(w)
    # r = ceil(log2(30L + 20) - 1), computed exactly
    r = (30 * L + 20 - 1).bit_length() - 1
    N = 2 * r + n + 4
    f = gu_sequence(2 * r + 2)
    sum_2r = f.prefix_sum(2 * r)
    sum_2r1 = f.prefix_sum(2 * r + 1)
    if not sum_2r > 3 * L + 2:
        raise AssertionError(f"Gu prefix sum {sum_2r} not above 3L+2={3 * L + 2}")

    a = [t * f[i] for i in range(1, 2 * r + 2)]
    a.append(t * (2 * L + 1) + 1)
    a.extend((t + 1) * x for x in w)
    a.append(t * f[2 * r + 1] + t * t + t * (2 * L + 2) + 1)
    a.append(t + 1)
    b = t * sum_2r1 + t * t + t * (2 * L + 2) + 1

    alpha = [f[i] for i in range(1, 2 * r + 2)]
    alpha.append(2 * L + 2)
    alpha.extend(w)
    alpha.append(f[2 * r + 1] + t + 2 * L + 1)
    alpha.append(0)
    beta = sum_2r1 + t + 2 * L + 1

    assert len(a) == len(alpha) == N
    params = FacetReductionParams(L, r, N, substituted=prepared != css and prepared in (CANONICAL_NO, CANONICAL_YES), notes=tuple(notes))
    return Inequality(tuple(alpha), beta), KnapsackInstance(tuple(a), b), params


def partition_to_membership(a: tuple[int, ...]) -> tuple[tuple[Fraction, ...], KnapsackInstance]:
    """All-halves point against ``2a . x <= a([n])`` (the doubled form of ``a . x <= a([n])/2``)."""
    a = tuple(a)
    if not a:
        raise ValueError("partition input must be nonempty")
    if any(x < 1 for x in a):
        raise ValueError("partition weights must be positive")
    half = Fraction(1, 2)
    return tuple(half for _ in a), KnapsackInstance(tuple(2 * x for x in a), sum(a))
