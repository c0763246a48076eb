"""Validity, facet and face-dimension decisions via basic knapsack solutions.

Work is polynomial for a fixed number ``K`` of distinct positive coefficients:
every decision scans profiles ``z`` (per-block counts of ones) and the few
basic solutions built from each one, never the full cube.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import prod
from typing import Optional

from .core import (
    Inequality,
    KnapsackInstance,
    NormalizedProblem,
    Point,
    basic_solutions,
    check_pair,
    iter_profiles,
    minimal_point,
    normalize,
)
from .exact_linalg import IncrementalBasis, affine_rank

log = logging.getLogger(__name__)

NOT_VALID = "not-valid"
TAIL_FAILED = "tail-condition-failed"
RANK_DEFICIENT = "rank-deficient"
ALPHA_ZERO = "alpha-zero"
NOT_FULL_DIMENSIONAL = "not-full-dimensional"


class NotFullDimensional(ValueError):
    """Raised when some item weight exceeds the capacity."""


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    violation: Optional[Point] = None


@dataclass(frozen=True)
class FacetVerdict:
    is_facet: bool
    reason: Optional[str] = None
    certificate: Optional[tuple[Point, ...]] = None
    face_dim: Optional[int] = None
    violation: Optional[Point] = None
    candidates_examined: int = 0


def candidate_bound(np_: NormalizedProblem) -> int:
    """Upper bound on basic solutions generated by one facet scan."""
    return (np_.support_end - np_.K + 1) * prod(s + 1 for s in np_.block_sizes)


def _validity(instance: KnapsackInstance, ineq: Inequality, np_: NormalizedProblem) -> ValidityVerdict:
    b, beta = instance.b, ineq.beta
    for z in iter_profiles(np_):
        if np_.profile_value(z) > beta and np_.profile_weight(z) <= b:
            return ValidityVerdict(False, np_.to_original(minimal_point(np_, z)))
    return ValidityVerdict(True)


def check_validity(instance: KnapsackInstance, ineq: Inequality) -> ValidityVerdict:
    """Decide ``alpha . x <= beta`` over the knapsack set.

    A violated point exists iff the cheapest point with the same block counts
    (the minimal basic solution) violates too, so only profiles are scanned.
    """
    return _validity(instance, ineq, normalize(instance, ineq))


def tail_witness(instance: KnapsackInstance, ineq: Inequality, np_: NormalizedProblem) -> Optional[Point]:
    """A feasible tight point using the heaviest zero-coefficient item, if any.

    Returned in original indexing.
    """
    if not np_.tail:
        raise ValueError("tail_witness needs at least one zero-coefficient variable")
    last = np_.n - 1
    room = instance.b - np_.a_sorted[last]
    for z in iter_profiles(np_, tight_to=ineq.beta):
        if np_.profile_weight(z) <= room:
            x = minimal_point(np_, z)
            x[last] = 1
            return np_.to_original(x)
    return None


def _tight_candidates(np_: NormalizedProblem, b: int, beta: int, z) -> tuple[int, list[Point]]:
    """(number generated, feasible ones) for one tight profile, or (0, []) if x[z] is infeasible."""
    if np_.profile_weight(z) > b:
        return 0, []
    sols = basic_solutions(np_, z)
    a = np_.a_sorted
    feasible = [s.point for s in sols if sum(ai for ai, xi in zip(a, s.point) if xi) <= b]
    return len(sols), feasible


def _scan(np_: NormalizedProblem, b: int, beta: int, stop_at: Optional[int], threads: int = 1):
    """Greedy rank-growing scan over feasible basic solutions of tight profiles.

    Returns ``(rank, chosen points, candidates examined)``; the scan stops
    early once ``stop_at`` affinely independent points are found. Profiles
    are visited in lexicographic order, so the chosen set does not depend on
    ``threads``.
    """
    dim = np_.n
    basis = IncrementalBasis(dim + 1)
    chosen: list[Point] = []
    examined = 0
    profiles = iter_profiles(np_, tight_to=beta)

    def consume(generated: int, feasible: list[Point]) -> bool:
        nonlocal examined
        examined += generated
        for p in feasible:
            if basis.add(p + (1,)):
                chosen.append(p)
                if stop_at is not None and len(chosen) >= stop_at:
                    return True
        return False

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(lambda z: _tight_candidates(np_, b, beta, z), profiles)
            for generated, feasible in results:
                if consume(generated, feasible):
                    break
    else:
        for z in profiles:
            if consume(*_tight_candidates(np_, b, beta, z)):
                break
    return len(chosen), chosen, examined


def check_facet(instance: KnapsackInstance, ineq: Inequality, threads: int = 1) -> FacetVerdict:
    """Decide whether ``alpha . x <= beta`` defines a facet of the knapsack polytope.

    Raises :class:`NotFullDimensional` when some ``a_i > b``.
    """
    check_pair(instance, ineq)
    if not instance.full_dimensional():
        raise NotFullDimensional(f"max item weight {max(instance.a)} exceeds capacity {instance.b}")
    n = instance.n
    if not any(ineq.alpha):
        return FacetVerdict(False, ALPHA_ZERO, face_dim=n if ineq.beta == 0 else -1)

    np_ = normalize(instance, ineq)
    validity = _validity(instance, ineq, np_)
    if not validity.valid:
        return FacetVerdict(False, NOT_VALID, violation=validity.violation)

    witness = None
    core = np_
    if np_.tail:
        witness = tail_witness(instance, ineq, np_)
        if witness is None:
            return FacetVerdict(False, TAIL_FAILED)
        core = np_.truncated()

    m = core.n
    rank, chosen, examined = _scan(core, instance.b, ineq.beta, stop_at=m, threads=threads)
    log.debug("facet scan: rank %d of %d after %d candidates", rank, m, examined)
    if rank < m:
        # the scan ran to completion, so rank is exact for the tail-free face
        face_dim = rank - 1 if witness is None else None
        return FacetVerdict(False, RANK_DEFICIENT, face_dim=face_dim, candidates_examined=examined)

    if witness is None:
        cert = tuple(np_.to_original(p) for p in chosen)
    else:
        cert = _lift_certificate(np_, chosen, np_.to_reordered(witness))
    return FacetVerdict(True, certificate=cert, face_dim=n - 1, candidates_examined=examined)


def _lift_certificate(np_: NormalizedProblem, core_points: list[Point], witness: Point) -> tuple[Point, ...]:
    """Extend a certificate of the truncated problem by the zero-coefficient tail.

    ``witness`` (reordered) is tight, feasible and has the heaviest tail item
    set; swapping that item for each lighter tail item keeps both properties.
    """
    n, m = np_.n, np_.support_end
    last = n - 1
    base = list(witness[:m]) + [0] * (n - m - 1) + [1]
    pts = [tuple(base)]
    for j in range(m, last):
        x = list(base)
        x[last] = 0
        x[j] = 1
        pts.append(tuple(x))
    pts.extend(p + (0,) * (n - m) for p in core_points)
    return tuple(np_.to_original(p) for p in pts)


def face_dimension(instance: KnapsackInstance, ineq: Inequality) -> int:
    """Dimension of the face cut out by a valid inequality with no zero coefficients.

    Returns -1 for an empty face.
    """
    check_pair(instance, ineq)
    if not instance.full_dimensional():
        raise NotFullDimensional(f"max item weight {max(instance.a)} exceeds capacity {instance.b}")
    np_ = normalize(instance, ineq)
    if np_.tail:
        raise ValueError("face_dimension needs every coefficient positive (zero-coefficient tail present)")
    if not _validity(instance, ineq, np_).valid:
        raise ValueError("inequality is not valid")
    rank, _, _ = _scan(np_, instance.b, ineq.beta, stop_at=None)
    return rank - 1


def audit_certificate(instance: KnapsackInstance, ineq: Inequality, verdict: FacetVerdict) -> bool:
    """Re-verify a facet certificate or a violation from scratch."""
    if verdict.is_facet:
        cert = verdict.certificate or ()
        return (
            len(cert) == instance.n
            and all(instance.feasible(x) and ineq.value(x) == ineq.beta for x in cert)
            and affine_rank(list(cert)) == instance.n
        )
    if verdict.violation is not None:
        x = verdict.violation
        return instance.feasible(x) and ineq.value(x) > ineq.beta
    return True
