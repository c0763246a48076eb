"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the per-criterion summary
at the end of the session.
"""
import random
import time
from collections import Counter
from itertools import combinations, product

from acceptance_log import criterion
from kpfacets.core import Inequality, KnapsackInstance, iter_profiles, normalize
from kpfacets.exact_linalg import affine_rank
from kpfacets.oracle import (
    CssInstance,
    EvcInstance,
    brute_analyze,
    check_membership,
    knapsack_max,
    partition_witness,
    solve_css,
    solve_evc,
    solve_partition,
    verify_exact_knapsack,
)
from kpfacets.recognizer import (
    candidate_bound,
    check_facet,
    check_validity,
    face_dimension,
)
from kpfacets.reductions import (
    css_to_ek,
    css_to_facets,
    css_to_supporting,
    evc_to_css,
    gu_decompose,
    gu_sequence,
    partition_to_membership,
)

# certificate audits performed by every suite, checked by criterion 9
AUDITS = Counter()


def audit(inst, ineq, facet_verdict, validity_verdict):
    if facet_verdict.is_facet:
        AUDITS["facet"] += 1
        cert = facet_verdict.certificate
        ok = (
            len(cert) == inst.n
            and all(inst.feasible(x) and ineq.value(x) == ineq.beta for x in cert)
            and affine_rank(list(cert)) == inst.n
        )
        AUDITS["failed"] += not ok
    for v in (validity_verdict, facet_verdict):
        if v is not None and v.violation is not None:
            AUDITS["violation"] += 1
            AUDITS["failed"] += not (inst.feasible(v.violation) and ineq.value(v.violation) > ineq.beta)


def compare(inst, ineq, mismatches, stats, dim=True):
    """Recognizer against oracle on one pair; records mismatches and audits."""
    rep = brute_analyze(inst, ineq)
    val = check_validity(inst, ineq)
    fac = check_facet(inst, ineq)
    audit(inst, ineq, fac, val)
    stats["pairs"] += 1
    stats["valid"] += rep.valid
    stats["facet"] += rep.is_facet
    if val.valid != rep.valid or fac.is_facet != rep.is_facet:
        mismatches.append((inst, ineq, "valid/facet"))
    if dim and rep.valid and not normalize(inst, ineq).tail:
        stats["dim"] += 1
        if face_dimension(inst, ineq) != rep.face_dim:
            mismatches.append((inst, ineq, "dim"))


def test_criterion_1_exhaustive_small():
    with criterion(1, "exhaustive oracle equivalence, n <= 4") as c:
        mismatches, stats = [], Counter()
        for n in range(1, 5):
            alphas = list(product(range(4), repeat=n))
            for a in product(range(4), repeat=n):
                for b in range(max(a), 7):
                    inst = KnapsackInstance(a, b)
                    for alpha in alphas:
                        for beta in range(7):
                            compare(inst, Inequality(alpha, beta), mismatches, stats)
        c.detail = f"{stats['pairs']} pairs, {stats['facet']} facets, {stats['dim']} dim checks, {len(mismatches)} mismatches"
        assert not mismatches, mismatches[:5]


def random_pair(rng: random.Random):
    n = rng.randint(1, 14)
    style = rng.randrange(3)
    if style == 0:
        a = [rng.randint(0, 30) for _ in range(n)]
    else:
        # clustered weights make tight faces large enough to be facets
        base = rng.randint(1, 10)
        a = [base * rng.randint(1, 3) + rng.randint(0, 2) for _ in range(n)]
    values = rng.sample(range(1, 31), rng.randint(1, 3))
    if style == 2:
        alpha = [rng.choice(values) if rng.random() < 0.85 else 0 for _ in range(n)]
    else:
        alpha = [rng.choice(values + [0]) for _ in range(n)]
    b = rng.randint(max(a), max(max(a), sum(a)))
    inst = KnapsackInstance(a, b)
    best, _ = knapsack_max(alpha, inst)
    beta = max(0, best + rng.choice((0, 0, 0, -1, 1)))
    return inst, Inequality(alpha, beta)


def test_criterion_2_randomized():
    with criterion(2, "randomized oracle equivalence, n <= 14, K <= 3") as c:
        rng = random.Random(20240611)
        mismatches, stats = [], Counter()
        for _ in range(1000):
            inst, ineq = random_pair(rng)
            assert len({x for x in ineq.alpha if x}) <= 3
            compare(inst, ineq, mismatches, stats)
        c.detail = (
            f"{stats['pairs']} pairs, {stats['valid']} valid, {stats['facet']} facets, "
            f"{stats['dim']} dim checks, {len(mismatches)} mismatches"
        )
        assert stats["pairs"] >= 1000
        assert not mismatches, mismatches[:5]


def graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield tuple(e for i, e in enumerate(pairs) if mask >> i & 1)


def test_criterion_3_evc_to_css():
    with criterion(3, "EVC -> CSS answer preservation") as c:
        checked, bad, yes = 0, [], 0
        for n in range(1, 6):
            for edges in graphs(n):
                for k in range(6):
                    evc = EvcInstance(n, edges, k)
                    want = solve_evc(evc)
                    css, _ = evc_to_css(evc)
                    checked += 1
                    yes += want
                    if solve_css(css) != want:
                        bad.append(evc)
        c.detail = f"{checked} (graph, k) pairs, all 1024 graphs on 5 vertices, {yes} yes, {len(bad)} mismatches"
        assert not bad, bad[:5]


def small_css(max_len, ts):
    """Every instance with at most ``max_len`` items and 1 <= w_i <= t - 1."""
    for t in ts:
        for size in range(max_len + 1):
            for w in product(range(1, t), repeat=size):
                yield CssInstance(w, t)


def test_criterion_4_css_to_facets():
    with criterion(4, "CSS -> facet recognition, both engines") as c:
        ineq, inst, p = css_to_facets(CssInstance((1, 1), 2))
        assert (p.r, p.N, inst.b, ineq.beta) == (6, 18, 771, 384)
        cases = list(small_css(2, range(2, 5)))
        bad, yes, max_n = [], 0, 0
        for css in cases:
            want = solve_css(css)
            ineq, inst, params = css_to_facets(css)
            max_n = max(max_n, params.N)
            fac = check_facet(inst, ineq)
            rep = brute_analyze(inst, ineq)
            audit(inst, ineq, fac, None)
            yes += want
            if not (fac.is_facet == rep.is_facet == want):
                bad.append((css, want, fac.is_facet, rep.is_facet))
        c.detail = f"{len(cases)} instances, {yes} yes, dimension up to {max_n}, {len(bad)} mismatches"
        assert not bad, bad


def test_criterion_5_supporting_and_ek():
    with criterion(5, "CSS -> supporting hyperplane and exact knapsack") as c:
        cases = [CssInstance(w, t) for t in range(2, 9) for s in range(4) for w in product(range(1, 5), repeat=s)]
        bad, yes = [], 0
        for css in cases:
            want = solve_css(css)
            yes += want
            ineq, inst = css_to_supporting(css)
            rep = brute_analyze(inst, ineq)
            supporting = rep.valid and bool(rep.tight_points)
            cvec, ek_inst, L = css_to_ek(css)
            if not (supporting == want == verify_exact_knapsack(cvec, ek_inst, L)):
                bad.append(css)
        c.detail = f"{len(cases)} instances, {yes} yes, {len(bad)} mismatches"
        assert not bad, bad[:5]


def test_criterion_6_partition_membership():
    with criterion(6, "partition -> membership") as c:
        rng = random.Random(6)
        bad, yes, total = [], 0, 0
        for i in range(200):
            n = rng.randint(1, 14)
            if i % 2 == 0 and n >= 2:
                # planted: top up the lighter side so the two halves balance
                left = [rng.randint(1, 40) for _ in range(rng.randint(1, n - 1))]
                right = [rng.randint(1, 40) for _ in range(n - 1 - len(left))]
                gap = sum(left) - sum(right)
                if gap:
                    (right if gap > 0 else left).append(abs(gap))
                a = left + right
                rng.shuffle(a)
                assert partition_witness(a) is not None
            else:
                a = [rng.randint(1, 40) for _ in range(n)]
            want = solve_partition(a)
            point, inst = partition_to_membership(tuple(a))
            weights = check_membership(point, inst)
            total += 1
            yes += want
            if want != (weights is not None):
                bad.append(a)
            if weights is not None:
                assert sum(weights) == 1 and min(weights) >= 0
        c.detail = f"{total} vectors, {yes} partitionable, {len(bad)} mismatches"
        assert total >= 200 and not bad, bad[:5]


def sqrt2_nonneg(p, q):
    """Exact test of ``p + q*sqrt(2) >= 0`` for integers."""
    if p >= 0 and q >= 0:
        return True
    if p <= 0 and q <= 0:
        return p == q == 0
    return p * p >= 2 * q * q if p > 0 else 2 * q * q >= p * p


def test_criterion_7_gu_suite():
    with criterion(7, "Gu sequence identities, bounds and completeness") as c:
        f = gu_sequence(60)
        for j in range(3, 61):
            assert f[j] == f.prefix_sum(j - 2)
            # sqrt(2)^j = u + v*sqrt(2)
            u, v = (2 ** (j // 2), 0) if j % 2 == 0 else (0, 2 ** (j // 2))
            # (sqrt(2)-1)(u + v sqrt 2) = (2v - u) + (u - v) sqrt 2 <= 4 f_j
            assert sqrt2_nonneg(4 * f[j] - (2 * v - u), v - u)
            assert f[j] <= 2**j

        taus = 0
        for r in range(1, 11):
            g = gu_sequence(2 * r + 1)
            total = g.prefix_sum(2 * r + 1)
            reach = 1
            for term in g.terms:
                reach |= reach << term
            assert reach == (1 << (total + 1)) - 1
            for tau in range(total + 1):
                s = gu_decompose(r, tau)
                assert len(set(s)) == len(s) and sum(g[j] for j in s) == tau
                taus += 1

        big = gu_sequence(2 * 40)
        prefix = [0]
        for term in big.terms:
            prefix.append(prefix[-1] + term)
        for L in range(10**6 + 1):
            r = (30 * L + 20 - 1).bit_length() - 1
            assert prefix[2 * r] > 3 * L + 2, L
        rng = random.Random(7)
        for _ in range(200):
            w = tuple(rng.randint(1, 5000) for _ in range(rng.randint(1, 200)))
            css_to_facets(CssInstance(w, sum(w) + 1))  # asserts the prefix-sum bound internally
        c.detail = f"j in 3..60, {taus} decomposition targets, prefix bound for L <= 10^6 plus 200 generated reductions"


def xp_instances():
    rng = random.Random(7)
    alpha = [rng.choice((2, 3)) for _ in range(100)]
    a = [g * 10**5 + rng.randint(0, 999) for g in alpha]
    yield "clustered", KnapsackInstance(a, 100 * 10**5 + 60000), Inequality(alpha, 100)
    rng = random.Random(8)
    a = [rng.randint(1, 10**6) for _ in range(100)]
    alpha = [rng.choice((1, 2)) for _ in range(100)]
    inst = KnapsackInstance(a, sum(a) // 3)
    yield "uniform", inst, Inequality(alpha, profile_optimum(inst, alpha))


def profile_optimum(inst, alpha):
    """max alpha . x over the knapsack set: the best profile whose cheapest point fits."""
    np_ = normalize(inst, Inequality(alpha, 0))
    return max(np_.profile_value(z) for z in iter_profiles(np_) if np_.profile_weight(z) <= inst.b)


def test_criterion_8_xp_scaling():
    with criterion(8, "XP scaling smoke test, n = 100, K = 2") as c:
        parts = []
        for name, inst, ineq in xp_instances():
            assert max(inst.a) <= 10**6 and len({x for x in ineq.alpha if x}) == 2
            t0 = time.perf_counter()
            v = check_facet(inst, ineq)
            secs = time.perf_counter() - t0
            np_ = normalize(inst, ineq)
            bound = candidate_bound(np_.truncated() if np_.tail else np_)
            audit(inst, ineq, v, None)
            assert secs <= 10, f"{name}: {secs:.2f}s"
            assert v.candidates_examined <= bound
            parts.append(f"{name}: facet={v.is_facet} {v.candidates_examined}/{bound} candidates {secs:.3f}s")
        c.detail = "; ".join(parts)


def test_criterion_9_certificate_audit():
    with criterion(9, "certificate audit across suites") as c:
        if not AUDITS["facet"]:
            # run standalone: audit a fresh sweep
            mismatches, stats = [], Counter()
            for n in range(1, 4):
                for a in product(range(3), repeat=n):
                    for alpha in product(range(3), repeat=n):
                        for beta in range(5):
                            compare(KnapsackInstance(a, max(a) + 1), Inequality(alpha, beta), mismatches, stats)
        c.detail = f"{AUDITS['facet']} facet certificates, {AUDITS['violation']} violations, {AUDITS['failed']} failures"
        assert AUDITS["facet"] > 0 and AUDITS["violation"] > 0
        assert AUDITS["failed"] == 0
