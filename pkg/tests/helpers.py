"""Shared generators for randomized suites."""
from hypothesis import strategies as st

from kpfacets.core import Inequality, KnapsackInstance
from kpfacets.oracle import knapsack_max


@st.composite
def full_dim_pairs(draw, max_n=8, max_coef=8, max_alpha=None):
    """Full-dimensional instances with beta near the true optimum of alpha."""
    n = draw(st.integers(1, max_n))
    a = draw(st.lists(st.integers(0, max_coef), min_size=n, max_size=n))
    alpha = draw(st.lists(st.integers(0, max_alpha or max_coef), min_size=n, max_size=n))
    b = draw(st.integers(max(a), max(max(a), sum(a))))
    inst = KnapsackInstance(a, b)
    best, _ = knapsack_max(alpha, inst)
    beta = max(0, best + draw(st.sampled_from((0, 0, 0, -1, 1))))
    return inst, Inequality(alpha, beta)
