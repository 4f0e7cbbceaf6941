import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddcycles.density import (
    DensityParams,
    DensityStatus,
    PreconditionError,
    SizeLimitError,
    WeightFunction,
    check_density_exact,
    check_density_heuristic,
    lemma_f_verify,
    min_density_ratio,
    weighted_min_exact,
    weighted_min_grid_oracle,
    weighted_objective,
)
from oddcycles.graph import Graph, clique_union, complete, gen_random, induced_edge_count

from .conftest import graphs, rationals_in

F = Fraction


def brute_density(g: Graph, p: DensityParams):
    """Oracle: itertools over all admissible sets, same tie-break (size, then sorted tuple)."""
    k0 = math.ceil(p.eps * g.n)
    for k in range(k0, g.n + 1):
        for xs in itertools.combinations(range(g.n), k):
            if induced_edge_count(g, xs) < p.d / 2 * k * k:
                return list(xs)
    return None


def endpoint_enumeration(g: Graph, p: DensityParams) -> Fraction:
    """Oracle: every (S, z) with both ends of the feasible delta interval, in Fractions."""
    n, target = g.n, p.eps * g.n
    best = None
    for mask in range(1 << n):
        ones = [v for v in range(n) if mask >> v & 1]
        cands = []
        if len(ones) >= target:
            cands.append(WeightFunction(tuple(F(int(mask >> v & 1)) for v in range(n))))
        for z in range(n):
            if mask >> z & 1:
                continue
            lo = max(F(0), target - len(ones))
            if lo > 1:
                continue
            for delta in (lo, F(1)):
                vals = [F(int(mask >> v & 1)) for v in range(n)]
                vals[z] = delta
                cands.append(WeightFunction(tuple(vals)))
        for f in cands:
            val = weighted_objective(g, f, p.d)
            best = val if best is None else min(best, val)
    return best


def test_params_validation():
    with pytest.raises(ValueError):
        DensityParams(F(1), F(1, 2))
    with pytest.raises(ValueError):
        DensityParams(F(0), F(1, 2))
    with pytest.raises(ValueError):
        DensityParams(F(1, 2), F(3, 2))
    assert DensityParams("1/3", "2/5").min_size(10) == 4


def test_exact_examples():
    # sizes 3..6 of K_6: C(k,2) >= k^2/4
    assert all(math.comb(k, 2) >= F(k * k, 4) for k in range(3, 7))
    cert = check_density_exact(complete(6), DensityParams(F(1, 2), F(1, 2)))
    assert cert.status is DensityStatus.CERTIFIED
    assert cert.checked_subsets == sum(math.comb(6, k) for k in range(3, 7))

    cert = check_density_exact(Graph.empty(10), DensityParams(F(1, 2), F(1, 100)))
    assert cert.status is DensityStatus.REFUTED
    assert cert.witness_members == [0, 1, 2, 3, 4]

    g = gen_random(12, F(1, 5), seed=2)
    assert check_density_exact(g, DensityParams(F(1, 3), F(0))).status is DensityStatus.CERTIFIED


def test_exact_size_limit():
    with pytest.raises(SizeLimitError):
        check_density_exact(Graph.empty(25), DensityParams(F(1, 2), F(0)))
    with pytest.raises(SizeLimitError):
        check_density_exact(Graph.empty(9), DensityParams(F(1, 2), F(0)), limit=8)


@given(graphs(max_n=8), rationals_in(True), rationals_in(False))
def test_exact_matches_brute_force(g, eps, d):
    p = DensityParams(eps, d)
    cert = check_density_exact(g, p)
    expected = brute_density(g, p)
    if expected is None:
        assert cert.status is DensityStatus.CERTIFIED and cert.witness is None
    else:
        assert cert.status is DensityStatus.REFUTED
        assert cert.witness_members == expected
        size = len(expected)
        assert size >= math.ceil(eps * g.n)
        assert induced_edge_count(g, cert.witness) < d / 2 * size * size


def test_witness_lexicographic_order():
    # independent sets of size 2 in the path 0-1-2-3: {0,2}, {0,3}, {1,3}
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    cert = check_density_exact(g, DensityParams(F(1, 2), F(1, 2)))
    assert cert.witness_members == [0, 2]


@given(graphs(min_n=1, max_n=8), rationals_in(True))
def test_min_density_ratio_is_tight(g, eps):
    d = min_density_ratio(g, eps)
    assert check_density_exact(g, DensityParams(eps, d)).status is DensityStatus.CERTIFIED
    bumped = d + F(1, 1000)
    if bumped <= 1:
        assert check_density_exact(g, DensityParams(eps, bumped)).status is DensityStatus.REFUTED


def test_heuristic_examples():
    p = DensityParams(F(1, 2), F(1, 100))
    assert check_density_heuristic(Graph.empty(10), p, 5, seed=0).status is DensityStatus.REFUTED
    k20 = complete(20)
    p = DensityParams(F(1, 4), F(1, 2))
    assert check_density_exact(k20, p).status is DensityStatus.CERTIFIED
    cert = check_density_heuristic(k20, p, 500, seed=11)
    assert cert.status is DensityStatus.UNVERIFIED and cert.witness is None
    g = clique_union(3, 5)
    p = DensityParams(F(1, 3), F(1, 2))
    assert (check_density_heuristic(g, p, 300, seed=5)
            == check_density_heuristic(g, p, 300, seed=5))


def test_heuristic_finds_hidden_sparse_set():
    # dense random graph with a planted independent set of size 6
    base = gen_random(16, F(3, 4), seed=3)
    keep = [(u, v) for u, v in base.edges() if not (u < 6 and v < 6)]
    g = Graph.from_edges(16, keep)
    p = DensityParams(F(3, 8), F(1, 4))
    assert check_density_exact(g, p).status is DensityStatus.REFUTED
    cert = check_density_heuristic(g, p, 3000, seed=1)
    assert cert.status is DensityStatus.REFUTED
    size = cert.witness.bit_count()
    assert size >= 6 and induced_edge_count(g, cert.witness) < p.d / 2 * size * size


@settings(max_examples=40)
@given(graphs(max_n=9), rationals_in(True), rationals_in(False), st.integers(0, 100))
def test_heuristic_consistency(g, eps, d, seed):
    p = DensityParams(eps, d)
    exact = check_density_exact(g, p)
    heur = check_density_heuristic(g, p, 50, seed)
    if exact.status is DensityStatus.CERTIFIED:
        assert heur.status is DensityStatus.UNVERIFIED
    else:
        seeded = check_density_heuristic(g, p, 1, seed, start=exact.witness)
        assert seeded.status is DensityStatus.REFUTED


def test_weighted_min_empty_graph():
    # no edge term, so the objective is -(d/2)(sum f)^2: largest total wins
    p = DensityParams(F(1, 2), F(1))
    res = weighted_min_exact(Graph.empty(4), p)
    assert res.omega == -8
    assert res.minimizer.values == (1, 1, 1, 1)
    assert weighted_min_grid_oracle(Graph.empty(4), p, F(1, 4)) == -8


def test_weighted_min_near_full_constraint():
    # eps*n = 297/100 on K_3; f = 1 everywhere beats every fractional option
    p = DensityParams(F(99, 100), F(1))
    res = weighted_min_exact(complete(3), p)
    assert res.omega == F(-3, 2) == 3 - F(1, 2) * 9
    assert weighted_min_grid_oracle(complete(3), p, F(1, 2)) == F(-3, 2)


def test_weighted_min_fractional_coordinate():
    # K_5, eps*n = 5/3: one vertex at 1 and one at 2/3 gives 2/3 - (1/4)(25/9)
    res = weighted_min_exact(complete(5), DensityParams(F(1, 3), F(1, 2)))
    assert res.omega == F(2, 3) - F(25, 36) == F(-1, 36)
    assert res.minimizer.fractional() == [res.z]
    assert res.delta == F(2, 3)
    assert res.minimizer.values == (F(2, 3), 1, 0, 0, 0)


@settings(max_examples=40)
@given(graphs(max_n=6), rationals_in(True))
def test_weighted_min_d_zero(g, eps):
    p = DensityParams(eps, F(0))
    res = weighted_min_exact(g, p)
    assert res.omega <= weighted_min_grid_oracle(g, p, F(1, 4))
    k0 = math.ceil(eps * g.n)
    has_independent = any(induced_edge_count(g, xs) == 0
                          for xs in itertools.combinations(range(g.n), k0))
    if has_independent:
        assert res.omega == 0
        assert res.z is None
        assert res.ones.bit_count() == k0 and induced_edge_count(g, res.ones) == 0
    else:
        assert res.omega > 0


@settings(max_examples=80)
@given(graphs(max_n=6), rationals_in(True), rationals_in(False))
def test_weighted_min_matches_endpoint_enumeration(g, eps, d):
    p = DensityParams(eps, d)
    res = weighted_min_exact(g, p)
    assert res.omega == endpoint_enumeration(g, p)
    assert len(res.minimizer.fractional()) <= 1
    assert res.minimizer.total() >= eps * g.n
    assert weighted_objective(g, res.minimizer, d) == res.omega


@settings(max_examples=40)
@given(graphs(max_n=6), rationals_in(True, max_den=8), rationals_in(False, max_den=8))
def test_structural_minimality_against_grid(g, eps, d):
    p = DensityParams(eps, d)
    res = weighted_min_exact(g, p)
    grid = weighted_min_grid_oracle(g, p, F(1, 4))
    assert res.omega <= grid
    if all((4 * v).denominator == 1 for v in res.minimizer.values):
        assert res.omega == grid


@given(graphs(max_n=7), rationals_in(True), rationals_in(False), rationals_in(False))
def test_monotone_in_d(g, eps, d1, d2):
    lo, hi = sorted((d1, d2))
    assert (weighted_min_exact(g, DensityParams(eps, hi)).omega
            <= weighted_min_exact(g, DensityParams(eps, lo)).omega)


def test_grid_oracle_guards():
    with pytest.raises(SizeLimitError):
        weighted_min_grid_oracle(Graph.empty(9), DensityParams(F(1, 2), F(0)))
    with pytest.raises(ValueError):
        weighted_min_grid_oracle(Graph.empty(3), DensityParams(F(1, 2), F(0)), F(2, 3))
    with pytest.raises(SizeLimitError):
        weighted_min_exact(Graph.empty(21), DensityParams(F(1, 2), F(0)))


def test_grid_oracle_brute_force_small():
    g = Graph.from_edges(3, [(0, 1)])
    p = DensityParams(F(1, 2), F(2, 3))
    best = None
    for vals in itertools.product([F(0), F(1, 2), F(1)], repeat=3):
        f = WeightFunction(vals)
        if f.total() >= p.eps * 3:
            val = weighted_objective(g, f, p.d)
            best = val if best is None else min(best, val)
    assert weighted_min_grid_oracle(g, p, F(1, 2)) == best


def test_lemma_f_examples():
    k4 = complete(4)
    f = WeightFunction((F(1),) * 4)
    lhs = weighted_objective(k4, f, F(0))
    rhs = F(2, 3) / 2 * f.total() ** 2 - 4
    assert (lhs, rhs) == (6, F(4, 3))
    # K_4 is not (1/2, 2/3)-dense (a pair spans 1 < 4/3 edges), but it is (1/2, 1/2)-dense
    assert check_density_exact(k4, DensityParams(F(1, 2), F(2, 3))).status is DensityStatus.REFUTED
    p = DensityParams(F(1, 2), F(1, 2))
    cert = check_density_exact(k4, p)
    rep = lemma_f_verify(k4, p, cert, trials=50, seed=1)
    assert rep.holds and rep.omega >= -4


def test_lemma_f_precondition():
    g = Graph.empty(6)
    p = DensityParams(F(1, 2), F(1, 2))
    cert = check_density_exact(g, p)
    with pytest.raises(PreconditionError):
        lemma_f_verify(g, p, cert, 10, 0)
    with pytest.raises(PreconditionError):
        lemma_f_verify(g, p, None, 10, 0)
    other = check_density_exact(g, DensityParams(F(1, 2), F(0)))
    with pytest.raises(PreconditionError):
        lemma_f_verify(g, p, other, 10, 0)


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=10), rationals_in(True), st.integers(0, 1000))
def test_lemma_f_on_certified_graphs(g, eps, seed):
    p = DensityParams(eps, min_density_ratio(g, eps))
    cert = check_density_exact(g, p)
    rep = lemma_f_verify(g, p, cert, trials=20, seed=seed)
    assert not rep.violations
    assert rep.omega >= -g.n


def test_sampler_reaches_high_targets():
    from oddcycles.density import sample_weight_function
    rng = random.Random(0)
    f = sample_weight_function(20, F(19), rng)
    assert f.total() >= 19 and all((16 * v).denominator == 1 for v in f.values)
