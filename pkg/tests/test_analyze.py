import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from randinst import random_graph, random_instance

from pcsp.analyze import (
    Readout,
    conditional_partition,
    construct_optimal,
    count_optimal,
    extract,
    format_report,
    sample_gibbs_many,
    sample_optimal,
    sample_optimal_many,
)
from pcsp.encodings import (
    WeightedGraph,
    encode_clique,
    encode_ising,
    encode_judicious,
    encode_max_cut,
    trivial_instance,
)
from pcsp.instance import ConstraintGraph, brute_force_partition, restrict, score_assignment
from pcsp.ring import coefficient_of, max_degree

K3 = WeightedGraph(3, ((0, 1), (0, 2), (1, 2)))
EDGE = WeightedGraph(2, ((0, 1),))
C4 = WeightedGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


# --- conditional tables ----------------------------------------------------

def test_conditional_k3():
    table = conditional_partition(encode_max_cut(K3), {}, 1)
    assert [str(z) for z in table.values] == ["1 + 3*z^2", "1 + 3*z^2"]


def test_conditional_fully_fixed_gives_monomials():
    table = conditional_partition(encode_max_cut(EDGE), {0: 1}, 1)
    assert [str(z) for z in table.values] == ["z", "1"]


def test_conditional_symmetric_instance():
    table = conditional_partition(encode_max_cut(K3, k=3), {}, 2)
    assert len(set(table.values)) == 1


def test_conditional_rejects_assigned_vertex():
    with pytest.raises(ValueError):
        conditional_partition(encode_max_cut(K3), {1: 0}, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(2, 6))
def test_conditional_tables_sum_to_restricted(seed, n):
    rng = random.Random(seed)
    I = random_instance(rng, n, rng.randint(0, n * (n - 1) // 2), 2)
    fixed = {v: rng.randrange(2) for v in range(n - 1) if rng.random() < 0.5}
    v = n - 1
    table = conditional_partition(I, fixed, v)
    total = sum(table.values, I.ring.zero)
    assert total == brute_force_partition(restrict(I, fixed)[0])


# --- optimal assignments ---------------------------------------------------

def test_construct_optimal_k3():
    I = encode_max_cut(K3)
    sigma = construct_optimal(I, "z")
    assert sigma == (0, 0, 1)
    assert max_degree(score_assignment(I, sigma), "z") == 2


def test_construct_optimal_single_vertex_ising():
    assert construct_optimal(encode_ising(WeightedGraph(1)), "w") == (1,)


def test_construct_optimal_all_ones():
    I = trivial_instance(K3.graph, 2, ["z"])
    assert construct_optimal(I, "z") == (0, 0, 0)


def test_construct_optimal_empty_instance():
    with pytest.raises(ValueError):
        construct_optimal(trivial_instance(ConstraintGraph(0), 2, ["z"]), "z")


def test_construct_min_bisection_on_c4():
    I = encode_ising(C4)
    sigma = construct_optimal(I, "z", where={"w": 2}, sense="min")
    assert sum(sigma) == 2
    assert score_assignment(I, sigma) == I.ring.parse("w^2*z^2")


def test_count_optimal():
    assert count_optimal(encode_max_cut(K3), "z") == (2, 6)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 7), st.sampled_from(["reduce", "treedp"]))
def test_constructed_assignment_is_optimal(seed, n, method):
    rng = random.Random(seed)
    I = encode_max_cut(random_graph(rng, n))
    sigma = construct_optimal(I, "z", method)
    Z = brute_force_partition(I)
    assert max_degree(score_assignment(I, sigma), "z") == max_degree(Z, "z")


# --- sampling --------------------------------------------------------------

def test_sample_optimal_k3_uniform():
    draws = sample_optimal_many(encode_max_cut(K3), "z", 6000, seed=7)
    counts = Counter(draws)
    assert len(counts) == 6
    assert all(sum(d) in (1, 2) for d in counts)
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_sample_unique_optimum():
    I = encode_ising(WeightedGraph(3))
    assert set(sample_optimal_many(I, "w", 50, seed=1)) == {(1, 1, 1)}


def test_sample_single_edge_max_cut():
    draws = sample_optimal_many(encode_max_cut(EDGE), "z", 2000, seed=3)
    counts = Counter(draws)
    assert set(counts) == {(0, 1), (1, 0)}
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_sampling_is_reproducible():
    I = encode_max_cut(C4)
    assert sample_optimal(I, "z", seed=11) == sample_optimal(I, "z", seed=11)
    a = sample_gibbs_many(I, {"z": 1.5}, 20, seed=5)
    assert a == sample_gibbs_many(I, {"z": 1.5}, 20, seed=5)


def test_gibbs_single_vertex():
    I = encode_ising(WeightedGraph(1))
    even = Counter(s[0] for s in sample_gibbs_many(I, {"w": 1.0}, 4000, seed=2))
    assert chisquare([even[0], even[1]]).pvalue > 0.001
    biased = sample_gibbs_many(I, {"w": 3.0}, 10000, seed=2)
    assert abs(sum(s[0] for s in biased) / 10000 - 0.75) < 0.03


def test_gibbs_single_edge_at_one():
    draws = sample_gibbs_many(encode_max_cut(EDGE), {"z": 1.0}, 4000, seed=9)
    counts = Counter(draws)
    assert len(counts) == 4
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_gibbs_matches_exact_distribution_on_path():
    I = encode_ising(WeightedGraph(4, ((0, 1), (1, 2), (2, 3))))
    point = {"w": 0.7, "z": 1.8}
    num = I.numeric(point)
    outcomes = list(itertools.product((0, 1), repeat=4))
    weights = [score_assignment(num, s) for s in outcomes]
    total = sum(weights)
    draws = Counter(sample_gibbs_many(I, point, 10000, seed=4))
    observed = [draws[s] for s in outcomes]
    expected = [10000 * w / total for w in weights]
    assert chisquare(observed, expected).pvalue > 0.001


def test_gibbs_rejects_nonpositive_scores():
    I = encode_max_cut(EDGE).map_scores(lambda p: p - 1)
    with pytest.raises(ValueError):
        sample_gibbs_many(I, {"z": 1.0}, 1)


# --- readouts --------------------------------------------------------------

def test_bisection_readout_on_c4():
    Z = brute_force_partition(encode_ising(C4))
    assert str(coefficient_of(Z, {"w": 2})) == "4*z^2 + 2*z^4"
    records = extract(Readout("bisection", 4), Z)
    assert format_report(records) == "max_bisection=4 count=1\nmin_bisection=2 count=2"


def test_bisection_halving_rule_odd_n():
    Z = brute_force_partition(encode_ising(K3))
    # n=3: bisections are 1+2 splits, each counted once by w^1
    assert extract(Readout("bisection", 3), Z)[0] == {"max_bisection": 2, "count": 3}


def test_clique_and_mis_readouts_k3():
    Z = brute_force_partition(encode_clique(K3))
    assert extract(Readout("clique"), Z) == [{"max_clique": 3, "count": 1}]
    assert extract(Readout("mis"), Z) == [{"max_independent_set": 1, "count": 3}]


def test_clique_readout_empty_graph():
    Z = brute_force_partition(encode_clique(WeightedGraph(3)))
    assert extract(Readout("clique"), Z) == [{"max_clique": 1, "count": 3}]


def test_maxcut_readout():
    Z = brute_force_partition(encode_max_cut(K3))
    assert format_report(extract(Readout("maxcut"), Z)) == "max_cut=2 count=3"


def test_sparsest_cut_readout():
    # path 0-1-2-3: cutting the middle edge splits 2|2 with one edge
    Z = brute_force_partition(encode_ising(WeightedGraph(4, ((0, 1), (1, 2), (2, 3)))))
    (rec,) = extract(Readout("sparsest", 4), Z)
    assert rec["cut_edges"] == 1 and rec["side"] == 2 and str(rec["sparsest_cut"]) == "1/2"


def test_judicious_readout():
    Z = brute_force_partition(encode_judicious(K3))
    assert extract(Readout("judicious"), Z) == [{"judicious": 1, "count": 6}]


def test_readout_errors():
    Z = brute_force_partition(encode_max_cut(K3))
    with pytest.raises(KeyError):
        extract(Readout("bisection"), Z)
    with pytest.raises(ValueError):
        extract(Readout("bogus"), Z)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 4))
def test_even_n_halving_rule(seed, half):
    n = 2 * half
    G = random_graph(random.Random(seed), n)
    Z = brute_force_partition(encode_ising(G))
    sub = coefficient_of(Z, {"w": half})
    rec = extract(Readout("bisection", n), Z)[0]
    lead = {e[1]: c for e, c in sub.terms}[rec["max_bisection"]]
    assert 2 * rec["count"] == lead
