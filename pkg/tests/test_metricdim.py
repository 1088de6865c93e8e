import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigraph import (
    InputError,
    build_essential_graph,
    completeness_check,
    constructive_resolving_set,
    dim_bruteforce,
    dim_formula,
    dim_lower_bound,
    distance_similar_partition,
    factor,
    finiteness_bound_check,
    is_resolving,
)
from eigraph.metricdim import DIM_JSON_SCHEMA

import jsonschema

from conftest import composites

composite_n = st.integers(min_value=4, max_value=1000).filter(
    lambda n: not factor(n).is_prime()
)


def graph_of(n):
    return build_essential_graph(factor(n))


def test_is_resolving_examples():
    g12 = graph_of(12)
    check = is_resolving(g12, [3, 4])
    assert check.resolves
    assert check.representations[6] == (2, 1)
    assert check.representations[2] == (1, 1)

    check = is_resolving(g12, [2])
    assert not check.resolves
    assert check.colliding_pair is not None
    u, v = check.colliding_pair
    assert check.representations[u] == check.representations[v] == (1,)

    f = factor(30030)
    g = build_essential_graph(f)
    minimal = [f.n // p for p in f.primes]
    assert is_resolving(g, minimal).resolves


def test_is_resolving_validation():
    g12 = graph_of(12)
    with pytest.raises(InputError):
        is_resolving(g12, [])
    with pytest.raises(InputError):
        is_resolving(g12, [5])
    with pytest.raises(InputError):
        is_resolving(g12, [3, 3])


def test_dim_bruteforce_examples():
    r12 = dim_bruteforce(graph_of(12))
    assert r12.dim_value == 2 and r12.is_exact
    assert r12.witness == (2, 3)  # lexicographically least by vertex index
    assert is_resolving(graph_of(12), r12.witness).resolves

    r30 = dim_bruteforce(graph_of(30))
    assert r30.dim_value == 2 and r30.is_exact

    r60 = dim_bruteforce(graph_of(60))
    assert r60.dim_value == 4 and r60.is_exact


def test_dim_bruteforce_budget_exhaustion():
    g = graph_of(210)  # dim 3, T = 14
    partial = dim_bruteforce(g, budget=3)
    assert not partial.is_exact
    assert partial.witness is None
    assert partial.dim_value <= 3


def test_dim_formula_cases():
    assert dim_formula(factor(36)).dim_value == 4
    assert dim_formula(factor(24)).dim_value == 4
    assert dim_formula(factor(2700)).dim_value == 27
    assert dim_formula(factor(8)).dim_value == 1
    assert dim_formula(factor(6)).dim_value == 1
    assert dim_formula(factor(30)).dim_value == 2
    assert dim_formula(factor(210)).dim_value == 3
    assert dim_formula(factor(2310)).dim_value == 5
    report = dim_formula(factor(30030))
    assert report.dim_value == 6 and not report.is_exact
    degenerate = dim_formula(factor(4))
    assert degenerate.dim_value == 0 and degenerate.degenerate


def test_dim_formula_matches_bruteforce(factored_100k):
    for f in composites(factored_100k, 4, 260):
        formula = dim_formula(f)
        if not formula.is_exact:
            continue
        brute = dim_bruteforce(build_essential_graph(f))
        assert brute.dim_value == formula.dim_value, f.n


def test_one_heavy_prime_examples():
    # n = p1^m * p2 * p3 has dimension 4(m - 1)
    for m, n in [(2, 60), (3, 120), (4, 240)]:
        assert dim_formula(factor(n)).dim_value == 4 * (m - 1)
    assert dim_bruteforce(graph_of(120)).dim_value == 8


def _unpruned_min_resolving(g):
    # reference search over all subsets in lexicographic order, no pruning
    from itertools import combinations

    from eigraph import all_pairs_distances

    dist = all_pairs_distances(g)
    t = g.order
    for s in range(1, t):
        for w in combinations(range(t), s):
            seen = set()
            for v in range(t):
                if v in w:
                    continue
                rep = tuple(dist[v][x] for x in w)
                if rep in seen:
                    break
                seen.add(rep)
            else:
                return s, tuple(w)
    return t - 1, tuple(range(t - 1))


def test_pruned_search_agrees_with_unpruned(factored_100k):
    # the block pruning and lexicographic tie-break reproduce the naive search
    for f in composites(factored_100k, 4, 100):
        g = build_essential_graph(f)
        if g.order < 2 or g.order > 12:
            continue
        want_dim, want_witness = _unpruned_min_resolving(g)
        got = dim_bruteforce(g)
        assert got.dim_value == want_dim, f.n
        assert tuple(g.index_of(d) for d in got.witness) == want_witness, f.n


def test_constructive_examples():
    r2700 = constructive_resolving_set(factor(2700))
    assert r2700.dim_value == 27 and r2700.is_exact
    assert r2700.method == "constructive"
    assert len(r2700.witness) == 27

    r60 = constructive_resolving_set(factor(60))
    assert r60.dim_value == 4
    assert 4 in r60.witness  # the adjoined heavy power <p1^m1>
    assert r60.witness[-1] == 4

    r30030 = constructive_resolving_set(factor(30030))
    assert r30030.dim_value == 6 and not r30030.is_exact
    assert r30030.witness == (2310, 2730, 4290, 6006, 10010, 15015)

    # squarefree k <= 5 falls back to exact search
    r30 = constructive_resolving_set(factor(30))
    assert r30.dim_value == 2 and r30.is_exact and r30.method == "brute-force"


def test_constructive_sweep(factored_100k):
    for f in composites(factored_100k, 4, 600, squarefree=False):
        report = constructive_resolving_set(f)
        expected = dim_formula(f)
        assert report.dim_value == expected.dim_value
        if report.degenerate:
            assert report.dim_value == 0 and report.witness is None
        else:
            assert is_resolving(build_essential_graph(f), report.witness).resolves


def test_dim_lower_bound_examples():
    assert dim_lower_bound(distance_similar_partition(graph_of(2700))) == 27
    assert dim_lower_bound(distance_similar_partition(graph_of(60))) == 3
    assert dim_lower_bound(distance_similar_partition(graph_of(30))) == 1
    assert dim_lower_bound(distance_similar_partition(graph_of(4))) == 0


def test_completeness_check():
    assert completeness_check(graph_of(32))
    assert completeness_check(graph_of(6))
    assert not completeness_check(graph_of(12))


def test_dim_is_t_minus_one_iff_complete(factored_100k):
    for f in composites(factored_100k, 4, 500):
        report = dim_formula(f)
        if not report.is_exact or report.T < 2:
            continue
        complete = completeness_check(build_essential_graph(f))
        shape = f.k == 1 or (f.k == 2 and f.is_squarefree())
        assert (report.dim_value == report.T - 1) == complete == shape


def test_finiteness_bound_examples():
    assert finiteness_bound_check(2, 6)
    assert finiteness_bound_check(5, 30)
    assert finiteness_bound_check(2, 4)
    assert not finiteness_bound_check(1, 6)


def test_reports_respect_lower_bound(factored_100k):
    for f in composites(factored_100k, 4, 400):
        report = dim_formula(f)
        assert report.dim_value >= report.lower_bound
        if report.T >= 2 and report.is_exact:
            assert 1 <= report.dim_value <= report.T - 1


@given(composite_n, st.data())
@settings(max_examples=40, deadline=None)
def test_adding_vertex_keeps_resolving(n, data):
    g = build_essential_graph(factor(n))
    if g.order < 2:
        return
    base = dim_bruteforce(g)
    extra_candidates = [v.d for v in g.vertices if v.d not in base.witness]
    if not extra_candidates:
        return
    extra = data.draw(st.sampled_from(extra_candidates))
    assert is_resolving(g, list(base.witness) + [extra]).resolves


def test_dim_report_json_schema():
    payload = constructive_resolving_set(factor(60)).to_json_dict()
    jsonschema.validate(payload, DIM_JSON_SCHEMA)
    payload = dim_formula(factor(30)).to_json_dict()
    jsonschema.validate(payload, DIM_JSON_SCHEMA)
    assert payload["witness"] is None
