import json
import math

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigraph import (
    InconsistencyError,
    InputError,
    all_pairs_distances,
    build_aig,
    build_essential_graph,
    build_field_product_model,
    build_join_construction,
    check_divisor_conjugate_iso,
    check_field_product_iso,
    class_partition,
    diameter,
    distance_similar_partition,
    enumerate_vertices,
    factor,
    squarefree_distance,
    sum_is_essential_or_unit,
    to_dot,
    to_json_dict,
)
from eigraph.graph import GRAPH_JSON_SCHEMA, IdealGraph

from conftest import composites

composite_n = st.integers(min_value=4, max_value=3000).filter(
    lambda n: not factor(n).is_prime()
)


def edge_generators(g: IdealGraph):
    return {(g.vertices[i].d, g.vertices[j].d) for i, j in g.edges()}


def test_essential_graph_examples():
    g12 = build_essential_graph(factor(12))
    assert edge_generators(g12) == {(2, 3), (2, 4), (2, 6), (3, 4), (4, 6)}

    g30 = build_essential_graph(factor(30))
    want = {
        (a, b)
        for a in (2, 3, 5, 6, 10, 15)
        for b in (2, 3, 5, 6, 10, 15)
        if a < b and math.gcd(a, b) == 1
    }
    assert edge_generators(g30) == want
    assert g30.edge_count == 6

    g2700 = build_essential_graph(factor(2700))
    assert g2700.degrees[g2700.index_of(4)] == 23


def test_essential_adjacency_matches_sum_oracle(factored_100k):
    for f in composites(factored_100k, 4, 2000):
        g = build_essential_graph(f)
        for i in range(g.order):
            for j in range(i + 1, g.order):
                assert g.adjacent(i, j) == sum_is_essential_or_unit(
                    g.vertices[i], g.vertices[j]
                )


def test_aig_examples():
    assert edge_generators(build_aig(factor(12))) == {(2, 6), (3, 4), (4, 6)}
    assert edge_generators(build_aig(factor(30))) == {
        (2, 15),
        (3, 10),
        (5, 6),
        (6, 10),
        (6, 15),
        (10, 15),
    }
    g9 = build_aig(factor(9))
    assert g9.order == 1 and g9.edge_count == 0


def test_aig_matches_divisibility_oracle(factored_100k):
    for f in composites(factored_100k, 4, 1000):
        g = build_aig(f)
        n = f.n
        for i in range(g.order):
            for j in range(i + 1, g.order):
                assert g.adjacent(i, j) == (g.vertices[i].d * g.vertices[j].d % n == 0)


def test_field_product_model():
    g2 = build_field_product_model(2)
    assert g2.order == 2 and g2.edge_count == 1
    g3 = build_field_product_model(3)
    assert g3.order == 6 and g3.edge_count == 6
    with pytest.raises(InputError):
        build_field_product_model(1)

    check = check_field_product_iso(factor(30))
    assert check.edge_preserving
    # psi sends the zero-slot set to the product of the remaining primes
    assert check.mapping[0b001] == 15
    assert check.mapping[0b110] == 2


def test_field_product_requires_squarefree():
    with pytest.raises(InputError):
        check_field_product_iso(factor(12))


def test_distances_examples():
    g30 = build_essential_graph(factor(30))
    dist = all_pairs_distances(g30)
    idx = {v.d: i for i, v in enumerate(g30.vertices)}
    assert dist[idx[2]][idx[3]] == 1
    assert dist[idx[2]][idx[6]] == 2
    assert dist[idx[6]][idx[10]] == 3
    assert all(dist[i][i] == 0 for i in range(g30.order))
    assert all(
        dist[i][j] == dist[j][i] for i in range(g30.order) for j in range(g30.order)
    )


def test_squarefree_distance_examples():
    f30 = factor(30)
    verts = {v.d: v for v in enumerate_vertices(f30)}
    assert squarefree_distance(verts[2], verts[15]) == 1
    assert squarefree_distance(verts[2], verts[6]) == 2
    f210 = factor(210)
    verts210 = {v.d: v for v in enumerate_vertices(f210)}
    assert squarefree_distance(verts210[6], verts210[35]) == 1
    assert squarefree_distance(verts210[30], verts210[42]) == 3
    with pytest.raises(InputError):
        v12 = enumerate_vertices(factor(12))
        squarefree_distance(v12[0], v12[1])


def test_squarefree_distance_matches_bfs(factored_100k):
    for f in composites(factored_100k, 4, 3000, squarefree=True):
        g = build_essential_graph(f)
        dist = all_pairs_distances(g)
        for i in range(g.order):
            for j in range(i + 1, g.order):
                assert squarefree_distance(g.vertices[i], g.vertices[j]) == dist[i][j]


def test_diameter_examples():
    assert diameter(build_essential_graph(factor(32))) == 1
    assert diameter(build_essential_graph(factor(30))) == 3
    assert diameter(build_essential_graph(factor(12))) == 2
    assert diameter(build_essential_graph(factor(4))) == 0


def _distance_similar_oracle(g: IdealGraph):
    # direct from the definition: d(u, x) = d(v, x) for every other vertex x
    dist = all_pairs_distances(g)
    t = g.order
    parent = list(range(t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(t):
        for v in range(u + 1, t):
            if all(dist[u][x] == dist[v][x] for x in range(t) if x not in (u, v)):
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)
    blocks = {}
    for i in range(t):
        blocks.setdefault(find(i), []).append(i)
    return {tuple(sorted(b)) for b in blocks.values()}


def test_distance_similar_partition_n12_oracle_value():
    # The distance oracle shows <2> and <4> are similar (both universal),
    # so the partition has two blocks, finer spec prose notwithstanding.
    g = build_essential_graph(factor(12))
    blocks = {
        tuple(g.vertices[i].d for i in block)
        for block in distance_similar_partition(g).blocks
    }
    assert blocks == {(2, 4), (3, 6)}
    assert _distance_similar_oracle(g) == {
        tuple(sorted(b)) for b in distance_similar_partition(g).blocks
    }
    assert distance_similar_partition(g).singleton_count == 0


def test_distance_similar_partition_examples():
    g2700 = build_essential_graph(factor(2700))
    part = distance_similar_partition(g2700)
    assert sorted(len(b) for b in part.blocks) == sorted([11, 6, 4, 6, 2, 3, 2])
    assert len(part.blocks) == 7

    g30 = build_essential_graph(factor(30))
    part30 = distance_similar_partition(g30)
    assert len(part30.blocks) == 6
    assert part30.singleton_count == 6


def test_distance_similar_partition_matches_oracle(factored_100k):
    for f in composites(factored_100k, 4, 400):
        g = build_essential_graph(f)
        assert _distance_similar_oracle(g) == set(distance_similar_partition(g).blocks)


def test_distance_similar_blocks_vs_classes(factored_100k):
    # classes are the blocks except n = p^a * q, where the heavy singleton
    # class is universal and joins the essential class
    for f in composites(factored_100k, 4, 2000, squarefree=False):
        g = build_essential_graph(f)
        part = class_partition(f, list(g.vertices))
        index_sets = {
            mask: frozenset(g.index_of(v.d) for v in members)
            for mask, members in part.classes.items()
        }
        x_set = frozenset(g.index_of(v.d) for v in part.essential_class)
        exps = f.exponents
        expected = set()
        if f.k == 2 and min(exps) == 1:
            heavy_mask = 1 << (0 if exps[0] > 1 else 1)
            expected.add(x_set | index_sets[heavy_mask])
            expected.update(s for m, s in index_sets.items() if m != heavy_mask)
        else:
            expected.add(x_set)
            expected.update(index_sets.values())
        actual = {frozenset(b) for b in distance_similar_partition(g).blocks}
        assert actual == expected, f.n


def test_join_construction_equals_direct():
    for n in (12, 30, 2700, 60, 24, 36, 4, 8):
        f = factor(n)
        direct = build_essential_graph(f)
        join = build_join_construction(f)
        assert direct.adjacency == join.adjacency
        assert [v.d for v in direct.vertices] == [v.d for v in join.vertices]


def test_divisor_conjugate_examples():
    assert check_divisor_conjugate_iso(factor(30)).isomorphic
    assert check_divisor_conjugate_iso(factor(2310)).isomorphic
    check12 = check_divisor_conjugate_iso(factor(12))
    assert not check12.isomorphic
    assert check12.essential_edges == 5
    assert check12.aig_edges == 3
    assert check12.failing_pair is not None
    assert check12.mapping == {2: 6, 3: 4, 4: 3, 6: 2}


def test_divisor_conjugate_trivial_prime_powers():
    # p^2 and p^3 give identical one- or two-vertex graphs on both sides,
    # so the conjugate map genuinely is an isomorphism there
    for n in (4, 9, 25, 8, 27):
        assert check_divisor_conjugate_iso(factor(n)).isomorphic
    for n in (16, 32, 81, 64):
        assert not check_divisor_conjugate_iso(factor(n)).isomorphic


def test_essential_vertices_universal(factored_100k):
    for f in composites(factored_100k, 4, 1000, squarefree=False):
        g = build_essential_graph(f)
        t = g.order
        for i, v in enumerate(g.vertices):
            if v.xi_mask == 0:
                assert g.degrees[i] == t - 1
            elif g.degrees[i] == t - 1:
                part = class_partition(f, list(g.vertices))
                assert f.k == 2 and part.class_size(v.xi_mask) == 1


def test_class_degree_law(factored_100k):
    for f in composites(factored_100k, 4, 1000, squarefree=False):
        g = build_essential_graph(f)
        part = class_partition(f, list(g.vertices))
        for mask in part.class_masks():
            want = part.class_degree(mask)
            for v in part.classes[mask]:
                assert g.degrees[g.index_of(v.d)] == want


@given(composite_n)
@settings(max_examples=60, deadline=None)
def test_essential_graph_properties(n):
    g = build_essential_graph(factor(n))
    for i, row in enumerate(g.adjacency):
        assert not row >> i & 1  # no self loops
    if g.order >= 2:
        assert diameter(g) <= 3
        assert (diameter(g) == 1) == g.is_complete()


def test_disconnected_is_structural_error():
    g = build_essential_graph(factor(12))
    broken = IdealGraph(g.kind, g.factored, g.vertices, (0,) * g.order, (0,) * g.order)
    with pytest.raises(InconsistencyError):
        all_pairs_distances(broken)


def test_dot_export():
    dot = to_dot(build_essential_graph(factor(30)))
    lines = dot.strip().splitlines()
    assert lines[0] == "graph essential_30 {"
    assert '  comment = "n = 30 = 2 * 3 * 5";' in lines
    assert sum(1 for line in lines if "[label=" in line) == 6
    assert sum(1 for line in lines if " -- " in line) == 6
    dot_aig = to_dot(build_aig(factor(30)))
    assert dot_aig.startswith("graph annihilating_30 {")


def test_json_export_schema_and_content():
    g = build_essential_graph(factor(12))
    payload = to_json_dict(g)
    jsonschema.validate(payload, GRAPH_JSON_SCHEMA)
    assert payload["n"] == 12
    assert payload["factors"] == [[2, 2], [3, 1]]
    assert [v["d"] for v in payload["vertices"]] == [2, 3, 4, 6]
    v4 = payload["vertices"][2]
    assert v4 == {
        "d": 4,
        "exponents": [2, 0],
        "xi": [1],
        "essential": False,
        "degree": 3,
    }
    assert all(i < j for i, j in payload["edges"])
    assert len(payload["edges"]) == 5
    json.dumps(payload)  # serializable


def test_model_graph_has_no_ideal_export():
    with pytest.raises(InputError):
        to_json_dict(build_field_product_model(3))
