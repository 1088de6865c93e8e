"""Graph construction and structural analysis.

Builds the essential ideal graph and the annihilating ideal graph of Z_n
over the canonical (ascending generator) vertex order, plus the abstract
field-product model on index subsets.  Adjacency lives in bitset rows
(one Python int per vertex), which makes neighborhood comparisons and
BFS frontiers cheap at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .arithmetic import FactoredInteger, check_caps
from .errors import InconsistencyError, InputError
from .ideals import (
    Ideal,
    class_partition,
    enumerate_vertices,
)

KIND_ESSENTIAL = "essential"
KIND_ANNIHILATING = "annihilating"
KIND_FIELD_PRODUCT = "field-product-model"


@dataclass(frozen=True)
class FieldProductVertex:
    """A nonzero proper ideal of a product of k fields: the set of zero slots."""

    k: int
    theta_mask: int

    @property
    def theta(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.k) if self.theta_mask >> i & 1)


def vertex_key(v):
    """Stable lookup key: the generator for ideals, the zero-slot mask for model vertices."""
    if isinstance(v, Ideal):
        return v.d
    if isinstance(v, FieldProductVertex):
        return v.theta_mask
    return int(v)


@dataclass(frozen=True)
class IdealGraph:
    """Immutable vertex-ordered graph with bitset adjacency rows."""

    kind: str
    factored: FactoredInteger | None
    vertices: tuple
    adjacency: tuple[int, ...]
    degrees: tuple[int, ...]

    @cached_property
    def _index(self) -> dict:
        return {vertex_key(v): i for i, v in enumerate(self.vertices)}

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def index_of(self, key) -> int:
        try:
            return self._index[key]
        except KeyError:
            raise InputError(f"no vertex with key {key!r} in this graph") from None

    def edges(self):
        """Yield edges as index pairs (i, j) with i < j."""
        for i, row in enumerate(self.adjacency):
            rest = row >> (i + 1)
            j = i + 1
            while rest:
                if rest & 1:
                    yield (i, j)
                rest >>= 1
                j += 1

    def is_complete(self) -> bool:
        t = self.order
        return all(d == t - 1 for d in self.degrees)


def _finish(kind, factored, vertices, rows) -> IdealGraph:
    degrees = tuple(bin(r).count("1") for r in rows)
    return IdealGraph(kind, factored, tuple(vertices), tuple(rows), degrees)


def build_essential_graph(f: FactoredInteger, max_t: int | None = None) -> IdealGraph:
    """Essential ideal graph: vertices adjacent iff their full-exponent masks are disjoint."""
    check_caps(f, max_t)
    verts = enumerate_vertices(f)
    t = len(verts)
    masks = [v.xi_mask for v in verts]
    rows = [0] * t
    for i in range(t):
        mi = masks[i]
        ri = rows[i]
        for j in range(i + 1, t):
            if not mi & masks[j]:
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return _finish(KIND_ESSENTIAL, f, verts, rows)


def build_aig(f: FactoredInteger, max_t: int | None = None) -> IdealGraph:
    """Annihilating ideal graph: vertices adjacent iff their product is the zero ideal."""
    check_caps(f, max_t)
    verts = enumerate_vertices(f)
    t = len(verts)
    full = f.exponents
    exps = [v.exponents for v in verts]
    rows = [0] * t
    for i in range(t):
        ei = exps[i]
        ri = rows[i]
        for j in range(i + 1, t):
            ej = exps[j]
            if all(a + b >= m for a, b, m in zip(ei, ej, full)):
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return _finish(KIND_ANNIHILATING, f, verts, rows)


def build_field_product_model(k: int) -> IdealGraph:
    """Essential ideal graph of a product of k fields: 2^k - 2 subset vertices."""
    if k < 2:
        raise InputError(f"the field-product model needs k >= 2, got {k}")
    if k > 20:
        raise InputError(f"k = {k} exceeds the cap of 20 distinct factors")
    masks = list(range(1, (1 << k) - 1))
    t = len(masks)
    verts = [FieldProductVertex(k, m) for m in masks]
    rows = [0] * t
    for i in range(t):
        mi = masks[i]
        ri = rows[i]
        for j in range(i + 1, t):
            if not mi & masks[j]:
                ri |= 1 << j
                rows[j] |= 1 << i
        rows[i] = ri
    return _finish(KIND_FIELD_PRODUCT, None, verts, rows)


def build_join_construction(f: FactoredInteger, max_t: int | None = None) -> IdealGraph:
    """Rebuild the essential ideal graph as a join of class blocks.

    A complete graph on the essential class is joined to everything, each
    class is an empty graph on its members, and two classes are fully
    joined exactly when their index masks are disjoint.  Must agree with
    build_essential_graph edge for edge; with no essential vertices the
    complete part is empty and the construction degenerates to the plain
    generalized join.
    """
    check_caps(f, max_t)
    verts = enumerate_vertices(f)
    t = len(verts)
    part = class_partition(f, verts)
    index_of = {v.d: i for i, v in enumerate(verts)}
    full_bits = (1 << t) - 1

    x_bits = 0
    for v in part.essential_class:
        x_bits |= 1 << index_of[v.d]
    class_bits = {}
    for mask, members in part.classes.items():
        bits = 0
        for v in members:
            bits |= 1 << index_of[v.d]
        class_bits[mask] = bits

    rows = [0] * t
    bit = x_bits
    while bit:
        b = bit & -bit
        bit ^= b
        rows[b.bit_length() - 1] = full_bits ^ b
    cmasks = list(class_bits)
    for a_i, a in enumerate(cmasks):
        join = x_bits
        for b in cmasks:
            if a != b and not a & b:
                join |= class_bits[b]
        members = class_bits[a]
        while members:
            b = members & -members
            members ^= b
            rows[b.bit_length() - 1] |= join
    return _finish(KIND_ESSENTIAL, f, verts, rows)


def all_pairs_distances(g: IdealGraph) -> list[list[int]]:
    """BFS from every vertex; raises if the graph is disconnected."""
    t = g.order
    full = (1 << t) - 1
    out = []
    for s in range(t):
        dist = [-1] * t
        dist[s] = 0
        seen = 1 << s
        frontier = 1 << s
        d = 0
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                b = rest & -rest
                rest ^= b
                nxt |= g.adjacency[b.bit_length() - 1]
            nxt &= ~seen
            d += 1
            seen |= nxt
            frontier = nxt
            rest = nxt
            while rest:
                b = rest & -rest
                rest ^= b
                dist[b.bit_length() - 1] = d
        if seen != full:
            raise InconsistencyError(
                f"graph on {t} vertices is disconnected (source index {s})"
            )
        out.append(dist)
    return out


def diameter(g: IdealGraph) -> int:
    """Largest pairwise distance; 0 for a single-vertex graph."""
    if g.order == 1:
        return 0
    return max(max(row) for row in all_pairs_distances(g))


def squarefree_distance(a: Ideal, b: Ideal) -> int:
    """Closed-form distance in the essential ideal graph of squarefree n.

    1 when the generators are coprime, 2 when they share a factor but their
    lcm stays below n, and 3 when they share a factor and the lcm is n.
    """
    if a.modulus.n != b.modulus.n:
        raise InputError("vertices of different rings")
    if not a.modulus.is_squarefree():
        raise InputError(f"n = {a.modulus.n} is not squarefree")
    if a.d == b.d:
        return 0
    g = math.gcd(a.d, b.d)
    if g == 1:
        return 1
    if a.d * b.d // g != a.modulus.n:
        return 2
    return 3


@dataclass(frozen=True)
class DistanceSimilarPartition:
    """Blocks of mutually distance-similar vertices (by index)."""

    blocks: tuple[tuple[int, ...], ...]
    singleton_count: int


def distance_similar_partition(g: IdealGraph) -> DistanceSimilarPartition:
    """Group vertices that share open (non-adjacent) or closed (adjacent) neighborhoods."""
    t = g.order
    parent = list(range(t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    open_groups: dict[int, int] = {}
    closed_groups: dict[int, int] = {}
    for i, row in enumerate(g.adjacency):
        if row in open_groups:
            union(open_groups[row], i)
        else:
            open_groups[row] = i
        closed = row | (1 << i)
        if closed in closed_groups:
            union(closed_groups[closed], i)
        else:
            closed_groups[closed] = i

    by_root: dict[int, list[int]] = {}
    for i in range(t):
        by_root.setdefault(find(i), []).append(i)
    blocks = tuple(tuple(sorted(b)) for b in sorted(by_root.values(), key=lambda b: b[0]))
    singles = sum(1 for b in blocks if len(b) == 1)
    return DistanceSimilarPartition(blocks, singles)


@dataclass(frozen=True)
class ConjugateCheck:
    """Result of testing d -> n/d as a map from the essential graph to the AIG."""

    isomorphic: bool
    mapping: dict[int, int]
    essential_edges: int
    aig_edges: int
    failing_pair: tuple[int, int] | None


def check_divisor_conjugate_iso(f: FactoredInteger, max_t: int | None = None) -> ConjugateCheck:
    """Evaluate whether d -> n/d carries essential-graph edges onto AIG edges.

    Expected to be an isomorphism exactly for squarefree n with k >= 2; for
    other n the map is still evaluated and the verdict reported.
    """
    ess = build_essential_graph(f, max_t)
    aig = build_aig(f, max_t)
    n = f.n
    t = ess.order
    image = [aig.index_of(n // v.d) for v in ess.vertices]
    mapping = {v.d: n // v.d for v in ess.vertices}
    failing = None
    for i in range(t):
        row = ess.adjacency[i]
        for j in range(i + 1, t):
            if bool(row >> j & 1) != aig.adjacent(image[i], image[j]):
                failing = (ess.vertices[i].d, ess.vertices[j].d)
                break
        if failing:
            break
    return ConjugateCheck(
        failing is None, mapping, ess.edge_count, aig.edge_count, failing
    )


@dataclass(frozen=True)
class FieldModelCheck:
    """Result of embedding the field-product model into the AIG of squarefree n."""

    edge_preserving: bool
    mapping: dict[int, int]
    failing_pair: tuple[int, int] | None


def check_field_product_iso(f: FactoredInteger, max_t: int | None = None) -> FieldModelCheck:
    """Map each zero-slot set to the product of the remaining primes and compare edges."""
    if not f.is_squarefree():
        raise InputError(f"n = {f.n} is not squarefree")
    if f.k < 2:
        raise InputError("need at least two prime factors")
    model = build_field_product_model(f.k)
    aig = build_aig(f, max_t)
    primes = f.primes
    mapping = {}
    image = []
    for v in model.vertices:
        d = 1
        for i, p in enumerate(primes):
            if not v.theta_mask >> i & 1:
                d *= p
        mapping[v.theta_mask] = d
        image.append(aig.index_of(d))
    if len(set(image)) != aig.order:
        return FieldModelCheck(False, mapping, None)
    failing = None
    t = model.order
    for i in range(t):
        row = model.adjacency[i]
        for j in range(i + 1, t):
            if bool(row >> j & 1) != aig.adjacent(image[i], image[j]):
                failing = (model.vertices[i].theta_mask, model.vertices[j].theta_mask)
                break
        if failing:
            break
    return FieldModelCheck(failing is None, mapping, failing)


GRAPH_JSON_SCHEMA = {
    "type": "object",
    "required": ["n", "kind", "factors", "vertices", "edges"],
    "properties": {
        "n": {"type": "integer"},
        "kind": {"type": "string"},
        "factors": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "exponents", "xi", "essential", "degree"],
                "properties": {
                    "d": {"type": "integer"},
                    "exponents": {"type": "array", "items": {"type": "integer"}},
                    "xi": {"type": "array", "items": {"type": "integer"}},
                    "essential": {"type": "boolean"},
                    "degree": {"type": "integer"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}


def to_json_dict(g: IdealGraph) -> dict:
    """JSON-ready description of an ideal graph (not the abstract model)."""
    if g.factored is None:
        raise InputError("JSON export is defined for ideal graphs only")
    return {
        "n": g.factored.n,
        "kind": g.kind,
        "factors": [[p, m] for p, m in g.factored.factors],
        "vertices": [
            {
                "d": v.d,
                "exponents": list(v.exponents),
                "xi": list(v.xi_indices),
                "essential": v.xi_mask == 0,
                "degree": g.degrees[i],
            }
            for i, v in enumerate(g.vertices)
        ],
        "edges": [[i, j] for i, j in g.edges()],
    }


def to_dot(g: IdealGraph) -> str:
    """DOT text with one node per vertex labeled by its generator."""
    if g.factored is None:
        raise InputError("DOT export is defined for ideal graphs only")
    f = g.factored
    name = f"{g.kind.replace('-', '_')}_{f.n}"
    lines = [
        f"graph {name} {{",
        f'  comment = "n = {f.n} = {f.format_factorization()}";',
    ]
    for i, v in enumerate(g.vertices):
        lines.append(f'  v{i} [label="{v.d}"];')
    for i, j in g.edges():
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
