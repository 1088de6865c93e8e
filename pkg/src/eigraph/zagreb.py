"""First and second Zagreb indices of the essential ideal graph.

Definition-level sums over the built graph are the arbiter; the closed
forms (prime power, squarefree by level counts, general by class counts)
are computed independently and compared against them.  For squarefree n
two second-index values are exposed: the edge-once evaluation, which
matches the definition, and the published worked-example evaluation,
which double-counts edges inside a level and is reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arithmetic import FactoredInteger, divisor_count
from .errors import InputError
from .graph import IdealGraph, build_essential_graph
from .ideals import ClassPartition, class_partition


def zagreb_by_definition(g: IdealGraph) -> tuple[int, int]:
    """M1 = sum of squared degrees; M2 = sum of degree products over edges."""
    m1 = sum(d * d for d in g.degrees)
    m2 = 0
    degs = g.degrees
    for i, row in enumerate(g.adjacency):
        di = degs[i]
        rest = row >> (i + 1)
        j = i + 1
        while rest:
            if rest & 1:
                m2 += di * degs[j]
            rest >>= 1
            j += 1
    return m1, m2


def zagreb_prime_power(m: int) -> tuple[int, int]:
    """Closed forms for n = p^m, a complete graph on m - 1 vertices."""
    if m < 2:
        raise InputError(f"prime-power exponent must be at least 2, got {m}")
    t = m - 1
    return (m - 1) * (t - 1) ** 2, comb(m - 1, 2) * (t - 1) ** 2


def squarefree_level_degree(k: int, i: int) -> int:
    """Degree of a vertex whose generator has i distinct primes (squarefree n)."""
    return 2 ** (k - i) - 1


def zagreb_squarefree_closed(k: int) -> tuple[int, int, int]:
    """(M1, edge-once M2, published-convention M2) for n a product of k primes.

    Vertices split into levels by the number of primes in the generator;
    level i has C(k, i) vertices of degree 2^(k-i) - 1.  The edge-once M2
    counts same-level pairs once and cross-level pairs once.  The published
    convention reproduces the worked-example evaluation, whose inner sum
    starts at s = t and therefore counts same-level edges twice.
    """
    if k < 2:
        raise InputError(f"need at least two primes, got k = {k}")
    m1 = sum(comb(k, i) * (2 ** (k - i) - 1) ** 2 for i in range(1, k))
    m2_once = 0
    for t in range(1, k // 2 + 1):
        m2_once += comb(k, t) * comb(k - t, t) * (2 ** (k - t) - 1) ** 2 // 2
    for t in range(1, k):
        for s in range(t + 1, k - t + 1):
            m2_once += (
                comb(k, t)
                * comb(k - t, s)
                * (2 ** (k - t) - 1)
                * (2 ** (k - s) - 1)
            )
    m2_published = 0
    for t in range(1, k // 2 + 1):
        inner = sum(comb(k - t, s) * (2 ** (k - s) - 1) for s in range(t, k - t + 1))
        m2_published += comb(k, t) * (2 ** (k - t) - 1) * inner
    return m1, m2_once, m2_published


def squarefree_within_level_sum(k: int) -> int:
    """Degree products over same-level edges; the published M2 counts these twice."""
    total = 0
    for t in range(1, k // 2 + 1):
        total += comb(k, t) * comb(k - t, t) * (2 ** (k - t) - 1) ** 2 // 2
    return total


def zagreb_general_closed(partition: ClassPartition) -> tuple[int, int]:
    """Closed forms from the class partition, for n with an essential vertex.

    Every essential vertex has degree T - 1 and every class vertex has the
    class degree m + sum of disjoint class sizes; M2 adds the essential
    clique, the essential-to-class edges, and half the ordered sum over
    disjoint class pairs.
    """
    if partition.m == 0:
        raise InputError("no essential vertices; use the squarefree closed form")
    m = partition.m
    t = partition.T
    masks = partition.class_masks()
    sizes = {mask: partition.class_size(mask) for mask in masks}
    degs = {mask: partition.class_degree(mask) for mask in masks}
    m1 = m * (t - 1) ** 2 + sum(sizes[a] * degs[a] ** 2 for a in masks)
    cross = sum(
        sizes[a] * sizes[b] * degs[a] * degs[b]
        for a in masks
        for b in masks
        if a != b and not a & b
    )
    m2 = (
        comb(m, 2) * (t - 1) ** 2
        + m * (t - 1) * sum(sizes[a] * degs[a] for a in masks)
        + cross // 2
    )
    return m1, m2


def zagreb_two_prime(f: FactoredInteger) -> tuple[int, int]:
    """Corollary forms for n = p1^m1 * p2^m2 with some exponent above 1."""
    if f.k != 2 or f.is_squarefree():
        raise InputError(f"n = {f.n} is not a two-prime power with an exponent above 1")
    m1_exp, m2_exp = f.exponents
    m = m1_exp * m2_exp - 1
    t = (m1_exp + 1) * (m2_exp + 1) - 2
    first = m * (t - 1) ** 2 + m1_exp * (m + m2_exp) ** 2 + m2_exp * (m + m1_exp) ** 2
    second = (
        comb(m, 2) * (t - 1) ** 2
        + m * (t - 1) * (m * (m1_exp + m2_exp) + 2 * m1_exp * m2_exp)
        + m1_exp * m2_exp * (m + m1_exp) * (m + m2_exp)
    )
    return first, second


@dataclass(frozen=True)
class LevelPartition:
    """Squarefree vertices grouped by the number of primes in the generator."""

    k: int
    levels: tuple[tuple[int, ...], ...]  # vertex indices for levels 1 .. k-1

    def expected_size(self, i: int) -> int:
        return comb(self.k, i)

    def expected_degree(self, i: int) -> int:
        return squarefree_level_degree(self.k, i)


def level_partition(g: IdealGraph) -> LevelPartition:
    """Group the vertices of a squarefree essential ideal graph by prime count."""
    f = g.factored
    if f is None or not f.is_squarefree():
        raise InputError("level partition is defined for squarefree ideal graphs")
    k = f.k
    levels: list[list[int]] = [[] for _ in range(k - 1)]
    for idx, v in enumerate(g.vertices):
        count = sum(1 for r in v.exponents if r)
        levels[count - 1].append(idx)
    return LevelPartition(k, tuple(tuple(lv) for lv in levels))


@dataclass(frozen=True)
class ZagrebReport:
    """Definition and closed-form values with agreement flags."""

    n: int
    k: int
    T: int
    m1_definition: int
    m2_definition: int
    m1_closed: int
    m2_closed: int
    m2_paper_convention: int | None

    @property
    def m1_agrees(self) -> bool:
        return self.m1_definition == self.m1_closed

    @property
    def m2_agrees(self) -> bool:
        return self.m2_definition == self.m2_closed

    @property
    def paper_convention_differs(self) -> bool | None:
        if self.m2_paper_convention is None:
            return None
        return self.m2_paper_convention != self.m2_definition

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "T": self.T,
            "M1_definition": self.m1_definition,
            "M2_definition": self.m2_definition,
            "M1_closed": self.m1_closed,
            "M2_closed": self.m2_closed,
            "M2_paper_convention": self.m2_paper_convention,
            "M1_agrees": self.m1_agrees,
            "M2_agrees": self.m2_agrees,
            "paper_convention_differs": self.paper_convention_differs,
        }

    def csv_row(self) -> str:
        flags = [
            f"m1_agree={'true' if self.m1_agrees else 'false'}",
            f"m2_agree={'true' if self.m2_agrees else 'false'}",
        ]
        if self.m2_paper_convention is None:
            flags.append("paper_differs=na")
        else:
            flags.append(
                f"paper_differs={'true' if self.paper_convention_differs else 'false'}"
            )
        published = "" if self.m2_paper_convention is None else str(self.m2_paper_convention)
        return ",".join(
            [
                str(self.n),
                str(self.k),
                str(self.T),
                str(self.m1_definition),
                str(self.m2_definition),
                str(self.m1_closed),
                str(self.m2_closed),
                published,
                ";".join(flags),
            ]
        )


ZAGREB_CSV_HEADER = "n,k,T,M1_def,M2_def,M1_closed,M2_closed,M2_paper_convention,flags"

ZAGREB_JSON_SCHEMA = {
    "type": "object",
    "required": [
        "n",
        "k",
        "T",
        "M1_definition",
        "M2_definition",
        "M1_closed",
        "M2_closed",
        "M2_paper_convention",
        "M1_agrees",
        "M2_agrees",
        "paper_convention_differs",
    ],
    "properties": {
        "n": {"type": "integer"},
        "k": {"type": "integer"},
        "T": {"type": "integer"},
        "M1_definition": {"type": "integer"},
        "M2_definition": {"type": "integer"},
        "M1_closed": {"type": "integer"},
        "M2_closed": {"type": "integer"},
        "M2_paper_convention": {"type": ["integer", "null"]},
        "M1_agrees": {"type": "boolean"},
        "M2_agrees": {"type": "boolean"},
        "paper_convention_differs": {"type": ["boolean", "null"]},
    },
}


def compute_zagreb_report(
    f: FactoredInteger,
    graph: IdealGraph | None = None,
    max_t: int | None = None,
) -> ZagrebReport:
    """Definition values plus the closed form matching the shape of n."""
    g = graph if graph is not None else build_essential_graph(f, max_t)
    m1_def, m2_def = zagreb_by_definition(g)
    published = None
    if f.k == 1:
        m1_closed, m2_closed = zagreb_prime_power(f.exponents[0])
    elif f.is_squarefree():
        m1_closed, m2_closed, published = zagreb_squarefree_closed(f.k)
    else:
        m1_closed, m2_closed = zagreb_general_closed(class_partition(f, list(g.vertices)))
    return ZagrebReport(
        n=f.n,
        k=f.k,
        T=divisor_count(f) - 2,
        m1_definition=m1_def,
        m2_definition=m2_def,
        m1_closed=m1_closed,
        m2_closed=m2_closed,
        m2_paper_convention=published,
    )
