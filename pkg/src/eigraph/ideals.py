"""The ideal model of Z_n.

A nonzero proper ideal <d> of Z_n is encoded by the exponent vector of its
generator d over the prime factorization of n.  The set of indices where
the generator carries the full exponent of n (stored as a bitmask) drives
every adjacency, class, and resolving-set computation downstream: two
vertices are adjacent in the essential ideal graph exactly when those
index sets are disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .arithmetic import FactoredInteger, divisor_count, factor
from .errors import InputError


@dataclass(frozen=True)
class Ideal:
    """A nonzero proper ideal of Z_n, represented by its generator's exponents.

    xi_mask has bit (i-1) set exactly when the i-th exponent is full, i.e.
    r_i = m_i.  Essential ideals are those with xi_mask == 0.
    """

    modulus: FactoredInteger
    exponents: tuple[int, ...]
    d: int
    xi_mask: int

    @property
    def xi_indices(self) -> tuple[int, ...]:
        """Full-exponent prime indices, 1-based, ascending."""
        return tuple(i + 1 for i in range(self.modulus.k) if self.xi_mask >> i & 1)


def _xi_mask(exponents, full) -> int:
    mask = 0
    for i, (r, m) in enumerate(zip(exponents, full)):
        if r == m:
            mask |= 1 << i
    return mask


def ideal_from_exponents(f: FactoredInteger, exponents) -> Ideal:
    """Build an Ideal from an exponent vector, validating properness."""
    exps = tuple(exponents)
    if len(exps) != f.k:
        raise InputError(f"expected {f.k} exponents, got {len(exps)}")
    full = f.exponents
    if any(r < 0 or r > m for r, m in zip(exps, full)):
        raise InputError(f"exponents {exps} out of range for n = {f.n}")
    if all(r == 0 for r in exps):
        raise InputError("the unit ideal is not a vertex")
    if exps == full:
        raise InputError("the zero ideal is not a vertex")
    d = 1
    for (p, _), r in zip(f.factors, exps):
        d *= p**r
    return Ideal(f, exps, d, _xi_mask(exps, full))


def ideal_from_divisor(f: FactoredInteger, d: int) -> Ideal:
    """Build the Ideal <d> from a nontrivial proper divisor d of n."""
    if d <= 1 or d >= f.n or f.n % d != 0:
        raise InputError(f"{d} is not a nontrivial proper divisor of {f.n}")
    exps = []
    rem = d
    for p, _ in f.factors:
        r = 0
        while rem % p == 0:
            rem //= p
            r += 1
        exps.append(r)
    return ideal_from_exponents(f, exps)


def enumerate_vertices(f: FactoredInteger) -> list[Ideal]:
    """All nonzero proper ideals of Z_n, sorted ascending by generator."""
    if f.n < 4 or f.is_prime():
        raise InputError(f"n must be composite and at least 4, got {f.n}")
    full = f.exponents
    verts = []
    for exps in product(*(range(m + 1) for m in full)):
        if all(r == 0 for r in exps) or exps == full:
            continue
        verts.append(ideal_from_exponents(f, exps))
    verts.sort(key=lambda v: v.d)
    assert len(verts) == divisor_count(f) - 2
    return verts


def is_essential(ideal: Ideal) -> bool:
    """True iff every exponent is strictly below the full exponent of n."""
    return ideal.xi_mask == 0


def intersects_every_ideal(ideal: Ideal) -> bool:
    """Ring-definition essentiality oracle: <d> meets every nonzero ideal.

    Checks lcm(d, e) < n for every proper divisor e > 1 of n, staying in
    plain integer arithmetic so it is independent of the xi_mask route.
    """
    n = ideal.modulus.n
    d = ideal.d
    for exps in product(*(range(m + 1) for m in ideal.modulus.exponents)):
        e = 1
        for (p, _), r in zip(ideal.modulus.factors, exps):
            e *= p**r
        if e <= 1 or e >= n:
            continue
        if d * e // math.gcd(d, e) == n:
            return False
    return True


def _require_same_modulus(a: Ideal, b: Ideal) -> None:
    if a.modulus.n != b.modulus.n:
        raise InputError(f"ideals of different rings: Z_{a.modulus.n} vs Z_{b.modulus.n}")


def ideal_sum(a: Ideal, b: Ideal) -> tuple[int, ...]:
    """Exponent vector of <d_a> + <d_b> = <gcd(d_a, d_b)>; may be the unit ideal."""
    _require_same_modulus(a, b)
    return tuple(min(r, s) for r, s in zip(a.exponents, b.exponents))


def ideal_intersection(a: Ideal, b: Ideal) -> tuple[int, ...]:
    """Exponent vector of <d_a> intersect <d_b> = <lcm(d_a, d_b)>; may be the zero ideal."""
    _require_same_modulus(a, b)
    return tuple(max(r, s) for r, s in zip(a.exponents, b.exponents))


def ideal_product(a: Ideal, b: Ideal) -> tuple[int, ...]:
    """Exponent vector of <d_a><d_b> = <gcd(d_a * d_b, n)>; may be the zero ideal."""
    _require_same_modulus(a, b)
    return tuple(
        min(r + s, m) for r, s, m in zip(a.exponents, b.exponents, a.modulus.exponents)
    )


def is_unit_vector(exponents) -> bool:
    return all(r == 0 for r in exponents)


def is_zero_vector(f: FactoredInteger, exponents) -> bool:
    return tuple(exponents) == f.exponents


def sum_is_essential_or_unit(a: Ideal, b: Ideal) -> bool:
    """Adjacency oracle: the ideal sum is essential (the unit ideal counts)."""
    vec = ideal_sum(a, b)
    return all(r < m for r, m in zip(vec, a.modulus.exponents))


def class_mask_order(k: int) -> list[int]:
    """Canonical order of the nonempty proper index subsets: by size, then value."""
    return sorted(range(1, (1 << k) - 1), key=lambda m: (bin(m).count("1"), m))


@dataclass(frozen=True)
class ClassPartition:
    """Vertices grouped by full-exponent index set.

    essential_class holds the ideals with empty index set; classes maps each
    nonempty proper bitmask to its ideals.  m = prod(m_i) - 1 counts the
    essential vertices and T is the total vertex count.
    """

    modulus: FactoredInteger
    essential_class: tuple[Ideal, ...]
    classes: dict[int, tuple[Ideal, ...]]
    m: int
    T: int

    def class_masks(self) -> list[int]:
        return class_mask_order(self.modulus.k)

    def class_size(self, mask: int) -> int:
        return len(self.classes[mask])

    def class_degree(self, mask: int) -> int:
        """Degree of any vertex in the class: m plus the disjoint class sizes."""
        return self.m + sum(
            len(members)
            for other, members in self.classes.items()
            if other != mask and not other & mask
        )

    def blocks_in_order(self) -> list[tuple[Ideal, ...]]:
        """The essential class followed by the classes in canonical order."""
        return [self.essential_class] + [self.classes[m] for m in self.class_masks()]


def class_partition(f: FactoredInteger, vertices: list[Ideal] | None = None) -> ClassPartition:
    """Partition the vertex set by full-exponent index mask."""
    if vertices is None:
        vertices = enumerate_vertices(f)
    essential = tuple(v for v in vertices if v.xi_mask == 0)
    classes: dict[int, list[Ideal]] = {mask: [] for mask in class_mask_order(f.k)}
    for v in vertices:
        if v.xi_mask:
            classes[v.xi_mask].append(v)
    frozen = {mask: tuple(members) for mask, members in classes.items()}
    expected_m = 1
    for m in f.exponents:
        expected_m *= m
    expected_m -= 1
    part = ClassPartition(f, essential, frozen, len(essential), len(vertices))
    assert part.m == expected_m
    return part


def canonical_representative(f: FactoredInteger, mask: int) -> Ideal:
    """The class member with exponent m_i on the mask and m_i - 1 elsewhere.

    For the essential class (mask 0) this requires some m_i > 1, otherwise
    the class is empty and there is nothing to represent.
    """
    if mask < 0 or mask >= (1 << f.k) - 1:
        raise InputError(f"mask {mask} is not a proper subset of the {f.k} prime indices")
    exps = []
    for i, m in enumerate(f.exponents):
        if mask >> i & 1:
            exps.append(m)
        else:
            exps.append(m - 1)
    if mask == 0 and all(r == 0 for r in exps):
        raise InputError("the essential class is empty for squarefree n")
    return ideal_from_exponents(f, exps)


def gcd_lemma_check(n: int, d1: int, d2: int) -> bool:
    """For squarefree n, test gcd(d1, d2) = 1  <=>  n | (n/d1)(n/d2).

    Returns whether the biconditional holds for this triple; it is expected
    to hold for every pair of distinct nontrivial proper divisors.
    """
    f = factor(n)
    if not f.is_squarefree():
        raise InputError(f"n = {n} is not squarefree")
    for d in (d1, d2):
        if d <= 1 or d >= n or n % d != 0:
            raise InputError(f"{d} is not a nontrivial proper divisor of {n}")
    if d1 == d2:
        raise InputError("divisors must be distinct")
    coprime = math.gcd(d1, d2) == 1
    divides = (n // d1) * (n // d2) % n == 0
    return coprime == divides
