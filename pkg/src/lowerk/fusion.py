"""Counting irreducible representations by Galois fusion of classes.

Over a field K, the number of irreducible K-representations of a finite
group equals the number of K-conjugacy classes: ordinary classes fused
under the Galois action of K's cyclotomic extensions (Witt-Berman).  The
three fields handled here act on an element x of order d through a unit
subgroup of (Z/d)*:

  rationals          all of (Z/d)*,
  p-adic rationals   full units at the p-part of d, Frobenius <p> at the
                     prime-to-p part (combined by CRT),
  field with p       <p> mod d on p-regular elements only.

No representation is ever constructed; everything is table fusion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotPrime
from .groups import FiniteGroup, class_of, conjugacy_classes


# ---------------------------------------------------------------------------
# small number theory helpers
# ---------------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _crt(a: int, m: int, b: int, n: int) -> int:
    """x mod m*n with x = a mod m, x = b mod n (m, n coprime)."""
    old_r, r = m, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    inv = old_s % n  # m inverse mod n
    return (a + m * ((b - a) * inv % n)) % (m * n)


def padic_unit_subgroup(p: int, d: int) -> set[int]:
    """Units k mod d fixing the p-adic cyclotomic Galois orbit of order-d
    roots of unity: all units at the p-part, powers of p at the rest."""
    if d == 1:
        return {0}
    pa = 1
    dd = d
    while dd % p == 0:
        pa *= p
        dd //= p
    frob = {1 % dd}
    f = p % dd
    while f not in frob:
        frob.add(f)
        f = (f * p) % dd
    units = set()
    for u in range(pa):
        if math.gcd(u, pa) == 1:
            for v in frob:
                if pa == 1:
                    units.add(v % d)
                elif dd == 1:
                    units.add(u % d)
                else:
                    units.add(_crt(u, pa, v, dd))
    return units


# ---------------------------------------------------------------------------
# fusion specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rational:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Padic:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __str__(self):
        return f"Q_{self.p}"


@dataclass(frozen=True)
class ModP:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __str__(self):
        return f"F_{self.p}"


FusionSpec = Rational | Padic | ModP


@dataclass(frozen=True)
class FusedClasses:
    """Conjugacy classes grouped into Galois-fused blocks."""

    group: FiniteGroup
    spec: FusionSpec
    blocks: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def count(self) -> int:
        return len(self.blocks)


def _unit_exponents(G: FiniteGroup, g: int, spec: FusionSpec) -> set[int]:
    d = G.element_order(g)
    if isinstance(spec, Rational):
        return {k for k in range(1, d + 1) if math.gcd(k, d) == 1}
    if isinstance(spec, Padic):
        return padic_unit_subgroup(spec.p, d)
    frob = {1 % d}
    f = spec.p % d
    while f not in frob:
        frob.add(f)
        f = (f * spec.p) % d
    return frob


def fused_classes(G: FiniteGroup, spec: FusionSpec) -> FusedClasses:
    """Fuse conjugacy classes under the Galois action of `spec`.

    For ModP only p-regular classes (element order prime to p) appear.
    """
    classes = conjugacy_classes(G)
    cls_of = class_of(G)
    keep = list(range(len(classes)))
    if isinstance(spec, ModP):
        keep = [k for k in keep if G.element_order(classes[k][0]) % spec.p]
    parent = {k: k for k in keep}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for k in keep:
        g = classes[k][0]
        for e in _unit_exponents(G, g, spec):
            union(k, cls_of[G.power(g, e)])
    buckets: dict[int, list[int]] = {}
    for k in keep:
        buckets.setdefault(find(k), []).append(k)
    blocks = tuple(tuple(classes[k] for k in sorted(members))
                   for _, members in sorted(buckets.items()))
    return FusedClasses(G, spec, blocks)


def count_irreducibles(G: FiniteGroup, spec: FusionSpec) -> int:
    """Number of isomorphism classes of irreducible representations."""
    return fused_classes(G, spec).count


def p_singular_classes(G: FiniteGroup, p: int) -> list[tuple[int, tuple[int, ...]]]:
    """Conjugacy classes of elements with order divisible by p.

    Returns (common element order, class) pairs sorted by order then by
    minimal member.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    out = []
    for cls in conjugacy_classes(G):
        d = G.element_order(cls[0])
        if d % p == 0:
            out.append((d, cls))
    out.sort(key=lambda t: (t[0], t[1][0]))
    return out


def sc_rank(G: FiniteGroup) -> int:
    """Rank of the singular-character group: sum over primes p dividing
    the group order of (p-adic count minus mod-p count)."""
    total = 0
    for p in prime_factors(G.order):
        total += count_irreducibles(G, Padic(p)) - count_irreducibles(G, ModP(p))
    return total
