"""Exact finite-group arithmetic on explicit multiplication tables.

Every group is a full Cayley table over element indices 0..order-1 with
index 0 the identity.  Constructors cover the cyclic, dihedral, dicyclic,
symmetric and binary polyhedral families; the binary octahedral group and
its index-2 binary tetrahedral subgroup are realized by coset enumeration
of their standard presentations (Wolf, Spaces of constant curvature,
p. 198).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import (
    NotNormal,
    OrderLimitExceeded,
    PresentationCollapse,
    UnknownSpec,
    UnknownSymbol,
)
from .presentations import (
    DEFAULT_COSET_LIMIT,
    Presentation,
    Word,
    parse_word,
    todd_coxeter,
)

ORDER_CAP = 10_000
ISO_ORDER_CAP = 200
_AXIOM_CHECK_CAP = 64


@dataclass(eq=False)
class FiniteGroup:
    """A finite group as an explicit multiplication table.

    table[a][b] is the product a*b; index 0 is the identity.  Values are
    immutable after construction and safe to share.
    """

    name: str
    order: int
    table: tuple[tuple[int, ...], ...]
    inverses: tuple[int, ...]
    generator_labels: dict[str, int]
    element_names: tuple[str, ...]
    identity: int = 0

    def __post_init__(self):
        self._gen_words: dict[int, tuple[str, ...]] | None = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inverses[a], -n
        out = self.identity
        while n:
            if n & 1:
                out = self.table[out][a]
            a = self.table[a][a]
            n >>= 1
        return out

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverses[h]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    @property
    def identity_element(self) -> int:
        return self.identity

    def evaluate(self, word: Word) -> int:
        """Evaluate a word over this group's generator labels."""
        acc = self.identity
        for sym, exp in word.entries:
            if sym not in self.generator_labels:
                raise UnknownSymbol(f"{sym!r} is not a generator label of {self.name}")
            acc = self.table[acc][self.power(self.generator_labels[sym], exp)]
        return acc

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    def generator_words(self) -> tuple[tuple[str, ...], ...]:
        """For each element, a product of generator labels reaching it."""
        if self._gen_words is None:
            words: dict[int, tuple[str, ...]] = {self.identity: ()}
            frontier = [self.identity]
            labels = sorted(self.generator_labels.items())
            while frontier:
                nxt = []
                for g in frontier:
                    for lab, elem in labels:
                        h = self.table[g][elem]
                        if h not in words:
                            words[h] = words[g] + (lab,)
                            nxt.append(h)
                frontier = nxt
            if len(words) != self.order:
                raise UnknownSymbol(f"generator labels of {self.name} do not generate it")
            self._gen_words = words
        return tuple(self._gen_words[g] for g in range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in set(self.elements)


@dataclass(eq=False)
class GroupHom:
    """A homomorphism given by images of the source's labelled generators."""

    source: FiniteGroup
    target: FiniteGroup
    images: dict[str, int]

    def __post_init__(self):
        self._full: tuple[int, ...] | None = None

    def full_map(self) -> tuple[int, ...]:
        if self._full is None:
            out = []
            for word in self.source.generator_words():
                acc = self.target.identity
                for lab in word:
                    acc = self.target.mul(acc, self.images[lab])
                out.append(acc)
            self._full = tuple(out)
        return self._full

    def apply(self, g: int) -> int:
        return self.full_map()[g]

    def is_homomorphism(self) -> bool:
        f = self.full_map()
        G, H = self.source, self.target
        return all(f[G.table[a][b]] == H.table[f[a]][f[b]]
                   for a in range(G.order) for b in range(G.order))

    def is_injective(self) -> bool:
        return len(set(self.full_map())) == self.source.order


def hom_check(h: GroupHom) -> bool:
    """True iff the generator images extend to a homomorphism."""
    return h.is_homomorphism()


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def check_group_axioms(G: FiniteGroup) -> None:
    n = G.order
    if len(G.table) != n or any(len(r) != n for r in G.table):
        raise PresentationCollapse(f"{G.name}: table shape mismatch")
    for a in range(n):
        if G.table[G.identity][a] != a or G.table[a][G.identity] != a:
            raise PresentationCollapse(f"{G.name}: identity fails at {a}")
        if G.table[a][G.inverses[a]] != G.identity or G.table[G.inverses[a]][a] != G.identity:
            raise PresentationCollapse(f"{G.name}: inverse fails at {a}")
    if n <= _AXIOM_CHECK_CAP:
        for a in range(n):
            for b in range(n):
                ab = G.table[a][b]
                for c in range(n):
                    if G.table[ab][c] != G.table[a][G.table[b][c]]:
                        raise PresentationCollapse(f"{G.name}: associativity fails")
    G.generator_words()  # labels must generate


def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Orbits under conjugation, sorted by minimal member."""
    seen = [False] * G.order
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        orbit = {G.conjugate(g, h) for h in range(G.order)}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def class_of(G: FiniteGroup) -> tuple[int, ...]:
    """Element index -> index of its conjugacy class."""
    out = [0] * G.order
    for k, cls in enumerate(conjugacy_classes(G)):
        for g in cls:
            out[g] = k
    return tuple(out)


def center(G: FiniteGroup) -> Subgroup:
    elems = tuple(g for g in range(G.order)
                  if all(G.table[g][h] == G.table[h][g] for h in range(G.order)))
    return Subgroup(G, elems)


def subgroup_generated(G: FiniteGroup, gens) -> Subgroup:
    closure = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = G.table[g][s]
                if h not in closure:
                    closure.add(h)
                    nxt.append(h)
        frontier = nxt
    return Subgroup(G, tuple(sorted(closure)))


def is_normal(N: Subgroup) -> bool:
    G = N.parent
    members = set(N.elements)
    return all(G.conjugate(x, g) in members for g in range(G.order) for x in N.elements)


def quotient_with_projection(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N together with the canonical projection."""
    if N.parent is not G:
        raise NotNormal("subgroup does not live in the given group")
    if not is_normal(N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    members = set(N.elements)
    coset_of = [-1] * G.order
    cosets: list[tuple[int, ...]] = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        coset = tuple(sorted(G.table[g][x] for x in members))
        idx = len(cosets)
        cosets.append(coset)
        for x in coset:
            coset_of[x] = idx
    order = [c[0] for c in cosets]
    ranking = sorted(range(len(cosets)), key=lambda i: order[i])
    renumber = {old: new for new, old in enumerate(ranking)}
    coset_of = [renumber[c] for c in coset_of]
    reps = [0] * len(cosets)
    for old, new in renumber.items():
        reps[new] = cosets[old][0]
    n = len(cosets)
    table = tuple(tuple(coset_of[G.table[reps[a]][reps[b]]] for b in range(n)) for a in range(n))
    inverses = tuple(coset_of[G.inverses[reps[a]]] for a in range(n))
    labels = {lab: coset_of[g] for lab, g in G.generator_labels.items()}
    names = tuple(f"[{G.element_names[reps[a]]}]" for a in range(n))
    Q = FiniteGroup(f"{G.name}/N{N.order}", n, table, inverses, labels, names)
    check_group_axioms(Q)
    proj = GroupHom(G, Q, {lab: coset_of[g] for lab, g in G.generator_labels.items()})
    return Q, proj


def quotient(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    return quotient_with_projection(G, N)[0]


def subgroup_as_group(S: Subgroup, name: str,
                      labels: dict[str, int] | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Realize a subgroup as a FiniteGroup; returns (group, parent indices).

    `labels` maps generator names to parent element indices; when omitted a
    greedy generating set is chosen and labelled by parent element names.
    """
    parent = S.parent
    elems = tuple(sorted(S.elements))
    index_of = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    table = tuple(tuple(index_of[parent.table[a][b]] for b in elems) for a in elems)
    inverses = tuple(index_of[parent.inverses[a]] for a in elems)
    if labels is None:
        chosen: list[int] = []
        closure = {parent.identity}
        for g in elems:
            if g not in closure:
                chosen.append(g)
                closure = set(subgroup_generated(parent, chosen).elements)
            if len(closure) == n:
                break
        labels = {parent.element_names[g]: g for g in chosen}
    local = {lab: index_of[g] for lab, g in labels.items()}
    names = tuple(parent.element_names[g] for g in elems)
    H = FiniteGroup(name, n, table, inverses, local, names)
    check_group_axioms(H)
    return H, elems


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------

def _profile(G: FiniteGroup):
    classes = conjugacy_classes(G)
    per_class = sorted((len(c), G.element_order(c[0])) for c in classes)
    orders = sorted(G.element_order(g) for g in range(G.order))
    return tuple(per_class), tuple(orders)


def _greedy_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    closure = {G.identity}
    for g in range(G.order):
        if g not in closure:
            gens.append(g)
            closure = set(subgroup_generated(G, gens).elements)
            if len(closure) == G.order:
                break
    return gens


def _extends_to_isomorphism(G: FiniteGroup, gens: list[int],
                            H: FiniteGroup, imgs: list[int]) -> bool:
    full: dict[int, int] = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, t in zip(gens, imgs):
                b = G.table[a][s]
                if b not in full:
                    full[b] = H.table[full[a]][t]
                    nxt.append(b)
        frontier = nxt
    if len(full) != G.order or len(set(full.values())) != G.order:
        return False
    f = [full[a] for a in range(G.order)]
    return all(f[G.table[a][b]] == H.table[f[a]][f[b]]
               for a in range(G.order) for b in range(G.order))


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Backtracking over generator images, pruned by order/class data."""
    if G.order != H.order:
        return False
    if G.order > ISO_ORDER_CAP:
        raise OrderLimitExceeded(f"isomorphism search capped at order {ISO_ORDER_CAP}")
    if _profile(G) != _profile(H):
        return False
    gens = _greedy_generators(G)
    if not gens:
        return True
    g_class_size = {}
    for cls in conjugacy_classes(G):
        for g in cls:
            g_class_size[g] = len(cls)
    h_class_size = {}
    for cls in conjugacy_classes(H):
        for h in cls:
            h_class_size[h] = len(cls)
    candidates = []
    for g in gens:
        og, sg = G.element_order(g), g_class_size[g]
        candidates.append([h for h in range(H.order)
                           if H.element_order(h) == og and h_class_size[h] == sg])
    closure_sizes = []
    for k in range(len(gens)):
        closure_sizes.append(subgroup_generated(G, gens[:k + 1]).order)

    def backtrack(k: int, imgs: list[int]) -> bool:
        if k == len(gens):
            return _extends_to_isomorphism(G, gens, H, imgs)
        for h in candidates[k]:
            imgs.append(h)
            if subgroup_generated(H, imgs).order == closure_sizes[k]:
                if backtrack(k + 1, imgs):
                    return True
            imgs.pop()
        return False

    return backtrack(0, [])


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _power_name(letter: str, i: int) -> str:
    if i == 0:
        return "1"
    if i == 1:
        return letter
    return f"{letter}^{i}"


def _cyclic(n: int, letter: str = "g") -> FiniteGroup:
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inverses = tuple((-i) % n for i in range(n))
    labels = {letter: 1 % n} if n > 1 else {}
    names = tuple(_power_name(letter, i) for i in range(n))
    return FiniteGroup(f"cyclic:{n}", n, table, inverses, labels, names)


def _dihedral(n: int) -> FiniteGroup:
    """Order 2n: rotations r^i at 0..n-1, reflections s r^i at n..2n-1."""
    size = 2 * n

    def mul(a, b):
        fa, ia = divmod(a, n)
        fb, ib = divmod(b, n)
        if fa == 0 and fb == 0:
            return (ia + ib) % n
        if fa == 0:
            return n + (ib - ia) % n
        if fb == 0:
            return n + (ia + ib) % n
        return (ib - ia) % n

    table = tuple(tuple(mul(a, b) for b in range(size)) for a in range(size))
    inverses = []
    names = []
    for a in range(size):
        f, i = divmod(a, n)
        if f == 0:
            inverses.append((-i) % n)
            names.append(_power_name("r", i))
        else:
            inverses.append(a)  # reflections are involutions
            names.append("s" if i == 0 else f"s*{_power_name('r', i)}")
    labels = {"s": n}
    if n > 1:
        labels["r"] = 1
    return FiniteGroup(f"dihedral:{n}", size, table, tuple(inverses), labels, tuple(names))


def _dicyclic(order: int, letters: tuple[str, str] = ("x", "y")) -> FiniteGroup:
    """Order 4n with x of order 2n, y^2 = x^n, y x y^-1 = x^-1."""
    n = order // 4
    m = 2 * n
    ax, ay = letters

    def mul(a, b):
        fa, ia = divmod(a, m)
        fb, ib = divmod(b, m)
        if fa == 0 and fb == 0:
            return (ia + ib) % m
        if fa == 0:
            return m + (ib - ia) % m
        if fb == 0:
            return m + (ia + ib) % m
        return (n - ia + ib) % m

    size = 4 * n
    table = tuple(tuple(mul(a, b) for b in range(size)) for a in range(size))
    inverses = []
    for a in range(size):
        f, i = divmod(a, m)
        inverses.append((-i) % m if f == 0 else m + (i + n) % m)
    labels = {ax: 1, ay: m}
    names = []
    for a in range(size):
        f, i = divmod(a, m)
        if f == 0:
            names.append(_power_name(ax, i))
        else:
            names.append(ay if i == 0 else f"{ay}*{_power_name(ax, i)}")
    name = "quaternion:8" if order == 8 else f"dicyclic:{order}"
    return FiniteGroup(name, size, table, tuple(inverses), labels, tuple(names))


def dicyclic_group(order: int, letters: tuple[str, str] = ("x", "y")) -> FiniteGroup:
    """Dicyclic group of the given order (a multiple of 4, at least 8)."""
    if order % 4 or order < 8:
        raise UnknownSpec(f"no dicyclic group of order {order}")
    G = _dicyclic(order, letters)
    check_group_axioms(G)
    return G


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def _symmetric(n: int) -> FiniteGroup:
    elems = list(itertools.permutations(range(n)))
    index_of = {p: i for i, p in enumerate(elems)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(n))

    size = len(elems)
    table = tuple(tuple(index_of[compose(elems[a], elems[b])] for b in range(size))
                  for a in range(size))
    inverses = []
    for p in elems:
        q = [0] * n
        for i, x in enumerate(p):
            q[x] = i
        inverses.append(index_of[tuple(q)])
    labels = {}
    if n >= 2:
        t = tuple([1, 0] + list(range(2, n)))
        labels["t"] = index_of[t]
        c = tuple((i + 1) % n for i in range(n))
        labels["c"] = index_of[c]
    names = tuple(_cycle_notation(p) for p in elems)
    return FiniteGroup(f"symmetric:{n}", size, table, tuple(inverses), labels, names)


def group_from_coset_table(ct, name: str, expected_order: int | None = None) -> FiniteGroup:
    """Convert a closed coset table over the trivial subgroup to a group."""
    n = ct.index
    if expected_order is not None and n != expected_order:
        raise PresentationCollapse(
            f"{name}: enumeration closed with {n} cosets, expected {expected_order}")
    words: list[tuple[tuple[str, int], ...] | None] = [None] * n
    words[0] = ()
    frontier = [0]
    letters = [(sym, 1) for sym in ct.generators] + [(sym, -1) for sym in ct.generators]
    while frontier:
        nxt = []
        for c in frontier:
            for sym, sgn in letters:
                d = ct.table[c][ct.column(sym, sgn)]
                if words[d] is None:
                    words[d] = words[c] + ((sym, sgn),)
                    nxt.append(d)
        frontier = nxt

    def apply(c: int, w) -> int:
        for sym, sgn in w:
            c = ct.table[c][ct.column(sym, sgn)]
        return c

    table = tuple(tuple(apply(a, words[b]) for b in range(n)) for a in range(n))
    inverses = []
    for a in range(n):
        row = table[a]
        inverses.append(row.index(0))
    labels = {sym: ct.table[0][ct.column(sym, 1)] for sym in ct.generators}
    names = tuple("1" if not w else str(Word.of(*w)).replace(" ", "*") for w in words)
    return FiniteGroup(name, n, table, tuple(inverses), labels, names)


_BINARY_OCTAHEDRAL_PRESENTATION = Presentation(
    ("X", "P", "Q", "R"),
    (
        parse_word("X^3"),
        parse_word("P^2 Q^-2"),
        parse_word("Q^2 R^-2"),
        parse_word("P Q P^-1 Q"),
        parse_word("X P X^-1 Q^-1"),
        parse_word("X Q X^-1 Q^-1 P^-1"),
        parse_word("R X R^-1 X"),
        parse_word("R P R^-1 P^-1 Q^-1"),
        parse_word("R Q R^-1 Q"),
    ),
)


def _binary_octahedral(coset_limit: int) -> FiniteGroup:
    ct = todd_coxeter(_BINARY_OCTAHEDRAL_PRESENTATION, (), coset_limit)
    return group_from_coset_table(ct, "binary-octahedral", expected_order=48)


def _binary_tetrahedral(coset_limit: int) -> FiniteGroup:
    big = build_group("binary-octahedral", coset_limit)
    gens = [big.generator_labels[s] for s in ("P", "Q", "X")]
    sub = subgroup_generated(big, gens)
    if sub.order != 24:
        raise PresentationCollapse("binary-tetrahedral: <P,Q,X> has wrong index")
    labels = {s: big.generator_labels[s] for s in ("P", "Q", "X")}
    H, _ = subgroup_as_group(sub, "binary-tetrahedral", labels)
    return H


def canonical_group_name(spec: str) -> str:
    """Normalize a group-name string; raises UnknownSpec/OrderLimitExceeded."""
    spec = spec.strip()
    if spec in ("binary-octahedral", "binary-tetrahedral"):
        return spec
    family, _, arg = spec.partition(":")
    if not arg or not arg.isdigit():
        raise UnknownSpec(f"cannot parse group name {spec!r}")
    n = int(arg)
    if family == "cyclic":
        if n < 1:
            raise UnknownSpec("cyclic groups need order >= 1")
        _check_cap(n)
        return f"cyclic:{n}"
    if family == "quaternion":
        if n != 8:
            raise UnknownSpec("quaternion:8 is the only quaternion spelling; use dicyclic:4n")
        return "quaternion:8"
    if family == "dicyclic":
        if n % 4 or n < 8:
            raise UnknownSpec(f"no dicyclic group of order {n}")
        _check_cap(n)
        return "quaternion:8" if n == 8 else f"dicyclic:{n}"
    if family == "dihedral":
        if n < 1:
            raise UnknownSpec("dihedral groups need n >= 1")
        _check_cap(2 * n)
        return f"dihedral:{n}"
    if family == "symmetric":
        if n < 1:
            raise UnknownSpec("symmetric groups need n >= 1")
        order = 1
        for k in range(2, n + 1):
            order *= k
        _check_cap(order)
        return f"symmetric:{n}"
    raise UnknownSpec(f"unknown group family {family!r}")


def _check_cap(order: int) -> None:
    if order > ORDER_CAP:
        raise OrderLimitExceeded(f"order {order} exceeds the cap {ORDER_CAP}")


@functools.lru_cache(maxsize=None)
def _build_canonical(name: str, coset_limit: int) -> FiniteGroup:
    if name == "binary-octahedral":
        G = _binary_octahedral(coset_limit)
    elif name == "binary-tetrahedral":
        return _binary_tetrahedral(coset_limit)
    else:
        family, _, arg = name.partition(":")
        n = int(arg)
        if family == "cyclic":
            G = _cyclic(n)
        elif family == "quaternion":
            G = _dicyclic(8)
        elif family == "dicyclic":
            G = _dicyclic(n)
        elif family == "dihedral":
            G = _dihedral(n)
        else:
            G = _symmetric(n)
    check_group_axioms(G)
    return G


def build_group(spec: str, coset_limit: int = DEFAULT_COSET_LIMIT) -> FiniteGroup:
    """Build a group from its canonical name.

    Grammar: cyclic:n | dicyclic:4n | quaternion:8 | binary-octahedral |
    binary-tetrahedral | symmetric:n | dihedral:n, resulting order <= 10000.
    """
    return _build_canonical(canonical_group_name(spec), coset_limit)
