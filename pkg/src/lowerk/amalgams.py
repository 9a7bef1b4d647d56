"""Amalgamated products of finite groups with unique normal forms.

An element of A *_C B is stored as a head in the edge group C followed by
an alternating sequence of non-identity right-coset representatives from
the two vertex groups.  Multiplying a vertex element onto the left of a
normal form needs a bounded number of coset factorizations, so words are
evaluated right to left; uniqueness of the form makes equality a plain
comparison (Serre, Trees).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    EdgeInversion,
    NotAnAction,
    NotHomomorphism,
    NotInjective,
    UnknownSymbol,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    hom_check,
    subgroup_as_group,
)
from .presentations import Word

INFINITE = math.inf

SIDE_A = 0
SIDE_B = 1


@dataclass(frozen=True)
class AmalgamElement:
    """Normal form: head in C, then alternating transversal syllables.

    Syllables are (side, vertex element index) pairs; no syllable is an
    identity representative and consecutive syllables change sides.
    """

    head: int
    syllables: tuple[tuple[int, int], ...] = ()

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)


class Amalgam:
    """A *_C B built from two verified injective embeddings of C."""

    def __init__(self, A: FiniteGroup, B: FiniteGroup, C: FiniteGroup,
                 iA: GroupHom, iB: GroupHom):
        for hom, vertex in ((iA, A), (iB, B)):
            if hom.source is not C or hom.target is not vertex:
                raise NotHomomorphism("embedding endpoints do not match the amalgam data")
            if not hom_check(hom):
                raise NotHomomorphism(f"embedding into {vertex.name} is not a homomorphism")
            if not hom.is_injective():
                raise NotInjective(f"embedding into {vertex.name} is not injective")
        self.A, self.B, self.C = A, B, C
        self.iA, self.iB = iA, iB
        self._vertex = (A, B)
        self._embed = (iA.full_map(), iB.full_map())
        self._transversal = (self._make_transversal(SIDE_A), self._make_transversal(SIDE_B))
        self._factor = (self._make_factor(SIDE_A), self._make_factor(SIDE_B))

    def _make_transversal(self, side: int) -> tuple[int, ...]:
        """Right-coset representatives of the embedded edge group,
        identity first, then smallest element index per coset."""
        V = self._vertex[side]
        image = self._embed[side]
        seen = set()
        reps = []
        for g in range(V.order):
            if g in seen:
                continue
            coset = {V.table[image[c]][g] for c in range(self.C.order)}
            seen |= coset
            reps.append(V.identity if V.identity in coset else min(coset))
        reps.sort()
        return tuple(reps)

    def _make_factor(self, side: int) -> tuple[tuple[int, int], ...]:
        """For each vertex element a, the unique (c, t) with a = i(c) * t."""
        V = self._vertex[side]
        image = self._embed[side]
        out: list[tuple[int, int] | None] = [None] * V.order
        for c in range(self.C.order):
            for t in self._transversal[side]:
                a = V.table[image[c]][t]
                if out[a] is not None:
                    raise NotInjective(f"coset factorization in {V.name} is not unique")
                out[a] = (c, t)
        return tuple(out)  # type: ignore[arg-type]

    # -- basic data ---------------------------------------------------------

    def index(self, side: int) -> int:
        return len(self._transversal[side])

    @property
    def identity_element(self) -> AmalgamElement:
        return AmalgamElement(self.C.identity)

    def transversal(self, side: int) -> tuple[int, ...]:
        return self._transversal[side]

    # -- arithmetic on normal forms ------------------------------------------

    def _left_mul_vertex(self, side: int, x: int, e: AmalgamElement) -> AmalgamElement:
        """(x in vertex group `side`) * e, renormalized."""
        V = self._vertex[side]
        image = self._embed[side]
        u = V.table[x][image[e.head]]
        c1, s1 = self._factor[side][u]
        if s1 == V.identity:
            return AmalgamElement(c1, e.syllables)
        syll = e.syllables
        if not syll or syll[0][0] != side:
            return AmalgamElement(c1, ((side, s1),) + syll)
        v = V.table[s1][syll[0][1]]
        c2, s2 = self._factor[side][v]
        head = self.C.table[c1][c2]
        rest = syll[1:]
        if s2 == V.identity:
            return AmalgamElement(head, rest)
        return AmalgamElement(head, ((side, s2),) + rest)

    def _left_mul_edge(self, c: int, e: AmalgamElement) -> AmalgamElement:
        return AmalgamElement(self.C.table[c][e.head], e.syllables)

    def _vertex_sequence(self, e: AmalgamElement) -> list[tuple[int, int]]:
        """e as a product of vertex elements, left to right; the head is
        emitted through the A side (both embeddings agree on it)."""
        seq = []
        if e.head != self.C.identity:
            seq.append((SIDE_A, self._embed[SIDE_A][e.head]))
        seq.extend(e.syllables)
        return seq

    def mul(self, e1: AmalgamElement, e2: AmalgamElement) -> AmalgamElement:
        out = e2
        for side, x in reversed(self._vertex_sequence(e1)):
            out = self._left_mul_vertex(side, x, out)
        return out

    def inv(self, e: AmalgamElement) -> AmalgamElement:
        out = self.identity_element
        for side, x in self._vertex_sequence(e):
            out = self._left_mul_vertex(side, self._vertex[side].inverses[x], out)
        return out

    def power(self, e: AmalgamElement, n: int) -> AmalgamElement:
        if n < 0:
            e, n = self.inv(e), -n
        out = self.identity_element
        for _ in range(n):
            out = self.mul(out, e)
        return out

    def embed_vertex(self, side: int, x: int) -> AmalgamElement:
        return self._left_mul_vertex(side, x, self.identity_element)

    def _resolve(self, sym: str) -> tuple[int, int]:
        if sym in self.A.generator_labels:
            return SIDE_A, self.A.generator_labels[sym]
        if sym in self.B.generator_labels:
            return SIDE_B, self.B.generator_labels[sym]
        raise UnknownSymbol(f"{sym!r} is not a generator label of either vertex group")

    def evaluate(self, word: Word) -> AmalgamElement:
        """Normal form of a word over the vertex groups' generator labels."""
        out = self.identity_element
        for sym, exp in reversed(word.entries):
            side, g = self._resolve(sym)
            out = self._left_mul_vertex(side, self._vertex[side].power(g, exp), out)
        return out

    def describe(self, e: AmalgamElement) -> str:
        """Human-readable normal form: head name, then syllable names."""
        parts = []
        if e.head != self.C.identity or not e.syllables:
            parts.append(self.C.element_names[e.head])
        parts.extend(self._vertex[side].element_names[t] for side, t in e.syllables)
        return " * ".join(parts)

    # -- element orders -------------------------------------------------------

    def order_of(self, e: AmalgamElement) -> int | float:
        """Element order; INFINITE when the cyclically reduced syllable
        length is at least 2, otherwise the order inside a vertex group."""
        while e.syllable_count >= 2 and e.syllables[0][0] == e.syllables[-1][0]:
            side, s1 = e.syllables[0]
            lead = AmalgamElement(e.head, ((side, s1),))
            e = self.mul(self.mul(self.inv(lead), e), lead)
        if e.syllable_count >= 2:
            return INFINITE
        if e.syllable_count == 0:
            return self.C.element_order(e.head)
        side, t = e.syllables[0]
        V = self._vertex[side]
        return V.element_order(V.table[self._embed[side][e.head]][t])


def amalgam_construct(A: FiniteGroup, B: FiniteGroup, C: FiniteGroup,
                      iA: GroupHom, iB: GroupHom) -> Amalgam:
    return Amalgam(A, B, C, iA, iB)


# ---------------------------------------------------------------------------
# finite group actions on finite graphs
# ---------------------------------------------------------------------------

class GraphWithAction:
    """A finite group acting on an oriented graph without edge inversions.

    `generator_action` maps each generator label of the group to a pair
    (vertex permutation, edge permutation); the action of every element
    is derived from the multiplication table and checked to be a genuine
    action preserving incidence and reversal.
    """

    def __init__(self, group: FiniteGroup, num_vertices: int,
                 edge_endpoints: tuple[tuple[int, int], ...],
                 edge_reverse: tuple[int, ...],
                 generator_action: dict[str, tuple[tuple[int, ...], tuple[int, ...]]]):
        self.group = group
        self.num_vertices = num_vertices
        self.edge_endpoints = edge_endpoints
        self.edge_reverse = edge_reverse
        ne = len(edge_endpoints)
        if len(edge_reverse) != ne:
            raise NotAnAction("reversal table length mismatch")
        for e in range(ne):
            r = edge_reverse[e]
            if r == e or edge_reverse[r] != e:
                raise NotAnAction("edge reversal must be a fixed-point-free involution")
            o, t = edge_endpoints[e]
            if edge_endpoints[r] != (t, o):
                raise NotAnAction("reversal must swap endpoints")
        self._vperm, self._eperm = self._extend(generator_action)
        self._check_action()

    def _extend(self, generator_action):
        idv = tuple(range(self.num_vertices))
        ide = tuple(range(len(self.edge_endpoints)))
        vperm: dict[int, tuple[int, ...]] = {self.group.identity: idv}
        eperm: dict[int, tuple[int, ...]] = {self.group.identity: ide}
        gen_elems = {}
        for lab, elem in self.group.generator_labels.items():
            if lab not in generator_action:
                raise NotAnAction(f"no action given for generator {lab!r}")
            gen_elems[elem] = generator_action[lab]
        frontier = [self.group.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for elem, (vp, ep) in gen_elems.items():
                    h = self.group.table[elem][g]
                    cand_v = tuple(vp[vperm[g][i]] for i in range(self.num_vertices))
                    cand_e = tuple(ep[eperm[g][i]] for i in range(len(ide)))
                    if h in vperm:
                        if vperm[h] != cand_v or eperm[h] != cand_e:
                            raise NotAnAction("generator permutations are inconsistent")
                    else:
                        vperm[h] = cand_v
                        eperm[h] = cand_e
                        nxt.append(h)
            frontier = nxt
        if len(vperm) != self.group.order:
            raise NotAnAction("generator labels do not generate the acting group")
        return vperm, eperm

    def _check_action(self):
        G = self.group
        for g in range(G.order):
            vp, ep = self._vperm[g], self._eperm[g]
            if sorted(vp) != list(range(self.num_vertices)) or sorted(ep) != list(range(len(ep))):
                raise NotAnAction("element action is not a permutation")
            for e, (o, t) in enumerate(self.edge_endpoints):
                img = ep[e]
                if self.edge_endpoints[img] != (vp[o], vp[t]):
                    raise NotAnAction("action does not preserve incidence")
                if ep[self.edge_reverse[e]] != self.edge_reverse[img]:
                    raise NotAnAction("action does not commute with reversal")
                if img == self.edge_reverse[e]:
                    raise EdgeInversion(f"element {g} maps edge {e} to its own reversal")
        for a in range(G.order):
            for b in range(G.order):
                ab = G.table[a][b]
                if self._vperm[ab] != tuple(self._vperm[a][i] for i in self._vperm[b]):
                    raise NotAnAction("vertex action is not a homomorphism")

    def vertex_image(self, g: int, v: int) -> int:
        return self._vperm[g][v]

    def edge_image(self, g: int, e: int) -> int:
        return self._eperm[g][e]

    def vertex_stabilizer(self, v: int) -> Subgroup:
        elems = tuple(g for g in range(self.group.order) if self._vperm[g][v] == v)
        return Subgroup(self.group, elems)

    def edge_stabilizer(self, e: int) -> Subgroup:
        elems = tuple(g for g in range(self.group.order) if self._eperm[g][e] == e)
        return Subgroup(self.group, elems)

    def vertex_orbit(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({self._vperm[g][v] for g in range(self.group.order)}))

    def edge_orbit(self, e: int) -> tuple[int, ...]:
        return tuple(sorted({self._eperm[g][e] for g in range(self.group.order)}))


@dataclass
class OrbitData:
    representative: int
    orbit: tuple[int, ...]
    stabilizer: Subgroup


@dataclass
class GraphOfGroups:
    """Quotient data: one entry per vertex/edge orbit, with stabilizers."""

    action: GraphWithAction
    vertex_orbits: list[OrbitData]
    edge_orbits: list[OrbitData]

    def is_segment(self) -> bool:
        """Two vertex orbits joined by a single geometric edge orbit."""
        if len(self.vertex_orbits) != 2 or len(self.edge_orbits) != 2:
            return False
        e0, e1 = self.edge_orbits
        if self.action.edge_reverse[e0.representative] not in e1.orbit:
            return False
        o, t = self.action.edge_endpoints[e0.representative]
        first = set(self.vertex_orbits[0].orbit)
        return (o in first) != (t in first)

    def segment_amalgam(self) -> Amalgam:
        """The induced amalgam Stab(origin) *_Stab(edge) Stab(target)."""
        if not self.is_segment():
            raise NotAnAction("quotient graph is not a single segment")
        e = self.edge_orbits[0].representative
        o, t = self.action.edge_endpoints[e]
        stab_e = self.action.edge_stabilizer(e)
        stab_o = self.action.vertex_stabilizer(o)
        stab_t = self.action.vertex_stabilizer(t)
        C, c_elems = subgroup_as_group(stab_e, "edge-stabilizer")
        A, a_elems = subgroup_as_group(stab_o, "origin-stabilizer")
        B, b_elems = subgroup_as_group(stab_t, "target-stabilizer")
        a_index = {g: i for i, g in enumerate(a_elems)}
        b_index = {g: i for i, g in enumerate(b_elems)}
        iA = GroupHom(C, A, {lab: a_index[c_elems[g]]
                             for lab, g in C.generator_labels.items()})
        iB = GroupHom(C, B, {lab: b_index[c_elems[g]]
                             for lab, g in C.generator_labels.items()})
        return Amalgam(A, B, C, iA, iB)


def graph_of_groups_quotient(gwa: GraphWithAction) -> GraphOfGroups:
    """Orbit decomposition with a representative and stabilizer per orbit."""
    vertex_orbits = []
    seen: set[int] = set()
    for v in range(gwa.num_vertices):
        if v in seen:
            continue
        orbit = gwa.vertex_orbit(v)
        seen |= set(orbit)
        vertex_orbits.append(OrbitData(v, orbit, gwa.vertex_stabilizer(v)))
    edge_orbits = []
    seen = set()
    for e in range(len(gwa.edge_endpoints)):
        if e in seen:
            continue
        orbit = gwa.edge_orbit(e)
        seen |= set(orbit)
        edge_orbits.append(OrbitData(e, orbit, gwa.edge_stabilizer(e)))
    return GraphOfGroups(gwa, vertex_orbits, edge_orbits)
