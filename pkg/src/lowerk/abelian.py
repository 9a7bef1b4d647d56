"""Finitely generated abelian groups and exact integer linear algebra.

Groups are kept in invariant-factor form (free rank plus a divisibility
chain of torsion coefficients).  Maps between presented abelian groups
are integer matrices; kernels and cokernels are computed through the
Smith normal form.  All arithmetic uses Python's arbitrary-precision
integers; entry growth during elimination is harmless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import IllFormedMap

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def eye(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    bc = len(b[0]) if b else 0
    return [[sum(ra[k] * b[k][j] for k in range(len(ra))) for j in range(bc)]
            for ra in a]


def mat_vec(m: Matrix, v: list[int]) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in m]


def determinant(mat: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SmithForm:
    """Decomposition u * m * v = d with u, v unimodular and d diagonal.

    The diagonal is nonnegative and forms a divisibility chain.  u_inv and
    v_inv are maintained alongside so lattice computations never need a
    separate matrix inversion.
    """

    u: Matrix
    d: Matrix
    v: Matrix
    u_inv: Matrix
    v_inv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(mat: Matrix, cols: int | None = None) -> SmithForm:
    """Smith normal form over the integers.

    `cols` is only needed to fix the width of a matrix with zero rows.
    """
    r = len(mat)
    c = len(mat[0]) if r else (cols or 0)
    a = [list(map(int, row)) for row in mat]
    for row in a:
        if len(row) != c:
            raise ValueError("ragged matrix")
    u, ui = eye(r), eye(r)
    v, vi = eye(c), eye(c)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in ui:
            row[i] = -row[i]

    def row_add(i, t, q):
        # row_i += q * row_t
        a[i] = [x + q * y for x, y in zip(a[i], a[t])]
        u[i] = [x + q * y for x, y in zip(u[i], u[t])]
        for row in ui:
            row[t] -= q * row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def col_add(j, t, q):
        # col_j += q * col_t
        for row in a:
            row[j] += q * row[t]
        for row in v:
            row[j] += q * row[t]
        vi[t] = [x - q * y for x, y in zip(vi[t], vi[j])]

    t = 0
    limit = min(r, c)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    pivot, best = (i, j), x
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if a[t][t] < 0:
            row_neg(t)
        dirty = False
        for i in range(t + 1, r):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    row_add(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, c):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                if q:
                    col_add(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1
    return SmithForm(u, a, v, ui, vi)


def solve_lattice(cols: list[list[int]], v: list[int]) -> list[int] | None:
    """Integer coefficients z with sum_j z_j * cols[j] = v, or None."""
    n = len(v)
    if not cols:
        return [] if all(x == 0 for x in v) else None
    mat = [[col[i] for col in cols] for i in range(n)]
    s = smith_normal_form(mat, cols=len(cols))
    w = mat_vec(s.u, v)
    diag = s.diagonal
    y = [0] * len(cols)
    for i in range(n):
        di = diag[i] if i < len(diag) else 0
        if di:
            if w[i] % di:
                return None
            y[i] = w[i] // di
        elif w[i]:
            return None
    return mat_vec(s.v, y)


# ---------------------------------------------------------------------------
# abelian groups in invariant-factor form
# ---------------------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group: Z^free_rank + sum of Z/d_i.

    The torsion coefficients form a divisibility chain d_1 | d_2 | ...
    with every d_i >= 2, so equality of values is isomorphism.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("torsion coefficients must form a divisibility chain")
            prev = d

    @classmethod
    def from_divisors(cls, free_rank: int, divisors: "itertools.chain | list[int] | tuple[int, ...]") -> "FgAbelianGroup":
        """Canonicalize an arbitrary direct sum of cyclic groups."""
        exponents: dict[int, list[int]] = {}
        for d in divisors:
            d = abs(int(d))
            if d == 0:
                free_rank += 1
                continue
            for p, e in _factorize(d).items():
                exponents.setdefault(p, []).append(e)
        for p in exponents:
            exponents[p].sort(reverse=True)
        depth = max((len(v) for v in exponents.values()), default=0)
        factors = []
        for k in range(depth):
            f = 1
            for p, es in exponents.items():
                if k < len(es):
                    f *= p ** es[k]
            factors.append(f)
        return cls(free_rank, tuple(reversed(factors)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when the free rank is positive."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def direct_sum(self, *others: "FgAbelianGroup") -> "FgAbelianGroup":
        rank = self.free_rank + sum(g.free_rank for g in others)
        divisors = list(self.torsion)
        for g in others:
            divisors.extend(g.torsion)
        return FgAbelianGroup.from_divisors(rank, divisors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for d, group in itertools.groupby(self.torsion):
            k = len(list(group))
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAbelianGroup":
        return cls.from_divisors(int(data["rank"]), [int(d) for d in data["torsion"]])


TRIVIAL_GROUP = FgAbelianGroup()


# ---------------------------------------------------------------------------
# presented abelian groups and maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianPresentation:
    """Z^ngens modulo the lattice spanned by the relation vectors."""

    ngens: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) != self.ngens:
                raise ValueError("relation length does not match generator count")


def presentation_of(g: FgAbelianGroup) -> AbelianPresentation:
    """Canonical presentation: torsion generators first, then free ones."""
    n = len(g.torsion) + g.free_rank
    rels = []
    for i, d in enumerate(g.torsion):
        rel = [0] * n
        rel[i] = d
        rels.append(tuple(rel))
    return AbelianPresentation(n, tuple(rels))


def presentation_of_sum(groups: list[FgAbelianGroup]) -> AbelianPresentation:
    """Presentation of a direct sum keeping each summand's coordinates.

    Generator order: all torsion generators (summand by summand), then all
    free generators (summand by summand).  Nothing is canonicalized, so
    matrices written against this ordering keep their cited shape.
    """
    torsion = [d for g in groups for d in g.torsion]
    free = sum(g.free_rank for g in groups)
    n = len(torsion) + free
    rels = []
    for i, d in enumerate(torsion):
        rel = [0] * n
        rel[i] = d
        rels.append(tuple(rel))
    return AbelianPresentation(n, tuple(rels))


def group_of(pres: AbelianPresentation) -> FgAbelianGroup:
    """Invariant-factor form of a presented abelian group."""
    if pres.ngens == 0:
        return TRIVIAL_GROUP
    mat = [[rel[i] for rel in pres.relations] for i in range(pres.ngens)]
    s = smith_normal_form(mat, cols=len(pres.relations))
    diag = [d for d in s.diagonal if d != 0]
    free = pres.ngens - len(diag)
    return FgAbelianGroup.from_divisors(free, [d for d in diag if d > 1])


@dataclass(frozen=True)
class AbelianMap:
    """A homomorphism between presented abelian groups.

    `matrix` has one row per target generator and one column per source
    generator; column j is the image of source generator j.
    """

    source: AbelianPresentation
    target: AbelianPresentation
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.target.ngens:
            raise IllFormedMap(
                f"matrix has {len(self.matrix)} rows, target has {self.target.ngens} generators")
        for row in self.matrix:
            if len(row) != self.source.ngens:
                raise IllFormedMap(
                    f"matrix row length {len(row)} does not match {self.source.ngens} source generators")

    def image_of(self, vec: list[int]) -> list[int]:
        return [sum(row[j] * vec[j] for j in range(len(vec))) for row in self.matrix]

    def check_well_defined(self) -> None:
        """Every source relation must land in the target relation lattice."""
        target_rels = [list(r) for r in self.target.relations]
        for rel in self.source.relations:
            img = self.image_of(list(rel))
            if solve_lattice(target_rels, img) is None:
                raise IllFormedMap(f"image of source relation {rel} misses the target lattice")


def zero_map(source: AbelianPresentation, target: AbelianPresentation) -> AbelianMap:
    return AbelianMap(source, target,
                      tuple(tuple(0 for _ in range(source.ngens))
                            for _ in range(target.ngens)))


def cokernel(f: AbelianMap) -> FgAbelianGroup:
    """Target modulo (image + target relations), in canonical form."""
    f.check_well_defined()
    n = f.target.ngens
    if n == 0:
        return TRIVIAL_GROUP
    cols = [[f.matrix[i][j] for i in range(n)] for j in range(f.source.ngens)]
    cols.extend(list(r) for r in f.target.relations)
    mat = [[col[i] for col in cols] for i in range(n)]
    s = smith_normal_form(mat, cols=len(cols))
    diag = [d for d in s.diagonal if d != 0]
    free = n - len(diag)
    return FgAbelianGroup.from_divisors(free, [d for d in diag if d > 1])


def kernel(f: AbelianMap) -> FgAbelianGroup:
    """Kernel of the induced map on quotients, in canonical form.

    Solve M x + R_T y = 0 for x, project the solution lattice to the
    source coordinates, then quotient by the source relations.
    """
    f.check_well_defined()
    m = f.source.ngens
    if m == 0:
        return TRIVIAL_GROUP
    n = f.target.ngens
    k = len(f.target.relations)
    q = m + k
    if n == 0:
        proj = [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    else:
        g = [[0] * q for _ in range(n)]
        for i in range(n):
            for j in range(m):
                g[i][j] = f.matrix[i][j]
            for j, rel in enumerate(f.target.relations):
                g[i][m + j] = rel[i]
        s = smith_normal_form(g, cols=q)
        rank = s.rank
        proj = [[s.v[i][j] for i in range(m)] for j in range(rank, q)]
    if not proj:
        return TRIVIAL_GROUP
    # basis of the projected solution lattice
    pmat = [[col[i] for col in proj] for i in range(m)]
    sp = smith_normal_form(pmat, cols=len(proj))
    rp = sp.rank
    if rp == 0:
        return TRIVIAL_GROUP
    diag = sp.diagonal
    coeff_cols = []
    for rel in f.source.relations:
        w = mat_vec(sp.u, list(rel))
        z = []
        for i in range(m):
            di = diag[i] if i < len(diag) else 0
            if i < rp:
                if w[i] % di:
                    raise IllFormedMap("source relation escapes the kernel lattice")
                z.append(w[i] // di)
            elif w[i]:
                raise IllFormedMap("source relation escapes the kernel lattice")
        coeff_cols.append(z)
    quotient = AbelianPresentation(rp, tuple(tuple(c) for c in coeff_cols))
    return group_of(quotient)
