"""Lower K-theory of integral group rings: Carter's formula, bundled
K-data for the groups in scope, the symbolic Nil ledger, and the
per-degree assembly for amalgams of finite groups.

Carter's decomposition K_{-1}(Z[G]) = Z^r + (Z/2)^s has

    r = 1 - r_Q + sum over p | |G| of (r_{Q_p} - r_{F_p}),

with the representation counts computed by class fusion; s (the number
of rational irreducibles with even Schur index but odd local indices) is
bundled lookup data, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    AbelianMap,
    FgAbelianGroup,
    TRIVIAL_GROUP,
    cokernel,
    kernel,
    presentation_of,
    presentation_of_sum,
)
from .errors import (
    AssemblySpecError,
    MissingDegree,
    UnknownSchurData,
)
from .fusion import Rational, count_irreducibles, sc_rank
from .groups import FiniteGroup, canonical_group_name

DEGREES = ("Wh", "K0t", "Km1", "Km2")
_NEXT_LOWER = {"Wh": "K0t", "K0t": "Km1", "Km1": "Km2", "Km2": None}
_NIL_DEGREES = {"Wh", "K0t"}


# ---------------------------------------------------------------------------
# Carter's formula
# ---------------------------------------------------------------------------

def carter_rank(G: FiniteGroup) -> int:
    """Free rank of K_{-1}(Z[G]) (Carter 1980)."""
    return 1 - count_irreducibles(G, Rational()) + sc_rank(G)


def negk_consistency(G: FiniteGroup) -> bool:
    """Rank bookkeeping of the exact sequence relating the reduced
    rational K_0, the singular characters and K_{-1}: the singular rank
    minus (r_Q - 1) must equal Carter's free rank."""
    r_q = count_irreducibles(G, Rational())
    return sc_rank(G) - (r_q - 1) == carter_rank(G)


# Count of rational irreducibles with even Schur index but odd local
# indices, per canonical group name.  Cyclic groups are all 0 (commutative
# group algebras split into fields).  Sources: Carter 1980;
# Guaschi-Juan-Pineda-Millan 2018, Table 2.1; Lafont-Ortiz (reflection
# group computations).
_SCHUR_EVEN_COUNT = {
    "binary-octahedral": 1,
    "dicyclic:24": 1,
    "dicyclic:12": 0,
    "quaternion:8": 0,
    "symmetric:4": 0,
    "dihedral:3": 0,
    "dihedral:6": 0,
}


def schur_even_count(name: str) -> int:
    key = canonical_group_name(name)
    if key.startswith("cyclic:"):
        return 0
    if key in _SCHUR_EVEN_COUNT:
        return _SCHUR_EVEN_COUNT[key]
    raise UnknownSchurData(f"no bundled Schur-index data for {key}")


def k_minus1(G: FiniteGroup, s: int | None = None) -> FgAbelianGroup:
    """K_{-1}(Z[G]) = Z^carter_rank + (Z/2)^s, with s looked up."""
    if s is None:
        s = schur_even_count(G.name)
    return FgAbelianGroup.from_divisors(carter_rank(G), [2] * s)


# ---------------------------------------------------------------------------
# bundled K-sheets
# ---------------------------------------------------------------------------

@dataclass
class KSheet:
    """Lower K-data of one group: Wh, reduced K_0, K_{-1}, K_{<=-2}."""

    group: str
    entries: dict[str, FgAbelianGroup]
    cite: str

    def __post_init__(self):
        for deg in DEGREES:
            self.entries.setdefault(deg, TRIVIAL_GROUP)

    def to_json(self) -> dict:
        out: dict = {"group": self.group}
        for deg in DEGREES:
            out[deg] = self.entries[deg].to_json()
        out["cite"] = self.cite
        return out

    @classmethod
    def from_json(cls, data: dict) -> "KSheet":
        if "group" not in data or "cite" not in data:
            raise AssemblySpecError("sheet needs 'group' and 'cite' fields")
        entries = {}
        for deg in DEGREES:
            if deg in data:
                entries[deg] = FgAbelianGroup.from_json(data[deg])
            elif deg == "Km2":
                entries[deg] = TRIVIAL_GROUP
            else:
                raise MissingDegree(f"sheet for {data['group']} lacks degree {deg}")
        return cls(data["group"], entries, data["cite"])


def _sheet(group: str, cite: str, Wh=None, K0t=None, Km1=None) -> KSheet:
    entries = {}
    if Wh is not None:
        entries["Wh"] = Wh
    if K0t is not None:
        entries["K0t"] = K0t
    if Km1 is not None:
        entries["Km1"] = Km1
    return KSheet(group, entries, cite)


_Z = FgAbelianGroup(1)
_Z2 = FgAbelianGroup(0, (2,))
_GJM = "Guaschi-Juan-Pineda-Millan 2018, Table 2.1"
_LO2 = "Lafont-Ortiz, lower K of 3-simplex reflection groups, Sec. 5"

BUNDLED_KSHEETS: dict[str, KSheet] = {
    s.group: s for s in (
        _sheet("cyclic:1", "Carter 1980 (trivial ring)"),
        _sheet("cyclic:2", _GJM),
        _sheet("cyclic:4", _GJM),
        _sheet("quaternion:8", _GJM, K0t=_Z2),
        _sheet("dicyclic:12", _GJM, K0t=_Z2, Km1=_Z),
        _sheet("dicyclic:24", _GJM, Wh=_Z,
               K0t=FgAbelianGroup(0, (2, 2, 2)), Km1=FgAbelianGroup(2, (2,))),
        _sheet("binary-octahedral", _GJM, Wh=_Z,
               K0t=FgAbelianGroup(0, (2, 2)), Km1=FgAbelianGroup(1, (2,))),
        _sheet("symmetric:4", _LO2),
        _sheet("dihedral:3", _LO2),
        _sheet("dihedral:6", _LO2, Km1=_Z),
    )
}


def bundled_ksheet(name: str) -> KSheet | None:
    return BUNDLED_KSHEETS.get(canonical_group_name(name))


# ---------------------------------------------------------------------------
# symbolic Nil values
# ---------------------------------------------------------------------------

NIL_ZERO = "Zero"
NIL_COUNTABLE_SUM_Z2 = "CountableSumZ2"
NIL_UNKNOWN = "Unknown"


@dataclass(frozen=True)
class NilValue:
    tag: str
    provenance: str

    def __post_init__(self):
        if self.tag not in (NIL_ZERO, NIL_COUNTABLE_SUM_Z2, NIL_UNKNOWN):
            raise ValueError(f"bad Nil tag {self.tag!r}")
        if self.tag == NIL_UNKNOWN and not self.provenance:
            raise ValueError("Unknown Nil values must explain the gap")

    def __str__(self) -> str:
        if self.tag == NIL_ZERO:
            return "0"
        if self.tag == NIL_COUNTABLE_SUM_Z2:
            return "(Z/2)^(oo)"
        return "Nil?"

    def __eq__(self, other):
        # provenance is commentary; only the symbolic tag is compared
        return isinstance(other, NilValue) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


def nil_sum(values: list[NilValue]) -> NilValue:
    tags = {v.tag for v in values}
    if NIL_UNKNOWN in tags:
        why = "; ".join(v.provenance for v in values if v.tag == NIL_UNKNOWN)
        return NilValue(NIL_UNKNOWN, why)
    if NIL_COUNTABLE_SUM_Z2 in tags:
        keep = [v.provenance for v in values if v.tag == NIL_COUNTABLE_SUM_Z2]
        return NilValue(NIL_COUNTABLE_SUM_Z2, "; ".join(keep))
    return NilValue(NIL_ZERO, "empty or all-zero contributions")


# virtually-cyclic shapes feeding the Nil ledger

@dataclass(frozen=True)
class DirectProductVC:
    """F x Z for a finite group F (Bass NK groups)."""
    finite: str

    def __str__(self):
        return f"{self.finite} x Z"


@dataclass(frozen=True)
class SemiDirectVC:
    """F semidirect Z (Farrell-Hsiang twisted Nil groups)."""
    finite: str

    def __str__(self):
        return f"{self.finite} : Z"


@dataclass(frozen=True)
class AmalgamVC:
    """G1 *_F G2 with F of index 2 in both (Waldhausen Nil groups)."""
    left: str
    edge: str
    right: str

    def __str__(self):
        return f"{self.left} *_{self.edge} {self.right}"


VcType = DirectProductVC | SemiDirectVC | AmalgamVC


def nil_classify(vc: VcType) -> NilValue:
    """Bundled Nil results for the virtually-cyclic shapes in scope.

    Anything outside the ledger comes back Unknown rather than guessed.
    """
    if isinstance(vc, DirectProductVC):
        f = canonical_group_name(vc.finite)
        if f == "cyclic:2":
            return NilValue(NIL_ZERO, "NK of Z[Z/2] vanishes in low degrees (Weibel 2009)")
        if f == "cyclic:4":
            return NilValue(NIL_COUNTABLE_SUM_Z2, "NK of Z[Z/4] (Weibel 2009)")
        return NilValue(NIL_UNKNOWN, f"no bundled result for {vc}")
    if isinstance(vc, AmalgamVC):
        left, right = sorted((canonical_group_name(vc.left), canonical_group_name(vc.right)))
        edge = canonical_group_name(vc.edge)
        key = (left, edge, right)
        if key == ("cyclic:4", "cyclic:2", "cyclic:4"):
            return NilValue(NIL_ZERO, "reduces to NK of Z/2 x Z (Lafont-Ortiz 2008; Weibel 2009)")
        if key == ("quaternion:8", "cyclic:4", "quaternion:8"):
            return NilValue(NIL_COUNTABLE_SUM_Z2,
                            "reduces to NK of Z/4 x Z (Lafont-Ortiz 2008; Weibel 2009)")
        if key == ("cyclic:2", "cyclic:1", "cyclic:2"):
            return NilValue(NIL_ZERO, "free product of two Z/2 (Waldhausen 1978)")
        if key == ("dihedral:2", "cyclic:2", "dihedral:2"):
            return NilValue(NIL_ZERO, "reduces to NK of Z/2 x Z (Weibel 2009)")
        return NilValue(NIL_UNKNOWN, f"no bundled result for {vc}")
    return NilValue(NIL_UNKNOWN, f"no bundled result for {vc}")


def vc_from_json(data: dict) -> VcType:
    kind = data.get("type")
    if kind == "product":
        return DirectProductVC(data["finite"])
    if kind == "semidirect":
        return SemiDirectVC(data["finite"])
    if kind == "amalgam":
        return AmalgamVC(data["left"], data["edge"], data["right"])
    raise AssemblySpecError(f"unknown vc type {kind!r}")


def vc_to_json(vc: VcType) -> dict:
    if isinstance(vc, DirectProductVC):
        return {"type": "product", "finite": vc.finite}
    if isinstance(vc, SemiDirectVC):
        return {"type": "semidirect", "finite": vc.finite}
    return {"type": "amalgam", "left": vc.left, "edge": vc.edge, "right": vc.right}


# ---------------------------------------------------------------------------
# assembly for amalgams of finite groups
# ---------------------------------------------------------------------------

@dataclass
class MapSpec:
    """Cited matrix of the induced map K_n(Z[C]) -> K_n(Z[A]) + K_n(Z[B]).

    The matrix is written against the canonical coordinates of the
    sheets: torsion generators first within every group, and the target
    direct sum laid out as (torsion of A, torsion of B, free of A,
    free of B).
    """

    degree: str
    matrix: tuple[tuple[int, ...], ...]
    source: str
    cite: str

    def to_json(self) -> dict:
        return {"degree": self.degree, "matrix": [list(r) for r in self.matrix],
                "source": self.source, "cite": self.cite}


@dataclass
class NilEntry:
    vc: VcType
    cite: str


@dataclass
class AssemblySpec:
    name: str
    group_a: str
    group_b: str
    group_c: str
    sheets: dict[str, KSheet]
    maps: dict[str, MapSpec]
    nils: list[NilEntry]

    def sheet(self, group: str) -> KSheet:
        key = canonical_group_name(group)
        if key not in self.sheets:
            raise AssemblySpecError(f"no sheet bundled for {group}")
        return self.sheets[key]


def assembly_spec_from_json(data: dict) -> AssemblySpec:
    for key in ("name", "A", "B", "C", "sheets", "maps", "nils"):
        if key not in data:
            raise AssemblySpecError(f"assembly spec lacks {key!r}")
    sheets = {}
    for raw in data["sheets"]:
        sheet = KSheet.from_json(raw)
        sheets[canonical_group_name(sheet.group)] = sheet
    maps = {}
    for raw in data["maps"]:
        for key in ("degree", "matrix", "source", "cite"):
            if key not in raw:
                raise AssemblySpecError(f"map entry lacks {key!r}")
        if not raw["cite"]:
            raise AssemblySpecError("maps are cited data; empty cite refused")
        if raw["degree"] not in DEGREES:
            raise AssemblySpecError(f"unknown degree {raw['degree']!r}")
        matrix = tuple(tuple(int(x) for x in row) for row in raw["matrix"])
        maps[raw["degree"]] = MapSpec(raw["degree"], matrix, raw["source"], raw["cite"])
    for deg in DEGREES:
        if deg not in maps:
            raise MissingDegree(f"assembly spec lacks a map in degree {deg}")
    nils = [NilEntry(vc_from_json(raw["vc"]), raw.get("cite", ""))
            for raw in data["nils"]]
    spec = AssemblySpec(data["name"], data["A"], data["B"], data["C"],
                        sheets, maps, nils)
    for g in (spec.group_a, spec.group_b, spec.group_c):
        spec.sheet(g)
    for deg, ms in maps.items():
        if canonical_group_name(ms.source) != canonical_group_name(spec.group_c):
            raise AssemblySpecError(
                f"map in degree {deg} has source {ms.source}, expected {spec.group_c}")
    return spec


def assembly_spec_to_json(spec: AssemblySpec) -> dict:
    return {
        "name": spec.name,
        "A": spec.group_a,
        "B": spec.group_b,
        "C": spec.group_c,
        "sheets": [spec.sheets[k].to_json() for k in sorted(spec.sheets)],
        "maps": [spec.maps[d].to_json() for d in DEGREES],
        "nils": [{"vc": vc_to_json(n.vc), "cite": n.cite} for n in spec.nils],
    }


@dataclass
class AssembledDegree:
    degree: str
    coker: FgAbelianGroup
    ker_shift: FgAbelianGroup
    nil: NilValue

    @property
    def abelian(self) -> FgAbelianGroup:
        return self.coker.direct_sum(self.ker_shift)

    def __str__(self) -> str:
        if self.nil.tag == NIL_ZERO:
            return str(self.abelian)
        if self.abelian.is_trivial:
            return str(self.nil)
        return f"{self.abelian} + {self.nil}"


def _degree_map(spec: AssemblySpec, degree: str) -> AbelianMap:
    sheet_a = spec.sheet(spec.group_a).entries[degree]
    sheet_b = spec.sheet(spec.group_b).entries[degree]
    sheet_c = spec.sheet(spec.group_c).entries[degree]
    source = presentation_of(sheet_c)
    target = presentation_of_sum([sheet_a, sheet_b])
    return AbelianMap(source, target, spec.maps[degree].matrix)


def amalgam_k_assemble(spec: AssemblySpec) -> dict[str, AssembledDegree]:
    """Per-degree decomposition of the K-theory of A *_C B.

    Each degree contributes the cokernel of its own map, the kernel of
    the map one degree lower, and the symbolic Nil sum (nonzero only in
    Wh and reduced-K_0 degrees; everything vanishes below degree -1).
    """
    maps = {deg: _degree_map(spec, deg) for deg in DEGREES}
    nil_values = [nil_classify(entry.vc) for entry in spec.nils]
    out = {}
    for deg in DEGREES:
        coker = cokernel(maps[deg])
        lower = _NEXT_LOWER[deg]
        ker_shift = kernel(maps[lower]) if lower else TRIVIAL_GROUP
        if deg in _NIL_DEGREES:
            nil = nil_sum(nil_values)
        else:
            nil = NilValue(NIL_ZERO, "twisted Nil groups vanish below degree 0 in this range")
        out[deg] = AssembledDegree(deg, coker, ker_shift, nil)
    return out
