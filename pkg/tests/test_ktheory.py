import copy

import pytest

from lowerk.abelian import FgAbelianGroup, TRIVIAL_GROUP
from lowerk.casebook import bundled_spec_json
from lowerk.errors import (
    AssemblySpecError,
    IllFormedMap,
    MissingDegree,
    UnknownSchurData,
)
from lowerk.groups import build_group
from lowerk.ktheory import (
    AmalgamVC,
    BUNDLED_KSHEETS,
    DEGREES,
    DirectProductVC,
    NIL_COUNTABLE_SUM_Z2,
    NIL_UNKNOWN,
    NIL_ZERO,
    NilValue,
    SemiDirectVC,
    amalgam_k_assemble,
    assembly_spec_from_json,
    assembly_spec_to_json,
    bundled_ksheet,
    carter_rank,
    k_minus1,
    negk_consistency,
    nil_classify,
    nil_sum,
    schur_even_count,
)

CARTER_TABLE = {
    "binary-octahedral": 1,
    "dicyclic:24": 2,
    "dicyclic:12": 1,
    "quaternion:8": 0,
    "cyclic:4": 0,
    "cyclic:2": 0,
    "symmetric:4": 0,
    "dihedral:3": 0,
    "dihedral:6": 1,
    "cyclic:1": 0,
}


@pytest.mark.parametrize("name,rank", sorted(CARTER_TABLE.items()))
def test_carter_ranks(name, rank):
    assert carter_rank(build_group(name)) == rank


def test_negk_consistency_on_bundled_groups():
    for name in list(CARTER_TABLE) + ["cyclic:8", "dicyclic:16",
                                      "binary-tetrahedral", "symmetric:3"]:
        assert negk_consistency(build_group(name))


def test_k_minus1_values():
    assert k_minus1(build_group("dicyclic:12")) == FgAbelianGroup(1)
    assert k_minus1(build_group("binary-octahedral")) == FgAbelianGroup(1, (2,))
    assert k_minus1(build_group("dicyclic:24")) == FgAbelianGroup(2, (2,))
    assert k_minus1(build_group("cyclic:8")) == TRIVIAL_GROUP
    assert k_minus1(build_group("dihedral:6")) == FgAbelianGroup(1)


def test_k_minus1_unknown_schur_data():
    with pytest.raises(UnknownSchurData):
        k_minus1(build_group("binary-tetrahedral"))
    with pytest.raises(UnknownSchurData):
        schur_even_count("dicyclic:16")
    # supplying the torsion count directly bypasses the lookup
    assert k_minus1(build_group("binary-tetrahedral"), s=0) == FgAbelianGroup(1)


def test_bundled_sheets_match_carter():
    # the bundled K_-1 rows agree with the fusion-computed decomposition
    for name, sheet in BUNDLED_KSHEETS.items():
        G = build_group(name)
        assert sheet.entries["Km1"] == k_minus1(G), name
        assert sheet.entries["Km2"] == TRIVIAL_GROUP


def test_bundled_sheet_golden_rows():
    ostar = bundled_ksheet("binary-octahedral")
    assert str(ostar.entries["Km1"]) == "Z + Z/2"
    assert str(ostar.entries["K0t"]) == "(Z/2)^2"
    assert str(ostar.entries["Wh"]) == "Z"
    d24 = bundled_ksheet("dicyclic:24")
    assert str(d24.entries["Km1"]) == "Z^2 + Z/2"
    assert str(d24.entries["K0t"]) == "(Z/2)^3"
    assert str(d24.entries["Wh"]) == "Z"
    d12 = bundled_ksheet("dicyclic:12")
    assert str(d12.entries["Km1"]) == "Z"
    assert str(d12.entries["K0t"]) == "Z/2"
    assert str(d12.entries["Wh"]) == "0"
    assert bundled_ksheet("dicyclic:8") is bundled_ksheet("quaternion:8")


def test_nil_classify_ledger():
    assert nil_classify(DirectProductVC("cyclic:2")).tag == NIL_ZERO
    assert nil_classify(DirectProductVC("cyclic:4")).tag == NIL_COUNTABLE_SUM_Z2
    assert nil_classify(AmalgamVC("cyclic:4", "cyclic:2", "cyclic:4")).tag == NIL_ZERO
    assert nil_classify(AmalgamVC("quaternion:8", "cyclic:4", "quaternion:8")).tag \
        == NIL_COUNTABLE_SUM_Z2
    assert nil_classify(AmalgamVC("dicyclic:8", "cyclic:4", "quaternion:8")).tag \
        == NIL_COUNTABLE_SUM_Z2
    assert nil_classify(AmalgamVC("cyclic:2", "cyclic:1", "cyclic:2")).tag == NIL_ZERO
    assert nil_classify(AmalgamVC("dihedral:2", "cyclic:2", "dihedral:2")).tag == NIL_ZERO
    assert nil_classify(DirectProductVC("cyclic:16")).tag == NIL_UNKNOWN
    assert nil_classify(SemiDirectVC("cyclic:4")).tag == NIL_UNKNOWN
    unknown = nil_classify(DirectProductVC("cyclic:16"))
    assert unknown.provenance


def test_nil_sum_and_equality():
    zero = NilValue(NIL_ZERO, "a")
    big = NilValue(NIL_COUNTABLE_SUM_Z2, "b")
    unk = NilValue(NIL_UNKNOWN, "gap")
    assert nil_sum([]).tag == NIL_ZERO
    assert nil_sum([zero, zero]).tag == NIL_ZERO
    assert nil_sum([zero, big]).tag == NIL_COUNTABLE_SUM_Z2
    assert nil_sum([big, unk]).tag == NIL_UNKNOWN
    assert zero == NilValue(NIL_ZERO, "different provenance")
    assert zero != big and unk != zero


def _assemble(name):
    return amalgam_k_assemble(assembly_spec_from_json(bundled_spec_json(name)))


def test_assemble_pb3():
    out = _assemble("pb3rp2")
    assert out["Wh"].abelian == TRIVIAL_GROUP and out["Wh"].nil.tag == NIL_ZERO
    assert out["K0t"].abelian == FgAbelianGroup(0, (2,))
    assert out["Km1"].abelian == TRIVIAL_GROUP
    assert out["Km2"].abelian == TRIVIAL_GROUP


def test_assemble_b3():
    out = _assemble("b3rp2")
    assert out["Wh"].abelian == FgAbelianGroup(2)
    assert out["Wh"].nil.tag == NIL_COUNTABLE_SUM_Z2
    assert out["K0t"].abelian == FgAbelianGroup(0, (2, 2, 2, 2))
    assert out["K0t"].nil.tag == NIL_COUNTABLE_SUM_Z2
    assert out["Km1"].abelian == FgAbelianGroup(2, (2, 2))
    assert out["Km1"].nil.tag == NIL_ZERO
    assert out["Km2"].abelian == TRIVIAL_GROUP
    assert str(out["Km1"]) == "Z^2 + (Z/2)^2"


def test_assemble_mcg():
    out = _assemble("mcg_rp2_3")
    assert out["Km1"].abelian == FgAbelianGroup(1)
    for deg in ("Wh", "K0t", "Km2"):
        assert out[deg].abelian == TRIVIAL_GROUP
        assert out[deg].nil.tag == NIL_ZERO


def test_assembly_round_trip():
    raw = bundled_spec_json("b3rp2")
    spec = assembly_spec_from_json(raw)
    again = assembly_spec_from_json(assembly_spec_to_json(spec))
    assert amalgam_k_assemble(again)["Km1"].abelian == FgAbelianGroup(2, (2, 2))


def test_identity_maps_give_zero_cokernels():
    sheet = {"rank": 0, "torsion": [2]}
    zero = {"rank": 0, "torsion": []}
    data = {
        "name": "synthetic",
        "A": "cyclic:4", "B": "cyclic:2", "C": "cyclic:4",
        "sheets": [
            {"group": "cyclic:4", "Wh": sheet, "K0t": zero, "Km1": zero, "Km2": zero,
             "cite": "synthetic"},
            {"group": "cyclic:2", "Wh": zero, "K0t": zero, "Km1": zero, "Km2": zero,
             "cite": "synthetic"},
        ],
        "maps": [
            {"degree": "Wh", "matrix": [[1]], "source": "cyclic:4", "cite": "identity"},
            {"degree": "K0t", "matrix": [], "source": "cyclic:4", "cite": "zero"},
            {"degree": "Km1", "matrix": [], "source": "cyclic:4", "cite": "zero"},
            {"degree": "Km2", "matrix": [], "source": "cyclic:4", "cite": "zero"},
        ],
        "nils": [],
    }
    out = amalgam_k_assemble(assembly_spec_from_json(data))
    for deg in DEGREES:
        assert out[deg].coker == TRIVIAL_GROUP


def test_unlisted_vc_type_propagates_as_unknown():
    raw = copy.deepcopy(bundled_spec_json("pb3rp2"))
    raw["nils"].append({"vc": {"type": "product", "finite": "cyclic:16"},
                        "cite": "outside the ledger"})
    out = amalgam_k_assemble(assembly_spec_from_json(raw))
    assert out["Wh"].nil.tag == NIL_UNKNOWN
    assert out["K0t"].nil.tag == NIL_UNKNOWN
    # degrees at and below -1 never carry twisted summands
    assert out["Km1"].nil.tag == NIL_ZERO
    assert str(out["Wh"]) == "Nil?"


def test_spec_schema_violations():
    raw = bundled_spec_json("b3rp2")
    missing_cite = copy.deepcopy(raw)
    missing_cite["maps"][0]["cite"] = ""
    with pytest.raises(AssemblySpecError):
        assembly_spec_from_json(missing_cite)

    missing_degree = copy.deepcopy(raw)
    missing_degree["maps"] = [m for m in missing_degree["maps"] if m["degree"] != "Km1"]
    with pytest.raises(MissingDegree):
        assembly_spec_from_json(missing_degree)

    bad_shape = copy.deepcopy(raw)
    bad_shape["maps"][2]["matrix"] = [[0], [0], [1]]
    with pytest.raises(IllFormedMap):
        amalgam_k_assemble(assembly_spec_from_json(bad_shape))

    wrong_source = copy.deepcopy(raw)
    wrong_source["maps"][0]["source"] = "cyclic:2"
    with pytest.raises(AssemblySpecError):
        assembly_spec_from_json(wrong_source)


def test_ill_formed_matrix_values():
    raw = copy.deepcopy(bundled_spec_json("b3rp2"))
    # a Z/2 generator sent onto a Z/4 generator is not well defined
    raw["sheets"][0]["K0t"] = {"rank": 0, "torsion": [2, 4]}
    raw["maps"][1]["matrix"] = [[0], [1], [0], [0], [0]]
    with pytest.raises(IllFormedMap):
        amalgam_k_assemble(assembly_spec_from_json(raw))
