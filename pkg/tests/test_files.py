import pytest

from qnbench.errors import InputFormatError
from qnbench.files import (
    load_group_inclusion,
    load_matrix_inclusion,
    parse_group_inclusion,
    parse_matrix_inclusion,
)
from qnbench.groups import Trit
from qnbench.subgroups import is_subgroup_member

SAMPLES = "sample_inputs"


def test_load_shift_file():
    doc = load_group_inclusion(f"{SAMPLES}/shift_tail.json")
    group = doc.group
    assert group.family == "shift_extension"
    assert doc.subgroup.label == "K0"
    assert is_subgroup_member(doc.subgroup, group.base_generator(1)) is Trit.YES
    assert is_subgroup_member(doc.subgroup, group.base_generator(-1)) is Trit.NO


def test_load_free_file():
    doc = load_group_inclusion(f"{SAMPLES}/f2_cyclic.json")
    assert doc.group.family == "free"
    assert doc.claim_abelian
    assert len(doc.subgroup.generators) == 1


def test_load_fp_file_with_rules():
    doc = load_group_inclusion(f"{SAMPLES}/infinite_dihedral.json")
    assert doc.group.family == "fp"
    assert doc.group.rewriting is not None and doc.group.rewriting.verified
    a, r = doc.group.generators()
    assert is_subgroup_member(doc.subgroup, r) is Trit.NO


def test_word_parsing_powers():
    doc = parse_group_inclusion(
        {
            "family": "free",
            "generators": ["a", "b"],
            "subgroup_generators": ["a^2 b^-1"],
        }
    )
    word = doc.subgroup.generators[0].payload
    assert word == ((0, 1), (0, 1), (1, -1))


def test_direct_product_document():
    doc = parse_group_inclusion(
        {
            "family": "direct_product",
            "left": {"family": "free", "generators": ["a", "b"], "subgroup_generators": ["a"]},
            "right": {"family": "free", "generators": ["x"], "subgroup_generators": ["x"]},
        }
    )
    assert doc.group.family == "direct_product"
    assert doc.subgroup.accelerator[0] == "product"


def test_unknown_field_rejected():
    with pytest.raises(InputFormatError, match="unknown fields"):
        parse_group_inclusion(
            {"family": "free", "generators": ["a"], "subgroup_generators": [], "clr": 1}
        )


def test_missing_field_rejected():
    with pytest.raises(InputFormatError, match="missing fields"):
        parse_group_inclusion({"family": "free", "generators": ["a"]})


def test_unknown_family_rejected():
    with pytest.raises(InputFormatError, match="unknown family"):
        parse_group_inclusion({"family": "braid"})


def test_bad_token_rejected():
    with pytest.raises(InputFormatError, match="bad token"):
        parse_group_inclusion(
            {"family": "free", "generators": ["a"], "subgroup_generators": ["a^"]}
        )


def test_unknown_generator_rejected():
    with pytest.raises(InputFormatError, match="unknown generator"):
        parse_group_inclusion(
            {"family": "free", "generators": ["a"], "subgroup_generators": ["c"]}
        )


def test_matrix_document_roundtrip():
    doc = load_matrix_inclusion(f"{SAMPLES}/diag_m2.json")
    assert doc.blocks == [2]
    assert doc.seed == 42
    assert len(doc.witness_pairs) == 1
    x, y = doc.witness_pairs[0]
    assert x[0][0, 1] == 1.0
    assert y[0][1, 0] == 1.0


def test_matrix_document_bad_shape():
    with pytest.raises(InputFormatError, match="rows"):
        parse_matrix_inclusion(
            {
                "blocks": [2],
                "weights": [0.5],
                "subalgebra_generators": [[[[[1, 0]]]]],
            }
        )


def test_matrix_document_unknown_tolerance():
    with pytest.raises(InputFormatError, match="unknown tolerances"):
        parse_matrix_inclusion(
            {
                "blocks": [1],
                "weights": [1.0],
                "subalgebra_generators": [],
                "tolerances": {"nope": 1.0},
            }
        )


def test_missing_file_gives_format_error(tmp_path):
    with pytest.raises(InputFormatError, match="no such file"):
        load_group_inclusion(str(tmp_path / "absent.json"))


def test_json_error_carries_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    with pytest.raises(InputFormatError, match="line 1"):
        load_group_inclusion(str(bad))
