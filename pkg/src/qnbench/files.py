"""Input documents for the two engines.

Group inclusion documents (JSON, one object per inclusion)::

    {
      "family": "free" | "finite_table" | "fp" | "shift_extension"
                | "direct_product",
      "generators": ["a", "b"],            # free / fp generator names
      "relators": ["r r", "r a r a"],      # fp only
      "rewriting_rules": [["r^-1", "r"]],  # fp only, optional
      "table": [[0, 1], [1, 0]],           # finite_table only
      "element_names": ["e", "s"],         # finite_table, optional
      "generator_window": 1,               # shift_extension only
      "subgroup": "K0",                    # shift_extension tail subgroups
      "subgroup_generators": ["a^2", "b"],  # all other families
      "subgroup_abelian": true,            # optional claim, verified
      "left": {...}, "right": {...}        # direct_product factors
    }

Words are space-separated tokens ``name`` or ``name^k``; shift extensions
use base generator names ``g<i>`` (``g0``, ``g-1``, ...) and the stable
letter ``t``.  Unknown fields are rejected.

Matrix inclusion documents::

    {
      "blocks": [2], "weights": [0.5],
      "subalgebra_generators": [element, ...],
      "intermediate_generators": [element, ...],   # optional
      "witness_pairs": [[element, element], ...],  # optional
      "seed": 42, "tolerances": {"projection": 1e-9}  # optional
    }

An element is a list of blocks, each block an ``n x n`` array of
``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import words as W
from .errors import InputFormatError
from .groups import (
    DirectProductDescriptor,
    FiniteTableGroup,
    FpGroupDescriptor,
    FreeGroupDescriptor,
    GroupDescriptor,
    ShiftExtensionDescriptor,
)
from .subgroups import SubgroupSpec, product_subgroup, shift_tail_subgroup, subgroup
from .tolerances import Tolerances

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_\-]*?)(?:\^(-?\d+))?$")


@dataclass
class GroupInclusionDoc:
    group: GroupDescriptor
    subgroup: SubgroupSpec
    claim_abelian: bool = False


@dataclass
class MatrixInclusionDoc:
    blocks: list
    weights: list
    subalgebra_generators: list
    intermediate_generators: Optional[list] = None
    witness_pairs: list = field(default_factory=list)
    seed: Optional[int] = None
    tolerances: Tolerances = field(default_factory=Tolerances)


def _require_fields(doc: dict, allowed: set, required: set, context: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise InputFormatError(f"{context}: unknown fields {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise InputFormatError(f"{context}: missing fields {sorted(missing)}")


def _parse_word(text: str, name_to_id: dict, context: str) -> W.Word:
    letters: list = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise InputFormatError(f"{context}: bad token {token!r}")
        name, power = match.group(1), int(match.group(2) or 1)
        if name not in name_to_id:
            raise InputFormatError(f"{context}: unknown generator {name!r}")
        letters.extend(W.generator(name_to_id[name], power))
    return W.reduce_word(letters)


def _parse_shift_word(text: str, group: ShiftExtensionDescriptor, context: str):
    element = group.identity()
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise InputFormatError(f"{context}: bad token {token!r}")
        name, power = match.group(1), int(match.group(2) or 1)
        if name == "t":
            step = group.stable_letter(power)
        elif name.startswith("g"):
            try:
                index = int(name[1:])
            except ValueError:
                raise InputFormatError(f"{context}: bad base generator {name!r}") from None
            step = group.base_generator(index, power)
        else:
            raise InputFormatError(f"{context}: unknown generator {name!r}")
        element = group.multiply(element, step)
    return element


def parse_group_inclusion(doc: dict, context: str = "inclusion") -> GroupInclusionDoc:
    if not isinstance(doc, dict):
        raise InputFormatError(f"{context}: expected an object")
    family = doc.get("family")
    if family == "free":
        _require_fields(doc, {"family", "generators", "subgroup_generators", "subgroup_abelian"},
                        {"family", "generators", "subgroup_generators"}, context)
        names = list(doc["generators"])
        group = FreeGroupDescriptor(range(len(names)), dict(enumerate(names)))
        ids = {n: i for i, n in enumerate(names)}
        gens = [group.element(_parse_word(w, ids, context)) for w in doc["subgroup_generators"]]
        spec = subgroup(group, gens)
    elif family == "fp":
        _require_fields(
            doc,
            {"family", "generators", "relators", "rewriting_rules",
             "subgroup_generators", "subgroup_abelian"},
            {"family", "generators", "relators", "subgroup_generators"},
            context,
        )
        names = list(doc["generators"])
        ids = {n: i for i, n in enumerate(names)}
        relators = [_parse_word(w, ids, context) for w in doc["relators"]]
        rules = None
        if "rewriting_rules" in doc:
            rules = [
                (_parse_word(l, ids, context), _parse_word(r, ids, context))
                for l, r in doc["rewriting_rules"]
            ]
        group = FpGroupDescriptor(len(names), relators, names=names, rewriting_rules=rules)
        gens = [group.element(_parse_word(w, ids, context)) for w in doc["subgroup_generators"]]
        spec = subgroup(group, gens)
    elif family == "finite_table":
        _require_fields(
            doc,
            {"family", "table", "element_names", "subgroup_generators", "subgroup_abelian"},
            {"family", "table", "subgroup_generators"},
            context,
        )
        group = FiniteTableGroup(doc["table"], doc.get("element_names"))
        names = {n: i for i, n in enumerate(group.names)}
        gens = []
        for token in doc["subgroup_generators"]:
            if token not in names:
                raise InputFormatError(f"{context}: unknown element {token!r}")
            gens.append(group.element(names[token]))
        spec = subgroup(group, gens)
    elif family == "shift_extension":
        _require_fields(
            doc,
            {"family", "generator_window", "subgroup", "subgroup_generators",
             "subgroup_abelian"},
            {"family", "generator_window"},
            context,
        )
        group = ShiftExtensionDescriptor(window=int(doc["generator_window"]))
        if "subgroup" in doc:
            label = doc["subgroup"]
            if not (isinstance(label, str) and label.startswith("K")):
                raise InputFormatError(f"{context}: subgroup must look like 'K0'")
            try:
                threshold = int(label[1:])
            except ValueError:
                raise InputFormatError(f"{context}: bad tail subgroup {label!r}") from None
            spec = shift_tail_subgroup(group, threshold)
        elif "subgroup_generators" in doc:
            gens = [_parse_shift_word(w, group, context) for w in doc["subgroup_generators"]]
            spec = subgroup(group, gens)
        else:
            raise InputFormatError(f"{context}: need subgroup or subgroup_generators")
    elif family == "direct_product":
        _require_fields(doc, {"family", "left", "right", "subgroup_abelian"},
                        {"family", "left", "right"}, context)
        left = parse_group_inclusion(doc["left"], context + ".left")
        right = parse_group_inclusion(doc["right"], context + ".right")
        group = DirectProductDescriptor(left.group, right.group)
        spec = product_subgroup(group, left.subgroup, right.subgroup)
    else:
        raise InputFormatError(f"{context}: unknown family {family!r}")
    return GroupInclusionDoc(
        group=group, subgroup=spec, claim_abelian=bool(doc.get("subgroup_abelian", False))
    )


def load_group_inclusion(path: str) -> GroupInclusionDoc:
    return parse_group_inclusion(_load_json(path), context=path)


def _parse_matrix_element(raw, blocks, context: str):
    if not isinstance(raw, list) or len(raw) != len(blocks):
        raise InputFormatError(f"{context}: element needs one block per summand")
    out = []
    for n, block in zip(blocks, raw):
        mat = np.zeros((n, n), dtype=complex)
        if len(block) != n:
            raise InputFormatError(f"{context}: block must have {n} rows")
        for i, row in enumerate(block):
            if len(row) != n:
                raise InputFormatError(f"{context}: block must have {n} columns")
            for j, entry in enumerate(row):
                if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                    raise InputFormatError(f"{context}: entries are [re, im] pairs")
                mat[i, j] = complex(entry[0], entry[1])
        out.append(mat)
    return out


def parse_matrix_inclusion(doc: dict, context: str = "inclusion") -> MatrixInclusionDoc:
    if not isinstance(doc, dict):
        raise InputFormatError(f"{context}: expected an object")
    _require_fields(
        doc,
        {"blocks", "weights", "subalgebra_generators", "intermediate_generators",
         "witness_pairs", "seed", "tolerances"},
        {"blocks", "weights", "subalgebra_generators"},
        context,
    )
    blocks = [int(n) for n in doc["blocks"]]
    weights = [float(w) for w in doc["weights"]]
    tolerances = Tolerances()
    if "tolerances" in doc:
        overrides = doc["tolerances"]
        unknown = set(overrides) - set(Tolerances.field_names())
        if unknown:
            raise InputFormatError(f"{context}: unknown tolerances {sorted(unknown)}")
        tolerances = tolerances.override(**{k: float(v) for k, v in overrides.items()})
    gens = [_parse_matrix_element(e, blocks, context) for e in doc["subalgebra_generators"]]
    mids = None
    if "intermediate_generators" in doc:
        mids = [_parse_matrix_element(e, blocks, context) for e in doc["intermediate_generators"]]
    pairs = []
    for pair in doc.get("witness_pairs", []):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputFormatError(f"{context}: witness pairs are two-element lists")
        pairs.append(
            (
                _parse_matrix_element(pair[0], blocks, context),
                _parse_matrix_element(pair[1], blocks, context),
            )
        )
    seed = doc.get("seed")
    return MatrixInclusionDoc(
        blocks=blocks,
        weights=weights,
        subalgebra_generators=gens,
        intermediate_generators=mids,
        witness_pairs=pairs,
        seed=None if seed is None else int(seed),
        tolerances=tolerances,
    )


def load_matrix_inclusion(path: str) -> MatrixInclusionDoc:
    return parse_matrix_inclusion(_load_json(path), context=path)


def encode_matrix_element(x) -> list:
    """Inverse of the element encoding, for report emission."""
    return [
        [[[float(v.real), float(v.imag)] for v in row] for row in block]
        for block in x.blocks
    ]


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise InputFormatError(f"{path}: no such file") from None
    except json.JSONDecodeError as err:
        raise InputFormatError(f"{path}: line {err.lineno}, column {err.colno}: {err.msg}") from None
