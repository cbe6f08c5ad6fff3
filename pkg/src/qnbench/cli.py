"""Command-line interface: group analyses, matrix analyses, acceptance runs.

Exit codes: 0 success, 1 acceptance-criterion failure, 2 input or validation
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from .acceptance import AcceptanceConfig, verify_paper
from .basic import basic_construction, left_operator
from .conditions import DiagnosisConfig, diagnose_inclusion
from .errors import (
    ConstructionError,
    GroupValidationError,
    InputFormatError,
    QnbenchError,
    ResourceLimitError,
)
from .expectations import conditional_expectation, subalgebra_closure
from .files import encode_matrix_element, load_group_inclusion, load_matrix_inclusion
from .matrixalg import build_algebra
from .tolerances import Tolerances
from .wahp import OptimizerConfig, wahp_gap


def _parse_tolerances(pairs) -> Tolerances:
    overrides = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InputFormatError(f"--tolerance expects KEY=VALUE, got {pair!r}")
        key, _, value = pair.partition("=")
        if key not in Tolerances.field_names():
            raise InputFormatError(f"unknown tolerance {key!r}")
        overrides[key] = float(value)
    return Tolerances().override(**overrides)


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=None, separators=(",", ":")) + "\n")
    else:
        _render_text(doc, indent=0)


def _render_text(value, indent: int, label: Optional[str] = None) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if label is not None:
            sys.stdout.write(f"{pad}{label}:\n")
        for key, item in value.items():
            _render_text(item, indent + (label is not None), str(key))
    elif isinstance(value, list):
        if label is not None:
            sys.stdout.write(f"{pad}{label}:\n")
        for i, item in enumerate(value):
            _render_text(item, indent + (label is not None), f"[{i}]")
    else:
        sys.stdout.write(f"{pad}{label}: {value}\n")


def run_group_analysis(args) -> int:
    doc = load_group_inclusion(args.file)
    config = DiagnosisConfig(
        radius=args.radius,
        budget=args.budget,
        threshold=args.threshold,
        claim_abelian=doc.claim_abelian,
    )
    report = diagnose_inclusion(doc.group, doc.subgroup, config)
    _emit(report.to_dict(), args.format)
    return 0


def run_vn_analysis(args) -> int:
    doc = load_matrix_inclusion(args.file)
    tolerances = doc.tolerances if args.tolerance is None else _parse_tolerances(args.tolerance)
    seed = args.seed if args.seed is not None else (doc.seed if doc.seed is not None else 42)
    algebra = build_algebra(doc.blocks, doc.weights, tolerances)
    sub = subalgebra_closure(algebra, [algebra.element(g) for g in doc.subalgebra_generators],
                             tolerances)
    mid = None
    if doc.intermediate_generators is not None:
        mid = subalgebra_closure(
            algebra,
            sub.basis + [algebra.element(g) for g in doc.intermediate_generators],
            tolerances,
        )
    construction = basic_construction(algebra, sub, mid, tolerances)
    rng = np.random.default_rng(seed)
    expect = conditional_expectation(algebra, sub)
    identity_summary = _identity_summary(construction, expect, rng, tolerances)
    output = {
        "algebra": {
            "blocks": list(algebra.block_dims),
            "weights": list(algebra.block_weights),
            "rescaled": algebra.rescaled,
            "subalgebra_dim": sub.dim,
            "intermediate_dim": mid.dim if mid else None,
        },
        "identities": identity_summary,
        "gap": None,
        "seed": seed,
    }
    if doc.witness_pairs:
        pairs = [
            (algebra.element(x), algebra.element(y)) for x, y in doc.witness_pairs
        ]
        mid_handle = mid if mid is not None else sub
        report = wahp_gap(algebra, sub, mid_handle, pairs,
                          OptimizerConfig(seed=seed), tolerances)
        gap_doc = report.to_dict()
        gap_doc["minimizer"] = encode_matrix_element(report.minimizer)
        gap_doc["tier"] = "numerical"
        output["gap"] = gap_doc
    _emit(output, args.format)
    return 0


def _identity_summary(construction, expect, rng, tolerances: Tolerances) -> dict:
    algebra = construction.algebra
    dim = algebra.dim
    worst_trace = 0.0
    for column, product in zip(construction._span_ops.T, construction._span_products):
        value = construction.extension_trace(column.reshape(dim, dim))
        worst_trace = max(worst_trace, abs(value - product.trace()))
    worst_compression = 0.0
    worst_norm = 0.0
    for _ in range(5):
        x = algebra.random_element(rng)
        lhs = construction.e_sub @ left_operator(x) @ construction.e_sub
        rhs = left_operator(expect(x)) @ construction.e_sub
        worst_compression = max(worst_compression, float(np.linalg.norm(lhs - rhs, 2)))
        w = construction.basic_operator(x, algebra.random_element(rng))
        eta = algebra.from_vector(w @ algebra.to_vector(algebra.one()))
        worst_norm = max(worst_norm,
                         abs(construction.extension_norm(w @ construction.e_sub) - eta.norm2()))
    recon = construction.trace_vectors
    worst_recon = max(
        recon.reconstruction_residual(algebra.random_element(rng)) for _ in range(5)
    )
    summary = {
        "trace_identity": {"residual": worst_trace,
                           "tolerance": tolerances.trace_identity,
                           "ok": worst_trace <= tolerances.trace_identity},
        "compression_identity": {"residual": worst_compression,
                                 "tolerance": tolerances.compression_identity,
                                 "ok": worst_compression <= tolerances.compression_identity},
        "vector_norm_match": {"residual": worst_norm,
                              "tolerance": tolerances.vector_norm_match,
                              "ok": worst_norm <= tolerances.vector_norm_match},
        "module_reconstruction": {"residual": worst_recon,
                                  "tolerance": tolerances.reconstruction,
                                  "ok": worst_recon <= tolerances.reconstruction},
    }
    for entry in summary.values():
        entry["tier"] = "numerical"
    return summary


def run_verify_paper(args) -> int:
    numbers = None
    if args.criteria:
        numbers = sorted({int(part) for part in args.criteria.split(",")})
    config = AcceptanceConfig(
        seed=args.seed if args.seed is not None else 42,
        budget=args.budget,
        radius=args.radius,
        threshold=args.threshold,
    )
    results = verify_paper(config, numbers)
    if args.format == "json":
        payload = {
            "criteria": [r.canonical() for r in results],
            "all_passed": all(r.passed for r in results),
        }
        sys.stdout.write(json.dumps(payload, indent=None, separators=(",", ":")) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{status} criterion {r.number}: {r.name} ({r.elapsed:.2f}s)\n")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnbench",
        description="Coset-cover certificates for group inclusions and "
        "finite-dimensional expectation identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget", type=int, default=1000)
        p.add_argument("--radius", type=int, default=3)
        p.add_argument("--threshold", type=int, default=100)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=["text", "json"], default="json")
        p.add_argument("--tolerance", action="append", default=None, metavar="KEY=VAL")

    group_cmd = sub.add_parser("group", help="analyze a group inclusion document")
    group_cmd.add_argument("file")
    common(group_cmd)

    vn_cmd = sub.add_parser("vn", help="analyze a matrix inclusion document")
    vn_cmd.add_argument("file")
    common(vn_cmd)

    verify_cmd = sub.add_parser("verify-paper", help="run the acceptance suite")
    verify_cmd.add_argument("--criteria", default=None,
                            help="comma-separated criterion numbers (default: all)")
    common(verify_cmd)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "group":
            return run_group_analysis(args)
        if args.command == "vn":
            return run_vn_analysis(args)
        return run_verify_paper(args)
    except (InputFormatError, GroupValidationError, ConstructionError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except ResourceLimitError as err:
        sys.stderr.write(f"resource limit: {err}\n")
        return 3
    except QnbenchError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
