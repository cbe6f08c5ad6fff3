"""The acceptance suite: ten checks combining both engines.

Each criterion builds its own inputs, runs the relevant operations at their
stated tolerances, and returns a result record whose canonical form (number,
name, pass flag, detail values) is deterministic for a fixed seed; wall
times are tracked separately so that two runs serialize identically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .basic import basic_construction, left_operator
from .bimodule import orthonormal_basis
from .certificates import compose_certificates, product_compose
from .conditions import DiagnosisConfig, check_c1, diagnose_inclusion, normality_test
from .corners import central_projections, cutdown_comparison, tensor_module_check
from .expectations import (
    conditional_expectation,
    diagonal_subalgebra,
    full_subalgebra,
    scalar_subalgebra,
    subalgebra_closure,
)
from .groups import (
    FreeGroupDescriptor,
    ShiftExtensionDescriptor,
    Trit,
    enumerate_ball,
    infinite_dihedral,
)
from .matrixalg import build_algebra
from .orbits import orbit_bfs, qn1_membership
from .stallings import free_qn1_decide
from .subgroups import shift_tail_subgroup, subgroup
from .tolerances import Tolerances
from .wahp import OptimizerConfig, wahp_gap, wahp_witness_search
from .words import Word, concat, generator, invert_word, reduce_word


@dataclass
class AcceptanceConfig:
    seed: int = 42
    budget: int = 1000
    radius: int = 3
    threshold: int = 100


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict
    elapsed: float = 0.0

    def canonical(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        }


def _f2():
    return FreeGroupDescriptor.of_rank(2)


def _shift(window=1):
    group = ShiftExtensionDescriptor(window=window)
    return group, shift_tail_subgroup(group, 0)


# -- criterion 1: shift-extension reproduction ---------------------------------------


def criterion_1(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    group, tail = _shift(window=1)
    t_inv = group.stable_letter(-1)

    cert_start = time.perf_counter()
    verdict = qn1_membership(tail, t_inv, config.budget)
    cert_seconds = time.perf_counter() - cert_start
    cover_ok = verdict.certified_in and verdict.certificate.cover_size == 1

    sweep = []
    t = group.stable_letter()
    for budget in (10, 100, 1000, 10000):
        orbit = orbit_bfs(tail, t, budget)
        sweep.append(
            {"budget": budget, "closed": orbit.closed, "explored": orbit.explored,
             "ok": (not orbit.closed) and orbit.explored >= budget}
        )
    elapsed = time.perf_counter() - start
    passed = cover_ok and cert_seconds < 1.0 and all(s["ok"] for s in sweep) and elapsed < 30.0
    return CriterionResult(
        number=1,
        name="shift extension: certified stable-letter cover and budget-honest orbit growth",
        passed=passed,
        details={
            "stable_letter_inverse_certified": verdict.certified_in,
            "cover_size": verdict.certificate.cover_size if verdict.certificate else None,
            "budget_sweep": sweep,
        },
        elapsed=elapsed,
    )


# -- criterion 2: free-group exactness -------------------------------------------------


def _all_letter_words(radius: int) -> list:
    """Every generator word of bounded length, reducible ones included."""
    letters = [(0, 1), (0, -1), (1, 1), (1, -1)]
    words: list[tuple] = [()]
    frontier: list[tuple] = [()]
    for _ in range(radius):
        frontier = [w + (l,) for w in frontier for l in letters]
        words.extend(frontier)
    return words


def criterion_2(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    group = _f2()
    spec = subgroup(group, [group.element(generator(0))], label="<a>")
    graph = spec.accelerator[1]

    words = _all_letter_words(4)
    agreement_failures = 0
    for raw in words:
        word = reduce_word(raw)
        kind, index = free_qn1_decide(graph, word)
        orbit = orbit_bfs(spec, group.element(word), budget=24)
        if kind == "in":
            if not (orbit.closed and orbit.size == index) and index <= 24:
                agreement_failures += 1
        else:
            if orbit.closed:
                agreement_failures += 1

    ball = enumerate_ball(group, 4)
    gamma_mismatch = 0
    for g in ball:
        verdict = qn1_membership(spec, g, config.budget)
        expected_in = all(gen == 0 for gen, _ in g.payload)
        if verdict.certified_in != expected_in or verdict.unknown:
            gamma_mismatch += 1

    report = diagnose_inclusion(group, spec, DiagnosisConfig(
        radius=config.radius, budget=config.budget, threshold=config.threshold))
    elapsed = time.perf_counter() - start
    passed = (
        agreement_failures == 0
        and len(words) == 341
        and gamma_mismatch == 0
        and len(ball) == 161
        and report.singular_evidence
        and report.tier == "exact"
        and elapsed < 10.0
    )
    return CriterionResult(
        number=2,
        name="free group: exact backend agreement and singular position evidence",
        passed=passed,
        details={
            "words_checked": len(words),
            "distinct_elements": len(ball),
            "agreement_failures": agreement_failures,
            "gamma_mismatches": gamma_mismatch,
            "singular_evidence": report.singular_evidence,
            "tier": report.tier,
        },
        elapsed=elapsed,
    )


# -- criterion 3: finite-index commensuration ---------------------------------------------


def _even_a_exponent(word: Word) -> bool:
    """Independent membership oracle for the index-two subgroup: the kernel
    of the mod-two exponent count of the first generator."""
    return sum(exp for gen, exp in word if gen == 0) % 2 == 0


def _oracle_orbit_size(word: Word, cap: int = 8) -> tuple:
    gens = [concat(generator(0), generator(0)), generator(1),
            concat(generator(0), generator(1), generator(0, -1))]
    letters = [w for g in gens for w in (g, invert_word(g))]
    reps = [reduce_word(word)]
    frontier = [reduce_word(word)]
    while frontier and len(reps) <= cap:
        rep = frontier.pop(0)
        for letter in letters:
            cand = concat(letter, rep)
            if not any(_even_a_exponent(concat(invert_word(r), cand)) for r in reps):
                reps.append(cand)
                frontier.append(cand)
    return len(reps), not frontier


def criterion_3(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    group = _f2()
    gens = [
        group.element(concat(generator(0), generator(0))),
        group.element(generator(1)),
        group.element(concat(generator(0), generator(1), generator(0, -1))),
    ]
    spec = subgroup(group, gens, label="index-two")
    ball = enumerate_ball(group, config.radius)
    failures = 0
    max_cover = 0
    for g in ball:
        verdict = qn1_membership(spec, g, budget=10)
        size, closed = _oracle_orbit_size(g.payload)
        ok = (
            verdict.certified_in
            and verdict.certificate.cover_size <= 2
            and closed
            and size == verdict.certificate.cover_size
        )
        max_cover = max(max_cover, verdict.certificate.cover_size if verdict.certificate else 99)
        if not ok:
            failures += 1
    elapsed = time.perf_counter() - start
    passed = failures == 0 and max_cover <= 2 and elapsed < 10.0
    return CriterionResult(
        number=3,
        name="finite index: every ball element certified with oracle-matched covers",
        passed=passed,
        details={"ball_size": len(ball), "failures": failures, "max_cover": max_cover},
        elapsed=elapsed,
    )


# -- criterion 4: certificate algebra ---------------------------------------------------------


def criterion_4(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    group = _f2()
    gens = [
        group.element(concat(generator(0), generator(0))),
        group.element(generator(1)),
        group.element(concat(generator(0), generator(1), generator(0, -1))),
    ]
    free_spec = subgroup(group, gens)
    free_ball = enumerate_ball(group, 3)
    free_certs = [qn1_membership(free_spec, g, 10).certificate for g in free_ball]

    shift_group, tail = _shift(window=1)
    shift_elements = [
        shift_group.stable_letter(-1),
        shift_group.multiply(shift_group.base_generator(0), shift_group.stable_letter(-1)),
        shift_group.base_generator(0),
        shift_group.base_generator(1),
        shift_group.identity(),
    ]
    shift_certs = [qn1_membership(tail, g, 64).certificate for g in shift_elements]

    compose_failures = 0
    product_failures = 0
    composed = 0
    producted = 0
    for _ in range(600):
        c1 = free_certs[rng.integers(0, len(free_certs))]
        c2 = free_certs[rng.integers(0, len(free_certs))]
        try:
            cert = compose_certificates(c1, c2)
            composed += 1
            if cert.cover_size > c1.cover_size * c2.cover_size:
                compose_failures += 1
        except Exception:
            compose_failures += 1
    for _ in range(200):
        c1 = shift_certs[rng.integers(0, len(shift_certs))]
        c2 = shift_certs[rng.integers(0, len(shift_certs))]
        try:
            cert = compose_certificates(c1, c2)
            composed += 1
            if cert.cover_size > c1.cover_size * c2.cover_size:
                compose_failures += 1
        except Exception:
            compose_failures += 1
    for _ in range(200):
        c1 = free_certs[rng.integers(0, len(free_certs))]
        c2 = shift_certs[rng.integers(0, len(shift_certs))]
        try:
            cert = product_compose(c1, c2)
            producted += 1
            if cert.cover_size > c1.cover_size * c2.cover_size:
                product_failures += 1
        except Exception:
            product_failures += 1
    elapsed = time.perf_counter() - start
    passed = (
        compose_failures == 0
        and product_failures == 0
        and composed + producted == 1000
        and elapsed < 60.0
    )
    return CriterionResult(
        number=4,
        name="certificate algebra: one thousand replayed compositions",
        passed=passed,
        details={
            "compositions": composed,
            "product_compositions": producted,
            "compose_failures": compose_failures,
            "product_failures": product_failures,
        },
        elapsed=elapsed,
    )


# -- criterion 5: normal case ------------------------------------------------------------------


def criterion_5(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    group = infinite_dihedral()
    a, r = group.generators()
    spec = subgroup(group, [a], label="<a>")
    normal = normality_test(group, spec)
    c1 = check_c1(spec, r, threshold=config.threshold)
    report = diagnose_inclusion(group, spec, DiagnosisConfig(
        radius=2, budget=config.budget, threshold=config.threshold, claim_abelian=True))
    elapsed = time.perf_counter() - start
    passed = (
        normal is Trit.YES
        and c1.kind == "at_least"
        and c1.count >= config.threshold
        and report.cartan_evidence
        and not report.singular_evidence
        and report.tier == "exact"
        and elapsed < 5.0
    )
    return CriterionResult(
        number=5,
        name="infinite dihedral: exact normality, conjugate growth, Cartan evidence",
        passed=passed,
        details={
            "normality": normal.value,
            "c1_kind": c1.kind,
            "c1_count": c1.count,
            "cartan_evidence": report.cartan_evidence,
            "tier": report.tier,
        },
        elapsed=elapsed,
    )


# -- criterion 6: identity suite -----------------------------------------------------------------


_DIM_POOL = [
    [2], [1, 1], [2, 1], [1, 1, 1], [2, 2], [3], [2, 1, 1], [3, 1], [2, 2, 1], [3, 2],
    [4], [3, 3], [4, 2], [3, 2, 2],
]


def _random_inclusion(rng: np.random.Generator, with_mid: bool, pool=None):
    pool = pool if pool is not None else _DIM_POOL
    dims = pool[rng.integers(0, len(pool))]
    raw = rng.random(len(dims)) + 0.2
    weights = raw / np.dot(raw, dims)
    algebra = build_algebra(dims, list(weights))
    sub = subalgebra_closure(algebra, [algebra.random_selfadjoint(rng)])
    mid = None
    if with_mid:
        mid = subalgebra_closure(algebra, sub.basis + [algebra.random_selfadjoint(rng)])
    return algebra, sub, mid


def criterion_6(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    tol = Tolerances()
    worst = {
        "trace_identity": 0.0,
        "compression": 0.0,
        "pull_down_welldefined": 0.0,
        "vector_norm": 0.0,
        "pull_down_factorization": 0.0,
        "reconstruction": 0.0,
        "gram_identity": 0.0,
        "projection": 0.0,
        "commutation": 0.0,
    }
    for _ in range(20):
        algebra, sub, _ = _random_inclusion(rng, with_mid=False)
        c = basic_construction(algebra, sub, tolerances=tol)
        expect = conditional_expectation(algebra, sub)
        basis = algebra.basis()
        for column, product in zip(c._span_ops.T, c._span_products):
            lhs = c.extension_trace(column.reshape(algebra.dim, algebra.dim))
            worst["trace_identity"] = max(worst["trace_identity"], abs(lhs - product.trace()))
        for _ in range(5):
            x = algebra.random_element(rng)
            lhs = c.e_sub @ left_operator(x) @ c.e_sub
            rhs = left_operator(expect(x)) @ c.e_sub
            worst["compression"] = max(worst["compression"], float(np.linalg.norm(lhs - rhs, 2)))
        _, svals, vh = np.linalg.svd(c._span_ops, full_matrices=False)
        null = vh.conj().T[:, svals <= tol.subalgebra_closure * max(1.0, float(svals[0]))]
        if null.size:
            prod_matrix = np.stack([algebra.to_vector(p) for p in c._span_products], axis=1)
            worst["pull_down_welldefined"] = max(
                worst["pull_down_welldefined"], float(np.linalg.norm(prod_matrix @ null, 2)))
        for _ in range(5):
            w = c.basic_operator(algebra.random_element(rng), algebra.random_element(rng)) \
                + left_operator(algebra.random_element(rng))
            eta = algebra.from_vector(w @ algebra.to_vector(algebra.one()))
            worst["vector_norm"] = max(
                worst["vector_norm"], abs(c.extension_norm(w @ c.e_sub) - eta.norm2()))
        for _ in range(3):
            w = c.basic_operator(algebra.random_element(rng), algebra.random_element(rng))
            eta = algebra.from_vector(w @ algebra.to_vector(algebra.one()))
            pulled = c.pull_down(w @ c.e_sub @ w.conj().T)
            worst["pull_down_factorization"] = max(
                worst["pull_down_factorization"], (pulled - eta @ eta.adjoint()).norm2())
        module = orthonormal_basis(sub, expect, [algebra.one()] + basis, tol)
        for _ in range(5):
            v = algebra.random_element(rng)
            worst["reconstruction"] = max(
                worst["reconstruction"], module.reconstruction_residual(v))
        worst["gram_identity"] = max(worst["gram_identity"], module.gram_defect())
        x = algebra.random_element(rng)
        from .basic import module_projection, right_operator

        two_sided = orthonormal_basis(
            sub, expect, [b1 @ x @ b2 for b1 in sub.basis for b2 in sub.basis], tol)
        p = module_projection(c, two_sided)
        worst["projection"] = max(
            worst["projection"],
            float(np.linalg.norm(p @ p - p, 2)),
            float(np.linalg.norm(p - p.conj().T, 2)),
        )
        for b in sub.basis:
            worst["commutation"] = max(
                worst["commutation"],
                float(np.linalg.norm(p @ right_operator(b) - right_operator(b) @ p, 2)),
                float(np.linalg.norm(p @ left_operator(b) - left_operator(b) @ p, 2)),
            )
    elapsed = time.perf_counter() - start
    bounds = {
        "trace_identity": 1e-10,
        "compression": 1e-12,
        "pull_down_welldefined": 1e-10,
        "vector_norm": 1e-9,
        "pull_down_factorization": 1e-9,
        "reconstruction": 1e-9,
        "gram_identity": 1e-9,
        "projection": 1e-9,
        "commutation": 1e-10,
    }
    checks = {k: worst[k] <= bounds[k] for k in bounds}
    passed = all(checks.values()) and elapsed < 60.0
    return CriterionResult(
        number=6,
        name="identity suite: expectation and extension identities on random inclusions",
        passed=passed,
        details={k: {"worst": worst[k], "bound": bounds[k], "ok": checks[k]} for k in bounds},
        elapsed=elapsed,
    )


# -- criterion 7: quantitative gaps --------------------------------------------------------------


def criterion_7(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    m2 = build_algebra([2], [0.5])
    diag = diagonal_subalgebra(m2)
    pair = (m2.matrix_unit(0, 0, 1), m2.matrix_unit(0, 1, 0))
    opt = OptimizerConfig(seed=config.seed, restarts=8, oracle_points=10000)
    report_diag = wahp_gap(m2, diag, diag, [pair], opt)

    scalars = scalar_subalgebra(m2)
    x = m2.element([np.array([[0.0, 1.0], [1.0, 0.0]]) / np.sqrt(2.0)])
    closed_form = abs((x @ x).trace()) ** 2  # hand oracle: |tau(x y)|^2
    report_scalar = wahp_gap(m2, scalars, scalars, [(x, x)], opt)
    elapsed = time.perf_counter() - start
    passed = (
        abs(report_diag.objective_value - 0.5) < 1e-6
        and abs(report_diag.oracle_value - 0.5) < 1e-6
        and abs(closed_form - 0.25) < 1e-12
        and abs(report_scalar.objective_value - closed_form) < 1e-6
        and abs(report_scalar.oracle_value - closed_form) < 1e-6
        and elapsed < 30.0
    )
    return CriterionResult(
        number=7,
        name="gap values: half for the off-diagonal pair, quarter for the scalar witness",
        passed=passed,
        details={
            "diagonal_pair": {"optimizer": report_diag.objective_value,
                              "oracle": report_diag.oracle_value, "expected": 0.5},
            "scalar_pair": {"optimizer": report_scalar.objective_value,
                            "oracle": report_scalar.oracle_value, "expected": closed_form},
        },
        elapsed=elapsed,
    )


# -- criterion 8: gap dichotomy --------------------------------------------------------------------


def _dichotomy_inclusions():
    """(name, algebra, sub, mid) with mid None meaning the full algebra."""
    out = []

    def add(name, dims, weights, sub_of, mid_of=None):
        algebra = build_algebra(dims, weights)
        sub = sub_of(algebra)
        mid = mid_of(algebra) if mid_of else None
        out.append((name, algebra, sub, mid))

    # mid = full algebra: the gap must vanish exactly
    add("m2/diag/full", [2], [0.5], diagonal_subalgebra)
    add("m2/scalars/full", [2], [0.5], scalar_subalgebra)
    add("c2/scalars/full", [1, 1], [0.5, 0.5], scalar_subalgebra)
    add("m3/diag/full", [3], [1 / 3], diagonal_subalgebra)
    add("m2+c/diag/full", [2, 1], [1 / 3, 1 / 3], diagonal_subalgebra)
    add("m2+c/scalars/full", [2, 1], [1 / 3, 1 / 3], scalar_subalgebra)
    add("m2/full/full", [2], [0.5], full_subalgebra)
    add("m3/scalars/full", [3], [1 / 3], scalar_subalgebra)
    add("m2+m2/diag/full", [2, 2], [1 / 8, 3 / 8], diagonal_subalgebra)
    add("c3/scalars/full", [1, 1, 1], [0.25, 0.25, 0.5], scalar_subalgebra)

    # proper mid: the witness search must find a positive gap
    add("m2/diag/diag", [2], [0.5], diagonal_subalgebra, diagonal_subalgebra)
    add("m2/scalars/scalars", [2], [0.5], scalar_subalgebra, scalar_subalgebra)
    add("m2/scalars/diag", [2], [0.5], scalar_subalgebra, diagonal_subalgebra)
    add("m3/diag/diag", [3], [1 / 3], diagonal_subalgebra, diagonal_subalgebra)
    add("m3/scalars/scalars", [3], [1 / 3], scalar_subalgebra, scalar_subalgebra)
    add("m2+c/diag/diag", [2, 1], [1 / 3, 1 / 3], diagonal_subalgebra, diagonal_subalgebra)
    add("c2/scalars/scalars", [1, 1], [0.5, 0.5], scalar_subalgebra, scalar_subalgebra)
    add("m2+m2/diag/diag", [2, 2], [1 / 8, 3 / 8], diagonal_subalgebra, diagonal_subalgebra)
    add("m2+c/scalars/diag", [2, 1], [1 / 3, 1 / 3], scalar_subalgebra, diagonal_subalgebra)
    add("m2/diag/m2+scalars", [2, 2], [1 / 8, 3 / 8], scalar_subalgebra, diagonal_subalgebra)
    return out


def criterion_8(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    opt = OptimizerConfig(seed=config.seed, restarts=10, oracle_points=3000)
    rows = []
    for name, algebra, sub, mid in _dichotomy_inclusions():
        mid_handle = mid if mid is not None else full_subalgebra(algebra)
        report = wahp_witness_search(algebra, sub, mid_handle, opt)
        expects_zero = mid is None
        if expects_zero:
            ok = report.exact_zero and report.objective_value == 0.0
        else:
            ok = report.objective_value > 0.01 and report.converged
        rows.append({"inclusion": name, "gap": report.objective_value,
                     "expects_zero": expects_zero, "ok": ok})
    elapsed = time.perf_counter() - start
    passed = all(r["ok"] for r in rows) and elapsed < 300.0
    return CriterionResult(
        number=8,
        name="gap dichotomy: exact zero at the top, positive below",
        passed=passed,
        details={"inclusions": rows},
        elapsed=elapsed,
    )


# -- criterion 9: tensor and corner shadows ----------------------------------------------------------


def criterion_9(config: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    tol = Tolerances()

    tensor_failures = 0
    small_pool = _DIM_POOL[:10]  # keep the tensor-product dimension moderate
    for _ in range(50):
        a1, s1, _ = _random_inclusion(rng, with_mid=False, pool=small_pool)
        a2, s2, _ = _random_inclusion(rng, with_mid=False, pool=small_pool)
        c1 = basic_construction(a1, s1, tolerances=tol)
        c2 = basic_construction(a2, s2, tolerances=tol)
        check = tensor_module_check(c1, a1.random_element(rng), c2, a2.random_element(rng), tol)
        if not check.multiplicative:
            tensor_failures += 1

    worst_cut = 0.0
    cut_count = 0
    while cut_count < 20:
        algebra, sub, _ = _random_inclusion(rng, with_mid=False)
        pieces = central_projections(algebra, sub)
        if len(pieces) < 2:
            continue
        keep = rng.integers(1, len(pieces))
        e = pieces[0]
        for p in pieces[1:keep]:
            e = e + p
        construction = basic_construction(algebra, sub, tolerances=tol)
        report = cutdown_comparison(construction, e,
                                    [algebra.random_element(rng) for _ in range(2)], tol)
        worst_cut = max(worst_cut, report.worst_residual)
        cut_count += 1
    elapsed = time.perf_counter() - start
    passed = tensor_failures == 0 and worst_cut < 1e-9 and elapsed < 60.0
    return CriterionResult(
        number=9,
        name="tensor and corner shadows: multiplicative dimensions, corner span match",
        passed=passed,
        details={
            "tensor_pairs": 50,
            "tensor_failures": tensor_failures,
            "cutdown_pairs": cut_count,
            "worst_cutdown_residual": worst_cut,
        },
        elapsed=elapsed,
    )


# -- suite ---------------------------------------------------------------------------------------------


CRITERIA: dict[int, Callable[[AcceptanceConfig], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_criteria(config: AcceptanceConfig, numbers=None) -> list:
    numbers = sorted(numbers) if numbers else sorted(CRITERIA)
    return [CRITERIA[n](config) for n in numbers]


def canonical_bytes(results: list) -> bytes:
    return json.dumps([r.canonical() for r in results], indent=None,
                      separators=(",", ":")).encode()


def criterion_10(config: AcceptanceConfig, first_pass: Optional[list] = None) -> tuple:
    """Determinism: rerunning the whole suite reproduces identical bytes."""
    start = time.perf_counter()
    first = first_pass if first_pass is not None else run_criteria(config)
    second = run_criteria(config)
    b1, b2 = canonical_bytes(first), canonical_bytes(second)
    elapsed = time.perf_counter() - start
    result = CriterionResult(
        number=10,
        name="determinism: repeated runs serialize byte-identically",
        passed=b1 == b2,
        details={"bytes": len(b1), "identical": b1 == b2},
        elapsed=elapsed,
    )
    return result, first


def verify_paper(config: Optional[AcceptanceConfig] = None, numbers=None) -> list:
    """Run the acceptance criteria; criterion 10 reruns criteria one to nine."""
    config = config or AcceptanceConfig()
    wanted = sorted(numbers) if numbers else list(range(1, 11))
    others = [n for n in wanted if n != 10]
    results = run_criteria(config, others) if others else []
    if 10 in wanted:
        first_full = results if others == list(range(1, 10)) else run_criteria(config)
        ten, _ = criterion_10(config, first_pass=first_full)
        results = results + [ten]
    return results
