import numpy as np

from qnbench.expectations import (
    diagonal_subalgebra,
    full_subalgebra,
    scalar_subalgebra,
    subalgebra_closure,
)
from qnbench.matrixalg import build_algebra
from qnbench.wahp import OptimizerConfig, hermitian_basis, wahp_gap, wahp_witness_search

CFG = OptimizerConfig(seed=42, restarts=6, oracle_points=10000)


def m2():
    return build_algebra([2], [0.5])


def test_hermitian_basis_spans_selfadjoint_part():
    M = m2()
    B = diagonal_subalgebra(M)
    herm = hermitian_basis(M, B)
    assert len(herm) == 2
    for s in herm:
        assert (s - s.adjoint()).norm2() < 1e-12


def closed_form_diag_pair_gap():
    """Hand oracle for B = N = diag in M2 with the off-diagonal unit pair.

    E_B(e12 u e21) = u_22 e11 for diagonal u, and the inner term vanishes,
    so the objective is |u_22|^2 tau(e11) = 1/2 for every diagonal unitary.
    """
    return 0.5


def test_gap_diag_pair_is_half():
    M = m2()
    B = diagonal_subalgebra(M)
    pair = (M.matrix_unit(0, 0, 1), M.matrix_unit(0, 1, 0))
    report = wahp_gap(M, B, B, [pair], CFG)
    assert report.converged
    assert abs(report.objective_value - closed_form_diag_pair_gap()) < 1e-6
    assert abs(report.oracle_value - closed_form_diag_pair_gap()) < 1e-6
    assert report.unitary_defect < 1e-10


def closed_form_scalar_gap(x, y):
    """Hand oracle for B = N = C1 in M2: the only unitaries are phases.

    E_B(x u y) = tau(x u y) 1 = phase * tau(x y) 1 and E_B(x) = tau(x) 1 = 0
    for trace-zero witnesses, so the objective equals |tau(x y)|^2.
    """
    return abs((x @ y).trace()) ** 2


def test_gap_scalar_subalgebra_closed_form():
    M = m2()
    B = scalar_subalgebra(M)
    x = M.element([[[0, 1], [1, 0]]])  # trace zero
    report = wahp_gap(M, B, B, [(x, x)], CFG)
    expected = closed_form_scalar_gap(x, x)
    assert abs(expected - 1.0) < 1e-12  # tau(x^2) = tau(1) = 1
    assert abs(report.objective_value - expected) < 1e-6


def test_gap_scalar_normalized_witness_quarter():
    M = m2()
    B = scalar_subalgebra(M)
    x = M.element([np.array([[0, 1], [1, 0]]) / np.sqrt(2)])
    report = wahp_gap(M, B, B, [(x, x)], CFG)
    expected = closed_form_scalar_gap(x, x)
    assert abs(expected - 0.25) < 1e-12
    assert abs(report.objective_value - expected) < 1e-6


def test_gap_zero_when_mid_is_everything():
    M = m2()
    B = diagonal_subalgebra(M)
    N = full_subalgebra(M)
    rng = np.random.default_rng(0)
    pairs = [(M.random_element(rng), M.random_element(rng)) for _ in range(4)]
    report = wahp_gap(M, B, N, pairs, CFG)
    assert report.exact_zero
    assert report.objective_value == 0.0
    assert report.oracle_value == 0.0


def test_witness_search_zero_for_full_mid():
    M = build_algebra([2, 1], [1 / 3, 1 / 3])
    B = subalgebra_closure(M, [M.matrix_unit(0, 0, 0)])
    N = full_subalgebra(M)
    report = wahp_witness_search(M, B, N, CFG)
    assert report.exact_zero and report.objective_value == 0.0


def test_witness_search_positive_for_proper_mid():
    M = m2()
    B = diagonal_subalgebra(M)
    report = wahp_witness_search(M, B, B, CFG)
    assert not report.exact_zero
    assert report.objective_value > 0.01
    assert report.converged


def test_witness_search_scalar_to_diag_positive():
    M = m2()
    B = scalar_subalgebra(M)
    N = diagonal_subalgebra(M)
    report = wahp_witness_search(M, B, N, CFG)
    assert report.objective_value > 0.01


def test_determinism_same_seed():
    M = m2()
    B = diagonal_subalgebra(M)
    r1 = wahp_witness_search(M, B, B, OptimizerConfig(seed=7, restarts=4))
    r2 = wahp_witness_search(M, B, B, OptimizerConfig(seed=7, restarts=4))
    assert r1.objective_value == r2.objective_value
    assert r1.oracle_value == r2.oracle_value
    assert (r1.minimizer - r2.minimizer).norm2() == 0.0


def test_optimizer_beats_oracle():
    M = build_algebra([3], [1 / 3])
    B = diagonal_subalgebra(M)
    rng = np.random.default_rng(3)
    pairs = [(M.random_element(rng), M.random_element(rng)) for _ in range(3)]
    report = wahp_gap(M, B, B, pairs, OptimizerConfig(seed=1, restarts=8, oracle_points=4000))
    assert report.objective_value <= report.oracle_value + 1e-8
    assert report.unitary_defect < 1e-10
