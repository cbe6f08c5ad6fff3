import numpy as np
import pytest

from qnbench.expectations import (
    conditional_expectation,
    diagonal_subalgebra,
    full_subalgebra,
    scalar_subalgebra,
    subalgebra_closure,
)
from qnbench.matrixalg import build_algebra


def m2():
    return build_algebra([2], [0.5])


def test_closure_of_diagonal_unit_has_dim_two():
    M = m2()
    handle = subalgebra_closure(M, [M.matrix_unit(0, 0, 0)])
    assert handle.dim == 2
    assert handle.contains(M.matrix_unit(0, 1, 1))
    assert not handle.contains(M.matrix_unit(0, 0, 1))


def test_closure_of_nothing_is_scalars():
    M = m2()
    handle = subalgebra_closure(M, [])
    assert handle.dim == 1


def test_closure_of_off_diagonal_unit_is_everything():
    M = m2()
    handle = subalgebra_closure(M, [M.matrix_unit(0, 0, 1)])
    assert handle.dim == 4


def test_basis_starts_at_identity_and_is_orthonormal():
    M = build_algebra([2, 1], [1 / 3, 1 / 3])
    handle = subalgebra_closure(M, [M.matrix_unit(0, 0, 0)])
    assert (handle.basis[0] - M.one()).norm2() < 1e-12
    gram = handle.coordinates.conj().T @ handle.coordinates
    np.testing.assert_allclose(gram, np.eye(handle.dim), atol=1e-12)


def test_closure_defect_small():
    M = build_algebra([2, 2], [1 / 8, 3 / 8])
    rng = np.random.default_rng(5)
    p = M.random_selfadjoint(rng)
    handle = subalgebra_closure(M, [p])
    assert handle.closure_defect() < 1e-9


def test_expectation_on_diagonal_subalgebra():
    M = m2()
    B = diagonal_subalgebra(M)
    E = conditional_expectation(M, B)
    x = M.element([[[1.0, 2.0], [3.0, 4.0]]])
    np.testing.assert_allclose(E(x).blocks[0], [[1.0, 0], [0, 4.0]], atol=1e-12)


def test_expectation_fixes_identity():
    M = m2()
    B = diagonal_subalgebra(M)
    E = conditional_expectation(M, B)
    assert (E(M.one()) - M.one()).norm2() < 1e-13


def test_expectation_onto_scalars_is_trace():
    M = m2()
    B = scalar_subalgebra(M)
    E = conditional_expectation(M, B)
    rng = np.random.default_rng(7)
    x = M.random_element(rng)
    assert (E(x) - x.trace() * M.one()).norm2() < 1e-12


def test_expectation_onto_everything_is_identity_function():
    M = m2()
    B = full_subalgebra(M)
    E = conditional_expectation(M, B)
    rng = np.random.default_rng(8)
    x = M.random_element(rng)
    assert E(x) is x  # bitwise identical, not merely close


@pytest.mark.parametrize("seed", range(4))
def test_expectation_properties(seed):
    rng = np.random.default_rng(seed)
    M = build_algebra([2, 2], [1 / 8, 3 / 8])
    B = subalgebra_closure(M, [M.random_selfadjoint(rng)])
    E = conditional_expectation(M, B)
    x, y = M.random_element(rng), M.random_element(rng)
    b1, b2 = B.basis[1 % B.dim], B.basis[min(2, B.dim - 1)]
    # idempotent
    assert (E(E(x)) - E(x)).norm2() < 1e-10
    # trace preserving
    assert abs(E(x).trace() - x.trace()) < 1e-10
    # bimodular over the subalgebra
    assert (E(b1 @ x @ b2) - b1 @ E(x) @ b2).norm2() < 1e-10
    # adjoint preserving
    assert (E(x.adjoint()) - E(x).adjoint()).norm2() < 1e-10
    # positive on squares
    vals = np.concatenate([np.linalg.eigvalsh(b) for b in E(x.adjoint() @ x).blocks])
    assert vals.min() > -1e-10
    # trace-norm contractive
    assert E(x).norm2() <= x.norm2() + 1e-12
    # composed with a larger algebra's expectation
    N = subalgebra_closure(M, B.basis + [M.random_selfadjoint(rng)])
    EN = conditional_expectation(M, N)
    assert (E(EN(x)) - E(x)).norm2() < 1e-10
