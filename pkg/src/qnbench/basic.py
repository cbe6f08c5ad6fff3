"""The basic construction of an inclusion at finite dimension.

Everything lives on the GNS space of the ambient trace: elements become
coordinate vectors, left and right multiplications become square matrices
(blockwise Kronecker products; the orthonormal scaling cancels), and the
distinguished projection of the construction is the orthogonal projection
onto the subalgebra's vector span.  The canonical trace on the extension
algebra is computed from
a module basis of the ambient algebra over the subalgebra whose first
vector is the trace vector, and is verified at build time against its
defining identity ``Tr(x e y) = tau(x y)``.

The pull-down map sends ``x e y`` to ``x y``; it is realized as a linear
solve over the spanning operators, and its well-definedness (independence
of the representation) is checked on the numerical null space of the span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bimodule import BimoduleBasis, orthonormal_basis
from .errors import ConstructionError, RepresentationError
from .expectations import SubalgebraHandle, conditional_expectation
from .matrixalg import AlgebraElement, MultiMatrixAlgebra
from .tolerances import Tolerances


def left_operator(x: AlgebraElement) -> np.ndarray:
    """Matrix of left multiplication on the GNS space."""
    blocks = [np.kron(b, np.eye(b.shape[0], dtype=complex)) for b in x.blocks]
    return _block_diag(blocks)


def right_operator(y: AlgebraElement) -> np.ndarray:
    """Matrix of right multiplication on the GNS space."""
    blocks = [np.kron(np.eye(b.shape[0], dtype=complex), b.T) for b in y.blocks]
    return _block_diag(blocks)


def _block_diag(blocks) -> np.ndarray:
    total = sum(b.shape[0] for b in blocks)
    out = np.zeros((total, total), dtype=complex)
    at = 0
    for b in blocks:
        n = b.shape[0]
        out[at : at + n, at : at + n] = b
        at += n
    return out


@dataclass
class BasicConstruction:
    algebra: MultiMatrixAlgebra
    subalgebra: SubalgebraHandle
    intermediate: Optional[SubalgebraHandle]
    tolerances: Tolerances
    e_sub: np.ndarray
    e_mid: np.ndarray
    trace_vectors: BimoduleBasis
    trace_form: np.ndarray = field(default=None)  # sum of |xi_i><xi_i|
    _span_ops: np.ndarray = field(default=None)
    _span_products: list = field(default_factory=list)

    # -- operators -----------------------------------------------------------

    def left(self, x: AlgebraElement) -> np.ndarray:
        return left_operator(x)

    def right(self, x: AlgebraElement) -> np.ndarray:
        return right_operator(x)

    def vector_of(self, x: AlgebraElement) -> np.ndarray:
        return self.algebra.to_vector(x)

    def element_of(self, vec: np.ndarray) -> AlgebraElement:
        return self.algebra.from_vector(vec)

    def conjugation(self, x: AlgebraElement) -> AlgebraElement:
        """The canonical conjugation of the GNS space: the adjoint map."""
        return x.adjoint()

    def vector_operator(self, eta: AlgebraElement) -> np.ndarray:
        """Operator attached to a vector of the GNS space.

        On ``x`` (as a vector) it returns ``eta x``; identifying vectors
        with elements this is left multiplication by ``eta``, and the
        operator attached to ``x (trace vector)`` is exactly ``left(x)``.
        """
        return left_operator(eta)

    def basic_operator(self, x: AlgebraElement, y: AlgebraElement) -> np.ndarray:
        """The spanning operator ``lambda(x) e lambda(y)``."""
        return left_operator(x) @ self.e_sub @ left_operator(y)

    # -- canonical trace --------------------------------------------------------

    def extension_trace(self, op: np.ndarray) -> complex:
        """Canonical trace of the extension algebra."""
        return complex(np.sum(op * self.trace_form.T))

    def extension_norm(self, op: np.ndarray) -> float:
        return float(np.sqrt(max(self.extension_trace(op.conj().T @ op).real, 0.0)))

    # -- pull-down ---------------------------------------------------------------

    def pull_down(self, op: np.ndarray) -> AlgebraElement:
        """Linear extension of ``x e y -> x y``; input must lie in the span."""
        target = op.reshape(-1)
        coeffs, _, _, _ = np.linalg.lstsq(self._span_ops, target, rcond=None)
        fit = self._span_ops @ coeffs
        err = float(np.linalg.norm(fit - target))
        if err > self.tolerances.pull_down * max(1.0, float(np.linalg.norm(target))):
            raise RepresentationError(
                f"operator is outside the x e y span (residual {err:.2e})"
            )
        out = self.algebra.zero()
        for c, prod in zip(coeffs, self._span_products):
            out = out + complex(c) * prod
        return out


def basic_construction(
    algebra: MultiMatrixAlgebra,
    subalgebra: SubalgebraHandle,
    intermediate: Optional[SubalgebraHandle] = None,
    tolerances: Optional[Tolerances] = None,
) -> BasicConstruction:
    """Build and verify the extension data for a (possibly triple) inclusion."""
    tolerances = tolerances or Tolerances()
    coords = subalgebra.coordinates
    e_sub = coords @ coords.conj().T
    if intermediate is not None:
        mid = intermediate.coordinates
        e_mid = mid @ mid.conj().T
    else:
        e_mid = np.eye(algebra.dim, dtype=complex)

    expect = conditional_expectation(algebra, subalgebra)
    module_generators = [algebra.one()] + algebra.basis()
    trace_vectors = orthonormal_basis(subalgebra, expect, module_generators, tolerances)
    trace_form = np.zeros((algebra.dim, algebra.dim), dtype=complex)
    for eta in trace_vectors.vectors:
        vec = algebra.to_vector(eta)
        trace_form += np.outer(vec, vec.conj())

    construction = BasicConstruction(
        algebra=algebra,
        subalgebra=subalgebra,
        intermediate=intermediate,
        tolerances=tolerances,
        e_sub=e_sub,
        e_mid=e_mid,
        trace_vectors=trace_vectors,
        trace_form=trace_form,
    )

    basis = algebra.basis()
    ops = []
    products = []
    for x in basis:
        lx = left_operator(x)
        for y in basis:
            ops.append((lx @ e_sub @ left_operator(y)).reshape(-1))
            products.append(x @ y)
    construction._span_ops = np.stack(ops, axis=1)
    construction._span_products = products

    _verify_construction(construction)
    return construction


def _verify_construction(c: BasicConstruction) -> None:
    algebra = c.algebra
    tol = c.tolerances.construction_identity
    first = c.trace_vectors.vectors[0]
    if (first - algebra.one()).norm2() > tol:
        raise ConstructionError("module basis does not start at the trace vector")
    for eta in c.trace_vectors.vectors[1:]:
        if float(np.linalg.norm(c.e_sub @ c.vector_of(eta))) > tol:
            raise ConstructionError("module basis vector has a nonzero subalgebra component")
    dim = algebra.dim
    worst = 0.0
    for column, product in zip(c._span_ops.T, c._span_products):
        lhs = c.extension_trace(column.reshape(dim, dim))
        worst = max(worst, abs(lhs - product.trace()))
    if worst > tol:
        raise ConstructionError(f"trace identity residual {worst:.2e} exceeds {tol:.2e}")
    _, svals, vh = np.linalg.svd(c._span_ops, full_matrices=False)
    null = vh.conj().T[:, svals <= c.tolerances.subalgebra_closure * max(1.0, float(svals[0]))]
    if null.size:
        prod_matrix = np.stack([algebra.to_vector(p) for p in c._span_products], axis=1)
        defect = float(np.linalg.norm(prod_matrix @ null, 2))
        if defect > c.tolerances.pull_down:
            raise ConstructionError(f"pull-down is not well defined (defect {defect:.2e})")


def module_projection(construction: BasicConstruction, basis: BimoduleBasis) -> np.ndarray:
    """Projection onto the closed module a basis spans: ``sum w_i w_i*`` with
    ``w_i = lambda(eta_i) e``."""
    dim = construction.algebra.dim
    out = np.zeros((dim, dim), dtype=complex)
    for eta in basis.vectors:
        w = left_operator(eta) @ construction.e_sub
        out += w @ w.conj().T
    return out


@dataclass
class ModuleReport:
    module_dim: int
    basis: BimoduleBasis
    projection: np.ndarray

    @property
    def generators(self) -> list:
        return self.basis.vectors


def qn1_module_test(construction: BasicConstruction, x: AlgebraElement,
                    sub: Optional[SubalgebraHandle] = None) -> ModuleReport:
    """The right module generated by ``B x B`` over the subalgebra ``B``.

    At finite dimension the module is finitely generated, so ``x`` always
    carries a finite coset-style cover; the report returns the generating
    basis and the projection onto the module.
    """
    sub = sub or construction.subalgebra
    expect = conditional_expectation(construction.algebra, sub)
    generators = [b1 @ x @ b2 for b1 in sub.basis for b2 in sub.basis]
    basis = orthonormal_basis(sub, expect, generators, construction.tolerances)
    projection = module_projection(construction, basis)
    rank = float(np.trace(projection).real)
    module_dim = int(round(rank))
    if abs(rank - module_dim) > 1e-6:
        raise ConstructionError(f"module projection has non-integral rank {rank}")
    return ModuleReport(module_dim=module_dim, basis=basis, projection=projection)
