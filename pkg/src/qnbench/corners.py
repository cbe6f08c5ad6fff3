"""Corner compressions and tensor-product module comparisons.

Cutting an inclusion down by a projection ``e`` in the subalgebra gives the
corner inclusion ``eBe <= eMe`` with the renormalized trace
``tau_e = tau(e . e) / tau(e)``.  The comparison report checks, per sample
element, that the compressed generators of its module span the module of the
compressed element, in both directions.  Central projections make that
module-level statement exact, so samples are drawn from sums of minimal
central projections of the subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .basic import BasicConstruction, basic_construction, module_projection, qn1_module_test
from .bimodule import orthonormal_basis
from .errors import GroupValidationError
from .expectations import SubalgebraHandle, conditional_expectation, subalgebra_closure
from .matrixalg import AlgebraElement, MultiMatrixAlgebra, build_algebra, spectral_calculus
from .tolerances import Tolerances


@dataclass
class Cutdown:
    corner: MultiMatrixAlgebra
    kept_blocks: list
    isometries: list  # per kept block: ambient_dim x rank frame of e
    sub_corner: SubalgebraHandle
    projection: AlgebraElement

    def compress(self, x: AlgebraElement) -> AlgebraElement:
        blocks = [
            v.conj().T @ x.blocks[k] @ v for k, v in zip(self.kept_blocks, self.isometries)
        ]
        return self.corner.element(blocks)

    def expand(self, y: AlgebraElement, ambient: MultiMatrixAlgebra) -> AlgebraElement:
        blocks = [np.zeros((n, n), dtype=complex) for n in ambient.block_dims]
        for k, v, b in zip(self.kept_blocks, self.isometries, y.blocks):
            blocks[k] = v @ b @ v.conj().T
        return ambient.element(blocks)


def cutdown(
    ambient: MultiMatrixAlgebra,
    sub: SubalgebraHandle,
    e: AlgebraElement,
    tolerances: Optional[Tolerances] = None,
) -> Cutdown:
    """Corner algebra of a projection in the subalgebra."""
    tolerances = tolerances or Tolerances()
    if (e - e.adjoint()).norm2() > 1e-10 or (e @ e - e).norm2() > 1e-10:
        raise GroupValidationError("cutdown requires a projection")
    if not sub.contains(e, 1e-9):
        raise GroupValidationError("projection must lie in the subalgebra")
    trace = e.trace().real
    if trace <= 0:
        raise GroupValidationError("cutdown by the zero projection")
    kept, isometries, dims, weights = [], [], [], []
    for k, block in enumerate(e.blocks):
        vals, vecs = np.linalg.eigh(block)
        frame = vecs[:, vals > 0.5]
        if frame.shape[1] == 0:
            continue
        kept.append(k)
        isometries.append(frame)
        dims.append(frame.shape[1])
        weights.append(ambient.block_weights[k] / trace)
    corner = build_algebra(dims, weights, tolerances)
    cut = Cutdown(corner=corner, kept_blocks=kept, isometries=isometries,
                  sub_corner=None, projection=e)
    cut.sub_corner = subalgebra_closure(corner, [cut.compress(b) for b in sub.basis], tolerances)
    return cut


@dataclass
class CutdownComparison:
    cut: Cutdown
    containment_residuals: list  # per sample: (compressed in corner, corner in compressed)

    @property
    def worst_residual(self) -> float:
        return max((max(a, b) for a, b in self.containment_residuals), default=0.0)


def cutdown_comparison(
    construction: BasicConstruction,
    e: AlgebraElement,
    samples: Sequence[AlgebraElement],
    tolerances: Optional[Tolerances] = None,
) -> CutdownComparison:
    """Module comparison between an inclusion and its corner.

    For each sample ``x``, the compressed module generators of ``x`` must
    span the module of ``e x e`` over the corner subalgebra, and conversely.
    """
    tolerances = tolerances or Tolerances()
    ambient = construction.algebra
    cut = cutdown(ambient, construction.subalgebra, e, tolerances)
    corner_construction = basic_construction(cut.corner, cut.sub_corner, tolerances=tolerances)
    expect_corner = conditional_expectation(cut.corner, cut.sub_corner)
    residuals = []
    for x in samples:
        ambient_module = qn1_module_test(construction, x)
        compressed_gens = [cut.compress(e @ eta @ e) for eta in ambient_module.generators]
        compressed_basis = orthonormal_basis(cut.sub_corner, expect_corner,
                                             compressed_gens, tolerances)
        p_compressed = module_projection(corner_construction, compressed_basis)
        corner_module = qn1_module_test(corner_construction, cut.compress(e @ x @ e))
        p_corner = corner_module.projection
        r1 = float(np.linalg.norm(p_compressed - p_corner @ p_compressed, 2))
        r2 = float(np.linalg.norm(p_corner - p_compressed @ p_corner, 2))
        residuals.append((r1, r2))
    return CutdownComparison(cut=cut, containment_residuals=residuals)


def central_projections(ambient: MultiMatrixAlgebra, sub: SubalgebraHandle,
                        tolerances: Optional[Tolerances] = None) -> list:
    """Minimal central projections of a subalgebra.

    Obtained as clustered spectral projections of a deterministic generic
    self-adjoint element of the center.
    """
    tolerances = tolerances or Tolerances()
    from .basic import left_operator, right_operator

    coords = sub.coordinates
    rows = []
    for b in sub.basis:
        rows.append((left_operator(b) - right_operator(b)) @ coords)
    stacked = np.concatenate(rows, axis=0)
    _, svals, vh = np.linalg.svd(stacked, full_matrices=True)
    tol = 1e-9 * max(1.0, float(svals[0]) if svals.size else 1.0)
    null = vh.conj().T[:, sum(svals > tol) :]
    center = [ambient.from_vector(coords @ null[:, j]) for j in range(null.shape[1])]
    # deterministic generic combination, made self-adjoint
    z = ambient.zero()
    for j, c in enumerate(center):
        z = z + float(np.cos(1.0 + 3.7 * j)) * (c + c.adjoint())
    values = sorted({round(float(v), 7) for block in z.blocks if block.size
                     for v in np.linalg.eigvalsh(block)})
    projections = []
    for v in values:
        p = spectral_calculus(z, lambda s, v=v: 1.0 if abs(s - v) < 1e-6 else 0.0,
                              cutoff=-1.0)
        if p.norm2() > 1e-9:
            projections.append(p)
    return projections


@dataclass
class TensorModuleCheck:
    left_dim: int
    right_dim: int
    product_dim: int

    @property
    def multiplicative(self) -> bool:
        return self.product_dim == self.left_dim * self.right_dim


def tensor_module_check(
    c1: BasicConstruction, x1: AlgebraElement,
    c2: BasicConstruction, x2: AlgebraElement,
    tolerances: Optional[Tolerances] = None,
) -> TensorModuleCheck:
    """Exact dimension count: the module of a simple tensor over the tensor
    subalgebra is the tensor product of the component modules."""
    from .bimodule import module_dimension

    tolerances = tolerances or Tolerances()
    m1, m2 = c1.algebra, c2.algebra
    product = m1.tensor(m2)
    gens = [
        m1.tensor_element(product, b1, b2)
        for b1 in c1.subalgebra.basis
        for b2 in c2.subalgebra.basis
    ]
    sub = subalgebra_closure(product, gens, tolerances)
    left = qn1_module_test(c1, x1)
    right = qn1_module_test(c2, x2)
    # the simple tensors of the component module bases generate the product
    # module; its linear dimension is recomputed through the product action
    product_gens = [
        m1.tensor_element(product, u, v)
        for u in left.generators
        for v in right.generators
    ]
    product_dim = module_dimension(sub, product_gens, tolerances)
    return TensorModuleCheck(
        left_dim=left.module_dim, right_dim=right.module_dim, product_dim=product_dim
    )
