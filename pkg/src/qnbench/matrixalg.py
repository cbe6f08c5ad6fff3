"""Multi-matrix algebras: finite direct sums of complex matrix blocks with a
normalized faithful trace.

An algebra is a list of block dimensions ``n_k`` and positive weights
``w_k`` with ``sum(w_k n_k) = 1``, giving the trace
``tau(x) = sum_k w_k tr(x_k)`` with ``tau(1) = 1``.  Elements are tuples of
complex blocks; the 2-norm is ``tau(x* x)^(1/2)``.

Coordinates: scaling the matrix units of block ``k`` by ``w_k^(1/2)`` gives
an orthonormal basis of the trace inner product, so every element maps to a
flat complex vector (``to_vector``/``from_vector``) and operators on the
GNS space become ordinary square matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GroupValidationError
from .tolerances import Tolerances


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    block_dims: tuple
    block_weights: tuple
    rescaled: bool = False

    @property
    def dim(self) -> int:
        """Linear dimension, which is also the GNS space dimension."""
        return int(sum(n * n for n in self.block_dims))

    @property
    def num_blocks(self) -> int:
        return len(self.block_dims)

    # -- element constructors ------------------------------------------------

    def element(self, blocks: Iterable[np.ndarray]) -> "AlgebraElement":
        mats = []
        for n, raw in zip(self.block_dims, blocks, strict=True):
            mat = np.asarray(raw, dtype=complex)
            if mat.shape != (n, n):
                raise GroupValidationError(f"block of shape {mat.shape}, expected {(n, n)}")
            mats.append(mat)
        return AlgebraElement(self, tuple(mats))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.zeros((n, n), dtype=complex) for n in self.block_dims))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.eye(n, dtype=complex) for n in self.block_dims))

    def matrix_unit(self, block: int, i: int, j: int) -> "AlgebraElement":
        mats = [np.zeros((n, n), dtype=complex) for n in self.block_dims]
        mats[block][i, j] = 1.0
        return AlgebraElement(self, tuple(mats))

    def basis(self) -> list:
        """Matrix units in canonical (block, row, column) order."""
        return [
            self.matrix_unit(k, i, j)
            for k, n in enumerate(self.block_dims)
            for i in range(n)
            for j in range(n)
        ]

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> "AlgebraElement":
        mats = [
            scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
            for n in self.block_dims
        ]
        return AlgebraElement(self, tuple(mats))

    def random_selfadjoint(self, rng: np.random.Generator, scale: float = 1.0) -> "AlgebraElement":
        x = self.random_element(rng, scale)
        return 0.5 * (x + x.adjoint())

    # -- coordinates -----------------------------------------------------------

    def to_vector(self, x: "AlgebraElement") -> np.ndarray:
        parts = [
            np.sqrt(w) * block.reshape(-1)
            for w, block in zip(self.block_weights, x.blocks)
        ]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def from_vector(self, vec: np.ndarray) -> "AlgebraElement":
        mats = []
        at = 0
        for n, w in zip(self.block_dims, self.block_weights):
            chunk = vec[at : at + n * n]
            mats.append(np.asarray(chunk, dtype=complex).reshape(n, n) / np.sqrt(w))
            at += n * n
        return AlgebraElement(self, tuple(mats))

    # -- tensor products ---------------------------------------------------------

    def tensor(self, other: "MultiMatrixAlgebra") -> "MultiMatrixAlgebra":
        dims = tuple(n * m for n in self.block_dims for m in other.block_dims)
        weights = tuple(w * v for w in self.block_weights for v in other.block_weights)
        return MultiMatrixAlgebra(block_dims=dims, block_weights=weights)

    def tensor_element(self, product: "MultiMatrixAlgebra", x: "AlgebraElement",
                       y: "AlgebraElement") -> "AlgebraElement":
        blocks = [np.kron(a, b) for a in x.blocks for b in y.blocks]
        return product.element(blocks)


def build_algebra(block_dims: Sequence[int], block_weights: Sequence[float],
                  tolerances: Optional[Tolerances] = None) -> MultiMatrixAlgebra:
    """Validated constructor; weights off normalization are rescaled with a flag."""
    tolerances = tolerances or Tolerances()
    if len(block_dims) != len(block_weights) or not block_dims:
        raise GroupValidationError("need matching nonempty dimension and weight lists")
    if any(n <= 0 or int(n) != n for n in block_dims):
        raise GroupValidationError("block dimensions must be positive integers")
    if any(w <= 0 for w in block_weights):
        raise GroupValidationError("block weights must be positive")
    total = float(sum(w * n for w, n in zip(block_weights, block_dims)))
    rescaled = abs(total - 1.0) > tolerances.weight_sum
    weights = tuple(float(w) / total for w in block_weights) if rescaled \
        else tuple(float(w) for w in block_weights)
    return MultiMatrixAlgebra(block_dims=tuple(int(n) for n in block_dims),
                              block_weights=weights, rescaled=rescaled)


class AlgebraElement:
    """Immutable element of a multi-matrix algebra."""

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: MultiMatrixAlgebra, blocks: tuple):
        self.algebra = algebra
        for b in blocks:
            b.setflags(write=False)
        self.blocks = blocks

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise GroupValidationError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.blocks))

    def __rmul__(self, scalar):
        return AlgebraElement(self.algebra, tuple(complex(scalar) * a for a in self.blocks))

    def __mul__(self, scalar):
        return self.__rmul__(scalar)

    def __matmul__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(a.conj().T for a in self.blocks))

    def trace(self) -> complex:
        return complex(
            sum(w * np.trace(b) for w, b in zip(self.algebra.block_weights, self.blocks))
        )

    def inner(self, other: "AlgebraElement") -> complex:
        """Trace inner product ``tau(other* self)``."""
        self._check(other)
        return complex(
            sum(
                w * np.sum(o.conj() * s)
                for w, s, o in zip(self.algebra.block_weights, self.blocks, other.blocks)
            )
        )

    def norm2(self) -> float:
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    def sup_norm(self) -> float:
        return max(
            (float(np.linalg.norm(b, 2)) for b in self.blocks if b.size), default=0.0
        )

    def is_zero(self, tol: float = 1e-12) -> bool:
        return self.norm2() <= tol

    def __repr__(self) -> str:
        dims = "+".join(str(n) for n in self.algebra.block_dims)
        return f"<element of M[{dims}], |.|_2 = {self.norm2():.4g}>"


def tau(x: AlgebraElement) -> complex:
    return x.trace()


def spectral_calculus(x: AlgebraElement, func, cutoff: float = 0.0) -> AlgebraElement:
    """Apply a real function to a self-adjoint element blockwise.

    Eigenvalues with absolute value at most ``cutoff`` are sent to zero, so
    pseudo-inverse powers stay bounded.  The result lies in every subalgebra
    containing ``x`` because it is a limit of polynomials in ``x`` and ``1``;
    with ``f(0) = 0`` it is a polynomial in ``x`` alone.
    """
    out = []
    for block in x.blocks:
        if block.size == 0:
            out.append(block.copy())
            continue
        vals, vecs = np.linalg.eigh(block)
        mapped = np.array([func(v) if abs(v) > cutoff else 0.0 for v in vals])
        out.append((vecs * mapped) @ vecs.conj().T)
    return AlgebraElement(x.algebra, tuple(out))
