# Copyright 2025 The kerrlibs developers.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Truncated Fock spaces, the states and operators that live on them, and displacements."""

from __future__ import annotations

import dataclasses
import typing

import numpy as np
from scipy import special

from . import _constants, _errors

if typing.TYPE_CHECKING:
    from typing import Union

    import numpy.typing as npt
    from typing_extensions import Self

    from ._types import ComplexArray, FloatArray, OnFockSpace

    StateLike = Union['StateVector', 'DensityOperator']


@dataclasses.dataclass(frozen=True)
class FockSpace:
    """The span of ``|0>, |1>, ..., |dim - 1>``.

    Every state and operator carries the space it was built on, and binary operations refuse
    to combine objects from different spaces.

    Raises:
        DimensionError: if ``dim`` is smaller than two.
    """

    dim: int = _constants.DEFAULT_DIM

    def __post_init__(self) -> None:
        if int(self.dim) != self.dim or self.dim < _constants.MIN_DIM:
            raise _errors.DimensionError(
                f'Fock space needs dim >= {_constants.MIN_DIM}, got {self.dim!r}'
            )

    @property
    def levels(self) -> npt.NDArray[np.int_]:
        """Photon numbers ``0 .. dim - 1``."""
        return np.arange(self.dim)

    def even_levels(self) -> npt.NDArray[np.int_]:
        return np.arange(0, self.dim, 2)

    def odd_levels(self) -> npt.NDArray[np.int_]:
        return np.arange(1, self.dim, 2)


def make_space(dim: int = _constants.DEFAULT_DIM) -> FockSpace:
    """Return the truncated Fock space with ``dim`` levels.

    Raises:
        DimensionError: if ``dim < 2``.
    """
    return FockSpace(dim)


def _frozen(array: npt.ArrayLike, dtype: type = np.complex128) -> ComplexArray:
    out = np.array(array, dtype=dtype)
    out.flags.writeable = False
    return out


def check_same_space(first: OnFockSpace, *others: OnFockSpace) -> FockSpace:
    """Return the common space of the arguments.

    Raises:
        DimensionError: if any two arguments live on different spaces.
    """
    for other in others:
        if other.space != first.space:
            _errors.raise_space_mismatch(first.space.dim, other.space.dim)
    return first.space


class StateVector:
    """A normalized pure state ``sum_n c_n |n>``.

    Args:
        space: the truncated space.
        amplitudes: ``dim`` complex amplitudes. Must already be normalized;
            use :meth:`normalized` to renormalize arbitrary amplitudes.

    Raises:
        DimensionError: if the amplitudes do not have length ``dim``.
        StateDomainError: if the norm differs from one by more than ``1e-10``.
    """

    def __init__(self, space: FockSpace, amplitudes: npt.ArrayLike) -> None:
        self._space = space
        self._amplitudes = _frozen(amplitudes)
        if self._amplitudes.shape != (space.dim,):
            raise _errors.DimensionError(
                f'expected {space.dim} amplitudes, got shape {self._amplitudes.shape}'
            )
        norm = float(np.vdot(self._amplitudes, self._amplitudes).real)
        if abs(norm - 1) > _constants.TRACE_TOL:
            raise _errors.StateDomainError(f'state vector has squared norm {norm!r}, not 1')

    @classmethod
    def normalized(cls, space: FockSpace, amplitudes: npt.ArrayLike) -> Self:
        """Return the state with the given amplitudes rescaled to unit norm.

        Raises:
            StateDomainError: if every amplitude is zero.
        """
        raw = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(raw))
        if norm == 0 or not np.isfinite(norm):
            raise _errors.StateDomainError('cannot normalize a zero (or non-finite) vector')
        return cls(space, raw / norm)

    @property
    def space(self) -> FockSpace:
        return self._space

    @property
    def amplitudes(self) -> ComplexArray:
        """Read-only amplitudes ``c_n``."""
        return self._amplitudes

    def probabilities(self) -> FloatArray:
        """Return ``|c_n|**2``."""
        return np.abs(self._amplitudes) ** 2

    def projector(self) -> DensityOperator:
        """Return ``|psi><psi|``."""
        return DensityOperator.from_state(self)

    def __repr__(self) -> str:
        n_max = int(np.flatnonzero(np.abs(self._amplitudes) > 1e-12).max(initial=0))
        return f'{type(self).__name__}(dim={self._space.dim}, support=0..{n_max})'


class DensityOperator:
    """A Hermitian, unit-trace, positive semidefinite matrix on a truncated Fock space.

    Hermiticity and trace are always checked. Positivity is checked when the environment
    variable ``BLOCKADE_DEBUG`` is set; call :meth:`is_positive` to check it explicitly.

    Args:
        space: the truncated space.
        matrix: ``dim x dim`` complex matrix.
        trace_tol: allowed deviation of the trace from one.

    Raises:
        DimensionError: if the matrix is not ``dim x dim``.
        StateDomainError: if the matrix is not Hermitian, not of unit trace,
            or (in debug mode) not positive.
    """

    def __init__(
        self,
        space: FockSpace,
        matrix: npt.ArrayLike,
        *,
        trace_tol: float = _constants.TRACE_TOL,
    ) -> None:
        self._space = space
        self._matrix = _frozen(matrix)
        if self._matrix.shape != (space.dim, space.dim):
            raise _errors.DimensionError(
                f'expected a {space.dim}x{space.dim} matrix, got shape {self._matrix.shape}'
            )
        skew = float(np.max(np.abs(self._matrix - self._matrix.conj().T)))
        if skew > _constants.HERMITIAN_TOL:
            raise _errors.StateDomainError(f'density matrix not Hermitian (max skew {skew:.3g})')
        trace = complex(np.trace(self._matrix))
        if abs(trace - 1) > trace_tol:
            raise _errors.StateDomainError(f'density matrix has trace {trace!r}, not 1')
        if _constants.DEBUG and not self.is_positive():
            raise _errors.StateDomainError(
                f'density matrix not positive (min eigenvalue {self.min_eigenvalue():.3g})'
            )

    @classmethod
    def from_state(cls, psi: StateVector) -> Self:
        """Return the projector onto a pure state."""
        c = psi.amplitudes
        return cls(psi.space, np.outer(c, c.conj()))

    @classmethod
    def from_matrix(
        cls,
        space: FockSpace,
        matrix: npt.ArrayLike,
        *,
        trace_tol: float = _constants.TRACE_TOL,
    ) -> Self:
        """Return the state obtained by hermitizing and trace-normalizing ``matrix``.

        This is the constructor for solver and integrator output, whose raw matrices carry
        round-off skew and an arbitrary (possibly complex) scale.

        Raises:
            StateDomainError: if the trace vanishes.
        """
        raw = np.asarray(matrix, dtype=np.complex128)
        trace = complex(np.trace(raw))
        if abs(trace) < 1e-300:
            raise _errors.StateDomainError('cannot normalize a traceless matrix')
        raw = raw / trace
        return cls(space, (raw + raw.conj().T) / 2, trace_tol=trace_tol)

    @property
    def space(self) -> FockSpace:
        return self._space

    @property
    def matrix(self) -> ComplexArray:
        """Read-only ``dim x dim`` matrix."""
        return self._matrix

    def diagonal(self) -> FloatArray:
        """Return the photon-number probabilities ``<n|rho|n>``."""
        return np.real(np.diagonal(self._matrix)).copy()

    def eigenvalues(self) -> FloatArray:
        return np.linalg.eigvalsh(self._matrix)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def is_positive(self, atol: float = _constants.POSITIVITY_TOL) -> bool:
        """Return whether the smallest eigenvalue is at least ``-atol``."""
        return self.min_eigenvalue() >= -atol

    def purity(self) -> float:
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def __repr__(self) -> str:
        return f'{type(self).__name__}(dim={self._space.dim}, purity={self.purity():.6g})'


class OperatorMatrix:
    """A dense operator on a truncated Fock space.

    Supports ``+``, ``-``, scalar ``*`` and ``@`` (with operators and state vectors).

    Args:
        space: the truncated space.
        matrix: ``dim x dim`` complex matrix.
        hermitian: hint that the operator is Hermitian; verified on construction.

    Raises:
        DimensionError: if the matrix is not ``dim x dim``.
        ValueError: if ``hermitian`` is set but the matrix is not Hermitian.
    """

    def __init__(self, space: FockSpace, matrix: npt.ArrayLike, *, hermitian: bool = False):
        self._space = space
        self._matrix = _frozen(matrix)
        self._hermitian = hermitian
        if self._matrix.shape != (space.dim, space.dim):
            raise _errors.DimensionError(
                f'expected a {space.dim}x{space.dim} matrix, got shape {self._matrix.shape}'
            )
        if hermitian:
            skew = float(np.max(np.abs(self._matrix - self._matrix.conj().T)))
            if skew > _constants.HERMITIAN_TOL:
                raise ValueError(f'operator flagged Hermitian has skew {skew:.3g}')

    @property
    def space(self) -> FockSpace:
        return self._space

    @property
    def matrix(self) -> ComplexArray:
        """Read-only ``dim x dim`` matrix."""
        return self._matrix

    @property
    def hermitian_flag(self) -> bool:
        return self._hermitian

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        check_same_space(self, other)
        return OperatorMatrix(
            self._space,
            self._matrix + other._matrix,
            hermitian=self._hermitian and other._hermitian,
        )

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        check_same_space(self, other)
        return OperatorMatrix(
            self._space,
            self._matrix - other._matrix,
            hermitian=self._hermitian and other._hermitian,
        )

    def __mul__(self, scalar: complex) -> OperatorMatrix:
        hermitian = self._hermitian and complex(scalar).imag == 0
        return OperatorMatrix(self._space, self._matrix * scalar, hermitian=hermitian)

    __rmul__ = __mul__

    @typing.overload
    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix: ...
    @typing.overload
    def __matmul__(self, other: StateVector) -> StateVector: ...
    def __matmul__(self, other: OperatorMatrix | StateVector) -> OperatorMatrix | StateVector:
        if isinstance(other, StateVector):
            return apply(self, other)
        return multiply(self, other)

    def __repr__(self) -> str:
        return f'{type(self).__name__}(dim={self._space.dim}, hermitian={self._hermitian})'


##########################
# elementary operators   #
##########################


def lowering_array(dim: int) -> ComplexArray:
    """Return the bare ``dim x dim`` array of the annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=np.float64)), k=1).astype(np.complex128)


def annihilation(space: FockSpace) -> OperatorMatrix:
    """Return ``a`` with ``<n-1|a|n> = sqrt(n)``."""
    return OperatorMatrix(space, lowering_array(space.dim))


def creation(space: FockSpace) -> OperatorMatrix:
    """Return ``a^dagger``; the transpose of :func:`annihilation`."""
    return OperatorMatrix(space, lowering_array(space.dim).T)


def number_operator(space: FockSpace) -> OperatorMatrix:
    """Return ``n = diag(0, 1, ..., dim - 1)``, entry-wise equal to ``a^dagger a``."""
    return OperatorMatrix(space, np.diag(space.levels.astype(np.complex128)), hermitian=True)


def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, np.eye(space.dim, dtype=np.complex128), hermitian=True)


def parity_operator(space: FockSpace) -> OperatorMatrix:
    """Return ``(-1)**n``."""
    signs = np.where(space.levels % 2 == 0, 1.0, -1.0).astype(np.complex128)
    return OperatorMatrix(space, np.diag(signs), hermitian=True)


##########################
# displacement           #
##########################


def displacement_elements(dim: int, betas: npt.ArrayLike) -> ComplexArray:
    """Return ``<n|D(beta)|n0>`` for ``n, n0 < dim`` and every ``beta``, shape ``(len, dim, dim)``.

    The elements are the exact matrix elements of the untruncated displacement operator,
    ``exp(-|b|^2/2) sqrt(n_-!/n_+!) (-1)**(n_+ - n) |b|**(n_+ - n_-) L_{n_-}^{(n_+ - n_-)}(|b|^2)``
    times the phase ``exp(i (n - n0) arg b)``. The associated Laguerre polynomials come from the
    three-term upward recurrence in the lower index; the prefactor is accumulated in logs so
    that large ``n`` and ``|b|`` neither overflow nor underflow.

    The truncated matrix is unitary only on the block of levels whose displaced support stays
    inside the truncation.
    """
    beta = np.atleast_1d(np.asarray(betas, dtype=np.complex128))
    r = np.abs(beta)
    x = r**2
    theta = np.angle(beta)
    k = np.arange(dim, dtype=np.float64)[:, None]  # upper Laguerre index, broadcast over betas

    # table[j, k, :] = L_j^{(k)}(x)
    table = np.zeros((dim, dim, beta.size))
    table[0] = 1.0
    if dim > 1:
        table[1] = 1.0 + k - x
    for j in range(1, dim - 1):
        table[j + 1] = ((2 * j + 1 + k - x) * table[j] - (j + k) * table[j - 1]) / (j + 1)

    with np.errstate(divide='ignore', invalid='ignore'):
        log_r = np.log(r)
        k_log_r = np.where(k == 0, 0.0, k * log_r)  # (dim, P); -inf where r == 0 and k > 0
    j = np.arange(dim, dtype=np.float64)[:, None, None]
    log_factorial_ratio = 0.5 * (special.gammaln(j + 1) - special.gammaln(j + k[None] + 1))
    log_prefactor = -0.5 * x + log_factorial_ratio + k_log_r[None]  # (j, k, P)
    scaled = table * np.exp(log_prefactor)

    n = np.arange(dim)[:, None]
    n0 = np.arange(dim)[None, :]
    lower = np.minimum(n, n0)
    gap = np.abs(n - n0)
    sign = np.where((n < n0) & (gap % 2 == 1), -1.0, 1.0)
    magnitude = scaled[lower, gap] * sign[:, :, None]  # (n, n0, P)
    phase = np.exp(1j * (n - n0)[:, :, None] * theta[None, None, :])
    return np.moveaxis(magnitude * phase, -1, 0)


def displacement_matrix(space: FockSpace, beta: complex) -> OperatorMatrix:
    """Return ``D(beta) = exp(beta a^dagger - beta^* a)`` restricted to the truncated basis.

    Column ``n0`` is the displaced number state ``|beta, n0>``; ``D(0)`` is the identity.
    """
    return OperatorMatrix(space, displacement_elements(space.dim, [beta])[0])


##########################
# algebra helpers        #
##########################


def multiply(left: OperatorMatrix, right: OperatorMatrix) -> OperatorMatrix:
    """Return the operator product ``left @ right``.

    Raises:
        DimensionError: if the operators live on different spaces.
    """
    space = check_same_space(left, right)
    return OperatorMatrix(space, left.matrix @ right.matrix)


def adjoint(op: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(op.space, op.matrix.conj().T, hermitian=op.hermitian_flag)


def apply(op: OperatorMatrix, psi: StateVector) -> StateVector:
    """Return ``op |psi>``, renormalized.

    Raises:
        DimensionError: if the operator and state live on different spaces.
        StateDomainError: if ``op |psi>`` vanishes.
    """
    space = check_same_space(op, psi)
    return StateVector.normalized(space, op.matrix @ psi.amplitudes)


def expectation(op: OperatorMatrix, state: StateLike) -> complex:
    """Return ``<psi|op|psi>`` or ``tr(op rho)``.

    Raises:
        DimensionError: if the operator and state live on different spaces.
    """
    check_same_space(op, state)
    if isinstance(state, StateVector):
        c = state.amplitudes
        return complex(np.vdot(c, op.matrix @ c))
    return complex(np.sum(op.matrix * state.matrix.T))


def as_density(state: StateLike) -> DensityOperator:
    """Return ``state`` as a density operator (projector for pure states)."""
    if isinstance(state, StateVector):
        return DensityOperator.from_state(state)
    return state


def trace_distance(rho: StateLike, sigma: StateLike) -> float:
    """Return ``0.5 * || rho - sigma ||_1``.

    Raises:
        DimensionError: if the states live on different spaces.
    """
    check_same_space(rho, sigma)
    difference = as_density(rho).matrix - as_density(sigma).matrix
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(difference))))


def embed_block(space: FockSpace, block: npt.ArrayLike) -> ComplexArray:
    """Return a ``dim x dim`` matrix with ``block`` in its upper-left corner.

    A block larger than the space is cut down to ``dim x dim``.
    """
    values = np.asarray(block, dtype=np.complex128)
    size = min(values.shape[0], space.dim)
    out = np.zeros((space.dim, space.dim), dtype=np.complex128)
    out[:size, :size] = values[:size, :size]
    return out
