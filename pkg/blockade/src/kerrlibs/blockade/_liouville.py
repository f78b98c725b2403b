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

"""Lindblad generators, time evolution and steady states.

Superoperators act on column-stacked density matrices: ``vec(rho)[i + j * dim] = rho[i, j]``,
so that ``vec(A rho B) = (B.T kron A) vec(rho)``.
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import typing

import numpy as np
from scipy import integrate, linalg, sparse
from scipy.sparse import linalg as sparse_linalg

from . import _constants, _errors
from ._fock import DensityOperator, FockSpace, as_density, lowering_array
from ._model import DissipationRates, ModelSpec, conserves_parity, hamiltonian
from ._states import Parity, parity_split

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from ._fock import StateLike
    from ._types import ComplexArray, FloatArray

logger = logging.getLogger(__name__)

METHODS = ('dop853', 'propagator')


@dataclasses.dataclass(frozen=True)
class Trajectory:
    """Density operators sampled on an ascending time grid."""

    times: FloatArray
    states: tuple[DensityOperator, ...]

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError(f'{len(self.times)} times but {len(self.states)} states')

    def populations(self) -> FloatArray:
        """Return ``p_n(t)`` with shape ``(len(times), dim)``."""
        return np.array([rho.diagonal() for rho in self.states])

    def parity_ratio(self) -> FloatArray:
        """Return ``p_odd / p_even`` at every time."""
        return np.array([parity_split(rho).ratio_r for rho in self.states])

    def final_state(self) -> DensityOperator:
        return self.states[-1]


def vectorize(matrix: npt.ArrayLike) -> ComplexArray:
    """Column-stack a ``dim x dim`` matrix."""
    return np.asarray(matrix, dtype=np.complex128).reshape(-1, order='F')


def unvectorize(vector: npt.ArrayLike, dim: int) -> ComplexArray:
    return np.asarray(vector, dtype=np.complex128).reshape(dim, dim, order='F')


def sector_indices(dim: int, parity: Parity) -> npt.NDArray[np.int_]:
    """Return the positions in ``vec(rho)`` of the block ``rho[i, j]`` with ``i, j`` of one parity.

    The positions are ordered so that the block column-stacks to itself.
    """
    levels = np.arange(parity.offset, dim, 2)
    return (levels[:, None] + dim * levels[None, :]).reshape(-1, order='F')


def _jump_operators(dim: int, rates: DissipationRates) -> list[tuple[float, ComplexArray]]:
    a = lowering_array(dim)
    jumps: list[tuple[float, ComplexArray]] = []
    if rates.gamma2:
        jumps.append((rates.gamma2, a @ a))
    if rates.gamma1:
        jumps.append((rates.gamma1, a))
    if rates.gamma_perp:
        jumps.append((rates.gamma_perp, a.T @ a))
    return jumps


def lindblad_rhs(spec: ModelSpec, rates: DissipationRates, rho: DensityOperator) -> ComplexArray:
    """Return ``d rho / dt = -i [H, rho] + sum_k gamma_k D[L_k] rho``.

    ``D[L] rho = L rho L^dagger - (L^dagger L rho + rho L^dagger L) / 2`` with ``L = a^2``
    (``gamma2``), ``a`` (``gamma1``) and ``a^dagger a`` (``gamma_perp``). The result is traceless
    and Hermitian.
    """
    h = hamiltonian(rho.space, spec).matrix
    r = rho.matrix
    out = -1j * (h @ r - r @ h)
    for gamma, jump in _jump_operators(rho.space.dim, rates):
        jump_dag = jump.conj().T
        decay = jump_dag @ jump
        out += gamma * (jump @ r @ jump_dag - 0.5 * (decay @ r + r @ decay))
    return out


def liouvillian_sparse(
    spec: ModelSpec, rates: DissipationRates, space: FockSpace
) -> sparse.csr_matrix:
    """Return the Liouvillian as a ``dim**2 x dim**2`` CSR matrix; no size cap."""
    dim = space.dim
    eye = sparse.identity(dim, dtype=np.complex128, format='csr')
    h = sparse.csr_matrix(hamiltonian(space, spec).matrix)
    generator = -1j * (sparse.kron(eye, h) - sparse.kron(h.T, eye))
    for gamma, jump in _jump_operators(dim, rates):
        op = sparse.csr_matrix(jump)
        decay = (op.conj().T @ op).tocsr()
        generator = generator + gamma * (
            sparse.kron(op.conj(), op)
            - 0.5 * sparse.kron(eye, decay)
            - 0.5 * sparse.kron(decay.T, eye)
        )
    out = sparse.csr_matrix(generator)
    out.eliminate_zeros()
    logger.debug('assembled %s Liouvillian, dim=%d, nnz=%d', spec.label, dim, out.nnz)
    return out


def liouvillian_matrix(spec: ModelSpec, rates: DissipationRates, space: FockSpace) -> ComplexArray:
    """Return the dense Liouvillian; ``L @ vectorize(rho) == vectorize(lindblad_rhs(rho))``.

    Raises:
        CapacityError: if ``dim`` exceeds the dense-assembly cap of 64.
    """
    if space.dim > _constants.DENSE_DIM_LIMIT:
        raise _errors.CapacityError(
            f'dense Liouvillian at dim={space.dim} exceeds the cap of'
            f' {_constants.DENSE_DIM_LIMIT};'
            ' use liouvillian_sparse or steady_state'
        )
    return liouvillian_sparse(spec, rates, space).toarray()


##########################
# null spaces            #
##########################


def _scale(superop: sparse.spmatrix | ComplexArray) -> float:
    if sparse.issparse(superop):
        values = abs(sparse.csr_matrix(superop)).max()
        return max(1.0, float(values))
    return max(1.0, float(np.max(np.abs(superop))))


def _residual(superop: sparse.spmatrix | ComplexArray, vector: ComplexArray) -> float:
    return float(np.max(np.abs(superop @ vector)))


def null_space_solver(
    superop: sparse.spmatrix | ComplexArray,
    expected_nullity: int | None = None,
    *,
    max_iterations: int = 50,
) -> ComplexArray:
    """Return an orthonormal basis of the null space of ``superop``, one vector per column.

    Matrices up to 1024 x 1024 are decomposed densely with an SVD: singular values below
    ``1e-10`` times the largest count towards the null space. Larger matrices go to shifted
    block inverse iteration on a sparse LU factorization, with one block vector per expected
    null vector; that path cannot detect extra null vectors.

    Warns:
        DegenerateSpectrumWarning: if the dense nullity differs from ``expected_nullity``.

    Raises:
        SolverError: if inverse iteration does not reach the residual target.
    """
    size = superop.shape[0]
    if size <= _constants.DENSE_SECTOR_LIMIT:
        dense = superop.toarray() if sparse.issparse(superop) else np.asarray(superop)
        _, singular, vh = linalg.svd(dense)
        threshold = _constants.NULL_SPACE_RTOL * singular[0] if size else 0.0
        nullity = int(np.count_nonzero(singular <= threshold))
        logger.debug(
            'dense SVD of %dx%d superoperator: nullity %d, smallest singular values %s',
            size,
            size,
            nullity,
            singular[-3:],
        )
        if expected_nullity is not None and nullity != expected_nullity:
            tail = singular[-(max(nullity, expected_nullity) + 1) :]
            _errors.warn_nullity(nullity, expected_nullity, [float(s) for s in tail])
        return vh[size - nullity :].conj().T

    block = expected_nullity or 1
    scale = _scale(superop)
    shift = 1e-12 * scale
    matrix = sparse.csc_matrix(superop) - shift * sparse.identity(size, format='csc')
    try:
        lu = sparse_linalg.splu(sparse.csc_matrix(matrix))
    except RuntimeError as e:
        _errors.raise_solver_failure(f'LU factorization of {size}x{size} superoperator failed', e)
    logger.debug('inverse iteration on %dx%d superoperator, nnz=%d', size, size, matrix.nnz)
    rng = np.random.default_rng(0)
    basis = rng.standard_normal((size, block)) + 1j * rng.standard_normal((size, block))
    residual = np.inf
    for iteration in range(1, max_iterations + 1):
        basis, _ = np.linalg.qr(lu.solve(basis))
        residual = max(_residual(superop, basis[:, i]) for i in range(block))
        logger.debug('inverse iteration %d: residual %.3e', iteration, residual)
        if residual <= 0.1 * _constants.STEADY_RESIDUAL_TOL * scale:
            return basis
    _errors.raise_solver_failure(
        f'inverse iteration stalled at residual {residual:.3e} after {max_iterations} steps'
    )


def _trace_weights(m: int) -> ComplexArray:
    # positions of the diagonal entries inside a column-stacked m x m block
    weights = np.zeros(m * m, dtype=np.complex128)
    weights[np.arange(m) * (m + 1)] = 1.0
    return weights


def _state_from_null_space(
    space: FockSpace, levels: npt.NDArray[np.int_], basis: ComplexArray, what: str
) -> DensityOperator:
    if basis.shape[1] == 0:
        _errors.raise_solver_failure(f'{what}: superoperator has no null vector')
    traces = _trace_weights(len(levels)) @ basis
    best = int(np.argmax(np.abs(traces)))
    if abs(traces[best]) < 1e-12:
        _errors.raise_solver_failure(f'{what}: null vectors are traceless')
    m = len(levels)
    full = np.zeros((space.dim, space.dim), dtype=np.complex128)
    full[np.ix_(levels, levels)] = basis[:, best].reshape(m, m, order='F')
    try:
        return DensityOperator.from_matrix(space, full)
    except _errors.StateDomainError as e:
        _errors.raise_solver_failure(f'{what}: null vector is not a density matrix', e)


def _check_residual(generator: sparse.csr_matrix, rho: DensityOperator, what: str) -> None:
    residual = _residual(generator, vectorize(rho.matrix))
    scale = _scale(generator)
    logger.debug('%s: steady-state residual %.3e (scale %.3g)', what, residual, scale)
    if residual > _constants.STEADY_RESIDUAL_TOL * scale:
        _errors.raise_solver_failure(f'{what}: residual {residual:.3e} above target')


@functools.lru_cache(maxsize=128)
def _sector_cached(
    spec: ModelSpec, rates: DissipationRates, parity: Parity, space: FockSpace
) -> DensityOperator:
    what = f'{spec.label} {parity.value} sector at dim={space.dim}'
    full = liouvillian_sparse(spec, rates, space)
    index = sector_indices(space.dim, parity)
    block = full[index][:, index]
    basis = null_space_solver(block, expected_nullity=1)
    rho = _state_from_null_space(space, np.arange(parity.offset, space.dim, 2), basis, what)
    _check_residual(full, rho, what)
    return rho


def steady_state_sector(
    spec: ModelSpec, rates: DissipationRates, parity: Parity | str, space: FockSpace
) -> DensityOperator:
    """Return the steady state confined to the even or odd photon-number sector.

    The Liouvillian is restricted to the block ``rho[i, j]`` with ``i`` and ``j`` both of the
    requested parity, which it maps into itself when parity is conserved. Results are cached per
    ``(spec, rates, parity, space)``.

    Raises:
        SolverError: if the model does not conserve parity, or the block has no normalizable
            null vector.
    """
    parity = Parity(parity)
    if not conserves_parity(spec, rates):
        _errors.raise_solver_failure(
            f'{spec.label} with gamma1={rates.gamma1} mixes parity sectors; use steady_state'
        )
    if parity.offset >= space.dim:
        _errors.raise_solver_failure(f'dim={space.dim} has no {parity.value} levels')
    return _sector_cached(spec, rates, parity, space)


def steady_state_general(
    spec: ModelSpec, rates: DissipationRates, rho0: StateLike
) -> DensityOperator:
    """Return ``p_even(rho0) rho_even + p_odd(rho0) rho_odd``.

    Sectors with zero initial weight are not solved.
    """
    split = parity_split(rho0)
    space = rho0.space
    total = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for parity in Parity:
        weight = split.weight(parity)
        if weight > 0:
            total += weight * steady_state_sector(spec, rates, parity, space).matrix
    return DensityOperator.from_matrix(space, total)


def steady_state_unique(
    spec: ModelSpec, rates: DissipationRates, space: FockSpace
) -> DensityOperator:
    """Return the null vector of the full Liouvillian, for models that mix the parity sectors.

    Raises:
        SolverError: if no normalizable null vector is found.
    """
    what = f'{spec.label} at dim={space.dim}'
    generator = liouvillian_sparse(spec, rates, space)
    basis = null_space_solver(generator, expected_nullity=1)
    rho = _state_from_null_space(space, space.levels, basis, what)
    _check_residual(generator, rho, what)
    return rho


def steady_state(
    spec: ModelSpec,
    rates: DissipationRates,
    rho0: StateLike | None = None,
    *,
    space: FockSpace | None = None,
) -> DensityOperator:
    """Return the long-time state reached from ``rho0``.

    Parity-conserving models (two-photon drive without single-photon loss) use the sector
    decomposition and need ``rho0``. Other models have a unique steady state; ``rho0`` then only
    supplies the space.

    Raises:
        ValueError: if neither ``rho0`` nor ``space`` is given, or a parity-conserving model
            has no ``rho0``.
        SolverError: if the null-space solve fails.
    """
    if conserves_parity(spec, rates):
        if rho0 is None:
            raise ValueError(f'{spec.label} conserves parity; its steady state depends on rho0')
        return steady_state_general(spec, rates, rho0)
    if rho0 is not None:
        space = rho0.space
    if space is None:
        raise ValueError('steady_state needs rho0 or space')
    return steady_state_unique(spec, rates, space)


##########################
# evolution              #
##########################


def _check_grid(t_grid: Sequence[float] | FloatArray) -> FloatArray:
    times = np.asarray(t_grid, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise ValueError('t_grid must be a non-empty 1-D sequence')
    if times[0] != 0:
        raise ValueError(f't_grid must start at 0, got {times[0]!r}')
    if np.any(np.diff(times) <= 0):
        raise ValueError('t_grid must be strictly ascending')
    return times


def _to_state(space: FockSpace, vector: ComplexArray) -> DensityOperator:
    raw = unvectorize(vector, space.dim)
    return DensityOperator(
        space, (raw + raw.conj().T) / 2, trace_tol=_constants.TRAJECTORY_TRACE_TOL
    )


def _evolve_dop853(
    generator: sparse.csr_matrix, y0: ComplexArray, times: FloatArray
) -> list[ComplexArray]:
    if times.size == 1:
        return [y0]
    result = integrate.solve_ivp(
        lambda _, y: generator @ y,
        (0.0, float(times[-1])),
        y0,
        method='DOP853',
        t_eval=times,
        rtol=_constants.INTEGRATOR_RTOL,
        atol=_constants.INTEGRATOR_ATOL,
    )
    logger.debug('DOP853: %d right-hand-side evaluations, status %d', result.nfev, result.status)
    if result.status != 0:
        raise _errors.StiffnessError(
            f'integration stopped at t={result.t[-1]:.6g}: {result.message};'
            ' reduce dim, shorten the horizon, or use the propagator method'
        )
    return [result.y[:, i] for i in range(times.size)]


def _evolve_propagator(
    generator: sparse.csr_matrix, y0: ComplexArray, times: FloatArray
) -> list[ComplexArray]:
    if times.size == 1:
        return [y0]
    steps = np.diff(times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise ValueError('the propagator method needs a uniform t_grid')
    propagator = linalg.expm(generator.toarray() * steps[0])
    out = [y0]
    for _ in steps:
        out.append(propagator @ out[-1])
    return out


def evolve(
    spec: ModelSpec,
    rates: DissipationRates,
    rho0: StateLike,
    t_grid: Sequence[float] | FloatArray,
    *,
    method: str = 'dop853',
) -> Trajectory:
    """Integrate the master equation from ``rho0`` and sample it on ``t_grid``.

    Methods:

    - ``dop853``: adaptive explicit Runge-Kutta pair of order 8(5,3) with relative and absolute
      error targets ``1e-8`` and ``1e-10``.
    - ``propagator``: repeated application of ``expm(L dt)`` on a uniform grid; exact up to
      round-off at any horizon, for ``dim <= 64``.

    Every sampled state is re-hermitized.

    Raises:
        ValueError: for a malformed grid or an unknown method.
        StiffnessError: if the adaptive step size underflows.
        CapacityError: for the propagator method above ``dim = 64``.
    """
    times = _check_grid(t_grid)
    rho0 = as_density(rho0)
    space = rho0.space
    if method == 'dop853':
        generator = liouvillian_sparse(spec, rates, space)
        vectors = _evolve_dop853(generator, vectorize(rho0.matrix), times)
    elif method == 'propagator':
        if space.dim > _constants.DENSE_DIM_LIMIT:
            raise _errors.CapacityError(
                f'propagator at dim={space.dim} exceeds the cap of {_constants.DENSE_DIM_LIMIT}'
            )
        generator = liouvillian_sparse(spec, rates, space)
        vectors = _evolve_propagator(generator, vectorize(rho0.matrix), times)
    else:
        raise ValueError(f'unknown method {method!r}; expected one of {", ".join(METHODS)}')
    states = tuple(_to_state(space, v) for v in vectors)
    return Trajectory(times=times, states=states)
