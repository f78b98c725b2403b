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

"""Photon statistics and Wigner functions of cavity states."""

from __future__ import annotations

import concurrent.futures
import dataclasses
import logging
import math
import typing

import numpy as np
from scipy import signal

from . import _constants, _errors
from ._fock import as_density, displacement_elements
from ._states import parity_split

if typing.TYPE_CHECKING:
    from collections.abc import Iterable

    import numpy.typing as npt

    from ._fock import DensityOperator, StateLike
    from ._types import FloatArray

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class WignerGrid:
    """``W(q, p)`` sampled on a grid; ``values[i, j]`` is at ``(q_axis[i], p_axis[j])``.

    The convention is ``W(q, p) = (1/pi) tr[rho D(alpha) P D(alpha)^dagger]`` with
    ``alpha = (q + i p) / sqrt(2)`` and ``P`` the photon-number parity, so that ``[q, p] = i``,
    ``|W| <= 1/pi`` and the integral over the plane is one.
    """

    q_axis: FloatArray
    p_axis: FloatArray
    values: FloatArray

    @property
    def step(self) -> tuple[float, float]:
        return _spacing(self.q_axis), _spacing(self.p_axis)

    def at_origin(self) -> float:
        """Return ``W`` at the grid point closest to ``q = p = 0``."""
        i = int(np.argmin(np.abs(self.q_axis)))
        j = int(np.argmin(np.abs(self.p_axis)))
        return float(self.values[i, j])


def _spacing(axis: FloatArray) -> float:
    return float(axis[1] - axis[0]) if axis.size > 1 else 1.0


def photon_probabilities(rho: StateLike) -> FloatArray:
    """Return ``p_n = <n|rho|n>``."""
    return as_density(rho).diagonal()


def blockade_fidelity(rho: StateLike, manifold: Iterable[int]) -> float:
    """Return the total probability of the photon numbers in ``manifold``.

    Raises:
        FockIndexError: if a photon number lies outside the truncation.
    """
    probabilities = photon_probabilities(rho)
    levels = sorted(set(manifold))
    for n in levels:
        if not 0 <= n < probabilities.size:
            _errors.raise_fock_index(n, probabilities.size)
    return float(np.sum(probabilities[levels]))


def mean_photon(rho: StateLike) -> float:
    probabilities = photon_probabilities(rho)
    return float(np.dot(np.arange(probabilities.size), probabilities))


def parity_ratio(rho: StateLike) -> float:
    """Return ``p_odd / p_even`` (``inf`` for an odd state)."""
    return parity_split(rho).ratio_r


def oscillation_frequency(times: npt.ArrayLike, values: npt.ArrayLike) -> float:
    """Return the angular frequency of a periodic signal from the mean spacing of its maxima.

    Only maxima standing out by at least 0.5 count, so a population trace ``p_m(t)`` gives the
    frequency of full population exchanges.

    Raises:
        ValueError: if the signal has fewer than three such maxima.
    """
    t = np.asarray(times, dtype=np.float64)
    peaks, _ = signal.find_peaks(np.asarray(values, dtype=np.float64), prominence=0.5)
    if len(peaks) < 3:
        raise ValueError(f'need three maxima to measure a frequency, found {len(peaks)}')
    return 2 * math.pi / float(np.mean(np.diff(t[peaks])))


def _wigner_row(matrix: npt.NDArray[np.complex128], q: float, p_axis: FloatArray) -> FloatArray:
    dim = matrix.shape[0]
    betas = np.sqrt(2.0) * (q + 1j * p_axis)  # 2 alpha
    displaced = displacement_elements(dim, betas)  # (p, m, n)
    signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    # tr[rho D(2 alpha) P] = sum_{m,n} rho[n, m] D[m, n] (-1)^n
    values = np.einsum('nm,pmn,n->p', matrix, displaced, signs) / math.pi
    return np.real(values)


def _check_extent(rho: DensityOperator, q_axis: FloatArray, p_axis: FloatArray) -> None:
    needed = math.sqrt(2 * mean_photon(rho)) + _constants.WIGNER_EXTENT_MARGIN
    extent = min(np.max(np.abs(q_axis)), np.max(np.abs(p_axis)))
    if extent < needed:
        _errors.warn_grid_extent(float(extent), needed)


def wigner(
    rho: StateLike,
    q_axis: npt.ArrayLike | None = None,
    p_axis: npt.ArrayLike | None = None,
    *,
    workers: int = 1,
) -> WignerGrid:
    """Evaluate the Wigner function on the grid ``q_axis x p_axis``.

    Each grid row uses ``D(alpha) P D(alpha)^dagger = D(2 alpha) P`` and one vectorized call to
    :func:`displacement_elements`, which is exact for a state supported inside the truncation.
    Rows are independent and are spread over ``workers`` threads.

    The default axes are 101 points on ``[-4, 4]``.
    """
    state = as_density(rho)
    extent = _constants.WIGNER_EXTENT
    default = np.linspace(-extent, extent, _constants.WIGNER_POINTS)
    q = default if q_axis is None else np.asarray(q_axis, dtype=np.float64)
    p = default if p_axis is None else np.asarray(p_axis, dtype=np.float64)
    _check_extent(state, q, p)
    matrix = state.matrix
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda qi: _wigner_row(matrix, float(qi), p), q))
    else:
        rows = [_wigner_row(matrix, float(qi), p) for qi in q]
    logger.debug('Wigner grid %dx%d at dim=%d', q.size, p.size, state.space.dim)
    return WignerGrid(q_axis=q, p_axis=p, values=np.array(rows).reshape(q.size, p.size))


def wigner_at(rho: StateLike, q: float, p: float) -> float:
    """Return ``W(q, p)`` at a single phase-space point."""
    return float(_wigner_row(as_density(rho).matrix, q, np.array([p]))[0])


def wigner_integral(grid: WignerGrid) -> float:
    """Return the Riemann sum of ``W`` over the grid; one for a grid covering the state."""
    dq, dp = grid.step
    return float(np.sum(grid.values) * dq * dp)
