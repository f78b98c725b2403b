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

"""Exception and warning types, and helpers for raising them with consistent messages."""

from __future__ import annotations

import typing
import warnings
from typing import NoReturn

if typing.TYPE_CHECKING:
    from collections.abc import Sequence


class DimensionError(ValueError):
    """A Fock space is too small, or objects from different spaces were combined."""


class FockIndexError(IndexError):
    """A photon number lies outside the truncated basis ``0 .. dim - 1``."""


class StateDomainError(ValueError):
    """State parameters outside the family's physical domain, or an invalid density matrix."""


class DispersiveLimitError(ValueError):
    """Jaynes-Cummings parameters outside the dispersive regime ``|g / Delta| << 1``."""


class CapacityError(ValueError):
    """A dense superoperator was requested for a space above the dense-assembly cap.

    Use the sparse path (:func:`liouvillian_sparse`, or :func:`steady_state` which picks the
    solver itself) for large truncations.
    """


class StiffnessError(RuntimeError):
    """The adaptive integrator could not keep its step size above the round-off floor."""


class SolverError(RuntimeError):
    """A steady-state or null-space solve failed to produce a normalizable state."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or incomplete."""


class TruncationWarning(UserWarning):
    """A state constructor discarded non-negligible weight above the truncation."""


class ApproximationDomainWarning(UserWarning):
    """A series approximation was evaluated outside the small-parameter domain."""


class DegenerateSpectrumWarning(UserWarning):
    """A null space has a different dimension than expected."""


class DispersiveLimitWarning(UserWarning):
    """``|g / Delta|`` is small enough to proceed but large enough to doubt the expansion."""


class GridExtentWarning(UserWarning):
    """A Wigner grid is narrower than the phase-space extent its state is expected to need."""


def raise_space_mismatch(left: int, right: int) -> NoReturn:
    raise DimensionError(f'Fock spaces differ: dim={left} vs dim={right}')


def raise_fock_index(n: int, dim: int, what: str = 'photon number') -> NoReturn:
    raise FockIndexError(f'{what} {n} outside truncated basis 0..{dim - 1}')


def raise_solver_failure(msg: str, from_: BaseException | None = None) -> NoReturn:
    raise SolverError(msg) from from_


def warn_truncation(family: str, discarded: float, dim: int, stacklevel: int = 3) -> None:
    warnings.warn(
        f'{family}: truncation at dim={dim} discards weight {discarded:.3g}; increase dim',
        TruncationWarning,
        stacklevel=stacklevel,
    )


def warn_grid_extent(extent: float, needed: float) -> None:
    warnings.warn(
        f'Wigner grid half-width {extent:.3g} may not cover the state (needs ~{needed:.3g})',
        GridExtentWarning,
        stacklevel=4,
    )


def warn_nullity(found: int, expected: int, singular_values: Sequence[float]) -> None:
    tail = ', '.join(f'{s:.3e}' for s in singular_values)
    warnings.warn(
        f'null space has dimension {found}, expected {expected}; smallest singular values: {tail}',
        DegenerateSpectrumWarning,
        stacklevel=3,
    )
