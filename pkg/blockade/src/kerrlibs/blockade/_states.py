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

"""Initial-state families and their photon-number parity.

All pure-state constructors compute the exact (untruncated) amplitudes of the first ``dim``
levels, emit a :class:`TruncationWarning` if the discarded weight exceeds ``1e-8``, and
renormalize.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import typing

import numpy as np

from . import _constants, _errors
from ._fock import (
    DensityOperator,
    FockSpace,
    StateVector,
    as_density,
    check_same_space,
    displacement_elements,
)

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

    from ._fock import StateLike
    from ._types import ComplexArray


class StateFamily(str, enum.Enum):
    """Initial-state families understood by :func:`make_initial` and :func:`closed_form_parity`."""

    FOCK = 'fock'
    COHERENT = 'coherent'
    CAT = 'cat'
    SQUEEZED = 'squeezed'
    DISPLACED_NUMBER = 'displaced_number'
    THERMAL = 'thermal'
    PHOTON_ADDED_THERMAL = 'photon_added_thermal'


FAMILY_PARAMETERS: dict[StateFamily, frozenset[str]] = {
    StateFamily.FOCK: frozenset({'m'}),
    StateFamily.COHERENT: frozenset({'alpha'}),
    StateFamily.CAT: frozenset({'alpha', 'phi'}),
    StateFamily.SQUEEZED: frozenset({'alpha', 'xi'}),
    StateFamily.DISPLACED_NUMBER: frozenset({'alpha', 'n0'}),
    StateFamily.THERMAL: frozenset({'mean_n'}),
    StateFamily.PHOTON_ADDED_THERMAL: frozenset({'mean_n'}),
}
"""The parameters each family is built from; :func:`make_initial` rejects any others."""


class Parity(str, enum.Enum):
    EVEN = 'even'
    ODD = 'odd'

    @property
    def offset(self) -> int:
        """First level of the sector: 0 for even, 1 for odd."""
        return 0 if self is Parity.EVEN else 1


@dataclasses.dataclass(frozen=True)
class ParitySplit:
    """Probabilities of measuring an even or odd photon number, and their ratio.

    ``ratio_r`` is ``p_odd / p_even``, or ``math.inf`` when ``p_even`` vanishes.
    It is conserved by every evolution that moves photons only in pairs.
    """

    p_even: float
    p_odd: float
    ratio_r: float

    @classmethod
    def from_probabilities(cls, p_even: float, p_odd: float) -> ParitySplit:
        ratio = p_odd / p_even if p_even > 1e-15 else math.inf
        return cls(p_even=p_even, p_odd=p_odd, ratio_r=ratio)

    def weight(self, parity: Parity) -> float:
        return self.p_even if parity is Parity.EVEN else self.p_odd


def _finish(
    family: str,
    space: FockSpace,
    amplitudes: ComplexArray,
    exact_norm: float,
    *,
    short: bool = False,
) -> StateVector:
    # short: the support heuristic |alpha|^2 + 5|alpha| >= dim already failed
    kept = float(np.sum(np.abs(amplitudes) ** 2))
    discarded = 1.0 - kept / exact_norm
    if short or discarded > _constants.TRUNCATION_TOL:
        _errors.warn_truncation(family, discarded, space.dim, stacklevel=4)
    return StateVector.normalized(space, amplitudes)


def fock(space: FockSpace, m: int) -> StateVector:
    """Return the number state ``|m>``.

    Raises:
        FockIndexError: if ``m`` is outside ``0 .. dim - 1``.
    """
    if not 0 <= m < space.dim:
        _errors.raise_fock_index(m, space.dim)
    amplitudes = np.zeros(space.dim, dtype=np.complex128)
    amplitudes[m] = 1.0
    return StateVector(space, amplitudes)


def _coherent_amplitudes(dim: int, alpha: complex) -> ComplexArray:
    # c_n = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!), by the ratio c_{n+1} / c_n
    out = np.empty(dim, dtype=np.complex128)
    out[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, dim):
        out[n] = out[n - 1] * alpha / math.sqrt(n)
    return out


def _is_short(space: FockSpace, alpha: complex) -> bool:
    r = abs(alpha)
    return r**2 + 5 * r >= space.dim


def coherent(space: FockSpace, alpha: complex) -> StateVector:
    """Return the coherent state ``|alpha>``.

    Warns with :class:`TruncationWarning` if ``|alpha|^2 + 5|alpha| >= dim`` or if the discarded
    weight exceeds ``1e-8``.
    """
    amplitudes = _coherent_amplitudes(space.dim, alpha)
    return _finish('coherent', space, amplitudes, 1.0, short=_is_short(space, alpha))


def cat(space: FockSpace, alpha: complex, phi: float) -> StateVector:
    """Return the cat state ``N (|alpha> + exp(i phi) |-alpha>)``.

    ``phi = 0`` gives the even coherent state, ``phi = pi`` the odd one and ``phi = pi/2`` the
    Yurke-Stoler state.

    Raises:
        StateDomainError: if the superposition vanishes (``alpha = 0`` with ``phi = pi``).
    """
    base = _coherent_amplitudes(space.dim, alpha)
    signs = np.where(space.levels % 2 == 0, 1.0, -1.0)
    amplitudes = base * (1.0 + np.exp(1j * phi) * signs)
    exact_norm = 2.0 * (1.0 + math.cos(phi) * math.exp(-2 * abs(alpha) ** 2))
    if exact_norm < 1e-14:
        raise _errors.StateDomainError(
            f'cat state with alpha={alpha!r}, phi={phi!r} is the zero vector'
        )
    return _finish('cat', space, amplitudes, exact_norm, short=_is_short(space, alpha))


def squeezed(space: FockSpace, alpha: complex, xi: complex) -> StateVector:
    """Return the ideal squeezed state ``D(alpha) S(xi) |0>``.

    ``S(xi) = exp(xi^* a^2 / 2 - xi a^dagger^2 / 2)``. The Hermite expansion
    ``c_n = (x/2)^(n/2) H_n(y) exp(-z/2) / sqrt(n! cosh|xi|)`` with ``x = tanh|xi| exp(i arg xi)``,
    ``y = (alpha + alpha^* x) / sqrt(2x)`` and ``z = |alpha|^2 + alpha^*^2 x`` is evaluated through
    the scaled recurrence ``g_{n+1} = ((alpha + alpha^* x) g_n - x sqrt(n) g_{n-1}) / sqrt(n+1)``
    for ``g_n = (x/2)^(n/2) H_n(y) / sqrt(n!)``, which stays finite at ``xi = 0``.
    """
    r = abs(xi)
    x = math.tanh(r) * np.exp(1j * np.angle(xi))
    drive = alpha + alpha.conjugate() * x
    g = np.empty(space.dim, dtype=np.complex128)
    g[0] = 1.0
    if space.dim > 1:
        g[1] = drive
    for n in range(1, space.dim - 1):
        g[n + 1] = (drive * g[n] - x * math.sqrt(n) * g[n - 1]) / math.sqrt(n + 1)
    z = abs(alpha) ** 2 + alpha.conjugate() ** 2 * x
    amplitudes = g * np.exp(-z / 2) / math.sqrt(math.cosh(r))
    return _finish('squeezed', space, amplitudes, 1.0)


def displaced_number(space: FockSpace, alpha: complex, n0: int) -> StateVector:
    """Return the displaced number state ``D(alpha) |n0>``.

    Raises:
        FockIndexError: if ``n0`` is outside ``0 .. dim - 1``.
    """
    if not 0 <= n0 < space.dim:
        _errors.raise_fock_index(n0, space.dim, what='n0')
    column = displacement_elements(space.dim, [alpha])[0][:, n0]
    return _finish('displaced_number', space, column, 1.0)


def _diagonal_state(family: str, space: FockSpace, weights: np.ndarray) -> DensityOperator:
    kept = float(np.sum(weights))
    if 1.0 - kept > _constants.TRUNCATION_TOL:
        _errors.warn_truncation(family, 1.0 - kept, space.dim, stacklevel=4)
    return DensityOperator(space, np.diag(weights / kept).astype(np.complex128))


def thermal(space: FockSpace, mean_n: float) -> DensityOperator:
    """Return the chaotic state ``(1 - q) sum_n q^n |n><n|`` with ``q = <n> / (1 + <n>)``.

    Raises:
        StateDomainError: if ``mean_n`` is negative.
    """
    if mean_n < 0:
        raise _errors.StateDomainError(f'thermal state needs mean_n >= 0, got {mean_n!r}')
    q = mean_n / (1 + mean_n)
    weights = (1 - q) * q ** space.levels.astype(np.float64)
    return _diagonal_state('thermal', space, weights)


def photon_added_thermal(space: FockSpace, mean_n: float) -> DensityOperator:
    """Return the single-photon-added chaotic state ``N a^dagger rho_ch a``.

    Its diagonal is ``(1 - q)^2 n q^(n - 1)`` where ``<n> = (1 + q) / (1 - q)``; ``<n> = 1``
    is the single-photon state.

    Raises:
        StateDomainError: if ``mean_n < 1``.
    """
    if mean_n < 1:
        raise _errors.StateDomainError(
            f'photon-added thermal state needs mean_n >= 1, got {mean_n!r}'
        )
    q = (mean_n - 1) / (mean_n + 1)
    n = space.levels.astype(np.float64)
    weights = np.zeros(space.dim)
    weights[1:] = (1 - q) ** 2 * n[1:] * q ** (n[1:] - 1)
    return _diagonal_state('photon_added_thermal', space, weights)


def parity_state(psi: StateVector, parity: Parity) -> StateVector:
    """Return ``psi`` projected onto one parity sector and renormalized.

    Raises:
        StateDomainError: if ``psi`` has no weight in that sector.
    """
    amplitudes = np.array(psi.amplitudes)
    amplitudes[(psi.space.levels % 2) != parity.offset] = 0
    return StateVector.normalized(psi.space, amplitudes)


def mixture(weights: Sequence[float], states: Sequence[StateLike]) -> DensityOperator:
    """Return ``sum_m p_m rho_m`` for probabilities ``p_m`` summing to one.

    Raises:
        ValueError: if the weights are negative, do not sum to one, or do not match the states.
        DimensionError: if the states live on different spaces.
    """
    if len(weights) != len(states) or not states:
        raise ValueError('need one weight per state, and at least one state')
    if min(weights) < 0 or abs(sum(weights) - 1) > _constants.TRACE_TOL:
        raise ValueError(f'mixture weights must be a probability vector, got {weights!r}')
    space = check_same_space(*states)
    total = sum(w * as_density(s).matrix for w, s in zip(weights, states))
    return DensityOperator(space, total)


def parity_split(state: StateLike) -> ParitySplit:
    """Return the weights of the even and odd photon-number sectors of ``state``."""
    if isinstance(state, StateVector):
        probabilities = state.probabilities()
    else:
        probabilities = state.diagonal()
    return ParitySplit.from_probabilities(
        float(np.sum(probabilities[0::2])), float(np.sum(probabilities[1::2]))
    )


def closed_form_parity(family: StateFamily | str, **params: typing.Any) -> ParitySplit:
    """Return the analytic parity weights of an untruncated state family.

    Supported families and parameters:

    - ``coherent``: ``alpha``.
    - ``cat``: ``alpha``, ``phi``.
    - ``thermal``: ``mean_n``.
    - ``photon_added_thermal``: ``mean_n`` (the ratio is ``(1 + q^2) / (2q)``).
    - ``squeezed``: ``alpha = 0`` only (squeezed vacuum is even).
    - ``displaced_number``: ``n0 = 0`` only (a coherent state).

    Raises:
        ValueError: for other families or parameter values without a compact closed form.
    """
    family = StateFamily(family)
    if family is StateFamily.COHERENT:
        return closed_form_parity(StateFamily.CAT, alpha=params['alpha'], phi=math.pi / 2)
    if family is StateFamily.CAT:
        damping = math.exp(-2 * abs(params['alpha']) ** 2)
        phi = float(params['phi'])
        denominator = 1 + math.cos(phi) * damping
        p_even = math.cos(phi / 2) ** 2 * (1 + damping) / denominator
        p_odd = math.sin(phi / 2) ** 2 * (1 - damping) / denominator
        return ParitySplit.from_probabilities(p_even, p_odd)
    if family is StateFamily.THERMAL:
        mean_n = float(params['mean_n'])
        return ParitySplit.from_probabilities(
            (1 + mean_n) / (1 + 2 * mean_n), mean_n / (1 + 2 * mean_n)
        )
    if family is StateFamily.PHOTON_ADDED_THERMAL:
        mean_n = float(params['mean_n'])
        if mean_n < 1:
            raise _errors.StateDomainError(f'mean_n must be >= 1, got {mean_n!r}')
        q = (mean_n - 1) / (mean_n + 1)
        return ParitySplit.from_probabilities(2 * q / (1 + q) ** 2, (1 + q**2) / (1 + q) ** 2)
    if family is StateFamily.SQUEEZED and params.get('alpha', 0) == 0:
        return ParitySplit.from_probabilities(1.0, 0.0)
    if family is StateFamily.DISPLACED_NUMBER and params.get('n0', 0) == 0:
        return closed_form_parity(StateFamily.COHERENT, alpha=params['alpha'])
    raise ValueError(f'no closed-form parity for {family.value} with {params!r}')


def make_initial(space: FockSpace, family: StateFamily | str, **params: typing.Any) -> StateLike:
    """Build an initial state by family name, as used by experiment configurations.

    Raises:
        ValueError: for an unknown family, or missing or unused parameters.
    """
    family = StateFamily(family)
    unused = set(params) - FAMILY_PARAMETERS[family]
    if unused:
        raise ValueError(f'{family.value} state does not take {", ".join(sorted(unused))}')
    try:
        if family is StateFamily.FOCK:
            return fock(space, int(params['m']))
        if family is StateFamily.COHERENT:
            return coherent(space, complex(params['alpha']))
        if family is StateFamily.CAT:
            return cat(space, complex(params['alpha']), float(params['phi']))
        if family is StateFamily.SQUEEZED:
            return squeezed(space, complex(params['alpha']), complex(params['xi']))
        if family is StateFamily.DISPLACED_NUMBER:
            return displaced_number(space, complex(params['alpha']), int(params['n0']))
        if family is StateFamily.THERMAL:
            return thermal(space, float(params['mean_n']))
        return photon_added_thermal(space, float(params['mean_n']))
    except KeyError as e:
        raise ValueError(f'{family.value} state needs parameter {e.args[0]!r}') from e
