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

"""Driven Kerr Hamiltonians, their dissipation presets, and the dispersive parameter map."""

from __future__ import annotations

import dataclasses
import enum
import logging
import re
import typing
import warnings

import numpy as np
from scipy import optimize

from . import _constants, _errors
from ._fock import FockSpace, OperatorMatrix, lowering_array

if typing.TYPE_CHECKING:
    from ._types import FloatArray

logger = logging.getLogger(__name__)


class ModelKind(str, enum.Enum):
    """Hamiltonian families.

    - ``KL``: ``Omega n + chi (n - k)(n - l) + epsilon (a^2 + a^dagger^2) + Sigma``.
    - ``USUAL``: ``chi n (n - 1) + epsilon (a + a^dagger)``.
    - ``USUAL_PRIME``: ``chi n (n - 2) + epsilon (a + a^dagger)``.
    """

    KL = 'kl'
    USUAL = 'usual'
    USUAL_PRIME = 'usual_prime'


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    """Which Hamiltonian to build, and its couplings in frequency units.

    ``k`` and ``l`` only matter for :attr:`ModelKind.KL`. ``omega_tune`` and ``sigma_tune`` are
    the detuning ``Omega`` (coefficient of ``n``) and the constant offset ``Sigma``; both are
    zero at resonance. The single-photon-drive families accept them too, so detuning scans work
    for every kind.

    Raises:
        ValueError: if ``chi <= 0``, ``epsilon < 0`` or ``k, l < 0``.
    """

    kind: ModelKind
    chi: float
    epsilon: float
    k: int = 0
    l: int = 2  # noqa: E741
    omega_tune: float = 0.0
    sigma_tune: float = 0.0

    def __post_init__(self) -> None:
        if not self.chi > 0:
            raise ValueError(f'chi must be positive, got {self.chi!r}')
        if not self.epsilon >= 0:
            raise ValueError(f'epsilon must be non-negative, got {self.epsilon!r}')
        if self.k < 0 or self.l < 0:
            raise ValueError(f'k and l must be non-negative, got k={self.k}, l={self.l}')

    @property
    def delta(self) -> float:
        """``epsilon / chi``."""
        return self.epsilon / self.chi

    @property
    def label(self) -> str:
        if self.kind is ModelKind.KL:
            return f'kl:{self.k},{self.l}'
        return self.kind.value

    def replace(self, **changes: typing.Any) -> ModelSpec:
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class DissipationRates:
    """Zero-temperature loss rates.

    Attributes:
        gamma2: two-photon absorption, jump operator ``a^2``.
        gamma1: single-photon absorption, jump operator ``a``.
        gamma_perp: pure dephasing, jump operator ``a^dagger a``.

    Raises:
        ValueError: if any rate is negative.
    """

    gamma2: float = 0.0
    gamma1: float = 0.0
    gamma_perp: float = 0.0

    def __post_init__(self) -> None:
        for name in ('gamma2', 'gamma1', 'gamma_perp'):
            if not getattr(self, name) >= 0:
                raise ValueError(f'{name} must be non-negative, got {getattr(self, name)!r}')

    @property
    def total(self) -> float:
        return self.gamma2 + self.gamma1 + self.gamma_perp


##########################
# presets                #
##########################

_KL_NAME = re.compile(r'^kl:(\d+),(\d+)$')

_PRESETS: dict[str, tuple[ModelKind, int, int, str]] = {
    '1': (ModelKind.KL, 0, 2, 'gamma2'),
    '2': (ModelKind.KL, 1, 3, 'gamma2'),
    '3': (ModelKind.USUAL, 0, 0, 'gamma1'),
    '3p': (ModelKind.USUAL, 0, 0, 'gamma2'),
    '4': (ModelKind.USUAL_PRIME, 0, 0, 'gamma1'),
    '5': (ModelKind.KL, 0, 1, 'gamma1'),
}
MODEL_NAMES = (*_PRESETS, 'kl:K,L')


def model(
    name: str,
    chi: float = 1.0,
    delta: float = _constants.DEFAULT_DELTA,
    delta_prime: float = _constants.DEFAULT_DELTA_PRIME,
    *,
    gamma_perp: float = 0.0,
) -> tuple[ModelSpec, DissipationRates]:
    """Return a named model with ``epsilon = delta chi`` and loss rate ``gamma = delta' epsilon``.

    Names are ``'1'`` (``kl:0,2``), ``'2'`` (``kl:1,3``), ``'3'`` (usual, single-photon loss),
    ``'3p'`` (usual, two-photon loss), ``'4'`` (usual prime, single-photon loss), ``'5'``
    (``kl:0,1``, single-photon loss) and ``'kl:K,L'`` (two-photon loss).

    Raises:
        ValueError: for an unknown name.
    """
    epsilon = delta * chi
    gamma = delta_prime * epsilon
    name = name.strip().lower()
    if match := _KL_NAME.match(name):
        kind, k, l, channel = ModelKind.KL, int(match[1]), int(match[2]), 'gamma2'  # noqa: E741
    elif name in _PRESETS:
        kind, k, l, channel = _PRESETS[name]  # noqa: E741
    else:
        raise ValueError(f'unknown model {name!r}; expected one of {", ".join(MODEL_NAMES)}')
    spec = ModelSpec(kind=kind, chi=chi, epsilon=epsilon, k=k, l=l)
    rates = DissipationRates(gamma_perp=gamma_perp, **{channel: gamma})
    return spec, rates


def conserves_parity(spec: ModelSpec, rates: DissipationRates) -> bool:
    """Whether photon-number parity is a constant of motion.

    True when the drive moves photons in pairs and there is no single-photon loss; dephasing
    leaves parity untouched.
    """
    return spec.kind is ModelKind.KL and rates.gamma1 == 0


##########################
# Hamiltonians           #
##########################


def _diagonal(space: FockSpace, spec: ModelSpec) -> FloatArray:
    n = space.levels.astype(np.float64)
    if spec.kind is ModelKind.KL:
        kerr = spec.chi * (n - spec.k) * (n - spec.l)
    elif spec.kind is ModelKind.USUAL:
        kerr = spec.chi * n * (n - 1)
    else:
        kerr = spec.chi * n * (n - 2)
    return spec.omega_tune * n + kerr + spec.sigma_tune


def hamiltonian_kl(space: FockSpace, spec: ModelSpec) -> OperatorMatrix:
    """Return ``Omega n + chi (n - k)(n - l) + epsilon (a^2 + a^dagger^2) + Sigma``.

    Raises:
        ValueError: if ``spec`` is not a ``KL`` model.
    """
    if spec.kind is not ModelKind.KL:
        raise ValueError(f'hamiltonian_kl needs a kl model, got {spec.kind.value}')
    a = lowering_array(space.dim)
    a2 = a @ a
    matrix = np.diag(_diagonal(space, spec)).astype(np.complex128)
    matrix += spec.epsilon * (a2 + a2.T)
    return OperatorMatrix(space, matrix, hermitian=True)


def hamiltonian_usual(
    space: FockSpace, spec: ModelSpec, variant: ModelKind | None = None
) -> OperatorMatrix:
    """Return the single-photon-driven Kerr Hamiltonian ``chi n (n - c) + epsilon (a + a^dagger)``.

    ``c = 1`` for :attr:`ModelKind.USUAL` and ``c = 2`` for :attr:`ModelKind.USUAL_PRIME`.
    ``variant`` overrides ``spec.kind``.
    """
    variant = spec.kind if variant is None else variant
    if variant is ModelKind.KL:
        raise ValueError('hamiltonian_usual needs the usual or usual_prime variant')
    a = lowering_array(space.dim)
    matrix = np.diag(_diagonal(space, spec.replace(kind=variant))).astype(np.complex128)
    matrix += spec.epsilon * (a + a.T)
    return OperatorMatrix(space, matrix, hermitian=True)


def hamiltonian(space: FockSpace, spec: ModelSpec) -> OperatorMatrix:
    """Return the Hamiltonian of any model kind."""
    if spec.kind is ModelKind.KL:
        return hamiltonian_kl(space, spec)
    return hamiltonian_usual(space, spec)


def eigen_spectrum(space: FockSpace, spec: ModelSpec) -> FloatArray:
    """Return the undriven level energies ``E_n``, indexed by photon number.

    Degenerate pairs of levels are the ones a weak drive couples resonantly.
    """
    return _diagonal(space, spec)


##########################
# dispersive map         #
##########################


@dataclasses.dataclass(frozen=True)
class PhysicalParams:
    """Jaynes-Cummings cavity, qubit and drive parameters, all in the same frequency units."""

    omega_cav: float
    omega_q: float
    g: float
    omega_d: float
    epsilon0: float


@dataclasses.dataclass(frozen=True)
class DispersiveParams:
    """Effective Kerr parameters obtained from :class:`PhysicalParams` in the dispersive limit.

    The expansion keeps the leading order in ``lambda = g / Delta``; corrections of order
    ``lambda**4`` are dropped.
    """

    raw: PhysicalParams
    k: int
    l: int  # noqa: E741
    lam: float
    eta: float
    chi: float
    epsilon: float
    omega_kl: float
    sigma_kl: float
    qubit_excited: bool = False

    def to_spec(self) -> ModelSpec:
        """Return the ``kl:k,l`` model with these couplings and detunings.

        Raises:
            ValueError: if ``chi <= 0`` (a cavity below the qubit frequency).
        """
        return ModelSpec(
            kind=ModelKind.KL,
            chi=self.chi,
            epsilon=self.epsilon,
            k=self.k,
            l=self.l,
            omega_tune=self.omega_kl,
            sigma_tune=self.sigma_kl,
        )


def dispersive_map(
    raw: PhysicalParams, k: int, l: int, *, qubit_excited: bool = False  # noqa: E741
) -> DispersiveParams:
    """Map Jaynes-Cummings parameters to the effective Kerr model ``kl:k,l``.

    With ``Delta = omega_q - omega_cav`` and ``lambda = g / Delta``:
    ``chi = -g lambda**3``, ``eta = -g lambda (1 - lambda**2)``,
    ``epsilon = (1 + lambda**2) epsilon0`` (``1 - lambda**2`` with ``qubit_excited``),
    ``Omega_kl = omega_cav + (k + l + 1) chi - eta - omega_d / 2`` and
    ``Sigma_kl = (omega_q - 2 k l chi - eta) / 2``.

    Raises:
        DispersiveLimitError: if ``Delta = 0``, ``g = 0`` or ``|lambda| > 0.3``.
    """
    detuning = raw.omega_q - raw.omega_cav
    if detuning == 0:
        raise _errors.DispersiveLimitError('qubit and cavity are resonant (Delta = 0)')
    if raw.g == 0:
        raise _errors.DispersiveLimitError('g = 0 gives no Kerr nonlinearity')
    lam = raw.g / detuning
    if abs(lam) > _constants.LAMBDA_MAX:
        raise _errors.DispersiveLimitError(
            f'|g / Delta| = {abs(lam):.3g} exceeds {_constants.LAMBDA_MAX}'
        )
    if abs(lam) > _constants.LAMBDA_WARN:
        warnings.warn(
            f'|g / Delta| = {abs(lam):.3g} is not small; higher orders are neglected',
            _errors.DispersiveLimitWarning,
            stacklevel=2,
        )
    chi = -raw.g * lam**3
    eta = -raw.g * lam * (1 - lam**2)
    sign = -1 if qubit_excited else 1
    return DispersiveParams(
        raw=raw,
        k=k,
        l=l,
        lam=lam,
        eta=eta,
        chi=chi,
        epsilon=(1 + sign * lam**2) * raw.epsilon0,
        omega_kl=raw.omega_cav + (k + l + 1) * chi - eta - raw.omega_d / 2,
        sigma_kl=(raw.omega_q - 2 * k * l * chi - eta) / 2,
        qubit_excited=qubit_excited,
    )


def tune_to_resonance(
    raw: PhysicalParams, k: int, l: int, *, qubit_excited: bool = False  # noqa: E741
) -> DispersiveParams:
    """Choose ``omega_q`` and ``omega_d`` so that ``Omega_kl = Sigma_kl = 0``.

    ``Sigma_kl = 0`` is a scalar equation in ``omega_q`` (through ``chi`` and ``eta``), solved
    from the guess ``g**2 / omega_cav``; ``omega_d`` then follows in closed form. The cavity
    frequency, coupling and drive amplitude of ``raw`` are kept.

    Raises:
        DispersiveLimitError: if the solution leaves the dispersive regime.
        SolverError: if the root search does not converge.
    """

    def sigma(omega_q: float) -> float:
        lam = raw.g / (omega_q - raw.omega_cav)
        chi = -raw.g * lam**3
        eta = -raw.g * lam * (1 - lam**2)
        return omega_q - 2 * k * l * chi - eta

    guess = raw.g**2 / raw.omega_cav
    try:
        result = optimize.root_scalar(sigma, x0=guess, x1=1.01 * guess + 1e-12, method='secant')
    except (ZeroDivisionError, FloatingPointError) as e:
        _errors.raise_solver_failure('resonance condition has no root near g**2 / omega_cav', e)
    if not result.converged:
        _errors.raise_solver_failure(f'resonance search did not converge: {result.flag}')
    omega_q = float(result.root)
    partial = dispersive_map(
        dataclasses.replace(raw, omega_q=omega_q, omega_d=0.0), k, l, qubit_excited=qubit_excited
    )
    omega_d = 2 * (raw.omega_cav + (k + l + 1) * partial.chi - partial.eta)
    logger.debug('tuned kl:%d,%d to omega_q=%.12g, omega_d=%.12g', k, l, omega_q, omega_d)
    return dispersive_map(
        dataclasses.replace(raw, omega_q=omega_q, omega_d=omega_d),
        k,
        l,
        qubit_excited=qubit_excited,
    )
