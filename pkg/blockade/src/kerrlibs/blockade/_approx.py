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

"""Closed-form steady states and Rabi solutions of the blockade models.

The steady states are series in ``delta = epsilon / chi`` and ``delta' = gamma / epsilon`` kept
to second order, for ``kl:0,2`` (model 1) and ``kl:1,3`` (model 2) with two-photon loss.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import types
import typing
import warnings

import numpy as np
from scipy import linalg

from . import _constants, _errors, _model
from ._fock import DensityOperator, FockSpace, StateVector, embed_block
from ._states import Parity, fock, parity_split

if typing.TYPE_CHECKING:
    from collections.abc import Mapping

    from ._fock import StateLike

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)
SQRT6 = math.sqrt(6)


class ApproxModel(str, enum.Enum):
    MODEL1 = '1'
    MODEL2 = '2'
    USUAL = 'usual'


@dataclasses.dataclass(frozen=True)
class ApproxCoefficients:
    """Named matrix elements of a series steady state.

    Even sector slots: ``p, q, r`` (and ``s`` for model 2) on ``|0>, |2>, |4>`` (``|6>``);
    ``a + ib`` at ``<0|.|2>``, ``c + id`` at ``<0|.|4>``, ``e + if`` at ``<2|.|4>``.
    Odd sector slots: ``p`` and ``1 - p`` on ``|1>, |3>``; ``a + ib`` at ``<1|.|3>``.
    """

    model_id: ApproxModel
    parity: Parity
    delta: float
    delta_prime: float
    values: Mapping[str, float]
    exact: bool = True

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def diagonal(self) -> dict[int, float]:
        """Return the populations by photon number."""
        v = self.values
        if self.parity is Parity.ODD:
            return {1: v['p'], 3: 1 - v['p']}
        out = {0: v['p'], 2: v['q'], 4: v['r']}
        if 's' in v:
            out[6] = v['s']
        return out


def _model1_even(d: float, dp: float) -> dict[str, float]:
    p = 1 / 2 - 9 / 32 * d**2 + 1 / 8 * dp**2
    r = 3 / 32 * d**2
    return {
        'p': p,
        'q': 1 - p - r,
        'r': r,
        'a': -3 / 8 * SQRT2 * d,
        'b': 1 / 4 * SQRT2 * dp,
        'c': 5 / 64 * SQRT6 * d**2,
        'd': -1 / 16 * SQRT6 * d * dp,
        'e': -1 / 8 * SQRT3 * d,
        'f': 0.0,
    }


def _model2_even(d: float) -> dict[str, float]:
    # evaluated on the delta = delta' line
    p = 25 / 32 - 107 / 512 * d**2
    q = 3 / 16 + 15 / 128 * d**2
    s = 5 / 768 * d**2
    return {
        'p': p,
        'q': q,
        'r': 1 - p - q - s,
        's': s,
        'a': 19 / 128 * SQRT2 * d,
        'b': 3 / 32 * SQRT2 * d,
        'c': -37 / 4608 * SQRT6 * d**2,
        'd': 1 / 16 * SQRT6 - 49 / 768 * SQRT6 * d**2,
        'e': -5 / 64 * SQRT3 * d,
        'f': 1 / 32 * SQRT3 * d,
    }


def _model1_odd(d: float, dp: float, exact: bool) -> dict[str, float]:
    if not exact:
        return {'p': 1 - 3 / 8 * d**2, 'a': -SQRT6 / 4 * d, 'b': 3 / 16 * SQRT6 * d**2 * dp}
    m = 16 + 12 * d**2 + 9 * d**2 * dp**2  # M / chi**2
    return {'p': 1 - 6 * d**2 / m, 'a': -4 * SQRT6 * d / m, 'b': 3 * SQRT6 * d**2 * dp / m}


def _model2_odd(dp: float, exact: bool) -> dict[str, float]:
    if not exact:
        return {'p': 0.5, 'a': 0.0, 'b': SQRT6 / 4 * dp}
    m = 4 + 3 * dp**2  # M / epsilon**2
    return {'p': 1 - 2 / m, 'a': 0.0, 'b': SQRT6 * dp / m}


def _check_domain(model_id: ApproxModel, parity: Parity, delta: float, delta_prime: float) -> None:
    if max(delta, delta_prime) > _constants.APPROX_DOMAIN:
        warnings.warn(
            f'series steady state at delta={delta:.4g}, delta_prime={delta_prime:.4g} is outside'
            f' delta, delta_prime <= {_constants.APPROX_DOMAIN}',
            _errors.ApproximationDomainWarning,
            stacklevel=3,
        )
    if (
        model_id is ApproxModel.MODEL2
        and parity is Parity.EVEN
        and not math.isclose(delta, delta_prime, rel_tol=1e-9)
    ):
        warnings.warn(
            'model 2 even-sector coefficients assume delta = delta_prime; using delta',
            _errors.ApproximationDomainWarning,
            stacklevel=3,
        )


def _series_model(model_id: ApproxModel | str) -> ApproxModel:
    model_id = ApproxModel(model_id)
    if model_id is ApproxModel.USUAL:
        raise ValueError('series steady states exist only for models 1 and 2')
    return model_id


def approx_coefficients(
    model_id: ApproxModel | str,
    parity: Parity | str,
    delta: float = _constants.DEFAULT_DELTA,
    delta_prime: float = _constants.DEFAULT_DELTA_PRIME,
    *,
    exact: bool = True,
) -> ApproxCoefficients:
    """Return the series coefficients of a sector steady state.

    For the odd sectors ``exact=True`` (the default) uses the closed forms before expansion,
    ``p = 1 - 6 eps**2 / M`` with ``M = 16 chi**2 + 12 eps**2 + 9 gamma**2`` for model 1 and
    ``p = 1 - 2 eps**2 / M`` with ``M = 4 eps**2 + 3 gamma**2`` for model 2; ``exact=False``
    gives their leading orders. The even sectors only have series forms.

    Warns:
        ApproximationDomainWarning: if ``delta`` or ``delta_prime`` exceeds 1/4, or for
            model 2's even sector when ``delta != delta_prime``.

    Raises:
        ValueError: for a model without series coefficients.
    """
    model = _series_model(model_id)
    parity = Parity(parity)
    _check_domain(model, parity, delta, delta_prime)
    if model is ApproxModel.MODEL1:
        if parity is Parity.EVEN:
            values = _model1_even(delta, delta_prime)
        else:
            values = _model1_odd(delta, delta_prime, exact)
    elif parity is Parity.EVEN:
        values = _model2_even(delta)
    else:
        values = _model2_odd(delta_prime, exact)
    return ApproxCoefficients(
        model_id=model,
        parity=parity,
        delta=delta,
        delta_prime=delta_prime,
        values=types.MappingProxyType(values),
        exact=exact,
    )


def _block(coefficients: ApproxCoefficients) -> np.ndarray:
    v = coefficients.values
    if coefficients.parity is Parity.ODD:
        block = np.zeros((4, 4), dtype=np.complex128)
        block[1, 1] = v['p']
        block[3, 3] = 1 - v['p']
        block[1, 3] = v['a'] + 1j * v['b']
    else:
        block = np.zeros((8, 8), dtype=np.complex128)
        for n, weight in coefficients.diagonal().items():
            block[n, n] = weight
        block[0, 2] = v['a'] + 1j * v['b']
        block[0, 4] = v['c'] + 1j * v['d']
        block[2, 4] = v['e'] + 1j * v['f']
    upper = np.triu(block, k=1)
    return block + upper.conj().T


def approx_steady(
    model_id: ApproxModel | str,
    parity: Parity | str,
    delta: float = _constants.DEFAULT_DELTA,
    delta_prime: float = _constants.DEFAULT_DELTA_PRIME,
    space: FockSpace | None = None,
    *,
    exact: bool = True,
) -> DensityOperator:
    """Return the series steady state of one parity sector as a density operator.

    Only the slots listed in :class:`ApproxCoefficients` are filled. The block is embedded in
    ``space`` (default ``dim = 100``); levels beyond a smaller truncation are dropped and the
    trace restored.
    """
    space = FockSpace() if space is None else space
    coefficients = approx_coefficients(model_id, parity, delta, delta_prime, exact=exact)
    return DensityOperator.from_matrix(space, embed_block(space, _block(coefficients)))


def approx_mixture(
    model_id: ApproxModel | str,
    rho0: StateLike,
    delta: float = _constants.DEFAULT_DELTA,
    delta_prime: float = _constants.DEFAULT_DELTA_PRIME,
    space: FockSpace | None = None,
) -> DensityOperator:
    """Return ``p_even(rho0) approx_even + p_odd(rho0) approx_odd``.

    The result lives on ``rho0``'s space unless ``space`` is given.
    """
    space = rho0.space if space is None else space
    split = parity_split(rho0)
    total = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for parity in Parity:
        weight = split.weight(parity)
        if weight > 0:
            sector = approx_steady(model_id, parity, delta, delta_prime, space)
            total += weight * sector.matrix
    return DensityOperator(space, total)


##########################
# Rabi solutions         #
##########################

_PARTNERS: dict[ApproxModel, dict[int, int]] = {
    ApproxModel.MODEL1: {0: 2, 2: 0},
    ApproxModel.MODEL2: {0: 4, 4: 0, 1: 3, 3: 1},
    ApproxModel.USUAL: {0: 1, 1: 0},
}


def rabi_partner(model_id: ApproxModel | str, m: int) -> int | None:
    """Return the level that ``|m>`` exchanges population with, or None if ``|m>`` stays put."""
    return _PARTNERS[ApproxModel(model_id)].get(m)


def rabi_frequency(model_id: ApproxModel | str, m: int, epsilon: float) -> float:
    """Return the angular frequency of the amplitudes, half that of the populations.

    ``sqrt(2) eps`` for model 1, ``sqrt(6) eps`` (``|1> <-> |3>``) and ``eps / 5``
    (``|0> <-> |4>``, at ``eps / chi = 1/6``) for model 2, ``eps`` for the usual blockade;
    zero for a frozen level.
    """
    model = ApproxModel(model_id)
    partner = rabi_partner(model, m)
    if partner is None:
        return 0.0
    if model is ApproxModel.MODEL1:
        return SQRT2 * epsilon
    if model is ApproxModel.MODEL2:
        return SQRT6 * epsilon if {m, partner} == {1, 3} else epsilon / 5
    return epsilon


def rabi_solution(
    model_id: ApproxModel | str,
    initial_m: int,
    epsilon: float,
    t: float,
    space: FockSpace | None = None,
    *,
    chi: float | None = None,
) -> StateVector:
    """Return the lossless two-level solution ``cos(w t)|m> - i sin(w t)|partner>``.

    For an initial level outside the model's resonant pairs (:func:`rabi_partner` is None) the
    state stays ``|m>``.

    With ``chi`` given, the pair is instead dressed by the off-resonant levels: it evolves under
    the effective Hamiltonian ``H_PP + H_PQ (E - H_QQ)^-1 H_QP`` (Stark shifts and the
    second-order ``|0> <-> |4>`` coupling included), and carries the small admixture of the other
    levels, including its fast oscillation out of the bare initial state.

    Raises:
        FockIndexError: if ``initial_m`` or its partner lies outside ``space`` (default
            ``dim = 100``).
    """
    space = FockSpace() if space is None else space
    start = fock(space, initial_m)
    partner = rabi_partner(model_id, initial_m)
    if partner is None:
        return start
    end = fock(space, partner)
    if chi is not None:
        return _dressed_rabi(ApproxModel(model_id), initial_m, partner, epsilon, chi, t, space)
    angle = rabi_frequency(model_id, initial_m, epsilon) * t
    amplitudes = math.cos(angle) * start.amplitudes - 1j * math.sin(angle) * end.amplitudes
    return StateVector(space, amplitudes)


_PRESET_OF: dict[ApproxModel, str] = {
    ApproxModel.MODEL1: '1',
    ApproxModel.MODEL2: '2',
    ApproxModel.USUAL: '3',
}


def _partition(
    h_pp: np.ndarray, h_qp: np.ndarray, h_qq: np.ndarray, energy: float
) -> tuple[np.ndarray, np.ndarray]:
    resolvent = np.linalg.inv(energy * np.eye(len(h_qq)) - h_qq)
    effective = h_pp + h_qp.conj().T @ resolvent @ h_qp
    return resolvent, (effective + effective.conj().T) / 2


def _dressed_rabi(
    model_id: ApproxModel,
    m: int,
    partner: int,
    epsilon: float,
    chi: float,
    t: float,
    space: FockSpace,
) -> StateVector:
    spec, _ = _model.model(_PRESET_OF[model_id], chi=chi, delta=epsilon / chi, delta_prime=0)
    H = _model.hamiltonian(space, spec).matrix
    pair = np.array([m, partner])
    rest = np.setdiff1d(np.arange(space.dim), pair)
    h_pp = H[np.ix_(pair, pair)]
    h_qp = H[np.ix_(rest, pair)]
    h_qq = H[np.ix_(rest, rest)]
    # resolvent taken at the Stark-shifted energy of the degenerate pair
    energy = float(H[m, m].real)
    resolvent, effective = _partition(h_pp, h_qp, h_qq, energy)
    for _ in range(2):
        energy = float(np.trace(effective).real) / 2
        resolvent, effective = _partition(h_pp, h_qp, h_qq, energy)
    admixture = resolvent @ h_qp
    c0 = np.array([1, 0], dtype=complex)
    c = linalg.expm(-1j * t * effective) @ c0
    amplitudes = np.zeros(space.dim, dtype=complex)
    amplitudes[pair] = c
    amplitudes[rest] = admixture @ c - linalg.expm(-1j * t * h_qq) @ (admixture @ c0)
    return StateVector.normalized(space, amplitudes)
