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


from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from kerrlibs.blockade import (
    DispersiveLimitError,
    DispersiveLimitWarning,
    DissipationRates,
    FockSpace,
    ModelKind,
    ModelSpec,
    PhysicalParams,
    conserves_parity,
    dispersive_map,
    eigen_spectrum,
    hamiltonian,
    hamiltonian_kl,
    hamiltonian_usual,
    model,
    tune_to_resonance,
)


def test_model_presets_use_their_native_loss_channel():
    spec, rates = model('1', chi=30, delta=1 / 6, delta_prime=1 / 25)
    assert (spec.kind, spec.k, spec.l) == (ModelKind.KL, 0, 2)
    assert spec.epsilon == pytest.approx(5)
    assert rates.gamma2 == pytest.approx(0.2)
    assert rates.gamma1 == rates.gamma_perp == 0
    _, rates = model('3')
    assert rates.gamma1 > 0 and rates.gamma2 == 0
    spec, rates = model('3p')
    assert spec.kind is ModelKind.USUAL and rates.gamma2 > 0
    spec, rates = model('5')
    assert (spec.k, spec.l, rates.gamma2) == (0, 1, 0)
    spec, _ = model(' KL:4,7 ')
    assert spec.label == 'kl:4,7'


def test_model_rejects_unknown_names():
    with pytest.raises(ValueError, match='unknown model'):
        model('6')


def test_model_spec_validation():
    with pytest.raises(ValueError):
        ModelSpec(kind=ModelKind.KL, chi=0, epsilon=1)
    with pytest.raises(ValueError):
        ModelSpec(kind=ModelKind.KL, chi=1, epsilon=-1)
    with pytest.raises(ValueError):
        DissipationRates(gamma1=-0.1)


def test_model_spec_is_hashable_and_immutable(model1: tuple[ModelSpec, DissipationRates]):
    spec, rates = model1
    assert hash(spec) == hash(model('1')[0])
    with pytest.raises(dataclasses.FrozenInstanceError):
        spec.chi = 2  # pyright: ignore[reportAttributeAccessIssue]
    assert rates.total == pytest.approx(1 / 150)


@pytest.mark.parametrize(
    ('name', 'parity'),
    (('1', True), ('2', True), ('kl:0,4', True), ('3', False), ('3p', False), ('5', False)),
)
def test_conserves_parity(name: str, parity: bool):
    assert conserves_parity(*model(name)) is parity


def test_dephasing_keeps_parity():
    spec, rates = model('1', gamma_perp=0.1)
    assert conserves_parity(spec, rates)


def test_eigen_spectrum_of_model_1(space6: FockSpace):
    spec = ModelSpec(kind=ModelKind.KL, chi=1, epsilon=0.5, k=0, l=2)
    assert eigen_spectrum(space6, spec).tolist() == [0, -1, 0, 3, 8, 15]


def test_eigen_spectrum_degeneracies_of_model_2(space6: FockSpace):
    spec = ModelSpec(kind=ModelKind.KL, chi=1, epsilon=0.5, k=1, l=3)
    energies = eigen_spectrum(space6, spec)
    assert energies[1] == energies[3] == 0
    assert energies[0] == energies[4] == 3


def test_detuning_and_offset_enter_the_diagonal(space6: FockSpace):
    spec = ModelSpec(kind=ModelKind.KL, chi=1, epsilon=0, omega_tune=0.5, sigma_tune=2)
    assert eigen_spectrum(space6, spec)[:3].tolist() == [2, 1.5, 3]


def test_kl_hamiltonian_couples_pairs(space6: FockSpace):
    spec = ModelSpec(kind=ModelKind.KL, chi=1, epsilon=0.25)
    h = hamiltonian_kl(space6, spec).matrix
    assert h[2, 0] == pytest.approx(0.25 * math.sqrt(2))
    assert h[4, 2] == pytest.approx(0.25 * math.sqrt(12))
    assert h[1, 0] == 0
    np.testing.assert_allclose(h, h.conj().T)


def test_usual_hamiltonians(space6: FockSpace):
    spec = ModelSpec(kind=ModelKind.USUAL, chi=1, epsilon=0.25)
    h = hamiltonian(space6, spec).matrix
    assert h[1, 0] == pytest.approx(0.25)
    assert np.diag(h).real.tolist() == [0, 0, 2, 6, 12, 20]
    prime = hamiltonian_usual(space6, spec, ModelKind.USUAL_PRIME).matrix
    assert np.diag(prime).real.tolist() == [0, -1, 0, 3, 8, 15]
    with pytest.raises(ValueError):
        hamiltonian_kl(space6, spec)
    with pytest.raises(ValueError):
        hamiltonian_usual(space6, spec, ModelKind.KL)


def test_dispersive_map_coefficients():
    raw = PhysicalParams(omega_cav=10, omega_q=12, g=0.1, omega_d=20, epsilon0=0.01)
    params = dispersive_map(raw, 0, 2)
    lam = 0.05
    assert params.lam == pytest.approx(lam)
    assert params.chi == pytest.approx(-0.1 * lam**3)
    assert params.eta == pytest.approx(-0.1 * lam * (1 - lam**2))
    assert params.epsilon == pytest.approx((1 + lam**2) * 0.01)
    assert params.omega_kl == pytest.approx(10 + 3 * params.chi - params.eta - 10)
    assert params.sigma_kl == pytest.approx((12 - params.eta) / 2)
    excited = dispersive_map(raw, 0, 2, qubit_excited=True)
    assert excited.epsilon == pytest.approx((1 - lam**2) * 0.01)


@pytest.mark.parametrize(
    ('omega_q', 'g'),
    ((10.0, 0.1), (12.0, 0.0), (10.5, 0.2)),
)
def test_dispersive_map_rejects_non_dispersive_parameters(omega_q: float, g: float):
    raw = PhysicalParams(omega_cav=10, omega_q=omega_q, g=g, omega_d=20, epsilon0=0.01)
    with pytest.raises(DispersiveLimitError):
        dispersive_map(raw, 0, 2)


def test_dispersive_map_warns_near_its_limit():
    raw = PhysicalParams(omega_cav=10, omega_q=11, g=0.2, omega_d=20, epsilon0=0.01)
    with pytest.warns(DispersiveLimitWarning):
        dispersive_map(raw, 0, 2)


def test_tune_to_resonance_zeroes_the_detunings():
    raw = PhysicalParams(omega_cav=1.0, omega_q=0.0, g=0.05, omega_d=0.0, epsilon0=1e-4)
    params = tune_to_resonance(raw, 0, 2)
    assert abs(params.omega_kl) < 1e-8
    assert abs(params.sigma_kl) < 1e-8
    assert params.chi > 0
    spec = params.to_spec()
    assert (spec.kind, spec.k, spec.l) == (ModelKind.KL, 0, 2)
