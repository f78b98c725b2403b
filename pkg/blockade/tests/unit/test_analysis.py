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

import math

import numpy as np
import pytest

from kerrlibs.blockade import (
    FockIndexError,
    FockSpace,
    GridExtentWarning,
    Parity,
    blockade_fidelity,
    coherent,
    fock,
    mean_photon,
    model,
    oscillation_frequency,
    parity_ratio,
    photon_probabilities,
    steady_state_sector,
    wigner,
    wigner_at,
    wigner_integral,
)


def test_photon_probabilities_of_pure_and_mixed_states_agree():
    psi = coherent(FockSpace(20), 0.6 + 0.2j)
    np.testing.assert_allclose(photon_probabilities(psi), photon_probabilities(psi.projector()))


def test_blockade_fidelity(space6: FockSpace):
    assert blockade_fidelity(fock(space6, 2), (0, 2)) == 1
    assert blockade_fidelity(fock(space6, 1), (0, 2)) == 0
    assert blockade_fidelity(fock(space6, 1), [1, 1]) == 1
    with pytest.raises(FockIndexError):
        blockade_fidelity(fock(space6, 0), (0, 6))


def test_mean_photon_and_parity_ratio(space6: FockSpace):
    assert mean_photon(fock(space6, 4)) == 4
    assert parity_ratio(fock(space6, 1)) == math.inf
    assert parity_ratio(fock(space6, 2)) == 0


@pytest.mark.parametrize(('n', 'value'), ((0, 1 / math.pi), (1, -1 / math.pi), (2, 1 / math.pi)))
def test_wigner_of_number_states_at_the_origin(space6: FockSpace, n: int, value: float):
    assert wigner_at(fock(space6, n), 0, 0) == pytest.approx(value, abs=1e-8)


def test_wigner_of_a_coherent_state_is_a_gaussian():
    alpha = 1.0 + 0.5j
    psi = coherent(FockSpace(30), alpha)
    q0, p0 = math.sqrt(2) * alpha.real, math.sqrt(2) * alpha.imag
    for q, p in ((q0, p0), (q0 + 0.3, p0 - 0.7), (0.0, 0.0)):
        expected = math.exp(-((q - q0) ** 2) - (p - p0) ** 2) / math.pi
        assert wigner_at(psi, q, p) == pytest.approx(expected, abs=1e-10)


def test_wigner_grid_is_normalized_and_bounded():
    grid = wigner(coherent(FockSpace(30), 1.0 + 0j))
    assert grid.values.shape == (101, 101)
    assert wigner_integral(grid) == pytest.approx(1, abs=1e-3)
    assert np.max(np.abs(grid.values)) <= 1 / math.pi + 1e-10


def test_wigner_grid_indexing():
    alpha = 1.5 + 0j
    q_axis = np.linspace(-4, 4, 9)
    p_axis = np.linspace(-3, 3, 7)
    grid = wigner(coherent(FockSpace(30), alpha), q_axis, p_axis)
    assert grid.values.shape == (9, 7)
    assert grid.values[5, 3] == pytest.approx(wigner_at(coherent(FockSpace(30), alpha), 1, 0))
    assert grid.step == (1.0, 1.0)
    assert grid.at_origin() == pytest.approx(grid.values[4, 3])


def test_wigner_rows_can_run_in_threads():
    rho = coherent(FockSpace(20), 0.5 - 0.5j)
    axis = np.linspace(-3, 3, 13)
    serial = wigner(rho, axis, axis)
    threaded = wigner(rho, axis, axis, workers=3)
    np.testing.assert_array_equal(serial.values, threaded.values)


def test_wigner_warns_when_the_grid_is_too_small():
    with pytest.warns(GridExtentWarning, match='half-width'):
        wigner(coherent(FockSpace(40), 3.0 + 0j), np.linspace(-2, 2, 5), np.linspace(-2, 2, 5))


def test_model_1_odd_steady_state_is_negative_at_the_origin():
    rho = steady_state_sector(*model('1'), Parity.ODD, FockSpace(30))
    axis = np.linspace(-4, 4, 41)
    grid = wigner(rho, axis, axis)
    assert np.min(grid.values) < -0.25
    assert grid.at_origin() < -0.25


@pytest.mark.parametrize('name', ('1', '2'))
def test_even_steady_states_are_inversion_symmetric(name: str):
    spec, rates = model(name)
    rho = steady_state_sector(spec, rates, Parity.EVEN, FockSpace(20))
    axis = np.linspace(-4, 4, 17)
    values = wigner(rho, axis, axis).values
    np.testing.assert_allclose(values, values[::-1, ::-1], atol=1e-10)


def test_even_steady_states_stay_in_the_blockade_manifold():
    space = FockSpace(30)
    spec, rates = model('1')
    even1 = steady_state_sector(spec, rates, Parity.EVEN, space)
    assert blockade_fidelity(even1, {0, 2}) == pytest.approx(0.997, abs=1e-3)
    spec, rates = model('2')
    even2 = steady_state_sector(spec, rates, Parity.EVEN, space)
    assert blockade_fidelity(even2, {0, 2, 4}) >= 0.99


def test_oscillation_frequency_from_the_maxima():
    times = np.linspace(0, 10, 2001)
    assert oscillation_frequency(times, np.cos(3 * times) ** 2) == pytest.approx(6, rel=2e-3)
    with pytest.raises(ValueError, match='three maxima'):
        oscillation_frequency(times[:300], np.cos(3 * times[:300]) ** 2)
