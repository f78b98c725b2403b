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
    ApproximationDomainWarning,
    FockSpace,
    Parity,
    approx_coefficients,
    approx_mixture,
    approx_steady,
    coherent,
    evolve,
    fock,
    model,
    oscillation_frequency,
    parity_split,
    rabi_frequency,
    rabi_partner,
    rabi_solution,
    steady_state_sector,
    trace_distance,
)


def test_model_1_even_coefficients():
    d, dp = 1 / 6, 1 / 25
    c = approx_coefficients('1', 'even', d, dp)
    assert c['p'] == pytest.approx(1 / 2 - 9 / 32 * d**2 + 1 / 8 * dp**2)
    assert c['r'] == pytest.approx(3 / 32 * d**2)
    assert c['a'] == pytest.approx(-3 * math.sqrt(2) / 8 * d)
    assert c['f'] == 0
    assert sum(c.diagonal().values()) == pytest.approx(1)


def test_model_2_even_coefficients_include_level_6():
    d = 1 / 6
    c = approx_coefficients('2', Parity.EVEN, d, d)
    assert set(c.diagonal()) == {0, 2, 4, 6}
    assert c.diagonal()[0] == pytest.approx(0.7754, abs=1e-4)
    assert c.diagonal()[2] == pytest.approx(0.1908, abs=1e-4)
    assert sum(c.diagonal().values()) == pytest.approx(1)


def test_odd_coefficients_exact_and_leading_order_agree_for_small_ratios():
    for model_id in ('1', '2'):
        exact = approx_coefficients(model_id, 'odd', 0.01, 0.01)
        leading = approx_coefficients(model_id, 'odd', 0.01, 0.01, exact=False)
        assert exact['p'] == pytest.approx(leading['p'], abs=1e-4)
        assert exact['b'] == pytest.approx(leading['b'], abs=1e-4)
    assert approx_coefficients('1', 'odd', 1 / 6, 1 / 25)['p'] == pytest.approx(0.9898, abs=1e-4)


def test_domain_warnings():
    with pytest.warns(ApproximationDomainWarning):
        approx_coefficients('1', 'even', 0.3, 0.01)
    with pytest.warns(ApproximationDomainWarning, match='delta = delta_prime'):
        approx_coefficients('2', 'even', 1 / 6, 1 / 25)


def test_usual_blockade_has_no_series_steady_state():
    with pytest.raises(ValueError):
        approx_coefficients('usual', 'even')


def test_approx_steady_is_a_density_operator_in_its_sector():
    rho = approx_steady('1', 'even', space=FockSpace(10))
    assert np.sum(rho.diagonal()[1::2]) == 0
    assert rho.matrix[0, 2] == pytest.approx(complex(-3 * math.sqrt(2) / 48, math.sqrt(2) / 100))
    assert rho.matrix[2, 0] == pytest.approx(np.conj(rho.matrix[0, 2]))
    odd = approx_steady('1', Parity.ODD, space=FockSpace(4))
    assert odd.diagonal()[1] + odd.diagonal()[3] == pytest.approx(1)


def test_approx_steady_matches_the_numerical_steady_state_of_model_1():
    space = FockSpace(30)
    spec, rates = model('1')
    even = steady_state_sector(spec, rates, Parity.EVEN, space)
    assert trace_distance(even, approx_steady('1', 'even', space=space)) < 0.02
    odd = steady_state_sector(spec, rates, Parity.ODD, space)
    expected = approx_steady('1', 'odd', space=space).diagonal()[1]
    assert odd.diagonal()[1] == pytest.approx(expected, abs=5e-3)


def test_approx_steady_matches_the_numerical_steady_state_of_model_2():
    space = FockSpace(30)
    spec, rates = model('2', delta=1 / 6, delta_prime=1 / 6)
    even = steady_state_sector(spec, rates, Parity.EVEN, space).diagonal()
    assert even[[0, 2, 4]] == pytest.approx([0.7754, 0.1908, 0.0336], abs=0.02)
    odd = steady_state_sector(spec, rates, Parity.ODD, space).diagonal()
    assert odd[[1, 3]] == pytest.approx([0.5, 0.5], abs=0.03)


def test_approx_mixture_weights_the_sectors():
    space = FockSpace(12)
    rho0 = coherent(space, 0.75 + 0j)
    mixed = approx_mixture('1', rho0)
    split = parity_split(rho0)
    assert parity_split(mixed).p_even == pytest.approx(split.p_even)
    even = approx_steady('1', 'even', space=space)
    assert trace_distance(approx_mixture('1', fock(space, 0)), even) < 1e-12


@pytest.mark.parametrize(
    ('model_id', 'm', 'partner'),
    (
        ('1', 0, 2),
        ('1', 2, 0),
        ('1', 1, None),
        ('1', 3, None),
        ('2', 0, 4),
        ('2', 3, 1),
        ('2', 2, None),
        ('usual', 1, 0),
    ),
)
def test_rabi_partners(model_id: str, m: int, partner: int | None):
    assert rabi_partner(model_id, m) == partner


def test_rabi_frequencies():
    assert rabi_frequency('1', 0, 5) == pytest.approx(5 * math.sqrt(2))
    assert rabi_frequency('2', 1, 5) == pytest.approx(5 * math.sqrt(6))
    assert rabi_frequency('2', 4, 5) == pytest.approx(1)
    assert rabi_frequency('usual', 0, 5) == 5
    assert rabi_frequency('1', 3, 5) == 0


def test_rabi_solution_of_a_frozen_level_stays_put(space6: FockSpace):
    psi = rabi_solution('1', 1, 5, 0.3, space6)
    np.testing.assert_array_equal(psi.amplitudes, fock(space6, 1).amplitudes)


def test_rabi_solution_oscillates():
    space = FockSpace(6)
    quarter = math.pi / (4 * math.sqrt(2) * 5)
    psi = rabi_solution('1', 0, 5, quarter, space)
    assert psi.probabilities()[[0, 2]] == pytest.approx([0.5, 0.5])
    assert psi.amplitudes[2] == pytest.approx(-1j * math.sqrt(0.5))


@pytest.mark.parametrize(('model_id', 'm', 't_max'), (('1', 0, 3.0), ('2', 1, 2.0)))
def test_lossless_evolution_oscillates_at_the_rabi_frequency(model_id: str, m: int, t_max: float):
    space = FockSpace(12)
    spec, rates = model(model_id, chi=30, delta=1 / 6, delta_prime=0)
    times = np.linspace(0, t_max, 3001)
    trajectory = evolve(spec, rates, fock(space, m), times, method='propagator')
    measured = oscillation_frequency(times, trajectory.populations()[:, m])
    assert measured == pytest.approx(2 * rabi_frequency(model_id, m, spec.epsilon), rel=0.03)


RABI_PRESETS = {'1': '1', '2': '2', 'usual': '3'}


def max_fidelity_deficit(model_id: str, m: int, dressed: bool) -> float:
    """Largest ``1 - <psi|rho|psi>`` over two population periods, at ``eps = 5, chi = 30``."""
    space = FockSpace(20)
    spec, rates = model(RABI_PRESETS[model_id], chi=30, delta=1 / 6, delta_prime=0)
    period = math.pi / rabi_frequency(model_id, m, spec.epsilon)
    times = np.linspace(0, 2 * period, 201)
    trajectory = evolve(spec, rates, fock(space, m), times, method='propagator')
    chi = spec.chi if dressed else None
    deficits = []
    for t, rho in zip(times, trajectory.states):
        psi = rabi_solution(model_id, m, spec.epsilon, float(t), space, chi=chi).amplitudes
        deficits.append(1 - float(np.real(psi.conj() @ rho.matrix @ psi)))
    return max(deficits)


@pytest.mark.parametrize(('model_id', 'm'), (('1', 0), ('1', 2), ('2', 0), ('2', 1), ('2', 3)))
def test_two_level_rabi_solution_tracks_the_lossless_evolution(model_id: str, m: int):
    assert max_fidelity_deficit(model_id, m, dressed=False) <= 3 / 36


@pytest.mark.parametrize(
    ('model_id', 'm'),
    (('1', 0), ('1', 2), ('2', 0), ('2', 1), ('2', 3), ('2', 4), ('usual', 0), ('usual', 1)),
)
def test_dressed_rabi_solution_tracks_the_lossless_evolution(model_id: str, m: int):
    assert max_fidelity_deficit(model_id, m, dressed=True) <= 3 / 36


def test_dressed_rabi_solution_starts_in_the_bare_level(space6: FockSpace):
    psi = rabi_solution('2', 4, 5, 0.0, FockSpace(12), chi=30)
    np.testing.assert_allclose(psi.amplitudes, fock(FockSpace(12), 4).amplitudes, atol=1e-12)
    frozen = rabi_solution('1', 1, 5, 0.3, space6, chi=30)
    np.testing.assert_array_equal(frozen.amplitudes, fock(space6, 1).amplitudes)
