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
    Parity,
    StateDomainError,
    StateFamily,
    TruncationWarning,
    cat,
    closed_form_parity,
    coherent,
    displaced_number,
    fock,
    make_initial,
    mean_photon,
    mixture,
    parity_split,
    parity_state,
    photon_added_thermal,
    squeezed,
    thermal,
)


def test_fock_state_bounds(space6: FockSpace):
    assert fock(space6, 5).probabilities()[5] == 1
    with pytest.raises(FockIndexError):
        fock(space6, 6)
    with pytest.raises(FockIndexError):
        fock(space6, -1)


def test_coherent_state_mean_photon_number():
    psi = coherent(FockSpace(40), 1.5 + 0j)
    assert mean_photon(psi) == pytest.approx(2.25, abs=1e-10)


def test_coherent_state_warns_when_truncation_is_too_small():
    with pytest.warns(TruncationWarning):
        psi = coherent(FockSpace(10), 2 + 0j)
    assert np.sum(psi.probabilities()) == pytest.approx(1)


@pytest.mark.parametrize(('phi', 'parity'), ((0.0, 0), (math.pi, 1)))
def test_even_and_odd_cats_have_definite_parity(phi: float, parity: int):
    psi = cat(FockSpace(30), 1.2 + 0j, phi)
    wrong = psi.amplitudes[1 - parity :: 2]
    assert np.max(np.abs(wrong)) < 1e-15


def test_odd_cat_of_vacuum_is_rejected(space6: FockSpace):
    with pytest.raises(StateDomainError):
        cat(space6, 0j, math.pi)


def test_squeezed_state_without_squeezing_is_coherent():
    space = FockSpace(30)
    alpha = 0.9 - 0.4j
    np.testing.assert_allclose(
        squeezed(space, alpha, 0j).amplitudes, coherent(space, alpha).amplitudes, atol=1e-14
    )


def test_squeezed_vacuum_photon_statistics():
    psi = squeezed(FockSpace(40), 0j, 0.5 + 0j)
    assert np.max(np.abs(psi.amplitudes[1::2])) < 1e-15
    assert mean_photon(psi) == pytest.approx(math.sinh(0.5) ** 2, abs=1e-8)


def test_displaced_number_state_mean_photon_number():
    psi = displaced_number(FockSpace(40), 1.0 + 0j, 2)
    assert mean_photon(psi) == pytest.approx(3, abs=1e-8)


def test_displaced_vacuum_is_coherent():
    space = FockSpace(30)
    np.testing.assert_allclose(
        displaced_number(space, 0.6j, 0).amplitudes, coherent(space, 0.6j).amplitudes, atol=1e-13
    )


def test_displaced_number_state_rejects_bad_n0(space6: FockSpace):
    with pytest.raises(FockIndexError):
        displaced_number(space6, 0.1 + 0j, 6)


def test_thermal_state():
    rho = thermal(FockSpace(100), 1.0)
    assert mean_photon(rho) == pytest.approx(1, abs=1e-10)
    assert rho.diagonal()[:3] == pytest.approx([0.5, 0.25, 0.125])
    with pytest.raises(StateDomainError):
        thermal(FockSpace(10), -0.1)


def test_thermal_state_warns_when_truncated():
    with pytest.warns(TruncationWarning):
        thermal(FockSpace(10), 3.0)


def test_photon_added_thermal_state():
    space = FockSpace(100)
    single = photon_added_thermal(space, 1.0)
    assert single.diagonal()[1] == pytest.approx(1)
    rho = photon_added_thermal(space, 3.0)
    assert rho.diagonal()[0] == 0
    assert mean_photon(rho) == pytest.approx(3, abs=1e-10)
    with pytest.raises(StateDomainError):
        photon_added_thermal(space, 0.5)


@pytest.mark.parametrize(
    ('family', 'dim', 'params'),
    (
        (StateFamily.COHERENT, 40, {'alpha': 0.75}),
        (StateFamily.COHERENT, 40, {'alpha': 2.0}),
        (StateFamily.CAT, 40, {'alpha': 2.0, 'phi': math.pi / 4}),
        (StateFamily.CAT, 40, {'alpha': 1.0, 'phi': 1.0}),
        (StateFamily.THERMAL, 100, {'mean_n': 1.0}),
        (StateFamily.THERMAL, 100, {'mean_n': 0.3}),
        (StateFamily.PHOTON_ADDED_THERMAL, 100, {'mean_n': 2.0}),
        (StateFamily.SQUEEZED, 40, {'alpha': 0, 'xi': 0.5}),
        (StateFamily.DISPLACED_NUMBER, 40, {'alpha': 1.3, 'n0': 0}),
    ),
)
def test_parity_split_matches_closed_form(family: StateFamily, dim: int, params: dict[str, float]):
    state = make_initial(FockSpace(dim), family, **params)
    numeric = parity_split(state)
    exact = closed_form_parity(family, **params)
    assert numeric.p_even == pytest.approx(exact.p_even, abs=1e-8)
    assert numeric.p_odd == pytest.approx(exact.p_odd, abs=1e-8)
    assert numeric.ratio_r == pytest.approx(exact.ratio_r, rel=1e-7)


def test_photon_added_thermal_parity_ratio():
    q = 1 / 3
    split = closed_form_parity('photon_added_thermal', mean_n=2.0)
    assert split.ratio_r == pytest.approx((1 + q**2) / (2 * q))


def test_closed_form_parity_is_limited_to_compact_cases():
    with pytest.raises(ValueError):
        closed_form_parity('fock', m=1)
    with pytest.raises(ValueError):
        closed_form_parity('squeezed', alpha=1, xi=0.5)


def test_parity_split_of_an_odd_state(space6: FockSpace):
    split = parity_split(fock(space6, 3))
    assert (split.p_even, split.p_odd) == (0, 1)
    assert split.ratio_r == math.inf
    assert split.weight(Parity.ODD) == 1


def test_parity_state_projects_and_renormalizes():
    psi = coherent(FockSpace(30), 1.0 + 0j)
    even = parity_state(psi, Parity.EVEN)
    assert parity_split(even).p_even == pytest.approx(1)
    np.testing.assert_allclose(
        even.amplitudes, cat(FockSpace(30), 1.0 + 0j, 0.0).amplitudes, atol=1e-14
    )
    with pytest.raises(StateDomainError):
        parity_state(fock(FockSpace(30), 2), Parity.ODD)


def test_mixture(space6: FockSpace):
    rho = mixture([0.25, 0.75], [fock(space6, 0), fock(space6, 1)])
    assert rho.diagonal()[:2] == pytest.approx([0.25, 0.75])
    with pytest.raises(ValueError):
        mixture([0.5, 0.6], [fock(space6, 0), fock(space6, 1)])
    with pytest.raises(ValueError):
        mixture([1.0], [fock(space6, 0), fock(space6, 1)])


def test_make_initial_reports_missing_parameters(space6: FockSpace):
    with pytest.raises(ValueError, match='alpha'):
        make_initial(space6, 'coherent')
    with pytest.raises(ValueError):
        make_initial(space6, 'nonsense')
    with pytest.raises(ValueError, match='does not take alpha'):
        make_initial(space6, 'thermal', mean_n=1.0, alpha=0.5)
