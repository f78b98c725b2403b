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


r"""Photon blockade in driven Kerr resonators with one- and two-photon loss.

The ``blockade`` library provides:

- :class:`FockSpace`, :class:`StateVector`, :class:`DensityOperator` and :class:`OperatorMatrix`:
  states and operators on a truncated Fock space, which refuse to mix truncations.
- Initial-state families such as :func:`coherent`, :func:`cat` and :func:`thermal`, with their
  photon-number parity split.
- :func:`model` presets and the :class:`ModelSpec` Hamiltonians, plus :func:`dispersive_map`
  from Jaynes-Cummings parameters.
- :func:`steady_state` and :func:`evolve` for the Lindblad master equation.
- :func:`wigner` and photon statistics such as :func:`blockade_fidelity`.
- Closed-form series steady states (:func:`approx_steady`) and Rabi solutions.

Solver failures raise :class:`SolverError`; a state that does not fit its truncation emits
:class:`TruncationWarning`.
"""

from __future__ import annotations

from pathlib import Path as _Path  # for __version__

from ._analysis import (
    WignerGrid,
    blockade_fidelity,
    mean_photon,
    oscillation_frequency,
    parity_ratio,
    photon_probabilities,
    wigner,
    wigner_at,
    wigner_integral,
)
from ._approx import (
    ApproxCoefficients,
    ApproxModel,
    approx_coefficients,
    approx_mixture,
    approx_steady,
    rabi_frequency,
    rabi_partner,
    rabi_solution,
)
from ._config import ExperimentConfig, load_config
from ._errors import (
    ApproximationDomainWarning,
    CapacityError,
    ConfigError,
    DegenerateSpectrumWarning,
    DimensionError,
    DispersiveLimitError,
    DispersiveLimitWarning,
    FockIndexError,
    GridExtentWarning,
    SolverError,
    StateDomainError,
    StiffnessError,
    TruncationWarning,
)
from ._fock import (
    DensityOperator,
    FockSpace,
    OperatorMatrix,
    StateVector,
    adjoint,
    annihilation,
    apply,
    as_density,
    creation,
    displacement_matrix,
    expectation,
    identity,
    make_space,
    multiply,
    number_operator,
    parity_operator,
    trace_distance,
)
from ._liouville import (
    Trajectory,
    evolve,
    lindblad_rhs,
    liouvillian_matrix,
    liouvillian_sparse,
    null_space_solver,
    steady_state,
    steady_state_general,
    steady_state_sector,
    steady_state_unique,
)
from ._model import (
    DispersiveParams,
    DissipationRates,
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
from ._states import (
    Parity,
    ParitySplit,
    StateFamily,
    cat,
    closed_form_parity,
    coherent,
    displaced_number,
    fock,
    make_initial,
    mixture,
    parity_split,
    parity_state,
    photon_added_thermal,
    squeezed,
    thermal,
)
from ._types import OnFockSpace

__all__ = (
    'ApproxCoefficients',
    'ApproxModel',
    'ApproximationDomainWarning',
    'CapacityError',
    'ConfigError',
    'DegenerateSpectrumWarning',
    'DensityOperator',
    'DimensionError',
    'DispersiveLimitError',
    'DispersiveLimitWarning',
    'DispersiveParams',
    'DissipationRates',
    'ExperimentConfig',
    'FockIndexError',
    'FockSpace',
    'GridExtentWarning',
    'ModelKind',
    'ModelSpec',
    'OnFockSpace',
    'OperatorMatrix',
    'Parity',
    'ParitySplit',
    'PhysicalParams',
    'SolverError',
    'StateDomainError',
    'StateFamily',
    'StateVector',
    'StiffnessError',
    'Trajectory',
    'TruncationWarning',
    'WignerGrid',
    'adjoint',
    'annihilation',
    'apply',
    'approx_coefficients',
    'approx_mixture',
    'approx_steady',
    'as_density',
    'blockade_fidelity',
    'cat',
    'closed_form_parity',
    'coherent',
    'conserves_parity',
    'creation',
    'dispersive_map',
    'displaced_number',
    'displacement_matrix',
    'eigen_spectrum',
    'evolve',
    'expectation',
    'fock',
    'hamiltonian',
    'hamiltonian_kl',
    'hamiltonian_usual',
    'identity',
    'lindblad_rhs',
    'liouvillian_matrix',
    'liouvillian_sparse',
    'load_config',
    'make_initial',
    'make_space',
    'mean_photon',
    'mixture',
    'model',
    'multiply',
    'null_space_solver',
    'number_operator',
    'oscillation_frequency',
    'parity_operator',
    'parity_ratio',
    'parity_split',
    'parity_state',
    'photon_added_thermal',
    'photon_probabilities',
    'rabi_frequency',
    'rabi_partner',
    'rabi_solution',
    'squeezed',
    'steady_state',
    'steady_state_general',
    'steady_state_sector',
    'steady_state_unique',
    'thermal',
    'trace_distance',
    'tune_to_resonance',
    'wigner',
    'wigner_at',
    'wigner_integral',
)

__version__ = (_Path(__file__).parent / '_version.txt').read_text().strip()
