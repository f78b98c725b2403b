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

"""Magic numbers."""

from __future__ import annotations

import os

MIN_DIM = 2
"""Smallest Fock space: the vacuum and one photon."""

DEFAULT_DIM = 100
"""Truncation used for the reference numerics."""

DENSE_DIM_LIMIT = 64
"""Largest ``dim`` for which the full dense superoperator (``dim**2`` square) is assembled.

At 64 the superoperator is 4096 x 4096 complex, about 270 MB.
"""

DENSE_SECTOR_LIMIT = 1024
"""Largest superoperator size handed to the dense SVD null-space solver.

Larger (sector) superoperators go to sparse shifted inverse iteration.
"""

HERMITIAN_TOL = 1e-10
"""Maximum entry of ``A - A.conj().T`` for operators flagged Hermitian and for states."""

TRACE_TOL = 1e-10
"""Allowed deviation of a constructed state's trace from one."""

TRAJECTORY_TRACE_TOL = 1e-8
"""Allowed deviation of an integrated state's trace from one."""

POSITIVITY_TOL = 1e-8
"""Smallest eigenvalue accepted for a density operator is ``-POSITIVITY_TOL``."""

TRUNCATION_TOL = 1e-8
"""Discarded weight above which state constructors emit a :class:`TruncationWarning`."""

STEADY_RESIDUAL_TOL = 1e-10
"""Accepted ``max|L rho|`` of a steady state, relative to ``max(1, |L|_max)``."""

NULL_SPACE_RTOL = 1e-10
"""Singular values below ``NULL_SPACE_RTOL * s_max`` count towards the null space."""

INTEGRATOR_RTOL = 1e-8
"""Relative error target of the adaptive integrator."""

INTEGRATOR_ATOL = 1e-10
"""Absolute error target of the adaptive integrator."""

LAMBDA_WARN = 0.1
"""``|g / Delta|`` above which the dispersive map warns."""

LAMBDA_MAX = 0.3
"""``|g / Delta|`` above which the dispersive map refuses to work."""

APPROX_DOMAIN = 0.25
"""Largest ``delta`` and ``delta_prime`` for which the series steady states are trusted."""

DEFAULT_DELTA = 1 / 6
"""Default ``epsilon / chi``."""

DEFAULT_DELTA_PRIME = 1 / 25
"""Default ``gamma / epsilon``."""

WIGNER_EXTENT = 4.0
"""Default half-width of the phase-space grid in ``q`` and ``p``."""

WIGNER_POINTS = 101
"""Default number of grid points per axis."""

WIGNER_EXTENT_MARGIN = 2.5
"""Half-width a grid needs beyond ``sqrt(2 <n>)`` before :func:`wigner` warns."""

FLOAT_FORMAT = '.17g'
"""Format spec of every float written to CSV or JSON; round-trips float64 exactly."""

DEBUG = os.environ.get('BLOCKADE_DEBUG', '').lower() not in ('', '0', 'false', 'no')
"""When set, every :class:`DensityOperator` also checks positivity on construction."""
