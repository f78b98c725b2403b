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


"""Helpers for building random states and checking density matrices in tests."""

from __future__ import annotations

import numpy as np

from kerrlibs.blockade import DensityOperator, FockSpace


def random_density(space: FockSpace, seed: int, rank: int | None = None) -> DensityOperator:
    rng = np.random.default_rng(seed)
    rank = space.dim if rank is None else rank
    factor = rng.standard_normal((space.dim, rank)) + 1j * rng.standard_normal((space.dim, rank))
    matrix = factor @ factor.conj().T
    return DensityOperator.from_matrix(space, matrix)


def assert_physical(rho: DensityOperator, atol: float = 1e-8) -> None:
    matrix = rho.matrix
    assert np.max(np.abs(matrix - matrix.conj().T)) <= 1e-10
    assert abs(np.trace(matrix) - 1) <= atol
    assert rho.min_eigenvalue() >= -atol
