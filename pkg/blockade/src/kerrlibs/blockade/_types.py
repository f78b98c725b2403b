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

"""Array aliases and the protocol shared by everything that lives on a Fock space."""

from __future__ import annotations

import typing

import numpy as np
import numpy.typing as npt

if typing.TYPE_CHECKING:
    from ._fock import FockSpace

ComplexArray = npt.NDArray[np.complex128]
FloatArray = npt.NDArray[np.float64]


class OnFockSpace(typing.Protocol):
    """The protocol implemented by :class:`StateVector`, :class:`DensityOperator` and friends.

    Use this class in type annotations for helpers that only need to know which truncated
    space an object belongs to, such as the space-compatibility check that every binary
    operation performs before touching the underlying arrays.
    """

    @property
    def space(self) -> FockSpace:
        """The truncated Fock space this object acts on or lives in."""
        ...
