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

import pytest

from kerrlibs.blockade import DissipationRates, FockSpace, ModelSpec, model


@pytest.fixture(scope='session')
def space6() -> FockSpace:
    return FockSpace(6)


@pytest.fixture(scope='session')
def space30() -> FockSpace:
    return FockSpace(30)


@pytest.fixture(scope='session')
def model1() -> tuple[ModelSpec, DissipationRates]:
    return model('1')


@pytest.fixture(scope='session')
def model2() -> tuple[ModelSpec, DissipationRates]:
    return model('2')
