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

import pathlib
import typing

import pytest


def pytest_addoption(parser: pytest.OptionGroup):
    parser.addoption(
        '--keep-outputs',
        action='store',
        default=None,
        help='write experiment outputs to this directory instead of a temporary one',
    )


@pytest.fixture(scope='session')
def out_dir(
    request: pytest.FixtureRequest, tmp_path_factory: pytest.TempPathFactory
) -> pathlib.Path:
    keep = request.config.getoption('--keep-outputs', default=None)
    keep = typing.cast('typing.Optional[str]', keep)
    if keep is None:
        return tmp_path_factory.mktemp('experiments')
    path = pathlib.Path(keep)
    path.mkdir(parents=True, exist_ok=True)
    return path
