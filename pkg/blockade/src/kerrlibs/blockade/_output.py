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

"""Deterministic CSV tables and their JSON metadata sidecars."""

from __future__ import annotations

import csv
import dataclasses
import enum
import json
import logging
import math
import pathlib
import typing

import numpy as np

from . import _constants

if typing.TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

Cell = typing.Union[str, int, float, bool, None]


def library_version() -> str:
    return (pathlib.Path(__file__).parent / '_version.txt').read_text().strip()


def format_float(value: float) -> str:
    """Format a float with 17 significant digits; ``inf`` and ``nan`` are spelled out."""
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return format(value, _constants.FLOAT_FORMAT)


def _cell(value: Cell | np.generic) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(
    path: pathlib.Path, header: Sequence[str], rows: Iterable[Sequence[Cell | np.generic]]
) -> int:
    """Write a UTF-8 CSV with a header row and return the number of data rows."""
    count = 0
    with path.open('w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f'row {count} has {len(row)} cells for {len(header)} columns')
            writer.writerow([_cell(v) for v in row])
            count += 1
    logger.info('wrote %d rows to %s', count, path)
    return count


def jsonable(value: typing.Any) -> typing.Any:
    """Convert parameters and results into JSON-serializable values.

    Floats go through :func:`format_float` and back so that sidecars are byte-stable; complex
    numbers become ``{"re": ..., "im": ...}``; non-finite floats become strings.
    """
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, enum.Enum):
        return jsonable(value.value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return float(format_float(value)) if math.isfinite(value) else format_float(value)
    if isinstance(value, complex):
        return {'re': jsonable(value.real), 'im': jsonable(value.imag)}
    if isinstance(value, dict):
        mapping = typing.cast('Mapping[typing.Any, typing.Any]', value)
        return {str(k): jsonable(v) for k, v in mapping.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = typing.cast('Iterable[typing.Any]', value)
        return [jsonable(v) for v in items]
    return str(value)


def meta_path(output: pathlib.Path) -> pathlib.Path:
    """Return ``<output>.meta.json``."""
    return output.with_name(output.name + '.meta.json')


def write_meta(output: pathlib.Path, meta: Mapping[str, typing.Any]) -> pathlib.Path:
    """Write the metadata sidecar of ``output``, stamped with the library version."""
    path = meta_path(output)
    document = {'library_version': library_version(), **meta}
    text = json.dumps(jsonable(document), indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + '\n', encoding='utf-8')
    logger.info('wrote metadata to %s', path)
    return path
