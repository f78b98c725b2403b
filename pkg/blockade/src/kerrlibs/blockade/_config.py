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

"""Experiment configuration files.

A configuration is an INI file::

    [model]
    model = 1          ; 1, 2, 3, 3p, 4, 5 or kl:K,L
    chi = 1
    delta = 1/6        ; epsilon / chi, or give epsilon directly
    omega = 0          ; detuning of n
    sigma = 0          ; constant offset

    [rates]
    delta_prime = 1/25 ; gamma / epsilon on the model's own loss channel
    gamma_perp = 0     ; gamma1, gamma2 and gamma_perp override single rates

    [initial]
    family = fock      ; fock, coherent, cat, squeezed, displaced_number, thermal,
                       ; photon_added_thermal
    m = 0

    [run]
    kind = evolve      ; evolve, steady, wigner, scan or table
    dim = 100
    t_max = 1
    t_points = 201
    method = dop853
    manifold = 0,2

Numbers accept fractions (``1/6``), multiples of pi (``pi/4``) and, where a complex value
makes sense, complex literals (``0.75+0.1j``).
"""

from __future__ import annotations

import configparser
import dataclasses
import fractions
import math
import pathlib
import re
import typing

from . import _constants, _errors
from ._model import DissipationRates, ModelSpec, model
from ._states import FAMILY_PARAMETERS, StateFamily

if typing.TYPE_CHECKING:
    from collections.abc import Mapping

METHODS = ('dop853', 'propagator')
KINDS = ('evolve', 'steady', 'wigner', 'scan', 'table')
SCAN_AXES = ('epsilon_over_gamma', 'omega_kl', 'mean_n', 'alpha')
_AXIS_FAMILIES: dict[str, frozenset[StateFamily]] = {
    'mean_n': frozenset({StateFamily.THERMAL, StateFamily.PHOTON_ADDED_THERMAL}),
    'alpha': frozenset(
        {
            StateFamily.COHERENT,
            StateFamily.CAT,
            StateFamily.SQUEEZED,
            StateFamily.DISPLACED_NUMBER,
        }
    ),
}
_NON_NEGATIVE_AXES = ('epsilon_over_gamma', 'mean_n')

_KEYS: dict[str, frozenset[str]] = {
    'model': frozenset({'model', 'chi', 'delta', 'epsilon', 'omega', 'sigma'}),
    'rates': frozenset({'delta_prime', 'gamma1', 'gamma2', 'gamma_perp'}),
    'initial': frozenset({'family', 'm', 'alpha', 'phi', 'xi', 'n0', 'mean_n'}),
    'run': frozenset({'kind', 'dim', 't_max', 't_points', 'method', 'manifold'}),
    'wigner': frozenset({'extent', 'points', 'state'}),
    'scan': frozenset({'axis', 'start', 'stop', 'points', 'gamma_over_chi', 'models'}),
    'output': frozenset({'name'}),
}

_PI = re.compile(r'^(?P<factor>[^*/]*?)\s*\*?\s*pi\s*(?:/\s*(?P<divisor>[^*/]+))?$')


def parse_real(text: str) -> float:
    """Parse ``3``, ``0.25``, ``1e-3``, ``1/6``, ``pi``, ``-pi/4`` or ``3*pi/4``.

    Raises:
        ValueError: for anything else.
    """
    text = text.strip()
    if match := _PI.match(text):
        factor = match['factor'].strip()
        value = math.pi * (
            float(fractions.Fraction(factor)) if factor not in ('', '+', '-') else 1.0
        )
        if factor == '-':
            value = -value
        if match['divisor']:
            value /= float(fractions.Fraction(match['divisor'].strip()))
        return value
    return float(fractions.Fraction(text))


def parse_complex(text: str) -> complex:
    """Parse a real number (see :func:`parse_real`) or a complex literal like ``1+0.5j``."""
    try:
        return complex(parse_real(text))
    except ValueError:
        return complex(text.replace(' ', ''))


@dataclasses.dataclass(frozen=True)
class InitialState:
    family: StateFamily
    params: Mapping[str, typing.Any]


@dataclasses.dataclass(frozen=True)
class WignerAxes:
    extent: float = _constants.WIGNER_EXTENT
    points: int = _constants.WIGNER_POINTS
    state: str = 'steady'


@dataclasses.dataclass(frozen=True)
class ScanAxis:
    axis: str
    start: float
    stop: float
    points: int
    gamma_over_chi: float | None = None


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one run; there is no hidden state or seed."""

    model_name: str
    delta: float
    delta_prime: float
    spec: ModelSpec
    rates: DissipationRates
    initial: InitialState
    kind: str
    dim: int
    t_max: float
    t_points: int
    method: str
    manifold: tuple[int, ...]
    wigner: WignerAxes
    scan: ScanAxis | None
    table_models: tuple[str, ...]
    name: str
    echo: Mapping[str, Mapping[str, str]]


class _Reader:
    """Typed access to a parsed INI file; conversion errors name the section and key."""

    def __init__(self, parser: configparser.ConfigParser):
        self._parser = parser

    def get(self, section: str, key: str, default: str | None = None) -> str | None:
        if self._parser.has_option(section, key):
            return self._parser.get(section, key)
        return default

    def _typed(
        self,
        section: str,
        key: str,
        default: typing.Any,
        convert: typing.Callable[[str], typing.Any],
    ) -> typing.Any:
        text = self.get(section, key)
        if text is None:
            if default is _REQUIRED:
                raise _errors.ConfigError(f'[{section}] {key}: required')
            return default
        try:
            return convert(text)
        except (ValueError, ZeroDivisionError) as e:
            raise _errors.ConfigError(f'[{section}] {key} = {text!r}: {e}') from e

    def real(self, section: str, key: str, default: typing.Any = None) -> typing.Any:
        return self._typed(section, key, default, parse_real)

    def cplx(self, section: str, key: str, default: typing.Any = None) -> typing.Any:
        return self._typed(section, key, default, parse_complex)

    def integer(self, section: str, key: str, default: typing.Any = None) -> typing.Any:
        return self._typed(section, key, default, int)


_REQUIRED = object()


def _check_keys(parser: configparser.ConfigParser) -> None:
    for section in parser.sections():
        if section not in _KEYS:
            raise _errors.ConfigError(
                f'unknown section [{section}]; expected one of {", ".join(sorted(_KEYS))}'
            )
        unknown = set(parser.options(section)) - _KEYS[section]
        if unknown:
            raise _errors.ConfigError(f'[{section}]: unknown keys {", ".join(sorted(unknown))}')


def _initial(reader: _Reader) -> InitialState:
    try:
        family = StateFamily(reader.get('initial', 'family', 'fock'))
    except ValueError as e:
        raise _errors.ConfigError(f'[initial] family: {e}') from e
    params: dict[str, typing.Any] = {}
    for key, kind in (
        ('m', 'integer'),
        ('n0', 'integer'),
        ('alpha', 'cplx'),
        ('xi', 'cplx'),
        ('phi', 'real'),
        ('mean_n', 'real'),
    ):
        value = getattr(reader, kind)('initial', key)
        if value is not None and key not in FAMILY_PARAMETERS[family]:
            raise _errors.ConfigError(
                f'[initial] {key}: not a parameter of the {family.value} family'
            )
        if value is not None:
            params[key] = value
    if family is StateFamily.FOCK:
        params.setdefault('m', 0)
    return InitialState(family=family, params=params)


def _rates(reader: _Reader, preset: DissipationRates) -> DissipationRates:
    changes = {
        key: value
        for key in ('gamma1', 'gamma2', 'gamma_perp')
        if (value := reader.real('rates', key)) is not None
    }
    try:
        return dataclasses.replace(preset, **changes)
    except ValueError as e:
        raise _errors.ConfigError(f'[rates]: {e}') from e


def _scan(reader: _Reader, initial: InitialState) -> ScanAxis:
    axis = reader.get('scan', 'axis')
    if axis is None or axis not in SCAN_AXES:
        raise _errors.ConfigError(
            f'[scan] axis = {axis!r}; expected one of {", ".join(SCAN_AXES)}'
        )
    scan = ScanAxis(
        axis=axis,
        start=reader.real('scan', 'start', _REQUIRED),
        stop=reader.real('scan', 'stop', _REQUIRED),
        points=reader.integer('scan', 'points', _REQUIRED),
        gamma_over_chi=reader.real('scan', 'gamma_over_chi'),
    )
    if scan.points < 1:
        raise _errors.ConfigError(f'[scan] points = {scan.points}: must be positive')
    if axis in _NON_NEGATIVE_AXES:
        for key in ('start', 'stop'):
            value = getattr(scan, key)
            if value < 0:
                raise _errors.ConfigError(f'[scan] {key} = {value!r}: {axis} must be non-negative')
    if scan.gamma_over_chi is not None and scan.gamma_over_chi <= 0:
        raise _errors.ConfigError(
            f'[scan] gamma_over_chi = {scan.gamma_over_chi!r}: must be positive'
        )
    families = _AXIS_FAMILIES.get(axis)
    if families is not None and initial.family not in families:
        raise _errors.ConfigError(
            f'[scan] axis = {axis!r} does not apply to [initial] family = {initial.family.value}'
        )
    return scan


def _manifold(text: str) -> tuple[int, ...]:
    return tuple(int(n) for n in text.split(',') if n.strip())


def interpret(parser: configparser.ConfigParser, name: str) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from a parsed INI file.

    Raises:
        ConfigError: naming the section and key of the first problem found.
    """
    _check_keys(parser)
    reader = _Reader(parser)
    model_name = reader.get('model', 'model', '1') or '1'
    chi = reader.real('model', 'chi', 1.0)
    delta = reader.real('model', 'delta', _constants.DEFAULT_DELTA)
    epsilon = reader.real('model', 'epsilon')
    if epsilon is not None:
        delta = epsilon / chi
    delta_prime = reader.real('rates', 'delta_prime', _constants.DEFAULT_DELTA_PRIME)
    omega = reader.real('model', 'omega', 0.0)
    sigma = reader.real('model', 'sigma', 0.0)
    try:
        spec, preset = model(model_name, chi=chi, delta=delta, delta_prime=delta_prime)
        spec = spec.replace(omega_tune=omega, sigma_tune=sigma)
    except ValueError as e:
        raise _errors.ConfigError(f'[model]: {e}') from e
    rates = _rates(reader, preset)

    kind = reader.get('run', 'kind', 'steady') or 'steady'
    if kind not in KINDS:
        raise _errors.ConfigError(f'[run] kind = {kind!r}; expected one of {", ".join(KINDS)}')
    dim = reader.integer('run', 'dim', _constants.DEFAULT_DIM)
    if dim < _constants.MIN_DIM:
        raise _errors.ConfigError(f'[run] dim = {dim}: must be at least {_constants.MIN_DIM}')

    initial = _initial(reader)
    scan = _scan(reader, initial) if kind == 'scan' else None

    manifold_text = reader.get('run', 'manifold')
    try:
        manifold = _manifold(manifold_text) if manifold_text else (0, 2)
    except ValueError as e:
        raise _errors.ConfigError(f'[run] manifold = {manifold_text!r}: {e}') from e

    method = reader.get('run', 'method', 'dop853') or 'dop853'
    if method not in METHODS:
        raise _errors.ConfigError(
            f'[run] method = {method!r}; expected one of {", ".join(METHODS)}'
        )

    state = reader.get('wigner', 'state', 'steady') or 'steady'
    if state not in ('steady', 'initial'):
        raise _errors.ConfigError(f'[wigner] state = {state!r}; expected steady or initial')

    models_text = reader.get('scan', 'models', '1,2,3,3p,4,5') or ''
    return ExperimentConfig(
        model_name=model_name,
        delta=delta,
        delta_prime=delta_prime,
        spec=spec,
        rates=rates,
        initial=initial,
        kind=kind,
        dim=dim,
        t_max=reader.real('run', 't_max', 1.0),
        t_points=reader.integer('run', 't_points', 201),
        method=method,
        manifold=manifold,
        wigner=WignerAxes(
            extent=reader.real('wigner', 'extent', _constants.WIGNER_EXTENT),
            points=reader.integer('wigner', 'points', _constants.WIGNER_POINTS),
            state=state,
        ),
        scan=scan,
        table_models=tuple(m.strip() for m in models_text.split(',') if m.strip()),
        name=reader.get('output', 'name', name) or name,
        echo={s: dict(parser.items(s)) for s in parser.sections()},
    )


def load_config(
    path: pathlib.Path, overrides: Mapping[str, Mapping[str, str]] | None = None
) -> ExperimentConfig:
    """Read, override and interpret a configuration file.

    ``overrides`` maps section to key to raw text, applied on top of the file (as the command
    line options do).

    Raises:
        ConfigError: for unreadable or malformed files; syntax errors carry the line number.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(';', '#'), interpolation=None)
    try:
        with path.open(encoding='utf-8') as f:
            parser.read_file(f, source=str(path))
    except OSError as e:
        raise _errors.ConfigError(f'cannot read {path}: {e}') from e
    except configparser.MissingSectionHeaderError as e:
        raise _errors.ConfigError(f'{path}:{e.lineno}: no section header before this line') from e
    except configparser.ParsingError as e:
        lineno, line = e.errors[0]
        raise _errors.ConfigError(f'{path}:{lineno}: cannot parse {line.strip()}') from e
    except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as e:
        raise _errors.ConfigError(f'{path}:{e.lineno}: {e.message}') from e
    except configparser.Error as e:
        raise _errors.ConfigError(f'{path}: {e.message}') from e
    for section, values in (overrides or {}).items():
        if not parser.has_section(section):
            parser.add_section(section)
        for key, value in values.items():
            parser.set(section, key, value)
    return interpret(parser, path.stem)
