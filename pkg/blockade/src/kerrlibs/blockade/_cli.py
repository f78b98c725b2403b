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

"""The ``blockade`` command: run a configuration and write CSV tables with JSON sidecars.

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 inadequate truncation.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import logging
import math
import os
import pathlib
import sys
import typing
import warnings

import numpy as np

from . import _errors
from ._analysis import blockade_fidelity, mean_photon, photon_probabilities, wigner
from ._approx import approx_mixture
from ._config import ExperimentConfig, load_config
from ._fock import FockSpace, as_density, trace_distance
from ._liouville import evolve, lindblad_rhs, steady_state
from ._model import DissipationRates, ModelKind, ModelSpec, model
from ._output import write_csv, write_meta
from ._states import StateFamily, make_initial, parity_split

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

    from ._fock import DensityOperator, StateLike

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_TRUNCATION = 4

COMMANDS = ('evolve', 'steady', 'wigner', 'scan', 'table')
SCAN_LEVELS = 5
EVOLVE_LEVELS = 6
POPULATED = 1e-2
"""Population above which a level counts as populated in the model table."""
STATE_DEPENDENT = 1e-3
"""Trace distance between steady states above which a model counts as state-dependent."""


def _initial_state(config: ExperimentConfig, space: FockSpace, **changes: typing.Any) -> StateLike:
    params = {**config.initial.params, **changes}
    try:
        return make_initial(space, config.initial.family, **params)
    except ValueError as e:
        raise _errors.ConfigError(f'[initial] {config.initial.family.value}: {e}') from e


def _levels(probabilities: np.ndarray, count: int) -> list[float]:
    padded = np.zeros(count)
    size = min(count, probabilities.size)
    padded[:size] = probabilities[:size]
    return [float(p) for p in padded]


def _residual(spec: ModelSpec, rates: DissipationRates, rho: DensityOperator) -> float:
    return float(np.max(np.abs(lindblad_rhs(spec, rates, rho))))


def _base_meta(config: ExperimentConfig, command: str) -> dict[str, typing.Any]:
    return {
        'command': command,
        'config': config.echo,
        'model': config.model_name,
        'spec': config.spec,
        'rates': config.rates,
        'dim': config.dim,
    }


def _output_path(config: ExperimentConfig, out_dir: pathlib.Path, kind: str) -> pathlib.Path:
    return out_dir / f'{config.name}-{kind}.csv'


def _series_model(spec: ModelSpec, rates: DissipationRates) -> str | None:
    if spec.kind is not ModelKind.KL or rates.gamma1 or rates.gamma_perp or not rates.gamma2:
        return None
    return {(0, 2): '1', (1, 3): '2'}.get((spec.k, spec.l))


##########################
# commands               #
##########################


def cmd_evolve(config: ExperimentConfig, out_dir: pathlib.Path) -> pathlib.Path:
    """Write ``t, p0..p5, F`` along a trajectory from the configured initial state."""
    space = FockSpace(config.dim)
    rho0 = _initial_state(config, space)
    times = np.linspace(0.0, config.t_max, config.t_points)
    trajectory = evolve(config.spec, config.rates, rho0, times, method=config.method)
    header = ['t', *(f'p{n}' for n in range(EVOLVE_LEVELS)), 'F']
    rows = [
        [
            float(t),
            *_levels(rho.diagonal(), EVOLVE_LEVELS),
            blockade_fidelity(rho, config.manifold),
        ]
        for t, rho in zip(trajectory.times, trajectory.states)
    ]
    path = _output_path(config, out_dir, 'evolve')
    write_csv(path, header, rows)
    traces = [abs(complex(np.trace(rho.matrix)) - 1) for rho in trajectory.states]
    write_meta(
        path,
        {
            **_base_meta(config, 'evolve'),
            'method': config.method,
            'manifold': config.manifold,
            'max_trace_deviation': max(traces),
            'parity_ratio_initial': float(trajectory.parity_ratio()[0]),
            'parity_ratio_final': float(trajectory.parity_ratio()[-1]),
        },
    )
    return path


def cmd_steady(config: ExperimentConfig, out_dir: pathlib.Path) -> pathlib.Path:
    """Write ``n, p_n`` of the steady state; the sidecar carries its parity and series check."""
    space = FockSpace(config.dim)
    rho0 = _initial_state(config, space)
    rho = steady_state(config.spec, config.rates, rho0)
    probabilities = photon_probabilities(rho)
    path = _output_path(config, out_dir, 'steady')
    write_csv(path, ['n', 'p'], [[n, float(p)] for n, p in enumerate(probabilities)])

    series = _series_model(config.spec, config.rates)
    approx_distance = None
    if series is not None:
        delta_prime = config.rates.gamma2 / config.spec.epsilon if config.spec.epsilon else 0.0
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', _errors.ApproximationDomainWarning)
            approx = approx_mixture(series, rho0, config.spec.delta, delta_prime, space)
        approx_distance = trace_distance(rho, approx)
    split = parity_split(rho)
    initial_split = parity_split(rho0)
    write_meta(
        path,
        {
            **_base_meta(config, 'steady'),
            'initial': config.initial,
            'initial_parity': initial_split,
            'parity': split,
            'mean_photon': mean_photon(rho),
            'fidelity': blockade_fidelity(rho, config.manifold),
            'manifold': config.manifold,
            'residual': _residual(config.spec, config.rates, rho),
            'approx_model': series,
            'approx_trace_distance': approx_distance,
        },
    )
    return path


def cmd_wigner(config: ExperimentConfig, out_dir: pathlib.Path, threads: int = 1) -> pathlib.Path:
    """Write ``q, p, W`` row-major over ``q`` then ``p``."""
    space = FockSpace(config.dim)
    rho0 = _initial_state(config, space)
    if config.wigner.state == 'initial':
        rho = as_density(rho0)
    else:
        rho = steady_state(config.spec, config.rates, rho0)
    axis = np.linspace(-config.wigner.extent, config.wigner.extent, config.wigner.points)
    grid = wigner(rho, axis, axis, workers=threads)
    path = _output_path(config, out_dir, 'wigner')
    write_csv(
        path,
        ['q', 'p', 'W'],
        (
            [float(q), float(p), float(grid.values[i, j])]
            for i, q in enumerate(grid.q_axis)
            for j, p in enumerate(grid.p_axis)
        ),
    )
    dq, dp = grid.step
    write_meta(
        path,
        {
            **_base_meta(config, 'wigner'),
            'state': config.wigner.state,
            'q_axis': {'start': float(axis[0]), 'stop': float(axis[-1]), 'points': axis.size},
            'p_axis': {'start': float(axis[0]), 'stop': float(axis[-1]), 'points': axis.size},
            'min': float(np.min(grid.values)),
            'max': float(np.max(grid.values)),
            'integral': float(np.sum(grid.values) * dq * dp),
        },
    )
    return path


def _with_gamma(rates: DissipationRates, gamma: float) -> DissipationRates:
    if rates.gamma1 and not rates.gamma2:
        return dataclasses.replace(rates, gamma1=gamma)
    return dataclasses.replace(rates, gamma2=gamma)


def _scan_point(
    config: ExperimentConfig, value: float
) -> tuple[ModelSpec, DissipationRates, dict[str, typing.Any]]:
    assert config.scan is not None
    spec, rates, changes = config.spec, config.rates, {}
    axis = config.scan.axis
    if axis == 'epsilon_over_gamma':
        gamma_over_chi = config.scan.gamma_over_chi
        gamma = spec.chi * (1 / 150 if gamma_over_chi is None else gamma_over_chi)
        spec = spec.replace(epsilon=value * gamma)
        rates = _with_gamma(rates, gamma)
    elif axis == 'omega_kl':
        spec = spec.replace(omega_tune=value)
    elif axis == 'mean_n':
        changes = {'mean_n': value}
    else:
        changes = {'alpha': value}
    return spec, rates, changes


def _scan_row(config: ExperimentConfig, value: float) -> list[typing.Any]:
    space = FockSpace(config.dim)
    try:
        spec, rates, changes = _scan_point(config, value)
        rho0 = _initial_state(config, space, **changes)
        rho = steady_state(spec, rates, rho0)
    except (
        _errors.ConfigError,
        _errors.StateDomainError,
        _errors.SolverError,
        _errors.StiffnessError,
        _errors.CapacityError,
        _errors.TruncationWarning,
    ) as e:
        logger.warning('scan point %s = %r failed: %s', config.scan and config.scan.axis, value, e)
        nan = math.nan
        return [value, *([nan] * SCAN_LEVELS), nan, nan, f'{type(e).__name__}: {e}']
    probabilities = _levels(photon_probabilities(rho), SCAN_LEVELS)
    fidelity = blockade_fidelity(rho, config.manifold)
    return [value, *probabilities, fidelity, parity_split(rho).ratio_r, 'ok']


def cmd_scan(config: ExperimentConfig, out_dir: pathlib.Path, threads: int = 1) -> pathlib.Path:
    """Write one steady-state row per scan point, in axis order.

    Points run on a pool of ``threads`` workers. A failed point becomes a row of NaNs whose
    ``status`` names the error, and the scan carries on.
    """
    if config.scan is None:
        raise _errors.ConfigError('[scan] section required for a scan')
    values = np.linspace(config.scan.start, config.scan.stop, config.scan.points)
    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(lambda v: _scan_row(config, float(v)), values))
    header = [config.scan.axis, *(f'p{n}' for n in range(SCAN_LEVELS)), 'F', 'r', 'status']
    path = _output_path(config, out_dir, 'scan')
    write_csv(path, header, rows)
    failures = sum(1 for row in rows if row[-1] != 'ok')
    write_meta(
        path,
        {
            **_base_meta(config, 'scan'),
            'axis': config.scan,
            'initial': config.initial,
            'manifold': config.manifold,
            'failed_points': failures,
        },
    )
    return path


def cmd_table(config: ExperimentConfig, out_dir: pathlib.Path) -> pathlib.Path:
    """Compare the steady states reached from ``|0>`` and ``|1>`` for every listed model."""
    space = FockSpace(config.dim)
    header = ['model', 'initial', *(f'p{n}' for n in range(SCAN_LEVELS)), 'populated']
    header += ['trace_distance', 'state_dependent']
    rows: list[list[typing.Any]] = []
    for name in config.table_models:
        try:
            spec, rates = model(name, config.spec.chi, config.delta, config.delta_prime)
        except ValueError as e:
            raise _errors.ConfigError(f'[scan] models: {e}') from e
        initials = [make_initial(space, StateFamily.FOCK, m=m) for m in (0, 1)]
        states = [steady_state(spec, rates, rho0) for rho0 in initials]
        distance = trace_distance(states[0], states[1])
        for m, rho in zip((0, 1), states):
            probabilities = photon_probabilities(rho)
            populated = ';'.join(str(n) for n in np.flatnonzero(probabilities > POPULATED))
            rows.append(
                [
                    name,
                    m,
                    *_levels(probabilities, SCAN_LEVELS),
                    populated,
                    distance,
                    distance > STATE_DEPENDENT,
                ]
            )
    path = _output_path(config, out_dir, 'table')
    write_csv(path, header, rows)
    write_meta(
        path,
        {
            **_base_meta(config, 'table'),
            'models': config.table_models,
            'delta': config.delta,
            'delta_prime': config.delta_prime,
            'populated_threshold': POPULATED,
            'state_dependent_threshold': STATE_DEPENDENT,
        },
    )
    return path


##########################
# entry point            #
##########################


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='blockade',
        description='Photon blockade in driven Kerr resonators with one- and two-photon loss.',
    )
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v info, -vv debug')
    commands = parser.add_subparsers(dest='command', required=True)
    for command in (*COMMANDS, 'run'):
        sub = commands.add_parser(
            command,
            help='use the [run] kind of the configuration' if command == 'run' else command,
        )
        sub.add_argument('--config', type=pathlib.Path, required=True)
        sub.add_argument('--dim', type=int)
        sub.add_argument('--out', type=pathlib.Path, default=pathlib.Path())
        sub.add_argument('--model', help='1, 2, 3, 3p, 4, 5 or kl:K,L')
        sub.add_argument('--delta', help='epsilon / chi')
        sub.add_argument('--delta-prime', help='gamma / epsilon')
        sub.add_argument('--threads', type=int, help='worker threads (capped by BLOCKADE_THREADS)')
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {}
    if args.model is not None:
        out.setdefault('model', {})['model'] = args.model
    if args.delta is not None:
        out.setdefault('model', {})['delta'] = args.delta
    if args.delta_prime is not None:
        out.setdefault('rates', {})['delta_prime'] = args.delta_prime
    if args.dim is not None:
        out.setdefault('run', {})['dim'] = str(args.dim)
    return out


def worker_count(requested: int | None) -> int:
    """Return the scan pool size: ``requested`` or the CPU count, capped by BLOCKADE_THREADS.

    Raises:
        ConfigError: if BLOCKADE_THREADS is not a positive integer.
    """
    count = requested or os.cpu_count() or 1
    cap = os.environ.get('BLOCKADE_THREADS')
    if cap:
        try:
            limit = int(cap)
        except ValueError as e:
            raise _errors.ConfigError(f'BLOCKADE_THREADS={cap!r} is not an integer') from e
        if limit < 1:
            raise _errors.ConfigError(f'BLOCKADE_THREADS={cap!r} must be positive')
        count = min(count, limit)
    return max(1, count)


def run(
    config: ExperimentConfig, command: str, out_dir: pathlib.Path, *, threads: int = 1
) -> pathlib.Path:
    """Dispatch ``command`` (``run`` follows the configuration's kind) and return the CSV path."""
    kind = config.kind if command == 'run' else command
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info('%s %s: model %s at dim=%d', kind, config.name, config.model_name, config.dim)
    if kind == 'evolve':
        return cmd_evolve(config, out_dir)
    if kind == 'steady':
        return cmd_steady(config, out_dir)
    if kind == 'wigner':
        return cmd_wigner(config, out_dir, threads)
    if kind == 'scan':
        return cmd_scan(config, out_dir, threads)
    return cmd_table(config, out_dir)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', _errors.TruncationWarning)
            threads = worker_count(args.threads)
            config = load_config(args.config, _overrides(args))
            path = run(config, args.command, args.out, threads=threads)
    except _errors.TruncationWarning as e:
        logger.error('truncation too small: %s', e)
        return EXIT_TRUNCATION
    except (_errors.SolverError, _errors.StiffnessError, _errors.CapacityError) as e:
        logger.error('solver failure: %s', e)
        return EXIT_SOLVER
    except (
        _errors.ConfigError,
        _errors.StateDomainError,
        _errors.DispersiveLimitError,
        _errors.DimensionError,
        _errors.FockIndexError,
    ) as e:
        logger.error('configuration error: %s', e)
        return EXIT_CONFIG
    print(path, file=sys.stdout)
    return EXIT_OK
