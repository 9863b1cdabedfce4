# Copyright (c) 2026, the bridgemc authors.
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are met:
#
#     * Redistributions of source code must retain the above copyright
#       notice, this list of conditions and the following disclaimer.
#     * Redistributions in binary form must reproduce the above copyright
#       notice, this list of conditions and the following disclaimer in the
#       documentation and/or other materials provided with the distribution.
#     * Neither the name of the copyright holder nor the names of its
#       contributors may be used to endorse or promote products derived from
#       this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT OWNER OR CONTRIBUTORS BE
# LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
# CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.

"""
Command-line interface to bridgemc.
"""

from __future__ import print_function

import os
import sys
import traceback

from optparse import OptionParser

import numpy as np

from . import create_default_model_context
from ._version import __version__
from .config import load_config
from .core import BridgeInternalError, ChainError, InfeasibleConstraint, InvalidConfig, InvalidData, \
    InvalidGrid, MatchingConditionError, NonFiniteState, SingularLyapunovError, SingularMatrixError, \
    UnsupportedAuxiliary, UnsupportedModel, print_bold
from .diagnostics import summarize
from .guided import GuidedBridge, innovation_map, one_step_covariance_errors
from .linproc import precompute_bridge_grid
from .mcmc import run_chain
from .models.cle import ssa_simulate
from .models.linear import brownian_model
from .output_tools import read_observations_csv, read_trace_csv, state_columns, write_csv, \
    write_json, write_observations, write_trace
from .sde_core import Observations, TimeGrid, euler_maruyama, sample_wiener, subsample


class UsageError(Exception):
    pass


_usage = """usage: bridgemc [options] <command> <args>

Commands:

bridgemc simulate --config <file>
  simulate a diffusion (or reaction network) and write observations.csv.

bridgemc run --config <file>
  run the innovation scheme sampler and write trace.csv and summary.json.

bridgemc bridges --config <file>
  draw guided bridge proposals between two states and write bridges.csv.
  States are read and written in the model's own coordinates, named in
  the header (log_x, log_y for lotka_volterra).

bridgemc discretization --config <file>
  measure one step covariance errors of the bridge discretization with
  and without time change and write discretization.csv.

bridgemc diagnose <trace.csv>
  print means, standard deviations, autocorrelation times and effective
  sample sizes of a stored trace.
"""


def bridgemc_main(args=None):
    if args is None:
        args = sys.argv[1:]
    try:
        exit_code = _bridgemc_main(args)
        if exit_code not in [0, None]:
            sys.exit(exit_code)
    except UsageError as e:
        print(_usage, file=sys.stderr)
        print('ERROR: %s' % (str(e)), file=sys.stderr)
        if hasattr(os, 'EX_USAGE'):
            sys.exit(os.EX_USAGE)
        else:
            sys.exit(64)  # EX_USAGE is not available on Windows; EX_USAGE is 64 on Unix
    except InvalidConfig as e:
        print("""
ERROR: invalid configuration [%s]:
%s
""" % (e.origin, '\n'.join('  ' + msg for msg in e.errors)), file=sys.stderr)
        sys.exit(1)
    except InvalidData as e:
        print('ERROR: %s' % (str(e)), file=sys.stderr)
        sys.exit(1)
    except ChainError as e:
        print("""
ERROR: the sampler failed at iteration %d:

%s
""" % (e.iteration, e.error), file=sys.stderr)
        sys.exit(1)
    except (UnsupportedModel, UnsupportedAuxiliary, InfeasibleConstraint, MatchingConditionError) as e:
        print('ERROR: %s' % (str(e)), file=sys.stderr)
        sys.exit(1)
    except (NonFiniteState, SingularMatrixError, SingularLyapunovError) as e:
        print('ERROR: numerical failure: %s' % (str(e)), file=sys.stderr)
        sys.exit(1)
    except BridgeInternalError as e:
        print("""
ERROR: bridgemc experienced an internal error.
Please file a bug report with the message below.

bridgemc version: %s

%s
""" % (__version__, e.message), file=sys.stderr)
        sys.exit(1)
    except Exception as e:
        print("""
ERROR: bridgemc experienced an error: %s
Please file a bug report with the stack trace below.

bridgemc version: %s

%s
""" % (e, __version__, traceback.format_exc()), file=sys.stderr)
        sys.exit(1)


def _bridgemc_main(args):
    parser = OptionParser(usage=_usage, prog='bridgemc')
    parser.add_option('--config', '-c', dest='config', default=None,
                      help='Run configuration (YAML)')
    parser.add_option('--seed', dest='seed', default=None, type='int',
                      help='Override mcmc.seed')
    parser.add_option('--out', '-o', dest='out', default=None,
                      help='Override output.dir')
    parser.add_option('--threads', '-j', dest='threads', default=None, type='int',
                      help='Override mcmc.threads')
    parser.add_option('--burn-in', dest='burn_in', default=None, type='int',
                      help='Override mcmc.burn_in (diagnose)')
    parser.add_option('--thin', dest='thin', default=None, type='int',
                      help='Override mcmc.thin (diagnose)')
    parser.add_option('--verbose', '-v', dest='verbose', default=False,
                      action='store_true', help='verbose display')
    parser.add_option('--version', dest='print_version', default=False,
                      action='store_true', help='print version and exit')

    options, args = parser.parse_args(args)
    if options.print_version:
        print('{}'.format(__version__))
        sys.exit(0)

    if len(args) == 0:
        parser.error('Please enter a command')
    command = args[0]
    if command not in _commands:
        parser.error('Unsupported command %s.' % command)
    args = args[1:]

    config = None
    if options.config:
        config = load_config(options.config)
        apply_overrides(config, options)
    elif command not in _command_file_args:
        raise UsageError('command [%s] needs --config' % command)

    if command in _command_file_args:
        return _file_args_handler(command, parser, options, args, config)
    return _no_args_handler(command, parser, options, args, config)


def _no_args_handler(command, parser, options, args, config):
    if args:
        parser.error('command [%s] takes no arguments' % (command))
    else:
        return command_handlers[command](config, options)


def _file_args_handler(command, parser, options, args, config):
    if len(args) != 1:
        parser.error("Please enter one file for '%s'" % command)
    else:
        return command_handlers[command](args[0], config, options)


def apply_overrides(config, options):
    """
    Command-line flags take precedence over the configuration file.
    """
    for key, value in (('mcmc.seed', options.seed), ('output.dir', options.out),
                       ('mcmc.threads', options.threads), ('mcmc.burn_in', options.burn_in),
                       ('mcmc.thin', options.thin)):
        if value is not None:
            config.set(key, value)


def load_model(config, verbose=False):
    """
    :raises: :exc:`InvalidConfig` if ``model.name`` is not registered
    """
    _require(config, 'model.name')
    context = create_default_model_context(verbose=verbose)
    try:
        return context.get_model(config.model_name, config.model_options())
    except KeyError:
        raise InvalidConfig(['model.name: unknown model [%s], choose from [%s]' % (
            config.model_name, ', '.join(context.get_model_keys()))], origin=config.origin)


def output_dir(config):
    path = config.output_dir
    if not os.path.isdir(path):
        os.makedirs(path)
    return path


def _require(config, *keys):
    missing = [k for k in keys if not config.is_set(k)]
    if missing:
        raise InvalidConfig(['%s is required' % k for k in missing], origin=config.origin)


def observation_times(T, dt_obs):
    return dt_obs * np.arange(int(round(T / dt_obs)) + 1)


def simulate_observations(model, theta, config, rng):
    """
    Simulate *model* at *theta* according to the ``simulate.*`` keys.

    :returns: ``(Observations, scheme)``
    """
    _require(config, 'simulate.x0', 'simulate.T')
    x0 = np.array(config.get('simulate.x0'))
    times = observation_times(config.get('simulate.T'), config.get('simulate.dt_obs'))
    if times.shape[0] < 2:
        raise InvalidConfig(['simulate.T: shorter than one observation interval'], origin=config.origin)
    scheme = config.get('simulate.scheme') or ('ssa' if hasattr(model, 'net') else 'euler')
    if scheme == 'ssa':
        if not hasattr(model, 'net'):
            raise InvalidConfig(['simulate.scheme: ssa needs a reaction network model'], origin=config.origin)
        result = ssa_simulate(model.net, theta, x0, times[-1], rng, snapshot_times=times)
        return Observations(times, result.snapshots), scheme
    grid = TimeGrid.uniform(0.0, times[-1], config.get('simulate.fine_points'))
    path = euler_maruyama(model, theta, x0, grid, sample_wiener(grid, model.d_noise, rng))
    try:
        return subsample(path, times), scheme
    except InvalidGrid as e:
        raise InvalidConfig(['simulate.fine_points: %s' % e], origin=config.origin)


def command_simulate(config, options):
    model = load_model(config, options.verbose)
    theta = config.initial_theta(model)
    obs, scheme = simulate_observations(model, theta, config, np.random.default_rng(config.seed))
    out = output_dir(config)
    write_observations(os.path.join(out, 'observations.csv'), obs)
    write_json(os.path.join(out, 'provenance.json'), {
        'model': model.name,
        'theta': theta,
        'scheme': scheme,
        'seed': config.seed,
        'version': __version__,
        'config': config.to_dict(),
    })
    print('wrote %d observations of %s to %s' % (obs.count, model.name, out))


def load_observations(model, config):
    """
    :returns: ``(Observations, simulated)``
    """
    if config.is_set('data.file'):
        return read_observations_csv(config.get('data.file')), False
    obs, _ = simulate_observations(model, config.initial_theta(model), config,
                                   np.random.default_rng(config.seed))
    return obs, True


def print_summary(summary, names):
    print('%-10s %12s %12s %10s %10s' % ('parameter', 'mean', 'sd', 'act', 'ess'))
    for name in names:
        entry = summary[name]
        print('%-10s %12s %12s %10s %10s' % tuple(
            [name] + ['-' if entry[k] is None else '%.5g' % entry[k] for k in ('mean', 'sd', 'act', 'ess')]))


def command_run(config, options):
    model = load_model(config, options.verbose)
    data, simulated = load_observations(model, config)
    out = output_dir(config)
    if simulated:
        write_observations(os.path.join(out, 'observations.csv'), data)
    output = run_chain(config, data, model, verbose=options.verbose)
    write_trace(os.path.join(out, 'trace.csv'), output.names, output.trace)
    summary = summarize(output.trace, output.names, config.burn_in, config.thin)
    write_json(os.path.join(out, 'summary.json'), {
        'parameters': summary,
        'acceptance': output.acceptance_rates(),
        'proposed': output.proposed,
        'accepted': output.accepted,
        'flags': output.flags,
        'seed': output.seed,
        'version': __version__,
        'config': output.config,
    })
    print_bold('%s: %d iterations of %s on %d observations' % (
        model.name, config.iterations, config.algorithm, data.count))
    print_summary(summary, output.names)
    rates = output.acceptance_rates()
    print('acceptance: %s' % ', '.join('%s %.3f' % (k, rates[k]) for k in sorted(rates)))
    if any(output.flags.values()):
        print('flags: %s' % ', '.join('%s %d' % (k, v) for k, v in sorted(output.flags.items()) if v))


def command_bridges(config, options):
    _require(config, 'bridges.u', 'bridges.v', 'bridges.T')
    model = load_model(config, options.verbose)
    theta = config.initial_theta(model)
    u = np.array(config.get('bridges.u'))
    v = np.array(config.get('bridges.v'))
    T = config.get('bridges.T')
    if getattr(model, 'linearization', False) is None:
        if not config.is_set('data.file'):
            raise InvalidConfig(['bridges for %s need data.file to linearize the hazards' % model.name],
                                origin=config.origin)
        model.fit_linearization(read_observations_csv(config.get('data.file')).values)
    aux = model.auxiliary(theta, T, u, v)
    ctx = precompute_bridge_grid(aux, u, v, T, config.m, direct=not config.time_change)
    bridge = GuidedBridge(model, theta, ctx)
    n_samples = config.get('bridges.n_samples')
    streams = np.random.SeedSequence(config.seed).spawn(n_samples)
    rows = []
    for k in range(n_samples):
        Z = sample_wiener(ctx.s_grid, model.d_noise, np.random.default_rng(streams[k]))
        path, log_psi = innovation_map(bridge, Z, config.time_change)
        for s, t, x in zip(ctx.s_grid.points, path.grid.points, path.states):
            rows.append([k, s, t] + list(x))
    out = output_dir(config)
    columns = list(model.coordinate_names or state_columns(model.d))
    write_csv(os.path.join(out, 'bridges.csv'), ['sample', 's', 't'] + columns, rows)
    print('wrote %d bridges of %s to %s' % (n_samples, model.name, out))


DISCRETIZATION_COLUMNS = ['m', 'i', 'd', 'd_prime', 'R', 'err_direct', 'se_direct',
                          'err_timechanged', 'se_timechanged']


def command_discretization(config, options):
    model, theta = brownian_model(1, 1.0)
    T = config.get('discretization.T')
    replicates = config.get('discretization.replicates')
    rng = np.random.default_rng(config.seed)
    zero = np.zeros(1)
    rows = []
    for m in config.get('discretization.m'):
        ctx = precompute_bridge_grid(model.auxiliary(theta, T, zero, zero), zero, zero, T, m + 1)
        bridge = GuidedBridge(model, theta, ctx)
        for i in range(1, m + 1):
            result = one_step_covariance_errors(bridge, i, replicates, rng)
            rows.append([result[k] for k in DISCRETIZATION_COLUMNS])
            if options.verbose:
                print('m=%d i=%d: direct %.3g, time changed %.3g' % (
                    m, i, result['err_direct'], result['err_timechanged']), file=sys.stderr)
    out = output_dir(config)
    write_csv(os.path.join(out, 'discretization.csv'), DISCRETIZATION_COLUMNS, rows)
    print('wrote %d rows to %s' % (len(rows), out))


def command_diagnose(trace_file, config, options):
    names, trace = read_trace_csv(trace_file)
    burn_in = options.burn_in if options.burn_in is not None else (config.burn_in if config else 0)
    thin = options.thin if options.thin is not None else (config.thin if config else 1)
    if burn_in < 0 or thin < 1:
        raise UsageError('--burn-in must be >= 0 and --thin >= 1')
    summary = summarize(trace, names, burn_in, thin)
    print_bold('%s: %d iterations, burn-in %d, thin %d' % (trace_file, trace.shape[0], burn_in, thin))
    print_summary(summary, names)


command_handlers = {
    'simulate': command_simulate,
    'run': command_run,
    'bridges': command_bridges,
    'discretization': command_discretization,
    'diagnose': command_diagnose,
}

# commands that take a file as argument
_command_file_args = ['diagnose']

_commands = command_handlers.keys()
