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
Run configuration files.

A configuration is a YAML mapping of flat dotted keys::

  model.name: arctan
  model.theta: [-2.0, 0.0, 0.75]
  mcmc.algorithm: alg2
  mcmc.m: 50
  prior.alpha: gaussian 0 5
  prior.sigma: flat_log
  proposal: log_uniform 0.1

Laws (``prior.*`` and ``proposal``) are ``<kind> [args]`` lines.
"""

import numpy as np
import yaml

from .core import InvalidConfig, InvalidData
from .priors import Prior, PriorSpec, ProposalKernel

PRIOR_PREFIX = 'prior.'


def _to_int(minimum):
    def convert(value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError('expected an integer, got %r' % (value,))
        if value < minimum:
            raise ValueError('must be >= %d, got %d' % (minimum, value))
        return value
    return convert


def _to_float(positive=False):
    def convert(value):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError('expected a number, got %r' % (value,))
        if positive and not value > 0.0:
            raise ValueError('must be > 0, got %r' % (value,))
        return float(value)
    return convert


def _to_float_list(value):
    if not isinstance(value, list):
        value = [value]
    return [_to_float()(v) for v in value]


def _to_int_list(value):
    if not isinstance(value, list):
        value = [value]
    return [_to_int(2)(v) for v in value]


def _to_bool(value):
    if not isinstance(value, bool):
        raise ValueError('expected true or false, got %r' % (value,))
    return value


def _to_str(value):
    if not isinstance(value, str):
        raise ValueError('expected a string, got %r' % (value,))
    return value


def _choice(*choices):
    def convert(value):
        if value not in choices:
            raise ValueError('must be one of [%s], got %r' % (','.join(choices), value))
        return value
    return convert


def _to_kernel(value):
    return ProposalKernel.parse(_to_str(value))


# key: (converter, default); a default of None means no default
KEYS = {
    'model.name': (_to_str, None),
    'model.theta': (_to_float_list, None),
    'model.K_DNA': (_to_int(1), 10),
    'model.d': (_to_int(1), 1),
    'mcmc.algorithm': (_choice('alg1', 'alg2', 'alg3'), 'alg1'),
    'mcmc.m': (_to_int(2), 20),
    'mcmc.iterations': (_to_int(0), 1000),
    'mcmc.burn_in': (_to_int(0), 0),
    'mcmc.thin': (_to_int(1), 1),
    'mcmc.seed': (_to_int(0), 0),
    'mcmc.positivity': (_to_bool, False),
    'mcmc.time_change': (_to_bool, True),
    'mcmc.alpha': (_to_float(positive=True), None),
    'mcmc.threads': (_to_int(1), 1),
    'mcmc.cap': (_to_int(1), 1000),
    'proposal': (_to_kernel, None),
    'data.file': (_to_str, None),
    'simulate.x0': (_to_float_list, None),
    'simulate.T': (_to_float(positive=True), None),
    'simulate.dt_obs': (_to_float(positive=True), 1.0),
    'simulate.fine_points': (_to_int(2), 1001),
    'simulate.scheme': (_choice('euler', 'ssa'), None),
    'bridges.u': (_to_float_list, None),
    'bridges.v': (_to_float_list, None),
    'bridges.T': (_to_float(positive=True), None),
    'bridges.n_samples': (_to_int(0), 10),
    'discretization.T': (_to_float(positive=True), 1.0),
    'discretization.m': (_to_int_list, [10]),
    'discretization.replicates': (_to_int(1), 100000),
    'output.dir': (_to_str, '.'),
}

MODEL_OPTIONS = {
    'prokaryotic': ['K_DNA'],
    'linear': ['d'],
}


class RunConfig(object):
    """
    Validated configuration.  Only explicitly given keys are stored;
    defaults are filled in on access.
    """

    def __init__(self, values=None, priors=None, origin=None):
        self.values = dict(values or {})
        self.priors = dict(priors or {})
        self.origin = origin

    def get(self, key):
        if key in self.values:
            return self.values[key]
        return KEYS[key][1]

    def is_set(self, key):
        return key in self.values

    def set(self, key, value):
        """
        :raises: :exc:`InvalidConfig` if *value* does not validate
        """
        try:
            self.values[key] = KEYS[key][0](value)
        except KeyError:
            raise InvalidConfig(['unknown key [%s]' % key], origin=self.origin)
        except ValueError as e:
            raise InvalidConfig(['%s: %s' % (key, e)], origin=self.origin)

    model_name = property(lambda self: self.get('model.name'))
    algorithm = property(lambda self: self.get('mcmc.algorithm'))
    m = property(lambda self: self.get('mcmc.m'))
    iterations = property(lambda self: self.get('mcmc.iterations'))
    burn_in = property(lambda self: self.get('mcmc.burn_in'))
    thin = property(lambda self: self.get('mcmc.thin'))
    seed = property(lambda self: self.get('mcmc.seed'))
    positivity = property(lambda self: self.get('mcmc.positivity'))
    time_change = property(lambda self: self.get('mcmc.time_change'))
    alpha = property(lambda self: self.get('mcmc.alpha'))
    threads = property(lambda self: self.get('mcmc.threads'))
    cap = property(lambda self: self.get('mcmc.cap'))
    proposal = property(lambda self: self.get('proposal'))
    output_dir = property(lambda self: self.get('output.dir'))

    def model_options(self):
        """
        :returns: keyword arguments for the model factory
        """
        return dict((k, self.get('model.' + k)) for k in MODEL_OPTIONS.get(self.model_name, [])
                    if self.is_set('model.' + k))

    def prior(self, model):
        """
        :raises: :exc:`InvalidConfig` naming every parameter without prior
        """
        missing = [n for n in model.param_names if n not in self.priors]
        if missing:
            raise InvalidConfig(['no prior for parameter [%s]' % n for n in missing], origin=self.origin)
        return Prior([self.priors[n] for n in model.param_names])

    def initial_theta(self, model):
        if not self.is_set('model.theta'):
            theta = model.default_theta()
            if theta is None:
                raise InvalidConfig(['model.theta is required for %s' % model.name], origin=self.origin)
            return theta
        theta = np.array(self.get('model.theta'))
        if theta.shape[0] != len(model.param_names):
            raise InvalidConfig(['model.theta: %s has %d parameters (%s), got %d' % (
                model.name, len(model.param_names), ', '.join(model.param_names), theta.shape[0])],
                origin=self.origin)
        return theta

    def to_dict(self):
        """
        :returns: plain dict of the given keys with laws as strings
        """
        data = {}
        for key, value in self.values.items():
            data[key] = str(value) if isinstance(value, ProposalKernel) else value
        for name, spec in self.priors.items():
            data[PRIOR_PREFIX + name] = str(spec)
        return data

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values and self.priors == other.priors

    def __ne__(self, other):
        return not self.__eq__(other)


def parse_config_data(data, origin='<string>'):
    """
    :param data: mapping as loaded from YAML
    :raises: :exc:`InvalidConfig` listing all problems
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise InvalidConfig(['configuration must be a YAML mapping'], origin=origin)
    errors = []
    values = {}
    priors = {}
    for key in sorted(data, key=str):
        value = data[key]
        if not isinstance(key, str):
            errors.append('invalid key %r' % (key,))
        elif key.startswith(PRIOR_PREFIX):
            try:
                priors[key[len(PRIOR_PREFIX):]] = PriorSpec.parse(_to_str(value))
            except ValueError as e:
                errors.append('%s: %s' % (key, e))
        elif key not in KEYS:
            errors.append('unknown key [%s]' % key)
        else:
            try:
                values[key] = KEYS[key][0](value)
            except ValueError as e:
                errors.append('%s: %s' % (key, e))
    if errors:
        raise InvalidConfig(errors, origin=origin)
    return RunConfig(values, priors, origin=origin)


def parse_config(text, origin='<string>'):
    """
    Parse configuration text.

    :raises: :exc:`InvalidData` if the text is not YAML
    :raises: :exc:`InvalidConfig` if it does not validate
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InvalidData('invalid YAML: %s' % e, origin=origin)
    return parse_config_data(data, origin=origin)


def load_config(filepath):
    """
    :raises: :exc:`InvalidData` if the file cannot be read or parsed
    """
    try:
        with open(filepath) as f:
            text = f.read()
    except IOError as e:
        raise InvalidData('I/O error reading configuration: %s' % e, origin=filepath)
    return parse_config(text, origin=filepath)


def emit_config(config):
    """
    :returns: canonical YAML text; ``parse_config(emit_config(c)) == c``
    """
    return yaml.safe_dump(config.to_dict(), default_flow_style=None)
