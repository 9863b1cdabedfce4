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
Innovation scheme samplers for discretely observed diffusions.

The chain runs on (theta, Z_1, ..., Z_n), the parameter and the Wiener
increments driving the guided proposal of every segment between two
observations.  Each iteration updates the innovations of all segments
independently (all segments in one array pass, bridges built in parallel
when asked to) and then the parameters with
one of

* ``alg1``: Metropolis-Hastings with a configurable proposal kernel,
* ``alg2``: Metropolis-Hastings for the diffusion parameters followed by a
  Gibbs draw of the drift parameters from their conjugate normal law,
  holding the path fixed,
* ``alg3``: preconditioned random walk N(theta, alpha^2 W^{-1}) for the
  drift parameters, with W from the imputed path.

The unknown transition densities cancel against the guided proposals,
so acceptance ratios only involve the auxiliary densities p~ and Psi.
"""

from __future__ import print_function

import concurrent.futures
import copy
import sys

import numpy as np
import scipy.linalg

from .core import ChainError, InfeasibleConstraint, MatchingConditionError, NonFiniteState, \
    SingularMatrixError, UnsupportedAuxiliary, UnsupportedModel, bd_debug
from .guided import GuidedBridge, innovation_map_many, invert_g
from .linproc import aux_log_density, cholesky_stack, precompute_bridge_grid
from .sde_core import Path, sample_wiener

ALGORITHMS = ('alg1', 'alg2', 'alg3')
DEFAULT_CAP = 1000

# failures that reject a proposal instead of stopping the chain
_REJECTABLE = (NonFiniteState, SingularMatrixError, MatchingConditionError, FloatingPointError,
               np.linalg.LinAlgError, UnsupportedAuxiliary)

FLAG_KEYS = ('nonfinite_innovations', 'nonfinite_theta', 'positivity_resamples',
             'positivity_cap_hits', 'clamped_paths', 'w_not_pd')


def default_alpha(n):
    """
    Step scale 2.38 / sqrt(n) of the preconditioned random walk.
    """
    return 2.38 / np.sqrt(n)


class ChainState(object):
    """
    Current parameter, innovations and, per segment, the bridge, the
    proposal path g(theta, Z_i), log Psi_i and log p~_i.
    """

    def __init__(self, theta, innovations, bridges, paths, log_psi, log_ptilde):
        self.theta = np.array(theta, dtype=float)
        self.innovations = list(innovations)
        self.bridges = list(bridges)
        self.paths = list(paths)
        self.log_psi = list(log_psi)
        self.log_ptilde = list(log_ptilde)


class ChainOutput(object):

    def __init__(self, names, iterations, seed, config=None):
        self.names = list(names)
        self.trace = np.empty((iterations, len(names)))
        self.proposed = {}
        self.accepted = {}
        self.flags = dict((k, 0) for k in FLAG_KEYS)
        self.log_ratios = []
        self.seed = seed
        self.config = config

    def count(self, block, accepted):
        self.proposed[block] = self.proposed.get(block, 0) + 1
        self.accepted[block] = self.accepted.get(block, 0) + int(bool(accepted))

    def flag(self, key, n=1):
        self.flags[key] = self.flags.get(key, 0) + n

    def acceptance_rates(self):
        return dict((k, self.accepted[k] / float(self.proposed[k])) for k in self.proposed if self.proposed[k])

    def __eq__(self, other):
        return isinstance(other, ChainOutput) and self.names == other.names and \
            np.array_equal(self.trace, other.trace) and self.proposed == other.proposed and \
            self.accepted == other.accepted and self.flags == other.flags and self.seed == other.seed

    def __ne__(self, other):
        return not self.__eq__(other)


def _as_paths(paths):
    return [paths] if isinstance(paths, Path) else list(paths)


def conjugate_stats(paths, model, theta, prior_precision=None):
    """
    Sufficient statistics of the drift parameters for a drift
    phi(x) theta[model.drift_indices] along *paths*:

        mu    = sum_j phi(Y_j)' a^{-1}(Y_j) (Y_{j+1} - Y_j)
        Sigma = sum_j phi(Y_j)' a^{-1}(Y_j) phi(Y_j) dt_j
        W     = Sigma + diag(prior_precision)

    :param paths: :class:`bridgemc.sde_core.Path` or list of them
    :param prior_precision: xi^{-2} per drift parameter, ``None`` for flat
    :returns: ``(mu, Sigma, W)``
    :raises: :exc:`SingularMatrixError` if a is singular along a path
    """
    if model.drift_indices is None:
        raise UnsupportedModel('%s has no drift that is linear in its parameters' % model.name)
    n = len(model.drift_indices)
    paths = _as_paths(paths)
    t = np.concatenate([p.grid.points[:-1] for p in paths])
    dt = np.concatenate([p.grid.steps for p in paths])
    X = np.concatenate([p.states[:-1] for p in paths])
    dX = np.concatenate([np.diff(p.states, axis=0) for p in paths])
    phi = model.drift_basis_many(t, X, theta)
    L = cholesky_stack(model.diffusion_many(t, X, theta), 'diffusion matrix', t)
    Y = np.linalg.solve(L, phi)
    ainv_phi = np.linalg.solve(np.swapaxes(L, 1, 2), Y)
    mu = np.einsum('jdn,jd->n', ainv_phi, dX)
    Sigma = np.einsum('jdn,jdk,j->nk', phi, ainv_phi, dt)
    Sigma = 0.5 * (Sigma + Sigma.T)
    precision = np.zeros(n) if prior_precision is None else np.asarray(prior_precision, dtype=float)
    return mu, Sigma, Sigma + np.diag(precision)


def preconditioned_log_ratio(current, proposal, W_current, W_proposal, alpha):
    """
    log q(current | proposal) - log q(proposal | current) for the kernels
    N(current, alpha^2 W_current^{-1}) and N(proposal, alpha^2 W_proposal^{-1}).
    """
    delta = np.asarray(proposal, dtype=float) - np.asarray(current, dtype=float)
    _, logdet_new = np.linalg.slogdet(W_proposal)
    _, logdet_cur = np.linalg.slogdet(W_current)
    quad = delta.dot((W_proposal - W_current).dot(delta))
    return 0.5 * (logdet_new - logdet_cur) - quad / (2.0 * alpha ** 2)


class _Candidate(object):
    """
    Bridges, paths and likelihood terms of all segments at one parameter.
    """

    def __init__(self, theta, bridges, paths, log_psi, log_ptilde):
        self.theta = theta
        self.bridges = bridges
        self.paths = paths
        self.log_psi = log_psi
        self.log_ptilde = log_ptilde

    def nonnegative(self):
        return all(np.all(p.states >= 0.0) for p in self.paths)


class BridgeSampler(object):
    """
    Driver of the innovation scheme for one model and data set.
    """

    def __init__(self, model, observations, m, prior, kernel=None, algorithm='alg1',
                 positivity=False, time_change=True, threads=1, cap=DEFAULT_CAP, alpha=None):
        """
        :param model: :class:`bridgemc.sde_core.DiffusionModel`
        :param observations: :class:`bridgemc.sde_core.Observations`
        :param m: points per segment including both ends
        :param prior: :class:`bridgemc.priors.Prior`
        :param kernel: :class:`bridgemc.priors.ProposalKernel` for the
          Metropolis-Hastings block (all parameters for ``alg1``, the non
          drift parameters otherwise)
        :raises: :exc:`UnsupportedModel`, :exc:`InfeasibleConstraint`
        """
        if algorithm not in ALGORITHMS:
            raise ValueError('algorithm must be one of [%s], got %r' % (','.join(ALGORITHMS), algorithm))
        if m < 2:
            raise ValueError('m must be at least 2, got %d' % m)
        self.model = model
        self.observations = observations
        self.segments = observations.segments()
        self.m = m
        self.prior = prior
        self.kernel = kernel
        self.algorithm = algorithm
        self.positivity = positivity
        self.time_change = time_change
        self.threads = threads
        self.cap = cap
        self.n_params = len(model.param_names)

        if positivity and np.any(observations.values < 0.0):
            raise InfeasibleConstraint('observations violate the nonnegativity constraint')

        if algorithm == 'alg1':
            self.drift_indices = []
            self.mh_indices = list(range(self.n_params))
        else:
            if model.drift_indices is None:
                raise UnsupportedModel('%s needs a drift linear in the parameters' % algorithm)
            self.drift_indices = list(model.drift_indices)
            self.mh_indices = [i for i in range(self.n_params) if i not in self.drift_indices]
        if algorithm == 'alg2':
            if model.d_noise != model.d:
                raise UnsupportedModel('alg2 needs a square dispersion, model has %d x %d' % (model.d, model.d_noise))
            if any(p is None for p in prior.precisions(self.drift_indices)):
                raise UnsupportedModel('alg2 needs gaussian or flat priors on the drift parameters')
        if self.mh_indices and kernel is None:
            raise ValueError('a proposal kernel is needed for parameters %s'
                             % ', '.join(model.param_names[i] for i in self.mh_indices))
        self.alpha = alpha if alpha is not None else (default_alpha(len(self.drift_indices)) if self.drift_indices else None)
        self._executor = None
        self.state = None

    # -- evaluation --------------------------------------------------------

    def _map(self, fn, items):
        if self._executor is None:
            return [fn(item) for item in items]
        return list(self._executor.map(fn, items))

    def _context(self, i, theta):
        T, u, v = self.segments[i]
        aux = self.model.auxiliary(theta, T, u, v)
        return precompute_bridge_grid(aux, u, v, T, self.m, direct=not self.time_change)

    def build_bridges(self, theta):
        """
        :returns: one :class:`bridgemc.guided.GuidedBridge` per segment
        """
        contexts = self._map(lambda i: self._context(i, theta), range(len(self.segments)))
        return [GuidedBridge(self.model, theta, ctx) for ctx in contexts]

    def _evaluate(self, theta, innovations, bridges=None):
        """
        Paths and likelihood terms of all segments at *theta*; *bridges*
        built for *theta* are reused when given.

        :raises: :exc:`NonFiniteState` for the first failing segment
        """
        if bridges is None:
            bridges = self.build_bridges(theta)
        paths, log_psis, failures = innovation_map_many(bridges, innovations, self.time_change)
        if failures:
            raise failures[min(failures)]
        bad = np.flatnonzero(~np.isfinite(log_psis))
        if bad.shape[0]:
            raise NonFiniteState(int(bad[0]), log_psis[bad[0]], what='log Psi')
        log_ptilde = [b.ctx.log_ptilde if b.ctx.log_ptilde is not None else aux_log_density(b.aux, 0.0, b.u)
                      for b in bridges]
        return _Candidate(theta, bridges, paths, list(log_psis), log_ptilde)

    def _adopt(self, state, cand, innovations=None):
        state.theta = cand.theta
        state.bridges = cand.bridges
        state.paths = cand.paths
        state.log_psi = cand.log_psi
        state.log_ptilde = cand.log_ptilde
        if innovations is not None:
            state.innovations = list(innovations)

    def _count_clamped(self, path, theta):
        return int(any(self.model.clamped(x, theta) for x in path.states))

    def _draw_innovations(self, bridges, streams):
        """
        Fresh innovations for every segment, each from its own stream.
        Under the positivity constraint a segment whose path leaves the
        nonnegative orthant is redrawn, at most cap times; a segment
        with a non-finite path is not redrawn.

        :returns: dict with per segment lists ``Z``, ``path``, ``log_psi``,
          ``resamples``, and the sets ``failed`` (segment -> exception)
          and ``cap_hit``
        """
        n = len(bridges)
        out = {'Z': [None] * n, 'path': [None] * n, 'log_psi': [np.nan] * n, 'resamples': [0] * n,
               'failed': {}, 'cap_hit': set()}
        pending = list(range(n))
        for _ in range(self.cap if self.positivity else 1):
            for i in pending:
                out['Z'][i] = sample_wiener(bridges[i].ctx.s_grid, self.model.d_noise, streams[i])
            paths, log_psis, failures = innovation_map_many(
                [bridges[i] for i in pending], [out['Z'][i] for i in pending], self.time_change)
            retry = []
            for k, i in enumerate(pending):
                if k in failures or not np.isfinite(log_psis[k]):
                    out['failed'][i] = failures.get(k) or NonFiniteState(i, log_psis[k], what='log Psi')
                    continue
                if self.positivity and np.any(paths[k].states < 0.0):
                    out['resamples'][i] += 1
                    retry.append(i)
                    continue
                out['path'][i] = paths[k]
                out['log_psi'][i] = log_psis[k]
            pending = retry
            if not pending:
                break
        out['cap_hit'] = set(pending)
        return out

    def initial_state(self, theta, streams):
        """
        Draw initial innovations for every segment.

        :param streams: one generator per segment
        :raises: :exc:`InfeasibleConstraint` if no nonnegative proposal is
          found within the cap
        """
        theta = self.model.check_theta(theta)
        bridges = self.build_bridges(theta)
        draws = self._draw_innovations(bridges, streams)
        if draws['failed']:
            raise draws['failed'][min(draws['failed'])]
        if draws['cap_hit']:
            raise InfeasibleConstraint('no nonnegative initial proposal for segment %d' % min(draws['cap_hit']))
        cand = self._evaluate(theta, draws['Z'], bridges)
        state = ChainState(theta, draws['Z'], [], [], [], [])
        self._adopt(state, cand)
        return state

    # -- step 2 ------------------------------------------------------------

    def update_innovations(self, state, streams, output):
        """
        Independence proposals of fresh innovations for every segment,
        accepted with probability min(1, Psi(new) / Psi(current)).
        """
        draws = self._draw_innovations(state.bridges, streams)
        for i in range(len(self.segments)):
            output.flag('positivity_resamples', draws['resamples'][i])
            if i in draws['failed']:
                bd_debug('segment %d: rejected innovations (%s)' % (i, draws['failed'][i]))
                output.flag('nonfinite_innovations')
                output.count('innovations', False)
                continue
            if i in draws['cap_hit']:
                output.flag('positivity_cap_hits')
                output.count('innovations', False)
                continue
            log_psi = draws['log_psi'][i]
            accepted = np.log(streams[i].random()) <= log_psi - state.log_psi[i]
            output.count('innovations', accepted)
            if accepted:
                state.innovations[i] = draws['Z'][i]
                state.paths[i] = draws['path'][i]
                state.log_psi[i] = log_psi
                if self.model.nonnegative:
                    output.flag('clamped_paths', self._count_clamped(draws['path'][i], state.theta))
        return state

    # -- step 3 ------------------------------------------------------------

    def _log_target_ratio(self, state, cand):
        return (np.sum(cand.log_ptilde) - np.sum(state.log_ptilde) +
                np.sum(cand.log_psi) - np.sum(state.log_psi) +
                self.prior.log_density(cand.theta) - self.prior.log_density(state.theta))

    def _propose_and_evaluate(self, state, propose, output, block):
        """
        Draw proposals from *propose* until one yields nonnegative paths
        (at most the cap).  ``None`` means the step is rejected.
        """
        for _ in range(self.cap if self.positivity else 1):
            proposal = propose()
            if not self.prior.in_support(proposal):
                return None
            try:
                cand = self._evaluate(proposal, state.innovations)
            except _REJECTABLE as e:
                bd_debug('%s: rejected proposal %s (%s)' % (block, proposal, e))
                output.flag('nonfinite_theta')
                return None
            if self.positivity and not cand.nonnegative():
                output.flag('positivity_resamples')
                continue
            return cand
        output.flag('positivity_cap_hits')
        return None

    def update_theta_alg1(self, state, rng, output, indices=None, block='theta'):
        """
        Metropolis-Hastings step for the parameters at *indices* (all by
        default) holding the innovations fixed.
        """
        indices = self.mh_indices if indices is None else indices
        current = state.theta[indices]

        def propose():
            proposal = state.theta.copy()
            proposal[indices] = self.kernel.propose(current, rng)
            return proposal
        cand = self._propose_and_evaluate(state, propose, output, block)
        if cand is None:
            output.count(block, False)
            rng.random()
            return state
        log_ratio = self._log_target_ratio(state, cand) + \
            self.kernel.log_density(current, cand.theta[indices]) - \
            self.kernel.log_density(cand.theta[indices], current)
        output.log_ratios.append(log_ratio)
        accepted = np.log(rng.random()) <= log_ratio
        output.count(block, accepted)
        if accepted:
            self._adopt(state, cand)
        return state

    def _drift_precision(self):
        return [p or 0.0 for p in self.prior.precisions(self.drift_indices)]

    def update_gibbs_alg2(self, state, rng, output):
        """
        MH step for the non drift parameters, then a draw of the drift
        parameters from N(W^{-1} (mu + P m), W^{-1}) given the imputed
        paths, with innovations recovered so that the paths are kept.
        """
        if self.mh_indices:
            self.update_theta_alg1(state, rng, output, indices=self.mh_indices, block='gamma')
        precision = self._drift_precision()
        try:
            mu, _, W = conjugate_stats(state.paths, self.model, state.theta, precision)
            L = np.linalg.cholesky(W)
        except (np.linalg.LinAlgError, SingularMatrixError):
            output.flag('w_not_pd')
            output.count('drift', False)
            return state
        rhs = mu + np.asarray(precision) * self.prior.means(self.drift_indices)
        mean = scipy.linalg.cho_solve((L, True), rhs)
        draw = mean + scipy.linalg.solve_triangular(L, rng.standard_normal(len(mean)), trans='T', lower=True)
        proposal = state.theta.copy()
        proposal[self.drift_indices] = draw
        try:
            bridges = self.build_bridges(proposal)
            innovations = [invert_g(bridges[i], state.paths[i], state.innovations[i], self.time_change)
                           for i in range(len(bridges))]
            cand = self._evaluate(proposal, innovations, bridges)
        except _REJECTABLE as e:
            bd_debug('drift: gibbs draw %s unusable (%s)' % (draw, e))
            output.flag('nonfinite_theta')
            output.count('drift', False)
            return state
        self._adopt(state, cand, innovations)
        output.count('drift', True)
        return state

    def _precision_on(self, paths, theta):
        _, _, W = conjugate_stats(paths, self.model, theta, self._drift_precision())
        np.linalg.cholesky(W)
        return W

    def update_theta_alg3(self, state, rng, output):
        """
        Preconditioned random walk N(theta, alpha^2 W^{-1}) on the drift
        parameters, W computed on the current imputed paths.
        """
        if self.mh_indices:
            self.update_theta_alg1(state, rng, output, indices=self.mh_indices, block='gamma')
        idx = self.drift_indices
        try:
            W = self._precision_on(state.paths, state.theta)
        except (np.linalg.LinAlgError, SingularMatrixError):
            output.flag('w_not_pd')
            output.count('drift', False)
            rng.random()
            return state
        L = np.linalg.cholesky(W)

        def propose():
            proposal = state.theta.copy()
            step = scipy.linalg.solve_triangular(L, rng.standard_normal(len(idx)), trans='T', lower=True)
            proposal[idx] = state.theta[idx] + self.alpha * step
            return proposal
        cand = self._propose_and_evaluate(state, propose, output, 'drift')
        if cand is not None:
            try:
                W_new = self._precision_on(cand.paths, cand.theta)
            except (np.linalg.LinAlgError, SingularMatrixError):
                output.flag('w_not_pd')
                cand = None
        if cand is None:
            output.count('drift', False)
            rng.random()
            return state
        log_ratio = self._log_target_ratio(state, cand) + \
            preconditioned_log_ratio(state.theta[idx], cand.theta[idx], W, W_new, self.alpha)
        output.log_ratios.append(log_ratio)
        accepted = np.log(rng.random()) <= log_ratio
        output.count('drift', accepted)
        if accepted:
            self._adopt(state, cand)
        return state

    # -- driver ------------------------------------------------------------

    def run(self, theta0, iterations, seed, config=None, verbose=False):
        """
        :returns: :class:`ChainOutput`
        :raises: :exc:`ChainError` carrying the failing iteration
        """
        streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(len(self.segments) + 1)]
        theta_rng, segment_rngs = streams[0], streams[1:]
        output = ChainOutput(self.model.param_names, iterations, seed, config=config)
        if self.threads > 1:
            self._executor = concurrent.futures.ThreadPoolExecutor(max_workers=self.threads)
        try:
            state = self.initial_state(theta0, segment_rngs)
            progress_every = max(1, iterations // 10)
            for it in range(iterations):
                try:
                    self.update_innovations(state, segment_rngs, output)
                    if self.algorithm == 'alg1':
                        self.update_theta_alg1(state, theta_rng, output)
                    elif self.algorithm == 'alg2':
                        self.update_gibbs_alg2(state, theta_rng, output)
                    else:
                        self.update_theta_alg3(state, theta_rng, output)
                except ChainError:
                    raise
                except Exception as e:
                    raise ChainError(it, e)
                output.trace[it] = state.theta
                if verbose and (it + 1) % progress_every == 0:
                    rates = output.acceptance_rates()
                    print('iteration %d/%d: %s' % (it + 1, iterations, ', '.join(
                        '%s %.3f' % (k, rates[k]) for k in sorted(rates))), file=sys.stderr)
        finally:
            if self._executor is not None:
                self._executor.shutdown()
                self._executor = None
        self.state = state
        return output


def run_chain(config, data, model, seed=None, threads=None, verbose=False):
    """
    Run the sampler selected by *config* on *data*.

    :param config: :class:`bridgemc.config.RunConfig`
    :param data: :class:`bridgemc.sde_core.Observations`
    :param seed: overrides ``mcmc.seed``
    :returns: :class:`ChainOutput`
    """
    if getattr(model, 'linearization', False) is None:
        # global linearization on the observed values, fitted on a copy so
        # that the caller's model stays unfitted
        model = copy.copy(model)
        model.fit_linearization(data.values)
    sampler = BridgeSampler(model, data.shifted(), config.m, config.prior(model), kernel=config.proposal,
                            algorithm=config.algorithm, positivity=config.positivity,
                            time_change=config.time_change, threads=threads or config.threads,
                            cap=config.cap, alpha=config.alpha)
    seed = config.seed if seed is None else seed
    return sampler.run(config.initial_theta(model), config.iterations, seed,
                       config=config.to_dict(), verbose=verbose)
