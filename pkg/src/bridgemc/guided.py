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
Guided proposals for diffusion bridges.

A :class:`GuidedBridge` ties a model at fixed parameters to a
:class:`~bridgemc.linproc.BridgeContext`.  The proposal

    dX = [b(t, X) + a(t, X) r(t, X)] dt + sigma(t, X) dW

is simulated either through the time changed and scaled process
U_s = (v(tau(s)) - X_{tau(s)}) / (T - s) on the uniform s-grid
(:func:`solve_g`), or by plain Euler on the uniform t-grid
(:func:`solve_g_direct`).  Both map Wiener increments Z to a path that
hits v exactly; the log likelihood ratio log Psi = int G is the matching
left point sum (:func:`log_psi_timechanged`, :func:`log_psi_direct`).

The ``*_many`` variants process all segments of a data set together:
every grid step is one array evaluation over the segments, and a failing
segment is reported instead of aborting the others.
"""

import warnings

import numpy as np

from .core import MatchingConditionError, MatchingConditionWarning, NonFiniteState, \
    SingularMatrixError, UnsupportedModel
from .linproc import H_on_grid, H_r_tilde, J_of_s, tau, v_dot, v_of_s, v_on_grid
from .sde_core import Path, TimeGrid, WienerIncrements

MATCHING_TOLERANCE = 1e-8
# relative mismatch above which approximate matching warns
MATCHING_WARN_FRACTION = 0.1


class GuidedBridge(object):
    """
    Guided proposal for one segment at fixed parameters.  Immutable; a
    new parameter value means a new instance.
    """

    def __init__(self, model, theta, ctx, check_matching=True):
        """
        :param model: :class:`bridgemc.sde_core.DiffusionModel`
        :param theta: parameter vector
        :param ctx: :class:`bridgemc.linproc.BridgeContext`
        :raises: :exc:`MatchingConditionError` if a~ differs from a(T, v)
          for a model that promises exact matching
        """
        if ctx.d != model.d:
            raise ValueError('auxiliary process has dimension %d, model %d' % (ctx.d, model.d))
        self.model = model
        self.theta = model.check_theta(theta)
        self.ctx = ctx
        if check_matching:
            self._check_matching()

    def _check_matching(self):
        a_end = self.model.diffusion(self.T, self.v, self.theta)
        gap = np.linalg.norm(a_end - self.aux.a)
        scale = np.linalg.norm(a_end)
        if self.model.exact_matching:
            if gap > MATCHING_TOLERANCE * max(1.0, scale):
                raise MatchingConditionError(
                    'auxiliary diffusion differs from a(T, v) by %g (Frobenius)' % gap)
        elif gap > MATCHING_WARN_FRACTION * scale:
            warnings.warn('auxiliary diffusion differs from a(T, v) by %.1f%%' % (100.0 * gap / scale),
                          MatchingConditionWarning)

    @property
    def aux(self):
        return self.ctx.aux

    @property
    def T(self):
        return self.ctx.T

    @property
    def u(self):
        return self.ctx.u

    @property
    def v(self):
        return self.ctx.v

    @property
    def m(self):
        return self.ctx.m


class UPath(object):
    """
    Solution of the scaled process on the uniform s-grid together with the
    recovered proposal on the image grid tau(s_j).
    """

    def __init__(self, s_grid, U, path):
        U.setflags(write=False)
        self.s_grid = s_grid
        self.U = U
        self.path = path

    @property
    def states(self):
        return self.path.states

    def __eq__(self, other):
        return isinstance(other, UPath) and self.s_grid == other.s_grid and \
            np.array_equal(self.U, other.U) and self.path == other.path

    def __ne__(self, other):
        return not self.__eq__(other)


def guided_drift(bridge, t, x):
    """
    b(t, x) + a(t, x) r(t, x).
    """
    _, r = H_r_tilde(bridge.aux, t, x)
    model, theta = bridge.model, bridge.theta
    return model.drift(t, x, theta) + model.diffusion(t, x, theta).dot(r)


def _matvec(M, x):
    return np.einsum('nij,nj->ni', M, x)


def _g_many(model, theta, t, X, H, r, B, beta, a_tilde):
    """
    G at *n* points.  *B*, *beta* and *a_tilde* are the auxiliary
    coefficients at each point, shaped ``n x d x d``, ``n x d`` and
    ``n x d x d``.
    """
    b_gap = model.drift_many(t, X, theta) - _matvec(B, X) - beta
    a_gap = model.diffusion_many(t, X, theta) - a_tilde
    # H - r r' is symmetric, so the trace is an elementwise sum
    M = H - r[:, :, np.newaxis] * r[:, np.newaxis, :]
    return np.einsum('ni,ni->n', b_gap, r) - 0.5 * np.einsum('nij,nij->n', a_gap, M)


def _g_at(bridge, t, X, H, targets, beta):
    n = X.shape[0]
    aux = bridge.aux
    r = _matvec(H, targets - X)
    return _g_many(bridge.model, bridge.theta, t, X, H, r, np.broadcast_to(aux.B, (n, ) + aux.B.shape),
                   beta, np.broadcast_to(aux.a, (n, ) + aux.a.shape))


def G_integrand(bridge, t, x):
    """
    G(t, x) = (b - b~)' r - 1/2 tr[(a - a~)(H - r r')].
    """
    x = np.asarray(x, dtype=float)
    H, r = H_r_tilde(bridge.aux, t, x)
    aux = bridge.aux
    return _g_many(bridge.model, bridge.theta, np.array([t]), x[np.newaxis], H[np.newaxis], r[np.newaxis],
                   aux.B[np.newaxis], aux.beta(t)[np.newaxis], aux.a[np.newaxis])[0]


def _weighted_sum(g, weights):
    bad = np.flatnonzero(~np.isfinite(g))
    if bad.shape[0]:
        raise NonFiniteState(int(bad[0]), g[bad[0]], what='G')
    return float(np.dot(g, weights))


def log_psi_direct(bridge, path):
    """
    Left point sum of G over the grid of *path*, the last point excluded.

    The path may live on the image grid tau(s_j) (proposals from
    :func:`solve_g`) or on the uniform grid (proposals from
    :func:`solve_g_direct`); cached values are used for either when
    available.
    """
    ctx = bridge.ctx
    times = path.grid.points
    if path.grid.end != bridge.T:
        raise ValueError('path does not end at the segment end')
    if np.array_equal(times, ctx.tau_points):
        H, targets, beta = ctx.H_tau, ctx.v_tau[:-1], ctx.beta_tau[:-1]
    elif ctx.has_direct and np.array_equal(times, ctx.s_grid.points):
        H, targets, beta = ctx.H_direct, ctx.v_direct[:-1], ctx.beta_direct[:-1]
    else:
        H = H_on_grid(bridge.aux, times[:-1])
        targets = v_on_grid(bridge.aux, times[:-1])
        beta = bridge.aux.beta_many(times[:-1])
    with np.errstate(all='ignore'):
        g = _g_at(bridge, times[:-1], path.states[:-1], H, targets, beta)
    return _weighted_sum(g, path.grid.steps)


def _u_coeffs_many(model, theta, T, s, t, X, vdot, J, U):
    """
    Drift and dispersion of the scaled process at *n* points, each with
    its own segment length in *T*.
    """
    sigma = model.dispersion_many(t, X, theta)
    a = np.matmul(sigma, np.swapaxes(sigma, 1, 2))
    rest = (T - s)[:, np.newaxis]
    drift = (2.0 / T)[:, np.newaxis] * (vdot - model.drift_many(t, X, theta)) + \
        (U - 2.0 * _matvec(a, _matvec(J, U))) / rest
    scale = (-np.sqrt(2.0 / T) / np.sqrt(T - s))[:, np.newaxis, np.newaxis] * sigma
    return drift, scale


def u_sde_coefficients(bridge, s, U):
    """
    Drift and dispersion of the scaled process U at time *s* < T.

    :returns: ``(drift, scale)``, a ``d`` vector and a ``d x d'`` matrix
    """
    if not 0.0 <= s < bridge.T:
        raise ValueError('scaled process coefficients need 0 <= s < T, got %r' % s)
    U = np.asarray(U, dtype=float)
    t = tau(s, bridge.T)
    x = v_of_s(bridge.aux, t) - (bridge.T - s) * U
    drift, scale = _u_coeffs_many(bridge.model, bridge.theta, np.array([bridge.T]), np.array([s]), np.array([t]),
                                  x[np.newaxis], v_dot(bridge.aux, s)[np.newaxis],
                                  J_of_s(bridge.aux, s)[np.newaxis], U[np.newaxis])
    return drift[0], scale[0]


def _check_innovations(bridge, Z):
    if Z.grid != bridge.ctx.s_grid:
        raise ValueError('innovations live on a different grid than the bridge')
    if Z.dim != bridge.model.d_noise:
        raise ValueError('model expects %d-dimensional noise, got %d' % (bridge.model.d_noise, Z.dim))


def _check_batch(bridges, Zs):
    if not bridges:
        raise ValueError('no bridges given')
    first = bridges[0]
    if len(Zs) != len(bridges):
        raise ValueError('%d bridges but %d innovation sets' % (len(bridges), len(Zs)))
    for bridge, Z in zip(bridges, Zs):
        if bridge.model is not first.model or bridge.m != first.m or \
                not np.array_equal(bridge.theta, first.theta):
            raise ValueError('batched bridges must share model, parameters and grid size')
        _check_innovations(bridge, Z)


def _stack(bridges, name):
    return np.stack([getattr(b.ctx, name) for b in bridges])


def _aux_per_point(bridges, per_segment):
    """
    Auxiliary B and a~ repeated *per_segment* times for every bridge.
    """
    B = np.repeat(np.stack([b.aux.B for b in bridges]), per_segment, axis=0)
    a = np.repeat(np.stack([b.aux.a for b in bridges]), per_segment, axis=0)
    return B, a


def _note_failures(values, step, failures, what):
    bad = np.flatnonzero(~np.all(np.isfinite(values), axis=1))
    for k in bad:
        if k not in failures:
            failures[int(k)] = NonFiniteState(step, values[k].copy(), what=what)
    return bad


def solve_g_many(bridges, Zs):
    """
    :func:`solve_g` for several segments at once.  The Euler recursion
    runs over all segments together; a segment that produces a
    non-finite value is frozen at U = 0 from then on.

    :param bridges: :class:`GuidedBridge` instances sharing model,
      parameters and grid size
    :param Zs: one :class:`bridgemc.sde_core.WienerIncrements` per bridge
    :returns: ``(upaths, failures)``, a list with one :class:`UPath` or
      ``None`` per segment, and ``{segment: NonFiniteState}``
    """
    _check_batch(bridges, Zs)
    model, theta, m = bridges[0].model, bridges[0].theta, bridges[0].m
    n = len(bridges)
    T = np.array([b.T for b in bridges])
    s = np.stack([b.ctx.s_grid.points for b in bridges])
    ds = np.diff(s, axis=1)
    t = _stack(bridges, 'tau_points')
    v_tau = _stack(bridges, 'v_tau')
    vdot = _stack(bridges, 'vdot_tau')
    J = _stack(bridges, 'J')
    dz = np.stack([Z.increments for Z in Zs])
    d = v_tau.shape[2]
    U = np.empty((n, m, d))
    X = np.empty((n, m, d))
    U[:, 0] = (v_tau[:, 0] - _stack(bridges, 'u')) / T[:, np.newaxis]
    X[:, 0] = _stack(bridges, 'u')
    failures = {}
    with np.errstate(all='ignore'):
        for j in range(m - 1):
            if j > 0:
                X[:, j] = v_tau[:, j] - (T - s[:, j])[:, np.newaxis] * U[:, j]
            drift, scale = _u_coeffs_many(model, theta, T, s[:, j], t[:, j], X[:, j], vdot[:, j], J[:, j], U[:, j])
            U[:, j + 1] = U[:, j] + drift * ds[:, j, np.newaxis] + _matvec(scale, dz[:, j])
            bad = _note_failures(U[:, j + 1], j + 1, failures, 'U')
            U[bad, j + 1] = 0.0
    upaths = []
    for k, bridge in enumerate(bridges):
        if k in failures:
            upaths.append(None)
            continue
        X[k, m - 1] = bridge.v
        ctx = bridge.ctx
        upaths.append(UPath(ctx.s_grid, U[k], Path(TimeGrid(ctx.tau_points), X[k])))
    return upaths, failures


def _raise_first(failures):
    if failures:
        raise failures[min(failures)]


def solve_g(bridge, Z):
    """
    The innovation map: Euler scheme for U driven by *Z*, started in
    (v(0) - u) / T, and the proposal recovered as v(tau(s)) - (T - s) U_s.

    :returns: :class:`UPath`
    :raises: :exc:`NonFiniteState`
    """
    upaths, failures = solve_g_many([bridge], [Z])
    _raise_first(failures)
    return upaths[0]


def _direct_cache(bridge):
    ctx = bridge.ctx
    if ctx.has_direct:
        return ctx.H_direct, ctx.v_direct, ctx.beta_direct
    t = ctx.s_grid.points
    targets = v_on_grid(bridge.aux, t)
    targets[-1] = bridge.v
    return H_on_grid(bridge.aux, t[:-1]), targets, bridge.aux.beta_many(t)


def solve_g_direct_many(bridges, Zs):
    """
    :func:`solve_g_direct` for several segments at once.

    :returns: ``(paths, failures)`` as for :func:`solve_g_many`
    """
    _check_batch(bridges, Zs)
    model, theta, m = bridges[0].model, bridges[0].theta, bridges[0].m
    n = len(bridges)
    t = np.stack([b.ctx.s_grid.points for b in bridges])
    dt = np.diff(t, axis=1)
    caches = [_direct_cache(b) for b in bridges]
    H = np.stack([c[0] for c in caches])
    targets = np.stack([c[1] for c in caches])
    dz = np.stack([Z.increments for Z in Zs])
    X = np.empty((n, m, bridges[0].ctx.d))
    X[:, 0] = _stack(bridges, 'u')
    failures = {}
    with np.errstate(all='ignore'):
        for j in range(m - 2):
            x = X[:, j]
            sigma = model.dispersion_many(t[:, j], x, theta)
            a = np.matmul(sigma, np.swapaxes(sigma, 1, 2))
            pull = _matvec(a, _matvec(H[:, j], targets[:, j] - x))
            X[:, j + 1] = x + (model.drift_many(t[:, j], x, theta) + pull) * dt[:, j, np.newaxis] + \
                _matvec(sigma, dz[:, j])
            bad = _note_failures(X[:, j + 1], j + 1, failures, 'state')
            X[bad, j + 1] = targets[bad, j + 1]
    paths = []
    for k, bridge in enumerate(bridges):
        if k in failures:
            paths.append(None)
            continue
        X[k, m - 1] = bridge.v
        paths.append(Path(bridge.ctx.s_grid, X[k]))
    return paths, failures


def solve_g_direct(bridge, Z):
    """
    Euler scheme for the guided proposal itself on the uniform grid; the
    last state is set to v.

    :returns: :class:`bridgemc.sde_core.Path`
    """
    paths, failures = solve_g_direct_many([bridge], [Z])
    _raise_first(failures)
    return paths[0]


def _log_psi_many(bridges, paths, H, targets, beta, weights):
    """
    Weighted left point sums of G for the segments whose path is not
    ``None``; the others get NaN.

    :returns: ``(log_psis, failures)``
    """
    log_psis = np.full(len(bridges), np.nan)
    keep = [k for k, path in enumerate(paths) if path is not None]
    failures = {}
    if not keep:
        return log_psis, failures
    first = bridges[0]
    m = first.m
    sub = [bridges[k] for k in keep]
    t = np.concatenate([paths[k].grid.points[:-1] for k in keep])
    X = np.concatenate([paths[k].states[:-1] for k in keep])
    H = np.concatenate([H[k] for k in keep])
    targets = np.concatenate([targets[k] for k in keep])
    beta = np.concatenate([beta[k] for k in keep])
    B, a = _aux_per_point(sub, m - 1)
    with np.errstate(all='ignore'):
        r = _matvec(H, targets - X)
        g = _g_many(first.model, first.theta, t, X, H, r, B, beta, a).reshape(len(keep), m - 1)
    w = np.stack([weights[k] for k in keep])
    for i, k in enumerate(keep):
        bad = np.flatnonzero(~np.isfinite(g[i]))
        if bad.shape[0]:
            failures[k] = NonFiniteState(int(bad[0]), g[i, bad[0]], what='G')
        else:
            log_psis[k] = np.dot(g[i], w[i])
    return log_psis, failures


def log_psi_timechanged_many(bridges, upaths):
    """
    :func:`log_psi_timechanged` for several segments at once; ``None``
    entries of *upaths* are skipped.

    :returns: ``(log_psis, failures)``
    """
    for bridge, upath in zip(bridges, upaths):
        if upath is not None and upath.s_grid != bridge.ctx.s_grid:
            raise ValueError('path lives on a different grid than the bridge')
    paths = [None if upath is None else upath.path for upath in upaths]
    H = [b.ctx.H_tau for b in bridges]
    targets = [b.ctx.v_tau[:-1] for b in bridges]
    beta = [b.ctx.beta_tau[:-1] for b in bridges]
    # each cell [s_j, s_j+1] carries the exact integral of tau' over it
    weights = [np.diff(b.ctx.tau_points) for b in bridges]
    return _log_psi_many(bridges, paths, H, targets, beta, weights)


def log_psi_timechanged(bridge, upath):
    """
    Left point sum over the uniform s-grid of G(tau(s), X) tau'(s), each
    cell weighted by tau(s_j+1) - tau(s_j).
    """
    log_psis, failures = log_psi_timechanged_many([bridge], [upath])
    _raise_first(failures)
    return float(log_psis[0])


def innovation_map_many(bridges, Zs, time_change=True):
    """
    Paths and log Psi of several segments driven by their innovations.

    :returns: ``(paths, log_psis, failures)``; failed segments have path
      ``None`` and log Psi NaN, and ``failures`` maps them to the
      :exc:`NonFiniteState` raised
    """
    if time_change:
        upaths, failures = solve_g_many(bridges, Zs)
        log_psis, g_failures = log_psi_timechanged_many(bridges, upaths)
        paths = [None if upath is None else upath.path for upath in upaths]
    else:
        paths, failures = solve_g_direct_many(bridges, Zs)
        caches = [_direct_cache(b) for b in bridges]
        log_psis, g_failures = _log_psi_many(
            bridges, paths, [c[0] for c in caches], [c[1][:-1] for c in caches],
            [c[2][:-1] for c in caches], [b.ctx.s_grid.steps for b in bridges])
    failures.update(g_failures)
    for k in g_failures:
        paths[k] = None
    return paths, log_psis, failures


def innovation_map(bridge, Z, time_change=True):
    """
    Path of the proposal driven by *Z* and its log Psi.

    :returns: ``(path, log_psi)``
    """
    paths, log_psis, failures = innovation_map_many([bridge], [Z], time_change=time_change)
    _raise_first(failures)
    return paths[0], float(log_psis[0])


def _solve_stack(scale, rhs, times):
    try:
        return np.linalg.solve(scale, rhs[:, :, np.newaxis])[:, :, 0]
    except np.linalg.LinAlgError:
        for j in range(scale.shape[0]):
            if np.linalg.matrix_rank(scale[j]) < scale.shape[1]:
                raise SingularMatrixError('dispersion', times[j])
        raise SingularMatrixError('dispersion')


def invert_g(bridge, path, Z_old, time_change=True):
    """
    Innovations that make *bridge* reproduce *path*.

    The last increment does not influence the path and is taken from
    *Z_old*.

    :raises: :exc:`UnsupportedModel` if the dispersion is not square
    """
    model, theta = bridge.model, bridge.theta
    if model.d_noise != model.d:
        raise UnsupportedModel('recovering innovations needs a square dispersion, model has %d x %d'
                               % (model.d, model.d_noise))
    ctx = bridge.ctx
    m, T = bridge.m, bridge.T
    X = path.states
    Z = np.array(Z_old.increments, dtype=float)
    n = m - 2
    if n == 0:
        return WienerIncrements(ctx.s_grid, Z)
    if time_change:
        s = ctx.s_grid.points[:n]
        U = np.empty((m - 1, ctx.d))
        U[0] = (ctx.v_tau[0] - ctx.u) / T
        U[1:] = (ctx.v_tau[1:m - 1] - X[1:m - 1]) / (T - ctx.s_grid.points[1:m - 1])[:, np.newaxis]
        times = ctx.tau_points[:n]
        drift, scale = _u_coeffs_many(model, theta, np.full(n, T), s, times, X[:n], ctx.vdot_tau[:n],
                                      ctx.J[:n], U[:n])
        rhs = U[1:] - U[:-1] - drift * ctx.s_grid.steps[:n, np.newaxis]
    else:
        times = ctx.s_grid.points[:n]
        H, targets, _ = _direct_cache(bridge)
        x = X[:n]
        scale = model.dispersion_many(times, x, theta)
        a = np.matmul(scale, np.swapaxes(scale, 1, 2))
        b = model.drift_many(times, x, theta) + _matvec(a, _matvec(H[:n], targets[:n] - x))
        rhs = X[1:n + 1] - x - b * ctx.s_grid.steps[:n, np.newaxis]
    Z[:n] = _solve_stack(scale, rhs, times)
    return WienerIncrements(ctx.s_grid, Z)


def discretization_analytics(T, h, s, a_norm=1.0):
    """
    One step covariance errors of the Euler scheme for a Brownian bridge:
    directly, d(s) = h^2 / (T - s) |a|, and for the time changed scheme,
    d'(s) = (h^2 / T) (1 - h / (T - s))^2 |a|.

    :returns: ``(d, d_prime)``
    """
    if s < 0.0 or s > T - h + 1e-12 * T:
        raise ValueError('need 0 <= s <= T - h, got s=%r, T=%r, h=%r' % (s, T, h))
    d = h ** 2 / (T - s) * a_norm
    d_prime = (h ** 2 / T) * (1.0 - h / (T - s)) ** 2 * a_norm
    return d, d_prime


def ratio_table(m):
    """
    R_m(i) = d'((i-1)h) / d((i-1)h) = (m - i)^2 / (m (m - i + 1)) for i = 1..m.
    """
    i = np.arange(1, m + 1, dtype=float)
    return (m - i) ** 2 / (m * (m - i + 1))


def one_step_covariances(T, h, s, a=1.0):
    """
    Exact and Euler one step variances of a Brownian bridge, directly and
    through the scaled process.

    :returns: dict with ``true``, ``euler``, ``true_timechanged``,
      ``euler_timechanged``
    """
    rest = T - s - h
    euler_tc = (2.0 * h / T) * rest ** 2 / (T - s) * a
    return {
        'true': h * rest / (T - s) * a,
        'euler': h * a,
        'true_timechanged': euler_tc - (h ** 2 / T) * rest ** 2 / (T - s) ** 2 * a,
        'euler_timechanged': euler_tc,
    }


def one_step_covariance_errors(bridge, i, replicates, rng):
    """
    Monte Carlo estimate of both one step covariance errors at grid step
    *i* (1-based) of *bridge*, for the first state coordinate.

    The bridge grid has step h; the direct scheme steps from the pull
    target at s = (i-1) h, the time changed scheme from U = 0 at s.

    :returns: dict with analytic ``d``, ``d_prime``, ``R`` and the
      measured ``err_direct``, ``se_direct``, ``err_timechanged``,
      ``se_timechanged``
    """
    ctx = bridge.ctx
    m = ctx.m - 1
    T = bridge.T
    h = ctx.s_grid.steps[i - 1]
    s = ctx.s_grid.points[i - 1]
    model, theta = bridge.model, bridge.theta
    a = model.diffusion(s, ctx.v, theta)[0, 0]
    exact = one_step_covariances(T, h, s, a)
    d, d_prime = discretization_analytics(T, h, s, a)

    noise = rng.standard_normal((replicates, model.d_noise)) * np.sqrt(h)
    x = v_of_s(bridge.aux, s)
    step = x + guided_drift(bridge, s, x) * h
    direct = step[0] + noise.dot(model.dispersion(s, x, theta)[0])
    var_direct = np.var(direct, ddof=1)

    U = np.zeros(ctx.d)
    t = ctx.tau_points[i - 1]
    drift, scale = _u_coeffs_many(model, theta, np.array([T]), np.array([s]), np.array([t]),
                                  ctx.v_tau[i - 1:i], ctx.vdot_tau[i - 1:i], ctx.J[i - 1:i], U[np.newaxis])
    U_next = (U + drift[0] * h)[0] + noise.dot(scale[0, 0])
    X_next = ctx.v_tau[i][0] - (T - ctx.s_grid.points[i]) * U_next
    var_tc = np.var(X_next, ddof=1)

    se = np.sqrt(2.0 / (replicates - 1))
    return {
        'm': m,
        'i': i,
        'd': d,
        'd_prime': d_prime,
        'R': ratio_table(m)[i - 1],
        'err_direct': var_direct - exact['true'],
        'se_direct': var_direct * se,
        'err_timechanged': var_tc - exact['true_timechanged'],
        'se_timechanged': var_tc * se,
    }
