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
Time grids, Wiener increments, the diffusion model abstraction and
Euler-Maruyama simulation of unconditioned diffusions.

All randomness enters through an explicitly passed
:class:`numpy.random.Generator`; nothing in this module holds state.
"""

import numpy as np

from .core import InvalidGrid, NonFiniteState, UnsupportedModel

# absolute tolerance when matching requested times against grid points
GRID_MATCH_TOLERANCE = 1e-12


class TimeGrid(object):
    """
    Strictly increasing sequence of at least two time points.
    """

    def __init__(self, points):
        """
        :param points: sequence of times
        :raises: :exc:`InvalidGrid` if fewer than two points or not
          strictly increasing
        """
        points = np.array(points, dtype=float)
        if points.ndim != 1 or points.shape[0] < 2:
            raise InvalidGrid('a time grid needs at least two points, got %r' % (points.shape,))
        if not np.all(np.isfinite(points)):
            raise InvalidGrid('time grid contains non-finite points')
        if np.any(np.diff(points) <= 0.0):
            raise InvalidGrid('time grid is not strictly increasing')
        points.setflags(write=False)
        self.points = points

    @classmethod
    def uniform(cls, start, end, count):
        """
        :param count: number of points, including both ends
        """
        if count < 2:
            raise InvalidGrid('a time grid needs at least two points, got %d' % count)
        return cls(np.linspace(start, end, count))

    @property
    def count(self):
        return self.points.shape[0]

    @property
    def steps(self):
        return np.diff(self.points)

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]

    def __len__(self):
        return self.count

    def __eq__(self, other):
        return isinstance(other, TimeGrid) and np.array_equal(self.points, other.points)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'TimeGrid(%d points on [%r, %r])' % (self.count, self.start, self.end)


class WienerIncrements(object):
    """
    Increments of a d'-dimensional Wiener process on a grid;
    ``increments[j]`` belongs to the step ``grid.points[j] -> grid.points[j+1]``.
    """

    def __init__(self, grid, increments):
        increments = np.array(increments, dtype=float)
        if increments.ndim != 2 or increments.shape[0] != grid.count - 1:
            raise ValueError('expected %d increments, got array of shape %r' % (grid.count - 1, increments.shape))
        increments.setflags(write=False)
        self.grid = grid
        self.increments = increments

    @property
    def dim(self):
        return self.increments.shape[1]

    def __eq__(self, other):
        return isinstance(other, WienerIncrements) and self.grid == other.grid and \
            np.array_equal(self.increments, other.increments)

    def __ne__(self, other):
        return not self.__eq__(other)


class DiffusionModel(object):
    """
    Parametric diffusion dX = b(t, X; theta) dt + sigma(t, X; theta) dW.

    Subclasses implement :meth:`drift` and :meth:`dispersion`; models that
    can be used with guided proposals also implement :meth:`auxiliary`.
    Models whose drift is linear in a subset of the parameters expose
    those positions in ``drift_indices`` and implement :meth:`drift_basis`.
    """

    #: registry key
    name = None
    #: parameter names, in the order of the parameter vector
    param_names = ()
    #: positions of the parameters entering the drift linearly, or None
    drift_indices = None
    #: componentwise nonnegativity constraint on the state
    nonnegative = False
    #: the auxiliary matches a(T, v) exactly (otherwise mismatch only warns)
    exact_matching = True
    #: names of the state coordinates, None for x1..xd
    coordinate_names = None

    def __init__(self, d, d_noise):
        self.d = d
        self.d_noise = d_noise

    def drift(self, t, x, theta):
        raise NotImplementedError('drift')

    def dispersion(self, t, x, theta):
        raise NotImplementedError('dispersion')

    def diffusion(self, t, x, theta):
        """
        :returns: a = sigma sigma', ``d x d`` array
        """
        sigma = self.dispersion(t, x, theta)
        return sigma.dot(sigma.T)

    # Batched evaluation at n points: *t* has shape (n,), *X* (n, d).
    # Subclasses override these with array expressions.

    def drift_many(self, t, X, theta):
        """
        :returns: ``n x d`` drifts
        """
        return np.array([self.drift(t[k], X[k], theta) for k in range(X.shape[0])]).reshape(X.shape[0], self.d)

    def dispersion_many(self, t, X, theta):
        """
        :returns: ``n x d x d'`` dispersions
        """
        return np.array([self.dispersion(t[k], X[k], theta) for k in range(X.shape[0])]).reshape(
            X.shape[0], self.d, self.d_noise)

    def diffusion_many(self, t, X, theta):
        sigma = self.dispersion_many(t, X, theta)
        return np.matmul(sigma, np.swapaxes(sigma, 1, 2))

    def drift_basis_many(self, t, X, theta):
        """
        :returns: ``n x d x N`` drift bases
        """
        return np.array([self.drift_basis(t[k], X[k], theta) for k in range(X.shape[0])])

    def auxiliary(self, theta, T, u, v):
        """
        :returns: :class:`bridgemc.linproc.LinearAuxiliary` for a segment
          of length *T* from *u* to *v*
        """
        raise NotImplementedError('%s has no auxiliary process' % type(self).__name__)

    def drift_basis(self, t, x, theta):
        """
        :returns: ``d x N`` matrix phi(x) with drift = phi(x) theta[drift_indices]
        """
        raise UnsupportedModel('%s has no drift that is linear in its parameters' % type(self).__name__)

    def clamped(self, x, theta):
        """
        :returns: ``True`` if evaluating the dispersion at *x* had to
          clamp a negative quantity
        """
        return False

    def default_theta(self):
        return None

    def check_theta(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.param_names and theta.shape != (len(self.param_names),):
            raise ValueError('%s expects %d parameters (%s), got %r' % (
                self.name, len(self.param_names), ', '.join(self.param_names), theta.shape))
        return theta


class Path(object):
    """
    States of a sample path aligned with a :class:`TimeGrid`.
    """

    def __init__(self, grid, states):
        states = np.array(states, dtype=float)
        if states.ndim != 2 or states.shape[0] != grid.count:
            raise ValueError('expected %d states, got array of shape %r' % (grid.count, states.shape))
        states.setflags(write=False)
        self.grid = grid
        self.states = states

    @property
    def dim(self):
        return self.states.shape[1]

    def __eq__(self, other):
        return isinstance(other, Path) and self.grid == other.grid and \
            np.array_equal(self.states, other.states)

    def __ne__(self, other):
        return not self.__eq__(other)


class Observations(object):
    """
    Discrete observations x_0, ..., x_n of a diffusion at increasing times.
    """

    def __init__(self, times, values):
        times = np.array(times, dtype=float)
        values = np.array(values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if times.ndim != 1 or times.shape[0] != values.shape[0]:
            raise ValueError('times and values do not align: %r vs %r' % (times.shape, values.shape))
        if times.shape[0] > 1 and np.any(np.diff(times) <= 0.0):
            raise InvalidGrid('observation times are not strictly increasing')
        times.setflags(write=False)
        values.setflags(write=False)
        self.times = times
        self.values = values

    @property
    def u(self):
        return self.values[0]

    @property
    def count(self):
        return self.times.shape[0]

    @property
    def dim(self):
        return self.values.shape[1]

    def shifted(self):
        """
        :returns: copy with times translated so that the first one is 0
        """
        return Observations(self.times - self.times[0], self.values)

    def segments(self):
        """
        Consecutive pairs of observations, each translated to start at 0.

        :returns: list of ``(T_i, x_{i-1}, x_i)``
        """
        return [(self.times[i] - self.times[i - 1], self.values[i - 1], self.values[i])
                for i in range(1, self.count)]

    def __eq__(self, other):
        return isinstance(other, Observations) and np.array_equal(self.times, other.times) and \
            np.array_equal(self.values, other.values)

    def __ne__(self, other):
        return not self.__eq__(other)


def sample_wiener(grid, dim, rng):
    """
    Draw independent Gaussian increments N(0, step * I) on *grid*.

    :param dim: noise dimension d'
    :param rng: :class:`numpy.random.Generator`
    :returns: :class:`WienerIncrements`
    """
    z = rng.standard_normal((grid.count - 1, dim))
    return WienerIncrements(grid, z * np.sqrt(grid.steps)[:, np.newaxis])


def euler_maruyama(model, theta, x0, grid, W):
    """
    Simulate *model* from *x0* with the Euler-Maruyama scheme driven by *W*.

    :returns: :class:`Path` on *grid*
    :raises: :exc:`NonFiniteState` as soon as a state is not finite
    """
    if W.grid != grid:
        raise ValueError('Wiener increments live on a different grid')
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (model.d,):
        raise ValueError('initial state must have dimension %d' % model.d)
    if W.dim != model.d_noise:
        raise ValueError('model expects %d-dimensional noise, got %d' % (model.d_noise, W.dim))
    t = grid.points
    dt = grid.steps
    dw = W.increments
    states = np.empty((grid.count, model.d))
    states[0] = x0
    for j in range(grid.count - 1):
        x = states[j]
        nxt = x + model.drift(t[j], x, theta) * dt[j] + model.dispersion(t[j], x, theta).dot(dw[j])
        if not np.all(np.isfinite(nxt)):
            raise NonFiniteState(j + 1, nxt)
        states[j + 1] = nxt
    return Path(grid, states)


def subsample(path, times):
    """
    Extract the states of *path* at *times*.

    :raises: :exc:`InvalidGrid` listing every requested time that is not
      a grid point
    """
    times = np.asarray(times, dtype=float)
    points = path.grid.points
    idx = np.clip(np.searchsorted(points, times), 0, points.shape[0] - 1)
    # nearest of the two neighbouring grid points
    left = np.clip(idx - 1, 0, points.shape[0] - 1)
    idx = np.where(np.abs(points[left] - times) < np.abs(points[idx] - times), left, idx)
    offending = [t for t, i in zip(times, idx) if abs(points[i] - t) > GRID_MATCH_TOLERANCE]
    if offending:
        raise InvalidGrid('requested times are not grid points: %s' % ', '.join(repr(float(t)) for t in offending))
    return Observations(times, path.states[idx])
