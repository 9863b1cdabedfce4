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
The linear auxiliary process dX = (B x + beta(t)) dt + sigma dW and the
closed-form quantities derived from it: transition moments and density,
the pull target v(t), H(t), r(t, x), the scaled matrix J(s) and the
derivative of v, all for a segment that ends in v at time T.

Matrix exponentials are evaluated in batches over horizons h = T - t with
:func:`scipy.linalg.expm`; integrals of the form int e^{Bw} M e^{B'w} dw
and int e^{Bw} beta dw come out of block-triangular exponentials, which
covers B = 0 and singular B without special cases.  Scalar processes use
the closed forms e^{bh} and a (e^{2bh} - 1) / 2b instead.
"""

import numpy as np
import scipy.integrate
import scipy.linalg

from .core import SingularLyapunovError, SingularMatrixError, UnsupportedAuxiliary
from .sde_core import TimeGrid

# H is never evaluated closer to T than this fraction of T
NEAR_END_FRACTION = 1e-12
# relative size of lambda_i + lambda_j that counts as a clash
LYAPUNOV_CLASH_TOLERANCE = 1e-10


def tau(s, T):
    """
    Time change s -> s (2 - s / T), a bijection of [0, T].
    """
    return s * (2.0 - s / T)


def tau_dot(s, T):
    return 2.0 * (1.0 - s / T)


class LinearAuxiliary(object):
    """
    Linear process with constant B and sigma and either a constant or a
    time dependent beta, conditioned to end in *v* at time *T*.
    """

    def __init__(self, B, beta, sigma, T, v, beta_integral=None):
        """
        :param B: ``d x d`` matrix
        :param beta: ``d`` vector, or a callable ``t -> d vector``
        :param sigma: ``d x d'`` matrix
        :param T: segment length, ``> 0``
        :param v: end point
        :param beta_integral: optional callable ``(s, t) -> int_s^t beta``
          for time dependent beta; quadrature is used otherwise
        :raises: :exc:`UnsupportedAuxiliary` for time dependent beta with
          nonzero B
        """
        B = np.atleast_2d(np.array(B, dtype=float))
        d = B.shape[0]
        if B.shape != (d, d):
            raise ValueError('B must be square, got %r' % (B.shape,))
        sigma = np.array(sigma, dtype=float).reshape(d, -1)
        if T <= 0:
            raise ValueError('segment length must be positive, got %r' % T)
        v = np.array(v, dtype=float).reshape(d)
        if callable(beta):
            if np.any(B != 0.0):
                raise UnsupportedAuxiliary('time dependent beta is only supported together with B = 0')
            self._beta_fn = beta
            self._beta = None
        else:
            self._beta_fn = None
            self._beta = np.array(beta, dtype=float).reshape(d)
        self._beta_integral = beta_integral
        self.B = B
        self.sigma = sigma
        self.a = sigma.dot(sigma.T)
        self.T = float(T)
        self.v = v
        for arr in (self.B, self.sigma, self.a, self.v):
            arr.setflags(write=False)

    @property
    def d(self):
        return self.B.shape[0]

    @property
    def time_dependent(self):
        return self._beta_fn is not None

    def beta(self, t):
        if self._beta_fn is not None:
            return np.asarray(self._beta_fn(t), dtype=float).reshape(self.d)
        return self._beta

    def beta_many(self, times):
        """
        :returns: ``n x d`` array of beta at each of *times*
        """
        times = np.atleast_1d(np.asarray(times, dtype=float))
        if self._beta_fn is None:
            return np.broadcast_to(self._beta, (times.shape[0], self.d)).copy()
        return np.array([self.beta(t) for t in times]).reshape(times.shape[0], self.d)

    def drift(self, t, x):
        """
        :returns: B x + beta(t)
        """
        return self.B.dot(x) + self.beta(t)

    def integrate_beta(self, s, t):
        """
        :returns: int_s^t beta(w) dw
        """
        if self._beta_fn is None:
            return self._beta * (t - s)
        if s == t:
            return np.zeros(self.d)
        if self._beta_integral is not None:
            return np.asarray(self._beta_integral(s, t), dtype=float).reshape(self.d)
        value, _ = scipy.integrate.quad_vec(self.beta, s, t, epsabs=1e-12, epsrel=1e-10)
        return value


def expm(M):
    """
    Matrix exponential (Pade scaling and squaring).

    :raises: :exc:`ValueError` for non-finite input
    """
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError('matrix exponential of a non-finite matrix')
    return scipy.linalg.expm(M)


def solve_lyapunov(B, a):
    """
    Solve B lam + lam B' + a = 0.

    :returns: symmetric ``d x d`` solution
    :raises: :exc:`SingularLyapunovError` if two eigenvalues of *B* sum
      to zero
    """
    B = np.atleast_2d(np.asarray(B, dtype=float))
    a = np.atleast_2d(np.asarray(a, dtype=float))
    eig = np.linalg.eigvals(B)
    scale = max(1.0, np.linalg.norm(B, 2))
    for i in range(len(eig)):
        for j in range(i, len(eig)):
            if abs(eig[i] + eig[j]) <= LYAPUNOV_CLASH_TOLERANCE * scale:
                raise SingularLyapunovError((eig[i], eig[j]))
    lam = scipy.linalg.solve_continuous_lyapunov(B, -a)
    return 0.5 * (lam + lam.T)


def _expm1_ratio(x):
    """
    (e^x - 1) / x, with the value 1 at x = 0.
    """
    x = np.asarray(x, dtype=float)
    zero = x == 0.0
    safe = np.where(zero, 1.0, x)
    return np.where(zero, 1.0, np.expm1(safe) / safe)


def _phi_and_gramian(aux, h):
    """
    :returns: stacks ``e^{B h}`` and ``K(h) = int_0^h e^{Bw} a e^{B'w} dw``
      for each horizon in *h*
    """
    d = aux.d
    h = np.atleast_1d(np.asarray(h, dtype=float))
    if d == 1:
        b, a = aux.B[0, 0], aux.a[0, 0]
        phi = np.exp(b * h)
        K = a * h * _expm1_ratio(2.0 * b * h)
        return phi.reshape(-1, 1, 1), K.reshape(-1, 1, 1)
    C = np.zeros((2 * d, 2 * d))
    C[:d, :d] = -aux.B
    C[:d, d:] = aux.a
    C[d:, d:] = aux.B.T
    F = scipy.linalg.expm(h[:, np.newaxis, np.newaxis] * C)
    phi = np.swapaxes(F[:, d:, d:], 1, 2)
    K = np.matmul(phi, F[:, :d, d:])
    return phi, 0.5 * (K + np.swapaxes(K, 1, 2))


def _pull_targets(aux, h):
    """
    v(T - h) for each horizon in *h*.
    """
    d = aux.d
    h = np.atleast_1d(np.asarray(h, dtype=float))
    if aux.time_dependent:
        out = np.array([aux.v - aux.integrate_beta(aux.T - hk, aux.T) for hk in h])
    elif d == 1:
        b, beta = aux.B[0, 0], aux.beta(0.0)[0]
        out = (np.exp(-b * h) * aux.v[0] - beta * h * _expm1_ratio(-b * h)).reshape(-1, 1)
    else:
        C = np.zeros((d + 1, d + 1))
        C[:d, :d] = -aux.B
        C[:d, d] = aux.beta(0.0)
        F = scipy.linalg.expm(h[:, np.newaxis, np.newaxis] * C)
        out = np.matmul(F[:, :d, :d], aux.v) - F[:, :d, d]
    out[h == 0.0] = aux.v
    return out


def cholesky_stack(K, what, times=None):
    try:
        return np.linalg.cholesky(K)
    except np.linalg.LinAlgError:
        for k in range(K.shape[0]):
            try:
                np.linalg.cholesky(K[k])
            except np.linalg.LinAlgError:
                raise SingularMatrixError(what, None if times is None else times[k])
        raise SingularMatrixError(what)


def _H_at_horizons(aux, h, times=None, logdet=False):
    """
    H = Phi' K^{-1} Phi for each horizon in *h*, and with *logdet* also
    log |K| per horizon.
    """
    phi, K = _phi_and_gramian(aux, h)
    L = cholesky_stack(K, 'transition covariance K', times)
    Y = np.linalg.solve(L, phi)
    H = np.matmul(np.swapaxes(Y, 1, 2), Y)
    if logdet:
        return H, 2.0 * np.sum(np.log(np.diagonal(L, axis1=1, axis2=2)), axis=1)
    return H


def _check_near_end(aux, h, t):
    if h < NEAR_END_FRACTION * aux.T:
        raise ValueError('time %r is too close to the segment end %r' % (t, aux.T))


def transition_moments(aux, t, x):
    """
    Gaussian moments of X_T given X_t = x.

    :returns: ``(mean, cov)``
    :raises: :exc:`ValueError` if ``t >= T``
    """
    if not t < aux.T:
        raise ValueError('transition moments need t < T, got t=%r, T=%r' % (t, aux.T))
    h = aux.T - t
    phi, K = _phi_and_gramian(aux, h)
    x = np.asarray(x, dtype=float)
    if aux.time_dependent:
        offset = aux.integrate_beta(t, aux.T)
    else:
        d = aux.d
        C = np.zeros((d + 1, d + 1))
        C[:d, :d] = aux.B
        C[:d, d] = aux.beta(0.0)
        offset = scipy.linalg.expm(h * C)[:d, d]
    return phi[0].dot(x) + offset, K[0]


def aux_log_density(aux, t, x):
    """
    log p~(t, x; T, v).

    :raises: :exc:`SingularMatrixError` if the covariance is singular
    """
    mean, cov = transition_moments(aux, t, x)
    try:
        c = scipy.linalg.cho_factor(cov)
    except np.linalg.LinAlgError:
        raise SingularMatrixError('transition covariance', t)
    r = aux.v - mean
    logdet = 2.0 * np.sum(np.log(np.diag(c[0])))
    return -0.5 * (aux.d * np.log(2.0 * np.pi) + logdet + r.dot(scipy.linalg.cho_solve(c, r)))


def v_of_s(aux, t):
    """
    Pull target v(t) = Phi(t, T) v - int_t^T Phi(t, w) beta(w) dw, so
    that the auxiliary started in v(t) at t has mean v at T.
    """
    if not 0.0 <= t <= aux.T:
        raise ValueError('time %r outside [0, %r]' % (t, aux.T))
    if t == aux.T:
        return aux.v.copy()
    return _pull_targets(aux, aux.T - t)[0]


def H_r_tilde(aux, t, x):
    """
    :returns: ``(H(t), r(t, x))`` with r = H (v(t) - x)
    :raises: :exc:`SingularMatrixError` if K(t) is singular
    """
    if t < 0.0:
        raise ValueError('H is defined for 0 <= t < T, got t=%r' % t)
    h = aux.T - t
    _check_near_end(aux, h, t)
    H = _H_at_horizons(aux, h, times=[t])[0]
    return H, H.dot(v_of_s(aux, t) - np.asarray(x, dtype=float))


def H_on_grid(aux, times):
    """
    H(t) for every t in *times* (all < T).
    """
    times = np.asarray(times, dtype=float)
    if times.shape[0] and np.min(times) < 0.0:
        raise ValueError('H is defined for 0 <= t < T, got t=%r' % np.min(times))
    h = aux.T - times
    if h.shape[0]:
        _check_near_end(aux, np.min(h), times[np.argmin(h)])
    return _H_at_horizons(aux, h, times=times)


def v_on_grid(aux, times):
    """
    v(t) for every t in *times*.
    """
    times = np.asarray(times, dtype=float)
    return _pull_targets(aux, aux.T - times)


def J_of_s(aux, s, route='direct'):
    """
    J(s) = H(tau(s)) (T - s)^2 / T.

    The ``'lyapunov'`` route uses the stationary Gramian lam of
    :func:`solve_lyapunov`: with h = (T - s)^2 / T,
    J = h (e^{-Bh} lam e^{-B'h} - lam)^{-1}.
    """
    if not 0.0 <= s < aux.T:
        raise ValueError('J is defined for 0 <= s < T, got s=%r, T=%r' % (s, aux.T))
    h = (aux.T - s) ** 2 / aux.T
    _check_near_end(aux, h, s)
    if route == 'direct':
        return _H_at_horizons(aux, h, times=[s])[0] * h
    elif route == 'lyapunov':
        lam = solve_lyapunov(aux.B, aux.a)
        E = expm(-aux.B * h)
        M = E.dot(lam).dot(E.T) - lam
        try:
            c = scipy.linalg.cho_factor(0.5 * (M + M.T))
        except np.linalg.LinAlgError:
            raise SingularMatrixError('inverse of H', s)
        J = scipy.linalg.cho_solve(c, np.eye(aux.d)) * h
        return 0.5 * (J + J.T)
    raise ValueError('unknown route %r' % route)


def v_dot(aux, s, route='direct'):
    """
    Derivative of v at tau(s): B v(tau(s)) + beta(tau(s)).  The
    ``'closed'`` route evaluates e^{-Bh} (B v + beta), h = T - tau(s),
    for constant beta.
    """
    if not 0.0 <= s <= aux.T:
        raise ValueError('time %r outside [0, %r]' % (s, aux.T))
    t = tau(s, aux.T)
    if route == 'direct':
        return aux.B.dot(v_of_s(aux, t)) + aux.beta(t)
    elif route == 'closed':
        if aux.time_dependent:
            raise UnsupportedAuxiliary('closed form derivative needs constant beta')
        return expm(-aux.B * (aux.T - t)).dot(aux.B.dot(aux.v) + aux.beta(t))
    raise ValueError('unknown route %r' % route)


class BridgeContext(object):
    """
    One conditioned segment (u at 0, v at T) with everything the guided
    proposal needs on a uniform s-grid of *m* points: the image grid
    tau(s_j), v(tau(s_j)), the derivative of v there, J(s_j), H(tau(s_j)),
    beta(tau(s_j)) and log p~(0, u; T, v).

    ``J[m-1]`` holds the limit a~^{-1}; it is never used by the left
    point schemes.
    """

    def __init__(self, aux, u, s_grid, tau_points, v_tau, vdot_tau, J, H_direct=None, v_direct=None,
                 H_tau=None, beta_tau=None, beta_direct=None, log_ptilde=None):
        self.aux = aux
        self.u = u
        self.s_grid = s_grid
        self.tau_points = tau_points
        self.v_tau = v_tau
        self.vdot_tau = vdot_tau
        self.J = J
        if H_tau is None:
            h = (aux.T - s_grid.points[:-1]) ** 2 / aux.T
            H_tau = J[:-1] / h[:, np.newaxis, np.newaxis]
        self.H_tau = H_tau
        self.beta_tau = aux.beta_many(tau_points) if beta_tau is None else beta_tau
        # direct route: H, v and beta at the uniform points read as times
        self.H_direct = H_direct
        self.v_direct = v_direct
        if beta_direct is None and v_direct is not None:
            beta_direct = aux.beta_many(s_grid.points)
        self.beta_direct = beta_direct
        self.log_ptilde = log_ptilde
        for arr in (u, tau_points, v_tau, vdot_tau, J, H_tau, self.beta_tau, H_direct, v_direct, beta_direct):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def T(self):
        return self.aux.T

    @property
    def v(self):
        return self.aux.v

    @property
    def m(self):
        return self.s_grid.count

    @property
    def d(self):
        return self.aux.d

    @property
    def has_direct(self):
        return self.H_direct is not None


def precompute_bridge_grid(aux, u, v, T, m, direct=False):
    """
    Cache v(tau(s_j)), its derivative and J(s_j) on the uniform grid of
    *m* points on [0, T], together with log p~(0, u; T, v).  With *direct*
    also cache H and v at the uniform points themselves, for the scheme
    without time change.

    :returns: :class:`BridgeContext`
    :raises: :exc:`SingularMatrixError` naming the first grid time with a
      singular transition covariance
    """
    v = np.asarray(v, dtype=float)
    u = np.array(u, dtype=float)
    if T != aux.T or not np.array_equal(v, aux.v):
        raise ValueError('auxiliary process was built for a different segment end')
    d = aux.d
    s_grid = TimeGrid.uniform(0.0, T, m)
    s = s_grid.points
    t = tau(s, T)
    t[-1] = T
    v_tau = _pull_targets(aux, T - t)
    v_tau[-1] = aux.v
    beta_tau = aux.beta_many(t)
    vdot = np.matmul(v_tau, aux.B.T) + beta_tau
    # T - tau(s) = (T - s)^2 / T; the first horizon is T itself
    h = (T - s[:-1]) ** 2 / T
    _check_near_end(aux, h[-1], s[-2])
    H_tau, logdet = _H_at_horizons(aux, h, times=t[:-1], logdet=True)
    J = np.empty((m, d, d))
    J[:-1] = H_tau * h[:, np.newaxis, np.newaxis]
    try:
        c = scipy.linalg.cho_factor(aux.a)
        J[-1] = scipy.linalg.cho_solve(c, np.eye(d))
    except np.linalg.LinAlgError:
        J[-1] = np.nan
    # v - E[X_T | X_0 = u] = Phi(T) (v(0) - u), so the quadratic form is
    # (v(0) - u)' H(0) (v(0) - u)
    r = v_tau[0] - u
    log_ptilde = -0.5 * (d * np.log(2.0 * np.pi) + logdet[0] + r.dot(H_tau[0].dot(r)))
    H_direct = v_direct = None
    if direct:
        H_direct = H_on_grid(aux, s[:-1])
        v_direct = v_on_grid(aux, s)
        v_direct[-1] = aux.v
    return BridgeContext(aux, u, s_grid, t, v_tau, vdot, J, H_direct=H_direct, v_direct=v_direct,
                         H_tau=H_tau, beta_tau=beta_tau, log_ptilde=log_ptilde)
