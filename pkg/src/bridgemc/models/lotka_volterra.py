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
Lotka-Volterra model with multiplicative noise, in log coordinates
(xi, eta) = (log X, log Y):

    d xi  = (theta - e^eta) dt + sigma dW1
    d eta = (-theta + e^xi) dt + sigma dW2

The auxiliary process has B = 0 and follows the time derivative of the
logarithm of the noise-free solution started in the segment's left end.
"""

import numpy as np
import scipy.integrate

from ..core import UnsupportedAuxiliary
from ..linproc import LinearAuxiliary
from ..sde_core import DiffusionModel

# relative drift of x y exp(-(x + y) / theta) tolerated along the
# noise-free solution
CONSERVATION_TOLERANCE = 1e-6


def conserved_quantity(x, y, theta):
    return x * y * np.exp(-(x + y) / theta)


def noise_free_solution(theta, x0, T):
    """
    Integrate dx = (theta x - x y) dt, dy = (x y - theta y) dt on [0, T].

    :param x0: initial point ``(x, y)`` in the positive quadrant
    :returns: dense :class:`scipy.integrate.OdeSolution`
    :raises: :exc:`ValueError` for a start outside the positive
      quadrant, :exc:`UnsupportedAuxiliary` if the solution leaves it or
      does not conserve the first integral
    """
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 <= 0.0):
        raise ValueError('initial point %s is not in the positive quadrant' % (x0,))

    def rhs(t, z):
        x, y = z
        return [theta * x - x * y, x * y - theta * y]

    sol = scipy.integrate.solve_ivp(rhs, (0.0, T), x0, method='DOP853', dense_output=True,
                                    rtol=1e-11, atol=1e-12)
    if not sol.success:
        raise UnsupportedAuxiliary('noise-free integration failed: %s' % sol.message)
    if np.any(sol.y <= 0.0):
        raise UnsupportedAuxiliary('noise-free solution left the positive quadrant')
    q = conserved_quantity(sol.y[0], sol.y[1], theta)
    if np.max(np.abs(q - q[0])) > CONSERVATION_TOLERANCE * abs(q[0]):
        raise UnsupportedAuxiliary('noise-free solution does not conserve x y exp(-(x + y) / theta)')
    return sol.sol


class LotkaVolterraModel(DiffusionModel):

    name = 'lotka_volterra'
    param_names = ('theta', 'sigma')
    coordinate_names = ('log_x', 'log_y')

    def __init__(self):
        super(LotkaVolterraModel, self).__init__(2, 2)

    def drift(self, t, x, theta):
        return np.array([theta[0] - np.exp(x[1]), -theta[0] + np.exp(x[0])])

    def dispersion(self, t, x, theta):
        return theta[1] * np.eye(2)

    def drift_many(self, t, X, theta):
        return np.stack([theta[0] - np.exp(X[:, 1]), -theta[0] + np.exp(X[:, 0])], axis=1)

    def dispersion_many(self, t, X, theta):
        return np.broadcast_to(theta[1] * np.eye(2), (X.shape[0], 2, 2))

    def auxiliary(self, theta, T, u, v):
        rate, sigma = theta
        path = noise_free_solution(rate, np.exp(u), T)

        def beta(t):
            x, y = path(t)
            return np.array([rate - y, -rate + x])

        def beta_integral(s, t):
            return np.log(path(t)) - np.log(path(s))
        return LinearAuxiliary(np.zeros((2, 2)), beta, sigma * np.eye(2), T, v, beta_integral=beta_integral)

    def default_theta(self):
        return np.array([1.0, 0.15])


def lotka_volterra_model(theta, sigma):
    """
    :returns: ``(model, auxiliary_builder)``, the builder mapping
      ``(T, u, v)`` (log coordinates) to the auxiliary process
    """
    model = LotkaVolterraModel()
    params = np.array([theta, sigma], dtype=float)

    def builder(T, u, v):
        return model.auxiliary(params, T, u, v)
    return model, builder


def register_models(context):
    context.set_model(LotkaVolterraModel.name, LotkaVolterraModel)
