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
dX = (alpha arctan(X) + beta) dt + sigma dW.

For alpha < 0 the drift pulls towards x* = tan(-beta / alpha); the
auxiliary process is the tangent linearization at x*.
"""

import numpy as np

from ..linproc import LinearAuxiliary
from ..sde_core import DiffusionModel


class ArctanModel(DiffusionModel):

    name = 'arctan'
    param_names = ('alpha', 'beta', 'sigma')
    drift_indices = (0, 1)

    def __init__(self):
        super(ArctanModel, self).__init__(1, 1)

    def drift(self, t, x, theta):
        return theta[0] * np.arctan(x) + theta[1]

    def dispersion(self, t, x, theta):
        return np.array([[theta[2]]])

    def drift_basis(self, t, x, theta):
        return np.array([[np.arctan(x[0]), 1.0]])

    def drift_many(self, t, X, theta):
        return theta[0] * np.arctan(X) + theta[1]

    def dispersion_many(self, t, X, theta):
        return np.full((X.shape[0], 1, 1), theta[2])

    def drift_basis_many(self, t, X, theta):
        out = np.ones((X.shape[0], 1, 2))
        out[:, 0, 0] = np.arctan(X[:, 0])
        return out

    def auxiliary(self, theta, T, u, v):
        alpha, beta, sigma = theta
        if alpha == 0.0:
            # the drift is the constant beta
            B, offset = 0.0, beta
        else:
            B = alpha * np.cos(-beta / alpha) ** 2
            offset = 0.5 * alpha * np.sin(2.0 * beta / alpha)
        return LinearAuxiliary([[B]], [offset], [[sigma]], T, v)

    def default_theta(self):
        return np.array([-2.0, 0.0, 0.75])


def arctan_model(alpha, beta, sigma):
    """
    :returns: ``(model, auxiliary_builder)`` where the builder maps
      ``(T, u, v)`` to the auxiliary process at these parameters
    """
    model = ArctanModel()
    theta = np.array([alpha, beta, sigma], dtype=float)

    def builder(T, u, v):
        return model.auxiliary(theta, T, u, v)
    return model, builder


def register_models(context):
    context.set_model(ArctanModel.name, ArctanModel)
