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
Linear diffusions dX = (B X + beta) dt + sigma dW, with the parameter
vector packing B (row major), beta and sigma (row major).  With the
auxiliary process equal to the model itself the likelihood ratio Psi is
identically one.
"""

import numpy as np

from ..linproc import LinearAuxiliary
from ..sde_core import DiffusionModel


class LinearModel(DiffusionModel):

    name = 'linear'

    def __init__(self, d=1, d_noise=None):
        if d_noise is None:
            d_noise = d
        super(LinearModel, self).__init__(d, d_noise)
        self.param_names = tuple(
            ['B%d%d' % (i + 1, j + 1) for i in range(d) for j in range(d)] +
            ['beta%d' % (i + 1) for i in range(d)] +
            ['sigma%d%d' % (i + 1, j + 1) for i in range(d) for j in range(d_noise)])
        self.drift_indices = tuple(range(d * d + d))

    def unpack(self, theta):
        """
        :returns: ``(B, beta, sigma)``
        """
        d, k = self.d, self.d_noise
        theta = np.asarray(theta, dtype=float)
        B = theta[:d * d].reshape(d, d)
        beta = theta[d * d:d * d + d]
        sigma = theta[d * d + d:].reshape(d, k)
        return B, beta, sigma

    def pack(self, B, beta, sigma):
        return np.concatenate([np.ravel(B), np.ravel(beta), np.ravel(sigma)]).astype(float)

    def drift(self, t, x, theta):
        B, beta, _ = self.unpack(theta)
        return B.dot(x) + beta

    def dispersion(self, t, x, theta):
        return self.unpack(theta)[2]

    def drift_basis(self, t, x, theta):
        # d(Bx + beta) / d(B_kl) = e_k x_l, d / d(beta_k) = e_k
        d = self.d
        return np.hstack([np.kron(np.eye(d), np.reshape(x, (1, d))), np.eye(d)])

    def drift_many(self, t, X, theta):
        B, beta, _ = self.unpack(theta)
        return np.matmul(X, B.T) + beta

    def dispersion_many(self, t, X, theta):
        return np.broadcast_to(self.unpack(theta)[2], (X.shape[0], self.d, self.d_noise))

    def drift_basis_many(self, t, X, theta):
        d = self.d
        out = np.zeros((X.shape[0], d, d * d + d))
        for k in range(d):
            out[:, k, k * d:(k + 1) * d] = X
        out[:, :, d * d:] = np.eye(d)
        return out

    def auxiliary(self, theta, T, u, v):
        B, beta, sigma = self.unpack(theta)
        return LinearAuxiliary(B, beta, sigma, T, v)

    def default_theta(self):
        return self.pack(-np.eye(self.d), np.zeros(self.d), np.eye(self.d, self.d_noise))


def brownian_model(d=1, sigma=1.0):
    """
    Scaled Brownian motion sigma W as a :class:`LinearModel`.

    :returns: ``(model, theta)``
    """
    model = LinearModel(d)
    return model, model.pack(np.zeros((d, d)), np.zeros(d), sigma * np.eye(d))


def register_models(context):
    context.set_model(LinearModel.name, LinearModel)
