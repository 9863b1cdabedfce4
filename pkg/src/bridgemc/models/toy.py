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
Scaled Brownian motion X = tau^{-1/2} W, observed once at T = 1.

With an Exp(1) prior on tau and a single observation x1 the posterior is
Gamma(3/2, rate 1 + x1^2 / 2), and because the auxiliary process equals the
model, an independence sampler proposing from that Gamma law accepts every
move.
"""

import numpy as np
import scipy.stats

from ..linproc import LinearAuxiliary
from ..sde_core import DiffusionModel


class ScaledBrownianModel(DiffusionModel):

    name = 'toy'
    param_names = ('tau',)

    def __init__(self):
        super(ScaledBrownianModel, self).__init__(1, 1)

    def drift(self, t, x, theta):
        return np.zeros(1)

    def dispersion(self, t, x, theta):
        return np.array([[theta[0] ** -0.5]])

    def drift_many(self, t, X, theta):
        return np.zeros((X.shape[0], 1))

    def dispersion_many(self, t, X, theta):
        return np.full((X.shape[0], 1, 1), theta[0] ** -0.5)

    def auxiliary(self, theta, T, u, v):
        return LinearAuxiliary(np.zeros((1, 1)), np.zeros(1), [[theta[0] ** -0.5]], T, v)

    def default_theta(self):
        return np.array([1.0])


def exact_posterior(x1, prior_rate=1.0):
    """
    :returns: frozen :class:`scipy.stats.gamma` posterior of tau
    """
    return scipy.stats.gamma(a=1.5, scale=1.0 / (prior_rate + 0.5 * x1 ** 2))


def toy_scaled_bm():
    """
    :returns: ``(model, exact_posterior)``
    """
    return ScaledBrownianModel(), exact_posterior


def register_models(context):
    context.set_model(ScaledBrownianModel.name, ScaledBrownianModel)
