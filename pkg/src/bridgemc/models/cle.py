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
Chemical Langevin equations dX = S (theta o h(X)) dt + S diag(sqrt(theta o h(X))) dW
for reaction networks with stoichiometry S and hazard basis h, the
weighted least squares linearization of the hazards that defines the
auxiliary process, and exact (Gillespie) simulation of the jump process.
"""

import collections

import numpy as np

from ..core import RankDeficientDesign
from ..linproc import LinearAuxiliary
from ..sde_core import DiffusionModel

SSAResult = collections.namedtuple('SSAResult', ['times', 'states', 'snapshots'])


class ReactionNetwork(object):
    """
    Stoichiometry and hazard basis of a reaction network.
    """

    def __init__(self, stoichiometry, hazards, affine=None, regressors=None, species=None, name=None,
                 conservation=None):
        """
        :param stoichiometry: integer ``d x K`` matrix
        :param hazards: callable mapping a state to the ``K`` hazards
          (without rate constants)
        :param affine: ``{i: (c, u)}`` for hazards that are exactly
          ``c + u'x``
        :param regressors: ``{i: [state indices]}`` for the remaining
          hazards, naming the coordinates they are regressed on
        :param conservation: named conserved totals, e.g. ``{'K_DNA': 10}``
        """
        S = np.array(stoichiometry)
        if S.ndim != 2 or not np.all(S == np.round(S)):
            raise ValueError('stoichiometry must be an integer matrix')
        self.S = S.astype(int)
        self.S.setflags(write=False)
        self._hazards = hazards
        self.affine = dict(affine or {})
        self.regressors = dict(regressors or {})
        self.species = species or ['x%d' % (i + 1) for i in range(self.d)]
        self.name = name
        self.conservation = dict(conservation or {})

    @property
    def d(self):
        return self.S.shape[0]

    @property
    def K(self):
        return self.S.shape[1]

    def h(self, x):
        return np.asarray(self._hazards(x), dtype=float)

    def h_many(self, X):
        """
        :param X: ``n x d`` states
        :returns: ``n x K`` hazards
        """
        X = np.asarray(X, dtype=float)
        n = X.shape[0]
        cols = self._hazards(X.T)
        return np.stack([np.broadcast_to(np.asarray(c, dtype=float), (n,)) for c in cols], axis=1)


class HazardLinearization(object):
    """
    Affine surrogate h~(x) = c + U x of the hazard basis.
    """

    def __init__(self, c, U):
        self.c = np.asarray(c, dtype=float)
        self.U = np.asarray(U, dtype=float)

    def hazards(self, x):
        return self.c + self.U.dot(x)

    def drift_matrices(self, S, theta):
        """
        :returns: ``(B, beta)`` with B x + beta = S (theta o h~(x))
        """
        theta = np.asarray(theta, dtype=float)
        return S.dot(theta[:, np.newaxis] * self.U), S.dot(theta * self.c)


def linearize_hazards(net, design_points):
    """
    Affine hazards are kept; every other hazard h_i is replaced by the
    weighted least squares fit c_i + u_i'x over *design_points* on its
    regressors, with weights h_i(x_j).

    :raises: :exc:`RankDeficientDesign` naming the hazard whose weighted
      design is rank deficient
    """
    pts = np.atleast_2d(np.asarray(design_points, dtype=float))
    c = np.zeros(net.K)
    U = np.zeros((net.K, net.d))
    values = np.array([net.h(x) for x in pts])
    for i in range(net.K):
        if i in net.affine:
            c[i], U[i] = net.affine[i][0], net.affine[i][1]
            continue
        if i not in net.regressors:
            raise ValueError('hazard %d is neither affine nor has regressors' % i)
        cols = list(net.regressors[i])
        y = values[:, i]
        if np.any(y < 0.0) or not np.any(y > 0.0):
            raise ValueError('weights for hazard %d must be nonnegative and not all zero' % i)
        sw = np.sqrt(y)
        design = np.hstack([np.ones((pts.shape[0], 1)), pts[:, cols]]) * sw[:, np.newaxis]
        rank = np.linalg.matrix_rank(design)
        if rank < len(cols) + 1:
            raise RankDeficientDesign(i, rank, len(cols) + 1)
        coef = np.linalg.lstsq(design, y * sw, rcond=None)[0]
        c[i] = coef[0]
        U[i, cols] = coef[1:]
    return HazardLinearization(c, U)


class CLEModel(DiffusionModel):
    """
    Chemical Langevin equation of a :class:`ReactionNetwork`, one rate
    constant per reaction.  Negative hazard values are clamped at 0
    inside the square root.
    """

    name = 'cle'
    nonnegative = True
    exact_matching = False

    def __init__(self, net, linearization=None):
        super(CLEModel, self).__init__(net.d, net.K)
        self.net = net
        self.param_names = tuple('theta%d' % (i + 1) for i in range(net.K))
        self.drift_indices = tuple(range(net.K))
        self.linearization = linearization

    def drift(self, t, x, theta):
        return self.net.S.dot(theta * self.net.h(x))

    def dispersion(self, t, x, theta):
        rates = np.maximum(theta * self.net.h(x), 0.0)
        return self.net.S * np.sqrt(rates)[np.newaxis, :]

    def clamped(self, x, theta):
        return bool(np.any(theta * self.net.h(x) < 0.0))

    def drift_basis(self, t, x, theta):
        return self.net.S * self.net.h(x)[np.newaxis, :]

    def drift_many(self, t, X, theta):
        return np.matmul(theta * self.net.h_many(X), self.net.S.T)

    def dispersion_many(self, t, X, theta):
        rates = np.maximum(theta * self.net.h_many(X), 0.0)
        return self.net.S[np.newaxis] * np.sqrt(rates)[:, np.newaxis, :]

    def drift_basis_many(self, t, X, theta):
        return self.net.S[np.newaxis] * self.net.h_many(X)[:, np.newaxis, :]

    def fit_linearization(self, design_points):
        self.linearization = linearize_hazards(self.net, design_points)
        return self.linearization

    def auxiliary(self, theta, T, u, v):
        if self.linearization is None:
            raise ValueError('hazards have not been linearized, call fit_linearization first')
        theta = np.asarray(theta, dtype=float)
        B, beta = self.linearization.drift_matrices(self.net.S, theta)
        rates = np.maximum(theta * self.linearization.hazards(v), 0.0)
        return LinearAuxiliary(B, beta, self.net.S * np.sqrt(rates)[np.newaxis, :], T, v)


def cle_model(net):
    return CLEModel(net)


def prokaryotic_network(K_DNA=10):
    """
    Prokaryotic auto-regulation: species (RNA, P, P2, DNA), eight
    reactions; DNA + DNA.P2 = *K_DNA* is conserved.
    """
    if K_DNA < 1:
        raise ValueError('K_DNA must be at least 1, got %r' % K_DNA)
    S = [[0, 0, 1, 0, 0, 0, -1, 0],
         [0, 0, 0, 1, -2, 2, 0, -1],
         [-1, 1, 0, 0, 1, -1, 0, 0],
         [-1, 1, 0, 0, 0, 0, 0, 0]]

    def hazards(x):
        x1, x2, x3, x4 = x
        return [x3 * x4, K_DNA - x4, x4, x1, 0.5 * x2 * (x2 - 1.0), x3, x1, x2]

    e = np.eye(4)
    affine = {1: (K_DNA, -e[3]), 2: (0.0, e[3]), 3: (0.0, e[0]),
              5: (0.0, e[2]), 6: (0.0, e[0]), 7: (0.0, e[1])}
    regressors = {0: [2, 3], 4: [1]}
    net = ReactionNetwork(S, hazards, affine=affine, regressors=regressors,
                          species=['RNA', 'P', 'P2', 'DNA'], name='prokaryotic',
                          conservation={'K_DNA': K_DNA})
    return net


def example2_network():
    """
    0 -> A, A -> B, A + B -> C, 2C -> 0.
    """
    S = [[1, -1, -1, 0],
         [0, 1, -1, 0],
         [0, 0, 1, -2]]

    def hazards(x):
        x1, x2, x3 = x
        return [1.0, x1, x1 * x2, 0.5 * x3 * (x3 - 1.0)]

    e = np.eye(3)
    affine = {0: (1.0, np.zeros(3)), 1: (0.0, e[0])}
    regressors = {2: [0, 1], 3: [2]}
    return ReactionNetwork(S, hazards, affine=affine, regressors=regressors,
                           species=['A', 'B', 'C'], name='example2')


def ssa_simulate(net, theta, x0, T, rng, snapshot_times=None):
    """
    Exact simulation of the reaction jump process on [0, T].

    :param snapshot_times: times at which to report the state
    :returns: :class:`SSAResult` with jump times, states after each jump
      (the first entry is the initial state at 0) and the snapshots
    """
    theta = np.asarray(theta, dtype=float)
    x = np.array(x0, dtype=np.int64)
    S = net.S.astype(np.int64)
    times = [0.0]
    states = [x.copy()]
    t = 0.0
    while True:
        rates = np.maximum(theta * net.h(x), 0.0)
        total = rates.sum()
        if total <= 0.0:
            # absorbing
            break
        t += rng.exponential(1.0 / total)
        if t > T:
            break
        k = int(np.searchsorted(np.cumsum(rates), rng.random() * total, side='right'))
        x = x + S[:, min(k, net.K - 1)]
        times.append(t)
        states.append(x.copy())
    times = np.array(times)
    states = np.array(states)
    snapshots = None
    if snapshot_times is not None:
        idx = np.searchsorted(times, np.asarray(snapshot_times, dtype=float), side='right') - 1
        snapshots = states[idx]
    return SSAResult(times, states, snapshots)


def register_models(context):
    context.set_model('prokaryotic', lambda K_DNA=10: CLEModel(prokaryotic_network(K_DNA)))
    context.set_model('cle_example2', lambda: CLEModel(example2_network()))
