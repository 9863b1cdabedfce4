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
Prior laws and Metropolis-Hastings proposal kernels.

Both are written in configuration files as one line ``<kind> [args]``,
e.g. ``gaussian 0 5`` or ``log_gaussian 0.12``.  Densities are always
evaluated in log form on the original parameter scale, so kernels acting
on log parameters include their Jacobian.
"""

import numpy as np
import scipy.stats

PRIOR_KINDS = {
    # kind: number of arguments
    'gaussian': 2,      # mean, variance
    'uniform_log': 2,   # lo, hi on log scale
    'flat_log': 0,
    'exponential': 1,   # rate
    'flat': 0,
}

KERNEL_KINDS = {
    'log_uniform': (1, 1),      # halfwidth
    'log_gaussian': (1, 1),     # scale
    'gaussian_rw': (1, None),   # variance, variances or covariance matrix
    'gamma': (2, 2),            # shape, rate
    'preconditioned': (1, 1),   # alpha
}


def _format_args(kind, args):
    return ' '.join([kind] + [repr(float(a)) for a in args])


def _split_line(text):
    splits = str(text).split()
    if not splits:
        raise ValueError('empty law')
    try:
        args = [float(a) for a in splits[1:]]
    except ValueError:
        raise ValueError('arguments must be numbers: %s' % text)
    return splits[0], args


class PriorSpec(object):
    """
    Prior law of a single parameter.
    """

    def __init__(self, kind, args=()):
        """
        :raises: :exc:`ValueError` if the law does not validate
        """
        if kind not in PRIOR_KINDS:
            raise ValueError('prior must be one of [%s], got %r' % (','.join(sorted(PRIOR_KINDS)), kind))
        args = tuple(float(a) for a in args)
        if len(args) != PRIOR_KINDS[kind]:
            raise ValueError('prior %s takes %d arguments, got %d' % (kind, PRIOR_KINDS[kind], len(args)))
        if kind == 'gaussian' and not args[1] > 0.0:
            raise ValueError('gaussian prior needs a positive variance')
        if kind == 'uniform_log' and not args[0] < args[1]:
            raise ValueError('uniform_log prior needs lo < hi')
        if kind == 'exponential' and not args[0] > 0.0:
            raise ValueError('exponential prior needs a positive rate')
        self.kind = kind
        self.args = args

    @classmethod
    def parse(cls, text):
        kind, args = _split_line(text)
        return cls(kind, args)

    @property
    def precision(self):
        """
        Precision of a gaussian prior, 0 for the flat prior, ``None`` for
        laws that are not conjugate to a linear drift.
        """
        if self.kind == 'gaussian':
            return 1.0 / self.args[1]
        if self.kind == 'flat':
            return 0.0
        return None

    @property
    def mean(self):
        return self.args[0] if self.kind == 'gaussian' else 0.0

    def in_support(self, x):
        if not np.isfinite(x):
            return False
        if self.kind == 'uniform_log':
            return x > 0.0 and self.args[0] <= np.log(x) <= self.args[1]
        if self.kind in ('flat_log', 'exponential'):
            return x > 0.0
        return True

    def log_density(self, x):
        if not self.in_support(x):
            return -np.inf
        if self.kind == 'gaussian':
            return scipy.stats.norm.logpdf(x, loc=self.args[0], scale=np.sqrt(self.args[1]))
        if self.kind == 'uniform_log':
            return -np.log(x) - np.log(self.args[1] - self.args[0])
        if self.kind == 'flat_log':
            return -np.log(x)
        if self.kind == 'exponential':
            return scipy.stats.expon.logpdf(x, scale=1.0 / self.args[0])
        return 0.0

    def __eq__(self, other):
        return isinstance(other, PriorSpec) and self.kind == other.kind and self.args == other.args

    def __ne__(self, other):
        return not self.__eq__(other)

    def __str__(self):
        return _format_args(self.kind, self.args)

    def __repr__(self):
        return 'PriorSpec(%r, %r)' % (self.kind, self.args)


class Prior(object):
    """
    Independent priors, one :class:`PriorSpec` per parameter.
    """

    def __init__(self, specs):
        self.specs = list(specs)

    def in_support(self, theta, indices=None):
        indices = range(len(self.specs)) if indices is None else indices
        return all(self.specs[i].in_support(theta[i]) for i in indices)

    def log_density(self, theta, indices=None):
        indices = range(len(self.specs)) if indices is None else indices
        return float(sum(self.specs[i].log_density(theta[i]) for i in indices))

    def precisions(self, indices):
        return [self.specs[i].precision for i in indices]

    def means(self, indices):
        return np.array([self.specs[i].mean for i in indices])


class ProposalKernel(object):
    """
    Proposal q(. | theta) for a block of parameters.
    """

    def __init__(self, kind, args=()):
        if kind not in KERNEL_KINDS:
            raise ValueError('proposal must be one of [%s], got %r' % (','.join(sorted(KERNEL_KINDS)), kind))
        args = tuple(float(a) for a in args)
        lo, hi = KERNEL_KINDS[kind]
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise ValueError('proposal %s takes %s arguments, got %d' % (
                kind, lo if lo == hi else '%d or more' % lo, len(args)))
        if any(a <= 0.0 for a in args) and kind != 'gaussian_rw':
            raise ValueError('proposal %s needs positive arguments' % kind)
        self.kind = kind
        self.args = args

    @classmethod
    def parse(cls, text):
        kind, args = _split_line(text)
        return cls(kind, args)

    @property
    def alpha(self):
        if self.kind != 'preconditioned':
            raise ValueError('%s kernel has no step scale alpha' % self.kind)
        return self.args[0]

    def covariance(self, n):
        """
        :returns: ``n x n`` covariance of a ``gaussian_rw`` kernel
        """
        args = np.array(self.args)
        if args.shape[0] == 1:
            return args[0] * np.eye(n)
        if args.shape[0] == n:
            return np.diag(args)
        if args.shape[0] == n * n:
            return args.reshape(n, n)
        raise ValueError('gaussian_rw with %d arguments does not fit a block of %d parameters' % (args.shape[0], n))

    def propose(self, theta, rng):
        theta = np.asarray(theta, dtype=float)
        n = theta.shape[0]
        if self.kind == 'log_uniform':
            return theta * np.exp(rng.uniform(-self.args[0], self.args[0], size=n))
        if self.kind == 'log_gaussian':
            return theta * np.exp(self.args[0] * rng.standard_normal(n))
        if self.kind == 'gaussian_rw':
            return theta + np.linalg.cholesky(self.covariance(n)).dot(rng.standard_normal(n))
        if self.kind == 'gamma':
            return rng.gamma(self.args[0], 1.0 / self.args[1], size=n)
        raise ValueError('%s proposals are drawn by the sampler' % self.kind)

    def log_density(self, to, frm):
        """
        log q(to | frm)
        """
        to = np.asarray(to, dtype=float)
        frm = np.asarray(frm, dtype=float)
        if self.kind in ('log_uniform', 'log_gaussian'):
            if np.any(to <= 0.0) or np.any(frm <= 0.0):
                return -np.inf
            step = np.log(to) - np.log(frm)
            if self.kind == 'log_uniform':
                if np.any(np.abs(step) > self.args[0]):
                    return -np.inf
                return float(np.sum(-np.log(2.0 * self.args[0]) - np.log(to)))
            return float(np.sum(scipy.stats.norm.logpdf(step, scale=self.args[0]) - np.log(to)))
        if self.kind == 'gaussian_rw':
            cov = self.covariance(to.shape[0])
            return float(scipy.stats.multivariate_normal.logpdf(to - frm, mean=np.zeros(to.shape[0]), cov=cov))
        if self.kind == 'gamma':
            return float(np.sum(scipy.stats.gamma.logpdf(to, a=self.args[0], scale=1.0 / self.args[1])))
        raise ValueError('%s proposal densities are evaluated by the sampler' % self.kind)

    def __eq__(self, other):
        return isinstance(other, ProposalKernel) and self.kind == other.kind and self.args == other.args

    def __ne__(self, other):
        return not self.__eq__(other)

    def __str__(self):
        return _format_args(self.kind, self.args)

    def __repr__(self):
        return 'ProposalKernel(%r, %r)' % (self.kind, self.args)
