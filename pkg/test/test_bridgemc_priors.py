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

import numpy as np


def test_PriorSpec_parse():
    from bridgemc.priors import PriorSpec
    spec = PriorSpec.parse('gaussian 0 5')
    assert spec.kind == 'gaussian'
    assert spec.args == (0.0, 5.0)
    assert spec == PriorSpec('gaussian', [0, 5])
    assert spec != PriorSpec('gaussian', [0, 4])
    assert PriorSpec.parse(str(spec)) == spec
    assert PriorSpec.parse('flat_log') == PriorSpec('flat_log')
    for text in ['', 'cauchy 0 1', 'gaussian 0', 'gaussian 0 -1', 'gaussian a b',
                 'uniform_log 2 1', 'exponential 0', 'flat 1']:
        try:
            PriorSpec.parse(text)
            assert False, 'should have raised: %s' % text
        except ValueError:
            pass


def test_PriorSpec_precision():
    from bridgemc.priors import PriorSpec
    assert PriorSpec('gaussian', [1.0, 4.0]).precision == 0.25
    assert PriorSpec('gaussian', [1.0, 4.0]).mean == 1.0
    assert PriorSpec('flat').precision == 0.0
    assert PriorSpec('flat').mean == 0.0
    assert PriorSpec('flat_log').precision is None
    assert PriorSpec('exponential', [1.0]).precision is None


def test_PriorSpec_log_density():
    import scipy.stats
    from bridgemc.priors import PriorSpec
    spec = PriorSpec('gaussian', [1.0, 4.0])
    assert np.isclose(spec.log_density(0.3), scipy.stats.norm.logpdf(0.3, 1.0, 2.0))
    spec = PriorSpec('exponential', [2.0])
    assert np.isclose(spec.log_density(0.5), np.log(2.0) - 1.0)
    assert spec.log_density(-0.5) == -np.inf
    spec = PriorSpec('uniform_log', [-1.0, 1.0])
    assert np.isclose(spec.log_density(2.0), -np.log(2.0) - np.log(2.0))
    assert spec.log_density(10.0) == -np.inf
    assert not spec.in_support(0.0)
    spec = PriorSpec('flat_log')
    assert np.isclose(spec.log_density(np.e), -1.0)
    assert not spec.in_support(-1.0)
    assert PriorSpec('flat').log_density(-1e6) == 0.0
    assert not PriorSpec('flat').in_support(np.nan)


def test_Prior():
    from bridgemc.priors import Prior, PriorSpec
    prior = Prior([PriorSpec('gaussian', [0, 1]), PriorSpec('exponential', [1.0]), PriorSpec('flat')])
    theta = np.array([0.5, 2.0, -3.0])
    expected = prior.specs[0].log_density(0.5) + prior.specs[1].log_density(2.0)
    assert np.isclose(prior.log_density(theta), expected)
    assert np.isclose(prior.log_density(theta, indices=[1]), -2.0)
    assert prior.in_support(theta)
    assert not prior.in_support(np.array([0.5, -2.0, 0.0]))
    assert prior.in_support(np.array([0.5, -2.0, 0.0]), indices=[0, 2])
    assert prior.precisions([0, 2]) == [1.0, 0.0]
    assert np.array_equal(prior.means([0, 2]), [0.0, 0.0])


def test_ProposalKernel_parse():
    from bridgemc.priors import ProposalKernel
    kernel = ProposalKernel.parse('log_gaussian 0.12')
    assert kernel == ProposalKernel('log_gaussian', [0.12])
    assert ProposalKernel.parse(str(kernel)) == kernel
    assert ProposalKernel.parse('preconditioned 0.5').alpha == 0.5
    for text in ['', 'bogus 1', 'log_gaussian', 'log_gaussian 1 2', 'gamma 1', 'log_uniform -0.1']:
        try:
            ProposalKernel.parse(text)
            assert False, 'should have raised: %s' % text
        except ValueError:
            pass
    try:
        kernel.alpha
        assert False, 'should have raised'
    except ValueError:
        pass


def test_ProposalKernel_covariance():
    from bridgemc.priors import ProposalKernel
    assert np.array_equal(ProposalKernel('gaussian_rw', [2.0]).covariance(2), 2.0 * np.eye(2))
    assert np.array_equal(ProposalKernel('gaussian_rw', [1.0, 3.0]).covariance(2), np.diag([1.0, 3.0]))
    full = ProposalKernel('gaussian_rw', [2.0, 0.5, 0.5, 1.0]).covariance(2)
    assert np.array_equal(full, [[2.0, 0.5], [0.5, 1.0]])
    try:
        ProposalKernel('gaussian_rw', [1.0, 2.0, 3.0]).covariance(2)
        assert False, 'should have raised'
    except ValueError:
        pass


def test_ProposalKernel_propose():
    from bridgemc.priors import ProposalKernel
    rng = np.random.default_rng(4)
    theta = np.array([0.5, 2.0])
    step = ProposalKernel('log_uniform', [0.1]).propose(theta, rng)
    assert np.all(np.abs(np.log(step / theta)) <= 0.1)
    assert np.all(ProposalKernel('log_gaussian', [0.3]).propose(theta, rng) > 0.0)
    assert ProposalKernel('gaussian_rw', [1.0]).propose(theta, rng).shape == (2,)
    draws = np.array([ProposalKernel('gamma', [1.5, 2.0]).propose(theta[:1], rng)[0] for _ in range(4000)])
    assert abs(draws.mean() - 0.75) < 0.05
    try:
        ProposalKernel('preconditioned', [1.0]).propose(theta, rng)
        assert False, 'should have raised'
    except ValueError:
        pass


def test_ProposalKernel_log_density():
    import scipy.stats
    from bridgemc.priors import ProposalKernel
    kernel = ProposalKernel('log_uniform', [0.1])
    assert np.isclose(kernel.log_density([1.05], [1.0]), -np.log(0.2) - np.log(1.05))
    assert kernel.log_density([1.5], [1.0]) == -np.inf
    assert kernel.log_density([-1.0], [1.0]) == -np.inf
    kernel = ProposalKernel('log_gaussian', [0.2])
    expected = scipy.stats.lognorm.logpdf(1.3, s=0.2, scale=1.1)
    assert np.isclose(kernel.log_density([1.3], [1.1]), expected)
    kernel = ProposalKernel('gaussian_rw', [2.0, 0.5, 0.5, 1.0])
    expected = scipy.stats.multivariate_normal.logpdf([0.3, -0.2], mean=[0.0, 0.0], cov=[[2.0, 0.5], [0.5, 1.0]])
    assert np.isclose(kernel.log_density([1.3, 0.8], [1.0, 1.0]), expected)
    kernel = ProposalKernel('gamma', [1.5, 2.0])
    assert np.isclose(kernel.log_density([0.4], [9.0]), scipy.stats.gamma.logpdf(0.4, a=1.5, scale=0.5))
