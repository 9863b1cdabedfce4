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


def test_autocorrelation():
    from bridgemc.diagnostics import autocorrelation
    x = np.array([1.0, -1.0] * 50)
    rho = autocorrelation(x)
    assert rho[0] == 1.0
    assert np.isclose(rho[1], -0.99)
    assert np.isclose(rho[2], 0.98)


def test_act_estimate_iid():
    from bridgemc.diagnostics import act_estimate
    x = np.random.default_rng(0).standard_normal(10000)
    est = act_estimate(x)
    assert 0.8 <= est.act <= 1.3
    assert not est.constant


def test_act_estimate_ar1():
    import scipy.signal
    from bridgemc.diagnostics import act_estimate
    eps = np.random.default_rng(1).standard_normal(200000)
    x = scipy.signal.lfilter([1.0], [1.0, -0.9], eps)
    # (1 + phi) / (1 - phi)
    assert abs(act_estimate(x).act - 19.0) < 0.2 * 19.0


def test_act_estimate_constant():
    from bridgemc.diagnostics import act_estimate
    assert act_estimate(np.full(150, 2.5)) == (1.0, True)


def test_act_estimate_invalid():
    from bridgemc.diagnostics import act_estimate
    for trace in [np.zeros(99), np.zeros((200, 2))]:
        try:
            act_estimate(trace)
            assert False, 'should have raised'
        except ValueError:
            pass


def test_summarize():
    from bridgemc.diagnostics import summarize
    rng = np.random.default_rng(2)
    trace = np.column_stack([rng.standard_normal(1000) + 3.0, np.full(1000, 0.5)])
    summary = summarize(trace, ['a', 'b'], burn_in=200, thin=2)
    a = summary['a']
    assert a['n'] == 400
    assert abs(a['mean'] - 3.0) < 0.2
    assert np.isclose(a['ess'], 400 / a['act'])
    assert np.isclose(a['mcse'], a['sd'] * np.sqrt(a['act'] / 400))
    assert not a['constant']
    b = summary['b']
    assert b['constant']
    assert b['act'] == 1.0
    assert b['sd'] == 0.0


def test_summarize_short():
    from bridgemc.diagnostics import summarize
    summary = summarize(np.arange(10.0).reshape(5, 2), ['a', 'b'])
    assert summary['a']['n'] == 5
    assert summary['a']['mean'] == 4.0
    assert summary['a']['act'] is None and summary['a']['ess'] is None and summary['a']['mcse'] is None
    empty = summarize(np.zeros((0, 1)), ['a'])
    assert empty['a']['n'] == 0 and empty['a']['mean'] is None
    try:
        summarize(np.zeros((5, 1)), ['a'], thin=0)
        assert False, 'should have raised'
    except ValueError:
        pass
