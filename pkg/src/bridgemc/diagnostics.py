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
Chain summaries: integrated autocorrelation times, effective sample
sizes and Monte Carlo standard errors of a parameter trace.
"""

from collections import namedtuple

import numpy as np

MIN_TRACE_LENGTH = 100

ACTEstimate = namedtuple('ACTEstimate', ['act', 'constant'])


def autocorrelation(x):
    """
    Empirical autocorrelation of *x* at all lags, computed through the FFT.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(centered, size)
    acov = np.fft.irfft(f * np.conjugate(f), size)[:n] / n
    return acov / acov[0]


def act_estimate(trace):
    """
    Integrated autocorrelation time 1 + 2 sum_k rho_k, truncated with
    Geyer's initial positive (and monotone) sequence.

    :returns: :class:`ACTEstimate`; a constant trace gives ``act=1`` with
      ``constant`` set
    :raises: :exc:`ValueError` if the trace is shorter than 100 points
    """
    x = np.asarray(trace, dtype=float)
    if x.ndim != 1:
        raise ValueError('trace must be one column, got shape %r' % (x.shape,))
    if x.shape[0] < MIN_TRACE_LENGTH:
        raise ValueError('trace has %d points, at least %d are needed' % (x.shape[0], MIN_TRACE_LENGTH))
    if np.all(x == x[0]):
        return ACTEstimate(1.0, True)
    rho = autocorrelation(x)
    n_pairs = rho.shape[0] // 2
    pairs = rho[:2 * n_pairs:2] + rho[1:2 * n_pairs:2]
    total = 0.0
    last = np.inf
    for k in range(n_pairs):
        if pairs[k] <= 0.0:
            break
        last = min(last, pairs[k])
        total += last
    return ACTEstimate(max(2.0 * total - 1.0, 1.0 / x.shape[0]), False)


def summarize(trace, names, burn_in=0, thin=1):
    """
    Per-parameter mean, standard deviation, ACT, effective sample size
    and Monte Carlo standard error after discarding *burn_in* iterations
    and keeping every *thin*-th.

    ACT based entries are ``None`` when fewer than 100 draws remain.

    :returns: dict keyed by parameter name
    """
    if burn_in < 0 or thin < 1:
        raise ValueError('burn_in must be >= 0 and thin >= 1')
    trace = np.asarray(trace, dtype=float).reshape(-1, len(names))[burn_in::thin]
    n = trace.shape[0]
    summary = {}
    for k, name in enumerate(names):
        column = trace[:, k]
        entry = {
            'n': n,
            'mean': float(column.mean()) if n else None,
            'sd': float(column.std(ddof=1)) if n > 1 else None,
            'act': None,
            'ess': None,
            'mcse': None,
            'constant': bool(n and np.all(column == column[0])),
        }
        if n >= MIN_TRACE_LENGTH:
            est = act_estimate(column)
            entry['act'] = est.act
            entry['ess'] = n / est.act
            entry['mcse'] = entry['sd'] * np.sqrt(est.act / n)
        summary[name] = entry
    return summary
