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
Result files: observations and trace CSVs, JSON summaries.

Floats are written with ``repr`` so that reading a file back gives the
exact values.
"""

import csv
import io
import json
import os
import tempfile

import numpy as np

from .core import InvalidData
from .sde_core import Observations


def write_atomic(filepath, data, binary=False):
    # write data to new file
    directory = os.path.dirname(filepath) or '.'
    fd, filepath_tmp = tempfile.mkstemp(prefix=os.path.basename(filepath) + '.tmp.', dir=directory)

    with os.fdopen(fd, 'wb' if binary else 'w') as f:
        f.write(data)

    try:
        # switch file atomically (if supported)
        os.rename(filepath_tmp, filepath)
    except OSError:
        # fall back to non-atomic operation
        try:
            os.unlink(filepath)
        except OSError:
            pass
        try:
            os.rename(filepath_tmp, filepath)
        except OSError:
            os.unlink(filepath_tmp)
            raise


def _format(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def format_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(v) for v in row])
    return buf.getvalue()


def write_csv(filepath, header, rows):
    write_atomic(filepath, format_csv(header, rows))


def write_json(filepath, data):
    write_atomic(filepath, json.dumps(data, indent=2, sort_keys=True, default=_json_default) + '\n')


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError('cannot serialize %r' % (value,))


def state_columns(d):
    return ['x%d' % (k + 1) for k in range(d)]


def write_observations(filepath, obs):
    """
    Write *obs* as ``t,x1,...,xd``.
    """
    write_csv(filepath, ['t'] + state_columns(obs.dim),
              ([t] + list(x) for t, x in zip(obs.times, obs.values)))


def _read_table(filepath):
    try:
        with open(filepath) as f:
            rows = [r for r in csv.reader(f) if r]
    except IOError as e:
        raise InvalidData('I/O error reading %s' % e, origin=filepath)
    if not rows:
        raise InvalidData('file is empty', origin=filepath)
    header = rows[0]
    if any(len(r) != len(header) for r in rows[1:]):
        raise InvalidData('rows do not match the header %s' % ','.join(header), origin=filepath)
    try:
        values = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
    except ValueError as e:
        raise InvalidData('invalid number: %s' % e, origin=filepath)
    return header, values.reshape(-1, len(header))


def read_observations_csv(filepath):
    """
    :returns: :class:`bridgemc.sde_core.Observations`
    :raises: :exc:`InvalidData`
    """
    header, values = _read_table(filepath)
    if len(header) < 2 or header[0] != 't':
        raise InvalidData('header must be t,x1,...,xd, got %s' % ','.join(header), origin=filepath)
    if values.shape[0] < 2:
        raise InvalidData('at least two observations are needed', origin=filepath)
    try:
        return Observations(values[:, 0], values[:, 1:])
    except ValueError as e:
        raise InvalidData(str(e), origin=filepath)


def write_trace(filepath, names, trace):
    write_csv(filepath, ['iter'] + list(names), ([i] + list(row) for i, row in enumerate(trace)))


def read_trace_csv(filepath):
    """
    :returns: ``(names, trace)``
    :raises: :exc:`InvalidData`
    """
    header, values = _read_table(filepath)
    if len(header) < 2 or header[0] != 'iter':
        raise InvalidData('header must be iter,<parameters>, got %s' % ','.join(header), origin=filepath)
    return header[1:], values[:, 1:]
