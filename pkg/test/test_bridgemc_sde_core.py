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


def _ou_model():
    from bridgemc.models.linear import LinearModel
    model = LinearModel(1)
    return model, model.pack([[-1.0]], [0.0], [[1.0]])


def test_TimeGrid():
    from bridgemc.sde_core import TimeGrid
    grid = TimeGrid([0.0, 0.5, 1.0])
    assert grid.count == 3
    assert len(grid) == 3
    assert grid.start == 0.0 and grid.end == 1.0
    assert np.allclose(grid.steps, [0.5, 0.5])
    assert grid == TimeGrid.uniform(0.0, 1.0, 3)
    assert grid != TimeGrid([0.0, 1.0])
    try:
        grid.points[0] = 1.0
        assert False, 'grid points should be read-only'
    except ValueError:
        pass


def test_TimeGrid_invalid():
    from bridgemc.core import InvalidGrid
    from bridgemc.sde_core import TimeGrid
    for points in [[0.0], [0.0, 0.0], [0.0, 1.0, 0.5], [0.0, np.inf]]:
        try:
            TimeGrid(points)
            assert False, 'should have raised for %s' % points
        except InvalidGrid:
            pass
    try:
        TimeGrid.uniform(0.0, 1.0, 1)
        assert False, 'should have raised'
    except InvalidGrid:
        pass


def test_WienerIncrements_shape():
    from bridgemc.sde_core import TimeGrid, WienerIncrements
    grid = TimeGrid([0.0, 0.5, 1.0])
    W = WienerIncrements(grid, np.zeros((2, 3)))
    assert W.dim == 3
    try:
        WienerIncrements(grid, np.zeros((3, 1)))
        assert False, 'should have raised'
    except ValueError:
        pass


def test_sample_wiener_determinism():
    from bridgemc.sde_core import TimeGrid, sample_wiener
    grid = TimeGrid([0.0, 1.0])
    a = sample_wiener(grid, 1, np.random.default_rng(7))
    b = sample_wiener(grid, 1, np.random.default_rng(7))
    assert a.increments.shape == (1, 1)
    assert a == b
    assert a.increments[0, 0] == b.increments[0, 0]


def test_sample_wiener_shape():
    from bridgemc.sde_core import TimeGrid, sample_wiener
    W = sample_wiener(TimeGrid([0.0, 0.5, 1.0]), 2, np.random.default_rng(1))
    assert W.increments.shape == (2, 2)
    assert W.dim == 2


def test_sample_wiener_variance():
    from bridgemc.sde_core import TimeGrid, sample_wiener
    n = 100000
    W = sample_wiener(TimeGrid([0.0, 0.25]), n, np.random.default_rng(3))
    draws = W.increments[0]
    se = 0.25 * np.sqrt(2.0 / (n - 1))
    assert abs(np.var(draws, ddof=1) - 0.25) < 3 * se
    assert abs(np.mean(draws)) < 3 * np.sqrt(0.25 / n)


def test_euler_maruyama_constant():
    from bridgemc.models.linear import LinearModel
    from bridgemc.sde_core import TimeGrid, WienerIncrements, euler_maruyama
    model = LinearModel(2)
    theta = model.pack(np.zeros((2, 2)), np.zeros(2), np.zeros((2, 2)))
    grid = TimeGrid.uniform(0.0, 1.0, 5)
    W = WienerIncrements(grid, np.ones((4, 2)))
    path = euler_maruyama(model, theta, [1.0, -2.0], grid, W)
    assert np.all(path.states == np.array([1.0, -2.0]))


def test_euler_maruyama_one_step():
    from bridgemc.models.linear import LinearModel
    from bridgemc.sde_core import TimeGrid, WienerIncrements, euler_maruyama
    model = LinearModel(1)
    theta = model.pack([[-1.0]], [0.0], [[0.0]])
    grid = TimeGrid([0.0, 0.1])
    path = euler_maruyama(model, theta, [1.0], grid, WienerIncrements(grid, [[0.3]]))
    assert np.isclose(path.states[1, 0], 0.9, rtol=0, atol=1e-15)
    assert path.states[0, 0] == 1.0


def test_euler_maruyama_forward_euler():
    # noise free Euler is the forward Euler ODE solution
    from bridgemc.models.linear import LinearModel
    from bridgemc.sde_core import TimeGrid, WienerIncrements, euler_maruyama
    model = LinearModel(1)
    theta = model.pack([[-0.5]], [1.0], [[0.0]])
    grid = TimeGrid.uniform(0.0, 2.0, 21)
    path = euler_maruyama(model, theta, [0.0], grid, WienerIncrements(grid, np.zeros((20, 1))))
    x = 0.0
    for j in range(20):
        x = x + (-0.5 * x + 1.0) * 0.1
        assert np.isclose(path.states[j + 1, 0], x, rtol=1e-14, atol=1e-14)


def test_euler_maruyama_ou_moments():
    from bridgemc.sde_core import TimeGrid, euler_maruyama, sample_wiener
    model, theta = _ou_model()
    grid = TimeGrid.uniform(0.0, 1.0, 101)
    rng = np.random.default_rng(11)
    n = 2000
    ends = np.array([euler_maruyama(model, theta, [1.0], grid, sample_wiener(grid, 1, rng)).states[-1, 0]
                     for _ in range(n)])
    var = (1.0 - np.exp(-2.0)) / 2.0
    assert abs(ends.mean() - np.exp(-1.0)) < 3 * np.sqrt(var / n)
    assert abs(ends.var(ddof=1) - var) < 3 * var * np.sqrt(2.0 / (n - 1))


def test_euler_maruyama_determinism():
    from bridgemc.sde_core import TimeGrid, euler_maruyama, sample_wiener
    model, theta = _ou_model()
    grid = TimeGrid.uniform(0.0, 1.0, 51)
    a = euler_maruyama(model, theta, [0.5], grid, sample_wiener(grid, 1, np.random.default_rng(5)))
    b = euler_maruyama(model, theta, [0.5], grid, sample_wiener(grid, 1, np.random.default_rng(5)))
    assert a == b


def test_euler_maruyama_nonfinite():
    from bridgemc.core import NonFiniteState
    from bridgemc.models.linear import LinearModel
    from bridgemc.sde_core import TimeGrid, WienerIncrements, euler_maruyama
    model = LinearModel(1)
    theta = model.pack([[1e308]], [0.0], [[0.0]])
    grid = TimeGrid.uniform(0.0, 1.0, 4)
    try:
        euler_maruyama(model, theta, [10.0], grid, WienerIncrements(grid, np.zeros((3, 1))))
        assert False, 'should have raised'
    except NonFiniteState as e:
        assert e.index == 1


def test_euler_maruyama_mismatch():
    from bridgemc.sde_core import TimeGrid, WienerIncrements, euler_maruyama
    model, theta = _ou_model()
    grid = TimeGrid.uniform(0.0, 1.0, 4)
    other = TimeGrid.uniform(0.0, 2.0, 4)
    try:
        euler_maruyama(model, theta, [0.0], grid, WienerIncrements(other, np.zeros((3, 1))))
        assert False, 'should have raised'
    except ValueError:
        pass


def test_Observations():
    from bridgemc.core import InvalidGrid
    from bridgemc.sde_core import Observations
    obs = Observations([1.0, 2.0, 4.0], [0.5, 0.7, 0.9])
    assert obs.count == 3
    assert obs.dim == 1
    assert obs.u[0] == 0.5
    shifted = obs.shifted()
    assert list(shifted.times) == [0.0, 1.0, 3.0]
    segments = obs.segments()
    assert len(segments) == 2
    T, u, v = segments[1]
    assert T == 2.0 and u[0] == 0.7 and v[0] == 0.9
    try:
        Observations([0.0, 0.0], [1.0, 2.0])
        assert False, 'should have raised'
    except InvalidGrid:
        pass


def test_subsample():
    from bridgemc.core import InvalidGrid
    from bridgemc.sde_core import Observations, Path, TimeGrid, subsample
    grid = TimeGrid([0.0, 0.5, 1.0])
    path = Path(grid, [[1.0], [2.0], [3.0]])
    obs = subsample(path, [0.0, 1.0])
    assert np.array_equal(obs.values, [[1.0], [3.0]])
    assert subsample(path, grid.points) == Observations(grid.points, path.states)

    quarter = Path(TimeGrid.uniform(0.0, 1.0, 5), np.zeros((5, 1)))
    try:
        subsample(quarter, [0.0, 0.3, 0.6])
        assert False, 'should have raised'
    except InvalidGrid as e:
        assert '0.3' in str(e) and '0.6' in str(e)
