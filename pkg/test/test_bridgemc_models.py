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


def test_arctan_model():
    from bridgemc.models.arctan import arctan_model
    model, builder = arctan_model(-2.0, 0.0, 0.75)
    theta = np.array([-2.0, 0.0, 0.75])
    assert model.d == 1 and model.d_noise == 1
    aux = builder(1.0, np.zeros(1), np.zeros(1))
    assert np.isclose(aux.B[0, 0], -2.0)
    assert np.isclose(aux.beta(0.0)[0], 0.0)
    assert np.allclose(aux.a, [[0.5625]])
    assert model.drift(0.0, np.zeros(1), theta)[0] == 0.0
    assert np.allclose(model.diffusion(0.0, np.array([3.0]), theta), [[0.5625]])


def test_arctan_tangency():
    from bridgemc.models.arctan import ArctanModel
    model = ArctanModel()
    for alpha, beta in [(-2.0, 0.5), (-1.0, -0.3)]:
        theta = np.array([alpha, beta, 1.0])
        aux = model.auxiliary(theta, 1.0, np.zeros(1), np.zeros(1))
        x_star = np.tan(-beta / alpha)
        gaps = []
        for step in [1e-3, 2e-3]:
            x = np.array([x_star + step])
            gaps.append(abs(model.drift(0.0, x, theta)[0] - aux.drift(0.0, x)[0]))
        assert gaps[0] < 1e-5
        # quadratic remainder
        assert 3.0 < gaps[1] / gaps[0] < 5.0


def test_arctan_zero_alpha():
    from bridgemc.models.arctan import ArctanModel
    aux = ArctanModel().auxiliary(np.array([0.0, 0.4, 1.0]), 1.0, np.zeros(1), np.zeros(1))
    assert aux.B[0, 0] == 0.0
    assert np.isclose(aux.beta(0.0)[0], 0.4)


def test_drift_basis():
    from bridgemc.models.arctan import ArctanModel
    from bridgemc.models.cle import CLEModel, example2_network
    from bridgemc.models.linear import LinearModel
    rng = np.random.default_rng(3)
    linear = LinearModel(2)
    cases = [(ArctanModel(), np.array([-1.5, 0.3, 0.8])),
             (linear, linear.pack(rng.standard_normal((2, 2)), rng.standard_normal(2), np.eye(2))),
             (CLEModel(example2_network()), np.array([0.5, 1.0, 0.1, 0.02]))]
    for model, theta in cases:
        x = np.abs(rng.standard_normal(model.d)) * 3.0
        phi = model.drift_basis(0.0, x, theta)
        assert phi.shape == (model.d, len(model.drift_indices))
        assert np.allclose(phi.dot(theta[list(model.drift_indices)]), model.drift(0.0, x, theta))


def test_drift_basis_unsupported():
    from bridgemc.core import UnsupportedModel
    from bridgemc.models.lotka_volterra import LotkaVolterraModel
    try:
        LotkaVolterraModel().drift_basis(0.0, np.zeros(2), np.array([1.0, 0.1]))
        assert False, 'should have raised'
    except UnsupportedModel:
        pass


def test_check_theta():
    from bridgemc.models.arctan import ArctanModel
    try:
        ArctanModel().check_theta([1.0, 2.0])
        assert False, 'should have raised'
    except ValueError as e:
        assert 'alpha, beta, sigma' in str(e)


def test_cle_example2():
    from bridgemc.models.cle import cle_model, example2_network
    model = cle_model(example2_network())
    assert model.d == 3 and model.d_noise == 4
    x = np.array([1.0, 1.0, 2.0])
    assert np.allclose(model.drift(0.0, x, np.ones(4)), [-1.0, 0.0, -1.0])
    assert np.all(model.drift(0.0, x, np.zeros(4)) == 0.0)
    assert np.all(model.dispersion(0.0, x, np.zeros(4)) == 0.0)
    rng = np.random.default_rng(5)
    theta = np.array([0.7, 0.2, 0.05, 0.01])
    for _ in range(10):
        x = rng.integers(2, 30, size=3).astype(float)
        a = model.diffusion(0.0, x, theta)
        assert np.allclose(a, a.T)
        assert np.min(np.linalg.eigvalsh(a)) > -1e-10


def test_prokaryotic_network():
    from bridgemc.models.cle import prokaryotic_network
    net = prokaryotic_network(10)
    assert net.S.shape == (4, 8)
    assert net.S[1, 4] == -2
    assert net.S[3, 0] == -1
    assert np.array_equal(net.h(np.array([1.0, 2.0, 3.0, 4.0])), [12, 6, 4, 1, 1, 3, 1, 2])
    # only the binding and unbinding of DNA change it
    assert net.S[3, 0] == -1 and net.S[3, 1] == 1
    assert np.all(net.S[3, 2:] == 0)
    assert net.conservation == {'K_DNA': 10}
    try:
        prokaryotic_network(0)
        assert False, 'should have raised'
    except ValueError:
        pass


def test_cle_clamped():
    from bridgemc.models.cle import CLEModel, prokaryotic_network
    model = CLEModel(prokaryotic_network(10))
    theta = np.array([0.1, 0.7, 0.35, 0.2, 0.1, 0.9, 0.3, 0.1])
    assert not model.clamped(np.array([8.0, 8.0, 8.0, 5.0]), theta)
    x = np.array([8.0, 8.0, 8.0, 11.0])
    assert model.clamped(x, theta)
    assert np.all(np.isfinite(model.dispersion(0.0, x, theta)))


def test_ReactionNetwork_invalid():
    from bridgemc.models.cle import ReactionNetwork
    try:
        ReactionNetwork([[0.5, 1.0]], lambda x: [1.0, 1.0])
        assert False, 'should have raised'
    except ValueError:
        pass


def _product_network(regressors):
    from bridgemc.models.cle import ReactionNetwork
    return ReactionNetwork([[1, 0], [0, 1]], lambda x: [x[0] * x[1], x[0]],
                           affine={1: (0.0, np.array([1.0, 0.0]))}, regressors={0: regressors})


def test_linearize_hazards():
    from bridgemc.models.cle import linearize_hazards
    net = _product_network([0])
    pts = [[1.0, 5.0], [2.0, 5.0], [4.0, 5.0], [7.0, 5.0]]
    lin = linearize_hazards(net, pts)
    # affine hazards pass through unchanged
    assert lin.c[1] == 0.0
    assert np.array_equal(lin.U[1], [1.0, 0.0])
    # with x2 constant the product is exactly 5 x1
    assert abs(lin.c[0]) < 1e-10
    assert np.allclose(lin.U[0], [5.0, 0.0], rtol=0, atol=1e-10)
    assert np.allclose(lin.hazards(np.array([3.0, 5.0])), net.h(np.array([3.0, 5.0])))


def test_linearize_hazards_rank_deficient():
    from bridgemc.core import RankDeficientDesign
    from bridgemc.models.cle import linearize_hazards
    net = _product_network([0, 1])
    try:
        linearize_hazards(net, [[1.0, 5.0], [2.0, 5.0], [4.0, 5.0]])
        assert False, 'should have raised'
    except RankDeficientDesign as e:
        assert e.hazard == 0


def test_linearize_hazards_drift_matrices():
    from bridgemc.models.cle import CLEModel, prokaryotic_network
    model = CLEModel(prokaryotic_network(10))
    rng = np.random.default_rng(8)
    pts = np.column_stack([rng.integers(5, 30, 40), rng.integers(5, 30, 40),
                           rng.integers(5, 30, 40), rng.integers(1, 10, 40)]).astype(float)
    lin = model.fit_linearization(pts)
    theta = np.array([0.1, 0.7, 0.35, 0.2, 0.1, 0.9, 0.3, 0.1])
    B, beta = lin.drift_matrices(model.net.S, theta)
    x = pts[3]
    assert np.allclose(B.dot(x) + beta, model.net.S.dot(theta * lin.hazards(x)))
    aux = model.auxiliary(theta, 1.0, pts[0], pts[1])
    assert aux.d == 4
    assert np.allclose(aux.B, B)


def test_cle_auxiliary_needs_linearization():
    from bridgemc.models.cle import CLEModel, example2_network
    try:
        CLEModel(example2_network()).auxiliary(np.ones(4), 1.0, np.ones(3), np.ones(3))
        assert False, 'should have raised'
    except ValueError:
        pass


def test_ssa_simulate_constant():
    from bridgemc.models.cle import example2_network, ssa_simulate
    result = ssa_simulate(example2_network(), np.zeros(4), [3, 2, 1], 5.0, np.random.default_rng(0),
                          snapshot_times=[0.0, 1.0, 5.0])
    assert len(result.times) == 1
    assert np.all(result.snapshots == [3, 2, 1])


def test_ssa_simulate_poisson():
    from bridgemc.models.cle import ReactionNetwork, ssa_simulate
    net = ReactionNetwork([[1]], lambda x: [1.0])
    rng = np.random.default_rng(11)
    counts = np.array([ssa_simulate(net, [1.0], [0], 1.0, rng).states[-1, 0] for _ in range(1000)])
    se = np.sqrt(1.0 / 1000)
    assert abs(counts.mean() - 1.0) < 4 * se
    assert abs(counts.var(ddof=1) - 1.0) < 0.2


def test_ssa_simulate_prokaryotic():
    from bridgemc.models.cle import prokaryotic_network, ssa_simulate
    net = prokaryotic_network(10)
    theta = [0.1, 0.7, 0.35, 0.2, 0.1, 0.9, 0.3, 0.1]
    result = ssa_simulate(net, theta, [8, 8, 8, 5], 49.0, np.random.default_rng(12),
                          snapshot_times=np.arange(50.0))
    snaps = result.snapshots
    assert snaps.shape == (50, 4)
    assert snaps.dtype.kind == 'i'
    assert np.all(snaps >= 0)
    assert np.all(snaps[:, 3] <= 10)
    assert np.array_equal(snaps[0], [8, 8, 8, 5])
    assert np.all(np.diff(result.times) > 0.0)


def test_noise_free_solution():
    from bridgemc.models.lotka_volterra import conserved_quantity, noise_free_solution
    theta = 1.0
    path = noise_free_solution(theta, [0.3, 0.3], 10.0)
    q0 = conserved_quantity(0.3, 0.3, theta)
    for t in np.linspace(0.0, 10.0, 57):
        x, y = path(t)
        assert abs(conserved_quantity(x, y, theta) - q0) <= 1e-6 * q0
    try:
        noise_free_solution(theta, [0.0, 1.0], 1.0)
        assert False, 'should have raised'
    except ValueError:
        pass


def test_lotka_volterra_equilibrium():
    from bridgemc.models.lotka_volterra import lotka_volterra_model
    model, builder = lotka_volterra_model(1.5, 0.1)
    start = np.log([1.5, 1.5])
    aux = builder(2.0, start, start)
    for t in [0.0, 0.7, 2.0]:
        assert np.allclose(aux.beta(t), 0.0, rtol=0, atol=1e-9)
    assert np.allclose(model.drift(0.0, start, np.array([1.5, 0.1])), 0.0, rtol=0, atol=1e-12)


def test_lotka_volterra_guided_endpoints():
    from bridgemc.guided import GuidedBridge, solve_g
    from bridgemc.linproc import precompute_bridge_grid
    from bridgemc.models.lotka_volterra import LotkaVolterraModel
    from bridgemc.sde_core import sample_wiener
    model = LotkaVolterraModel()
    theta = np.array([1.0, 0.15])
    u, v, T = np.log([0.3, 0.3]), np.log([2.14, 1.75]), 3.65
    ctx = precompute_bridge_grid(model.auxiliary(theta, T, u, v), u, v, T, 60)
    bridge = GuidedBridge(model, theta, ctx)
    rng = np.random.default_rng(13)
    for _ in range(3):
        path = solve_g(bridge, sample_wiener(ctx.s_grid, 2, rng)).path
        assert np.array_equal(path.states[-1], v)
        assert np.all(np.isfinite(path.states))


def test_toy_model():
    from bridgemc.guided import GuidedBridge, innovation_map
    from bridgemc.linproc import precompute_bridge_grid
    from bridgemc.models.toy import toy_scaled_bm
    from bridgemc.sde_core import sample_wiener
    model, posterior = toy_scaled_bm()
    assert np.isclose(posterior(0.0).mean(), 1.5)
    means = [posterior(x).mean() for x in [0.0, 0.5, 1.0, 2.0]]
    assert np.all(np.diff(means) < 0.0)
    theta = np.array([2.0])
    u, v = np.zeros(1), np.array([0.8])
    bridge = GuidedBridge(model, theta, precompute_bridge_grid(model.auxiliary(theta, 1.0, u, v), u, v, 1.0, 20))
    _, log_psi = innovation_map(bridge, sample_wiener(bridge.ctx.s_grid, 1, np.random.default_rng(1)))
    assert log_psi == 0.0


def test_ModelContext():
    from bridgemc import create_default_model_context
    from bridgemc.core import BridgeInternalError
    context = create_default_model_context()
    keys = context.get_model_keys()
    for key in ['arctan', 'cle_example2', 'linear', 'lotka_volterra', 'prokaryotic', 'toy']:
        assert key in keys, keys
    model = context.get_model('prokaryotic', {'K_DNA': 5})
    assert model.net.conservation == {'K_DNA': 5}
    assert context.get_model('linear', {'d': 2}).d == 2
    try:
        context.get_model('not-a-model')
        assert False, 'should have raised'
    except KeyError:
        pass
    try:
        context.get_model('toy', {'bogus': 1})
        assert False, 'should have raised'
    except BridgeInternalError as e:
        assert 'toy' in e.message
    try:
        context.set_model('broken', 'not callable')
        assert False, 'should have raised'
    except TypeError:
        pass


def test_ModelContext_verbose(capsys):
    from bridgemc.models import ModelContext
    from bridgemc.models.toy import register_models
    context = ModelContext()
    context.set_verbose(True)
    register_models(context)
    assert 'registering model [toy]' in capsys.readouterr().out


def test_batched_evaluation_matches_pointwise():
    from bridgemc.models.arctan import ArctanModel
    from bridgemc.models.cle import CLEModel, example2_network, prokaryotic_network
    from bridgemc.models.linear import LinearModel
    from bridgemc.models.lotka_volterra import LotkaVolterraModel
    from bridgemc.models.toy import ScaledBrownianModel
    rng = np.random.default_rng(30)
    linear = LinearModel(2)
    cases = [
        (ArctanModel(), np.array([-2.0, 0.3, 0.75]), rng.standard_normal((6, 1))),
        (linear, linear.pack([[-1.0, 0.3], [0.2, -0.5]], [0.4, -0.1], [[1.0, 0.0], [0.3, 0.7]]),
         rng.standard_normal((6, 2))),
        (ScaledBrownianModel(), np.array([2.0]), rng.standard_normal((6, 1))),
        (LotkaVolterraModel(), np.array([1.0, 0.15]), rng.standard_normal((6, 2))),
        (CLEModel(prokaryotic_network()), np.array([0.1, 0.7, 0.35, 0.2, 0.1, 0.9, 0.3, 0.1]),
         rng.uniform(0.0, 10.0, (6, 4))),
        (CLEModel(example2_network()), np.array([1.0, 0.5, 0.1, 0.2]), rng.uniform(-1.0, 5.0, (6, 3))),
    ]
    for model, theta, X in cases:
        t = np.linspace(0.0, 1.0, X.shape[0])
        drift = model.drift_many(t, X, theta)
        dispersion = model.dispersion_many(t, X, theta)
        diffusion = model.diffusion_many(t, X, theta)
        for k in range(X.shape[0]):
            assert np.allclose(drift[k], model.drift(t[k], X[k], theta), rtol=1e-14, atol=1e-14), model.name
            assert np.allclose(dispersion[k], model.dispersion(t[k], X[k], theta), rtol=1e-14, atol=1e-14)
            assert np.allclose(diffusion[k], model.diffusion(t[k], X[k], theta), rtol=1e-14, atol=1e-14)
        if model.drift_indices is not None:
            basis = model.drift_basis_many(t, X, theta)
            for k in range(X.shape[0]):
                assert np.allclose(basis[k], model.drift_basis(t[k], X[k], theta), rtol=1e-14, atol=1e-14)


def test_h_many_constant_hazards():
    from bridgemc.models.cle import example2_network
    net = example2_network()
    X = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    H = net.h_many(X)
    assert H.shape == (2, 4)
    assert np.array_equal(H[:, 0], [1.0, 1.0])
    assert np.allclose(H, [net.h(x) for x in X])
