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
bridgemc library and command-line tool
"""

from __future__ import print_function

from ._version import __version__  # noqa: F401

from .core import InvalidData, InvalidConfig, NonFiniteState, SingularMatrixError, \
    UnsupportedModel, InfeasibleConstraint, ChainError, BridgeInternalError
from .sde_core import TimeGrid, WienerIncrements, DiffusionModel, Path, Observations, \
    sample_wiener, euler_maruyama, subsample
from .linproc import LinearAuxiliary, BridgeContext, precompute_bridge_grid
from .guided import GuidedBridge, innovation_map, invert_g
from .models import ModelContext
from .priors import PriorSpec, Prior, ProposalKernel
from .mcmc import BridgeSampler, ChainState, ChainOutput, run_chain
from .config import RunConfig, parse_config, emit_config


def create_default_model_context(verbose=False):
    from .models import arctan
    from .models import cle
    from .models import linear
    from .models import lotka_volterra
    from .models import toy

    model_mods = [arctan, cle, linear, lotka_volterra, toy]

    context = ModelContext()
    context.set_verbose(verbose)

    for m in model_mods:
        if verbose:
            print('registering models for %s' % (m.__name__))
        m.register_models(context)

    return context


__all__ = [
    'InvalidData', 'InvalidConfig', 'NonFiniteState', 'SingularMatrixError',
    'UnsupportedModel', 'InfeasibleConstraint', 'ChainError', 'BridgeInternalError',
    'TimeGrid', 'WienerIncrements', 'DiffusionModel', 'Path', 'Observations',
    'sample_wiener', 'euler_maruyama', 'subsample',
    'LinearAuxiliary', 'BridgeContext', 'precompute_bridge_grid',
    'GuidedBridge', 'innovation_map', 'invert_g',
    'ModelContext',
    'PriorSpec', 'Prior', 'ProposalKernel',
    'BridgeSampler', 'ChainState', 'ChainOutput', 'run_chain',
    'RunConfig', 'parse_config', 'emit_config',
    'create_default_model_context',
]
