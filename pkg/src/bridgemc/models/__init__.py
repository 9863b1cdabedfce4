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
Catalogue of diffusion models.  Each model module exposes
``register_models(context)``, which adds its factories to a
:class:`ModelContext`.
"""

from __future__ import print_function

from ..core import BridgeInternalError


class ModelContext(object):
    """
    :class:`ModelContext` maps model keys (as used in run
    configurations) to factories that build
    :class:`bridgemc.sde_core.DiffusionModel` instances.
    """

    def __init__(self):
        self.models = {}
        self.verbose = False

    def set_verbose(self, verbose):
        self.verbose = verbose

    def set_model(self, key, factory):
        """
        :param key: model key, ``str``
        :param factory: callable taking model options as keyword
          arguments
        :raises: :exc:`TypeError` if *factory* is not callable
        """
        if not callable(factory):
            raise TypeError('factory for [%s] must be callable' % key)
        if self.verbose:
            print('registering model [%s]' % key)
        self.models[key] = factory

    def get_model(self, key, options=None):
        """
        :param options: dict of keyword arguments for the factory
        :raises: :exc:`KeyError` if *key* is not registered
        :raises: :exc:`BridgeInternalError` if the factory rejects *options*
        """
        factory = self.models[key]
        try:
            return factory(**(options or {}))
        except TypeError as e:
            raise BridgeInternalError(e, 'model factory for [%s] rejected options %r: %s' % (key, options, e))

    def get_model_keys(self):
        return sorted(self.models.keys())
