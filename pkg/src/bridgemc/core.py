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

from __future__ import print_function

import os
import sys
import traceback


def bd_debug(s):
    if 'BRIDGEMC_DEBUG' in os.environ:
        print(s, file=sys.stderr)


def print_bold(msg):
    """
    print message printed to screen with bold decoration for greater clarity
    :param msg: message to print, ``str``
    """
    if sys.platform in ['win32']:
        print('%s' % msg)
    else:
        print('\033[1m%s\033[0m' % msg)


class InvalidData(Exception):
    """
    Data file (observations, trace, configuration) is not in valid format.
    """

    def __init__(self, message, origin=None):
        super(InvalidData, self).__init__(message)
        self.origin = origin

    def __str__(self):
        message = super(InvalidData, self).__str__()
        if self.origin:
            return '[%s]: %s' % (self.origin, message)
        return message


class InvalidConfig(InvalidData):
    """
    Run configuration failed validation.  Carries *all* problems found,
    not only the first one.
    """

    def __init__(self, errors, origin=None):
        if not errors:
            raise ValueError('errors is empty')
        self.errors = list(errors)
        super(InvalidConfig, self).__init__('\n'.join(self.errors), origin=origin)


class InvalidGrid(ValueError):
    pass


class NonFiniteState(Exception):
    """
    A numerical scheme produced a non-finite value.
    """

    def __init__(self, index, state, what='state'):
        self.index = index
        self.state = state
        self.what = what
        super(NonFiniteState, self).__init__('non-finite %s at index %d: %s' % (what, index, state))


class SingularMatrixError(Exception):

    def __init__(self, what, time=None):
        self.what = what
        self.time = time
        if time is None:
            msg = '%s is not positive definite' % what
        else:
            msg = '%s is not positive definite at time %r' % (what, time)
        super(SingularMatrixError, self).__init__(msg)


class SingularLyapunovError(Exception):

    def __init__(self, eigenvalues):
        self.eigenvalues = eigenvalues
        super(SingularLyapunovError, self).__init__(
            'Lyapunov operator is singular: eigenvalues %s and %s sum to zero' % eigenvalues)


class UnsupportedAuxiliary(Exception):
    pass


class MatchingConditionError(Exception):
    pass


class MatchingConditionWarning(UserWarning):
    pass


class UnsupportedModel(Exception):
    pass


class InfeasibleConstraint(Exception):
    pass


class RankDeficientDesign(Exception):

    def __init__(self, hazard, rank, columns):
        self.hazard = hazard
        super(RankDeficientDesign, self).__init__(
            'weighted design for hazard %d has rank %d < %d' % (hazard, rank, columns))


class ChainError(Exception):
    """
    Failure inside the sampler, annotated with the iteration it occurred in.
    """

    def __init__(self, iteration, error):
        self.iteration = iteration
        self.error = error
        super(ChainError, self).__init__('iteration %d: %s' % (iteration, error))


class BridgeInternalError(Exception):

    def __init__(self, e, message=None):
        self.error = e
        if message is None:
            self.message = traceback.format_exc()
        else:
            self.message = message

    def __str__(self):
        return self.message
