#
# Copyright (c) 2026, mvideal contributors.
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#
#   Redistributions of source code must retain the above copyright notice,
#   this list of conditions and the following disclaimer.
#
#   Redistributions in binary form must reproduce the above copyright
#   notice, this list of conditions and the following disclaimer in the
#   documentation and/or other materials provided with the distribution.
#
#   Neither the name of the copyright holders nor the names of its
#   contributors may be used to endorse or promote products derived from
#   this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR
# A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT
# HOLDERS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL,
# EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
# PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR
# PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
# LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING
# NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS
# SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.
#
"""Exception hierarchy for mvideal

Every exception raised on purpose by the library derives from MvIdealError.
The command line front end maps any MvIdealError to exit status 2, so these
exceptions describe malformed input or violated construction preconditions,
never mathematical outcomes (those are returned as reports).
"""


class MvIdealError(Exception):
    """Base exception class for all exceptions generated by mvideal

    This is the base exception class for all exceptions generated by
    mvideal.  It is provided as a catch all for exceptions and should
    not be directly raised by any methods or functions

    Args:
        message (string): The exception error message
        detail (object): Optional payload describing the offending input
    """
    def __init__(self, message, detail=None):
        self.message = message
        self.detail = detail
        super(MvIdealError, self).__init__(message)


class ContextMismatchError(MvIdealError):
    """Raised when operands belong to different variable contexts"""

    def __init__(self, left, right):
        message = 'variable context mismatch: {} vs {}'.format(left, right)
        super(ContextMismatchError, self).__init__(message, (left, right))
        self.left = left
        self.right = right


class PolynomialParseError(MvIdealError):
    """Raised when polynomial text does not follow the canonical grammar

    Args:
        text (string): The text that was being parsed
        position (int): Offset of the offending token, if known
    """
    def __init__(self, text, reason, position=None):
        message = 'cannot parse polynomial {!r}: {}'.format(text, reason)
        if position is not None:
            message += ' (at offset {})'.format(position)
        super(PolynomialParseError, self).__init__(message, text)
        self.text = text
        self.position = position


class ShapeError(MvIdealError):
    """Raised for matrix shape problems and out of range minor sizes"""


class DivisionError(MvIdealError):
    """Raised when an exact polynomial division leaves a remainder"""


class IdealError(MvIdealError):
    """Raised for undefined ideal operations such as a colon by zero"""


class CameraError(MvIdealError):
    """Raised for degenerate camera data

    Rank deficient matrices, singular transforms, projections of a focus
    and epipoles between coincident foci all raise CameraError.
    """


class ArrangementError(MvIdealError):
    """Raised when an arrangement description is malformed

    Args:
        message (string): The exception error message
        source (string): File name or other origin of the description
    """
    def __init__(self, message, source=None):
        if source:
            message = '{}: {}'.format(source, message)
        super(ArrangementError, self).__init__(message, source)
        self.source = source


class PreconditionError(MvIdealError):
    """Raised when a construction precondition does not hold

    The reason attribute names the violated normalization or hypothesis,
    for instance ``'first camera must be [I|0]'``.

    Args:
        reason (string): The violated precondition
        operation (string): The name of the refused operation
    """
    def __init__(self, reason, operation=None):
        if operation:
            message = '{}: precondition violated: {}'.format(operation, reason)
        else:
            message = 'precondition violated: {}'.format(reason)
        super(PreconditionError, self).__init__(message, operation)
        self.reason = reason
        self.operation = operation


class VerificationCancelled(MvIdealError):
    """Raised inside a worker thread once its verification passed the
    session time limit"""
