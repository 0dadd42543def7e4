#
# mulshift library
#
# Copyright (c) 2020 mulshift developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library; if not, write to the Free Software
# Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA
#
from typing import Any, Optional

from mulshift.properties import ExitCode


class MulshiftError(Exception):
    """Base class of every error raised by mulshift.

    ``stage`` names the pipeline stage that failed, when known."""

    exit_code = ExitCode.FAILURE

    def __init__(self, message: str = '', *, stage: Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage is not None:
            return '[{}] {}'.format(self.stage, self.message)
        return self.message


class UnsupportedInputError(MulshiftError):
    exit_code = ExitCode.PRECONDITION


class PreconditionError(MulshiftError):
    exit_code = ExitCode.PRECONDITION


class CoprimalityError(PreconditionError):

    def __init__(self, first: int, second: int, *, stage: Optional[str] = None) -> None:
        super().__init__('moduli {} and {} are not coprime'.format(first, second), stage=stage)
        self.pair = (first, second)


class PositivityError(PreconditionError):
    pass


class ClassMismatchError(PreconditionError):
    pass


class BoxViolationError(PreconditionError):

    def __init__(self, message: str, coordinate: int, *, stage: Optional[str] = None) -> None:
        super().__init__(message, stage=stage)
        self.coordinate = coordinate


class ClassMembershipError(PreconditionError):
    pass


class BudgetExhaustedError(MulshiftError):
    """A finite budget ran out; ``partial`` holds whatever was built so far."""

    exit_code = ExitCode.BUDGET

    def __init__(self, message: str, partial: Any = None, residual: Optional[float] = None,
                 *, stage: Optional[str] = None) -> None:
        super().__init__(message, stage=stage)
        self.partial = partial
        self.residual = residual


class NothingFoundError(MulshiftError):
    exit_code = ExitCode.NOTHING_FOUND


class InternalError(MulshiftError):
    pass
