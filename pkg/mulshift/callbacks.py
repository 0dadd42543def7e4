#!/usr/bin/python -u
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

from abc import ABC, abstractmethod


class Callback(ABC):
    """Abstract base class for progress callbacks."""

    @abstractmethod
    def report_start_preparation(self):
        """report a start of preparation such as building moduli or solving the congruence system."""
        pass  # noqa

    @abstractmethod
    def report_start(self, chunk_label, candidates):
        """report a start event of a chunk and the number of candidates it holds."""
        pass  # noqa

    @abstractmethod
    def report_end(self, chunk_label, found):
        """report an end event of a chunk and the number of hits in it."""
        pass  # noqa

    @abstractmethod
    def report_warning(self, message):
        """report a warning event with its message"""
        pass  # noqa

    @abstractmethod
    def report_postprocess(self):
        """report a start of post processing such as merging chunks and re-checking records."""
        pass  # noqa


class ScanCallback(Callback):
    """Abstract base class for scan progress callbacks."""
    pass
