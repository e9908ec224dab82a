"""LICENSE
Copyright 2026 The mascontrol developers

This file is part of mascontrol.

mascontrol is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

mascontrol is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with mascontrol.  If not, see <http://www.gnu.org/licenses/>.
LICENSE"""

import numpy as np
from mascontrol.exceptions import NumericalError


class RawObservation:
    """
    Class that models a state sub-vector as it travels from a sender to a
    receiver. Until delivery the value is the sender's sample; after
    delivery it carries the accumulated link noise.
    """

    def __init__(self, sender: int, receiver: int, value: np.ndarray,
                 time: int):
        """
        Initializes the RawObservation object
        :param sender: The sending agent
        :param receiver: The receiving agent
        :param value: The transported state sub-vector
        :param time: The local time step of the observation
        :raises NumericalError: If the value has non-finite entries
        """
        self.sender = sender
        self.receiver = receiver
        self.value = np.array(value, dtype=float, ndmin=1)
        self.time = time
        if not np.all(np.isfinite(self.value)):
            raise NumericalError("observations must be finite")

    def __str__(self) -> str:
        """
        :return: A string representation of the RawObservation object
        """
        return "{} -> {} @ {}: {}".format(
            self.sender, self.receiver, self.time, self.value
        )

    def delivered(self, value: np.ndarray, time: int) -> "RawObservation":
        """
        Generates the observation as seen by the receiver
        :param value: The received (noisy) value
        :param time: The receiver's local time at delivery
        :return: The delivered observation
        """
        return RawObservation(self.sender, self.receiver, value, time)
