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
from typing import List, Optional
from mascontrol.connection.Connection import Connection
from mascontrol.entities.RawObservation import RawObservation


class IdealConnection(Connection):
    """
    Class that implements a perfect connection: no noise and no delay.
    Useful as reference and in testing.
    """

    def __init__(self, route):
        """
        Initializes the connection
        :param route: The route between sender and receiver
        """
        super().__init__(route)
        self._pending = None  # type: Optional[RawObservation]

    @classmethod
    def name(cls) -> str:
        """
        The name of the connection class
        :return: The connection class name
        """
        return "ideal"

    @property
    def delay(self) -> int:
        """
        :return: Always 0
        """
        return 0

    @property
    def mu_total(self) -> float:
        """
        :return: Always 0.0
        """
        return 0.0

    @property
    def sigma2_total(self) -> float:
        """
        :return: Always 0.0
        """
        return 0.0

    def send(self, observation: RawObservation):
        """
        Stores the observation for immediate delivery
        :param observation: The sample to send
        :return: None
        """
        self._pending = observation

    def receive(self, time: int) -> List[RawObservation]:
        """
        :param time: The receiver's local time
        :return: The last sent observation, if any
        """
        if self._pending is None:
            return []
        pending = self._pending
        self._pending = None
        return [pending.delivered(pending.value, time)]

    def reset(self, x0: np.ndarray, time: int = 0):
        """
        Drops any undelivered observation
        :param x0: Unused
        :param time: Unused
        :return: None
        """
        self._pending = None

    def close(self):
        """
        Disconnects the Connection.
        :return: None
        """
        pass
