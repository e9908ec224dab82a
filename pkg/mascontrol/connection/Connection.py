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

import logging
import numpy as np
from typing import List
from mascontrol.entities.RawObservation import RawObservation
from mascontrol.network.Route import Route


class Connection:
    """
    Class that defines methods a Connection must implement.
    A connection carries the state of one sender to one receiver over
    the static route between them.
    """

    def __init__(self, route: Route):
        """
        Initializes the connection
        :param route: The route between sender and receiver
        """
        self.route = route
        self.logger = logging.getLogger(self.__class__.__name__)

    @classmethod
    def name(cls) -> str:
        """
        The name of the connection class
        :return: The connection class name
        """
        raise NotImplementedError()

    @property
    def sender(self) -> int:
        """
        :return: The sending agent
        """
        return self.route.sender

    @property
    def receiver(self) -> int:
        """
        :return: The receiving agent
        """
        return self.route.receiver

    @property
    def delay(self) -> int:
        """
        :return: The number of steps between sending and delivery
        """
        raise NotImplementedError()

    @property
    def mu_total(self) -> float:
        """
        :return: The mean of the noise the receiver has to remove
        """
        raise NotImplementedError()

    @property
    def sigma2_total(self) -> float:
        """
        :return: The variance of the noise on delivered values
        """
        raise NotImplementedError()

    def send(self, observation: RawObservation):
        """
        Sends the sender's current sample
        :param observation: The sample, stamped with the sender's time
        :return: None
        """
        raise NotImplementedError()

    def receive(self, time: int) -> List[RawObservation]:
        """
        Receives all messages due at a local time step
        :param time: The receiver's local time
        :return: The delivered observations, oldest first
        """
        raise NotImplementedError()

    def reset(self, x0: np.ndarray, time: int = 0):
        """
        Clears all messages in flight and assumes the sender rested at
        its initial state before the given time
        :param x0: The sender's initial state
        :param time: The first time step of the new run
        :return: None
        """
        raise NotImplementedError()

    def close(self):
        """
        Disconnects the Connection.
        :return: None
        """
        raise NotImplementedError()
