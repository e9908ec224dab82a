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
from collections import deque
from typing import Deque, List, Tuple
from mascontrol.connection.Connection import Connection
from mascontrol.entities.RawObservation import RawObservation
from mascontrol.messaging.transmission import transmit
from mascontrol.network.Route import Route


class RouteConnection(Connection):
    """
    Class that implements a multi-hop connection with Gaussian link noise.
    Every forwarding node holds a message for one step, so a route with R
    hops delivers R - 1 steps after sending.
    """

    def __init__(self, route: Route, rng: np.random.Generator,
                 delayed: bool = True):
        """
        Initializes the connection
        :param route: The route between sender and receiver
        :param rng: The random number generator used for link noise
        :param delayed: Whether hop delays apply. If False, messages are
                        noisy but delivered in the step they were sent.
        """
        super().__init__(route)
        self.rng = rng
        self.delayed = delayed
        self._in_flight = deque()  # type: Deque[Tuple[int, RawObservation]]

    @classmethod
    def name(cls) -> str:
        """
        The name of the connection class
        :return: The connection class name
        """
        return "route"

    @property
    def delay(self) -> int:
        """
        :return: The hop-induced delay, or 0 if delays are disabled
        """
        return self.route.delay if self.delayed else 0

    @property
    def mu_total(self) -> float:
        """
        :return: The summed link means of the route
        """
        return self.route.mu_total

    @property
    def sigma2_total(self) -> float:
        """
        :return: The summed link variances of the route
        """
        return self.route.sigma2_total

    def send(self, observation: RawObservation):
        """
        Transmits the sample over the route and holds it until it is due
        :param observation: The sample, stamped with the sender's time
        :return: None
        """
        noisy = transmit(observation.value, self.route, self.rng)
        self._in_flight.append((
            observation.time + self.delay,
            observation.delivered(noisy, observation.time)
        ))

    def receive(self, time: int) -> List[RawObservation]:
        """
        :param time: The receiver's local time
        :return: All observations due at or before that time
        """
        delivered = []
        while self._in_flight and self._in_flight[0][0] <= time:
            _, observation = self._in_flight.popleft()
            delivered.append(observation.delivered(observation.value, time))
        return delivered

    def reset(self, x0: np.ndarray, time: int = 0):
        """
        Clears the delay line and fills it with transmissions of the initial
        state, so that the receiver gets a value in every step
        :param x0: The sender's initial state
        :param time: The first time step of the new run
        :return: None
        """
        self._in_flight.clear()
        for offset in range(self.delay, 0, -1):
            self.send(RawObservation(
                self.sender, self.receiver, x0, time - offset
            ))

    def close(self):
        """
        Disconnects the Connection.
        :return: None
        """
        self._in_flight.clear()
