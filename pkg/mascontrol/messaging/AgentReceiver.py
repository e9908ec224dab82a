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
from typing import Any, Dict, List, Union
from mascontrol.connection.Connection import Connection
from mascontrol.entities.RawObservation import RawObservation
from mascontrol.messaging.EmaChannelState import EmaChannelState
from mascontrol.messaging.RefinedGlobalState import \
    RefinedGlobalState, build_refined_state
from mascontrol.messaging.TimeShiftBuffer import TimeShiftBuffer
from mascontrol.messaging.transmission import debias


class AgentReceiver:
    """
    Class that bundles everything one agent needs to estimate the global
    state: one incoming connection and one filter state per other agent,
    the latest raw observations and the agent's time-shift buffer.
    """

    def __init__(
            self,
            owner: int,
            connections: Dict[int, Connection],
            state_dim: int = 1,
            window: int = 10,
            beta_min: float = 0.05,
            beta_max: float = 0.95,
            buffer_margin: int = 4
    ):
        """
        Initializes the receiver
        :param owner: The agent id
        :param connections: Mapping sender -> incoming connection, for
                            every other agent
        :param state_dim: The per-agent state dimension n
        :param window: The EMA variance window W
        :param beta_min: The lower clamp of beta
        :param beta_max: The upper clamp of beta
        :param buffer_margin: The slots added to the largest delay
        """
        self.owner = owner
        self.connections = connections
        self.state_dim = state_dim
        self.agents = len(connections) + 1
        self.logger = logging.getLogger(self.__class__.__name__)

        self.channels = {
            sender: EmaChannelState(
                connection.mu_total, connection.sigma2_total,
                window, beta_min, beta_max
            )
            for sender, connection in connections.items()
        }
        delays = {sender: c.delay for sender, c in connections.items()}
        delays[owner] = 0
        self.buffer = TimeShiftBuffer(
            owner, delays, state_dim, margin=buffer_margin
        )
        self.raw = {}  # type: Dict[int, np.ndarray]
        self.refined = {}  # type: Dict[int, np.ndarray]

    def _block(self, x: np.ndarray, agent: int) -> np.ndarray:
        start = (agent - 1) * self.state_dim
        return x[start:start + self.state_dim]

    def reset(self, x0: np.ndarray, time: int = 0):
        """
        Starts a new run from a resting initial state
        :param x0: The initial global state
        :param time: The first time step of the run
        :return: None
        """
        for sender, connection in self.connections.items():
            connection.reset(self._block(x0, sender), time)
            self.channels[sender].reset()
        self.buffer.reset()
        self.raw = {}
        self.refined = {}

    def accept(self, observation: RawObservation):
        """
        Debiases and filters a delivered observation
        :param observation: The delivered observation
        :return: None
        """
        sender = observation.sender
        channel = self.channels[sender]
        self.raw[sender] = observation.value
        y_bar = debias(observation.value, self.connections[sender].mu_total)
        channel.adapt_beta()
        self.refined[sender] = channel.ema_refine(y_bar)

    def receive(self, time: int):
        """
        Processes all observations due at a time step, senders in id order
        :param time: The local time step
        :return: None
        """
        for sender in sorted(self.connections):
            for observation in self.connections[sender].receive(time):
                self.accept(observation)

    def refined_state(self, own_state: np.ndarray, time: int) \
            -> RefinedGlobalState:
        """
        :param own_state: The owner's true sub-state
        :param time: The local time step
        :return: The refined global state estimate
        """
        return build_refined_state(
            self.owner, own_state, self.refined, self.agents, time
        )

    def raw_state(self, own_state: np.ndarray) -> np.ndarray:
        """
        :param own_state: The owner's true sub-state
        :return: The latest received values of all other agents, neither
                 debiased nor filtered, with the owner's exact state
        """
        return build_refined_state(
            self.owner, own_state, self.raw, self.agents
        ).values

    def push(self, refined: Union[RefinedGlobalState, np.ndarray],
             record: Any = None):
        """
        Adds a refined state to the time-shift buffer
        :param refined: The refined global state of the current step
        :param record: Data describing the current step
        :return: None
        """
        self.buffer.push(refined, record)

    def dump(self) -> List[Dict[str, Any]]:
        """
        :return: The buffer slots as rows
        """
        return self.buffer.dump()

    def close(self):
        """
        Closes all incoming connections
        :return: None
        """
        for connection in self.connections.values():
            connection.close()
