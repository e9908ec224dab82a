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
from typing import Any, Dict, List, Optional, Union
from mascontrol.connection.Connection import Connection
from mascontrol.connection.impl.IdealConnection import IdealConnection
from mascontrol.connection.impl.RouteConnection import RouteConnection
from mascontrol.entities.RawObservation import RawObservation
from mascontrol.messaging.AgentReceiver import AgentReceiver
from mascontrol.messaging.RefinedGlobalState import RefinedGlobalState
from mascontrol.network.RoutingTable import RoutingTable


class MessageNetwork:
    """
    Class that simulates the message passing between all agents of a
    multi-agent system. In every time step each agent sends its own state
    to every other agent along the routing table's routes; agents are
    processed round-robin in id order, which keeps runs reproducible.
    """

    def __init__(
            self,
            table: RoutingTable,
            rng: np.random.Generator,
            state_dim: int = 1,
            delayed: bool = True,
            ideal: bool = False,
            window: int = 10,
            beta_min: float = 0.05,
            beta_max: float = 0.95,
            buffer_margin: int = 4
    ):
        """
        Initializes the network
        :param table: The routing table
        :param rng: The random number generator for link noise
        :param state_dim: The per-agent state dimension n
        :param delayed: Whether multi-hop routes delay messages
        :param ideal: If True, all messages arrive exactly and at once
        :param window: The EMA variance window W
        :param beta_min: The lower clamp of beta
        :param beta_max: The upper clamp of beta
        :param buffer_margin: The slots added to the largest delay of
                              each time-shift buffer
        """
        self.table = table
        self.state_dim = state_dim
        self.agents = table.agents
        self.time = 0
        self.logger = logging.getLogger(self.__class__.__name__)

        self.receivers = {}  # type: Dict[int, AgentReceiver]
        for receiver in self.agents:
            connections = {}  # type: Dict[int, Connection]
            for sender, route in sorted(table.routes_for(receiver).items()):
                if sender == receiver:
                    continue
                if ideal:
                    connections[sender] = IdealConnection(route)
                else:
                    connections[sender] = \
                        RouteConnection(route, rng, delayed)
            self.receivers[receiver] = AgentReceiver(
                receiver, connections, state_dim,
                window, beta_min, beta_max, buffer_margin
            )

        self.logger.info("Message network for {} agents, max delay {}"
                         .format(len(self.agents), self.max_delay))

    @property
    def max_delay(self) -> int:
        """
        :return: The largest timing offset among all receivers
        """
        return max(r.buffer.max_delay for r in self.receivers.values())

    def _block(self, x: np.ndarray, agent: int) -> np.ndarray:
        start = (agent - 1) * self.state_dim
        return x[start:start + self.state_dim]

    def reset(self, x0: np.ndarray):
        """
        Starts a new episode. The plant is assumed to rest at x0 before
        time 0, so every delay line is filled with samples of x0.
        :param x0: The initial global state
        :return: None
        """
        self.time = 0
        x0 = np.asarray(x0, dtype=float)
        for agent in self.agents:
            self.receivers[agent].reset(x0, self.time)

    def observe(self, x: np.ndarray) -> Dict[int, RefinedGlobalState]:
        """
        Runs one communication step: all agents send their state, then
        every agent processes what reaches it at the current time
        :param x: The true global state at the current time
        :return: Mapping agent -> refined global state
        """
        x = np.asarray(x, dtype=float)
        for receiver in self.agents:
            for sender, connection in \
                    sorted(self.receivers[receiver].connections.items()):
                connection.send(RawObservation(
                    sender, receiver, self._block(x, sender), self.time
                ))

        refined = {}
        for agent in self.agents:
            agent_receiver = self.receivers[agent]
            agent_receiver.receive(self.time)
            refined[agent] = agent_receiver.refined_state(
                self._block(x, agent), self.time
            )
        self.time += 1
        return refined

    def raw(self, x: np.ndarray) -> Dict[int, np.ndarray]:
        """
        Must be called after observe() of the same step
        :param x: The true global state
        :return: Mapping agent -> unfiltered observed global state
        """
        x = np.asarray(x, dtype=float)
        return {
            agent: self.receivers[agent].raw_state(self._block(x, agent))
            for agent in self.agents
        }

    def push(self, refined: Dict[int, Union[RefinedGlobalState, np.ndarray]],
             records: Optional[Dict[int, Any]] = None):
        """
        Adds every agent's refined state to its time-shift buffer
        :param refined: Mapping agent -> refined global state or its values
        :param records: Mapping agent -> record of the step
        :return: None
        """
        for agent in self.agents:
            record = None if records is None else records.get(agent)
            self.receivers[agent].push(refined[agent], record)

    def flush(self):
        """
        Releases the contents of all time-shift buffers, see
        TimeShiftBuffer.flush()
        :return: None
        """
        for agent_receiver in self.receivers.values():
            agent_receiver.buffer.flush()

    def buffer(self, agent: int):
        """
        :param agent: The agent id
        :return: The agent's time-shift buffer
        """
        return self.receivers[agent].buffer

    def dump_buffers(self) -> List[Dict[str, Any]]:
        """
        :return: The slots of all time-shift buffers as rows
        """
        rows = []
        for agent in self.agents:
            for row in self.receivers[agent].dump():
                row["time"] = self.time
                rows.append(row)
        return rows

    def close(self):
        """
        Closes all connections
        :return: None
        """
        for agent_receiver in self.receivers.values():
            agent_receiver.close()
