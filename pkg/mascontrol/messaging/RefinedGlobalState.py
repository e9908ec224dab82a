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
from typing import Dict
from mascontrol.exceptions import MissingSender


class RefinedGlobalState:
    """
    Class that models an agent's estimate of the full state vector at its
    local time. The owner's own block is exact.
    """

    def __init__(self, owner: int, time: int, values: np.ndarray,
                 state_dim: int = 1):
        """
        Initializes the RefinedGlobalState object
        :param owner: The agent holding the estimate
        :param time: The owner's local time
        :param values: The stacked estimate of all L sub-states
        :param state_dim: The per-agent state dimension n
        """
        self.owner = owner
        self.time = time
        self.values = np.asarray(values, dtype=float)
        self.state_dim = state_dim

    @property
    def agents(self) -> int:
        """
        :return: The number of agents in the estimate
        """
        return self.values.shape[0] // self.state_dim

    def component(self, agent: int) -> np.ndarray:
        """
        :param agent: The agent id (1..L)
        :return: The estimate of that agent's sub-state
        """
        start = (agent - 1) * self.state_dim
        return self.values[start:start + self.state_dim]


def build_refined_state(
        owner: int,
        own_state: np.ndarray,
        refined: Dict[int, np.ndarray],
        agents: int,
        time: int = 0
) -> RefinedGlobalState:
    """
    Assembles the refined global state, ordered by agent id, with the
    owner's exact state in its own position
    :param owner: The assembling agent
    :param own_state: The owner's true sub-state
    :param refined: Mapping sender -> refined sub-state, for all
                    other agents
    :param agents: The number of agents L
    :param time: The owner's local time
    :return: The refined global state
    :raises MissingSender: If an agent's value is missing
    """
    own_state = np.array(own_state, dtype=float, ndmin=1)
    parts = []
    for agent in range(1, agents + 1):
        if agent == owner:
            parts.append(own_state)
        elif agent not in refined:
            raise MissingSender(owner, agent)
        else:
            parts.append(np.array(refined[agent], dtype=float, ndmin=1))
    return RefinedGlobalState(
        owner, time, np.concatenate(parts), own_state.shape[0]
    )
