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
from typing import List
from mascontrol.exceptions import InvalidDimensions
from mascontrol.dynamics.MasModel import MasModel


class GainMatrix:
    """
    Class that models a stacked state-feedback gain. The control law is
    U = -KX, each agent owns the m rows of its input block.
    """

    def __init__(
            self,
            k: np.ndarray,
            agents: int,
            state_dim: int = 1,
            input_dim: int = 1
    ):
        """
        Initializes the gain matrix
        :param k: The stacked gain (mL x nL)
        :param agents: The number of agents L
        :param state_dim: The per-agent state dimension n
        :param input_dim: The per-agent input dimension m
        :raises InvalidDimensions: If the shape does not match or
                                   entries are not finite
        """
        self.k = np.array(k, dtype=float, ndmin=2)
        self.agents = agents
        self.state_dim = state_dim
        self.input_dim = input_dim
        shape = (agents * input_dim, agents * state_dim)
        if self.k.shape != shape:
            raise InvalidDimensions("K", shape, self.k.shape)
        if not np.all(np.isfinite(self.k)):
            raise InvalidDimensions("K", "finite entries", "non-finite")

    @classmethod
    def zeros(cls, model: MasModel) -> "GainMatrix":
        """
        :param model: The model the gain is meant for
        :return: An all-zero gain matrix
        """
        return cls(
            np.zeros((model.inputs, model.size)),
            model.agents, model.state_dim, model.input_dim
        )

    @classmethod
    def stack(cls, blocks: List[np.ndarray], state_dim: int = 1,
              input_dim: int = 1) -> "GainMatrix":
        """
        Stacks per-agent gains into the global gain
        :param blocks: The gains K_l (m x nL each), ordered by agent id
        :param state_dim: The per-agent state dimension n
        :param input_dim: The per-agent input dimension m
        :return: The stacked gain matrix
        """
        agents = len(blocks)
        rows = [
            np.asarray(block, dtype=float).reshape(
                input_dim, agents * state_dim
            )
            for block in blocks
        ]
        return cls(np.vstack(rows), agents, state_dim, input_dim)

    def block(self, agent: int) -> np.ndarray:
        """
        :param agent: The agent id (1..L)
        :return: The agent's row block K_l (m x nL)
        """
        if not 1 <= agent <= self.agents:
            raise InvalidDimensions(
                "agent id", "1..{}".format(self.agents), agent
            )
        start = (agent - 1) * self.input_dim
        return self.k[start:start + self.input_dim]

    def blocks(self) -> List[np.ndarray]:
        """
        :return: All row blocks, ordered by agent id
        """
        return [self.block(agent) for agent in range(1, self.agents + 1)]

    def control(self, x: np.ndarray) -> np.ndarray:
        """
        Applies the feedback law
        :param x: The global state
        :return: U = -KX
        """
        return -self.k @ np.asarray(x, dtype=float)

    def closed_loop(self, model: MasModel) -> np.ndarray:
        """
        :param model: The plant model
        :return: The closed-loop matrix A - BK
        """
        return model.a - model.b @ self.k

    def to_list(self) -> List[List[float]]:
        """
        :return: The gain as nested lists, for JSON output
        """
        return self.k.tolist()
