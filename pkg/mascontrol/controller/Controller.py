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
from typing import Dict, List
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.exceptions import InvalidConfiguration


class Controller:
    """
    Class that defines what methods a Controller class must implement.
    A Controller computes the global input from the per-agent estimates
    of the global state; every agent uses only its own estimate.
    """

    OBSERVATIONS = ["refined", "raw", "true"]

    def __init__(self, model: MasModel, observation: str):
        """
        Initializes the Controller
        :param model: The plant model
        :param observation: Which estimate the agents act on:
                            refined, raw or true
        :raises InvalidConfiguration: On unknown observations
        """
        if observation not in self.OBSERVATIONS:
            raise InvalidConfiguration(
                "observation", "unknown observation " + observation)
        self.model = model
        self.observation = observation
        self.logger = logging.getLogger(self.__class__.__name__)

    @classmethod
    def name(cls) -> str:
        """
        The name of the controller class
        :return: The controller class name
        """
        raise NotImplementedError()

    @property
    def agents(self) -> List[int]:
        """
        :return: The sorted agent ids
        """
        return list(range(1, self.model.agents + 1))

    def gain(self, agent: int, estimate: np.ndarray) -> np.ndarray:
        """
        :param agent: The agent id
        :param estimate: The agent's estimate of the global state
        :return: The gain K_l the agent applies, shape (m, nL)
        """
        raise NotImplementedError()

    def inputs(self, estimates: Dict[int, np.ndarray]) -> np.ndarray:
        """
        :param estimates: Mapping agent -> estimate of the global state
        :return: The global input, u_l = -K_l X_l for every agent
        """
        return np.concatenate([
            -self.gain(agent, estimates[agent]) @ estimates[agent]
            for agent in self.agents
        ])
