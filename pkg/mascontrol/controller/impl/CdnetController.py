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
from mascontrol.controller.Controller import Controller
from mascontrol.learning.CdnetLearner import CdnetLearner


class CdnetController(Controller):
    """
    Class that implements a controller driven by trained actors. The gain
    depends on the agent's refined estimate; no exploration noise is added.
    """

    def __init__(self, learner: CdnetLearner, observation: str = "refined"):
        """
        Initializes the controller
        :param learner: The trained learner
        :param observation: Which estimate the agents act on
        """
        super().__init__(learner.model, observation)
        self.learner = learner

    @classmethod
    def name(cls) -> str:
        """
        The name of the controller class
        :return: The controller class name
        """
        return "cdnet"

    def gain(self, agent: int, estimate: np.ndarray) -> np.ndarray:
        """
        :param agent: The agent id
        :param estimate: The agent's refined global state
        :return: The deterministic gain of the agent's actor
        """
        psi = self.learner.forward_features(estimate, agent)
        return self.learner.select_gain(psi, agent)
