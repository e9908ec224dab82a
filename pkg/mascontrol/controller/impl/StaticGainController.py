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
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.MasModel import MasModel


class StaticGainController(Controller):
    """
    Class that implements a controller with a fixed stacked gain, as
    produced by the Riccati oracle or the state tracking baseline
    """

    def __init__(self, model: MasModel, gain: GainMatrix,
                 observation: str = "raw"):
        """
        Initializes the controller
        :param model: The plant model
        :param gain: The stacked gain
        :param observation: Which estimate the agents act on
        """
        super().__init__(model, observation)
        self.gain_matrix = gain

    @classmethod
    def name(cls) -> str:
        """
        The name of the controller class
        :return: The controller class name
        """
        return "static"

    def gain(self, agent: int, estimate: np.ndarray) -> np.ndarray:
        """
        :param agent: The agent id
        :param estimate: Unused, the gain is constant
        :return: The agent's row block of the stacked gain
        """
        return self.gain_matrix.block(agent)
