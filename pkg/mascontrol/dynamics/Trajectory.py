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


class Trajectory:
    """
    Class that records a closed-loop simulation
    """

    def __init__(
            self,
            states: List[np.ndarray],
            inputs: List[np.ndarray],
            stage_costs: List[float],
            blown_up: bool
    ):
        """
        Initializes the Trajectory object
        :param states: The visited global states X(0), X(1), ...
        :param inputs: The applied global inputs U(0), U(1), ...
        :param stage_costs: The stage cost of every applied input
        :param blown_up: Whether the simulation was truncated because
                         the state exceeded the blow-up threshold
        """
        self.states = states
        self.inputs = inputs
        self.stage_costs = stage_costs
        self.blown_up = blown_up

    @property
    def cost(self) -> float:
        """
        :return: The accumulated cost G
        """
        return float(sum(self.stage_costs))

    @property
    def length(self) -> int:
        """
        :return: The number of simulated steps
        """
        return len(self.inputs)
