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


class StepRecord:
    """
    Class that models what an agent did at one time step: the gain it
    chose, the input it applied, the reward it received and the refined
    state that followed. Kept next to the time-shift buffer slot of the
    step so that the reward can be corrected later.
    """

    def __init__(self, time: int, gain: np.ndarray, own_input: np.ndarray,
                 reward: float, next_state: np.ndarray, terminal: bool):
        """
        Initializes the StepRecord object
        :param time: The local time step
        :param gain: The flattened gain K_l
        :param own_input: The input u_l applied by the agent
        :param reward: The immediate reward r_l
        :param next_state: The refined global state of the next step
        :param terminal: Whether the episode ended with this step
        """
        self.time = time
        self.gain = np.asarray(gain, dtype=float)
        self.own_input = np.asarray(own_input, dtype=float)
        self.reward = reward
        self.next_state = np.asarray(next_state, dtype=float)
        self.terminal = terminal
