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


class Transition:
    """
    Class that models one joint step of all agents as stored in the
    replay buffer. Row l of each per-agent array belongs to agent l + 1.
    """

    def __init__(
            self,
            states: np.ndarray,
            gains: np.ndarray,
            inputs: np.ndarray,
            rewards: np.ndarray,
            next_states: np.ndarray,
            terminal: bool
    ):
        """
        Initializes the Transition object
        :param states: The refined global states, shape (L, nL)
        :param gains: The flattened gains K_l, shape (L, m*nL)
        :param inputs: The applied global input U, shape (mL,)
        :param rewards: The immediate rewards r_l, shape (L,)
        :param next_states: The next refined global states, shape (L, nL)
        :param terminal: Whether the episode ended with this step
        """
        self.states = np.asarray(states, dtype=float)
        self.gains = np.asarray(gains, dtype=float)
        self.inputs = np.asarray(inputs, dtype=float)
        self.rewards = np.asarray(rewards, dtype=float)
        self.next_states = np.asarray(next_states, dtype=float)
        self.terminal = terminal

    @property
    def agents(self) -> int:
        """
        :return: The number of agents
        """
        return self.states.shape[0]
