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
from collections import deque
from typing import Deque, List
from mascontrol.entities.Transition import Transition
from mascontrol.exceptions import InvalidConfiguration


class ReplayBuffer:
    """
    Class that implements a bounded experience replay memory. Once full,
    the oldest transition is dropped for every new one.
    """

    def __init__(self, capacity: int):
        """
        Initializes the replay buffer
        :param capacity: The maximum number of transitions
        :raises InvalidConfiguration: If the capacity is below 1
        """
        if capacity < 1:
            raise InvalidConfiguration(
                "replay_capacity", "must be at least 1")
        self.capacity = capacity
        self.memory = deque(maxlen=capacity)  # type: Deque[Transition]

    def __len__(self) -> int:
        return len(self.memory)

    def append(self, transition: Transition):
        """
        :param transition: The transition to store
        :return: None
        """
        self.memory.append(transition)

    def sample(self, batch_size: int, rng: np.random.Generator) \
            -> List[Transition]:
        """
        Draws transitions uniformly with replacement
        :param batch_size: The number of transitions
        :param rng: The random number generator
        :return: The sampled transitions
        :raises ValueError: If the buffer is empty
        """
        if len(self.memory) == 0:
            raise ValueError("cannot sample from an empty replay buffer")
        indices = rng.integers(0, len(self.memory), size=batch_size)
        return [self.memory[i] for i in indices]

    def flush(self):
        """
        Removes all transitions
        :return: None
        """
        self.memory.clear()
