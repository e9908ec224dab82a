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
from mascontrol.entities.StepRecord import StepRecord
from mascontrol.exceptions import InvalidConfiguration


class HistoryEntry:
    """
    Class that models a corrected experience: a reconstructed state, the
    reward recomputed on it and the record of the step it belongs to
    """

    def __init__(self, state: np.ndarray, reward: float, record: StepRecord):
        """
        Initializes the HistoryEntry object
        :param state: The reconstructed global state X_hat
        :param reward: The corrected reward r'
        :param record: The record of the step
        """
        self.state = np.asarray(state, dtype=float)
        self.reward = reward
        self.record = record


class HistoryBuffer:
    """
    Class that implements an agent's FIFO of corrected experiences
    """

    def __init__(self, capacity: int):
        """
        Initializes the history buffer
        :param capacity: The maximum number of entries
        :raises InvalidConfiguration: If the capacity is below 1
        """
        if capacity < 1:
            raise InvalidConfiguration("capacity", "must be at least 1")
        self.capacity = capacity
        self.entries = deque(maxlen=capacity)  # type: Deque[HistoryEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def append(self, entry: HistoryEntry):
        """
        :param entry: The corrected experience
        :return: None
        """
        self.entries.append(entry)

    def drain(self, size: int) -> List[HistoryEntry]:
        """
        Removes up to a number of entries, oldest first
        :param size: The maximum number of entries
        :return: The removed entries
        """
        chunk = []
        while self.entries and len(chunk) < size:
            chunk.append(self.entries.popleft())
        return chunk
