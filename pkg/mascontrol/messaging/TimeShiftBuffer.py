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
from collections import deque
from typing import Any, Deque, Dict, List, Optional, Tuple, Union
from mascontrol.exceptions import BufferEmpty, InvalidConfiguration
from mascontrol.messaging.RefinedGlobalState import RefinedGlobalState


class ShiftSlot:
    """
    Class that models one slot of a time-shift buffer: a reconstructed
    global state, the mask of components written so far and the record
    of what happened at the slot's time step.
    """

    def __init__(self, agents: int, state_dim: int):
        """
        Initializes a zero slot
        :param agents: The number of agents L
        :param state_dim: The per-agent state dimension n
        """
        self.values = np.zeros(agents * state_dim)
        self.mask = np.zeros(agents, dtype=bool)
        self.record = None  # type: Any

    @property
    def fully_filled(self) -> bool:
        """
        :return: Whether every component has been written
        """
        return bool(np.all(self.mask))


class TimeShiftBuffer:
    """
    Class that implements the FIFO buffer aligning delayed components of
    refined global states to a common time reference. Component m of a
    state received at time t belongs to time t - d_m and is written into
    the slot at that depth. Slots leaving the buffer become available as
    reconstructed states.
    """

    def __init__(
            self,
            owner: int,
            delays: Dict[int, int],
            state_dim: int = 1,
            capacity: Optional[int] = None,
            margin: int = 4
    ):
        """
        Initializes the buffer with zero slots
        :param owner: The agent owning the buffer
        :param delays: Mapping sender -> timing offset d, for all agents
                       including the owner
        :param state_dim: The per-agent state dimension n
        :param capacity: The number of slots P; defaults to D + margin
        :param margin: The slots added to the largest delay by default
        :raises InvalidConfiguration: If a delay does not fit the capacity
        """
        self.owner = owner
        self.delays = dict(delays)
        self.agents = len(self.delays)
        self.state_dim = state_dim
        self.capacity = self.max_delay + margin if capacity is None \
            else capacity
        self.logger = logging.getLogger(self.__class__.__name__)

        if self.capacity < 1:
            raise InvalidConfiguration(
                "network.buffer_margin", "buffer capacity must be positive"
            )
        for sender, delay in self.delays.items():
            if delay >= self.capacity:
                raise InvalidConfiguration(
                    "network.buffer_margin",
                    "delay {} of agent {} does not fit a buffer of {} slots"
                    .format(delay, sender, self.capacity)
                )

        self.pushes = 0
        self._slots = deque()  # type: Deque[ShiftSlot]
        self._ready = deque()  # type: Deque[ShiftSlot]
        self.reset()

    @property
    def max_delay(self) -> int:
        """
        :return: The largest timing offset D of the owner
        """
        return max(self.delays.values())

    @property
    def slots(self) -> List[ShiftSlot]:
        """
        :return: The buffered slots, oldest first. The last slot is the
                 empty one that the next push starts filling.
        """
        return list(self._slots)

    @property
    def ready_count(self) -> int:
        """
        :return: The number of reconstructed states waiting to be popped
        """
        return len(self._ready)

    def is_ready(self) -> bool:
        """
        Every component needs at most D pushes to arrive, so the buffer
        is considered fully updated after D * P pushes
        :return: Whether the readiness count has been reached
        """
        return self.pushes >= self.max_delay * self.capacity

    def reset(self):
        """
        Replaces all slots with zero slots and drops reconstructed states.
        The push counter is kept.
        :return: None
        """
        self._slots.clear()
        self._ready.clear()
        for _ in range(self.capacity):
            self._slots.append(ShiftSlot(self.agents, self.state_dim))

    def push(self, refined: Union[RefinedGlobalState, np.ndarray],
             record: Any = None):
        """
        Writes every component of a refined global state into the slot
        matching its delay, then moves the oldest slot out of the buffer
        and appends a zero slot
        :param refined: The refined global state of the current step
        :param record: Data describing the current step, kept with the
                       slot of the current step
        :return: None
        """
        values = refined.values if isinstance(refined, RefinedGlobalState) \
            else np.asarray(refined, dtype=float)
        newest = self.capacity - 1
        for agent, delay in self.delays.items():
            slot = self._slots[newest - delay]
            start = (agent - 1) * self.state_dim
            block = slice(start, start + self.state_dim)
            slot.values[block] = values[block]
            slot.mask[agent - 1] = True
        self._slots[newest].record = record

        self._ready.append(self._slots.popleft())
        self._slots.append(ShiftSlot(self.agents, self.state_dim))
        self.pushes += 1

    def flush(self):
        """
        Moves every slot that received data to the reconstruction queue,
        oldest first, and refills the buffer with zero slots. Used at the
        end of an episode; slots whose delayed components never arrived
        leave the buffer unfilled.
        :return: None
        """
        for slot in self._slots:
            if slot.record is not None or np.any(slot.mask):
                self._ready.append(slot)
        self._slots.clear()
        for _ in range(self.capacity):
            self._slots.append(ShiftSlot(self.agents, self.state_dim))

    def peek(self, depth: int) -> ShiftSlot:
        """
        :param depth: How many steps before the latest push the slot's
                      time lies; 0 is the slot of the latest push
        :return: The slot
        """
        index = self.capacity - 2 - depth
        if not 0 <= index < self.capacity - 1:
            raise IndexError("no slot at depth {}".format(depth))
        return self._slots[index]

    def pop_reconstructed(self) -> Tuple[np.ndarray, bool, Any]:
        """
        Pops the oldest reconstructed state
        :return: A tuple (X_hat, fully_filled, record)
        :raises BufferEmpty: If no slot has left the buffer yet
        """
        if not self._ready:
            raise BufferEmpty("no reconstructed state of agent {}".format(
                self.owner
            ))
        slot = self._ready.popleft()
        return slot.values, slot.fully_filled, slot.record

    def dump(self) -> List[Dict[str, Any]]:
        """
        :return: One row per buffered slot, for debugging output
        """
        return [
            {
                "agent": self.owner,
                "push": self.pushes,
                "slot": index,
                "values": " ".join("{:.6g}".format(v) for v in slot.values),
                "filled": "".join("1" if m else "0" for m in slot.mask)
            }
            for index, slot in enumerate(self._slots)
        ]


def time_shift_push(buffer: TimeShiftBuffer,
                    refined: RefinedGlobalState,
                    record: Any = None) -> TimeShiftBuffer:
    """
    :param buffer: The buffer to update
    :param refined: The refined global state of the current step
    :param record: Data describing the current step
    :return: The updated buffer
    """
    buffer.push(refined, record)
    return buffer


def pop_reconstructed(buffer: TimeShiftBuffer) \
        -> Tuple[np.ndarray, bool, Any]:
    """
    :param buffer: The buffer to pop from
    :return: A tuple (X_hat, fully_filled, record)
    """
    return buffer.pop_reconstructed()
