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
from typing import Optional
from mascontrol.exceptions import InvalidDimensions


class HMatrix:
    """
    Class that models the symmetric matrix H of a quadratic Q-function
    Q(z, u) = [z; u]' H [z; u], partitioned at the state/input boundary
    """

    def __init__(self, matrix: np.ndarray, state_size: int):
        """
        Initializes the HMatrix object
        :param matrix: The symmetric matrix, size state_size + inputs
        :param state_size: The length of z
        :raises InvalidDimensions: If the matrix is not square or not
                                   symmetric
        """
        self.matrix = np.array(matrix, dtype=float, ndmin=2)
        self.state_size = state_size
        size = self.matrix.shape[0]
        if self.matrix.shape != (size, size):
            raise InvalidDimensions("H", "square", self.matrix.shape)
        if not 0 <= state_size < size:
            raise InvalidDimensions("state size", "< {}".format(size),
                                    state_size)
        if np.linalg.norm(self.matrix - self.matrix.T) >= 1e-10:
            raise InvalidDimensions("H", "symmetric", "asymmetric")

    @property
    def size(self) -> int:
        """
        :return: The side length of H
        """
        return self.matrix.shape[0]

    @property
    def h11(self) -> np.ndarray:
        """
        :return: The state-state block
        """
        return self.matrix[:self.state_size, :self.state_size]

    @property
    def h12(self) -> np.ndarray:
        """
        :return: The state-input block
        """
        return self.matrix[:self.state_size, self.state_size:]

    @property
    def h21(self) -> np.ndarray:
        """
        :return: The input-state block
        """
        return self.matrix[self.state_size:, :self.state_size]

    @property
    def h22(self) -> np.ndarray:
        """
        :return: The input-input block
        """
        return self.matrix[self.state_size:, self.state_size:]

    def value(self, z: np.ndarray, u: Optional[np.ndarray] = None) -> float:
        """
        :param z: The state part, or the whole vector if u is None
        :param u: The input part
        :return: v'Hv with v = [z; u]
        """
        v = np.atleast_1d(np.asarray(z, dtype=float))
        if u is not None:
            v = np.concatenate([v, np.atleast_1d(np.asarray(u, dtype=float))])
        return float(v @ self.matrix @ v)
