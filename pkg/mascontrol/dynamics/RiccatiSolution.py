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
from mascontrol.dynamics.GainMatrix import GainMatrix


class RiccatiSolution:
    """
    Class that holds the result of a discrete-time algebraic
    Riccati equation solve
    """

    def __init__(
            self,
            p: np.ndarray,
            gain: GainMatrix,
            residual: float,
            iterations: int
    ):
        """
        Initializes the RiccatiSolution object
        :param p: The symmetric positive definite solution P
        :param gain: The optimal feedback gain
        :param residual: The Frobenius norm of the equation defect
        :param iterations: The number of fixed-point iterations performed
        """
        self.p = p
        self.gain = gain
        self.residual = residual
        self.iterations = iterations

    def value(self, x: np.ndarray) -> float:
        """
        Evaluates the infinite-horizon optimal cost from a state
        :param x: The initial state
        :return: x'Px
        """
        x = np.asarray(x, dtype=float)
        return float(x @ self.p @ x)

    def __str__(self) -> str:
        """
        :return: A string representation of the solution
        """
        return "RiccatiSolution(residual={:.3e}, iterations={})".format(
            self.residual, self.iterations
        )
