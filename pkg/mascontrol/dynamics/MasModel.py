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
from typing import Tuple
from mascontrol.exceptions import InvalidDimensions


class MasModel:
    """
    Class that models the stacked global LTI system of a multi-agent system.
    Agent ids run from 1 to L, every agent owns a block of n states and
    m inputs of the global vectors.
    """

    PSD_TOLERANCE = 1e-9
    """
    Smallest eigenvalue accepted for the weight matrices
    """

    def __init__(
            self,
            a: np.ndarray,
            b: np.ndarray,
            s: np.ndarray,
            r: np.ndarray,
            agents: int,
            state_dim: int = 1,
            input_dim: int = 1
    ):
        """
        Initializes the model and checks the matrix dimensions
        :param a: The global state matrix (nL x nL)
        :param b: The global input matrix (nL x mL)
        :param s: The state weight matrix (nL x nL), symmetric PSD
        :param r: The input weight matrix (mL x mL), symmetric PSD
        :param agents: The number of agents L
        :param state_dim: The per-agent state dimension n
        :param input_dim: The per-agent input dimension m
        :raises InvalidDimensions: If the matrices do not conform
        """
        self.agents = agents
        self.state_dim = state_dim
        self.input_dim = input_dim
        self.a = np.array(a, dtype=float, ndmin=2)
        self.b = np.array(b, dtype=float, ndmin=2)
        self.s = np.array(s, dtype=float, ndmin=2)
        self.r = np.array(r, dtype=float, ndmin=2)
        self._validate()

    @classmethod
    def scalar(cls, a: float, b: float, s: float, r: float) -> "MasModel":
        """
        Generates a single-agent model with scalar state and input
        :param a: The state coefficient
        :param b: The input coefficient
        :param s: The state weight
        :param r: The input weight
        :return: The generated model
        """
        return cls([[a]], [[b]], [[s]], [[r]], 1)

    @property
    def size(self) -> int:
        """
        :return: The dimension of the global state vector (nL)
        """
        return self.agents * self.state_dim

    @property
    def inputs(self) -> int:
        """
        :return: The dimension of the global input vector (mL)
        """
        return self.agents * self.input_dim

    def _validate(self):
        """
        Checks dimensions, symmetry and definiteness of the matrices
        :return: None
        :raises InvalidDimensions: If any check fails
        """
        nl, ml = self.size, self.inputs
        for name, matrix, shape in [
            ("A", self.a, (nl, nl)),
            ("B", self.b, (nl, ml)),
            ("S", self.s, (nl, nl)),
            ("R", self.r, (ml, ml))
        ]:
            if matrix.shape != shape:
                raise InvalidDimensions(name, shape, matrix.shape)
            if not np.all(np.isfinite(matrix)):
                raise InvalidDimensions(name, "finite entries", "non-finite")

        for name, matrix in [("S", self.s), ("R", self.r)]:
            if not np.allclose(matrix, matrix.T):
                raise InvalidDimensions(name, "symmetric", "asymmetric")
            if np.min(np.linalg.eigvalsh(matrix)) < -self.PSD_TOLERANCE:
                raise InvalidDimensions(
                    name, "positive semi-definite", "negative eigenvalue"
                )

    def check_state(self, x: np.ndarray) -> np.ndarray:
        """
        Converts a state vector into a float array of the correct size
        :param x: The state vector
        :return: The state as numpy array
        :raises InvalidDimensions: If the size does not match nL
        """
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.shape[0] != self.size:
            raise InvalidDimensions("state", self.size, x.shape[0])
        return x

    def check_input(self, u: np.ndarray) -> np.ndarray:
        """
        Converts an input vector into a float array of the correct size
        :param u: The input vector
        :return: The input as numpy array
        :raises InvalidDimensions: If the size does not match mL
        """
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.shape[0] != self.inputs:
            raise InvalidDimensions("input", self.inputs, u.shape[0])
        return u

    def step_global(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """
        Advances the global state by one discrete time step
        :param x: The global state X(t)
        :param u: The global input U(t)
        :return: X(t+1) = AX(t) + BU(t)
        """
        return self.a @ self.check_state(x) + self.b @ self.check_input(u)

    def stage_cost(self, x: np.ndarray, u: np.ndarray) -> float:
        """
        Calculates the quadratic stage cost
        :param x: The global state
        :param u: The global input
        :return: X'SX + U'RU
        """
        x = self.check_state(x)
        u = self.check_input(u)
        return float(x @ self.s @ x + u @ self.r @ u)

    def state_slice(self, agent: int) -> slice:
        """
        :param agent: The agent id (1..L)
        :return: The slice of the global state owned by the agent
        """
        self._check_agent(agent)
        start = (agent - 1) * self.state_dim
        return slice(start, start + self.state_dim)

    def input_slice(self, agent: int) -> slice:
        """
        :param agent: The agent id (1..L)
        :return: The slice of the global input owned by the agent
        """
        self._check_agent(agent)
        start = (agent - 1) * self.input_dim
        return slice(start, start + self.input_dim)

    def agent_weights(self, agent: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Provides the weights used for an agent's reward. Every agent
        weighs the complete global state with S and its own input with
        the diagonal block of R.
        :param agent: The agent id (1..L)
        :return: A tuple (S_l, R_l)
        """
        rows = self.input_slice(agent)
        return self.s, self.r[rows, rows]

    def _check_agent(self, agent: int):
        """
        :param agent: The agent id to check
        :return: None
        :raises InvalidDimensions: If the agent id is out of range
        """
        if not 1 <= agent <= self.agents:
            raise InvalidDimensions(
                "agent id", "1..{}".format(self.agents), agent
            )
