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
from typing import Tuple
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.RiccatiSolution import RiccatiSolution
from mascontrol.dynamics.Trajectory import Trajectory
from mascontrol.exceptions import \
    ConvergenceFailure, InvalidConfiguration, InvalidDimensions, \
    NumericalError

logger = logging.getLogger(__name__)


def _riccati_map(model: MasModel, p: np.ndarray) \
        -> Tuple[np.ndarray, np.ndarray]:
    """
    Applies the right hand side of the Riccati equation once
    :param model: The plant model
    :param p: The current iterate P
    :return: A tuple of the next iterate and the gain belonging to P
    :raises NumericalError: If R + B'PB is singular
    """
    a, b = model.a, model.b
    pa = p @ a
    gram = model.r + b.T @ p @ b
    try:
        gain = np.linalg.solve(gram, b.T @ pa)
    except np.linalg.LinAlgError:
        raise NumericalError("R + B'PB is singular")
    nxt = a.T @ pa - a.T @ p @ b @ gain + model.s
    return 0.5 * (nxt + nxt.T), gain


def solve_dare(
        model: MasModel,
        tol: float = 1e-12,
        max_iter: int = 100000
) -> RiccatiSolution:
    """
    Solves the discrete-time algebraic Riccati equation by value iteration,
    starting from P = S. (A, B) is assumed to be stabilizable.
    :param model: The plant model
    :param tol: The tolerance on the Frobenius norm of the equation defect
    :param max_iter: The maximum number of iterations
    :return: The Riccati solution, including the optimal gain
    :raises ConvergenceFailure: If the tolerance is not reached
    :raises NumericalError: If R + B'PB becomes singular
    :raises InvalidConfiguration: If the tolerance is not positive
    """
    if tol <= 0:
        raise InvalidConfiguration("tol", "must be positive")

    p = model.s.copy()
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        nxt, gain = _riccati_map(model, p)
        residual = float(np.linalg.norm(p - nxt, "fro"))
        if not np.isfinite(residual):
            break
        if residual < tol:
            logger.debug("DARE converged after {} iterations".format(
                iteration
            ))
            return RiccatiSolution(
                p,
                GainMatrix(gain, model.agents, model.state_dim,
                           model.input_dim),
                residual,
                iteration
            )
        p = nxt

    raise ConvergenceFailure(residual, max_iter)


def spectral_radius(matrix: np.ndarray) -> float:
    """
    Calculates the largest eigenvalue magnitude of a square matrix
    :param matrix: The matrix
    :return: max |eig(M)|
    :raises InvalidDimensions: If the matrix is not square or not finite
    """
    matrix = np.array(matrix, dtype=float, ndmin=2)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidDimensions("matrix", "square", matrix.shape)
    if not np.all(np.isfinite(matrix)):
        raise InvalidDimensions("matrix", "finite entries", "non-finite")
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


def rollout(
        model: MasModel,
        gain: GainMatrix,
        x0: np.ndarray,
        horizon: int,
        blowup_threshold: float = 1e3
) -> Trajectory:
    """
    Simulates the closed loop under U = -KX with exact state knowledge.
    The simulation is truncated as soon as the max-norm of the state
    exceeds the blow-up threshold.
    :param model: The plant model
    :param gain: The feedback gain
    :param x0: The initial state
    :param horizon: The number of steps T
    :param blowup_threshold: The max-norm that counts as blow-up
    :return: The recorded trajectory
    :raises InvalidConfiguration: On a negative horizon or threshold
    """
    if horizon < 0:
        raise InvalidConfiguration("horizon", "must not be negative")
    if blowup_threshold <= 0:
        raise InvalidConfiguration("blowup_threshold", "must be positive")

    x = model.check_state(x0)
    states = [x]
    inputs = []
    costs = []
    blown = bool(np.max(np.abs(x)) > blowup_threshold)

    while not blown and len(inputs) < horizon:
        u = gain.control(x)
        costs.append(model.stage_cost(x, u))
        inputs.append(u)
        x = model.step_global(x, u)
        states.append(x)
        blown = bool(np.max(np.abs(x)) > blowup_threshold)

    return Trajectory(states, inputs, costs, blown)
