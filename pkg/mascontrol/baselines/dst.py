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
from typing import List, Optional
from mascontrol.baselines.HMatrix import HMatrix
from mascontrol.exceptions import \
    ExtractionFailure, FitDivergence, InvalidConfiguration, \
    InvalidDimensions

logger = logging.getLogger(__name__)

LSTSQ_LIMIT = 5000
"""Datasets smaller than this are solved exactly"""

DIVERGENCE_STEPS = 100
"""Consecutive residual increases that count as divergence"""


def basis_length(size: int) -> int:
    """
    :param size: The length of v = [z; u]
    :return: The number of quadratic monomials of v
    """
    return size * (size + 1) // 2


def quadratic_basis(z: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    Lists all degree-two monomials v_i * v_j, i <= j, of v = [z; u] in
    lexicographic order of (i, j)
    :param z: The state part
    :param u: The input part
    :return: The monomial vector
    """
    v = np.concatenate([np.atleast_1d(np.asarray(z, dtype=float)),
                        np.atleast_1d(np.asarray(u, dtype=float))])
    rows, cols = np.triu_indices(v.shape[0])
    return v[rows] * v[cols]


class ThetaFit:
    """
    Class that models the outcome of a Q-function regression
    """

    def __init__(self, theta: np.ndarray, residual: float, method: str,
                 residuals: Optional[List[float]] = None):
        """
        Initializes the ThetaFit object
        :param theta: The coefficient vector
        :param residual: The final mean squared residual
        :param method: lstsq or gradient
        :param residuals: The residual after every gradient pass
        """
        self.theta = theta
        self.residual = residual
        self.method = method
        self.residuals = [] if residuals is None else residuals


def fit_theta(
        basis_now: np.ndarray,
        basis_next: np.ndarray,
        costs: np.ndarray,
        method: str = "auto",
        step_size: float = 1e-3,
        passes: int = 10000
) -> ThetaFit:
    """
    Fits theta so that (y(t) - y(t+1)) theta matches the stage costs c(t)
    in the least squares sense. Small datasets are solved exactly,
    large ones by gradient descent on the mean squared residual.
    At least as many samples as coefficients are needed for a unique
    solution.
    :param basis_now: The monomials y(t), one row per sample
    :param basis_next: The monomials y(t+1), one row per sample
    :param costs: The stage costs c(t)
    :param method: auto, lstsq or gradient
    :param step_size: The gradient descent step size
    :param passes: The number of gradient descent passes
    :return: The fit
    :raises FitDivergence: If the residual grows for 100 consecutive
                           gradient passes
    """
    design = np.atleast_2d(basis_now) - np.atleast_2d(basis_next)
    costs = np.asarray(costs, dtype=float).ravel()
    if design.shape[0] != costs.shape[0]:
        raise InvalidDimensions("costs", design.shape[0], costs.shape[0])
    if method == "auto":
        method = "lstsq" if design.shape[0] < LSTSQ_LIMIT else "gradient"

    if method == "lstsq":
        theta = np.linalg.lstsq(design, costs, rcond=None)[0]
        residual = float(np.mean((design @ theta - costs) ** 2))
        return ThetaFit(theta, residual, method)
    elif method != "gradient":
        raise InvalidConfiguration("method", "unknown solver " + method)

    samples = design.shape[0]
    theta = np.zeros(design.shape[1])
    residuals = []  # type: List[float]
    growing = 0
    for _ in range(passes):
        error = design @ theta - costs
        residual = float(np.mean(error ** 2))
        if residuals and residual > residuals[-1]:
            growing += 1
        else:
            growing = 0
        residuals.append(residual)
        if growing >= DIVERGENCE_STEPS or not np.isfinite(residual):
            raise FitDivergence(residuals[-DIVERGENCE_STEPS - 1:])
        theta = theta - step_size * 2.0 * design.T @ error / samples

    residual = float(np.mean((design @ theta - costs) ** 2))
    residuals.append(residual)
    logger.debug("Gradient fit finished with residual {:.3e}".format(
        residual
    ))
    return ThetaFit(theta, residual, method, residuals)


def theta_to_H(theta: np.ndarray, state_size: Optional[int] = None) \
        -> HMatrix:
    """
    Builds the symmetric matrix H with v'Hv = quadratic_basis(v) theta.
    Diagonal entries take theta_ii, off-diagonal entries theta_ij / 2.
    :param theta: The coefficient vector
    :param state_size: The length of z; defaults to all but one entry
    :return: The matrix
    """
    theta = np.asarray(theta, dtype=float).ravel()
    size = int(round((np.sqrt(8 * theta.shape[0] + 1) - 1) / 2))
    if basis_length(size) != theta.shape[0]:
        raise InvalidDimensions(
            "theta", "a triangular number of entries", theta.shape[0]
        )
    rows, cols = np.triu_indices(size)
    matrix = np.zeros((size, size))
    matrix[rows, cols] = theta
    matrix = 0.5 * (matrix + matrix.T)
    return HMatrix(matrix, size - 1 if state_size is None else state_size)


def H_to_theta(h: HMatrix) -> np.ndarray:
    """
    :param h: The matrix
    :return: The coefficient vector with v'Hv = quadratic_basis(v) theta
    """
    rows, cols = np.triu_indices(h.size)
    return np.where(rows == cols, 1.0, 2.0) * h.matrix[rows, cols]


def dst_gain(h: HMatrix) -> np.ndarray:
    """
    Extracts the minimizing linear policy u = K z of the Q-function,
    K = -H22^-1 H21
    :param h: The Q-function matrix
    :return: K
    :raises ExtractionFailure: If H22 is singular
    """
    try:
        gain = -np.linalg.solve(h.h22, h.h21)
    except np.linalg.LinAlgError:
        raise ExtractionFailure("H22 is singular")
    if not np.all(np.isfinite(gain)):
        raise ExtractionFailure("H22 is singular")
    return gain
