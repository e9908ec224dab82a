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
from typing import Union
from mascontrol.exceptions import InvalidDimensions


def immediate_reward(
        x: np.ndarray,
        u: np.ndarray,
        s: np.ndarray,
        r: np.ndarray
) -> float:
    """
    r = -x'Sx - u'Ru
    :param x: The (estimated) global state
    :param u: The input the weight r belongs to
    :param s: The state weight
    :param r: The input weight
    :return: The reward, non-positive for PSD weights
    """
    x = np.array(x, dtype=float, ndmin=1)
    u = np.array(u, dtype=float, ndmin=1)
    if s.shape != (x.shape[0], x.shape[0]):
        raise InvalidDimensions("state weight", (x.shape[0],) * 2, s.shape)
    if r.shape != (u.shape[0], u.shape[0]):
        raise InvalidDimensions("input weight", (u.shape[0],) * 2, r.shape)
    return -float(x @ s @ x) - float(u @ r @ u)


def pessimistic_q(q1: Union[float, np.ndarray],
                  q2: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    :param q1: The estimate of the first critic
    :param q2: The estimate of the second critic
    :return: The element-wise minimum
    """
    return np.minimum(q1, q2)
