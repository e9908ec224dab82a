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
from typing import List
from mascontrol.exceptions import InvalidConfiguration


class AdamOptimizer:
    """
    Adaptive moment estimation for a fixed list of numpy parameter arrays.
    The arrays are updated in place.
    """

    def __init__(
            self,
            params: List[np.ndarray],
            lr: float = 1e-4,
            beta1: float = 0.9,
            beta2: float = 0.999,
            eps: float = 1e-8
    ):
        """
        Initializes the optimizer
        :param params: The parameter arrays to optimize
        :param lr: The learning rate
        :param beta1: The decay of the first moment
        :param beta2: The decay of the second moment
        :param eps: Added to the root of the second moment
        :raises InvalidConfiguration: If the learning rate is not positive
        """
        if lr <= 0:
            raise InvalidConfiguration("learning_rate", "must be positive")
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, grads: List[np.ndarray], lr_scale: float = 1.0):
        """
        Applies one descent step
        :param grads: The gradients, ordered like the parameters
        :param lr_scale: Factor applied to the learning rate
        :return: None
        """
        self.t += 1
        lr = self.lr * lr_scale
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for i, (param, grad) in enumerate(zip(self.params, grads)):
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * grad
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * grad ** 2
            m_hat = self.m[i] / correction1
            v_hat = self.v[i] / correction2
            param -= lr * m_hat / (np.sqrt(v_hat) + self.eps)
