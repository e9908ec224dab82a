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
from typing import Deque, Optional
from mascontrol.exceptions import InvalidConfiguration


class EmaChannelState:
    """
    Class that holds the filter state of one (receiver, sender) channel:
    the last refined value, a rolling window of refined-value differences
    and the adaptive smoothing coefficient beta.
    """

    def __init__(
            self,
            mu_total: float,
            sigma2_total: float,
            window: int = 10,
            beta_min: float = 0.05,
            beta_max: float = 0.95
    ):
        """
        Initializes the channel state
        :param mu_total: The accumulated noise mean of the route
        :param sigma2_total: The accumulated noise variance of the route
        :param window: The number of differences W kept for the variance
        :param beta_min: The lower clamp of beta
        :param beta_max: The upper clamp of beta
        :raises InvalidConfiguration: If the beta bounds are not within
                                      (0, 1] or the window is empty
        """
        if not 0.0 < beta_min <= beta_max <= 1.0:
            raise InvalidConfiguration(
                "beta_min", "bounds must satisfy 0 < min <= max <= 1")
        if window < 1:
            raise InvalidConfiguration(
                "ema_window", "must hold at least one difference")
        self.mu_total = mu_total
        self.sigma2_total = sigma2_total
        self.beta_min = beta_min
        self.beta_max = beta_max
        self.window = deque(maxlen=window)  # type: Deque[np.ndarray]
        self.previous = None  # type: Optional[np.ndarray]
        self.beta = beta_max

    def reset(self):
        """
        Forgets all filter history
        :return: None
        """
        self.window.clear()
        self.previous = None
        self.beta = self.beta_max

    def difference_variance(self) -> float:
        """
        Unbiased variance of the windowed differences, averaged over the
        vector components. Fewer than two differences count as zero.
        :return: The variance estimate sigma2_x
        """
        if len(self.window) < 2:
            return 0.0
        samples = np.vstack(list(self.window))
        return float(np.mean(np.var(samples, axis=0, ddof=1)))

    def adapt_beta(self) -> float:
        """
        Selects beta from the ratio of signal variance to total variance
        and stores it for the next refinement step
        :return: The clamped beta
        """
        if len(self.window) < 2:
            self.beta = self.beta_max
            return self.beta

        sigma2_x = self.difference_variance()
        denominator = sigma2_x + self.sigma2_total
        if denominator <= 0.0:
            beta = self.beta_max
        else:
            beta = sigma2_x / denominator
        self.beta = float(min(max(beta, self.beta_min), self.beta_max))
        return self.beta

    def ema_refine(self, y_bar: np.ndarray) -> np.ndarray:
        """
        Applies one exponential moving average step with the stored beta.
        The very first value passes through unfiltered.
        :param y_bar: The debiased observation
        :return: The refined value
        """
        y_bar = np.array(y_bar, dtype=float, ndmin=1)
        if self.previous is None:
            refined = y_bar
        else:
            refined = self.beta * y_bar + (1.0 - self.beta) * self.previous
            self.window.append(refined - self.previous)
        self.previous = refined
        return refined


def adapt_beta(state: EmaChannelState) -> float:
    """
    :param state: The channel state
    :return: The new beta of the channel
    """
    return state.adapt_beta()


def ema_refine(state: EmaChannelState, y_bar: np.ndarray) -> np.ndarray:
    """
    :param state: The channel state
    :param y_bar: The debiased observation
    :return: The refined value
    """
    return state.ema_refine(y_bar)
