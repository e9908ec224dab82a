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
from mascontrol.network.Route import Route


def transmit(x: np.ndarray, route: Route, rng: np.random.Generator) \
        -> np.ndarray:
    """
    Sends a state sub-vector along a route. Every link adds an independent
    Gaussian draw with its own mean and variance, drawn fresh for every
    transmission and component.
    :param x: The sender's state sub-vector
    :param route: The route from the sender to the receiver
    :param rng: The random number generator
    :return: The received value y
    """
    y = np.array(x, dtype=float, ndmin=1)
    for noise in route.noises:
        y = y + rng.normal(noise.mu, noise.std, size=y.shape)
    return y


def debias(y: np.ndarray, mu_total: float) -> np.ndarray:
    """
    Removes the accumulated mean of the route noise
    :param y: The received value
    :param mu_total: The summed link means of the route
    :return: y - mu_total
    """
    return np.asarray(y, dtype=float) - mu_total
