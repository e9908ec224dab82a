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

import math
from mascontrol.exceptions import InvalidConfiguration


class LinkNoise:
    """
    Class that models the non-zero-mean Gaussian noise of a single
    undirected link. Both directions of a link share the same statistics.
    """

    def __init__(self, mu: float = 0.0, sigma2: float = 0.0):
        """
        Initializes the LinkNoise object
        :param mu: The noise mean
        :param sigma2: The noise variance
        :raises InvalidConfiguration: If the variance is negative or values
                            are not finite
        """
        if not (math.isfinite(mu) and math.isfinite(sigma2)):
            raise InvalidConfiguration("noise", "must be finite")
        if sigma2 < 0:
            raise InvalidConfiguration("noise.sigma2", "must not be negative")
        self.mu = float(mu)
        self.sigma2 = float(sigma2)

    @property
    def std(self) -> float:
        """
        :return: The standard deviation of the noise
        """
        return math.sqrt(self.sigma2)

    def __eq__(self, other: object) -> bool:
        """
        :param other: The object to compare with
        :return: Whether both links have identical statistics
        """
        if not isinstance(other, LinkNoise):
            return NotImplemented
        return self.mu == other.mu and self.sigma2 == other.sigma2

    def __hash__(self) -> int:
        """
        :return: A hash of the statistics
        """
        return hash((self.mu, self.sigma2))

    def __repr__(self) -> str:
        """
        :return: A string representation of the noise
        """
        return "N({}, {})".format(self.mu, self.sigma2)
