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

from typing import List, Tuple
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.exceptions import InvalidConfiguration, InvalidGraph


def aggregate_route_noise(noises: List[LinkNoise]) -> Tuple[float, float]:
    """
    Sums the noise moments of independent links along a route
    :param noises: The noise of every traversed link
    :return: A tuple (mu_total, sigma2_total)
    """
    mu = 0.0
    sigma2 = 0.0
    for noise in noises:
        mu += noise.mu
        sigma2 += noise.sigma2
    return mu, sigma2


def route_cost(route: "Route", lam: float) -> float:
    """
    Evaluates the Lagrangian routing cost, which trades the hop count
    against the accumulated link variance
    :param route: The route
    :param lam: The weight of the noise term, lambda >= 0
    :return: The sum of (1 + lambda * sigma2) over all links
    :raises InvalidConfiguration: If lambda is negative
    """
    if lam < 0:
        raise InvalidConfiguration("lambda", "must not be negative")
    cost = 0.0
    for noise in route.noises:
        cost += 1.0 + lam * noise.sigma2
    return cost


class Route:
    """
    Class that models the static route a message takes from a sender to
    a receiver. Nodes are ordered from the sender to the receiver.
    """

    def __init__(
            self,
            receiver: int,
            sender: int,
            nodes: List[int],
            noises: List[LinkNoise]
    ):
        """
        Initializes the Route object
        :param receiver: The receiving agent
        :param sender: The sending agent
        :param nodes: The traversed nodes, from sender to receiver
        :param noises: The noise of every traversed link, in order
        :raises InvalidGraph: If the nodes do not form a simple path between
                            sender and receiver
        """
        if nodes[0] != sender or nodes[-1] != receiver:
            raise InvalidGraph("route must run from sender to receiver")
        if len(set(nodes)) != len(nodes):
            raise InvalidGraph("route contains repeated nodes")
        if len(noises) != len(nodes) - 1:
            raise InvalidGraph("one noise entry per link required")
        self.receiver = receiver
        self.sender = sender
        self.nodes = list(nodes)
        self.noises = list(noises)
        self.mu_total, self.sigma2_total = aggregate_route_noise(noises)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        """
        :return: The traversed links as (from, to) pairs
        """
        return list(zip(self.nodes[:-1], self.nodes[1:]))

    @property
    def hops(self) -> int:
        """
        :return: The number of links R on the route
        """
        return len(self.noises)

    @property
    def delay(self) -> int:
        """
        Every forwarding node adds one step, direct links add none.
        :return: The relative timing offset d
        """
        return max(self.hops - 1, 0)

    def cost(self, lam: float) -> float:
        """
        :param lam: The weight of the noise term
        :return: The routing cost J of this route
        """
        return route_cost(self, lam)

    def reversed(self) -> "Route":
        """
        :return: The same path travelled in the opposite direction
        """
        return Route(
            self.sender,
            self.receiver,
            list(reversed(self.nodes)),
            list(reversed(self.noises))
        )

    def __str__(self) -> str:
        """
        :return: A string representation of the route
        """
        return "{} (mu={:.4f}, sigma2={:.4f}, d={})".format(
            "->".join(str(node) for node in self.nodes),
            self.mu_total, self.sigma2_total, self.delay
        )
