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

import heapq
import logging
from typing import Dict, Tuple
from mascontrol.network.NetworkGraph import NetworkGraph
from mascontrol.network.Route import Route
from mascontrol.exceptions import InvalidConfiguration, UnknownNode

Label = Tuple[float, int, Tuple[int, ...]]

TIE_TOLERANCE = 1e-12
"""
Relative tolerance under which two route costs count as equal
"""


def _precedes(candidate: Label, current: Label) -> bool:
    """
    Orders two search labels (cost, hops, nodes). Equal costs prefer
    fewer hops, then the lexicographically smallest node sequence.
    :param candidate: The new label
    :param current: The label it competes with
    :return: Whether the candidate is strictly better
    """
    scale = max(1.0, abs(current[0]))
    if abs(candidate[0] - current[0]) > TIE_TOLERANCE * scale:
        return candidate[0] < current[0]
    return (candidate[1], candidate[2]) < (current[1], current[2])


def _search(graph: NetworkGraph, source: int, lam: float) \
        -> Dict[int, Label]:
    """
    Single-source noise-aware Dijkstra search. Link weights are
    1 + lambda * sigma2 >= 1, so every settled label is a simple path.
    :param graph: The communication graph
    :param source: The start node
    :param lam: The weight of the noise term
    :return: The best label for every node
    """
    best = {source: (0.0, 0, (source,))}  # type: Dict[int, Label]
    queue = [best[source]]
    settled = set()

    while queue:
        label = heapq.heappop(queue)
        node = label[2][-1]
        if node in settled or best[node] != label:
            continue
        settled.add(node)

        for neighbor in sorted(graph.neighbors(node)):
            if neighbor in settled:
                continue
            weight = 1.0 + lam * graph.noise(node, neighbor).sigma2
            candidate = (label[0] + weight, label[1] + 1,
                         label[2] + (neighbor,))
            if neighbor not in best or _precedes(candidate, best[neighbor]):
                best[neighbor] = candidate
                heapq.heappush(queue, candidate)

    return best


class RoutingTable:
    """
    Class that holds, for every receiving agent, the lambda-optimal route
    to every sending agent
    """

    def __init__(self, routes: Dict[int, Dict[int, Route]], lam: float):
        """
        Initializes the RoutingTable object
        :param routes: Mapping receiver -> sender -> route
        :param lam: The noise weight the routes were optimized for
        """
        self.routes = routes
        self.lam = lam
        self.logger = logging.getLogger(self.__class__.__name__)

    @classmethod
    def compute(cls, graph: NetworkGraph, lam: float) -> "RoutingTable":
        """
        Computes all routes of a graph. Both directions of an agent pair
        share one path, found by the search rooted at the smaller id.
        :param graph: The connected communication graph
        :param lam: The weight of the noise term, lambda >= 0
        :return: The routing table
        :raises InvalidConfiguration: If lambda is negative
        """
        if lam < 0:
            raise InvalidConfiguration("lambda", "must not be negative")

        trees = {node: _search(graph, node, lam) for node in graph.nodes}
        routes = {}  # type: Dict[int, Dict[int, Route]]

        for receiver in graph.nodes:
            routes[receiver] = {}
            for sender in graph.nodes:
                root, other = min(sender, receiver), max(sender, receiver)
                path = list(trees[root][other][2])
                if path[0] != sender:
                    path.reverse()
                noises = [
                    graph.noise(u, v) for u, v in zip(path[:-1], path[1:])
                ]
                routes[receiver][sender] = Route(
                    receiver, sender, path, noises
                )

        table = cls(routes, lam)
        table.logger.debug("Computed routes for lambda={}".format(lam))
        for receiver in graph.nodes:
            for sender, route in sorted(routes[receiver].items()):
                table.logger.debug("{} <- {}: {}".format(
                    receiver, sender, route
                ))
        return table

    @property
    def agents(self):
        """
        :return: The sorted agent ids
        """
        return sorted(self.routes)

    def route(self, receiver: int, sender: int) -> Route:
        """
        :param receiver: The receiving agent
        :param sender: The sending agent
        :return: The route from the sender to the receiver
        :raises UnknownNode: If either agent is unknown
        """
        if receiver not in self.routes:
            raise UnknownNode(receiver)
        if sender not in self.routes[receiver]:
            raise UnknownNode(sender)
        return self.routes[receiver][sender]

    def routes_for(self, receiver: int) -> Dict[int, Route]:
        """
        :param receiver: The receiving agent
        :return: Mapping sender -> route for that receiver
        """
        if receiver not in self.routes:
            raise UnknownNode(receiver)
        return dict(self.routes[receiver])

    def cost(self, receiver: int, sender: int) -> float:
        """
        :param receiver: The receiving agent
        :param sender: The sending agent
        :return: The routing cost J of the stored route
        """
        return self.route(receiver, sender).cost(self.lam)

    def delays(self, receiver: int) -> Dict[int, int]:
        """
        :param receiver: The receiving agent
        :return: Mapping sender -> relative timing offset d
        """
        return {
            sender: route.delay
            for sender, route in self.routes_for(receiver).items()
        }

    def max_delay(self, receiver: int) -> int:
        """
        :param receiver: The receiving agent
        :return: The largest timing offset D of the receiver
        """
        return max(self.delays(receiver).values())


def compute_routes(graph: NetworkGraph, lam: float) -> RoutingTable:
    """
    Runs the noise-aware routing for every agent of a graph
    :param graph: The connected communication graph
    :param lam: The weight of the noise term
    :return: The routing table
    :raises InvalidConfiguration: If lambda is negative
    """
    return RoutingTable.compute(graph, lam)
