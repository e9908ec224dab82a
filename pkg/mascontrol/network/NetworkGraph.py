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

import networkx as nx
from typing import Iterable, List, Optional, Set, Tuple, Callable
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.exceptions import InvalidGraph, DisconnectedGraph, UnknownNode

EdgeSpec = Tuple[int, int, Optional[LinkNoise]]


class NetworkGraph:
    """
    Class that models the static, undirected and connected communication
    graph between agents 1..L. Every edge carries its LinkNoise.
    """

    def __init__(self, nodes: int, edges: Iterable[EdgeSpec]):
        """
        Initializes the graph and checks its structure
        :param nodes: The number of agents L
        :param edges: Tuples (u, v, noise); a noise of None means a
                      noiseless link
        :raises InvalidGraph: On self-loops, duplicate edges or
                              unknown node ids
        :raises DisconnectedGraph: If the graph is not connected
        """
        if nodes < 1:
            raise InvalidGraph("a graph needs at least one node")

        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(1, nodes + 1))

        for u, v, noise in edges:
            for node in (u, v):
                if node not in self.graph:
                    raise UnknownNode(node)
            if u == v:
                raise InvalidGraph("self-loop at node {}".format(u))
            if self.graph.has_edge(u, v):
                raise InvalidGraph("duplicate edge {}-{}".format(u, v))
            self.graph.add_edge(
                u, v, noise=LinkNoise() if noise is None else noise
            )

        if not nx.is_connected(self.graph):
            raise DisconnectedGraph(
                nx.number_connected_components(self.graph)
            )

    @property
    def size(self) -> int:
        """
        :return: The number of agents L
        """
        return self.graph.number_of_nodes()

    @property
    def nodes(self) -> List[int]:
        """
        :return: The sorted node ids
        """
        return sorted(self.graph.nodes)

    def edges(self) -> List[Tuple[int, int, LinkNoise]]:
        """
        :return: All edges as (u, v, noise) with u < v, sorted
        """
        return sorted(
            (min(u, v), max(u, v), data["noise"])
            for u, v, data in self.graph.edges(data=True)
        )

    def noise(self, u: int, v: int) -> LinkNoise:
        """
        :param u: One end of the link
        :param v: The other end of the link
        :return: The link's noise statistics
        :raises InvalidGraph: If the nodes share no edge
        """
        if not self.graph.has_edge(u, v):
            raise InvalidGraph("no edge {}-{}".format(u, v))
        return self.graph.edges[u, v]["noise"]

    def neighbors(self, node: int) -> Set[int]:
        """
        :param node: The agent id
        :return: The ids of all agents sharing an edge with the node
        :raises UnknownNode: If the node is not part of the graph
        """
        if node not in self.graph:
            raise UnknownNode(node)
        return set(self.graph.neighbors(node))

    def with_noise(self, assign: Callable[[int, int], LinkNoise]) \
            -> "NetworkGraph":
        """
        Generates a copy of the graph with new link noise
        :param assign: Function mapping an edge (u, v), u < v,
                       to its noise
        :return: The new graph
        """
        return NetworkGraph(
            self.size,
            [(u, v, assign(u, v)) for u, v, _ in self.edges()]
        )

    def __str__(self) -> str:
        """
        :return: A string representation of the graph
        """
        return "NetworkGraph({} nodes, {} edges)".format(
            self.size, self.graph.number_of_edges()
        )
