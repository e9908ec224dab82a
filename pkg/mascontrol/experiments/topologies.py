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
import numpy as np
from typing import List, Optional, Sequence
from mascontrol.exceptions import InvalidConfiguration
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.network.NetworkGraph import NetworkGraph

TOPOLOGIES = ["line", "ring", "tree", "degree3", "explicit"]


def _degree3(agents: int) -> nx.Graph:
    """
    A ring with chords between i and i + floor(L/2). For even L this is
    the 3-regular circulant graph; for odd L one node keeps degree 2.
    """
    if agents < 4:
        return nx.cycle_graph(agents)
    half = agents // 2
    if agents % 2 == 0:
        return nx.circulant_graph(agents, [1, half])
    graph = nx.cycle_graph(agents)
    graph.add_edges_from((i, i + half) for i in range(half))
    return graph


def _tree(agents: int) -> nx.Graph:
    """
    A binary tree filled breadth-first: node k has parent floor(k / 2)
    in 1-based numbering
    """
    graph = nx.empty_graph(agents)
    graph.add_edges_from((k - 1, k // 2 - 1) for k in range(2, agents + 1))
    return graph


def make_topology(
        kind: str,
        agents: int,
        edges: Optional[Sequence[Sequence[float]]] = None
) -> NetworkGraph:
    """
    Builds a communication graph without link noise
    :param kind: line, ring, tree, degree3 or explicit
    :param agents: The number of agents L
    :param edges: The edge list for explicit graphs, entries [u, v] or
                  [u, v, mu, sigma2]; noise values are kept
    :return: The graph
    :raises InvalidConfiguration: On unknown kinds or too few agents
    """
    if kind == "explicit":
        if not edges:
            raise InvalidConfiguration(
                "network.edges", "explicit topologies need an edge list"
            )
        spec = []
        for edge in edges:
            if len(edge) not in (2, 4):
                raise InvalidConfiguration(
                    "network.edges", "expected [u, v] or [u, v, mu, sigma2]"
                )
            noise = LinkNoise(edge[2], edge[3]) if len(edge) == 4 else None
            spec.append((int(edge[0]), int(edge[1]), noise))
        return NetworkGraph(agents, spec)

    if agents < 2:
        raise InvalidConfiguration(
            "network.agents", "generated topologies need at least 2 agents"
        )
    if kind == "line":
        graph = nx.path_graph(agents)
    elif kind == "ring":
        graph = nx.cycle_graph(agents)
    elif kind == "tree":
        graph = _tree(agents)
    elif kind == "degree3":
        graph = _degree3(agents)
    else:
        raise InvalidConfiguration(
            "network.topology", "unknown topology {}, expected one of {}"
            .format(kind, TOPOLOGIES)
        )
    return NetworkGraph(
        agents, [(u + 1, v + 1, None) for u, v in graph.edges]
    )


def sample_link_noise(
        graph: NetworkGraph,
        rng: np.random.Generator,
        low: float = 0.0,
        high: float = 0.1
) -> NetworkGraph:
    """
    Draws the mean and variance of every link independently and uniformly
    from [low, high]. Both directions of a link share the values.
    :param graph: The graph
    :param rng: The random number generator
    :param low: The lower bound
    :param high: The upper bound
    :return: A copy of the graph with the sampled noise
    """
    return graph.with_noise(
        lambda u, v: LinkNoise(rng.uniform(low, high), rng.uniform(low, high))
    )


def uniform_link_noise(graph: NetworkGraph, mu: float, sigma2: float) \
        -> NetworkGraph:
    """
    :param graph: The graph
    :param mu: The mean of every link
    :param sigma2: The variance of every link
    :return: A copy of the graph with identical noise on all links
    """
    return graph.with_noise(lambda u, v: LinkNoise(mu, sigma2))


def edge_count(graph: NetworkGraph) -> int:
    """
    :param graph: The graph
    :return: The number of links
    """
    return len(graph.edges())


def degrees(graph: NetworkGraph) -> List[int]:
    """
    :param graph: The graph
    :return: The degree of every agent, ordered by id
    """
    return [len(graph.neighbors(node)) for node in graph.nodes]
