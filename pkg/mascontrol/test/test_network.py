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

import unittest
import networkx as nx
import numpy as np
from mascontrol.exceptions import \
    DisconnectedGraph, InvalidConfiguration, InvalidGraph, UnknownNode
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.network.NetworkGraph import NetworkGraph
from mascontrol.network.Route import Route, aggregate_route_noise, route_cost
from mascontrol.network.RoutingTable import compute_routes


def example_graph() -> NetworkGraph:
    """
    Six agents where agent 1 reaches agent 4 directly, over agent 2,
    over agents 2 and 3 or over agents 6 and 5
    :return: The graph
    """
    return NetworkGraph(6, [
        (1, 4, LinkNoise(0.0, 0.05)),
        (1, 2, LinkNoise(-0.02, 0.02)),
        (2, 4, LinkNoise(0.01, 0.01)),
        (2, 3, LinkNoise(0.0, 0.02)),
        (3, 4, LinkNoise(0.0, 0.01)),
        (1, 6, LinkNoise(0.0, 0.01)),
        (6, 5, LinkNoise(0.0, 0.006)),
        (5, 4, LinkNoise(0.0, 0.006))
    ])


def random_graph(rng: np.random.Generator) -> NetworkGraph:
    """
    :param rng: The random number generator
    :return: A random connected graph with 2 to 7 nodes
    """
    nodes = int(rng.integers(2, 8))
    edges = set()
    for node in range(2, nodes + 1):
        edges.add((int(rng.integers(1, node)), node))
    for _ in range(int(rng.integers(0, nodes * 2))):
        pair = rng.choice(nodes, 2, replace=False) + 1
        u, v = sorted(int(n) for n in pair)
        edges.add((u, v))
    return NetworkGraph(nodes, [
        (u, v, LinkNoise(rng.uniform(-0.1, 0.1), rng.uniform(0.0, 0.1)))
        for u, v in sorted(edges)
    ])


class TestNetworkGraph(unittest.TestCase):
    """
    Tests graph construction and neighborhoods
    """

    def test_neighbors(self):
        """
        Tests the neighbor sets of a small graph
        :return: None
        """
        graph = NetworkGraph(6, [(1, 2, None), (2, 3, None), (2, 6, None),
                                 (3, 4, None), (4, 5, None)])
        self.assertEqual(graph.neighbors(2), {1, 3, 6})
        self.assertEqual(graph.neighbors(5), {4})
        with self.assertRaises(UnknownNode):
            graph.neighbors(7)

    def test_complete_graph(self):
        """
        Tests that every node of a complete graph neighbors all others
        :return: None
        """
        graph = NetworkGraph(5, [(u + 1, v + 1, None) for u, v in
                                 nx.complete_graph(5).edges])
        for node in graph.nodes:
            self.assertEqual(len(graph.neighbors(node)), 4)

    def test_invalid_graphs(self):
        """
        Tests that disconnected graphs, self-loops and duplicate edges
        are rejected
        :return: None
        """
        with self.assertRaises(DisconnectedGraph):
            NetworkGraph(3, [(1, 2, None)])
        with self.assertRaises(InvalidGraph):
            NetworkGraph(2, [(1, 1, None), (1, 2, None)])
        with self.assertRaises(InvalidGraph):
            NetworkGraph(2, [(1, 2, None), (2, 1, None)])
        with self.assertRaises(UnknownNode):
            NetworkGraph(2, [(1, 3, None)])

    def test_link_noise(self):
        """
        Tests that link noise is shared by both directions and validated
        :return: None
        """
        graph = example_graph()
        self.assertEqual(graph.noise(1, 2), graph.noise(2, 1))
        with self.assertRaises(InvalidConfiguration):
            LinkNoise(0.0, -0.1)


class TestRoutes(unittest.TestCase):
    """
    Tests route costs, noise aggregation and the routing table
    """

    def test_route_cost(self):
        """
        Tests the route costs of the direct and the three-hop route
        :return: None
        """
        graph = example_graph()
        direct = Route(4, 1, [1, 4], [graph.noise(1, 4)])
        self.assertAlmostEqual(route_cost(direct, 1.0), 1.05)
        self.assertEqual(route_cost(direct, 0.0), 1.0)
        detour = Route(4, 1, [1, 6, 5, 4], [graph.noise(1, 6),
                                            graph.noise(6, 5),
                                            graph.noise(5, 4)])
        self.assertAlmostEqual(detour.cost(500.0), 14.0)
        self.assertEqual(detour.cost(0.0), 3.0)
        self.assertEqual(detour.delay, 2)

    def test_invalid_routes(self):
        """
        Tests that negative lambdas and malformed paths are rejected
        :return: None
        """
        graph = example_graph()
        direct = Route(4, 1, [1, 4], [graph.noise(1, 4)])
        with self.assertRaises(InvalidConfiguration):
            route_cost(direct, -0.5)
        with self.assertRaises(InvalidConfiguration):
            compute_routes(graph, -1.0)
        with self.assertRaises(InvalidGraph):
            Route(4, 1, [1, 2, 1, 4], [graph.noise(1, 2)] * 3)
        with self.assertRaises(InvalidGraph):
            Route(4, 1, [1, 4], [])

    def test_aggregate_route_noise(self):
        """
        Tests the summed moments of a two-hop route and of a self-route
        :return: None
        """
        graph = example_graph()
        mu, sigma2 = aggregate_route_noise([graph.noise(1, 2),
                                            graph.noise(2, 4)])
        self.assertAlmostEqual(mu, -0.01)
        self.assertAlmostEqual(sigma2, 0.03)
        self.assertEqual(aggregate_route_noise([]), (0.0, 0.0))

    def test_lambda_selects_route(self):
        """
        Tests that increasing lambda trades hops for lower noise
        :return: None
        """
        graph = example_graph()
        for lam, nodes, cost in [(1.0, [1, 4], 1.05),
                                 (100.0, [1, 2, 4], 5.0),
                                 (500.0, [1, 6, 5, 4], 14.0)]:
            table = compute_routes(graph, lam)
            route = table.route(4, 1)
            self.assertEqual(route.nodes, nodes)
            self.assertAlmostEqual(table.cost(4, 1), cost)
            self.assertEqual(route.delay, len(nodes) - 2)

    def test_self_route(self):
        """
        Tests that every agent reaches itself without links
        :return: None
        """
        table = compute_routes(example_graph(), 1.0)
        for agent in table.agents:
            route = table.route(agent, agent)
            self.assertEqual(route.hops, 0)
            self.assertEqual(route.delay, 0)
            self.assertEqual((route.mu_total, route.sigma2_total),
                             (0.0, 0.0))

    def test_two_nodes(self):
        """
        Tests that a single link is used in both directions
        :return: None
        """
        table = compute_routes(NetworkGraph(2, [(1, 2, None)]), 7.0)
        self.assertEqual(table.route(1, 2).nodes, [2, 1])
        self.assertEqual(table.route(2, 1).nodes, [1, 2])

    def test_optimal_against_brute_force(self):
        """
        Tests the routing table against an enumeration of all simple paths
        :return: None
        """
        rng = np.random.default_rng(7)
        for _ in range(100):
            graph = random_graph(rng)
            for lam in [0.0, 1.0, 100.0]:
                table = compute_routes(graph, lam)
                for receiver in graph.nodes:
                    for sender in graph.nodes:
                        if sender == receiver:
                            continue
                        best = min(
                            sum(1.0 + lam * graph.noise(u, v).sigma2
                                for u, v in zip(path[:-1], path[1:]))
                            for path in nx.all_simple_paths(
                                graph.graph, sender, receiver
                            )
                        )
                        self.assertAlmostEqual(
                            table.cost(receiver, sender), best, places=9
                        )

    def test_symmetric_routes(self):
        """
        Tests that both directions of a pair travel the same path
        :return: None
        """
        rng = np.random.default_rng(8)
        for _ in range(20):
            graph = random_graph(rng)
            table = compute_routes(graph, 100.0)
            for receiver in graph.nodes:
                for sender in graph.nodes:
                    forward = table.route(receiver, sender)
                    backward = table.route(sender, receiver)
                    self.assertEqual(forward.nodes,
                                     list(reversed(backward.nodes)))
                    self.assertEqual(forward.delay, forward.hops - 1
                                     if forward.hops > 0 else 0)

    def test_hops_grow_with_lambda(self):
        """
        Tests that the hop count of the chosen route never shrinks as
        lambda grows
        :return: None
        """
        graph = example_graph()
        hops = [compute_routes(graph, lam).route(4, 1).hops
                for lam in [0.0, 1.0, 50.0, 100.0, 300.0, 500.0, 1000.0]]
        self.assertEqual(hops, sorted(hops))
