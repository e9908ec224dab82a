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
import numpy as np
from mascontrol.connection.impl.IdealConnection import IdealConnection
from mascontrol.connection.impl.RouteConnection import RouteConnection
from mascontrol.entities.RawObservation import RawObservation
from mascontrol.exceptions import \
    BufferEmpty, InvalidConfiguration, MissingSender
from mascontrol.messaging.EmaChannelState import \
    EmaChannelState, adapt_beta, ema_refine
from mascontrol.messaging.MessageNetwork import MessageNetwork
from mascontrol.messaging.RefinedGlobalState import build_refined_state
from mascontrol.messaging.TimeShiftBuffer import \
    TimeShiftBuffer, pop_reconstructed, time_shift_push
from mascontrol.messaging.transmission import debias, transmit
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.network.NetworkGraph import NetworkGraph
from mascontrol.network.Route import Route
from mascontrol.network.RoutingTable import compute_routes


def two_hop_route() -> Route:
    """
    :return: A route 1 -> 2 -> 4 with moments (-0.01, 0.03)
    """
    return Route(4, 1, [1, 2, 4], [LinkNoise(-0.02, 0.02),
                                   LinkNoise(0.01, 0.01)])


def line_table(noise: LinkNoise):
    """
    :param noise: The noise of every link
    :return: The routing table of a three agent line
    """
    graph = NetworkGraph(3, [(1, 2, noise), (2, 3, noise)])
    return compute_routes(graph, 1.0)


class TestTransmission(unittest.TestCase):
    """
    Tests noisy transmission and debiasing
    """

    def test_noiseless(self):
        """
        Tests that links without noise deliver exact values
        :return: None
        """
        route = Route(3, 1, [1, 2, 3], [LinkNoise(), LinkNoise()])
        x = np.array([0.3, -1.2])
        y = transmit(x, route, np.random.default_rng(0))
        self.assertTrue(np.array_equal(x, y))

    def test_seeded(self):
        """
        Tests that identical seeds give identical draws
        :return: None
        """
        first = transmit(np.ones(3), two_hop_route(),
                         np.random.default_rng(11))
        second = transmit(np.ones(3), two_hop_route(),
                          np.random.default_rng(11))
        self.assertTrue(np.array_equal(first, second))

    def test_moments(self):
        """
        Tests the empirical moments of many transmissions
        :return: None
        """
        samples = 100000
        y = transmit(np.full(samples, 2.0), two_hop_route(),
                     np.random.default_rng(12))
        self.assertLess(abs(np.mean(y) - 1.99),
                        4.0 * np.sqrt(0.03 / samples))
        self.assertLess(abs(np.var(y) / 0.03 - 1.0), 0.05)

        restored = debias(y, two_hop_route().mu_total)
        self.assertLess(abs(np.mean(restored) - 2.0),
                        4.0 * np.sqrt(0.03 / samples))

    def test_debias(self):
        """
        Tests that the route mean is subtracted from every component
        :return: None
        """
        self.assertAlmostEqual(float(debias(1.98, -0.01)), 1.99)
        self.assertTrue(np.array_equal(debias([1.0, 2.0], 0.0), [1.0, 2.0]))
        self.assertTrue(np.allclose(debias([1.0, 2.0], 0.5), [0.5, 1.5]))


class TestEmaChannelState(unittest.TestCase):
    """
    Tests the adaptive exponential moving average of a channel
    """

    def test_refine_example(self):
        """
        Tests one filter step with a fixed beta
        :return: None
        """
        state = EmaChannelState(-0.01, 0.03)
        state.previous = np.array([1.95])
        state.beta = 0.2
        self.assertAlmostEqual(float(ema_refine(state, 1.99)[0]), 1.958)
        self.assertEqual(len(state.window), 1)

    def test_beta_one(self):
        """
        Tests that beta = 1 passes observations through
        :return: None
        """
        state = EmaChannelState(0.0, 0.0, beta_max=1.0)
        state.previous = np.array([5.0])
        state.beta = 1.0
        self.assertEqual(float(state.ema_refine(1.5)[0]), 1.5)

    def test_geometric_decay(self):
        """
        Tests the closed-form convergence on a constant input
        :return: None
        """
        state = EmaChannelState(0.0, 0.1)
        state.ema_refine(0.0)
        state.beta = 0.3
        for t in range(1, 21):
            refined = float(state.ema_refine(1.0)[0])
            self.assertAlmostEqual(abs(refined - 1.0), 0.7 ** t, places=12)

    def test_adapt_beta(self):
        """
        Tests the bootstrap, the clamp floor and an unclamped value
        :return: None
        """
        state = EmaChannelState(0.0, 0.03)
        self.assertEqual(adapt_beta(state), 0.95)

        for diff in [0.1, -0.2, 0.1]:
            state.window.append(np.array([diff]))
        self.assertAlmostEqual(state.difference_variance(), 0.03)
        self.assertAlmostEqual(adapt_beta(state), 0.5)

        state.window.clear()
        for _ in range(4):
            state.window.append(np.array([0.2]))
        self.assertEqual(adapt_beta(state), 0.05)

    def test_beta_bounds(self):
        """
        Tests that beta stays clamped for arbitrary windows
        :return: None
        """
        rng = np.random.default_rng(13)
        state = EmaChannelState(0.0, 0.01, window=5, beta_min=0.1,
                                beta_max=0.9)
        for _ in range(500):
            state.adapt_beta()
            self.assertTrue(0.1 <= state.beta <= 0.9)
            state.ema_refine(rng.normal(scale=rng.uniform(0.0, 3.0)))

    def test_invalid_bounds(self):
        """
        Tests that beta bounds outside (0, 1] are rejected
        :return: None
        """
        with self.assertRaises(InvalidConfiguration):
            EmaChannelState(0.0, 0.1, beta_min=0.0)
        with self.assertRaises(InvalidConfiguration):
            EmaChannelState(0.0, 0.1, beta_min=0.5, beta_max=0.4)

    def test_output_variance(self):
        """
        Tests the stationary variance beta / (2 - beta) of the filtered
        white noise
        :return: None
        """
        rng = np.random.default_rng(14)
        state = EmaChannelState(0.0, 1.0)
        state.ema_refine(0.0)
        state.beta = 0.2
        outputs = [float(state.ema_refine(y)[0])
                   for y in rng.normal(size=60000)]
        variance = np.var(outputs[1000:])
        self.assertLess(abs(variance / (0.2 / 1.8) - 1.0), 0.1)


class TestRefinedGlobalState(unittest.TestCase):
    """
    Tests the assembly of refined global states
    """

    def test_single_agent(self):
        """
        Tests that a lone agent only knows its own state
        :return: None
        """
        state = build_refined_state(1, [0.4], {}, 1)
        self.assertTrue(np.array_equal(state.values, [0.4]))

    def test_ordering(self):
        """
        Tests that the owner's state is exact and components are ordered
        by agent id whatever the arrival order
        :return: None
        """
        rng = np.random.default_rng(15)
        values = {agent: rng.normal(size=2) for agent in range(1, 6)}
        order = rng.permutation([1, 2, 4, 5])
        refined = {}
        for agent in order:
            refined[int(agent)] = values[int(agent)]
        state = build_refined_state(3, values[3], refined, 5, 7)
        self.assertTrue(np.array_equal(
            state.values, np.concatenate([values[a] for a in range(1, 6)])
        ))
        self.assertTrue(np.array_equal(state.component(3), values[3]))
        self.assertEqual(state.time, 7)

    def test_missing_sender(self):
        """
        Tests that a missing sender is reported
        :return: None
        """
        with self.assertRaises(MissingSender):
            build_refined_state(1, [0.0], {2: [1.0]}, 3)


class TestTimeShiftBuffer(unittest.TestCase):
    """
    Tests the alignment of delayed components
    """

    DELAYS = {1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 0}
    PREVIOUS = [0.118, 0.166, 0.694, 1.893, 0.388, 1.247]
    CURRENT = [0.120, 0.142, 0.633, 1.958, 0.320, 1.386]
    NEXT = [0.115, 0.128, 0.601, 1.912, 0.309, 1.531]

    def test_six_agent_example(self):
        """
        Tests the shifted listings of three consecutive refined states
        :return: None
        """
        buffer = TimeShiftBuffer(1, self.DELAYS, capacity=4)
        for record, values in enumerate([self.PREVIOUS, self.CURRENT,
                                         self.NEXT]):
            time_shift_push(buffer, np.array(values), record)

        self.assertTrue(np.allclose(
            buffer.peek(2).values, [0.118, 0.166, 0.633, 1.958, 0.320, 1.247]
        ))
        self.assertTrue(np.allclose(
            buffer.peek(1).values, [0.120, 0.142, 0.601, 1.912, 0.309, 1.386]
        ))
        newest = buffer.peek(0)
        self.assertTrue(np.allclose(
            newest.values, [0.115, 0.128, 0.0, 0.0, 0.0, 1.531]
        ))
        self.assertFalse(newest.fully_filled)
        self.assertTrue(buffer.peek(1).fully_filled)

    def test_six_agent_example_popped(self):
        """
        Tests the reconstructed states leaving a two slot buffer
        :return: None
        """
        buffer = TimeShiftBuffer(1, self.DELAYS, capacity=2)
        buffer.push(np.array(self.PREVIOUS), "t-1")
        buffer.push(np.array(self.CURRENT), "t")
        buffer.push(np.array(self.NEXT), "t+1")

        _, filled, record = pop_reconstructed(buffer)
        self.assertFalse(filled)
        self.assertIsNone(record)

        x_hat, filled, record = pop_reconstructed(buffer)
        self.assertEqual(record, "t-1")
        self.assertTrue(filled)
        self.assertTrue(np.allclose(
            x_hat, [0.118, 0.166, 0.633, 1.958, 0.320, 1.247]
        ))

        x_hat, filled, record = pop_reconstructed(buffer)
        self.assertEqual(record, "t")
        self.assertTrue(filled)
        self.assertTrue(np.allclose(
            x_hat, [0.120, 0.142, 0.601, 1.912, 0.309, 1.386]
        ))
        with self.assertRaises(BufferEmpty):
            buffer.pop_reconstructed()

    def test_zero_delays(self):
        """
        Tests that without delays slots hold the pushed states unchanged
        :return: None
        """
        buffer = TimeShiftBuffer(1, {1: 0, 2: 0, 3: 0}, capacity=3)
        buffer.push(np.array([1.0, 2.0, 3.0]), 0)
        self.assertTrue(np.array_equal(buffer.peek(0).values,
                                       [1.0, 2.0, 3.0]))
        self.assertTrue(buffer.peek(0).fully_filled)

        buffer.push(np.array([4.0, 5.0, 6.0]), 1)
        buffer.push(np.array([7.0, 8.0, 9.0]), 2)
        self.assertEqual(buffer.ready_count, 3)
        pop_reconstructed(buffer)
        pop_reconstructed(buffer)
        x_hat, filled, record = pop_reconstructed(buffer)
        self.assertEqual(record, 0)
        self.assertTrue(filled)
        self.assertTrue(np.array_equal(x_hat, [1.0, 2.0, 3.0]))

    def test_marker_tracing(self):
        """
        Tests that component m of the slot of push t holds the value sent
        d_m pushes later
        :return: None
        """
        rng = np.random.default_rng(16)
        delays = {agent: int(rng.integers(0, 4)) for agent in range(1, 6)}
        delays[1] = 0
        buffer = TimeShiftBuffer(1, delays)
        checked = 0
        for t in range(40):
            buffer.push(np.array([100.0 * t + m for m in range(1, 6)]), t)
            while buffer.ready_count > 0:
                x_hat, filled, record = buffer.pop_reconstructed()
                if record is None:
                    continue
                self.assertTrue(filled)
                for m in range(1, 6):
                    self.assertEqual(x_hat[m - 1],
                                     100.0 * (record + delays[m]) + m)
                checked += 1
        self.assertGreater(checked, 30)

    def test_mask_saturation(self):
        """
        Tests that all slots at least D steps old are fully filled after
        D * P pushes
        :return: None
        """
        rng = np.random.default_rng(17)
        delays = {agent: int(rng.integers(0, 5)) for agent in range(1, 8)}
        delays[3] = 0
        delays[5] = 4
        buffer = TimeShiftBuffer(3, delays)
        for t in range(buffer.max_delay * buffer.capacity):
            self.assertFalse(buffer.is_ready())
            buffer.push(rng.normal(size=7), t)
        self.assertTrue(buffer.is_ready())
        for depth in range(buffer.max_delay, buffer.capacity - 1):
            self.assertTrue(buffer.peek(depth).fully_filled)

    def test_capacity_too_small(self):
        """
        Tests that a delay must fit into the buffer
        :return: None
        """
        with self.assertRaises(InvalidConfiguration):
            TimeShiftBuffer(1, {1: 0, 2: 3}, capacity=3)
        self.assertEqual(TimeShiftBuffer(1, {1: 0, 2: 3}).capacity, 7)

    def test_flush(self):
        """
        Tests that flushing releases every slot that holds a step
        :return: None
        """
        buffer = TimeShiftBuffer(1, {1: 0, 2: 1}, capacity=4)
        buffer.push(np.array([1.0, 1.0]), 0)
        buffer.push(np.array([2.0, 2.0]), 1)
        buffer.flush()
        records = []
        while buffer.ready_count > 0:
            _, filled, record = buffer.pop_reconstructed()
            records.append((record, filled))
        self.assertIn((0, True), records)
        self.assertIn((1, False), records)
        self.assertTrue(all(not np.any(s.mask) for s in buffer.slots))


class TestConnections(unittest.TestCase):
    """
    Tests the delay lines of the connection implementations
    """

    def test_route_connection_delay(self):
        """
        Tests that a three hop route delivers two steps late and starts
        with the initial state
        :return: None
        """
        route = Route(4, 1, [1, 2, 3, 4], [LinkNoise()] * 3)
        connection = RouteConnection(route, np.random.default_rng(0))
        self.assertEqual(connection.delay, 2)
        connection.reset(np.array([9.0]))
        received = []
        for time in range(4):
            connection.send(RawObservation(1, 4, np.array([float(time)]),
                                           time))
            received.append([float(o.value[0])
                             for o in connection.receive(time)])
        self.assertEqual(received, [[9.0], [9.0], [0.0], [1.0]])

    def test_route_connection_undelayed(self):
        """
        Tests that disabled delays deliver in the same step
        :return: None
        """
        route = Route(4, 1, [1, 2, 3, 4], [LinkNoise()] * 3)
        connection = RouteConnection(route, np.random.default_rng(0), False)
        connection.reset(np.array([9.0]))
        connection.send(RawObservation(1, 4, np.array([3.0]), 0))
        self.assertEqual(float(connection.receive(0)[0].value[0]), 3.0)

    def test_ideal_connection(self):
        """
        Tests that an ideal connection ignores the route's noise
        :return: None
        """
        connection = IdealConnection(two_hop_route())
        self.assertEqual(connection.mu_total, 0.0)
        connection.send(RawObservation(1, 4, np.array([0.5]), 0))
        self.assertEqual(float(connection.receive(0)[0].value[0]), 0.5)
        self.assertEqual(connection.receive(1), [])


class TestMessageNetwork(unittest.TestCase):
    """
    Tests the round-robin message passing of all agents
    """

    def test_ideal(self):
        """
        Tests that an ideal network delivers exact states
        :return: None
        """
        network = MessageNetwork(line_table(LinkNoise(0.1, 0.05)),
                                 np.random.default_rng(0), ideal=True)
        x = np.array([0.5, -0.25, 1.0])
        network.reset(x)
        refined = network.observe(x)
        raw = network.raw(x)
        for agent in range(1, 4):
            self.assertTrue(np.array_equal(refined[agent].values, x))
            self.assertTrue(np.array_equal(raw[agent], x))
        self.assertEqual(network.max_delay, 0)

    def test_delayed_noise_free(self):
        """
        Tests that the end agents of a line see each other one step late
        :return: None
        """
        network = MessageNetwork(line_table(LinkNoise()),
                                 np.random.default_rng(0))
        self.assertEqual(network.max_delay, 1)
        x0 = np.array([1.0, 2.0, 3.0])
        x1 = np.array([4.0, 5.0, 6.0])
        network.reset(x0)
        network.observe(x0)
        network.observe(x1)
        raw = network.raw(x1)
        self.assertTrue(np.array_equal(raw[1], [4.0, 5.0, 3.0]))
        self.assertTrue(np.array_equal(raw[2], [4.0, 5.0, 6.0]))
        self.assertTrue(np.array_equal(raw[3], [1.0, 5.0, 6.0]))

    def test_owner_exact(self):
        """
        Tests that every agent knows its own state exactly under noise
        :return: None
        """
        network = MessageNetwork(line_table(LinkNoise(0.05, 0.1)),
                                 np.random.default_rng(1))
        rng = np.random.default_rng(2)
        x = rng.normal(size=3)
        network.reset(x)
        for _ in range(5):
            x = rng.normal(size=3)
            refined = network.observe(x)
            for agent in range(1, 4):
                self.assertEqual(refined[agent].values[agent - 1],
                                 x[agent - 1])

    def test_push_and_dump(self):
        """
        Tests that pushes reach every agent's buffer and show in the dump
        :return: None
        """
        network = MessageNetwork(line_table(LinkNoise()),
                                 np.random.default_rng(0))
        x = np.ones(3)
        network.reset(x)
        refined = network.observe(x)
        network.push(refined, {agent: agent for agent in range(1, 4)})
        rows = network.dump_buffers()
        self.assertEqual(len(rows), sum(network.buffer(a).capacity
                                        for a in range(1, 4)))
        self.assertTrue(all(row["push"] == 1 for row in rows))
        self.assertEqual(network.buffer(2).peek(0).record, 2)
