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
from mascontrol.baselines.DstTrainer import DstTrainer
from mascontrol.baselines.HMatrix import HMatrix
from mascontrol.baselines.dst import basis_length, dst_gain, fit_theta, \
    H_to_theta, quadratic_basis, theta_to_H
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.control import rollout, solve_dare
from mascontrol.exceptions import \
    ExtractionFailure, FitDivergence, InvalidConfiguration, \
    InvalidDimensions
from mascontrol.messaging.MessageNetwork import MessageNetwork
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.network.NetworkGraph import NetworkGraph
from mascontrol.network.RoutingTable import compute_routes
from mascontrol.settings.impl.TrainConfig import TrainConfig


def regression_data(rng: np.random.Generator, theta: np.ndarray,
                    samples: int):
    """
    Generates noiseless regression data for a known coefficient vector
    :param rng: The random number generator
    :param theta: The coefficients of a one state, one input Q-function
    :param samples: The number of samples
    :return: The monomials y(t), y(t+1) and the costs
    """
    now = np.array([quadratic_basis(v[:1], v[1:])
                    for v in rng.uniform(-1.0, 1.0, size=(samples, 2))])
    after = np.array([quadratic_basis(v[:1], v[1:])
                      for v in rng.uniform(-1.0, 1.0, size=(samples, 2))])
    return now, after, (now - after) @ theta


class TestQuadraticBasis(unittest.TestCase):
    """
    Tests the monomial basis and its matrix form
    """

    def test_basis(self):
        """
        Tests hand computed monomials
        :return: None
        """
        self.assertEqual(quadratic_basis([1.0], [1.0]).tolist(),
                         [1.0, 1.0, 1.0])
        self.assertEqual(quadratic_basis([1.0, 2.0], [3.0]).tolist(),
                         [1.0, 2.0, 3.0, 4.0, 6.0, 9.0])
        for size in range(1, 8):
            self.assertEqual(
                quadratic_basis(np.ones(size - 1), np.ones(1)).shape[0],
                basis_length(size))
            self.assertEqual(basis_length(size), size * (size + 1) // 2)

    def test_theta_to_h(self):
        """
        Tests the symmetric matrix built from coefficients
        :return: None
        """
        np.testing.assert_array_equal(theta_to_H([1.0, 0.0, 1.0]).matrix,
                                      np.eye(2))
        np.testing.assert_array_equal(theta_to_H([0.0, 2.0, 0.0]).matrix,
                                      [[0.0, 1.0], [1.0, 0.0]])
        with self.assertRaises(InvalidDimensions):
            theta_to_H([1.0, 2.0])

    def test_quadratic_form_identity(self):
        """
        Tests v'Hv = basis(v) theta on random vectors
        :return: None
        """
        rng = np.random.default_rng(1)
        theta = rng.normal(size=basis_length(4))
        h = theta_to_H(theta, 3)
        for _ in range(100):
            v = rng.normal(size=4)
            expected = float(quadratic_basis(v[:3], v[3:]) @ theta)
            self.assertLess(abs(h.value(v[:3], v[3:]) - expected),
                            1e-12 * max(1.0, abs(expected)))
        np.testing.assert_allclose(H_to_theta(h), theta, rtol=1e-12)

    def test_h_matrix(self):
        """
        Tests the block partition and the validation of H
        :return: None
        """
        h = HMatrix(np.arange(9.0).reshape(3, 3) +
                    np.arange(9.0).reshape(3, 3).T, 2)
        self.assertEqual(h.h11.shape, (2, 2))
        self.assertEqual(h.h12.shape, (2, 1))
        self.assertEqual(h.h21.shape, (1, 2))
        self.assertEqual(h.h22.tolist(), [[16.0]])
        with self.assertRaises(InvalidDimensions):
            HMatrix([[1.0, 2.0], [0.0, 1.0]], 1)
        with self.assertRaises(InvalidDimensions):
            HMatrix(np.eye(2), 2)


class TestGainExtraction(unittest.TestCase):
    """
    Tests the minimizing policy of a quadratic Q-function
    """

    def test_identity(self):
        """
        Tests that uncoupled state and input give the zero policy
        :return: None
        """
        np.testing.assert_array_equal(dst_gain(HMatrix(np.eye(3), 2)),
                                      np.zeros((1, 2)))

    def test_riccati_q_function(self):
        """
        Tests that the optimal Q-function of the scalar plant with all
        coefficients one yields the negated Riccati gain
        :return: None
        """
        p = solve_dare(MasModel.scalar(1.0, 1.0, 1.0, 1.0)).p[0, 0]
        h = HMatrix([[1.0 + p, p], [p, 1.0 + p]], 1)
        self.assertAlmostEqual(dst_gain(h)[0, 0], -0.6180340, places=7)

    def test_singular(self):
        """
        Tests that a vanishing input block cannot be inverted
        :return: None
        """
        with self.assertRaises(ExtractionFailure):
            dst_gain(HMatrix([[1.0, 0.5], [0.5, 0.0]], 1))


class TestFitTheta(unittest.TestCase):
    """
    Tests the Q-function regression
    """

    def setUp(self):
        """
        Generates data for known coefficients
        :return: None
        """
        self.theta = np.array([1.5, -0.4, 0.8])
        self.now, self.after, self.costs = \
            regression_data(np.random.default_rng(2), self.theta, 200)

    def test_exact_recovery(self):
        """
        Tests that both solvers recover the coefficients
        :return: None
        """
        fit = fit_theta(self.now, self.after, self.costs)
        self.assertEqual(fit.method, "lstsq")
        np.testing.assert_allclose(fit.theta, self.theta, atol=1e-10)

        fit = fit_theta(self.now, self.after, self.costs, "gradient",
                        0.05, 20000)
        self.assertEqual(fit.method, "gradient")
        np.testing.assert_allclose(fit.theta, self.theta, atol=1e-4)
        for before, after in zip(fit.residuals[:-1], fit.residuals[1:]):
            self.assertLessEqual(after, before + 1e-15)

    def test_duplicated_data(self):
        """
        Tests that repeating every sample does not change the fit
        :return: None
        """
        fit = fit_theta(np.vstack([self.now, self.now]),
                        np.vstack([self.after, self.after]),
                        np.concatenate([self.costs, self.costs]))
        np.testing.assert_allclose(fit.theta, self.theta, atol=1e-10)

    def test_zero_costs(self):
        """
        Tests that zero costs give zero coefficients
        :return: None
        """
        zeros = np.zeros_like(self.costs)
        for method in ["lstsq", "gradient"]:
            fit = fit_theta(self.now, self.after, zeros, method,
                            passes=10)
            np.testing.assert_allclose(fit.theta, np.zeros(3), atol=1e-12)

    def test_invalid_input(self):
        """
        Tests mismatched data, unknown solvers and divergence
        :return: None
        """
        with self.assertRaises(InvalidDimensions):
            fit_theta(self.now, self.after, self.costs[:-1])
        with self.assertRaises(InvalidConfiguration):
            fit_theta(self.now, self.after, self.costs, "newton")
        with self.assertRaises(FitDivergence):
            fit_theta(self.now, self.after, self.costs, "gradient",
                      100.0, 1000)


class TestDstTrainer(unittest.TestCase):
    """
    Tests policy iteration of the state tracking baseline
    """

    def test_scalar_plant(self):
        """
        Tests that exact observations lead to the Riccati gain
        :return: None
        """
        model = MasModel.scalar(0.9, 1.0, 1.0, 1.0)
        config = TrainConfig(dst_iterations=10, dst_rollouts=20, steps=10)
        trainer = DstTrainer(model, None, config, np.random.default_rng(3))
        gain, metrics = trainer.train()

        optimal = solve_dare(model)
        self.assertEqual(len(metrics), 10)
        self.assertLess(metrics[-1].spectral_radius, 1.0)
        np.testing.assert_allclose(gain.k, optimal.gain.k, atol=1e-4)

        rng = np.random.default_rng(4)
        for x0 in rng.uniform(-1.0, 1.0, size=(50, 1)):
            cost = rollout(model, gain, x0, 200).cost
            self.assertLessEqual(cost, 1.1 * optimal.value(x0) + 1e-12)

    def test_noisy_network(self):
        """
        Tests a short run on agents observing each other over noisy links
        :return: None
        """
        a = np.array([[0.6, 0.05, 0.0], [0.05, 0.6, 0.05],
                      [0.0, 0.05, 0.6]])
        model = MasModel(a, np.eye(3), np.eye(3), np.eye(3), 3)
        noise = LinkNoise(0.0, 0.01)
        graph = NetworkGraph(3, [(1, 2, noise), (2, 3, noise)])
        network = MessageNetwork(compute_routes(graph, 1.0),
                                 np.random.default_rng(5))
        config = TrainConfig(dst_iterations=2, dst_rollouts=3, steps=5)

        gain, metrics = DstTrainer(
            model, network, config, np.random.default_rng(6)).train()
        self.assertEqual(gain.k.shape, (3, 3))
        self.assertEqual([m.episode for m in metrics], [0, 1])
        for record in metrics:
            self.assertGreaterEqual(record.cost, 0.0)

    def test_zero_iterations(self):
        """
        Tests that no round keeps the zero gain
        :return: None
        """
        model = MasModel.scalar(0.9, 1.0, 1.0, 1.0)
        gain, metrics = DstTrainer(
            model, None, TrainConfig(dst_iterations=0),
            np.random.default_rng(0)).train()
        self.assertEqual(metrics, [])
        np.testing.assert_array_equal(gain.k, [[0.0]])
