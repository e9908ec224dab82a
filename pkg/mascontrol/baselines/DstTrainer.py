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

import logging
import numpy as np
from typing import Dict, List, Optional, Tuple
from mascontrol.baselines.dst import \
    dst_gain, fit_theta, quadratic_basis, theta_to_H
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.control import spectral_radius
from mascontrol.entities.MetricsRecord import MetricsRecord
from mascontrol.exceptions import ExtractionFailure, FitDivergence
from mascontrol.messaging.MessageNetwork import MessageNetwork
from mascontrol.settings.impl.TrainConfig import TrainConfig


class DstTrainer:
    """
    Class that implements the distributed state tracking baseline by
    policy iteration. Starting from the zero gain, each round improves
    the agents one after another: an agent explores around its current
    policy, fits a quadratic Q-function of its own observation and input
    to the observed costs and switches to the Q-function's minimizer.

    Agents act on the unfiltered values they receive; the baseline has no
    noise or delay compensation.
    """

    def __init__(
            self,
            model: MasModel,
            network: Optional[MessageNetwork],
            config: TrainConfig,
            rng: np.random.Generator
    ):
        """
        Initializes the trainer
        :param model: The plant model
        :param network: The message network; None means exact states
        :param config: The training configuration (dst_* fields)
        :param rng: The generator for initial states and exploration
        """
        self.model = model
        self.network = network
        self.config = config
        self.rng = rng
        self.gain = GainMatrix.zeros(model)
        self.logger = logging.getLogger(self.__class__.__name__)

    def _observe(self, x: np.ndarray) -> Dict[int, np.ndarray]:
        if self.network is None:
            return {agent: x for agent in range(1, self.model.agents + 1)}
        self.network.observe(x)
        return self.network.raw(x)

    def _inputs(self, observations: Dict[int, np.ndarray]) -> np.ndarray:
        return np.concatenate([
            -self.gain.block(agent) @ observations[agent]
            for agent in range(1, self.model.agents + 1)
        ])

    def collect(self, agent: int) \
            -> Tuple[np.ndarray, np.ndarray, np.ndarray, List[float], bool]:
        """
        Runs exploration rollouts in which only one agent perturbs its
        input
        :param agent: The exploring agent
        :return: The monomials y(t) and y(t+1), the regression costs c(t),
                 the true cost of every rollout and whether any rollout
                 blew up
        """
        model, config = self.model, self.config
        own = model.input_slice(agent)
        basis_now, basis_next, costs = [], [], []
        episode_costs = []
        blown = False

        for _ in range(config.dst_rollouts):
            x = self.rng.uniform(-1.0, 1.0, size=model.size)
            if self.network is not None:
                self.network.reset(x)
            z = self._observe(x)
            episode_cost = 0.0

            for _ in range(config.steps):
                u = self._inputs(z)
                u[own] += self.rng.normal(
                    0.0, config.dst_exploration, size=model.input_dim
                )
                z_own = z[agent]
                costs.append(float(z_own @ model.s @ z_own + u @ model.r @ u))
                episode_cost += model.stage_cost(x, u)

                x = model.step_global(x, u)
                if not np.all(np.isfinite(x)) or \
                        np.max(np.abs(x)) > config.blowup_threshold:
                    costs.pop()
                    blown = True
                    break
                z_next = self._observe(x)
                u_next = -self.gain.block(agent) @ z_next[agent]
                basis_now.append(quadratic_basis(z_own, u[own]))
                basis_next.append(quadratic_basis(z_next[agent], u_next))
                z = z_next
            episode_costs.append(episode_cost)

        width = (model.size + model.input_dim) * \
            (model.size + model.input_dim + 1) // 2
        return (
            np.reshape(basis_now, (-1, width)),
            np.reshape(basis_next, (-1, width)),
            np.array(costs),
            episode_costs,
            blown
        )

    def improve(self, agent: int) -> Tuple[List[float], bool]:
        """
        Runs one policy improvement step of an agent
        :param agent: The agent id
        :return: The true rollout costs and the blow-up flag of the
                 collected data
        """
        basis_now, basis_next, costs, episode_costs, blown = \
            self.collect(agent)
        try:
            fit = fit_theta(
                basis_now, basis_next, costs,
                step_size=self.config.dst_step_size,
                passes=self.config.dst_passes
            )
            h = theta_to_H(fit.theta, self.model.size)
            block = -dst_gain(h)
        except (ExtractionFailure, FitDivergence) as e:
            self.logger.warning("Agent {} keeps its gain: {}".format(
                agent, e
            ))
            return episode_costs, blown

        k = self.gain.k.copy()
        k[self.model.input_slice(agent)] = block
        self.gain = GainMatrix(
            k, self.model.agents, self.model.state_dim, self.model.input_dim
        )
        self.logger.debug("Agent {} improved, residual {:.3e}".format(
            agent, fit.residual
        ))
        return episode_costs, blown

    def train(self) -> Tuple[GainMatrix, List[MetricsRecord]]:
        """
        Runs all policy iteration rounds
        :return: The final gain and one metrics record per round
        """
        metrics = []
        for iteration in range(self.config.dst_iterations):
            costs = []  # type: List[float]
            blown = False
            for agent in range(1, self.model.agents + 1):
                agent_costs, agent_blown = self.improve(agent)
                costs.extend(agent_costs)
                blown = blown or agent_blown
            radius = spectral_radius(self.gain.closed_loop(self.model))
            metrics.append(MetricsRecord(
                iteration, float(np.mean(costs)), radius, blown
            ))
            self.logger.info("DST round {}: cost {:.4f}, radius {:.4f}"
                             .format(iteration, metrics[-1].cost, radius))
        return self.gain, metrics
