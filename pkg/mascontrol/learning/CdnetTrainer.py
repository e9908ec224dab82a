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
from typing import Any, Callable, Dict, List, Optional, Tuple
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.control import spectral_radius
from mascontrol.entities.MetricsRecord import MetricsRecord
from mascontrol.entities.StepRecord import StepRecord
from mascontrol.entities.Transition import Transition
from mascontrol.learning.CdnetLearner import CdnetLearner
from mascontrol.learning.ReplayBuffer import ReplayBuffer
from mascontrol.learning.rewards import immediate_reward
from mascontrol.messaging.MessageNetwork import MessageNetwork
from mascontrol.settings.impl.TrainConfig import TrainConfig

BufferDump = Callable[[int, int, List[Dict[str, Any]]], None]
"""Receives episode, step and the buffer rows of that step"""


class CdnetTrainer:
    """
    Class that runs the training loop of the actor-critic learner on a
    plant whose agents communicate through a message network
    """

    def __init__(
            self,
            model: MasModel,
            network: MessageNetwork,
            config: TrainConfig,
            rng: np.random.Generator,
            learner: Optional[CdnetLearner] = None
    ):
        """
        Initializes the trainer
        :param model: The plant model
        :param network: The message network the agents communicate over
        :param config: The training configuration
        :param rng: The generator for initialization, exploration, initial
                    states and replay sampling
        :param learner: An existing learner to continue training
        """
        self.model = model
        self.network = network
        self.config = config
        self.rng = rng
        self.learner = learner if learner is not None \
            else CdnetLearner(model, config, rng)
        self.replay = ReplayBuffer(config.replay_capacity)
        self.logger = logging.getLogger(self.__class__.__name__)
        self.visited = {}  # type: Dict[int, np.ndarray]
        self.initial_state = None  # type: Optional[np.ndarray]
        if config.initial_state == "fixed":
            self.initial_state = rng.uniform(-1.0, 1.0, size=model.size)

    @property
    def agents(self) -> List[int]:
        """
        :return: The sorted agent ids
        """
        return list(range(1, self.model.agents + 1))

    def final_gains(self) -> GainMatrix:
        """
        :return: The deterministic gains averaged over the refined states
                 of the latest episode, or the gains at the zero state
                 before any episode
        """
        if not self.visited:
            return self.learner.deterministic_gains({
                agent: np.zeros(self.model.size) for agent in self.agents
            })
        return self.learner.averaged_gains(self.visited)

    def _inputs(self, refined: Dict[int, np.ndarray], explore: bool) \
            -> Tuple[np.ndarray, np.ndarray]:
        gains, inputs = [], []
        for agent in self.agents:
            psi = self.learner.forward_features(refined[agent], agent)
            gain = self.learner.select_gain(psi, agent, explore)
            gains.append(gain.ravel())
            inputs.append(-gain @ refined[agent])
        return np.vstack(gains), np.concatenate(inputs)

    def _correct(self):
        for agent in self.agents:
            buffer = self.network.buffer(agent)
            if buffer.is_ready():
                self.learner.corrective_replay(agent, buffer)

    def run_episode(self, episode: int, dump: Optional[BufferDump] = None) \
            -> MetricsRecord:
        """
        Runs one training episode from a random initial state in [-1, 1],
        or from the fixed initial state if configured. The actors are
        frozen during the warmup episodes.
        :param episode: The episode index
        :param dump: Receives the buffer contents after every step
        :return: The episode's metrics
        """
        config = self.config
        self.learner.exploration_std = config.exploration_std(episode)
        self.learner.actor_enabled = episode >= config.warmup_episodes
        if self.initial_state is None:
            x = self.rng.uniform(-1.0, 1.0, size=self.model.size)
        else:
            x = self.initial_state.copy()
        self.network.reset(x)
        refined = {
            agent: state.values
            for agent, state in self.network.observe(x).items()
        }

        cost = 0.0
        blown = False
        visited = {agent: [] for agent in self.agents}
        for step in range(config.steps):
            for agent in self.agents:
                visited[agent].append(np.copy(refined[agent]))
            gains, u = self._inputs(refined, True)
            cost += self.model.stage_cost(x, u)
            x_next = self.model.step_global(x, u)
            blown = not np.all(np.isfinite(x_next)) or \
                np.max(np.abs(x_next)) > config.blowup_threshold

            if blown:
                next_refined = refined
            else:
                next_refined = {
                    agent: state.values
                    for agent, state in self.network.observe(x_next).items()
                }

            rewards = np.zeros(self.model.agents)
            records = {}
            for agent in self.agents:
                s, r = self.model.agent_weights(agent)
                own_input = u[self.model.input_slice(agent)]
                rewards[agent - 1] = \
                    immediate_reward(refined[agent], own_input, s, r)
                records[agent] = StepRecord(
                    step, gains[agent - 1], own_input, rewards[agent - 1],
                    next_refined[agent], blown
                )
            self.replay.append(Transition(
                np.vstack([refined[a] for a in self.agents]), gains, u,
                rewards, np.vstack([next_refined[a] for a in self.agents]),
                blown
            ))
            self.network.push(refined, records)
            if dump is not None:
                dump(episode, step, self.network.dump_buffers())

            if len(self.replay) >= config.batch_size:
                self.learner.update(
                    self.replay.sample(config.batch_size, self.rng)
                )
            self._correct()

            x, refined = x_next, next_refined
            if blown:
                self.logger.warning("Episode {} blew up at step {}".format(
                    episode, step
                ))
                break

        self.network.flush()
        self._correct()
        self.visited = {
            agent: np.vstack(states) for agent, states in visited.items()
        }

        radius = spectral_radius(self.final_gains().closed_loop(self.model))
        return MetricsRecord(episode, cost, radius, blown)

    def train(self, episodes: Optional[int] = None,
              dump: Optional[BufferDump] = None) \
            -> Tuple[GainMatrix, List[MetricsRecord]]:
        """
        Runs the training loop
        :param episodes: The number of episodes; defaults to the config
        :param dump: Receives the buffer contents after every step
        :return: The final gains and the per-episode metrics
        """
        episodes = self.config.episodes if episodes is None else episodes
        metrics = []
        for episode in range(episodes):
            record = self.run_episode(episode, dump)
            metrics.append(record)
            if (episode + 1) % self.config.log_every == 0:
                window = metrics[-self.config.log_every:]
                self.logger.info(
                    "Episode {}/{}: mean cost {:.4f}, spectral radius {:.4f}"
                    .format(episode + 1, episodes,
                            np.mean([m.cost for m in window]),
                            record.spectral_radius)
                )
        if self.learner.skipped > 0:
            self.logger.warning(
                "Skipped {} unfilled reconstructed states".format(
                    self.learner.skipped
                ))
        return self.final_gains(), metrics


def train(
        model: MasModel,
        network: MessageNetwork,
        config: TrainConfig,
        rng: Optional[np.random.Generator] = None,
        dump: Optional[BufferDump] = None,
        learner: Optional[CdnetLearner] = None
) -> Tuple[GainMatrix, List[MetricsRecord], CdnetLearner]:
    """
    Trains the actor-critic learner
    :param model: The plant model
    :param network: The message network built from the routing table
    :param config: The training configuration
    :param rng: The random number generator; seeded from the config if
                not given
    :param dump: Receives the buffer contents after every step
    :param learner: A learner to continue training, e.g. one restored
                    from a checkpoint
    :return: The final gains, the per-episode metrics and the learner
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    trainer = CdnetTrainer(model, network, config, rng, learner)
    gains, metrics = trainer.train(dump=dump)
    return gains, metrics, trainer.learner
