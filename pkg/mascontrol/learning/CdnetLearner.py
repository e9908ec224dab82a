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
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.entities.Transition import Transition
from mascontrol.exceptions import InvalidConfiguration, TrainingAborted
from mascontrol.learning.AdamOptimizer import AdamOptimizer
from mascontrol.learning.CdnetParams import CdnetParams
from mascontrol.learning.DenseNet import LayerCache, finite
from mascontrol.learning.HistoryBuffer import HistoryBuffer, HistoryEntry
from mascontrol.learning.rewards import immediate_reward, pessimistic_q
from mascontrol.messaging.TimeShiftBuffer import TimeShiftBuffer
from mascontrol.settings.impl.TrainConfig import TrainConfig

Grads = Dict[str, List[np.ndarray]]
EncoderCache = Tuple[List[LayerCache], List[LayerCache]]


class CdnetLearner:
    """
    Class that implements the corrective double-critic actor-critic
    learner. All agents share one encoder trunk; each agent has its own
    head, actor and pair of critics. Critic targets use the smaller of
    both target critics, and rewards are recomputed on time-aligned
    states once the time-shift buffers have filled up.

    The critics see the features, the flattened gain and the applied
    input u = -K x. The actor loss reaches head and trunk only through
    the actor; the feature input of the critics is treated as a constant
    there.
    """

    def __init__(
            self,
            model: MasModel,
            config: TrainConfig,
            rng: np.random.Generator,
            params: Optional[CdnetParams] = None
    ):
        """
        Initializes the learner
        :param model: The plant model, used for dimensions and weights
        :param config: The training configuration
        :param rng: The random number generator for initialization and
                    exploration
        :param params: Existing parameters, e.g. from a checkpoint
        :raises InvalidConfiguration: If the parameters do not fit the
                                      model
        """
        self.model = model
        self.config = config
        self.rng = rng
        self.gain_shape = (model.input_dim, model.size)
        self.gain_size = model.input_dim * model.size
        self.logger = logging.getLogger(self.__class__.__name__)

        self.params = params if params is not None else \
            CdnetParams.initialize(
                model.agents, model.size, self.gain_size, rng,
                config.hidden, config.gain_bound, model.input_dim
            )
        self.hidden = self.params.trunk.output_dim
        self._check_dimensions()

        lr = config.learning_rate
        self.trunk_optimizer = \
            AdamOptimizer(self.params.trunk.parameters(), lr)
        self.optimizers = {}  # type: Dict[int, Dict[str, AdamOptimizer]]
        self.histories = {}  # type: Dict[int, HistoryBuffer]
        for agent in self.params.agents:
            critic1, critic2 = self.params.critics[agent]
            self.optimizers[agent] = {
                "head": AdamOptimizer(
                    self.params.heads[agent].parameters(), lr),
                "actor": AdamOptimizer(
                    self.params.actors[agent].parameters(), lr),
                "critic1": AdamOptimizer(critic1.parameters(), lr),
                "critic2": AdamOptimizer(critic2.parameters(), lr)
            }
            self.histories[agent] = HistoryBuffer(config.history_capacity)

        self.exploration_std = config.exploration_initial
        self.actor_enabled = True
        self.updates = 0
        self.skipped = 0

    def _check_dimensions(self):
        params = self.params
        expected = {
            "agents": (self.model.agents, len(params.agents)),
            "state size": (self.model.size, params.trunk.input_dim),
            "gain size": (self.gain_size,
                          params.actors[params.agents[0]].output_dim),
            "critic input": (
                self.hidden + self.gain_size + self.model.input_dim,
                params.critics[params.agents[0]][0].input_dim
            )
        }
        for what, (wanted, found) in expected.items():
            if wanted != found:
                raise InvalidConfiguration(
                    "params", "{} is {}, the model needs {}".format(
                        what, found, wanted
                    ))

    @property
    def agents(self) -> List[int]:
        """
        :return: The sorted agent ids
        """
        return self.params.agents

    def _encode(self, x: np.ndarray, agent: int) \
            -> Tuple[np.ndarray, EncoderCache]:
        phi, trunk_cache = self.params.trunk.forward(x)
        psi, head_cache = self.params.heads[agent].forward(phi)
        return psi, (trunk_cache, head_cache)

    def _encode_backward(
            self,
            agent: int,
            cache: EncoderCache,
            grad_psi: np.ndarray
    ) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        trunk_cache, head_cache = cache
        grad_phi, head_grads = \
            self.params.heads[agent].backward(head_cache, grad_psi)
        _, trunk_grads = self.params.trunk.backward(trunk_cache, grad_phi)
        return head_grads, trunk_grads

    def forward_features(self, x: np.ndarray, agent: int) -> np.ndarray:
        """
        Encodes refined global states into an agent's feature vector
        :param x: A refined global state or a batch of them
        :param agent: The agent id
        :return: psi, one row per input state
        """
        return self._encode(x, agent)[0]

    def actor_gains(self, psi: np.ndarray, agent: int) -> np.ndarray:
        """
        :param psi: Features, one row per sample
        :param agent: The agent id
        :return: The deterministic flattened gains, one row per sample
        """
        return self.params.gain_bound * \
            self.params.actors[agent].predict(psi)

    def select_gain(
            self,
            psi: np.ndarray,
            agent: int,
            explore: bool = False,
            rng: Optional[np.random.Generator] = None,
            std: Optional[float] = None
    ) -> np.ndarray:
        """
        Selects an agent's gain for one feature vector
        :param psi: The agent's features
        :param agent: The agent id
        :param explore: Whether to add Gaussian exploration noise
        :param rng: The generator for the noise; defaults to the learner's
        :param std: The noise standard deviation; defaults to the current
                    exploration std
        :return: The gain K_l, shape (m, nL)
        """
        gain = self.actor_gains(psi, agent)[0]
        if explore:
            rng = self.rng if rng is None else rng
            std = self.exploration_std if std is None else std
            bound = self.params.gain_bound
            gain = np.clip(
                gain + rng.normal(0.0, std, size=gain.shape), -bound, bound
            )
        return gain.reshape(self.gain_shape)

    def deterministic_gains(self, states: Dict[int, np.ndarray]) \
            -> GainMatrix:
        """
        :param states: Mapping agent -> its refined global state
        :return: The stacked deterministic gains of all agents
        """
        blocks = [
            self.select_gain(self.forward_features(states[agent], agent),
                             agent)
            for agent in self.agents
        ]
        return GainMatrix.stack(
            blocks, self.model.state_dim, self.model.input_dim
        )

    def averaged_gains(self, visited: Dict[int, np.ndarray]) -> GainMatrix:
        """
        Averages each agent's deterministic gains over the refined states
        it visited, weighting every state by its squared norm. Without
        any weight the plain mean is used.
        :param visited: Mapping agent -> visited refined states, one row
                        per step
        :return: The stacked averaged gains of all agents
        """
        blocks = []
        for agent in self.agents:
            states = np.atleast_2d(visited[agent])
            gains = self.actor_gains(self.forward_features(states, agent),
                                     agent)
            weights = np.sum(states ** 2, axis=1)
            if np.sum(weights) > 0.0:
                gain = np.average(gains, axis=0, weights=weights)
            else:
                gain = np.mean(gains, axis=0)
            blocks.append(gain.reshape(self.gain_shape))
        return GainMatrix.stack(
            blocks, self.model.state_dim, self.model.input_dim
        )

    def control_inputs(self, states: np.ndarray, gains: np.ndarray) \
            -> np.ndarray:
        """
        u = -K x for every sample
        :param states: The refined states, one row per sample
        :param gains: The flattened gains, one row per sample
        :return: The control inputs, shape (batch, m)
        """
        states = np.atleast_2d(states)
        gains = np.atleast_2d(gains).reshape((-1,) + self.gain_shape)
        return -np.einsum("bij,bj->bi", gains, states)

    def critic_values(
            self,
            psi: np.ndarray,
            gains: np.ndarray,
            inputs: np.ndarray,
            agent: int,
            target: bool = False
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        :param psi: Features, one row per sample
        :param gains: Flattened gains, one row per sample
        :param inputs: The agent's control inputs, one row per sample
        :param agent: The agent id
        :param target: Whether to use the target critics
        :return: The values of both critics, shape (batch,)
        """
        nets = self.params.targets[agent] if target \
            else self.params.critics[agent]
        features = np.hstack([np.atleast_2d(psi), np.atleast_2d(gains),
                              np.atleast_2d(inputs)])
        return nets[0].predict(features)[:, 0], \
            nets[1].predict(features)[:, 0]

    def td_target(
            self,
            rewards: np.ndarray,
            next_states: np.ndarray,
            agent: int,
            terminal: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """
        rho = r + gamma * min(Q_target(psi+, K+, u+), Q'_target(...)),
        with psi+ encoded by the online trunk and head, K+ the
        deterministic gain and u+ = -K+ x+. Terminal transitions use
        rho = r. Rewards are clipped from below at -reward_clip.
        :param rewards: The rewards, shape (batch,)
        :param next_states: The next refined states, one row per sample
        :param agent: The agent id
        :param terminal: Terminal flags, shape (batch,)
        :return: The targets, shape (batch,)
        """
        rewards = np.atleast_1d(np.asarray(rewards, dtype=float))
        rewards = np.maximum(rewards, -self.config.reward_clip)
        if terminal is None:
            terminal = np.zeros_like(rewards)
        alive = 1.0 - np.asarray(terminal, dtype=float)
        next_states = np.atleast_2d(next_states)
        psi_next = self.forward_features(next_states, agent)
        gains_next = self.actor_gains(psi_next, agent)
        inputs_next = self.control_inputs(next_states, gains_next)
        q1, q2 = self.critic_values(psi_next, gains_next, inputs_next,
                                    agent, True)
        return rewards + self.config.gamma * alive * pessimistic_q(q1, q2)

    def critic_loss_and_gradients(
            self,
            agent: int,
            states: np.ndarray,
            gains: np.ndarray,
            inputs: np.ndarray,
            rho: np.ndarray
    ) -> Tuple[Tuple[float, float], Grads]:
        """
        Mean squared errors of both critics against shared targets
        :param agent: The agent id
        :param states: The refined states, one row per sample
        :param gains: The flattened gains taken, one row per sample
        :param inputs: The agent's applied inputs, one row per sample
        :param rho: The targets, shape (batch,)
        :return: The losses (L, L') and the gradients of L + L' for the
                 keys critic1, critic2, head and trunk
        """
        psi, encoder_cache = self._encode(states, agent)
        features = np.hstack([psi, np.atleast_2d(gains),
                              np.atleast_2d(inputs)])
        batch = features.shape[0]
        rho = np.asarray(rho, dtype=float).reshape(batch, 1)

        losses = []
        grads = {}  # type: Grads
        grad_psi = np.zeros_like(psi)
        for index, net in enumerate(self.params.critics[agent]):
            q, cache = net.forward(features)
            error = q - rho
            losses.append(float(np.mean(error ** 2)))
            grad_in, grads["critic{}".format(index + 1)] = \
                net.backward(cache, 2.0 * error / batch)
            grad_psi += grad_in[:, :self.hidden]

        grads["head"], grads["trunk"] = \
            self._encode_backward(agent, encoder_cache, grad_psi)
        return (losses[0], losses[1]), grads

    def actor_loss_and_gradients(self, agent: int, states: np.ndarray) \
            -> Tuple[float, Grads]:
        """
        Negative mean of the pessimistic value of the actor's own gains.
        The gains reach the critics directly and through u = -K x.
        :param agent: The agent id
        :param states: The refined states, one row per sample
        :return: The loss and the gradients for the keys actor, head and
                 trunk
        """
        bound = self.params.gain_bound
        actor = self.params.actors[agent]
        critic1, critic2 = self.params.critics[agent]
        states = np.atleast_2d(states)

        psi, encoder_cache = self._encode(states, agent)
        raw, actor_cache = actor.forward(psi)
        gains = bound * raw
        features = np.hstack([psi, gains,
                              self.control_inputs(states, gains)])
        batch = features.shape[0]

        q1, cache1 = critic1.forward(features)
        q2, cache2 = critic2.forward(features)
        first = q1 <= q2
        loss = -float(np.mean(np.where(first, q1, q2)))

        grad_in1, _ = critic1.backward(
            cache1, np.where(first, -1.0 / batch, 0.0))
        grad_in2, _ = critic2.backward(
            cache2, np.where(first, 0.0, -1.0 / batch))
        grad_in = grad_in1 + grad_in2
        split = self.hidden + self.gain_size
        grad_inputs = grad_in[:, split:]
        grad_gain = grad_in[:, self.hidden:split] - np.einsum(
            "bi,bj->bij", grad_inputs, states
        ).reshape(batch, self.gain_size)

        grad_psi, actor_grads = actor.backward(actor_cache, bound * grad_gain)
        grads = {"actor": actor_grads}
        grads["head"], grads["trunk"] = \
            self._encode_backward(agent, encoder_cache, grad_psi)
        return loss, grads

    def _apply_trunk(self, trunk_grads: Optional[List[np.ndarray]],
                     grads: List[np.ndarray], lr_scale: float):
        if trunk_grads is None:
            self.trunk_optimizer.step(grads, lr_scale)
        else:
            for total, grad in zip(trunk_grads, grads):
                total += grad

    def critic_step(
            self,
            agent: int,
            states: np.ndarray,
            gains: np.ndarray,
            inputs: np.ndarray,
            rho: np.ndarray,
            lr_scale: float = 1.0,
            trunk_grads: Optional[List[np.ndarray]] = None
    ) -> Tuple[float, float]:
        """
        Applies one gradient step to both critics and the encoder, then
        moves the target critics towards the online critics
        :param agent: The agent id
        :param states: The refined states, one row per sample
        :param gains: The flattened gains, one row per sample
        :param inputs: The agent's applied inputs, one row per sample
        :param rho: The targets
        :param lr_scale: Factor applied to the learning rate
        :param trunk_grads: Accumulator for the trunk gradients; if None,
                            the trunk is updated immediately
        :return: The losses (L, L')
        """
        losses, grads = self.critic_loss_and_gradients(
            agent, states, gains, inputs, rho
        )
        finite([np.asarray(losses)], "critic loss",
               {"agent": agent, "losses": losses})

        optimizers = self.optimizers[agent]
        optimizers["critic1"].step(grads["critic1"], lr_scale)
        optimizers["critic2"].step(grads["critic2"], lr_scale)
        optimizers["head"].step(grads["head"], lr_scale)
        self._apply_trunk(trunk_grads, grads["trunk"], lr_scale)

        for target, online in zip(self.params.targets[agent],
                                  self.params.critics[agent]):
            target.soft_update(online, self.config.tau)
        return losses

    def critic_update(
            self,
            agent: int,
            batch: List[Transition],
            lr_scale: float = 1.0,
            trunk_grads: Optional[List[np.ndarray]] = None
    ) -> Tuple[float, float]:
        """
        Computes targets for a replay batch and updates the critics
        :param agent: The agent id
        :param batch: The sampled transitions
        :param lr_scale: Factor applied to the learning rate
        :param trunk_grads: Accumulator for the trunk gradients
        :return: The losses (L, L')
        """
        index = agent - 1
        own = self.model.input_slice(agent)
        states = np.vstack([t.states[index] for t in batch])
        gains = np.vstack([t.gains[index] for t in batch])
        inputs = np.vstack([t.inputs[own] for t in batch])
        rho = self.td_target(
            np.array([t.rewards[index] for t in batch]),
            np.vstack([t.next_states[index] for t in batch]),
            agent,
            np.array([t.terminal for t in batch], dtype=float)
        )
        return self.critic_step(
            agent, states, gains, inputs, rho, lr_scale, trunk_grads
        )

    def actor_update(
            self,
            agent: int,
            states: np.ndarray,
            lr_scale: float = 1.0,
            trunk_grads: Optional[List[np.ndarray]] = None
    ) -> float:
        """
        Applies one step that increases the pessimistic value of the
        actor's gains. The critics are not changed.
        :param agent: The agent id
        :param states: The refined states, one row per sample
        :param lr_scale: Factor applied to the learning rate
        :param trunk_grads: Accumulator for the trunk gradients
        :return: The actor loss
        """
        loss, grads = self.actor_loss_and_gradients(agent, states)
        finite([np.asarray(loss)], "actor loss",
               {"agent": agent, "loss": loss})
        self.optimizers[agent]["actor"].step(grads["actor"], lr_scale)
        self.optimizers[agent]["head"].step(grads["head"], lr_scale)
        self._apply_trunk(trunk_grads, grads["trunk"], lr_scale)
        return loss

    def update(self, batch: List[Transition], lr_scale: float = 1.0) \
            -> Dict[int, Tuple[float, float, float]]:
        """
        Runs the online update of all agents on one replay batch. Trunk
        gradients of all agents are summed and applied once. The actors
        are only updated while enabled and then on every policy_delay-th
        call.
        :param batch: The sampled transitions
        :param lr_scale: Factor applied to the learning rate
        :return: Mapping agent -> (L, L', actor loss); the actor loss is
                 nan when the actors were not updated
        :raises TrainingAborted: If a parameter became non-finite
        """
        self.updates += 1
        train_actors = self.actor_enabled and \
            self.updates % self.config.policy_delay == 0
        trunk_grads = [np.zeros_like(p)
                       for p in self.params.trunk.parameters()]
        losses = {}
        for agent in self.agents:
            critic_losses = \
                self.critic_update(agent, batch, lr_scale, trunk_grads)
            actor_loss = float("nan")
            if train_actors:
                states = np.vstack([t.states[agent - 1] for t in batch])
                actor_loss = \
                    self.actor_update(agent, states, lr_scale, trunk_grads)
            losses[agent] = critic_losses + (actor_loss,)
        self.trunk_optimizer.step(trunk_grads, lr_scale)
        self.check_parameters()
        return losses

    def collect_corrections(self, agent: int, buffer: TimeShiftBuffer) \
            -> int:
        """
        Pops all reconstructed states of an agent's buffer and stores the
        corrected rewards of fully filled ones in the agent's history.
        Slots that never held a step of the current episode are dropped
        silently; unfilled slots are skipped and counted.
        :param agent: The agent id
        :param buffer: The agent's time-shift buffer
        :return: The number of entries added to the history
        """
        s, r = self.model.agent_weights(agent)
        added = 0
        while buffer.ready_count > 0:
            x_hat, filled, record = buffer.pop_reconstructed()
            if record is None:
                continue
            if not filled:
                self.skipped += 1
                self.logger.debug("Skipped unfilled slot of agent {} at {}"
                                  .format(agent, record.time))
                continue
            reward = immediate_reward(x_hat, record.own_input, s, r)
            self.histories[agent].append(
                HistoryEntry(x_hat.copy(), reward, record)
            )
            added += 1
        return added

    def corrective_replay(self, agent: int, buffer: TimeShiftBuffer) -> int:
        """
        Runs the corrective phase of an agent: collects corrected rewards
        from the time-shift buffer and replays the whole history at the
        reduced learning rate, one batch at a time. The actor takes part
        only while actors are enabled.
        :param agent: The agent id
        :param buffer: The agent's time-shift buffer
        :return: The number of corrective updates
        :raises TrainingAborted: If a parameter became non-finite
        """
        self.collect_corrections(agent, buffer)
        history = self.histories[agent]
        factor = self.config.corrective_factor
        updates = 0

        while len(history) > 0:
            chunk = history.drain(self.config.batch_size)
            if factor == 0.0:
                continue
            states = np.vstack([e.state for e in chunk])
            gains = np.vstack([e.record.gain for e in chunk])
            inputs = np.vstack([e.record.own_input for e in chunk])
            rho = self.td_target(
                np.array([e.reward for e in chunk]),
                np.vstack([e.record.next_state for e in chunk]),
                agent,
                np.array([e.record.terminal for e in chunk], dtype=float)
            )
            trunk_grads = [np.zeros_like(p)
                           for p in self.params.trunk.parameters()]
            self.critic_step(agent, states, gains, inputs, rho, factor,
                             trunk_grads)
            if self.actor_enabled:
                self.actor_update(agent, states, factor, trunk_grads)
            self.trunk_optimizer.step(trunk_grads, factor)
            updates += 1
        if updates > 0:
            self.check_parameters()
        return updates

    def check_parameters(self):
        """
        :return: None
        :raises TrainingAborted: If any parameter is not finite
        """
        for name, net in self.params.networks():
            try:
                finite(net.parameters(), "parameters in " + name)
            except TrainingAborted as e:
                self.logger.error(str(e))
                raise e
