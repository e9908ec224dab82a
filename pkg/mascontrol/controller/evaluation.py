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
from typing import Dict, List, Optional
from mascontrol.controller.Controller import Controller
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.messaging.MessageNetwork import MessageNetwork

logger = logging.getLogger(__name__)


class EvaluationResult:
    """
    Class that models the outcome of closed-loop rollouts from a set of
    initial states
    """

    def __init__(self, costs: List[float], blown: List[bool],
                 agent_costs: np.ndarray):
        """
        Initializes the EvaluationResult object
        :param costs: The accumulated cost of every rollout
        :param blown: Whether each rollout was terminated by blow-up
        :param agent_costs: The mean cost share of every agent over the
                            rollouts that did not blow up
        """
        self.costs = costs
        self.blown = blown
        self.agent_costs = agent_costs

    @property
    def mean_cost(self) -> float:
        """
        :return: The mean cost of the rollouts that did not blow up,
                 or inf if all of them did
        """
        kept = [c for c, b in zip(self.costs, self.blown) if not b]
        return float(np.mean(kept)) if kept else float("inf")

    @property
    def blown_count(self) -> int:
        """
        :return: The number of rollouts terminated by blow-up
        """
        return sum(self.blown)


def agent_cost_shares(model: MasModel, x: np.ndarray, u: np.ndarray) \
        -> np.ndarray:
    """
    Splits the stage cost into one share per agent,
    x_l'(Sx)_l + u_l'(Ru)_l. The shares sum to the stage cost.
    :param model: The plant model
    :param x: The global state
    :param u: The global input
    :return: The shares, ordered by agent id
    """
    sx, ru = model.s @ x, model.r @ u
    return np.array([
        x[model.state_slice(agent)] @ sx[model.state_slice(agent)] +
        u[model.input_slice(agent)] @ ru[model.input_slice(agent)]
        for agent in range(1, model.agents + 1)
    ])


def sample_initial_states(model: MasModel, count: int,
                          rng: np.random.Generator) -> List[np.ndarray]:
    """
    :param model: The plant model
    :param count: The number of states
    :param rng: The random number generator
    :return: Initial states drawn uniformly from [-1, 1]
    """
    return [rng.uniform(-1.0, 1.0, size=model.size) for _ in range(count)]


def _estimates(controller: Controller, network: Optional[MessageNetwork],
               x: np.ndarray) -> Dict[int, np.ndarray]:
    if network is None or controller.observation == "true":
        return {agent: x for agent in controller.agents}
    refined = network.observe(x)
    if controller.observation == "raw":
        return network.raw(x)
    return {agent: state.values for agent, state in refined.items()}


def evaluate_controller(
        model: MasModel,
        controller: Controller,
        initial_states: List[np.ndarray],
        horizon: int = 20,
        network: Optional[MessageNetwork] = None,
        blowup_threshold: float = 1e3
) -> EvaluationResult:
    """
    Rolls out a controller from every initial state. With a network,
    the agents act on what they receive through it.
    :param model: The plant model
    :param controller: The controller
    :param initial_states: The initial global states
    :param horizon: The number of steps per rollout
    :param network: The message network; None means exact states
    :param blowup_threshold: The max-norm that terminates a rollout
    :return: The evaluation result
    """
    costs, blown_flags = [], []
    shares = np.zeros(model.agents)
    kept = 0
    for x0 in initial_states:
        x = model.check_state(x0)
        if network is not None:
            network.reset(x)
        cost = 0.0
        rollout_shares = np.zeros(model.agents)
        blown = False
        for _ in range(horizon):
            u = controller.inputs(_estimates(controller, network, x))
            step_shares = agent_cost_shares(model, x, u)
            cost += float(np.sum(step_shares))
            rollout_shares += step_shares
            x = model.step_global(x, u)
            if not np.all(np.isfinite(x)) or \
                    np.max(np.abs(x)) > blowup_threshold:
                blown = True
                break
        costs.append(cost)
        blown_flags.append(blown)
        if not blown:
            shares += rollout_shares
            kept += 1

    if any(blown_flags):
        logger.warning("{} of {} rollouts of {} blew up".format(
            sum(blown_flags), len(blown_flags), controller.name()
        ))
    return EvaluationResult(
        costs, blown_flags, shares / kept if kept else shares
    )
