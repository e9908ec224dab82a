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

import json
import numpy as np
from typing import Any, Dict, List, Tuple
from mascontrol.learning.DenseNet import Activation, DenseLayer, DenseNet
from mascontrol.exceptions import InvalidConfiguration

OUTPUT_INIT_BOUND = 3e-3
"""Bound of the uniform initialization of actor and critic output layers"""


class CdnetParams:
    """
    Class that holds every network of the actor-critic learner: the shared
    encoder trunk and, per agent, a head, an actor, two critics and the
    target copies of both critics.

    Checkpoints are JSON documents with an ordered "layout" list, one
    entry per parameter array in layer order, and a flat "values" list
    holding all arrays concatenated in row-major order.
    """

    def __init__(
            self,
            trunk: DenseNet,
            heads: Dict[int, DenseNet],
            actors: Dict[int, DenseNet],
            critics: Dict[int, Tuple[DenseNet, DenseNet]],
            targets: Dict[int, Tuple[DenseNet, DenseNet]],
            gain_bound: float
    ):
        """
        Initializes the CdnetParams object
        :param trunk: The shared encoder
        :param heads: Mapping agent -> encoder head
        :param actors: Mapping agent -> actor
        :param critics: Mapping agent -> (Q, Q')
        :param targets: Mapping agent -> target copies of (Q, Q')
        :param gain_bound: The scale of the actors' Tanh output
        """
        self.trunk = trunk
        self.heads = heads
        self.actors = actors
        self.critics = critics
        self.targets = targets
        self.gain_bound = gain_bound

    @classmethod
    def initialize(
            cls,
            agents: int,
            state_size: int,
            gain_size: int,
            rng: np.random.Generator,
            hidden: int = 64,
            gain_bound: float = 2.0,
            input_size: int = 1
    ) -> "CdnetParams":
        """
        Creates randomly initialized networks. The output layers of
        actors and critics start close to zero, so initial gains and
        values are close to zero as well.
        :param agents: The number of agents L
        :param state_size: The global state dimension nL
        :param gain_size: The number of entries of one agent's gain
        :param rng: The random number generator
        :param hidden: The width of all hidden layers
        :param gain_bound: The scale of the actors' Tanh output
        :param input_size: The dimension m of one agent's control input
        :return: The generated parameters
        """
        relu, tanh, linear = \
            Activation.RELU, Activation.TANH, Activation.LINEAR
        trunk = DenseNet.create(
            [state_size, hidden, hidden], [relu, relu], rng
        )
        heads, actors, critics, targets = {}, {}, {}, {}
        for agent in range(1, agents + 1):
            heads[agent] = DenseNet.create([hidden, hidden], [relu], rng)
            actors[agent] = DenseNet.create(
                [hidden, hidden, gain_size], [relu, tanh], rng,
                OUTPUT_INIT_BOUND
            )
            pair = tuple(
                DenseNet.create(
                    [hidden + gain_size + input_size, hidden, 1],
                    [relu, linear], rng, OUTPUT_INIT_BOUND
                )
                for _ in range(2)
            )
            critics[agent] = pair
            targets[agent] = (pair[0].copy(), pair[1].copy())
        return cls(trunk, heads, actors, critics, targets, gain_bound)

    @property
    def agents(self) -> List[int]:
        """
        :return: The sorted agent ids
        """
        return sorted(self.heads)

    def networks(self) -> List[Tuple[str, DenseNet]]:
        """
        :return: All networks with their names, in checkpoint order
        """
        nets = [("trunk", self.trunk)]
        for agent in self.agents:
            nets.extend([
                ("head.{}".format(agent), self.heads[agent]),
                ("actor.{}".format(agent), self.actors[agent]),
                ("critic1.{}".format(agent), self.critics[agent][0]),
                ("critic2.{}".format(agent), self.critics[agent][1]),
                ("target1.{}".format(agent), self.targets[agent][0]),
                ("target2.{}".format(agent), self.targets[agent][1])
            ])
        return nets

    def serialize(self) -> str:
        """
        Serializes all parameters to a JSON string
        :return: The serialized CdnetParams object
        """
        layout = []  # type: List[Dict[str, Any]]
        values = []  # type: List[float]
        for name, net in self.networks():
            for index, layer in enumerate(net.layers):
                for kind, array in [("weight", layer.weight),
                                    ("bias", layer.bias)]:
                    layout.append({
                        "network": name,
                        "layer": index,
                        "param": kind,
                        "shape": list(array.shape),
                        "activation": layer.activation.value
                    })
                    values.extend(float(v) for v in array.ravel(order="C"))
        return json.dumps({
            "gain_bound": self.gain_bound,
            "layout": layout,
            "values": values
        })

    @classmethod
    def deserialize(cls, serialized: str) -> "CdnetParams":
        """
        Deserializes a checkpoint string
        :param serialized: The serialized string
        :return: The deserialized CdnetParams object
        :raises InvalidConfiguration: If the layout is inconsistent
        """
        obj = json.loads(serialized)
        values = np.asarray(obj["values"], dtype=float)
        offset = 0
        layers = {}  # type: Dict[str, Dict[int, Dict[str, Any]]]
        order = []  # type: List[str]

        for entry in obj["layout"]:
            shape = tuple(entry["shape"])
            size = int(np.prod(shape))
            if offset + size > values.shape[0]:
                raise InvalidConfiguration(
                    "values", "checkpoint ends inside " + entry["network"]
                )
            array = values[offset:offset + size].reshape(shape, order="C")
            offset += size
            name = entry["network"]
            if name not in layers:
                layers[name] = {}
                order.append(name)
            layer = layers[name].setdefault(entry["layer"], {})
            layer[entry["param"]] = array.copy()
            layer["activation"] = Activation(entry["activation"])

        if offset != values.shape[0]:
            raise InvalidConfiguration("values", "trailing values")

        nets = {
            name: DenseNet([
                DenseLayer(spec["weight"], spec["bias"], spec["activation"])
                for _, spec in sorted(layers[name].items())
            ])
            for name in order
        }
        heads, actors, critics, targets = {}, {}, {}, {}
        for name, net in nets.items():
            if name == "trunk":
                continue
            kind, agent = name.split(".")
            agent = int(agent)
            if kind == "head":
                heads[agent] = net
            elif kind == "actor":
                actors[agent] = net
        for agent in heads:
            critics[agent] = (nets["critic1.{}".format(agent)],
                              nets["critic2.{}".format(agent)])
            targets[agent] = (nets["target1.{}".format(agent)],
                              nets["target2.{}".format(agent)])
        return cls(nets["trunk"], heads, actors, critics, targets,
                   float(obj["gain_bound"]))

    def save(self, path: str):
        """
        Writes a checkpoint file
        :param path: The file path
        :return: None
        """
        with open(path, "w") as f:
            f.write(self.serialize())

    @classmethod
    def load(cls, path: str) -> "CdnetParams":
        """
        Reads a checkpoint file
        :param path: The file path
        :return: The loaded parameters
        """
        with open(path, "r") as f:
            return cls.deserialize(f.read())
