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

import copy
import numpy as np
from typing import Any, Dict, List, Optional
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.presets import load_preset, preset_for_size
from mascontrol.exceptions import InvalidConfiguration, MasControlError
from mascontrol.experiments.topologies import make_topology
from mascontrol.settings.Settings import Settings
from mascontrol.settings.impl.TrainConfig import TrainConfig

METHODS = ["cdnet", "dst", "opt"]
NOISE_KINDS = ["zero", "uniform", "sampled", "explicit"]
COMMUNICATIONS = ["ideal", "delay", "noise", "both"]
AXES = ["lambda", "size", "topology", "communication"]

NETWORK_DEFAULTS = {
    "topology": "ring",
    "agents": None,
    "edges": None,
    "lambda": 1.0,
    "noise": {"kind": "sampled"},
    "delays": True,
    "ideal": False,
    "ema_window": 10,
    "beta_min": 0.05,
    "beta_max": 0.95,
    "buffer_margin": 4
}

METHOD_DEFAULTS = {
    "name": "cdnet",
    "seeds": [0],
    "horizon": 20,
    "eval_states": 50,
    "output": "results",
    "resume": None
}


def _line_of(text: str, key: str) -> Optional[int]:
    """
    :param text: A JSON document
    :param key: An object key
    :return: The 1-based line of the key's first occurrence, if any
    """
    needle = '"{}"'.format(key)
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


class ScenarioConfig(Settings):
    """
    Class that defines a complete experiment scenario: the plant model,
    the communication network, the training hyperparameters and the
    method to run. Scenario files are JSON documents with the sections
    model, network, train and method.
    """

    def __init__(
            self,
            scenario_id: str,
            model: Dict[str, Any],
            network: Dict[str, Any],
            train: TrainConfig,
            method: Dict[str, Any]
    ):
        """
        Initializes the ScenarioConfig object
        :param scenario_id: The scenario identifier used in output files
        :param model: The model section: {"preset": name} or the matrices
                      a, b, s, r with agents, state_dim and input_dim
        :param network: The network section
        :param train: The training configuration
        :param method: The method section
        :raises InvalidConfiguration: If a field is invalid
        """
        self.scenario_id = scenario_id
        self.model = model
        self.network = dict(NETWORK_DEFAULTS)
        self.network.update(network)
        self.train = train
        self.method = dict(METHOD_DEFAULTS)
        self.method.update(method)
        self.validate()

    def build_model(self) -> MasModel:
        """
        :return: The plant model of the scenario
        :raises InvalidConfiguration: If the model section is invalid
        """
        if "preset" in self.model:
            return load_preset(self.model["preset"])
        try:
            return MasModel(
                np.array(self.model["a"], dtype=float),
                np.array(self.model["b"], dtype=float),
                np.array(self.model["s"], dtype=float),
                np.array(self.model["r"], dtype=float),
                int(self.model["agents"]),
                int(self.model.get("state_dim", 1)),
                int(self.model.get("input_dim", 1))
            )
        except KeyError as e:
            raise InvalidConfiguration(
                "model." + str(e.args[0]), "missing field"
            )
        except (MasControlError, ValueError, TypeError) as e:
            raise InvalidConfiguration("model", str(e))

    @property
    def agents(self) -> int:
        """
        :return: The number of agents L
        """
        if self.network["agents"] is not None:
            return int(self.network["agents"])
        return self.build_model().agents

    def validate(self):
        """
        Checks the sections for consistency
        :return: None
        :raises InvalidConfiguration: If a field is invalid
        """
        if not isinstance(self.model, dict) or \
                ("preset" not in self.model and "a" not in self.model):
            raise InvalidConfiguration(
                "model", "expected a preset or the matrices a, b, s, r"
            )
        model = self.build_model()
        if self.network["agents"] is None:
            self.network["agents"] = model.agents
        if int(self.network["agents"]) != model.agents:
            raise InvalidConfiguration(
                "network.agents", "{} agents, but the model has {}".format(
                    self.network["agents"], model.agents
                )
            )

        try:
            make_topology(self.network["topology"],
                          int(self.network["agents"]),
                          self.network["edges"])
        except InvalidConfiguration as e:
            raise e
        except MasControlError as e:
            raise InvalidConfiguration("network.edges", str(e))

        network = self.network
        if network["lambda"] < 0:
            raise InvalidConfiguration("network.lambda", "must not be "
                                                         "negative")
        noise = network["noise"]
        if not isinstance(noise, dict) or noise.get("kind") not in \
                NOISE_KINDS:
            raise InvalidConfiguration(
                "network.noise.kind", "expected one of {}".format(NOISE_KINDS)
            )
        if noise["kind"] == "explicit" and network["topology"] != "explicit":
            raise InvalidConfiguration(
                "network.noise.kind",
                "explicit noise needs an explicit topology"
            )
        if not 0.0 < network["beta_min"] <= network["beta_max"] <= 1.0:
            raise InvalidConfiguration(
                "network.beta_min", "need 0 < beta_min <= beta_max <= 1"
            )
        if network["ema_window"] < 1:
            raise InvalidConfiguration("network.ema_window", "must be >= 1")
        if network["buffer_margin"] < 1:
            raise InvalidConfiguration("network.buffer_margin",
                                       "must be >= 1")

        method = self.method
        if method["name"] not in METHODS:
            raise InvalidConfiguration(
                "method.name", "expected one of {}".format(METHODS)
            )
        if not isinstance(method["seeds"], list) or not method["seeds"] or \
                not all(isinstance(s, int) for s in method["seeds"]):
            raise InvalidConfiguration("method.seeds",
                                       "expected a list of integers")
        if method["horizon"] < 1:
            raise InvalidConfiguration("method.horizon", "must be >= 1")
        if method["eval_states"] < 1:
            raise InvalidConfiguration("method.eval_states", "must be >= 1")
        if method["resume"] is not None and method["name"] != "cdnet":
            raise InvalidConfiguration(
                "method.resume", "only the cdnet method can resume"
            )

    def with_seeds(self, seeds: List[int]) -> "ScenarioConfig":
        """
        :param seeds: The seeds to run
        :return: A copy of the config with other seeds
        """
        data = self.to_dict()
        data["method"]["seeds"] = list(seeds)
        return ScenarioConfig.from_dict(data)

    def with_resume(self, directory: str) -> "ScenarioConfig":
        """
        :param directory: The directory holding the checkpoints to
                          continue from
        :return: A copy of the config that resumes training
        """
        data = self.to_dict()
        data["method"]["resume"] = directory
        return ScenarioConfig.from_dict(data)

    def with_axis(self, axis: str, value: Any) -> "ScenarioConfig":
        """
        Generates the config of one sweep point
        :param axis: lambda, size, topology or communication
        :param value: The axis value
        :return: The modified copy, with the value in its scenario id
        :raises InvalidConfiguration: If the axis or value is invalid
        """
        data = self.to_dict()
        network = data["network"]
        if axis == "lambda":
            network["lambda"] = float(value)
        elif axis == "size":
            if "preset" not in data["model"]:
                raise InvalidConfiguration(
                    "model.preset", "size sweeps need a preset model"
                )
            data["model"] = {"preset": preset_for_size(int(value))}
            network["agents"] = int(value)
        elif axis == "topology":
            network["topology"] = str(value)
        elif axis == "communication":
            if value not in COMMUNICATIONS:
                raise InvalidConfiguration(
                    "communication", "expected one of {}".format(
                        COMMUNICATIONS)
                )
            network["ideal"] = value == "ideal"
            network["delays"] = value in ("delay", "both")
            if value == "delay":
                network["noise"] = {"kind": "zero"}
        else:
            raise InvalidConfiguration(
                "axis", "expected one of {}".format(AXES)
            )
        data["scenario_id"] = "{}_{}-{}".format(
            self.scenario_id, axis, value
        )
        return ScenarioConfig.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: The settings as a JSON-compatible dictionary
        """
        return copy.deepcopy({
            "scenario_id": self.scenario_id,
            "model": self.model,
            "network": self.network,
            "train": self.train.to_dict(),
            "method": self.method
        })

    @classmethod
    def from_dict(cls, data: Dict[str, Any], prefix: str = "") \
            -> "ScenarioConfig":
        """
        Generates a ScenarioConfig object from a dictionary
        :param data: The dictionary
        :param prefix: Unused, scenarios are top-level documents
        :return: The generated ScenarioConfig object
        """
        for name in data:
            if name not in ["scenario_id", "model", "network", "train",
                            "method"]:
                raise InvalidConfiguration(name, "unknown section")
        for name in ["model", "network", "train", "method"]:
            if not isinstance(data.get(name, {}), dict):
                raise InvalidConfiguration(name, "expected an object")

        network = data.get("network", {})
        for name in network:
            if name not in NETWORK_DEFAULTS:
                raise InvalidConfiguration("network." + name,
                                           "unknown field")
        method = data.get("method", {})
        for name in method:
            if name not in METHOD_DEFAULTS:
                raise InvalidConfiguration("method." + name, "unknown field")

        checked_network = {}
        for name, default in NETWORK_DEFAULTS.items():
            if name in ["agents", "edges", "noise"]:
                if name in network:
                    checked_network[name] = network[name]
                continue
            kind = type(default)
            checked_network[name] = \
                cls.field(network, name, default, kind, "network.")
        checked_method = {
            "name": cls.field(method, "name", "cdnet", str, "method."),
            "seeds": cls.field(method, "seeds", [0], list, "method."),
            "horizon": cls.field(method, "horizon", 20, int, "method."),
            "eval_states": cls.field(method, "eval_states", 50, int,
                                     "method."),
            "output": cls.field(method, "output", "results", str,
                                "method."),
            "resume": None if method.get("resume") is None else
            cls.field(method, "resume", None, str, "method.")
        }

        return cls(
            str(data.get("scenario_id", "scenario")),
            data.get("model", {"preset": "A6"}),
            checked_network,
            TrainConfig.from_dict(data.get("train", {})),
            checked_method
        )

    @classmethod
    def deserialize(cls, serialized: str) -> "ScenarioConfig":
        """
        Parses a scenario document. Errors carry the dotted field path
        and, where it can be found, the line of the field.
        :param serialized: The JSON document
        :return: The deserialized ScenarioConfig object
        """
        try:
            return super().deserialize(serialized)
        except InvalidConfiguration as e:
            if e.line is None:
                e.line = _line_of(serialized, e.field.split(".")[-1])
            raise e

    @classmethod
    def load(cls, path: str) -> "ScenarioConfig":
        """
        :param path: The path of a scenario file
        :return: The parsed scenario
        """
        with open(path, "r") as f:
            return cls.deserialize(f.read())

    def save(self, path: str):
        """
        :param path: The file to write the scenario to
        :return: None
        """
        with open(path, "w") as f:
            f.write(self.serialize())
