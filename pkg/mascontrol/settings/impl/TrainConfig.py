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

from typing import Any, Dict
from mascontrol.settings.Settings import Settings
from mascontrol.exceptions import InvalidConfiguration

INITIAL_STATES = ["uniform", "fixed"]
"""Uniform draws a new state in [-1, 1] per episode, fixed reuses one"""


class TrainConfig(Settings):
    """
    Class that defines the hyperparameters of a training run, for the
    actor-critic learner as well as for the state tracking baseline
    """

    FIELDS = {
        "learning_rate": (1e-4, float),
        "gamma": (0.95, float),
        "replay_capacity": (1000, int),
        "batch_size": (32, int),
        "episodes": (5000, int),
        "steps": (10, int),
        "exploration_initial": (0.3, float),
        "exploration_final": (0.02, float),
        "tau": (0.005, float),
        "corrective_factor": (0.1, float),
        "gain_bound": (2.0, float),
        "hidden": (64, int),
        "blowup_threshold": (1e3, float),
        "reward_clip": (100.0, float),
        "policy_delay": (2, int),
        "warmup_episodes": (10, int),
        "initial_state": ("uniform", str),
        "seed": (0, int),
        "log_every": (100, int),
        "dst_step_size": (1e-3, float),
        "dst_passes": (10000, int),
        "dst_iterations": (10, int),
        "dst_rollouts": (20, int),
        "dst_exploration": (0.3, float)
    }

    def __init__(self, **kwargs: Any):
        """
        Initializes the TrainConfig object. Missing fields use defaults.
        :param kwargs: Field values by name
        :raises InvalidConfiguration: On unknown fields or invalid values
        """
        for name in kwargs:
            if name not in self.FIELDS:
                raise InvalidConfiguration("train." + name, "unknown field")
        for name, (default, _) in self.FIELDS.items():
            setattr(self, name, kwargs.get(name, default))
        self.history_capacity = self.replay_capacity
        self.validate()

    def validate(self):
        """
        Checks the value ranges of all fields
        :return: None
        :raises InvalidConfiguration: If a value is out of range
        """
        def require(condition: bool, name: str, reason: str):
            if not condition:
                raise InvalidConfiguration("train." + name, reason)

        require(0.0 < self.gamma < 1.0, "gamma", "must lie in (0, 1)")
        for name in ["learning_rate", "gain_bound", "blowup_threshold",
                     "reward_clip", "dst_step_size"]:
            require(getattr(self, name) > 0, name, "must be positive")
        for name in ["replay_capacity", "batch_size", "steps", "hidden",
                     "log_every", "policy_delay", "dst_passes",
                     "dst_rollouts"]:
            require(getattr(self, name) >= 1, name, "must be at least 1")
        for name in ["episodes", "warmup_episodes", "dst_iterations"]:
            require(getattr(self, name) >= 0, name, "must not be negative")
        require(self.batch_size <= self.replay_capacity, "batch_size",
                "must not exceed replay_capacity")
        require(0.0 <= self.tau <= 1.0, "tau", "must lie in [0, 1]")
        require(self.corrective_factor >= 0.0, "corrective_factor",
                "must not be negative")
        require(0.0 <= self.exploration_final <= self.exploration_initial,
                "exploration_final",
                "must lie between 0 and exploration_initial")
        require(self.dst_exploration >= 0.0, "dst_exploration",
                "must not be negative")
        require(self.initial_state in INITIAL_STATES, "initial_state",
                "must be one of " + ", ".join(INITIAL_STATES))

    def exploration_std(self, episode: int) -> float:
        """
        The exploration noise decays geometrically from the initial to the
        final standard deviation over the configured episodes
        :param episode: The episode index
        :return: The standard deviation used in that episode
        """
        if self.episodes <= 1 or self.exploration_final == 0.0:
            return self.exploration_initial if episode == 0 \
                else self.exploration_final
        ratio = self.exploration_final / self.exploration_initial
        fraction = min(episode / (self.episodes - 1), 1.0)
        return self.exploration_initial * ratio ** fraction

    def replace(self, **changes: Any) -> "TrainConfig":
        """
        :param changes: The fields to change
        :return: A copy of the config with the changes applied
        """
        values = self.to_dict()
        values.update(changes)
        return TrainConfig(**values)

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: The settings as a JSON-compatible dictionary
        """
        return {name: getattr(self, name) for name in self.FIELDS}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], prefix: str = "train.") \
            -> "TrainConfig":
        """
        Generates a TrainConfig object from a dictionary
        :param data: The dictionary
        :param prefix: The dotted path of the dictionary
        :return: The generated TrainConfig object
        """
        values = {}
        for name in data:
            if name not in cls.FIELDS:
                raise InvalidConfiguration(prefix + name, "unknown field")
        for name, (default, kind) in cls.FIELDS.items():
            values[name] = cls.field(data, name, default, kind, prefix)
        return cls(**values)

    def __str__(self) -> str:
        """
        :return: A string representation of the TrainConfig object
        """
        return "TrainConfig(episodes={}, steps={}, lr={}, gamma={})".format(
            self.episodes, self.steps, self.learning_rate, self.gamma
        )
