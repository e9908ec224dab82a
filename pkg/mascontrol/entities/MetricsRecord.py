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

from typing import Any, Dict, List


class MetricsRecord:
    """
    Class that models one row of the per-episode metrics
    """

    COLUMNS = ["scenario_id", "seed", "episode", "cost", "best_so_far",
               "regret", "spectral_radius", "blown_up"]

    def __init__(
            self,
            episode: int,
            cost: float,
            spectral_radius: float,
            blown_up: bool,
            seed: int = 0,
            scenario_id: str = "",
            best_so_far: float = float("nan"),
            regret: float = 0.0
    ):
        """
        Initializes the MetricsRecord object
        :param episode: The episode index
        :param cost: The episode cost G
        :param spectral_radius: The spectral radius of the closed loop
        :param blown_up: Whether the episode was terminated by blow-up
        :param seed: The seed of the run
        :param scenario_id: The scenario identifier
        :param best_so_far: The best-so-far reference cost G_ref
        :param regret: The cumulative regret
        """
        self.scenario_id = scenario_id
        self.seed = int(seed)
        self.episode = int(episode)
        self.cost = float(cost)
        self.best_so_far = float(best_so_far)
        self.regret = float(regret)
        self.spectral_radius = float(spectral_radius)
        self.blown_up = bool(blown_up)

    def to_row(self) -> Dict[str, Any]:
        """
        :return: The record as a CSV row. Floats use repr() so that
                 parsing the row reproduces them exactly.
        """
        return {
            "scenario_id": self.scenario_id,
            "seed": self.seed,
            "episode": self.episode,
            "cost": repr(self.cost),
            "best_so_far": repr(self.best_so_far),
            "regret": repr(self.regret),
            "spectral_radius": repr(self.spectral_radius),
            "blown_up": int(self.blown_up)
        }

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "MetricsRecord":
        """
        :param row: A CSV row as written by to_row()
        :return: The parsed record
        """
        return cls(
            episode=int(row["episode"]),
            cost=float(row["cost"]),
            spectral_radius=float(row["spectral_radius"]),
            blown_up=bool(int(row["blown_up"])),
            seed=int(row["seed"]),
            scenario_id=row["scenario_id"],
            best_so_far=float(row["best_so_far"]),
            regret=float(row["regret"])
        )

    def __eq__(self, other: object) -> bool:
        """
        :param other: The object to compare with
        :return: Whether all fields match
        """
        if not isinstance(other, MetricsRecord):
            return False
        return all(
            repr(getattr(self, c)) == repr(getattr(other, c))
            for c in self.COLUMNS
        )

    def __repr__(self) -> str:
        """
        :return: A string representation of the MetricsRecord object
        """
        return "MetricsRecord({})".format(", ".join(
            "{}={!r}".format(c, getattr(self, c)) for c in self.COLUMNS
        ))


def rows(records: List[MetricsRecord]) -> List[Dict[str, Any]]:
    """
    :param records: The records
    :return: The records as CSV rows
    """
    return [record.to_row() for record in records]
