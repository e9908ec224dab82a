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

import numpy as np
from typing import Dict, List
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.exceptions import InvalidConfiguration

A5 = [
    [0.63, 0.05, -0.04, 0.03, 0.02],
    [0.04, 0.59, 0.06, -0.03, 0.05],
    [-0.02, 0.03, 0.56, 0.04, -0.02],
    [0.03, -0.02, 0.02, 0.58, 0.06],
    [0.02, 0.03, -0.02, 0.04, 0.57]
]

A6 = [
    [0.63, 0.05, -0.04, 0.03, 0.02, -0.01],
    [0.04, 0.59, 0.06, -0.03, 0.05, 0.00],
    [-0.02, 0.03, 0.56, 0.04, -0.02, 0.02],
    [0.03, -0.02, 0.02, 0.58, 0.06, 0.01],
    [0.02, 0.03, -0.02, 0.04, 0.57, 0.01],
    [0.02, 0.00, -0.03, -0.02, -0.02, 0.60]
]

A8 = [
    [0.63, 0.05, -0.04, 0.03, 0.02, -0.01, 0.02, -0.01],
    [0.04, 0.59, 0.06, -0.03, 0.05, 0.00, 0.01, 0.00],
    [-0.02, 0.03, 0.56, 0.04, -0.02, 0.02, -0.02, 0.01],
    [0.03, -0.02, 0.02, 0.58, 0.06, 0.01, -0.00, -0.01],
    [0.02, 0.03, -0.02, 0.04, 0.57, 0.01, 0.00, 0.01],
    [0.02, 0.00, -0.03, -0.02, -0.02, 0.60, -0.01, 0.03],
    [-0.02, -0.03, 0.02, -0.00, 0.01, 0.02, 0.58, -0.03],
    [0.01, -0.01, 0.03, 0.02, 0.01, -0.00, -0.03, 0.59]
]

PRESETS = {
    "A5": A5,
    "A6": A6,
    "A8": A8
}  # type: Dict[str, List[List[float]]]


def load_preset(name: str) -> MasModel:
    """
    Loads one of the named scalar-agent benchmark models.
    The input, state weight and input weight matrices are identities.
    :param name: The preset name (A5, A6 or A8)
    :return: The model
    :raises InvalidConfiguration: If the preset is unknown
    """
    if name not in PRESETS:
        raise InvalidConfiguration(
            "model.preset",
            "unknown preset {}, expected one of {}".format(
                name, sorted(PRESETS)
            )
        )
    a = np.array(PRESETS[name], dtype=float)
    agents = a.shape[0]
    eye = np.eye(agents)
    return MasModel(a, eye, eye, eye, agents)


def preset_for_size(agents: int) -> str:
    """
    :param agents: The number of scalar agents
    :return: The name of the preset with that many agents
    :raises InvalidConfiguration: If no such preset exists
    """
    name = "A{}".format(agents)
    if name not in PRESETS:
        raise InvalidConfiguration(
            "network.agents", "no preset model for {} agents".format(agents)
        )
    return name
