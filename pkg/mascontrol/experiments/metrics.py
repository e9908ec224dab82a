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

import math
import numpy as np
from typing import List, Optional, Sequence
from mascontrol.entities.MetricsRecord import MetricsRecord

STEADY_STATE_EPISODES = 1000


def best_so_far(costs: Sequence[float],
                blown: Optional[Sequence[bool]] = None) -> List[float]:
    """
    The running minimum G_ref of the episode costs. Blown episodes do not
    take part and repeat the previous value (nan before the first
    regular episode).
    :param costs: The episode costs
    :param blown: The blow-up flags
    :return: G_ref, aligned with the input
    """
    blown = [False] * len(costs) if blown is None else blown
    best = float("nan")
    result = []
    for cost, flag in zip(costs, blown):
        if not flag and (math.isnan(best) or cost < best):
            best = float(cost)
        result.append(best)
    return result


def cumulative_regret(costs: Sequence[float],
                      blown: Optional[Sequence[bool]] = None) -> List[float]:
    """
    Regret(e) = sum over i <= e of G(i) - G_ref(i). Blown episodes add
    nothing and repeat the previous value.
    :param costs: The episode costs
    :param blown: The blow-up flags
    :return: The cumulative regret, aligned with the input
    """
    blown = [False] * len(costs) if blown is None else blown
    reference = best_so_far(costs, blown)
    total = 0.0
    result = []
    for cost, flag, best in zip(costs, blown, reference):
        if not flag:
            total += float(cost) - best
        result.append(total)
    return result


def annotate(records: List[MetricsRecord]) -> List[MetricsRecord]:
    """
    Fills in best-so-far costs and cumulative regret of one run
    :param records: The records of one run, ordered by episode
    :return: The same records
    """
    costs = [r.cost for r in records]
    blown = [r.blown_up for r in records]
    for record, best, regret in zip(records, best_so_far(costs, blown),
                                    cumulative_regret(costs, blown)):
        record.best_so_far = best
        record.regret = regret
    return records


def steady_state_window(episodes: int) -> int:
    """
    :param episodes: The number of episodes of a run
    :return: The number of final episodes averaged for the steady state:
             1000, or the last half for shorter runs
    """
    if episodes >= STEADY_STATE_EPISODES:
        return STEADY_STATE_EPISODES
    return max(1, int(math.ceil(episodes / 2)))


def steady_state_cost(records: List[MetricsRecord]) -> float:
    """
    :param records: The records of one run
    :return: The mean cost of the regular episodes in the steady-state
             window, nan if there are none
    """
    if not records:
        return float("nan")
    window = records[-steady_state_window(len(records)):]
    costs = [r.cost for r in window if not r.blown_up]
    return float(np.mean(costs)) if costs else float("nan")
