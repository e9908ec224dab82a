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

import os
import json
import shutil
import tempfile
import unittest
import numpy as np
from typing import Any, Dict, List
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.control import solve_dare, spectral_radius
from mascontrol.entities.MetricsRecord import MetricsRecord
from mascontrol.exceptions import InvalidConfiguration, InvalidGraph
from mascontrol.experiments.metrics import annotate, best_so_far, \
    cumulative_regret, steady_state_cost, steady_state_window
from mascontrol.experiments.runner import oracle, parse_axis_value, \
    read_metrics, run_scenario, sweep, write_metrics
from mascontrol.experiments.topologies import degrees, edge_count, \
    make_topology, sample_link_noise, uniform_link_noise
from mascontrol.learning.CdnetParams import CdnetParams
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.settings.impl.ScenarioConfig import ScenarioConfig


def scenario_data(method: str = "cdnet") -> Dict[str, Any]:
    """
    :param method: The method to run
    :return: A small scenario on the five agent preset
    """
    return {
        "scenario_id": "ring5",
        "model": {"preset": "A5"},
        "network": {"topology": "ring", "lambda": 1.0,
                    "noise": {"kind": "sampled"}},
        "train": {"episodes": 1, "steps": 4, "hidden": 8,
                  "batch_size": 2, "replay_capacity": 8,
                  "dst_iterations": 1, "dst_rollouts": 2},
        "method": {"name": method, "seeds": [0, 1], "horizon": 5,
                   "eval_states": 3}
    }


class TestTopologies(unittest.TestCase):
    """
    Tests the generated communication graphs
    """

    def test_edge_counts(self):
        """
        Tests the size of each generated topology
        :return: None
        """
        self.assertEqual(edge_count(make_topology("line", 5)), 4)
        self.assertEqual(edge_count(make_topology("ring", 5)), 5)
        self.assertEqual(edge_count(make_topology("tree", 2)), 1)
        self.assertEqual(edge_count(make_topology("tree", 7)), 6)
        self.assertEqual(degrees(make_topology("tree", 7)),
                         [2, 3, 3, 1, 1, 1, 1])

    def test_degree3(self):
        """
        Tests the node degrees of the degree-three topology
        :return: None
        """
        for agents in [6, 8]:
            self.assertEqual(degrees(make_topology("degree3", agents)),
                             [3] * agents)
        self.assertEqual(sorted(degrees(make_topology("degree3", 5))),
                         [2, 3, 3, 3, 3])

    def test_explicit(self):
        """
        Tests explicit edge lists with and without noise
        :return: None
        """
        graph = make_topology("explicit", 3,
                              [[1, 2, 0.01, 0.02], [2, 3]])
        self.assertEqual(graph.noise(1, 2), LinkNoise(0.01, 0.02))
        self.assertEqual(graph.noise(2, 3), LinkNoise())
        with self.assertRaises(InvalidConfiguration):
            make_topology("explicit", 3, None)
        with self.assertRaises(InvalidConfiguration):
            make_topology("explicit", 3, [[1, 2, 0.1]])
        with self.assertRaises(InvalidGraph):
            make_topology("explicit", 3, [[1, 2]])

    def test_invalid(self):
        """
        Tests unknown kinds and too small systems
        :return: None
        """
        with self.assertRaises(InvalidConfiguration):
            make_topology("star", 5)
        with self.assertRaises(InvalidConfiguration):
            make_topology("ring", 1)

    def test_sampled_noise(self):
        """
        Tests range, reproducibility and mean of sampled link noise
        :return: None
        """
        ring = make_topology("ring", 10)
        first = sample_link_noise(ring, np.random.default_rng(1))
        second = sample_link_noise(ring, np.random.default_rng(1))
        self.assertEqual(first.edges(), second.edges())
        for _, _, noise in first.edges():
            self.assertTrue(0.0 <= noise.mu <= 0.1)
            self.assertTrue(0.0 <= noise.sigma2 <= 0.1)

        rng = np.random.default_rng(2)
        noises = [noise for _ in range(1000)
                  for _, _, noise in sample_link_noise(ring, rng).edges()]
        self.assertEqual(len(noises), 10000)
        self.assertTrue(0.045 <= np.mean([n.mu for n in noises]) <= 0.055)
        self.assertTrue(
            0.045 <= np.mean([n.sigma2 for n in noises]) <= 0.055)

    def test_uniform_noise(self):
        """
        Tests identical noise on every link
        :return: None
        """
        graph = uniform_link_noise(make_topology("line", 4), 0.01, 0.03)
        self.assertEqual({n for _, _, n in graph.edges()},
                         {LinkNoise(0.01, 0.03)})


class TestMetrics(unittest.TestCase):
    """
    Tests the per-episode metrics
    """

    def test_regret(self):
        """
        Tests hand computed best-so-far costs and regret
        :return: None
        """
        self.assertEqual(best_so_far([2.0, 1.0, 3.0]), [2.0, 1.0, 1.0])
        self.assertEqual(cumulative_regret([2.0, 1.0, 3.0]),
                         [0.0, 0.0, 2.0])
        self.assertEqual(cumulative_regret([4.0] * 5), [0.0] * 5)

    def test_running_minimum(self):
        """
        Tests the reference cost against a rescan and the regret for
        monotonicity
        :return: None
        """
        costs = list(np.random.default_rng(3).uniform(0.0, 10.0, 200))
        reference = best_so_far(costs)
        for index, value in enumerate(reference):
            self.assertEqual(value, min(costs[:index + 1]))
        regret = cumulative_regret(costs)
        for before, after in zip(regret[:-1], regret[1:]):
            self.assertGreaterEqual(after, before)

    def test_blown_episodes(self):
        """
        Tests that blown episodes take no part in the reference
        :return: None
        """
        reference = best_so_far([5.0, 1.0, 3.0], [True, True, False])
        self.assertTrue(np.isnan(reference[0]))
        self.assertEqual(reference[2], 3.0)
        self.assertEqual(cumulative_regret([2.0, 0.5, 3.0],
                                           [False, True, False]),
                         [0.0, 0.0, 1.0])

    def test_steady_state(self):
        """
        Tests the averaging window of the final episodes
        :return: None
        """
        self.assertEqual(steady_state_window(5000), 1000)
        self.assertEqual(steady_state_window(1000), 1000)
        self.assertEqual(steady_state_window(9), 5)
        self.assertEqual(steady_state_window(1), 1)

        records = [MetricsRecord(e, float(e), 0.5, False) for e in range(4)]
        self.assertEqual(steady_state_cost(records), 2.5)
        records[3].blown_up = True
        self.assertEqual(steady_state_cost(records), 2.0)
        self.assertTrue(np.isnan(steady_state_cost([])))

    def test_annotate(self):
        """
        Tests that annotation fills in the reference and regret
        :return: None
        """
        records = annotate([MetricsRecord(e, c, 0.5, False)
                            for e, c in enumerate([2.0, 1.0, 3.0])])
        self.assertEqual([r.best_so_far for r in records], [2.0, 1.0, 1.0])
        self.assertEqual([r.regret for r in records], [0.0, 0.0, 2.0])


class TestRunner(unittest.TestCase):
    """
    Tests scenario runs and their output files
    """

    def setUp(self):
        """
        Creates a temporary output directory
        :return: None
        """
        self.tempdir = tempfile.mkdtemp()

    def tearDown(self):
        """
        Removes the temporary output directory
        :return: None
        """
        shutil.rmtree(self.tempdir)

    def out_dir(self, name: str) -> str:
        """
        :param name: The name of the subdirectory
        :return: The path of the subdirectory
        """
        return os.path.join(self.tempdir, name)

    def test_metrics_csv(self):
        """
        Tests that metrics files are read back exactly
        :return: None
        """
        records = annotate([
            MetricsRecord(e, 1.0 / (e + 3), 0.1 * e, e == 2, 7, "x")
            for e in range(4)
        ])
        path = os.path.join(self.tempdir, "metrics.csv")
        write_metrics(path, records)
        self.assertEqual(read_metrics(path), records)

    def test_oracle_run(self):
        """
        Tests that the Riccati oracle produces a summary without rows
        :return: None
        """
        config = ScenarioConfig.from_dict(scenario_data("opt"))
        summary = run_scenario(config, self.out_dir("opt"))

        self.assertEqual(summary["method"], "opt")
        self.assertEqual(len(summary["seeds"]), 2)
        for seed in summary["seeds"]:
            self.assertLess(seed["spectral_radius"], 1.0)
            self.assertIsNotNone(seed["dare_cost"])
            self.assertEqual(seed["regret"], [])
        self.assertEqual(
            read_metrics(os.path.join(self.out_dir("opt"),
                                      "ring5_metrics.csv")), [])
        with open(os.path.join(self.out_dir("opt"),
                               "ring5_summary.json"), "r") as f:
            self.assertEqual(json.load(f)["scenario_id"], "ring5")

    def test_oracle_overrides_method(self):
        """
        Tests that the oracle command ignores the configured method
        :return: None
        """
        config = ScenarioConfig.from_dict(scenario_data("cdnet"))
        summary = oracle(config, self.out_dir("oracle"))
        self.assertEqual(summary["method"], "opt")

    def test_learner_run_reproducible(self):
        """
        Tests that repeated runs write identical metrics files
        :return: None
        """
        config = ScenarioConfig.from_dict(scenario_data())
        contents = []
        for name in ["first", "second"]:
            run_scenario(config, self.out_dir(name))
            path = os.path.join(self.out_dir(name), "ring5_metrics.csv")
            with open(path, "rb") as f:
                contents.append(f.read())
            records = read_metrics(path)
            self.assertEqual([r.seed for r in records], [0, 1])
            self.assertEqual([r.episode for r in records], [0, 0])
        self.assertEqual(contents[0], contents[1])

    def test_baseline_run(self):
        """
        Tests that the state tracking baseline writes one row per round
        :return: None
        """
        config = ScenarioConfig.from_dict(scenario_data("dst"))
        run_scenario(config, self.out_dir("dst"))
        records = read_metrics(os.path.join(self.out_dir("dst"),
                                            "ring5_metrics.csv"))
        self.assertEqual(len(records), 2)

    def test_buffer_dump(self):
        """
        Tests that verbose runs write the buffer contents
        :return: None
        """
        data = scenario_data()
        data["method"]["seeds"] = [3]
        run_scenario(ScenarioConfig.from_dict(data), self.out_dir("dump"),
                     verbose=True)
        path = os.path.join(self.out_dir("dump"), "ring5_seed3_buffers.csv")
        with open(path, "r") as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0],
                         "episode,step,time,agent,push,slot,values,filled")
        self.assertGreater(len(lines), 1)

    def test_single_value_sweep(self):
        """
        Tests that a sweep point equals the run of the modified scenario
        :return: None
        """
        data = scenario_data()
        data["method"]["seeds"] = [0]
        config = ScenarioConfig.from_dict(data)
        aggregated = sweep(config, "lambda", [100.0], self.out_dir("sweep"))
        direct = run_scenario(config.with_axis("lambda", 100.0),
                              self.out_dir("direct"))

        self.assertEqual(aggregated["axis"], "lambda")
        self.assertEqual(len(aggregated["points"]), 1)
        self.assertEqual(json.dumps(aggregated["points"][0]["summary"],
                                    sort_keys=True),
                         json.dumps(direct, sort_keys=True))
        self.assertTrue(os.path.isfile(os.path.join(
            self.out_dir("sweep"), "ring5_sweep_lambda.json")))

    def test_axis_values(self):
        """
        Tests the parsing of command line sweep values
        :return: None
        """
        self.assertEqual(parse_axis_value("lambda", "5"), 5.0)
        self.assertEqual(parse_axis_value("size", "6"), 6)
        self.assertEqual(parse_axis_value("topology", "ring"), "ring")
        with self.assertRaises(InvalidConfiguration):
            parse_axis_value("size", "six")
        with self.assertRaises(InvalidConfiguration):
            parse_axis_value("weather", "rain")

    def test_seed_isolation(self):
        """
        Tests that a seed produces the same rows alone and next to others
        :return: None
        """
        data = scenario_data()
        together = run_scenario(ScenarioConfig.from_dict(data),
                                self.out_dir("together"))
        data["method"]["seeds"] = [1]
        alone = run_scenario(ScenarioConfig.from_dict(data),
                             self.out_dir("alone"))

        rows = read_metrics(os.path.join(self.out_dir("together"),
                                         "ring5_metrics.csv"))
        single = read_metrics(os.path.join(self.out_dir("alone"),
                                           "ring5_metrics.csv"))
        self.assertEqual([r for r in rows if r.seed == 1], single)
        self.assertEqual(json.dumps(together["seeds"][1], sort_keys=True),
                         json.dumps(alone["seeds"][0], sort_keys=True))

    def test_checkpoint_written(self):
        """
        Tests that learner runs leave one loadable checkpoint per seed and
        oracle runs none
        :return: None
        """
        config = ScenarioConfig.from_dict(scenario_data())
        run_scenario(config, self.out_dir("learner"))
        model = config.build_model()
        for seed in [0, 1]:
            path = os.path.join(self.out_dir("learner"),
                                "ring5_seed{}_params.json".format(seed))
            params = CdnetParams.load(path)
            self.assertEqual(params.agents, list(range(1, 6)))
            self.assertEqual(params.trunk.input_dim, model.size)

        oracle(config, self.out_dir("oracle"))
        self.assertFalse(os.path.exists(os.path.join(
            self.out_dir("oracle"), "ring5_seed0_params.json")))

    def test_resume(self):
        """
        Tests that a resumed run starts from the stored parameters and
        that resuming without checkpoints or with another method fails
        :return: None
        """
        data = scenario_data()
        data["method"]["seeds"] = [2]
        run_scenario(ScenarioConfig.from_dict(data), self.out_dir("first"))

        data["train"]["episodes"] = 0
        resumed = ScenarioConfig.from_dict(data).with_resume(
            self.out_dir("first"))
        self.assertEqual(resumed.method["resume"], self.out_dir("first"))
        run_scenario(resumed, self.out_dir("second"))
        contents = []
        for name in ["first", "second"]:
            path = os.path.join(self.out_dir(name), "ring5_seed2_params.json")
            with open(path, "r") as f:
                contents.append(f.read())
        self.assertEqual(contents[0], contents[1])

        missing = ScenarioConfig.from_dict(data).with_resume(
            self.out_dir("nowhere"))
        with self.assertRaises(InvalidConfiguration):
            run_scenario(missing, self.out_dir("third"))

        baseline = scenario_data("dst")
        baseline["method"]["resume"] = self.out_dir("first")
        with self.assertRaises(InvalidConfiguration):
            ScenarioConfig.from_dict(baseline)

    @unittest.skipUnless(os.environ.get("MASCONTROL_SLOW_TESTS") == "1",
                         "slow training sweep")
    def test_lambda_ordering(self):
        """
        Tests that favouring quiet routes over short ones costs more on the
        degree-three topology
        :return: None
        """
        config = ScenarioConfig.from_dict({
            "scenario_id": "degree3_a6",
            "model": {"preset": "A6"},
            "network": {"topology": "degree3",
                        "noise": {"kind": "sampled", "seed": 0}},
            "train": {"episodes": 2000, "log_every": 500},
            "method": {"seeds": [0, 1, 2]}
        })
        result = sweep(config, "lambda", [1.0, 500.0], self.out_dir("slow"))
        low, high = result["points"]
        self.assertGreater(high["mean_cost"], low["mean_cost"])


def expected_episode_cost(model: MasModel, gain: GainMatrix,
                          steps: int) -> float:
    """
    The mean cost of an episode under exact state knowledge for initial
    states drawn uniformly from [-1, 1], E[x0' M x0] = trace(M) / 3
    :param model: The plant model
    :param gain: The feedback gain
    :param steps: The episode length
    :return: The expected episode cost
    """
    closed = gain.closed_loop(model)
    weight = model.s + gain.k.T @ model.r @ gain.k
    total = np.zeros_like(model.a)
    power = np.eye(model.size)
    for _ in range(steps):
        total += power.T @ weight @ power
        power = closed @ power
    return float(np.trace(total)) / 3.0


@unittest.skipUnless(os.environ.get("MASCONTROL_SLOW_TESTS") == "1",
                     "slow training runs")
class TestTrainingOutcomes(unittest.TestCase):
    """
    Tests the behaviour of full training runs on the preset plants
    """

    def setUp(self):
        """
        Creates a temporary output directory
        :return: None
        """
        self.tempdir = tempfile.mkdtemp()
        self.jobs = min(5, os.cpu_count() or 1)

    def tearDown(self):
        """
        Removes the temporary output directory
        :return: None
        """
        shutil.rmtree(self.tempdir)

    @staticmethod
    def config(scenario_id: str, preset: str, topology: str,
               lam: float = 1.0, seeds: int = 3,
               **train: Any) -> ScenarioConfig:
        """
        :param scenario_id: The scenario identifier
        :param preset: The plant preset
        :param topology: The communication topology
        :param lam: The routing weight of the link noise
        :param seeds: The number of seeds
        :param train: Training fields overriding the defaults
        :return: A scenario of 2000 episodes on sampled link noise
        """
        values = {"episodes": 2000, "log_every": 500}
        values.update(train)
        return ScenarioConfig.from_dict({
            "scenario_id": scenario_id,
            "model": {"preset": preset},
            "network": {"topology": topology, "lambda": lam,
                        "noise": {"kind": "sampled", "seed": 0}},
            "train": values,
            "method": {"seeds": list(range(seeds))}
        })

    def seed_costs(self, config: ScenarioConfig) -> Dict[int, List[float]]:
        """
        :param config: A scenario that has been run
        :return: Mapping seed -> costs of its regular episodes
        """
        records = read_metrics(os.path.join(
            self.tempdir, config.scenario_id + "_metrics.csv"))
        costs = {}  # type: Dict[int, List[float]]
        for record in records:
            if not record.blown_up:
                costs.setdefault(record.seed, []).append(record.cost)
        return costs

    def test_plateau(self):
        """
        Tests that the six agent ring settles between the optimal and
        the uncontrolled episode cost with stable gains
        :return: None
        """
        config = self.config("ring6", "A6", "ring", 500.0, 5)
        summary = run_scenario(config, self.tempdir, jobs=self.jobs)

        model = config.build_model()
        steps = config.train.steps
        optimal = expected_episode_cost(model, solve_dare(model).gain,
                                        steps)
        open_loop = expected_episode_cost(model, GainMatrix.zeros(model),
                                          steps)
        for seed, costs in self.seed_costs(config).items():
            last500 = float(np.mean(costs[-500:]))
            last200 = float(np.mean(costs[-200:]))
            self.assertLessEqual(abs(last200 - last500), 0.05 * last500)
            self.assertGreaterEqual(last500, 0.9 * optimal)
            self.assertLessEqual(last500, 1.5 * open_loop)
        stable = [s["spectral_radius"] < 1.0 for s in summary["seeds"]]
        self.assertGreaterEqual(sum(stable), 4)

    def test_spectral_radius_band(self):
        """
        Tests that the converged closed loop of the five agent plant lies
        between the optimal and the uncontrolled spectral radius on the
        line, tree and ring
        :return: None
        """
        for topology in ["line", "tree", "ring"]:
            config = self.config("radius_" + topology, "A5", topology,
                                 100.0)
            summary = run_scenario(config, self.tempdir, jobs=self.jobs)
            model = config.build_model()
            lower = spectral_radius(
                solve_dare(model).gain.closed_loop(model)) - 0.05
            upper = max(spectral_radius(model.a), 0.85)
            for seed in summary["seeds"]:
                self.assertGreaterEqual(seed["spectral_radius"], lower)
                self.assertLessEqual(seed["spectral_radius"], upper)
                self.assertLess(seed["spectral_radius"], 1.0)

    def test_regret_flattens(self):
        """
        Tests that the regret from a fixed initial state over ideal links
        levels off within the expected order of magnitude on the rings
        :return: None
        """
        for preset in ["A5", "A6"]:
            config = self.config("regret_" + preset, preset, "ring",
                                 initial_state="fixed") \
                .with_axis("communication", "ideal")
            summary = run_scenario(config, self.tempdir, jobs=self.jobs)
            for seed in summary["seeds"]:
                regret = seed["regret"]
                for before, after in zip(regret[:-1], regret[1:]):
                    self.assertGreaterEqual(after, before)
                total = regret[-1]
                self.assertLess(total - regret[-101], 0.05 * total)
                self.assertGreaterEqual(total, 10.0)
                self.assertLessEqual(total, 1e3)

    def test_baseline_degradation(self):
        """
        Tests that noisy delayed links hurt the learner less than the
        state tracking baseline on the six agent ring, and that both come
        close to the optimal cost over ideal links
        :return: None
        """
        data = self.config("compare", "A6", "ring").to_dict()
        data["network"]["noise"] = {"kind": "uniform", "mu": 0.0,
                                    "sigma2": 0.02}
        costs = {}
        for method in ["cdnet", "dst", "opt"]:
            data["method"]["name"] = method
            base = ScenarioConfig.from_dict(data)
            for communication in ["ideal", "both"]:
                config = base.with_axis("communication", communication)
                summary = run_scenario(config, self.tempdir, jobs=self.jobs)
                costs[method, communication] = summary["mean_eval_cost"]

        def degradation(method: str) -> float:
            ideal = costs[method, "ideal"]
            return (costs[method, "both"] - ideal) / ideal

        self.assertLess(degradation("cdnet"), degradation("dst"))
        for method in ["cdnet", "dst"]:
            self.assertLessEqual(costs[method, "ideal"],
                                 1.25 * costs["opt", "ideal"])

    def test_size_ordering(self):
        """
        Tests that larger line networks do not cost less
        :return: None
        """
        config = self.config("line", "A5", "line")
        result = sweep(config, "size", [5, 6, 8], self.tempdir,
                       jobs=self.jobs)
        costs = [point["mean_cost"] for point in result["points"]]
        for smaller, larger in zip(costs[:-1], costs[1:]):
            self.assertLessEqual(smaller, larger)

    def test_lambda_ordering_by_size(self):
        """
        Tests that favouring quiet routes over short ones costs more on the
        degree-three topology for five, six and eight agents
        :return: None
        """
        base = self.config("degree3", "A5", "degree3")
        for agents in [5, 6, 8]:
            config = base.with_axis("size", agents)
            result = sweep(config, "lambda", [1.0, 500.0], self.tempdir,
                           jobs=self.jobs)
            low, high = result["points"]
            self.assertGreater(high["mean_cost"], low["mean_cost"])
