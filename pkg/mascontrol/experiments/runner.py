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
import csv
import json
import logging
import numpy as np
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, TextIO
from mascontrol.baselines.DstTrainer import DstTrainer
from mascontrol.controller.evaluation import \
    EvaluationResult, evaluate_controller, sample_initial_states
from mascontrol.controller.impl.CdnetController import CdnetController
from mascontrol.controller.impl.StaticGainController import \
    StaticGainController
from mascontrol.dynamics.GainMatrix import GainMatrix
from mascontrol.dynamics.MasModel import MasModel
from mascontrol.dynamics.control import solve_dare, spectral_radius
from mascontrol.entities.MetricsRecord import MetricsRecord, rows
from mascontrol.exceptions import InvalidConfiguration, TrainingAborted
from mascontrol.experiments.metrics import annotate, steady_state_cost
from mascontrol.experiments.topologies import \
    degrees, edge_count, make_topology, sample_link_noise, \
    uniform_link_noise
from mascontrol.learning.CdnetLearner import CdnetLearner
from mascontrol.learning.CdnetParams import CdnetParams
from mascontrol.learning.CdnetTrainer import train
from mascontrol.messaging.MessageNetwork import MessageNetwork
from mascontrol.network.LinkNoise import LinkNoise
from mascontrol.network.NetworkGraph import NetworkGraph
from mascontrol.network.RoutingTable import compute_routes
from mascontrol.settings.impl.ScenarioConfig import AXES, ScenarioConfig
from mascontrol.settings.impl.TrainConfig import TrainConfig

logger = logging.getLogger(__name__)

DUMP_COLUMNS = ["episode", "step", "time", "agent", "push", "slot",
                "values", "filled"]


class SeedResult:
    """
    Class that models everything one (scenario, seed) job produced
    """

    def __init__(
            self,
            seed: int,
            records: List[MetricsRecord],
            gain: GainMatrix,
            radius: float,
            evaluation: EvaluationResult,
            dare_cost: Optional[float] = None
    ):
        """
        Initializes the SeedResult object
        :param seed: The seed
        :param records: The per-episode metrics, empty for the oracle
        :param gain: The final gain
        :param radius: The closed-loop spectral radius of the final gain
        :param evaluation: The evaluation rollouts of the final controller
        :param dare_cost: The mean infinite-horizon optimal cost x0'Px0
                          of the evaluation states, oracle runs only
        """
        self.seed = seed
        self.records = records
        self.gain = gain
        self.radius = radius
        self.evaluation = evaluation
        self.dare_cost = dare_cost

    @property
    def cost(self) -> float:
        """
        :return: The steady-state training cost, or the evaluation cost
                 for runs without episodes
        """
        if self.records:
            return steady_state_cost(self.records)
        return self.evaluation.mean_cost

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: The result as a JSON-compatible dictionary
        """
        return {
            "seed": self.seed,
            "cost": self.cost,
            "spectral_radius": self.radius,
            "eval_cost": self.evaluation.mean_cost,
            "eval_blown": self.evaluation.blown_count,
            "agent_costs": self.evaluation.agent_costs.tolist(),
            "final_gain": self.gain.to_list(),
            "regret": [r.regret for r in self.records],
            "dare_cost": self.dare_cost
        }


class BufferDumpWriter:
    """
    Class that writes time-shift buffer contents to a CSV file
    """

    def __init__(self, stream: TextIO):
        """
        Initializes the writer and emits the header
        :param stream: The open file
        """
        self.writer = csv.DictWriter(stream, fieldnames=DUMP_COLUMNS)
        self.writer.writeheader()

    def __call__(self, episode: int, step: int,
                 buffer_rows: List[Dict[str, Any]]):
        """
        :param episode: The episode index
        :param step: The step inside the episode
        :param buffer_rows: The buffer rows
        :return: None
        """
        for row in buffer_rows:
            self.writer.writerow(dict(row, episode=episode, step=step))


def build_graph(config: ScenarioConfig, rng: np.random.Generator) \
        -> NetworkGraph:
    """
    Builds the scenario's graph and assigns its link noise
    :param config: The scenario
    :param rng: The generator used for sampled noise
    :return: The graph
    """
    network = config.network
    graph = make_topology(network["topology"], config.agents,
                          network["edges"])
    logger.debug("{} topology with {} links and degrees {}".format(
        network["topology"], edge_count(graph), degrees(graph)
    ))
    noise = network["noise"]
    kind = noise["kind"]
    if kind == "zero":
        return graph.with_noise(lambda u, v: LinkNoise())
    elif kind == "uniform":
        return uniform_link_noise(
            graph, noise.get("mu", 0.0), noise.get("sigma2", 0.02)
        )
    elif kind == "sampled":
        if noise.get("seed") is not None:
            rng = np.random.default_rng(noise["seed"])
        return sample_link_noise(
            graph, rng, noise.get("low", 0.0), noise.get("high", 0.1)
        )
    return graph


def build_network(config: ScenarioConfig, graph: NetworkGraph,
                  rng: np.random.Generator) -> MessageNetwork:
    """
    Computes the routes and sets up message passing
    :param config: The scenario
    :param graph: The graph with link noise
    :param rng: The generator used for link noise draws
    :return: The message network
    """
    network = config.network
    table = compute_routes(graph, network["lambda"])
    return MessageNetwork(
        table, rng,
        state_dim=config.build_model().state_dim,
        delayed=network["delays"],
        ideal=network["ideal"],
        window=network["ema_window"],
        beta_min=network["beta_min"],
        beta_max=network["beta_max"],
        buffer_margin=network["buffer_margin"]
    )


def checkpoint_path(directory: str, scenario_id: str, seed: int) -> str:
    """
    :param directory: The directory of the checkpoint
    :param scenario_id: The scenario identifier
    :param seed: The seed
    :return: The path of the learner checkpoint of one job
    """
    return os.path.join(directory, "{}_seed{}_params.json".format(
        scenario_id, seed
    ))


def restore_learner(config: ScenarioConfig, seed: int, model: MasModel,
                    train_config: TrainConfig, rng: np.random.Generator) \
        -> Optional[CdnetLearner]:
    """
    Loads the learner a job continues from, if the scenario resumes
    :param config: The scenario
    :param seed: The seed
    :param model: The plant model
    :param train_config: The training configuration of the job
    :param rng: The generator of the job's training stream
    :return: The restored learner, or None for fresh training
    :raises InvalidConfiguration: If the checkpoint is missing or does
                                  not fit the scenario
    """
    directory = config.method["resume"]
    if directory is None:
        return None
    path = checkpoint_path(directory, config.scenario_id, seed)
    if not os.path.isfile(path):
        raise InvalidConfiguration(
            "method.resume", "no checkpoint {}".format(path)
        )
    logger.info("Resuming {} with seed {} from {}".format(
        config.scenario_id, seed, path
    ))
    return CdnetLearner(model, train_config, rng, CdnetParams.load(path))


def run_seed(config: ScenarioConfig, seed: int, out_dir: str,
             verbose: bool = False) -> SeedResult:
    """
    Runs one (scenario, seed) job. The job owns all of its state and
    random number generators.
    :param config: The scenario
    :param seed: The seed
    :param out_dir: The output directory, used for buffer dumps and
                    learner checkpoints
    :param verbose: Whether to dump the time-shift buffers
    :return: The result
    """
    logger.info("Starting {} with seed {}".format(config.scenario_id, seed))
    noise_seq, network_seq, train_seq, eval_seq = \
        np.random.SeedSequence(seed).spawn(4)
    model = config.build_model()
    graph = build_graph(config, np.random.default_rng(noise_seq))
    network = build_network(config, graph, np.random.default_rng(network_seq))
    train_config = config.train.replace(seed=seed)
    rng = np.random.default_rng(train_seq)
    initial_states = sample_initial_states(
        model, config.method["eval_states"], np.random.default_rng(eval_seq)
    )

    method = config.method["name"]
    records = []  # type: List[MetricsRecord]
    dare_cost = None
    try:
        if method == "opt":
            solution = solve_dare(model)
            gain = solution.gain
            dare_cost = float(np.mean([solution.value(x)
                                       for x in initial_states]))
            controller = StaticGainController(model, gain, "raw")
        elif method == "dst":
            gain, records = DstTrainer(model, network, train_config,
                                       rng).train()
            controller = StaticGainController(model, gain, "raw")
        else:
            learner = restore_learner(config, seed, model, train_config,
                                      rng)
            if verbose:
                path = os.path.join(out_dir, "{}_seed{}_buffers.csv".format(
                    config.scenario_id, seed
                ))
                with open(path, "w", newline="") as stream:
                    gain, records, learner = train(
                        model, network, train_config, rng,
                        BufferDumpWriter(stream), learner
                    )
            else:
                gain, records, learner = train(
                    model, network, train_config, rng, learner=learner
                )
            learner.params.save(
                checkpoint_path(out_dir, config.scenario_id, seed)
            )
            controller = CdnetController(learner)
    except TrainingAborted as e:
        e.diagnostics["seed"] = seed
        e.diagnostics["scenario_id"] = config.scenario_id
        logger.error("Training of {} aborted for seed {}: {}".format(
            config.scenario_id, seed, e.reason
        ))
        raise e

    evaluation = evaluate_controller(
        model, controller, initial_states, config.method["horizon"],
        network, train_config.blowup_threshold
    )
    for record in annotate(records):
        record.seed = seed
        record.scenario_id = config.scenario_id
    radius = spectral_radius(gain.closed_loop(model))
    logger.info("Finished {} with seed {}: evaluation cost {:.4f}"
                .format(config.scenario_id, seed, evaluation.mean_cost))
    return SeedResult(seed, records, gain, radius, evaluation, dare_cost)


def write_metrics(path: str, records: List[MetricsRecord]):
    """
    :param path: The CSV file to write
    :param records: The records, written in the given order
    :return: None
    """
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=MetricsRecord.COLUMNS)
        writer.writeheader()
        writer.writerows(rows(records))


def read_metrics(path: str) -> List[MetricsRecord]:
    """
    :param path: A CSV file written by write_metrics()
    :return: The records
    """
    with open(path, "r", newline="") as f:
        return [MetricsRecord.from_row(row) for row in csv.DictReader(f)]


def summarize(config: ScenarioConfig, results: List[SeedResult]) \
        -> Dict[str, Any]:
    """
    :param config: The scenario
    :param results: The results of all seeds
    :return: The scenario summary
    """
    costs = [r.cost for r in results]
    evals = [r.evaluation.mean_cost for r in results]
    radii = [r.radius for r in results]
    return {
        "scenario_id": config.scenario_id,
        "method": config.method["name"],
        "config": config.to_dict(),
        "mean_cost": float(np.mean(costs)),
        "std_cost": float(np.std(costs)),
        "mean_eval_cost": float(np.mean(evals)),
        "std_eval_cost": float(np.std(evals)),
        "mean_spectral_radius": float(np.mean(radii)),
        "seeds": [r.to_dict() for r in results]
    }


def run_scenario(
        config: ScenarioConfig,
        out_dir: Optional[str] = None,
        verbose: bool = False,
        jobs: int = 1
) -> Dict[str, Any]:
    """
    Runs a scenario for all of its seeds and writes the per-episode CSV
    and the JSON summary
    :param config: The scenario
    :param out_dir: The output directory; defaults to method.output
    :param verbose: Whether to dump the time-shift buffers
    :param jobs: The number of seeds run concurrently
    :return: The summary
    """
    out_dir = config.method["output"] if out_dir is None else out_dir
    os.makedirs(out_dir, exist_ok=True)
    seeds = config.method["seeds"]

    if jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                run_seed, [config] * len(seeds), seeds,
                [out_dir] * len(seeds), [verbose] * len(seeds)
            ))
    else:
        results = [run_seed(config, seed, out_dir, verbose)
                   for seed in seeds]

    csv_path = os.path.join(out_dir, config.scenario_id + "_metrics.csv")
    write_metrics(csv_path, [r for res in results for r in res.records])
    summary = summarize(config, results)
    json_path = os.path.join(out_dir, config.scenario_id + "_summary.json")
    with open(json_path, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    logger.info("Wrote {} and {}".format(csv_path, json_path))
    return summary


def parse_axis_value(axis: str, value: str) -> Any:
    """
    :param axis: The sweep axis
    :param value: The value as given on the command line
    :return: The typed value
    :raises InvalidConfiguration: If the value does not fit the axis
    """
    try:
        if axis == "lambda":
            return float(value)
        elif axis == "size":
            return int(value)
    except ValueError:
        raise InvalidConfiguration(
            "values", "{} is not valid for axis {}".format(value, axis)
        )
    if axis not in AXES:
        raise InvalidConfiguration("axis", "expected one of {}".format(AXES))
    return value


def sweep(
        config: ScenarioConfig,
        axis: str,
        values: List[Any],
        out_dir: Optional[str] = None,
        verbose: bool = False,
        jobs: int = 1
) -> Dict[str, Any]:
    """
    Runs a scenario once per axis value and aggregates the summaries
    :param config: The base scenario
    :param axis: lambda, size, topology or communication
    :param values: The axis values
    :param out_dir: The output directory; defaults to method.output
    :param verbose: Whether to dump the time-shift buffers
    :param jobs: The number of seeds run concurrently
    :return: The aggregated summary
    """
    out_dir = config.method["output"] if out_dir is None else out_dir
    points = []
    for value in values:
        summary = run_scenario(config.with_axis(axis, value), out_dir,
                               verbose, jobs)
        points.append({
            "value": value,
            "mean_cost": summary["mean_cost"],
            "std_cost": summary["std_cost"],
            "mean_eval_cost": summary["mean_eval_cost"],
            "summary": summary
        })
    aggregated = {
        "scenario_id": config.scenario_id,
        "axis": axis,
        "points": points
    }
    path = os.path.join(out_dir, "{}_sweep_{}.json".format(
        config.scenario_id, axis
    ))
    with open(path, "w") as f:
        json.dump(aggregated, f, indent=2, sort_keys=True)
    return aggregated


def oracle(config: ScenarioConfig, out_dir: Optional[str] = None) \
        -> Dict[str, Any]:
    """
    Runs a scenario with the Riccati oracle, whatever method it names
    :param config: The scenario
    :param out_dir: The output directory; defaults to method.output
    :return: The summary
    """
    data = config.to_dict()
    data["method"]["name"] = "opt"
    data["method"]["resume"] = None
    return run_scenario(ScenarioConfig.from_dict(data), out_dir)
