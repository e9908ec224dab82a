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

from typing import Dict, Any, Optional


class MasControlError(Exception):
    """
    Base class of all exceptions raised by mascontrol
    """
    pass


class InvalidDimensions(MasControlError):
    """
    Exception that indicates arrays whose dimensions do not conform,
    for example a state vector that does not match the model.
    """

    def __init__(self, what: str, expected: Any, actual: Any):
        """
        Initializes the Exception
        :param what: Description of the offending value
        :param expected: The expected shape or size
        :param actual: The shape or size that was provided
        """
        self.what = what
        self.expected = expected
        self.actual = actual

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "InvalidDimensions: {} expected {}, got {}".format(
            self.what, self.expected, self.actual
        )


class ConvergenceFailure(MasControlError):
    """
    Exception that gets raised whenever an iterative solver does not reach
    its tolerance within the allowed number of iterations.
    """

    def __init__(self, residual: float, iterations: int):
        """
        Initializes the Exception
        :param residual: The last residual that was computed
        :param iterations: The number of iterations that were performed
        """
        self.residual = residual
        self.iterations = iterations

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "ConvergenceFailure: residual {:.3e} after {} iterations"\
            .format(self.residual, self.iterations)


class NumericalError(MasControlError):
    """
    Exception that indicates a singular or otherwise unusable matrix
    """
    pass


class InvalidGraph(MasControlError):
    """
    Exception that indicates a malformed communication graph,
    for example self-loops or duplicate edges.
    """
    pass


class DisconnectedGraph(InvalidGraph):
    """
    Exception that gets raised if a communication graph is not connected.
    Routing requires every agent to be reachable from every other agent.
    """

    def __init__(self, components: int):
        """
        Initializes the Exception
        :param components: The number of connected components found
        """
        self.components = components

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "DisconnectedGraph: {} connected components"\
            .format(self.components)


class UnknownNode(MasControlError):
    """
    Exception that indicates a reference to an agent id
    that is not part of the graph.
    """

    def __init__(self, node: Any):
        """
        Initializes the Exception
        :param node: The unknown node id
        """
        self.node = node

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "UnknownNode: {}".format(self.node)


class InvalidConfiguration(MasControlError):
    """
    Exception that gets raised whenever there's a problem with a
    configuration, be it unparseable scenario files or values that
    violate a constraint.
    """

    def __init__(self, field: str, reason: str, line: Optional[int] = None):
        """
        Initializes the Exception
        :param field: The dotted path of the offending field
        :param reason: Why the value was rejected
        :param line: The line in the configuration file, if known
        """
        self.field = field
        self.reason = reason
        self.line = line

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        location = self.field
        if self.line is not None:
            location = "line {} ({})".format(self.line, self.field)
        return "InvalidConfiguration: {}: {}".format(location, self.reason)


class MissingSender(MasControlError):
    """
    Exception that indicates that a refined global state could not be
    assembled because a sender's value is missing.
    """

    def __init__(self, owner: int, sender: int):
        """
        Initializes the Exception
        :param owner: The agent assembling the global state
        :param sender: The agent whose value is missing
        """
        self.owner = owner
        self.sender = sender

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "MissingSender: agent {} has no value from agent {}"\
            .format(self.owner, self.sender)


class BufferEmpty(MasControlError):
    """
    Exception that gets raised when popping from an empty buffer
    """
    pass


class TrainingAborted(MasControlError):
    """
    Exception that gets raised when a training run can not continue,
    most notably because of non-finite network outputs or losses.
    """

    def __init__(self, reason: str, diagnostics: Optional[Dict[str, Any]]
                 = None):
        """
        Initializes the Exception
        :param reason: Short description of the failure
        :param diagnostics: Additional data describing the failure,
                            for example the seed, episode or loss values
        """
        self.reason = reason
        self.diagnostics = {} if diagnostics is None else dict(diagnostics)

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "TrainingAborted: {} {}".format(self.reason, self.diagnostics)


class ExtractionFailure(MasControlError):
    """
    Exception that indicates that no gain could be extracted from
    a Q-function matrix, because its input block is singular.
    """
    pass


class FitDivergence(MasControlError):
    """
    Exception that gets raised if a gradient descent regression diverges
    """

    def __init__(self, residuals: Any):
        """
        Initializes the Exception
        :param residuals: The most recent residual history
        """
        self.residuals = list(residuals)

    def __str__(self) -> str:
        """
        :return: A string representation of the exception
        """
        return "FitDivergence: residual grew from {:.3e} to {:.3e}".format(
            self.residuals[0], self.residuals[-1]
        )
