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
from enum import Enum
from typing import List, Optional, Tuple
from mascontrol.exceptions import InvalidDimensions, TrainingAborted

LayerCache = Tuple[np.ndarray, np.ndarray, np.ndarray]
"""Input, pre-activation and activation of one layer"""


class Activation(Enum):
    """
    Enum that defines the activation functions a dense layer may use
    """
    RELU = "relu"
    TANH = "tanh"
    LINEAR = "linear"

    def apply(self, z: np.ndarray) -> np.ndarray:
        """
        :param z: The pre-activation
        :return: The activation
        """
        if self == Activation.RELU:
            return np.maximum(z, 0.0)
        elif self == Activation.TANH:
            return np.tanh(z)
        else:
            return z

    def derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        """
        :param z: The pre-activation
        :param a: The activation belonging to z
        :return: The element-wise derivative of the activation
        """
        if self == Activation.RELU:
            return (z > 0.0).astype(float)
        elif self == Activation.TANH:
            return 1.0 - a ** 2
        else:
            return np.ones_like(z)


class DenseLayer:
    """
    Class that models a fully connected layer a = f(W x + b)
    """

    def __init__(self, weight: np.ndarray, bias: np.ndarray,
                 activation: Activation):
        """
        Initializes the layer
        :param weight: The weight matrix, shape (out, in)
        :param bias: The bias vector, shape (out,)
        :param activation: The activation function
        :raises InvalidDimensions: If weight and bias do not conform
        """
        self.weight = np.array(weight, dtype=float, ndmin=2)
        self.bias = np.array(bias, dtype=float, ndmin=1)
        self.activation = activation
        if self.bias.shape != (self.weight.shape[0],):
            raise InvalidDimensions(
                "bias", (self.weight.shape[0],), self.bias.shape
            )

    @property
    def input_dim(self) -> int:
        """
        :return: The input width
        """
        return self.weight.shape[1]

    @property
    def output_dim(self) -> int:
        """
        :return: The output width
        """
        return self.weight.shape[0]


class DenseNet:
    """
    Class that implements a small multilayer perceptron with an exact
    backward pass. Inputs are batches of row vectors; a single vector is
    treated as a batch of one.
    """

    def __init__(self, layers: List[DenseLayer]):
        """
        Initializes the network
        :param layers: The layers in forward order
        :raises InvalidDimensions: If consecutive layers do not conform
        """
        if len(layers) == 0:
            raise InvalidDimensions("layers", "at least one", 0)
        for previous, layer in zip(layers[:-1], layers[1:]):
            if previous.output_dim != layer.input_dim:
                raise InvalidDimensions(
                    "layer input", previous.output_dim, layer.input_dim
                )
        self.layers = layers

    @classmethod
    def create(
            cls,
            sizes: List[int],
            activations: List[Activation],
            rng: np.random.Generator,
            output_bound: Optional[float] = None
    ) -> "DenseNet":
        """
        Creates a network with uniformly initialized parameters in
        [-1/sqrt(fan_in), 1/sqrt(fan_in)]
        :param sizes: The layer widths, input width first
        :param activations: One activation per layer
        :param rng: The random number generator
        :param output_bound: If given, the last layer is drawn from
                             [-output_bound, output_bound] instead
        :return: The network
        """
        if len(activations) != len(sizes) - 1:
            raise InvalidDimensions(
                "activations", len(sizes) - 1, len(activations)
            )
        layers = []
        last = len(activations) - 1
        for index, (fan_in, fan_out, activation) in \
                enumerate(zip(sizes[:-1], sizes[1:], activations)):
            bound = 1.0 / np.sqrt(fan_in)
            if index == last and output_bound is not None:
                bound = output_bound
            layers.append(DenseLayer(
                rng.uniform(-bound, bound, size=(fan_out, fan_in)),
                rng.uniform(-bound, bound, size=fan_out),
                activation
            ))
        return cls(layers)

    @property
    def input_dim(self) -> int:
        """
        :return: The input width
        """
        return self.layers[0].input_dim

    @property
    def output_dim(self) -> int:
        """
        :return: The output width
        """
        return self.layers[-1].output_dim

    @property
    def parameter_count(self) -> int:
        """
        :return: The number of scalar parameters
        """
        return sum(p.size for p in self.parameters())

    def parameters(self) -> List[np.ndarray]:
        """
        :return: References to all parameter arrays, ordered
                 [W_0, b_0, W_1, b_1, ...]
        """
        params = []
        for layer in self.layers:
            params.extend([layer.weight, layer.bias])
        return params

    def forward(self, x: np.ndarray) \
            -> Tuple[np.ndarray, List[LayerCache]]:
        """
        Runs the forward pass
        :param x: The input batch, shape (batch, in), or a single vector
        :return: The output batch and the cache needed by backward()
        :raises InvalidDimensions: If the input width does not match
        :raises TrainingAborted: If the output is not finite
        """
        a = np.array(x, dtype=float, ndmin=2)
        if a.shape[1] != self.input_dim:
            raise InvalidDimensions("network input", self.input_dim,
                                    a.shape[1])
        cache = []  # type: List[LayerCache]
        for layer in self.layers:
            z = a @ layer.weight.T + layer.bias
            out = layer.activation.apply(z)
            cache.append((a, z, out))
            a = out
        if not np.all(np.isfinite(a)):
            raise TrainingAborted("non-finite network output")
        return a, cache

    def predict(self, x: np.ndarray) -> np.ndarray:
        """
        :param x: The input batch or a single vector
        :return: The output batch
        """
        return self.forward(x)[0]

    def backward(self, cache: List[LayerCache], grad_out: np.ndarray) \
            -> Tuple[np.ndarray, List[np.ndarray]]:
        """
        Back-propagates the gradient of a scalar loss. Parameter gradients
        are summed over the batch.
        :param cache: The cache of the matching forward() call
        :param grad_out: dLoss/dOutput, shape (batch, out)
        :return: dLoss/dInput and the parameter gradients, ordered like
                 parameters()
        """
        grad = np.array(grad_out, dtype=float, ndmin=2)
        grads = []  # type: List[np.ndarray]
        for layer, (a_in, z, out) in zip(reversed(self.layers),
                                         reversed(cache)):
            dz = grad * layer.activation.derivative(z, out)
            grads.append(dz.sum(axis=0))
            grads.append(dz.T @ a_in)
            grad = dz @ layer.weight
        grads.reverse()
        return grad, grads

    def copy(self) -> "DenseNet":
        """
        :return: A deep copy of the network
        """
        return DenseNet([
            DenseLayer(l.weight.copy(), l.bias.copy(), l.activation)
            for l in self.layers
        ])

    def load_parameters(self, values: List[np.ndarray]):
        """
        Overwrites all parameters in place
        :param values: The new values, ordered like parameters()
        :return: None
        """
        for param, value in zip(self.parameters(), values):
            if param.shape != np.shape(value):
                raise InvalidDimensions("parameter", param.shape,
                                        np.shape(value))
            param[...] = value

    def soft_update(self, online: "DenseNet", tau: float):
        """
        Moves this network towards another one with identical structure:
        theta <- (1 - tau) * theta + tau * theta_online
        :param online: The network to follow
        :param tau: The Polyak factor in [0, 1]
        :return: None
        """
        for target, source in zip(self.parameters(), online.parameters()):
            target *= 1.0 - tau
            target += tau * source


def finite(values: List[np.ndarray], what: str,
           diagnostics: Optional[dict] = None):
    """
    Aborts training if any of the arrays contains non-finite values
    :param values: The arrays to check
    :param what: A description used in the error
    :param diagnostics: Additional context for the error
    :return: None
    :raises TrainingAborted: On non-finite values
    """
    for value in values:
        if not np.all(np.isfinite(value)):
            raise TrainingAborted("non-finite " + what, diagnostics)
