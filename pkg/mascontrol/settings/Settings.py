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
from typing import Any, Dict
from mascontrol.exceptions import InvalidConfiguration


class Settings:
    """
    Class that defines what methods a Settings class must implement.
    Settings objects are used to initialize simulations and training runs.
    """

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: The settings as a JSON-compatible dictionary
        """
        raise NotImplementedError()

    @classmethod
    def from_dict(cls, data: Dict[str, Any], prefix: str = "") \
            -> "Settings":
        """
        Generates a Settings object from a dictionary
        :param data: The dictionary
        :param prefix: The dotted path of the dictionary inside a larger
                       document, used in error messages
        :return: The generated Settings object
        """
        raise NotImplementedError()

    def serialize(self) -> str:
        """
        Serializes the settings to a string
        :return: The serialized Settings object
        """
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def deserialize(cls, serialized: str) -> "Settings":
        """
        Deserializes a string and generates a Settings object from it
        :param serialized: The serialized string
        :return: The deserialized Settings object
        :raises InvalidConfiguration: If the string is not valid JSON
        """
        try:
            obj = json.loads(serialized)
        except json.JSONDecodeError as e:
            raise InvalidConfiguration(
                "<document>", "{} (column {})".format(e.msg, e.colno),
                e.lineno
            )
        if not isinstance(obj, dict):
            raise InvalidConfiguration("<document>", "expected an object")
        return cls.from_dict(obj)

    @staticmethod
    def field(data: Dict[str, Any], name: str, default: Any,
              kind: type, prefix: str = "") -> Any:
        """
        Reads an optional typed field from a dictionary
        :param data: The dictionary
        :param name: The field name
        :param default: The value used if the field is missing
        :param kind: The expected type; ints are accepted for floats
        :param prefix: The dotted path of the dictionary
        :return: The field value
        :raises InvalidConfiguration: If the value has the wrong type
        """
        if name not in data:
            return default
        value = data[name]
        if kind is float and isinstance(value, int) \
                and not isinstance(value, bool):
            value = float(value)
        if kind is int and isinstance(value, bool) \
                or not isinstance(value, kind):
            raise InvalidConfiguration(
                prefix + name, "expected {}, got {!r}".format(
                    kind.__name__, value
                )
            )
        return value
