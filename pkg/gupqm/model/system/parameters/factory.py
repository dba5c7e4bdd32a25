import dataclasses

from gupqm.model.errors import ParameterError
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Any, Dict

__UNKNOWN_KEY_ERROR = "Unknown model parameter '%s'"
__SYNTAX_ERROR = "%s:%d: expected 'key=value', found '%s'"


def from_dict(dictionary: Dict[str, Any]) -> ModelParams:
    """
    Returns the model parameters from their dict representation. Missing keys
    keep their default value.

    Parameters
    ----------
    dictionary: Dict[str, Any]
        The dictionary representation of the parameters
    Returns
    -------
    The parameters respecting the values specified in the dictionary.
    """

    names = {field.name: field.type for field in dataclasses.fields(ModelParams)}
    for key in dictionary:
        if key not in names:
            raise ParameterError(__UNKNOWN_KEY_ERROR % key)

    # D is the only integer field, the others are real numbers
    values = {
        key: int(value) if key == 'D' else float(value)
        for key, value in dictionary.items()
    }
    return ModelParams(**values)


def read_pairs(path: str) -> Dict[str, str]:
    """
    Read a flat 'key=value' file. Empty lines and lines starting with '#' are
    ignored.

    Parameters
    ----------
    path: str
        Name of the file to read
    Returns
    -------
    The ordered mapping of keys to their (string) values.
    """

    pairs = dict()
    with open(path, 'r') as file:
        for number, line in enumerate(file, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            key, separator, value = line.partition('=')
            if not separator or not key.strip():
                raise ParameterError(__SYNTAX_ERROR % (path, number, line))
            pairs[key.strip()] = value.strip()
    return pairs


def from_file(path: str) -> ModelParams:
    """
    Returns the model parameters stored in a 'key=value' file. Keys that are
    not model parameters are rejected.

    Parameters
    ----------
    path: str
        Name of the configuration file
    Returns
    -------
    The parameters described by the file.
    """

    return from_dict(read_pairs(path))
