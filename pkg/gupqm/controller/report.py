import csv
import dataclasses
import io
import json
import more_itertools
import numpy as np
import sys
import typing

from dataclasses import dataclass
from gupqm.logger import logger
from gupqm.model.errors import ParameterError
from gupqm.model.green.green import GreenQuery
from gupqm.model.system.endpoints import Endpoints
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Any, Iterator, List, Optional, Sequence, Tuple

# 17 significant digits identify every double
CSV_FLOAT = '.17g'

__FORMAT_ERROR = "Unknown report format '%s'"


@dataclass(frozen=True)
class ActionRecord:
    """Classical action S0 + alpha S1 between the endpoints."""

    params: ModelParams
    endpoints: Endpoints
    S0: complex
    S1: complex
    total: complex


@dataclass(frozen=True)
class GreenRecord:
    """
    Green's function by numerical Laplace transform, with the closed form
    and the relative difference when the dimension has one.
    """

    query: GreenQuery
    numeric: float
    closed: Optional[float] = None
    relative: Optional[float] = None


@dataclass(frozen=True)
class BoundRecord:
    """One point (dP, dQ) of the boundary of the allowed region."""

    dP: float
    dQ: float


@dataclass(frozen=True)
class LevelRecord:
    """A first-order level with the matrix oracle eigenvalue of same rank."""

    n1: int
    n2: Optional[int]
    formula: float
    oracle: float
    relative: float


def _key(f: dataclasses.Field) -> str:
    """Name of a field in the serialized form."""
    return f.metadata.get('json', f.name)


def encode(value: Any) -> Any:
    """
    Turn a report, or any value inside it, into plain JSON data: dataclasses
    become objects in field order, complex numbers {"re": x, "im": y} and
    tuples lists.
    """

    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            _key(f): encode(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    return value


def decode(data: Any, kind: Any) -> Any:
    """
    Rebuild a value of the given type from the data produced by encode.

    Parameters
    ----------
    data: Any
        Plain JSON data
    kind: Any
        The type to rebuild: a dataclass, a typing generic or a scalar type
    Returns
    -------
    The rebuilt value.
    """

    if data is None:
        return None

    origin, arguments = typing.get_origin(kind), typing.get_args(kind)
    if origin is typing.Union:
        # Optional[X]
        inner = [a for a in arguments if a is not type(None)]
        return decode(data, inner[0])
    if dataclasses.is_dataclass(kind):
        hints = typing.get_type_hints(kind)
        return kind(**{
            f.name: decode(data[_key(f)], hints[f.name])
            for f in dataclasses.fields(kind) if f.init
        })
    if origin is tuple:
        if len(arguments) == 2 and arguments[1] is Ellipsis:
            return tuple(decode(v, arguments[0]) for v in data)
        return tuple(decode(v, a) for v, a in zip(data, arguments))
    if origin is list:
        return [decode(v, arguments[0]) for v in data]
    if origin is dict:
        return {k: decode(v, arguments[1]) for k, v in data.items()}
    if kind is complex:
        if isinstance(data, dict):
            return complex(data['re'], data['im'])
        return complex(data)
    if kind in (float, int, bool, str):
        return kind(data)
    return data


def flatten(value: Any, prefix: str = '') -> Iterator[Tuple[str, str]]:
    """
    Columns of a report in CSV form: nested fields joined by dots, complex
    numbers split in .re and .im, sequences indexed.
    """

    def join(name) -> str:
        return f'{prefix}.{name}' if prefix else str(name)

    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        for f in dataclasses.fields(value):
            yield from flatten(getattr(value, f.name), join(_key(f)))
        return
    if isinstance(value, np.generic):
        value = value.item()

    if value is None:
        yield prefix, ''
    elif isinstance(value, bool):
        yield prefix, str(value).lower()
    elif isinstance(value, int):
        yield prefix, str(value)
    elif isinstance(value, float):
        yield prefix, format(value, CSV_FLOAT)
    elif isinstance(value, complex):
        yield join('re'), format(value.real, CSV_FLOAT)
        yield join('im'), format(value.imag, CSV_FLOAT)
    elif isinstance(value, (list, tuple)):
        for index, item in enumerate(value):
            yield from flatten(item, join(index))
    elif isinstance(value, dict):
        for key, item in value.items():
            yield from flatten(item, join(key))
    else:
        yield prefix, str(value)


def to_json(records: Sequence[Any]) -> str:
    """JSON array of the records; floats keep their shortest exact repr."""
    return json.dumps(encode(list(records)), indent=2) + '\n'


def from_json(text: str, kind: Any) -> List[Any]:
    """Read back the records written by to_json."""
    return [decode(item, kind) for item in json.loads(text)]


def to_csv(records: Sequence[Any]) -> str:
    """
    CSV table of the records, one row each. The header lists the columns in
    field order, the columns of later records that the first one lacks
    (such as optional details) being appended in order of appearance.
    """

    rows = [dict(flatten(record)) for record in records]
    header = list(more_itertools.unique_everseen(
        more_itertools.flatten(row.keys() for row in rows)
    ))

    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=header, restval='', lineterminator='\n'
    )
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def dumps(records: Sequence[Any], format: str) -> str:
    if format == 'json':
        return to_json(records)
    if format == 'csv':
        return to_csv(records)
    raise ParameterError(__FORMAT_ERROR % format)


def emit(records: Sequence[Any], format: str, out: Optional[str] = None):
    """
    Write the records in the given format to the file out, or to stdout.

    Parameters
    ----------
    records: Sequence[Any]
        Dataclass instances, all of the same type
    format: str
        Either 'json' or 'csv'
    out: str
        Path of the output file, stdout if not given
    """

    write(dumps(records, format), out)


def write(text: str, out: Optional[str] = None):
    """Write serialized records to the file out, or to stdout."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    logger.info('Writing report to %s' % out)
    with open(out, 'w', newline='') as file:
        file.write(text)
