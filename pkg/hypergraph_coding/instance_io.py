"""
Instance file persistence.

This module reads and writes problem instances as JSON objects with the keys
``nx``, ``ny``, ``dim``, ``epsilon``, ``p`` and ``f``, and gives access to the
canonical instances shipped in the package's ``fixtures`` directory.
"""

import json
import os
from typing import List, Union

import structlog
from pydantic import ValidationError

from hypergraph_coding.core.errors import InstanceError
from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.core.settings import settings

logger = structlog.get_logger(__name__)

PathLike = Union[str, os.PathLike]


def parse_instance(data: dict) -> ProblemInstance:
    """
    Validate a decoded JSON object as a problem instance.

    Args:
        data (dict): The decoded JSON object.

    Returns:
        ProblemInstance: The validated instance.

    Raises:
        InstanceError: If a field is missing, has the wrong type or breaks an invariant.
    """
    if not isinstance(data, dict):
        raise InstanceError("<root>", "instance must be a JSON object")
    try:
        return ProblemInstance.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "<root>"
        raise InstanceError(field, error["msg"]) from e


def load_instance(path: PathLike) -> ProblemInstance:
    """
    Load and validate an instance file.

    Args:
        path: Path to the JSON instance file.

    Returns:
        ProblemInstance: The validated instance.

    Raises:
        InstanceError: If the file is missing, is not JSON, or the instance is invalid.
    """
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InstanceError("path", f"instance file {path} not found") from e
    except json.JSONDecodeError as e:
        raise InstanceError("<root>", f"invalid JSON in {path}: {e}") from e

    inst = parse_instance(data)
    logger.info("instance_loaded", path=str(path), nx=inst.nx, ny=inst.ny, dim=inst.dim, epsilon=inst.epsilon)
    return inst


def dumps_instance(inst: ProblemInstance) -> str:
    """
    Render an instance in canonical form: sorted keys, two-space indent, exact floats.

    Args:
        inst (ProblemInstance): The instance to render.

    Returns:
        str: The JSON text, newline terminated.
    """
    return json.dumps(inst.model_dump(), indent=2, sort_keys=True) + "\n"


def save_instance(inst: ProblemInstance, path: PathLike) -> None:
    """
    Write an instance to a file in canonical form.

    Args:
        inst (ProblemInstance): The instance to save.
        path: Destination path.
    """
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(path, "w") as f:
        f.write(dumps_instance(inst))


def list_fixtures() -> List[str]:
    """
    List the names of the bundled instances.

    Returns:
        List[str]: Fixture names without the ``.json`` suffix.
    """
    return sorted(p.stem for p in settings.fixtures_dir.glob("*.json"))


def load_fixture(name: str) -> ProblemInstance:
    """
    Load one of the bundled instances by name.

    Args:
        name (str): One of ``example1``, ``example2``, ``fig4`` or ``fig5``.

    Returns:
        ProblemInstance: The validated instance.

    Raises:
        InstanceError: If no fixture has that name.
    """
    if name not in list_fixtures():
        raise InstanceError("fixture", f"unknown fixture {name!r}; available: {', '.join(list_fixtures())}")
    return load_instance(settings.fixtures_dir / f"{name}.json")


def resolve_instance(ref: str) -> ProblemInstance:
    """
    Load an instance from a path, falling back to a fixture name.

    Args:
        ref (str): A file path or a fixture name.

    Returns:
        ProblemInstance: The validated instance.
    """
    if os.path.exists(ref):
        return load_instance(ref)
    return load_fixture(ref)
