"""Input resolution for the command line: files, bundled examples, generators."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .resolution import (
    InvalidGraph,
    ResolutionGraph,
    a2n1_chain_graph,
    torus_knot_graph,
)


@dataclass(frozen=True)
class SemigroupInput:
    generators: Tuple[int, ...]


CurveInput = Union[ResolutionGraph, SemigroupInput]


def _from_json(data: dict) -> CurveInput:
    if "semigroup" in data:
        try:
            return SemigroupInput(tuple(int(g) for g in data["semigroup"]))
        except (TypeError, ValueError) as exc:
            raise InvalidGraph(f"bad semigroup generators: {exc}") from exc
    return ResolutionGraph.from_dict(data)


def bundled_names() -> List[str]:
    root = resources.files(__package__) / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled(name: str) -> dict:
    path = resources.files(__package__) / "data" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(name)
    return json.loads(path.read_text())


def parse_generators(text: str) -> SemigroupInput:
    try:
        gens = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InvalidGraph(f"bad semigroup generators {text!r}") from exc
    return SemigroupInput(gens)


def _generator(source: str) -> Optional[CurveInput]:
    kind, _, args = source.partition(":")
    if not args:
        return None
    try:
        nums = [int(x) for x in args.split(",")]
    except ValueError as exc:
        raise InvalidGraph(f"bad generator arguments in {source!r}") from exc
    if kind == "a2n1_chain" and len(nums) == 1:
        return a2n1_chain_graph(nums[0])
    if kind == "torus" and len(nums) == 2:
        try:
            return torus_knot_graph(nums[0], nums[1])
        except ValueError as exc:
            raise InvalidGraph(str(exc)) from exc
    raise InvalidGraph(f"unknown generator {source!r}")


def load_input(source: str) -> CurveInput:
    """A graph or semigroup from a path, a bundled example, or a generator string.

    Generators are ``a2n1_chain:N`` and ``torus:P,Q``.  A path that does not
    exist is looked up among the bundled examples by its stem, so
    ``examples/cusp.json`` and ``cusp`` both work.
    """
    gen = _generator(source)
    if gen is not None:
        return gen
    path = Path(source)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidGraph(f"{source}: {exc}") from exc
        return _from_json(data)
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    try:
        return _from_json(bundled(stem))
    except FileNotFoundError:
        raise InvalidGraph(f"no such file or bundled example: {source}") from None
