"""File-format helpers shared by the CLI: posets, gluing diagrams,
rings, matrices, polynomial lists."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .lattices import FinDistLattice, GlueDiagram
from .matrices import PolyMatrix
from .poly import Poly, Ring
from .posets import FinPoset


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"cannot open {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def save_json(path: str, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def poset_from_file(path: str) -> FinPoset:
    return FinPoset.from_json(load_json(path))


def ring_from_file(path: str) -> Ring:
    return Ring.from_json(load_json(path))


def matrix_from_file(ring: Ring, path: str) -> PolyMatrix:
    data = load_json(path)
    if not isinstance(data, dict) or "rows" not in data:
        raise InputError(f"{path}: matrix JSON needs a 'rows' list of lists")
    return PolyMatrix.from_texts(ring, data["rows"])


def parse_poly_list(ring: Ring, text: str) -> list[Poly]:
    items = [chunk.strip() for chunk in text.split(",")]
    return [ring.parse(chunk) for chunk in items if chunk]


def diagram_from_json(data: dict) -> GlueDiagram:
    if not isinstance(data, dict) or "lattices" not in data:
        raise InputError("diagram JSON needs 'lattices' and 'overlaps'")
    lattices = [FinDistLattice(FinPoset.from_json(p)) for p in data["lattices"]]
    overlaps: dict[tuple[int, int], int] = {}
    for entry in data.get("overlaps", []):
        try:
            i, j = int(entry["i"]), int(entry["j"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad overlap entry: {entry}") from exc
        for key, a, b in (("s_ij", i, j), ("s_ji", j, i)):
            if key not in entry:
                raise InputError(f"overlap ({i},{j}) missing {key}")
            elem = lattices[a].elem_from_points(list(entry[key]))
            overlaps[(a, b)] = elem.mask
        _ = b
    return GlueDiagram(lattices, overlaps, mode=data.get("mode", "ideal"))


def diagram_from_file(path: str) -> GlueDiagram:
    return diagram_from_json(load_json(path))
