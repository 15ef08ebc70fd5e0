"""Instance files: the JSON schema, validation, and the bundled corpus.

An instance file declares coordinates, a rank, the frame product table
and the anchor, plus optional blocks: a representation (matrix tables),
a bilinear form, named endomorphisms, a kernel frame, a deformation
candidate (values and symbols), an alternate deformation candidate for
equivalence runs, and the data of an action construction.  All
polynomial entries are strings in the expression grammar and are parsed
against the declared coordinates.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .cohomology import MultiDerivation
from .core import LieAlgebroid, LSAlgebroid, Representation, Section
from .deformations import deformation_from_tables
from .errors import ParseError, SchemaError
from .polyring import Poly, PolyMatrix, VectorField, parse_poly


@dataclass
class ActionBlock:
    algebra: LSAlgebroid
    coordinates: tuple[str, ...]
    vector_fields: list[VectorField]


@dataclass
class InstanceFile:
    name: str
    description: str
    algebroid: LSAlgebroid
    representation: Representation | None = None
    bilinear_form: PolyMatrix | None = None
    endomorphisms: dict[str, PolyMatrix] = field(default_factory=dict)
    kernel_frame: list[Section] = field(default_factory=list)
    deformation: MultiDerivation | None = None
    deformation_prime: MultiDerivation | None = None
    action: ActionBlock | None = None
    digest: str = ""


def _expect(data, kind, path: str):
    if not isinstance(data, kind):
        raise SchemaError(path, f"expected {kind.__name__}, "
                                f"got {type(data).__name__}")
    return data


def _expect_list(data, length, path: str):
    _expect(data, list, path)
    if length is not None and len(data) != length:
        raise SchemaError(path, f"expected {length} entries, got {len(data)}")
    return data


def _poly(text, coords, path: str) -> Poly:
    _expect(text, str, path)
    try:
        return parse_poly(text, coords)
    except ParseError as err:
        raise ParseError(f"{path}: {err.message}", err.position,
                         err.expected) from None


def _section(entries, coords, rank, path: str) -> Section:
    _expect_list(entries, rank, path)
    return Section(coords, [_poly(entries[k], coords, f"{path}[{k}]")
                            for k in range(rank)])


def _vector_field(entries, coords, path: str) -> VectorField:
    _expect_list(entries, len(coords), path)
    return VectorField(coords, [_poly(entries[m], coords, f"{path}[{m}]")
                                for m in range(len(coords))])


def _matrix(entries, coords, rows, cols, path: str) -> PolyMatrix:
    _expect_list(entries, rows, path)
    table = []
    for i in range(rows):
        row = _expect_list(entries[i], cols, f"{path}[{i}]")
        table.append([_poly(row[j], coords, f"{path}[{i}][{j}]")
                      for j in range(cols)])
    return PolyMatrix(coords, table)


def _structure_table(entries, coords, rank, path: str) -> list[list[Section]]:
    _expect_list(entries, rank, path)
    table = []
    for i in range(rank):
        row = _expect_list(entries[i], rank, f"{path}[{i}]")
        table.append([_section(row[j], coords, rank, f"{path}[{i}][{j}]")
                      for j in range(rank)])
    return table


def _representation(block, coords, rank, path: str) -> Representation:
    _expect(block, dict, path)
    if "rank" not in block:
        raise SchemaError(f"{path}.rank", "missing")
    s = _expect(block["rank"], int, f"{path}.rank")
    rho_entries = _expect_list(block.get("rho"), rank, f"{path}.rho")
    rho = [_matrix(rho_entries[i], coords, s, s, f"{path}.rho[{i}]")
           for i in range(rank)]
    if "mu" in block:
        mu_entries = _expect_list(block["mu"], rank, f"{path}.mu")
        mu = [_matrix(mu_entries[i], coords, s, s, f"{path}.mu[{i}]")
              for i in range(rank)]
    else:
        mu = None
    return Representation(s, rho, mu)


def _deformation(block, coords, rank, path: str) -> MultiDerivation:
    _expect(block, dict, path)
    values_entries = _expect_list(block.get("values"), rank, f"{path}.values")
    values = []
    for i in range(rank):
        row = _expect_list(values_entries[i], rank, f"{path}.values[{i}]")
        values.append([_section(row[j], coords, rank,
                                f"{path}.values[{i}][{j}]")
                       for j in range(rank)])
    symbols_entries = _expect_list(block.get("symbols"), rank,
                                   f"{path}.symbols")
    symbols = [_vector_field(symbols_entries[i], coords,
                             f"{path}.symbols[{i}]") for i in range(rank)]
    return deformation_from_tables(coords, rank, values, symbols)


def _action_block(block, path: str) -> ActionBlock:
    _expect(block, dict, path)
    algebra_block = _expect(block.get("algebra"), dict, f"{path}.algebra")
    g_rank = _expect(algebra_block.get("rank"), int, f"{path}.algebra.rank")
    g_structure = _structure_table(algebra_block.get("structure"), (), g_rank,
                                   f"{path}.algebra.structure")
    algebra = LSAlgebroid((), g_rank, g_structure,
                          [VectorField.zero(()) for _ in range(g_rank)])
    coords_entries = _expect(block.get("coordinates"), list,
                             f"{path}.coordinates")
    coords = tuple(_expect(c, str, f"{path}.coordinates") for c in coords_entries)
    fields_entries = _expect_list(block.get("vector_fields"), g_rank,
                                  f"{path}.vector_fields")
    fields = [_vector_field(fields_entries[i], coords,
                            f"{path}.vector_fields[{i}]")
              for i in range(g_rank)]
    return ActionBlock(algebra, coords, fields)


def parse_instance_dict(data: dict, digest: str = "") -> InstanceFile:
    _expect(data, dict, "$")
    coords_entries = _expect(data.get("coordinates"), list, "coordinates")
    coords = tuple(_expect(c, str, "coordinates") for c in coords_entries)
    if "rank" not in data:
        raise SchemaError("rank", "missing")
    rank = _expect(data["rank"], int, "rank")
    if rank < 1:
        raise SchemaError("rank", "must be positive")

    structure = _structure_table(data.get("structure"), coords, rank,
                                 "structure")
    anchor_entries = _expect_list(data.get("anchor"), rank, "anchor")
    anchor = [_vector_field(anchor_entries[i], coords, f"anchor[{i}]")
              for i in range(rank)]
    algebroid = LSAlgebroid(coords, rank, structure, anchor)

    instance = InstanceFile(
        name=str(data.get("name", "instance")),
        description=str(data.get("description", "")),
        algebroid=algebroid,
        digest=digest,
    )
    if "representation" in data:
        instance.representation = _representation(data["representation"],
                                                  coords, rank,
                                                  "representation")
    if "bilinear_form" in data:
        instance.bilinear_form = _matrix(data["bilinear_form"], coords,
                                         rank, rank, "bilinear_form")
    if "endomorphisms" in data:
        block = _expect(data["endomorphisms"], dict, "endomorphisms")
        for key in sorted(block):
            instance.endomorphisms[key] = _matrix(
                block[key], coords, rank, rank, f"endomorphisms.{key}")
    if "kernel_frame" in data:
        entries = _expect(data["kernel_frame"], list, "kernel_frame")
        instance.kernel_frame = [
            _section(entries[i], coords, rank, f"kernel_frame[{i}]")
            for i in range(len(entries))]
    if "deformation" in data:
        instance.deformation = _deformation(data["deformation"], coords,
                                            rank, "deformation")
    if "deformation_prime" in data:
        instance.deformation_prime = _deformation(data["deformation_prime"],
                                                  coords, rank,
                                                  "deformation_prime")
    if "action" in data:
        instance.action = _action_block(data["action"], "action")
    return instance


def parse_instance(path) -> InstanceFile:
    """Load and fully validate an instance file."""
    raw = Path(path).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as err:
        raise SchemaError("$", f"invalid JSON: {err}") from None
    return parse_instance_dict(data, digest)


# ---------------------------------------------------------------------------
# Serialization of derived structures
# ---------------------------------------------------------------------------

def section_to_list(section: Section) -> list[str]:
    return [str(comp) for comp in section.components]


def algebroid_to_dict(alg: LSAlgebroid) -> dict:
    return {
        "coordinates": list(alg.coords),
        "rank": alg.rank,
        "structure": [[section_to_list(alg.c[i][j]) for j in range(alg.rank)]
                      for i in range(alg.rank)],
        "anchor": [[str(comp) for comp in field.components]
                   for field in alg.anchor],
    }


def lie_algebroid_to_dict(alg: LieAlgebroid) -> dict:
    return {
        "coordinates": list(alg.coords),
        "rank": alg.rank,
        "bracket": [[section_to_list(alg.b[i][j]) for j in range(alg.rank)]
                    for i in range(alg.rank)],
        "anchor": [[str(comp) for comp in field.components]
                   for field in alg.anchor],
    }


def matrix_to_list(matrix: PolyMatrix) -> list[list[str]]:
    return [[str(matrix.entry(i, j)) for j in range(matrix.cols)]
            for i in range(matrix.rows)]


# ---------------------------------------------------------------------------
# Bundled corpus
# ---------------------------------------------------------------------------

CORPUS_NAMES = (
    "flat",
    "point_e1e2",
    "action",
    "nonexample",
    "riemannian",
    "ladder",
    "zero_r2",
    "double_e1e2",
)


def corpus_path(name: str) -> Path:
    base = resources.files(__package__) / "corpus" / f"{name}.json"
    return Path(str(base))


def load_corpus(name: str) -> InstanceFile:
    return parse_instance(corpus_path(name))
