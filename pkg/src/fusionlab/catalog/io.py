"""Catalog files: JSON array or JSON lines of generator records.

Each record is ``{"name": str, "degree": int, "generators": [[...], ...],
"expected_order": int}`` with 0-indexed image arrays; ``expected_order`` is
optional.  ``dumps_catalog`` writes one record per line inside an array, so
``dumps_catalog(loads_catalog(text)) == text`` for any text it produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import FusionLabError
from ..perm import PermGroup


class CatalogError(FusionLabError, ValueError):
    """Malformed catalog input; the message names the offending position."""


class OrderMismatch(FusionLabError):
    pass


@dataclass
class CatalogEntry:
    name: str
    degree: int
    generators: list[list[int]]
    expected_order: int | None = None
    group: PermGroup | None = field(default=None, repr=False, compare=False)

    def record(self) -> dict:
        out = {"name": self.name, "degree": self.degree, "generators": self.generators}
        if self.expected_order is not None:
            out["expected_order"] = self.expected_order
        return out


def entry_from_group(name: str, G: PermGroup, expected_order: int | None = None) -> CatalogEntry:
    gens = [list(g) for g in G.generators]
    return CatalogEntry(name, G.degree, gens, expected_order if expected_order is not None else G.order, G)


def _where(source: str, line: int | None, index: int) -> str:
    at = f"{source}, record {index}"
    return f"{at} (line {line})" if line is not None else at


def _check_record(rec, where: str) -> CatalogEntry:
    if not isinstance(rec, dict):
        raise CatalogError(f"{where}: expected an object")
    unknown = set(rec) - {"name", "degree", "generators", "expected_order"}
    if unknown:
        raise CatalogError(f"{where}: unknown field(s) {sorted(unknown)}")
    name = rec.get("name")
    degree = rec.get("degree")
    gens = rec.get("generators")
    order = rec.get("expected_order")
    if not isinstance(name, str) or not name:
        raise CatalogError(f"{where}: 'name' must be a nonempty string")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise CatalogError(f"{where}: 'degree' must be a positive integer")
    if not isinstance(gens, list):
        raise CatalogError(f"{where}: 'generators' must be an array")
    if order is not None and (not isinstance(order, int) or isinstance(order, bool) or order < 1):
        raise CatalogError(f"{where}: 'expected_order' must be a positive integer")
    for gi, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != degree:
            raise CatalogError(f"{where}, generator {gi}: expected an image array of length {degree}")
        seen: dict[int, int] = {}
        for i, v in enumerate(g):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < degree:
                raise CatalogError(f"{where}, generator {gi}, index {i}: image {v!r} out of range 0..{degree - 1}")
            if v in seen:
                raise CatalogError(
                    f"{where}, generator {gi}, index {i}: duplicate point {v} (first at index {seen[v]})")
            seen[v] = i
    return CatalogEntry(name, degree, gens, order)


def _records(text: str, source: str) -> list[tuple[object, int | None]]:
    stripped = text.lstrip()
    if not stripped:
        return []
    try:
        if stripped.startswith("["):
            data = json.loads(text)
            lines = _array_line_numbers(text, len(data))
            return list(zip(data, lines))
        out = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if line.strip():
                try:
                    out.append((json.loads(line), lineno))
                except json.JSONDecodeError as exc:
                    raise CatalogError(f"{source}: line {lineno}, column {exc.colno}: {exc.msg}") from None
        return out
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _array_line_numbers(text: str, count: int) -> list[int | None]:
    """Line of each top-level element in an array (best effort, for messages)."""
    decoder = json.JSONDecoder()
    pos = text.index("[") + 1
    lines: list[int | None] = []
    for _ in range(count):
        while text[pos] in " \t\r\n,":
            pos += 1
        lines.append(text.count("\n", 0, pos) + 1)
        _, pos = decoder.raw_decode(text, pos)
    return lines


def loads_catalog(text: str, source: str = "<string>", build: bool = True) -> list[CatalogEntry]:
    entries = []
    names: set[str] = set()
    for index, (rec, line) in enumerate(_records(text, source)):
        where = _where(source, line, index)
        entry = _check_record(rec, where)
        if entry.name in names:
            raise CatalogError(f"{where}: duplicate group name {entry.name!r}")
        names.add(entry.name)
        if build:
            entry.group = PermGroup(entry.degree, entry.generators)
            if entry.expected_order is not None and entry.group.order != entry.expected_order:
                raise OrderMismatch(
                    f"{where}: {entry.name} has order {entry.group.order}, expected {entry.expected_order}")
        entries.append(entry)
    return entries


def load_catalog(path: str, build: bool = True) -> list[CatalogEntry]:
    with open(path, encoding="utf-8") as fh:
        return loads_catalog(fh.read(), str(path), build)


def dumps_catalog(entries: Iterable[CatalogEntry]) -> str:
    rows = [json.dumps(e.record(), separators=(",", ":")) for e in entries]
    if not rows:
        return "[]\n"
    return "[\n" + ",\n".join(rows) + "\n]\n"


def dump_catalog(entries: Iterable[CatalogEntry], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_catalog(entries))
