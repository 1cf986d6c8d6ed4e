"""Access to the bundled reference data.

* ``tables/A1.tbl`` .. ``tables/A19.tbl``: the 19 corpus quasigroups.
* ``golden.json``: reference H1 / H2 cells for every corpus quasigroup.
* ``formulas.json``: transcribed symbolic formulas used by cross-checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import List, Optional

from .homology import AbelianGroup, parse_group
from .identities import BmIdentity, parse_identity
from .quasigroup import CayleyTable, parse_table

CORPUS_NAMES = tuple(f"A{k}" for k in range(1, 20))


def _data_file(*parts):
    return resources.files("bmhomology").joinpath("data", *parts)


def table_text(name: str) -> str:
    if name not in CORPUS_NAMES:
        raise KeyError(f"unknown corpus quasigroup {name!r}")
    return _data_file("tables", f"{name}.tbl").read_text()


@lru_cache(maxsize=None)
def corpus_table(name: str) -> CayleyTable:
    return parse_table(table_text(name))


def corpus_tables() -> dict:
    return {name: corpus_table(name) for name in CORPUS_NAMES}


@dataclass(frozen=True)
class GoldenCell:
    """One reference value: degree 1 (no identity) or degree 2."""

    quasigroup: str
    degree: int
    identity: Optional[BmIdentity]
    t: int
    s: int
    group: AbelianGroup
    note: str = ""

    @property
    def key(self):
        return (CORPUS_NAMES.index(self.quasigroup), self.degree,
                self.identity.name if self.identity else "", -self.t, -self.s)

    def label(self) -> str:
        ident = f" {self.identity.name}" if self.identity else ""
        return f"{self.quasigroup} H{self.degree}{ident} ({self.t},{self.s})"


@dataclass(frozen=True)
class GoldenEntry:
    name: str
    order: int
    listed_identities: tuple
    cells: tuple


@lru_cache(maxsize=None)
def _golden_raw():
    return json.loads(_data_file("golden.json").read_text())


@lru_cache(maxsize=None)
def golden() -> dict:
    """``{name: GoldenEntry}`` in corpus order."""
    out = {}
    for e in _golden_raw():
        cells = []
        for c in e["h1"]:
            cells.append(GoldenCell(e["name"], 1, None, c["t"], c["s"],
                                    parse_group(c["group"]), c.get("note", "")))
        for c in e["h2"]:
            cells.append(GoldenCell(e["name"], 2, parse_identity(c["identity"]), c["t"], c["s"],
                                    parse_group(c["group"]), c.get("note", "")))
        out[e["name"]] = GoldenEntry(e["name"], e["order"],
                                     tuple(parse_identity(n) for n in e["listed_identities"]),
                                     tuple(cells))
    return out


def golden_cells(only=None) -> List[GoldenCell]:
    names = CORPUS_NAMES if not only else [n for n in CORPUS_NAMES if n in set(only)]
    cells = [c for n in names for c in golden()[n].cells]
    return sorted(cells, key=lambda c: c.key)


@lru_cache(maxsize=None)
def formulas() -> dict:
    return json.loads(_data_file("formulas.json").read_text())
