"""Built-in group catalog and the plain-text group file format.

A group file looks like::

    degree 3
    (1 2 3)
    (1 2)

One generator per line in cycle notation; ``()`` is the identity.  The catalog
data file uses the same blocks, each preceded by a ``group <order> <id> ...``
header.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import NamedTuple

from .errors import NotFoundError, ParseError
from .groups import DEFAULT_MAX_ORDER, Group, cyclic_group, group_from_generators


class CatalogId(NamedTuple):
    order: int
    id: int

    def __str__(self) -> str:
        return f"({self.order}, {self.id})"


@dataclass(frozen=True)
class CatalogEntry:
    cid: CatalogId
    description: str
    degree: int
    generators: tuple[tuple[int, ...], ...]
    aut_order: int | None = None
    cyclic: bool = False


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, line: int | None = None) -> tuple[int, ...]:
    """Image list of the permutation written in cycle notation."""
    s = text.strip()
    if not s:
        raise ParseError("empty generator", line)
    pos = 0
    images = list(range(1, degree + 1))
    seen: set[int] = set()
    for m in _CYCLE.finditer(s):
        if s[pos:m.start()].strip():
            raise ParseError(f"unexpected text {s[pos:m.start()].strip()!r}", line)
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            points = [int(p) for p in body]
        except ValueError:
            raise ParseError(f"bad point in cycle {m.group(0)!r}", line) from None
        for p in points:
            if not 1 <= p <= degree:
                raise ParseError(f"point {p} out of range 1..{degree}", line)
            if p in seen:
                raise ParseError(f"point {p} repeated", line)
            seen.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
    if s[pos:].strip():
        raise ParseError(f"unbalanced or stray text {s[pos:].strip()!r}", line)
    return tuple(images)


def parse_group_file(text: str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Parse ``degree N`` followed by generator lines into a :class:`Group`."""
    degree, gens = _parse_block(text.splitlines(), first_line=1)
    return group_from_generators(degree, gens, max_order=max_order)


def _parse_block(lines: list[str], first_line: int):
    degree = None
    gens = []
    for offset, raw in enumerate(lines):
        lineno = first_line + offset
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m or int(m.group(1)) < 1:
                raise ParseError("expected 'degree <N>'", lineno)
            degree = int(m.group(1))
            continue
        gens.append(parse_cycles(line, degree, lineno))
    if degree is None:
        raise ParseError("missing 'degree' line", first_line)
    return degree, gens


@lru_cache(maxsize=None)
def _entries() -> dict[CatalogId, CatalogEntry]:
    text = resources.files("difsets").joinpath("data/groups.txt").read_text()
    entries: dict[CatalogId, CatalogEntry] = {}
    cyclic_ids: dict[int, int] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if line.startswith("cyclic "):
            _, n, gid = line.split()
            cyclic_ids[int(n)] = int(gid)
            i += 1
        elif line.startswith("group "):
            head = line.split(maxsplit=4)
            cid = CatalogId(int(head[1]), int(head[2]))
            aut = int(head[3].removeprefix("aut="))
            desc = head[4] if len(head) > 4 else ""
            j = i + 1
            while j < len(lines) and lines[j].strip():
                j += 1
            degree, gens = _parse_block(lines[i + 1:j], first_line=i + 2)
            entries[cid] = CatalogEntry(cid, desc, degree, tuple(gens), aut)
            i = j
        else:
            i += 1
    for n, gid in cyclic_ids.items():
        cid = CatalogId(n, gid)
        old = entries.get(cid)
        entries[cid] = CatalogEntry(
            cid, f"C{n}", n, (tuple(list(range(2, n + 1)) + [1]),),
            old.aut_order if old else None, cyclic=True)
    return dict(sorted(entries.items()))


def catalog_ids(order: int | None = None) -> list[CatalogId]:
    return [c for c in _entries() if order is None or c.order == order]


def catalog_entry(cid) -> CatalogEntry:
    cid = CatalogId(*cid)
    try:
        return _entries()[cid]
    except KeyError:
        avail = [c.id for c in catalog_ids(cid.order)]
        hint = f"available ids for order {cid.order}: {avail}" if avail else \
            f"no groups of order {cid.order} in the catalog"
        raise NotFoundError(f"unknown catalog id {cid}; {hint}") from None


@lru_cache(maxsize=None)
def catalog_group(cid) -> Group:
    """Group for a catalog id ``(order, id)``.

    Cyclic groups are built as ``1, x, x^2, ...``; every other entry comes from
    its stored permutation generators via breadth-first numbering.
    """
    entry = catalog_entry(cid)
    label = f"SmallGroup{tuple(entry.cid)}"
    if entry.cyclic:
        g = cyclic_group(entry.cid.order)
        return Group(g.table, g.inverse, label)
    return group_from_generators(entry.degree, entry.generators, label=label)
