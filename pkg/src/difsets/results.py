"""Line-oriented results files.

::

    difsets-results 1
    group 16 5
    params v=16 k=6 lambda=2
    set 1 2 3 4 10 15
    set 1 2 3 4 12 13
    end 2

One ``params`` line per admissible triple, followed by its sets in sorted
order.  ``end`` carries the total number of ``set`` lines and doubles as a
truncation check.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import CatalogId, catalog_group
from .difference import Parameters, difference_set_parameters
from .errors import (ChecksumMismatchError, ResultsFormatError, VerificationError,
                     VersionMismatchError)

FORMAT_VERSION = 1
MAGIC = "difsets-results"
RESULTS_DIR_ENV = "DIFSETS_RESULTS_DIR"


@dataclass
class ResultsFile:
    cid: CatalogId
    blocks: list[tuple[Parameters, list[tuple[int, ...]]]] = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    @property
    def sets(self) -> list[tuple[int, ...]]:
        return [D for _, sets in self.blocks for D in sets]


def format_results(res: ResultsFile) -> str:
    lines = [f"{MAGIC} {res.format_version}", f"group {res.cid.order} {res.cid.id}"]
    for p, sets in res.blocks:
        lines.append(f"params v={p.v} k={p.k} lambda={p.lam}")
        lines.extend("set " + " ".join(map(str, D)) for D in sorted(sets))
    lines.append(f"end {len(res.sets)}")
    return "\n".join(lines) + "\n"


def default_filename(cid: CatalogId) -> str:
    return f"difsets_{cid.order}_{cid.id}.txt"


def results_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(RESULTS_DIR_ENV)
    return Path(env) if env else None


def write_results(path: str | os.PathLike, res: ResultsFile) -> Path:
    """Write ``res``; a directory path gets the default file name appended."""
    path = Path(path)
    if path.is_dir():
        path = path / default_filename(res.cid)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_results(res))
    return path


def parse_results(text: str) -> ResultsFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ResultsFormatError("empty results file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC or not head[1].isdigit():
        raise ResultsFormatError("line 1: missing results header")
    if int(head[1]) != FORMAT_VERSION:
        raise VersionMismatchError(
            f"format version {head[1]} is not supported (expected {FORMAT_VERSION})")
    m = re.fullmatch(r"group (\d+) (\d+)", lines[1]) if len(lines) > 1 else None
    if not m:
        raise ResultsFormatError("line 2: expected 'group <order> <id>'")
    res = ResultsFile(CatalogId(int(m.group(1)), int(m.group(2))))
    count = None
    for lineno, line in enumerate(lines[2:], start=3):
        if count is not None:
            raise ResultsFormatError(f"line {lineno}: content after 'end'")
        if m := re.fullmatch(r"params v=(\d+) k=(\d+) lambda=(\d+)", line):
            res.blocks.append((Parameters(*map(int, m.groups())), []))
        elif line.startswith("set "):
            if not res.blocks:
                raise ResultsFormatError(f"line {lineno}: set before params")
            try:
                D = tuple(int(x) for x in line.split()[1:])
            except ValueError:
                raise ResultsFormatError(f"line {lineno}: bad set entry") from None
            res.blocks[-1][1].append(D)
        elif m := re.fullmatch(r"end (\d+)", line):
            count = int(m.group(1))
        else:
            raise ResultsFormatError(f"line {lineno}: unrecognized line {line!r}")
    if count is None:
        raise ChecksumMismatchError("missing 'end' line; file truncated?")
    if count != len(res.sets):
        raise ChecksumMismatchError(
            f"'end' reports {count} sets but the file lists {len(res.sets)}")
    return res


def verify_results(res: ResultsFile) -> None:
    """Check every stored set against its parameters in the catalog group."""
    G = catalog_group(res.cid)
    for p, sets in res.blocks:
        if p.v != G.order:
            raise VerificationError(f"parameters {p} do not match group order {G.order}")
        for D in sets:
            try:
                got = difference_set_parameters(G, D)
            except ValueError as exc:
                raise VerificationError(f"set {list(D)}: {exc}") from None
            if got != p:
                raise VerificationError(f"set {list(D)} is not a {p} difference set")


def read_results(path: str | os.PathLike, verify: bool = True) -> ResultsFile:
    with open(path, encoding="utf-8", newline="") as fh:
        res = parse_results(fh.read())
    if verify:
        verify_results(res)
    return res
