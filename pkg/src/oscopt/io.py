"""File formats: edge lists, distance matrices, result documents and trajectory tables."""

from __future__ import annotations

import csv
import io as _io
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .graph import Graph, GraphError, build_graph, check_distance_matrix

FORMAT_VERSION = 1
PHASE_COLUMN_LIMIT = 100


class ParseError(GraphError):
    """Malformed input; ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s[0] in "%#":
            continue
        yield no, s


def parse_edge_list(text: str, weighted: bool = False) -> Graph:
    """Parse a G-set style edge list.

    The first content line is ``n m``; each following line is ``i j [w]``
    with 1-based node indices.  Lines starting with ``%`` or ``#`` are
    comments.  Weights are dropped (every edge gets weight 1) unless
    ``weighted`` is set, in which case their magnitudes are kept.

    >>> parse_edge_list("3 3\\n1 2 1\\n2 3 1\\n1 3 1").m
    3
    """
    lines = _content_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError("empty input: expected a header line 'n m'") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"header must be 'n m', got {header!r}", no)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"header must hold two integers, got {header!r}", no) from None
    if n < 0 or m < 0:
        raise ParseError("node and edge counts must be non-negative", no)

    edges = []
    for no, s in lines:
        parts = s.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'i j [w]', got {s!r}", no)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError(f"non-numeric field in {s!r}", no) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"node index out of range 1..{n} in {s!r}", no)
        if weighted:
            if w == 0 or not np.isfinite(w):
                raise ParseError(f"edge weight must be finite and nonzero, got {w}", no)
            w = abs(w)
        else:
            w = 1.0
        edges.append((no, i - 1, j - 1, w))
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} edge lines follow")
    try:
        return build_graph(n, [(i, j, w) for _, i, j, w in edges])
    except GraphError as exc:
        # find the offending line for a useful message
        seen = set()
        for no, i, j, _ in edges:
            key = (min(i, j), max(i, j))
            if i == j or key in seen:
                raise ParseError(str(exc), no) from None
            seen.add(key)
        raise


def format_edge_list(g: Graph, weighted: bool = False) -> str:
    out = [f"{g.n} {g.m}"]
    for i, j, w in g.edges:
        out.append(f"{i + 1} {j + 1} {w:g}" if weighted else f"{i + 1} {j + 1} 1")
    return "\n".join(out) + "\n"


def parse_distance_matrix(text: str) -> np.ndarray:
    """CSV distance matrix; blank and ``#`` lines are ignored."""
    rows = []
    for no, s in _content_lines(text):
        try:
            row = [float(x) for x in next(csv.reader([s]))]
        except ValueError:
            raise ParseError(f"non-numeric entry in {s!r}", no) from None
        if rows and len(row) != len(rows[0][1]):
            raise ParseError(f"ragged row: {len(row)} entries, expected {len(rows[0][1])}", no)
        rows.append((no, row))
    if not rows:
        raise ParseError("empty distance matrix")
    if len(rows) != len(rows[0][1]):
        raise ParseError(f"matrix has {len(rows)} rows but {len(rows[0][1])} columns")
    return check_distance_matrix(np.array([r for _, r in rows]))


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_graph(path, weighted: bool = False) -> Graph:
    return parse_edge_list(read_text(path), weighted)


def load_distance_matrix(path) -> np.ndarray:
    return parse_distance_matrix(read_text(path))


# -- result documents --------------------------------------------------------

def timestamp() -> str:
    """UTC time in ISO format; ``SOURCE_DATE_EPOCH`` pins it for reproducible files."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        t = datetime.now(timezone.utc).replace(microsecond=0)
    return t.isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class ResultRecord:
    """Everything needed to report and replay one ``solve`` invocation."""

    problem: str
    instance: str
    n: int
    m: int
    params: dict
    best_score: float
    valid: bool
    discreteness: float
    solution: list
    energy_start: float
    energy_end: float
    trials: list = field(default_factory=list)
    timestamp: str = ""
    extra: dict = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        known = set(cls.__dataclass_fields__)
        missing = {"problem", "instance", "n", "m", "params", "best_score"} - set(d)
        if missing:
            raise ValueError(f"result document lacks {sorted(missing)}")
        return cls(**{k: v for k, v in d.items() if k in known})


def dumps_result(record: ResultRecord) -> str:
    return json.dumps(record.to_dict(), indent=2, sort_keys=True) + "\n"


def write_result(record: ResultRecord, path) -> Path:
    path = Path(path)
    try:
        path.write_text(dumps_result(record))
    except OSError as exc:
        raise OSError(f"cannot write result to {path}: {exc.strerror or exc}") from exc
    return path


def read_result(path) -> ResultRecord:
    return ResultRecord.from_dict(json.loads(read_text(path)))


# -- trajectories ------------------------------------------------------------

def trajectory_table(run, include_phases: bool | None = None) -> str:
    """CSV text with header ``t,phi_0,...,phi_{N-1},energy,C1``.

    Phase columns are dropped for more than 100 oscillators unless
    ``include_phases`` is True, or whenever the run did not record them.
    Floats are written with ``repr`` so the file round-trips exactly.
    """
    n = run.phases.shape[-1]
    if include_phases is None:
        include_phases = n <= PHASE_COLUMN_LIMIT
    include_phases = include_phases and run.phase_trace is not None
    head = ["t"] + ([f"phi_{i}" for i in range(n)] if include_phases else []) + ["energy", "C1"]
    buf = _io.StringIO()
    buf.write(",".join(head) + "\n")
    for k, t in enumerate(run.times):
        row = [t]
        if include_phases:
            row.extend(run.phase_trace[k])
        row.extend([run.energies[k], run.c1[k]])
        buf.write(",".join(repr(float(x)) for x in row) + "\n")
    return buf.getvalue()


def write_trajectory(run, path, include_phases: bool | None = None) -> Path:
    path = Path(path)
    try:
        path.write_text(trajectory_table(run, include_phases))
    except OSError as exc:
        raise OSError(f"cannot write trajectory to {path}: {exc.strerror or exc}") from exc
    return path


def read_trajectory(path) -> tuple[list[str], np.ndarray]:
    lines = read_text(path).splitlines()
    header = lines[0].split(",")
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]]) if len(lines) > 1 else np.empty((0, len(header)))
    return header, data
