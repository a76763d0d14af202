"""Reading, writing and verifying solution records.

Line format (UTF-8, one record per line)::

    <n> <t> (x,y) (x,y) ...   [# source]

``t`` may carry a ``<=`` prefix.  Blank lines and lines starting with ``#``
are skipped; text after a ``#`` on a record line is kept as the source.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .errors import ParseError
from .geometry import Point, Solution, coverage, spanned_lines
from .symmetry import orbit_size

_INT = re.compile(r"\d+")
_BOUND = re.compile(r"(<=)?(\d+)")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_SPACE = re.compile(r"\s+")


@dataclass(frozen=True)
class SolutionRecord:
    n: int
    claimed_t_bound: int
    vertices: tuple[Point, ...]
    source: str = ""

    def solution(self) -> Solution:
        return Solution(self.n, self.vertices)

    @classmethod
    def from_solution(cls, S: Solution, source: str = "", claimed: Optional[int] = None) -> "SolutionRecord":
        return cls(S.n, len(S) if claimed is None else claimed, S.vertices, source)


def parse_solution_line(text: str, lineno: Optional[int] = None, source: str = "") -> SolutionRecord:
    body, _, comment = text.partition("#")
    body = body.rstrip("\r\n")
    pos = 0

    def skip_space():
        nonlocal pos
        m = _SPACE.match(body, pos)
        if m:
            pos = m.end()

    def fail(msg):
        raise ParseError(msg, lineno, pos + 1)

    skip_space()
    m = _INT.match(body, pos)
    if not m:
        fail("expected lattice parameter n")
    n = int(m.group())
    pos = m.end()
    skip_space()
    m = _BOUND.match(body, pos)
    if not m:
        fail("expected claimed order t")
    t = int(m.group(2))
    pos = m.end()
    pts: list[Point] = []
    seen = set()
    while True:
        before = pos
        skip_space()
        if pos >= len(body):
            break
        if pos == before:
            fail("expected whitespace between fields")
        m = _PAIR.match(body, pos)
        if not m:
            fail(f"malformed coordinate pair {body[pos:pos + 12]!r}")
        x, y = int(m.group(1)), int(m.group(2))
        if not (0 <= x <= n and 0 <= y <= n):
            fail(f"coordinate ({x},{y}) outside [0,{n}]")
        if (x, y) in seen:
            fail(f"duplicate vertex ({x},{y})")
        seen.add((x, y))
        pts.append(Point(x, y))
        pos = m.end()
    src = comment.strip() or source
    return SolutionRecord(n, t, tuple(sorted(pts)), src)


def format_solution_line(rec: SolutionRecord, with_source: bool = True) -> str:
    parts = [str(rec.n), str(rec.claimed_t_bound)]
    parts += [f"({x},{y})" for x, y in rec.vertices]
    line = " ".join(parts)
    if with_source and rec.source:
        line += " # " + rec.source
    return line


def read_solutions(text: str, name: str = "") -> list[SolutionRecord]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(parse_solution_line(line, lineno, f"{name}:{lineno}" if name else ""))
    return out


def record_to_json(rec: SolutionRecord) -> dict:
    return {
        "n": rec.n,
        "t_claimed": rec.claimed_t_bound,
        "vertices": [[x, y] for x, y in rec.vertices],
        "source": rec.source,
    }


def record_from_json(obj: dict) -> SolutionRecord:
    try:
        n = int(obj["n"])
        t = int(obj["t_claimed"])
        pts = [Point(int(x), int(y)) for x, y in obj["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad solution object: {exc}") from None
    S = Solution(n, pts)
    return SolutionRecord(n, t, S.vertices, str(obj.get("source", "")))


def load_records(path) -> list[SolutionRecord]:
    """Read a ``.json`` list of solution objects or a solution-line text file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        data = json.loads(text)
        if isinstance(data, dict):
            data = [data]
        return [record_from_json(obj) for obj in data]
    return read_solutions(text, path.name)


def corpus_records() -> list[SolutionRecord]:
    """The shipped corpus of larger-lattice covers (n = 12 .. 110)."""
    text = resources.files("latticecover").joinpath("data/table1.txt").read_text()
    return read_solutions(text, "table1.txt")


def corpus_path() -> Path:
    return Path(str(resources.files("latticecover").joinpath("data/table1.txt")))


@dataclass
class RecordCheck:
    n: int
    claimed: int
    actual: int
    is_cover: bool
    line_count: int
    orbit_size: int
    uncovered: int = 0
    source: str = ""

    @property
    def passed(self) -> bool:
        return self.is_cover and self.actual == self.claimed

    @property
    def reason(self) -> str:
        if not self.is_cover:
            return f"{self.uncovered} vertices uncovered"
        if self.actual != self.claimed:
            return f"size {self.actual} does not match claimed {self.claimed}"
        return "ok"


@dataclass
class VerificationReport:
    checks: list[RecordCheck] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        return f"{self.passed} pass / {self.failed} fail"


def check_record(rec: SolutionRecord) -> RecordCheck:
    S = rec.solution()
    if len(S) < 2:
        return RecordCheck(rec.n, rec.claimed_t_bound, len(S), False, 0, orbit_size(S), (rec.n + 1) ** 2, rec.source)
    cov = coverage(S)
    return RecordCheck(
        n=rec.n,
        claimed=rec.claimed_t_bound,
        actual=len(S),
        is_cover=cov.is_full(),
        line_count=len(spanned_lines(S)),
        orbit_size=orbit_size(S),
        uncovered=cov.size - cov.count(),
        source=rec.source,
    )


def verify_corpus(records: Iterable[SolutionRecord], jobs: int = 1) -> VerificationReport:
    records = list(records)
    if jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            checks = list(pool.map(check_record, records))
    else:
        checks = [check_record(r) for r in records]
    return VerificationReport(checks)
