"""Plain-text set files.

    # group: 8^2
    0,2
    4,2

The header names the group; every other non-blank line that does not
start with '#' is one element as comma-separated residues.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidArgumentError
from .groups import GroupElement, GroupSpec

_HEADER = re.compile(r"#\s*group\s*:\s*(\S.*)$", re.IGNORECASE)


def parse_set(text: str) -> tuple[GroupSpec, list[GroupElement]]:
    spec = None
    elements: list[GroupElement] = []
    seen: set[GroupElement] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m and spec is None:
                spec = GroupSpec.parse(m.group(1))
            continue
        if spec is None:
            raise InvalidArgumentError(f"line {lineno}: element before the '# group:' header")
        try:
            residues = [int(x) for x in line.split(",")]
        except ValueError:
            raise InvalidArgumentError(f"line {lineno}: cannot parse {line!r}") from None
        g = spec.check(residues)
        if g in seen:
            raise InvalidArgumentError(f"line {lineno}: duplicate element {g}")
        seen.add(g)
        elements.append(g)
    if spec is None:
        raise InvalidArgumentError("missing '# group: SPEC' header")
    return spec, elements


def format_set(spec: GroupSpec, elements: Iterable[Sequence[int]]) -> str:
    lines = [f"# group: {spec}"]
    lines += [",".join(str(r) for r in spec.check(g)) for g in elements]
    return "\n".join(lines) + "\n"


def read_set(path) -> tuple[GroupSpec, list[GroupElement]]:
    return parse_set(Path(path).read_text())


def write_set(path, spec: GroupSpec, elements: Iterable[Sequence[int]]) -> None:
    Path(path).write_text(format_set(spec, elements))
