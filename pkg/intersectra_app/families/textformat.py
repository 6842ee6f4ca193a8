"""
Plain-text family files.

    # optional comments
    n=7 r=3
    1 2 3
    1 4 5

The header is optional; without it the ground set is [max element]. Every
other non-blank line is one set written as strictly increasing integers.
``dump_family`` writes members in colex order, so dumping a parsed canonical
file reproduces it byte for byte.
"""

import re
from pathlib import Path

from .core import SetFamily, VSet
from .exceptions import FamilyError, FamilyFormatError

HEADER_RE = re.compile(r"^n=(?P<n>\d+)(?:\s+r=(?P<r>\d+))?$")


def parse_family(text: str) -> SetFamily:
    """Parse the text format; errors carry the 1-based line number."""
    n = rank = None
    rows: list[tuple[int, tuple[int, ...]]] = []
    seen: set[tuple[int, ...]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        header = HEADER_RE.match(line)
        if header:
            if n is not None or rows:
                raise FamilyFormatError(line_no, "header must come first and only once")
            n = int(header["n"])
            rank = int(header["r"]) if header["r"] is not None else None
            if n < 1:
                raise FamilyFormatError(line_no, "n must be positive")
            continue

        try:
            elements = tuple(int(token) for token in line.split())
        except ValueError:
            raise FamilyFormatError(line_no, f"expected integers, got {line!r}") from None
        if any(b <= a for a, b in zip(elements, elements[1:], strict=False)):
            raise FamilyFormatError(line_no, "elements must be strictly increasing")
        if elements[0] < 1:
            raise FamilyFormatError(line_no, "elements are 1-based")
        if n is not None and elements[-1] > n:
            raise FamilyFormatError(line_no, f"element {elements[-1]} outside [1, {n}]")
        if rank is not None and len(elements) != rank:
            raise FamilyFormatError(line_no, f"set of size {len(elements)} in a family of rank {rank}")
        if elements in seen:
            raise FamilyFormatError(line_no, "duplicate set")
        seen.add(elements)
        rows.append((line_no, elements))

    if n is None:
        if not rows:
            raise FamilyFormatError(1, "no header and no sets")
        n = max(elements[-1] for _, elements in rows)

    try:
        return SetFamily(n, tuple(VSet.of(n, elements) for _, elements in rows), rank)
    except FamilyError as exc:
        raise FamilyFormatError(rows[0][0] if rows else 1, str(exc)) from exc


def dump_family(family: SetFamily) -> str:
    header = f"n={family.n}" if family.rank is None else f"n={family.n} r={family.rank}"
    lines = [header] + [" ".join(map(str, member.elements)) for member in family.members]
    return "\n".join(lines) + "\n"


def load_family(path: str | Path) -> SetFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def save_family(path: str | Path, family: SetFamily) -> None:
    Path(path).write_text(dump_family(family), encoding="utf-8")
