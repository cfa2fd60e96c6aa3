"""Reading and writing the Cayley-table text format.

The format is shared by groups and semigroups::

    # optional comment lines
    3
    0 1 2
    1 2 0
    2 0 1

Blank lines are ignored. Whether the table is a group is decided by
validation, never declared in the file.
"""

from typing import List, Optional, Sequence, Tuple

from .errors import ParseError

Table = Tuple[Tuple[int, ...], ...]


def parse_table(text: str) -> Tuple[Table, Optional[str]]:
    """Return ``(table, name)``; ``name`` is taken from a ``# name: ...`` comment if present."""
    name = None
    rows: List[Tuple[int, List[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("name:"):
                name = body[5:].strip() or None
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty table: expected the order n on the first line")
    lineno, first = rows[0]
    if len(first) != 1:
        raise ParseError("first line must hold the order n alone", lineno)
    try:
        n = int(first[0])
    except ValueError:
        raise ParseError(f"order {first[0]!r} is not an integer", lineno) from None
    if n < 1:
        raise ParseError("order must be positive", lineno)
    body = rows[1:]
    if len(body) != n:
        last = body[-1][0] if body else lineno
        raise ParseError(f"expected {n} rows, found {len(body)}", last)
    table = []
    for lineno, cells in body:
        if len(cells) != n:
            raise ParseError(f"expected {n} entries, found {len(cells)}", lineno)
        row = []
        for c in cells:
            try:
                v = int(c)
            except ValueError:
                raise ParseError(f"entry {c!r} is not an integer", lineno) from None
            if not 0 <= v < n:
                raise ParseError(f"entry {v} outside [0,{n})", lineno)
            row.append(v)
        table.append(tuple(row))
    return tuple(table), name


def format_table(table: Sequence[Sequence[int]], name: Optional[str] = None) -> str:
    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(str(len(table)))
    lines.extend(" ".join(str(v) for v in row) for row in table)
    return "\n".join(lines) + "\n"
