"""Reading and writing the HGT text format.

::

    hypergroup v1
    order <n>
    star <s0> ... <s(n-1)>          (optional)
    <i> <j> : <k1> <k2> ...         (n*n lines, ascending k)

Lines starting with ``#`` are comments. Element 0 is the identity.
"""

from __future__ import annotations

from pathlib import Path

from .bits import members
from .core import Hypergroup, build_hypergroup
from .errors import ParseError

HEADER = "hypergroup v1"


def parse_hgt(text: str) -> Hypergroup:
    lines = [
        (no, raw.strip())
        for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input", 1)
    no, line = lines[0]
    if line != HEADER:
        raise ParseError(f"expected {HEADER!r}", no)
    if len(lines) < 2:
        raise ParseError("missing 'order' line", no)
    no, line = lines[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError("expected 'order <n>' with n >= 1", no)
    n = int(parts[1])

    rest = lines[2:]
    star = None
    if rest and rest[0][1].split()[0] == "star":
        no, line = rest[0]
        vals = line.split()[1:]
        try:
            star = [int(v) for v in vals]
        except ValueError:
            raise ParseError("star entries must be integers", no) from None
        if len(star) != n or any(not 0 <= s < n for s in star):
            raise ParseError(f"star line must list {n} indices in range", no)
        rest = rest[1:]

    cells: dict[tuple[int, int], tuple[int, ...]] = {}
    for no, line in rest:
        left, sep, right = line.partition(":")
        if not sep:
            raise ParseError("expected '<i> <j> : <k> ...'", no)
        try:
            ij = [int(v) for v in left.split()]
            ks = [int(v) for v in right.split()]
        except ValueError:
            raise ParseError("non-integer token", no) from None
        if len(ij) != 2:
            raise ParseError("cell line needs exactly two indices before ':'", no)
        i, j = ij
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"cell ({i}, {j}) out of range", no)
        if (i, j) in cells:
            raise ParseError(f"duplicate cell ({i}, {j})", no)
        if not ks:
            raise ParseError(f"cell ({i}, {j}) is empty", no)
        if any(not 0 <= k < n for k in ks):
            raise ParseError(f"cell ({i}, {j}) names an element out of range", no)
        if ks != sorted(set(ks)):
            raise ParseError(f"cell ({i}, {j}) entries must be strictly ascending", no)
        cells[(i, j)] = tuple(ks)
    for i in range(n):
        for j in range(n):
            if (i, j) not in cells:
                last = rest[-1][0] if rest else lines[-1][0]
                raise ParseError(f"missing cell ({i}, {j})", last)
    return build_hypergroup(n, cells, star)


def read_hgt(path) -> Hypergroup:
    return parse_hgt(Path(path).read_text())


def format_hgt(H: Hypergroup, comments: list[str] | None = None) -> str:
    out = [HEADER]
    for c in comments or []:
        out.append(f"# {c}")
    out.append(f"order {H.order}")
    out.append("star " + " ".join(str(s) for s in H.star))
    for i in range(H.order):
        for j in range(H.order):
            out.append(f"{i} {j} : " + " ".join(str(k) for k in members(H.table[i][j])))
    return "\n".join(out) + "\n"


def write_hgt(H: Hypergroup, path, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_hgt(H, comments))
