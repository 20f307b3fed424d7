"""Finite hypergroup tables: construction, axiom validation and elementary algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .bits import ElementSet, full_mask, is_subset, mask_of, members
from .errors import (
    VIOLATION_TYPES,
    MalformedTable,
    NotClosed,
    ValidationError,
    Violation,
)

IDENTITY = 0


@dataclass(frozen=True)
class Hypergroup:
    """A validated hypergroup on ``0..order-1`` with identity 0.

    ``table[p][q]`` is the bitmask of ``pq``; ``star[s]`` is ``s*``.
    Instances are only produced by :func:`build_hypergroup` (or helpers that
    call it), so every instance satisfies the axioms.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    star: tuple[int, ...]

    @property
    def full(self) -> ElementSet:
        return full_mask(self.order)

    @property
    def identity(self) -> int:
        return IDENTITY

    def product(self, p: int, q: int) -> ElementSet:
        return self.table[p][q]

    def cells(self) -> Iterable[tuple[int, int, ElementSet]]:
        for p in range(self.order):
            for q in range(self.order):
                yield p, q, self.table[p][q]

    def __str__(self) -> str:
        rows = []
        for p in range(self.order):
            rows.append(" ".join(_cell_str(self.table[p][q]) for q in range(self.order)))
        return f"Hypergroup(order={self.order})\n" + "\n".join(rows)


def _cell_str(m: int) -> str:
    ms = members(m)
    return str(ms[0]) if len(ms) == 1 else "{" + ",".join(map(str, ms)) + "}"


# ---------------------------------------------------------------- validation


def _normalize_table(order: int, table) -> list[list[int]]:
    if order < 1:
        raise MalformedTable(f"order must be positive, got {order}")
    cells: list[list[int | None]] = [[None] * order for _ in range(order)]
    if isinstance(table, Mapping):
        items = table.items()
    else:
        rows = list(table)
        if len(rows) != order:
            raise MalformedTable(f"expected {order} rows, got {len(rows)}")
        items = []
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != order:
                raise MalformedTable(f"row {i} has {len(row)} cells, expected {order}")
            items.extend(((i, j), c) for j, c in enumerate(row))
    for (i, j), cell in items:
        if not (0 <= i < order and 0 <= j < order):
            raise MalformedTable(f"cell ({i}, {j}) outside order {order}")
        if isinstance(cell, int):
            raise MalformedTable(f"cell ({i}, {j}) must be an iterable of indices")
        m = mask_of(cell)
        if m >> order:
            raise MalformedTable(f"cell ({i}, {j}) names an element >= {order}")
        cells[i][j] = m
    for i in range(order):
        for j in range(order):
            if cells[i][j] is None:
                raise MalformedTable(f"missing cell ({i}, {j})")
    return cells  # type: ignore[return-value]


def _lmul(table, p: int, m: int) -> int:
    """p * M"""
    row = table[p]
    out = 0
    q = 0
    while m:
        if m & 1:
            out |= row[q]
        m >>= 1
        q += 1
    return out


def _rmul(table, m: int, q: int) -> int:
    """M * q"""
    out = 0
    p = 0
    while m:
        if m & 1:
            out |= table[p][q]
        m >>= 1
        p += 1
    return out


def _associativity_witness(n: int, table) -> tuple[int, int, int] | None:
    for p in range(n):
        for q in range(n):
            pq = table[p][q]
            for r in range(n):
                if _lmul(table, p, table[q][r]) != _rmul(table, pq, r):
                    return (p, q, r)
    return None


def h3_witness(n: int, table, star: Sequence[int]) -> tuple[int, int, int] | None:
    """First (p, q, r) with r in pq but q not in p*r or p not in rq*."""
    for p in range(n):
        ps = star[p]
        for q in range(n):
            qs = star[q]
            cell = table[p][q]
            for r in range(n):
                if cell >> r & 1:
                    if not (table[ps][r] >> q & 1) or not (table[r][qs] >> p & 1):
                        return (p, q, r)
    return None


def star_candidates(n: int, table) -> list[list[int]]:
    """Per element s, the t with 1 in ts and 1 in st."""
    return [
        [t for t in range(n) if table[t][s] & 1 and table[s][t] & 1] for s in range(n)
    ]


def _star_solutions(n: int, table) -> list[tuple[int, ...]]:
    sols = []
    for cand in itertools.product(*star_candidates(n, table)):
        if h3_witness(n, table, cand) is None:
            sols.append(tuple(cand))
    return sols


def _star_problem(n: int, star: Sequence[int]) -> str | None:
    if len(star) != n or any(not 0 <= s < n for s in star):
        return "star must map every element into range"
    if star[IDENTITY] != IDENTITY:
        return "1* must be 1"
    for s in range(n):
        if star[star[s]] != s:
            return f"star is not an involution at {s}"
    return None


def validate_table(order: int, table, star: Sequence[int] | None = None):
    """Check every axiom; return ``(masks, star, violations)``.

    Shape problems raise :class:`MalformedTable` immediately. Otherwise the
    returned list carries one :class:`Violation` per violated axiom, each
    with its first witness in lexicographic order.
    """
    n = order
    t = _normalize_table(order, table)
    violations: list[Violation] = []

    for p in range(n):
        for q in range(n):
            if not t[p][q]:
                violations.append(Violation("EmptyCell", (p, q), f"cell {p}*{q} is empty"))
                return t, None, violations

    for s in range(n):
        if t[s][IDENTITY] != 1 << s:
            violations.append(
                Violation("NoIdentity", (s,), f"element 0 is not a right identity: {s}*0 != {{{s}}}")
            )
            return t, None, violations
    for s in range(n):
        if t[IDENTITY][s] != 1 << s:
            violations.append(
                Violation("NoLeftIdentity", (s,), f"element 0 is not a left identity: 0*{s} != {{{s}}}")
            )
            return t, None, violations

    w = _associativity_witness(n, t)
    if w is not None:
        p, q, r = w
        violations.append(Violation("AssociativityViolation", w, f"{p}({q}{r}) != ({p}{q}){r}"))

    if star is not None:
        star = tuple(star)
        problem = _star_problem(n, star)
        if problem:
            violations.append(Violation("H3Violation", tuple(star), problem))
        else:
            w = h3_witness(n, t, star)
            if w is not None:
                violations.append(Violation("H3Violation", w, "r in pq but q not in p*r or p not in rq*"))
    else:
        sols = _star_solutions(n, t)
        if not sols:
            violations.append(Violation("StarMissing", (), "no star map satisfies (H3)"))
        elif len(sols) > 1:
            violations.append(Violation("StarAmbiguous", tuple(sols), f"{len(sols)} star maps satisfy (H3)"))
        else:
            star = sols[0]
            problem = _star_problem(n, star)
            if problem:
                violations.append(Violation("H3Violation", star, problem))
    return t, star, violations


def _raise_for(violations: list[Violation]):
    first = violations[0]
    cls = VIOLATION_TYPES.get(first.kind, ValidationError)
    raise cls("; ".join(str(v) for v in violations), violations)


def build_hypergroup(order: int, table, star: Sequence[int] | None = None) -> Hypergroup:
    """Validate a raw table and return a :class:`Hypergroup`.

    ``table`` is either a mapping ``(i, j) -> iterable of indices`` or a
    nested sequence of rows of iterables. When ``star`` is omitted it is
    inferred and must be unique.
    """
    t, star, violations = validate_table(order, table, star)
    if violations:
        _raise_for(violations)
    return Hypergroup(order, tuple(tuple(r) for r in t), tuple(star))


def from_masks(order: int, masks: Sequence[Sequence[int]], star: Sequence[int] | None = None) -> Hypergroup:
    """Like :func:`build_hypergroup` but cells are given as bitmasks."""
    rows = [[members(m) for m in row] for row in masks]
    return build_hypergroup(order, rows, star)


def infer_star(order: int, table) -> tuple[int, ...]:
    """The unique star map for which (H3) holds.

    Raises StarMissing / StarAmbiguous otherwise.
    """
    t = _normalize_table(order, table)
    sols = _star_solutions(order, t)
    if not sols:
        _raise_for([Violation("StarMissing", (), "no star map satisfies (H3)")])
    if len(sols) > 1:
        _raise_for([Violation("StarAmbiguous", tuple(sols), f"{len(sols)} star maps satisfy (H3)")])
    return sols[0]


# ------------------------------------------------------------------- algebra


def as_set(H: Hypergroup, S) -> ElementSet:
    m = mask_of(S)
    if m >> H.order:
        raise ValueError(f"set {members(m)} has elements outside order {H.order}")
    return m


def set_product(H: Hypergroup, P, Q) -> ElementSet:
    """Union of all cells pq with p in P and q in Q."""
    P = as_set(H, P)
    Q = as_set(H, Q)
    out = 0
    for p in members(P):
        out |= _lmul(H.table, p, Q)
    return out


def star_of_set(H: Hypergroup, S) -> ElementSet:
    out = 0
    for s in members(as_set(H, S)):
        out |= 1 << H.star[s]
    return out


def is_thin_element(H: Hypergroup, s: int) -> bool:
    return H.table[H.star[s]][s] == 1 << IDENTITY


def thin_elements(H: Hypergroup) -> ElementSet:
    return mask_of(s for s in range(H.order) if is_thin_element(H, s))


def is_thin(H: Hypergroup) -> bool:
    return thin_elements(H) == H.full


def is_commutative(H: Hypergroup) -> bool:
    return all(H.table[p][q] == H.table[q][p] for p in range(H.order) for q in range(p))


def _closed(H: Hypergroup, F: int) -> bool:
    return F != 0 and is_subset(set_product(H, star_of_set(H, F), F), F)


@lru_cache(maxsize=8192)
def restriction(H: Hypergroup, F: ElementSet) -> tuple[Hypergroup, tuple[int, ...]]:
    """Sub-hypergroup on a closed subset, and the parent index of each new index."""
    F = as_set(H, F)
    if not _closed(H, F):
        raise NotClosed(f"{members(F)} is not closed")
    idx = members(F)
    pos = {e: i for i, e in enumerate(idx)}
    rows = []
    for a in idx:
        rows.append([tuple(pos[x] for x in members(H.table[a][b])) for b in idx])
    star = [pos[H.star[a]] for a in idx]
    return build_hypergroup(len(idx), rows, star), idx


def restrict(H: Hypergroup, F) -> Hypergroup:
    return restriction(H, as_set(H, F))[0]


def to_sub(S: ElementSet, idx: Sequence[int]) -> ElementSet:
    """Re-index a parent subset into restriction coordinates."""
    return mask_of(i for i, e in enumerate(idx) if S >> e & 1)


def from_sub(S: ElementSet, idx: Sequence[int]) -> ElementSet:
    return mask_of(idx[i] for i in members(S))


def group_axioms_hold(H: Hypergroup) -> bool:
    """All cells singletons and the induced operation is a group."""
    n = H.order
    if any(bin(H.table[p][q]).count("1") != 1 for p in range(n) for q in range(n)):
        return False
    op = [[H.table[p][q].bit_length() - 1 for q in range(n)] for p in range(n)]
    for a in range(n):
        if op[a][0] != a or op[0][a] != a:
            return False
        if not any(op[a][b] == 0 and op[b][a] == 0 for b in range(n)):
            return False
    return all(op[op[a][b]][c] == op[a][op[b][c]] for a in range(n) for b in range(n) for c in range(n))
