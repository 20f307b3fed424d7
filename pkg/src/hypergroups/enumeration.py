"""Exhaustive generation of small hypergroups up to isomorphism.

Generation fixes a star involution and chooses the support of the table as a
union of orbits of the exchange symmetries: for a fixed star, (H3) says the
set of triples (p, q, r) with r in pq is closed under
(p, q, r) -> (p*, r, q) and (p, q, r) -> (r, q*, p). Triples involving the
identity are forced, so only orbits of non-identity triples are free.
Associativity and nonempty cells are checked incrementally during the
backtracking; survivors go through full validation and are deduplicated by
canonical form.
"""

from __future__ import annotations

import hashlib
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .bits import members
from .core import Hypergroup, _lmul, _rmul, from_masks
from .errors import BudgetExceeded, InvariantViolation, ValidationError
from .hgt import read_hgt, write_hgt

DEFAULT_MAX_ORDER = 4
HARD_MAX_ORDER = 5
BRUTE_FORCE_MAX_ORDER = 3


# ------------------------------------------------------------ canonical form


@dataclass(frozen=True, order=True)
class CanonicalTable:
    order: int
    cells: tuple[int, ...]  # row-major bitmasks

    def to_hypergroup(self) -> Hypergroup:
        n = self.order
        rows = [list(self.cells[i * n:(i + 1) * n]) for i in range(n)]
        return from_masks(n, rows)

    def digest(self) -> str:
        text = f"{self.order}:" + ",".join(map(str, self.cells))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _relabel_cells(table, perm: Sequence[int]) -> tuple[int, ...]:
    """Flattened table after renaming element x to perm[x]."""
    n = len(perm)
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    out = []
    for i in range(n):
        row = table[inv[i]]
        for j in range(n):
            m = row[inv[j]]
            img = 0
            x = 0
            while m:
                if m & 1:
                    img |= 1 << perm[x]
                m >>= 1
                x += 1
            out.append(img)
    return tuple(out)


def _identity_fixing_perms(n: int) -> Iterator[tuple[int, ...]]:
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


@lru_cache(maxsize=65536)
def canonical_form(H: Hypergroup) -> CanonicalTable:
    """Lexicographically least flattened mask table over identity-fixing relabelings."""
    best = min(_relabel_cells(H.table, p) for p in _identity_fixing_perms(H.order))
    return CanonicalTable(H.order, best)


def canonical_form_of_table(n: int, table) -> CanonicalTable:
    return CanonicalTable(n, min(_relabel_cells(table, p) for p in _identity_fixing_perms(n)))


def relabel(H: Hypergroup, perm: Sequence[int]) -> Hypergroup:
    """Isomorphic copy with element x renamed perm[x] (perm[0] must be 0)."""
    if perm[0] != 0:
        raise ValueError("isomorphisms fix the identity")
    n = H.order
    flat = _relabel_cells(H.table, perm)
    G = from_masks(n, [flat[i * n:(i + 1) * n] for i in range(n)])
    for x in range(n):
        if G.star[perm[x]] != perm[H.star[x]]:
            raise InvariantViolation("relabeling does not commute with star")
    return G


def find_isomorphism(H1: Hypergroup, H2: Hypergroup) -> tuple[int, ...] | None:
    """Direct permutation search; independent of canonical forms."""
    if H1.order != H2.order:
        return None
    target = tuple(c for row in H2.table for c in row)
    for p in _identity_fixing_perms(H1.order):
        if _relabel_cells(H1.table, p) == target:
            return p
    return None


def are_isomorphic(H1: Hypergroup, H2: Hypergroup) -> bool:
    return H1.order == H2.order and canonical_form(H1) == canonical_form(H2)


# ------------------------------------------------------------------ generator


def canonical_stars(n: int) -> list[tuple[int, ...]]:
    """One star involution per conjugacy class (k swapped pairs, rest fixed)."""
    out = []
    for k in range((n - 1) // 2 + 1):
        s = list(range(n))
        for i in range(k):
            a, b = 1 + 2 * i, 2 + 2 * i
            s[a], s[b] = b, a
        out.append(tuple(s))
    return out


def triple_orbits(n: int, star: Sequence[int]) -> list[tuple[tuple[int, int, int], ...]]:
    seen = set()
    orbits = []
    for t in itertools.product(range(1, n), repeat=3):
        if t in seen:
            continue
        orb = []
        stack = [t]
        seen.add(t)
        while stack:
            p, q, r = stack.pop()
            orb.append((p, q, r))
            for u in ((star[p], r, q), (r, star[q], p)):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        orbits.append(tuple(sorted(orb)))
    return orbits


def _base_table(n: int, star: Sequence[int]) -> list[list[int]]:
    t = [[0] * n for _ in range(n)]
    for p in range(n):
        t[0][p] = 1 << p
        t[p][0] = 1 << p
        if p:
            t[p][star[p]] |= 1
    return t


class _Search:
    def __init__(self, n: int, star: tuple[int, ...], deadline: float | None):
        self.n = n
        self.star = star
        self.deadline = deadline
        self.orbits = triple_orbits(n, star)
        self.cells_of = [sorted({(p, q) for p, q, _ in orb}) for orb in self.orbits]
        last = {}
        for k, cells in enumerate(self.cells_of):
            for c in cells:
                last[c] = k
        # cell -> step after which it is final (-1: never touched)
        self.final_after = [[last.get((p, q), -1) if p and q else -1 for q in range(n)] for p in range(n)]
        self.newly_final = [[] for _ in self.orbits]
        for c, k in last.items():
            self.newly_final[k].append(c)
        self.results: list[tuple[int, ...]] = []
        self.nodes = 0

    def _assoc_ok(self, t, k: int) -> bool:
        n = self.n
        fa = self.final_after
        rng = range(1, n)
        for p in rng:
            for q in rng:
                if fa[p][q] > k:
                    continue
                pq = t[p][q]
                for r in rng:
                    if fa[q][r] > k:
                        continue
                    qr = t[q][r]
                    if any(fa[p][x] > k for x in members(qr)) or any(fa[y][r] > k for y in members(pq)):
                        continue
                    if _lmul(t, p, qr) != _rmul(t, pq, r):
                        return False
        return True

    def run(self, prefix: Sequence[bool] = ()) -> list[tuple[int, ...]]:
        t = _base_table(self.n, self.star)
        self._dfs(0, t, list(prefix))
        return self.results

    def _dfs(self, k: int, t, prefix: list[bool]):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("enumeration budget exhausted")
        if k == len(self.orbits):
            self.results.append(tuple(c for row in t for c in row))
            return
        choices = (prefix[k],) if k < len(prefix) else (False, True)
        for take in choices:
            if take:
                saved = [(p, q, t[p][q]) for p, q in self.cells_of[k]]
                for p, q, r in self.orbits[k]:
                    t[p][q] |= 1 << r
            ok = all(t[p][q] for p, q in self.newly_final[k])
            if ok and self.newly_final[k]:
                ok = self._assoc_ok(t, k)
            if ok:
                self._dfs(k + 1, t, prefix)
            if take:
                for p, q, v in saved:
                    t[p][q] = v


def _run_task(args) -> list[CanonicalTable]:
    n, star, prefix, deadline = args
    search = _Search(n, star, deadline)
    out = set()
    for flat in search.run(prefix):
        rows = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        try:
            H = from_masks(n, rows)
        except ValidationError:
            continue
        out.add(canonical_form(H))
    return sorted(out)


def _tasks(n: int, deadline: float | None, split: int = 2):
    tasks = []
    for star in canonical_stars(n):
        m = len(triple_orbits(n, star))
        depth = min(split, m)
        for prefix in itertools.product((False, True), repeat=depth):
            tasks.append((n, star, prefix, deadline))
    return tasks


PROPERTY_FILTERS: dict[str, Callable[[Hypergroup], bool]] = {}


def _register_filters():
    from .arith import is_rt, is_solvable
    from .core import is_commutative, is_thin
    from .series import is_weakly_nilpotent

    PROPERTY_FILTERS.update(
        {
            "thin": is_thin,
            "nonthin": lambda H: not is_thin(H),
            "commutative": is_commutative,
            "rt": is_rt,
            "weakly-nilpotent": lambda H: is_weakly_nilpotent(H)[0],
            "solvable": lambda H: is_solvable(H)[0],
        }
    )


def enumerate_hypergroups(
    order: int,
    filter: str | Callable[[Hypergroup], bool] | None = None,
    budget: float | None = None,
    workers: int = 1,
) -> list[Hypergroup]:
    """One representative per isomorphism class, sorted by canonical form.

    Orders above 4 need an explicit ``budget`` (seconds); orders above 5 are
    refused.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if order > HARD_MAX_ORDER or (order > DEFAULT_MAX_ORDER and budget is None):
        raise BudgetExceeded(f"order {order} exceeds the enumeration bound")
    deadline = None if budget is None else time.monotonic() + budget
    if order == 1:
        forms = [CanonicalTable(1, (1,))]
    else:
        tasks = _tasks(order, deadline)
        found: set[CanonicalTable] = set()
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                for part in ex.map(_run_task, tasks):
                    found.update(part)
        else:
            for task in tasks:
                found.update(_run_task(task))
        forms = sorted(found)
    hs = [f.to_hypergroup() for f in forms]
    if filter is not None:
        if isinstance(filter, str):
            if not PROPERTY_FILTERS:
                _register_filters()
            if filter not in PROPERTY_FILTERS:
                raise ValueError(f"unknown filter {filter!r}; choose from {sorted(PROPERTY_FILTERS)}")
            filter = PROPERTY_FILTERS[filter]
        hs = [H for H in hs if filter(H)]
    return hs


def enumerate_bruteforce(order: int) -> list[CanonicalTable]:
    """Independent oracle: try every assignment of the non-identity cells.

    Element 0 is the identity by convention, so row 0 and column 0 are fixed;
    every other cell ranges over all nonempty subsets.
    """
    if order > BRUTE_FORCE_MAX_ORDER:
        raise BudgetExceeded(f"brute force limited to order {BRUTE_FORCE_MAX_ORDER}")
    n = order
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    options = range(1, 1 << n)
    found = set()
    for combo in itertools.product(options, repeat=len(free)):
        rows = [[0] * n for _ in range(n)]
        for x in range(n):
            rows[0][x] = 1 << x
            rows[x][0] = 1 << x
        for (i, j), m in zip(free, combo):
            rows[i][j] = m
        try:
            H = from_masks(n, rows)
        except ValidationError:
            continue
        found.add(canonical_form(H))
    return sorted(found)


# -------------------------------------------------------------------- catalog

INDEX_NAME = "index.txt"


def catalog_flags(H: Hypergroup) -> str:
    if not PROPERTY_FILTERS:
        _register_filters()
    names = ["thin", "commutative", "rt", "weakly-nilpotent", "solvable"]
    flags = [name for name in names if PROPERTY_FILTERS[name](H)]
    return ",".join(flags) if flags else "-"


def catalog_name(order: int, seq: int) -> str:
    return f"h{order}_{seq:03d}.hgt"


def write_catalog(hypergroups: Iterable[Hypergroup], out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    index_lines = []
    seq_by_order: dict[int, int] = {}
    for H in hypergroups:
        seq = seq_by_order.get(H.order, 0) + 1
        seq_by_order[H.order] = seq
        form = canonical_form(H)
        path = out / catalog_name(H.order, seq)
        write_hgt(H, path, comments=[f"canonical hash {form.digest()}"])
        paths.append(path)
        index_lines.append(f"{form.digest()} {H.order} {catalog_flags(H)}")
    (out / INDEX_NAME).write_text("".join(line + "\n" for line in index_lines))
    return paths


def read_catalog(directory) -> list[tuple[str, Hypergroup]]:
    d = Path(directory)
    return [(p.stem, read_hgt(p)) for p in sorted(d.glob("*.hgt"))]


def build_catalog(max_order: int, budget: float | None = None, workers: int = 1) -> list[Hypergroup]:
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_hypergroups(n, budget=budget, workers=workers))
    return out


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))
