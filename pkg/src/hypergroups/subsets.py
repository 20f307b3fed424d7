"""Closed subsets, generated closures, the closed-subset lattice and normality."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

from .bits import ElementSet, is_subset, members, popcount, set_key
from .core import Hypergroup, _lmul, _rmul, as_set, set_product, star_of_set
from .errors import BudgetExceeded, EmptySubset, NotClosed

log = logging.getLogger(__name__)

MAX_LATTICE_ORDER = 12
BRUTE_FORCE_ORDER = 6

Mode = Literal["normal", "strongly-normal"]


def is_closed(H: Hypergroup, F) -> bool:
    F = as_set(H, F)
    if not F:
        raise EmptySubset("closedness is defined for nonempty subsets")
    return is_subset(set_product(H, star_of_set(H, F), F), F)


def is_closed_by_criterion(H: Hypergroup, A) -> bool:
    """1 in A, A* within A and AA within A."""
    A = as_set(H, A)
    return bool(A & 1) and is_subset(star_of_set(H, A), A) and is_subset(set_product(H, A, A), A)


def generated_closed(H: Hypergroup, A) -> ElementSet:
    """Least closed subset containing ``A``."""
    cur = as_set(H, A) | 1
    while True:
        nxt = cur | star_of_set(H, cur) | set_product(H, cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def _require_closed(H: Hypergroup, F) -> ElementSet:
    F = as_set(H, F)
    if not F or not is_closed(H, F):
        raise NotClosed(f"{list(members(F))} is not a closed subset")
    return F


def _normal_in(H: Hypergroup, F: int, within: int) -> bool:
    t = H.table
    for h in members(within):
        if not is_subset(_rmul(t, F, h), _lmul(t, h, F)):
            return False
    return True


def _strongly_normal_in(H: Hypergroup, F: int, within: int) -> bool:
    t = H.table
    for h in members(within):
        if not is_subset(_rmul(t, _lmul(t, H.star[h], F), h), F):
            return False
    return True


def is_normal(H: Hypergroup, F, within=None) -> bool:
    """Fh within hF for every h (of ``within``, default all of H)."""
    F = _require_closed(H, F)
    W = H.full if within is None else _require_closed(H, within)
    if not is_subset(F, W):
        raise NotClosed(f"{list(members(F))} is not contained in {list(members(W))}")
    return _normal_in(H, F, W)


def is_strongly_normal(H: Hypergroup, F, within=None) -> bool:
    """h*Fh within F for every h (of ``within``, default all of H)."""
    F = _require_closed(H, F)
    W = H.full if within is None else _require_closed(H, within)
    if not is_subset(F, W):
        raise NotClosed(f"{list(members(F))} is not contained in {list(members(W))}")
    return _strongly_normal_in(H, F, W)


@dataclass(frozen=True)
class ClosedSubsetLattice:
    hypergroup: Hypergroup
    subsets: tuple[ElementSet, ...]
    covers: tuple[tuple[ElementSet, ElementSet], ...]
    normal: frozenset[ElementSet]
    strongly_normal: frozenset[ElementSet]
    maximal: tuple[ElementSet, ...]

    def __iter__(self):
        return iter(self.subsets)

    def __len__(self):
        return len(self.subsets)

    def __contains__(self, F) -> bool:
        return F in set(self.subsets)

    def above(self, F: ElementSet) -> list[ElementSet]:
        return [G for G in self.subsets if is_subset(F, G)]


def closed_subsets_bruteforce(H: Hypergroup) -> list[ElementSet]:
    """Scan all 2^n subsets; only for small orders."""
    if H.order > BRUTE_FORCE_ORDER:
        raise BudgetExceeded(f"full subset scan limited to order {BRUTE_FORCE_ORDER}")
    out = [F for F in range(1, 1 << H.order) if is_closed(H, F)]
    return sorted(out, key=set_key)


def _closure_search(H: Hypergroup) -> list[ElementSet]:
    seeds = {generated_closed(H, 1 << s) for s in range(H.order)}
    found = set(seeds)
    work = deque(sorted(found, key=set_key))
    atoms = sorted(seeds, key=set_key)
    while work:
        F = work.popleft()
        for G in atoms:
            J = generated_closed(H, F | G)
            if J not in found:
                found.add(J)
                work.append(J)
    return sorted(found, key=set_key)


@lru_cache(maxsize=4096)
def all_closed_subsets(H: Hypergroup, max_order: int = MAX_LATTICE_ORDER) -> ClosedSubsetLattice:
    """Every closed subset with Hasse edges and normality flags."""
    if H.order > max_order:
        raise BudgetExceeded(f"lattice construction limited to order {max_order}")
    subs = _closure_search(H)
    covers = []
    for a in subs:
        ups = [b for b in subs if b != a and is_subset(a, b)]
        for b in ups:
            if not any(c != b and is_subset(c, b) for c in ups):
                covers.append((a, b))
    full = H.full
    normal = frozenset(F for F in subs if _normal_in(H, F, full))
    strong = frozenset(F for F in subs if _strongly_normal_in(H, F, full))
    maximal = tuple(a for a, b in covers if b == full)
    return ClosedSubsetLattice(H, tuple(subs), tuple(covers), normal, strong, tuple(sorted(maximal, key=set_key)))


def maximal_closed_subsets(H: Hypergroup) -> list[ElementSet]:
    return list(all_closed_subsets(H).maximal)


@dataclass(frozen=True)
class SubnormalChain:
    links: tuple[ElementSet, ...]
    mode: str

    def __len__(self):
        return len(self.links)


def _least_path(
    nodes: list[ElementSet],
    start: ElementSet,
    goal: ElementSet,
    step: Callable[[ElementSet, ElementSet], bool],
) -> tuple[ElementSet, ...] | None:
    """Shortest strictly ascending path start -> goal; ties by least link sets."""
    if start == goal:
        return (goal,)
    # distance to goal, computed backwards
    dist = {goal: 0}
    frontier = [goal]
    while frontier:
        nxt = []
        for G in frontier:
            for E in nodes:
                if E not in dist and E != G and is_subset(E, G) and is_subset(start, E) and step(E, G):
                    dist[E] = dist[G] + 1
                    nxt.append(E)
        frontier = nxt
    if start not in dist:
        return None
    path = [start]
    cur = start
    while cur != goal:
        options = [
            G for G in nodes
            if G in dist and dist[G] == dist[cur] - 1 and G != cur and is_subset(cur, G) and step(cur, G)
        ]
        cur = min(options, key=lambda m: members(m))
        path.append(cur)
    return tuple(path)


def subnormal_chain(H: Hypergroup, F, mode: Mode = "normal") -> SubnormalChain | None:
    """A shortest chain F = F0 < F1 < ... < Fn = H whose steps are (strongly) normal.

    Each step relation is evaluated inside the larger link.
    """
    F = _require_closed(H, F)
    if mode == "normal":
        rel = lambda E, G: _normal_in(H, E, G)  # noqa: E731
    elif mode == "strongly-normal":
        rel = lambda E, G: _strongly_normal_in(H, E, G)  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")
    nodes = all_closed_subsets(H).above(F)
    path = _least_path(nodes, F, H.full, rel)
    return None if path is None else SubnormalChain(path, mode)


def is_subnormal(H: Hypergroup, F) -> bool:
    return subnormal_chain(H, F, "normal") is not None


def is_strongly_subnormal(H: Hypergroup, F) -> bool:
    return subnormal_chain(H, F, "strongly-normal") is not None


@lru_cache(maxsize=4096)
def thin_residue(H: Hypergroup) -> ElementSet:
    """Intersection of all strongly normal closed subsets."""
    out = H.full
    for F in all_closed_subsets(H).strongly_normal:
        out &= F
    return out


def lattice_summary(L: ClosedSubsetLattice) -> list[dict]:
    rows = []
    for F in L.subsets:
        rows.append(
            {
                "set": list(members(F)),
                "size": popcount(F),
                "normal": F in L.normal,
                "strongly_normal": F in L.strongly_normal,
                "maximal": F in L.maximal,
            }
        )
    return rows
