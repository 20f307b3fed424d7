"""Center, upper center series, hypercenter and central series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .bits import ElementSet, is_subset, mask_of, members
from .core import Hypergroup, is_thin, is_thin_element
from .errors import InvariantViolation, MalformedChain
from .quotient import quotient
from .subsets import _normal_in, all_closed_subsets, is_closed, thin_residue


def center(H: Hypergroup) -> ElementSet:
    """Thin elements h with hx = xh (as sets) for every x."""
    t = H.table
    n = H.order
    out = 0
    for h in range(n):
        if is_thin_element(H, h) and all(t[h][x] == t[x][h] for x in range(n)):
            out |= 1 << h
    return out


@dataclass(frozen=True)
class UpperCenterSeries:
    terms: tuple[ElementSet, ...]
    stabilized_at: int
    is_exhaustive: bool

    @property
    def hypercenter(self) -> ElementSet:
        return self.terms[-1]

    def term(self, i: int) -> ElementSet:
        """Z_i, constant past stabilization."""
        return self.terms[min(i, self.stabilized_at)]


@lru_cache(maxsize=8192)
def upper_center_series(H: Hypergroup) -> UpperCenterSeries:
    terms = [1]
    while True:
        qm = quotient(H, terms[-1])
        nxt = qm.preimage(center(qm.quotient))
        if nxt == terms[-1]:
            break
        if not is_subset(terms[-1], nxt):
            raise InvariantViolation("upper center series is not ascending")
        if not is_closed(H, nxt) or not _normal_in(H, nxt, H.full):
            raise InvariantViolation(f"center series term {list(members(nxt))} is not a normal closed subset")
        terms.append(nxt)
    return UpperCenterSeries(tuple(terms), len(terms) - 1, terms[-1] == H.full)


def hypercenter(H: Hypergroup) -> ElementSet:
    return upper_center_series(H).hypercenter


def is_weakly_nilpotent(H: Hypergroup) -> tuple[bool, int | None]:
    """(Z_n(H) = H for some n, least such n)."""
    s = upper_center_series(H)
    return (True, s.stabilized_at) if s.is_exhaustive else (False, None)


def is_central_series(H: Hypergroup, chain: Sequence, require_normal: bool = True) -> bool:
    """Whether ``H = H0 >= H1 >= ... >= Hr = {1}`` has H_{i-1}//H_i inside Z(H//H_i)."""
    links = [mask_of(c) for c in chain]
    if not links or links[0] != H.full or links[-1] != 1:
        raise MalformedChain("central series must run from H down to {1}")
    for a, b in zip(links, links[1:]):
        if not is_subset(b, a):
            raise MalformedChain("chain is not descending")
    for c in links:
        if not is_closed(H, c):
            raise MalformedChain(f"{list(members(c))} is not closed")
        if require_normal and not _normal_in(H, c, H.full):
            raise MalformedChain(f"{list(members(c))} is not normal")
    for upper, lower in zip(links, links[1:]):
        qm = quotient(H, lower)
        if not is_subset(qm.image(upper), center(qm.quotient)):
            return False
    return True


def central_series(H: Hypergroup, require_normal: bool = True) -> list[tuple[ElementSet, ...]]:
    """All strictly descending central series, each listed from H down to {1}."""
    L = all_closed_subsets(H)
    pool = [F for F in L.subsets if not require_normal or F in L.normal]
    out = []

    def extend(path):
        top = path[-1]
        if top == 1:
            out.append(tuple(path))
            return
        for F in pool:
            if F != top and is_subset(F, top):
                qm = quotient(H, F)
                if is_subset(qm.image(top), center(qm.quotient)):
                    extend(path + [F])

    extend([H.full])
    return sorted(out, key=lambda ch: [members(c) for c in ch])


def is_nilpotent_group(H: Hypergroup) -> bool:
    """Trivial thin residue, which for hypergroups means H is a (nilpotent) group."""
    trivial = thin_residue(H) == 1
    if trivial != is_thin(H):
        raise InvariantViolation("thin residue trivial but hypergroup not thin (or conversely)")
    return trivial and is_weakly_nilpotent(H)[0]
