"""Residually thin chains, valency, p-subsets, Sylow p-subsets and solvability."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import NamedTuple

from sympy import isprime, primerange

from .bits import ElementSet, is_subset, members, popcount
from .core import Hypergroup, is_thin, restriction, to_sub
from .errors import HypothesisViolation, InvariantViolation, NotClosed, UndefinedForNonRT
from .quotient import quotient
from .subsets import (
    _least_path,
    _require_closed,
    _strongly_normal_in,
    all_closed_subsets,
    generated_closed,
    is_subnormal,
)

log = logging.getLogger(__name__)


def is_p_power(n: int, p: int) -> bool:
    """1 counts as p^0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def primes_up_to(n: int) -> list[int]:
    return list(primerange(2, n + 1))


@dataclass(frozen=True)
class Chain:
    links: tuple[ElementSet, ...]
    quotient_orders: tuple[int, ...] = field(default=())


RTChain = Chain


class ValencyRecord(NamedTuple):
    n_H: int
    witness: Chain


@lru_cache(maxsize=65536)
def step_quotient(H: Hypergroup, E: ElementSet, F: ElementSet) -> Hypergroup:
    """F//E computed inside the sub-hypergroup on F."""
    sub, idx = restriction(H, F)
    return quotient(sub, to_sub(E, idx)).quotient


def _thin_step(H: Hypergroup, E: int, F: int) -> bool:
    return is_thin(step_quotient(H, E, F))


def _chain(H: Hypergroup, path) -> Chain:
    orders = tuple(step_quotient(H, a, b).order for a, b in zip(path, path[1:]))
    return Chain(tuple(path), orders)


@lru_cache(maxsize=8192)
def rt_chain(H: Hypergroup) -> Chain | None:
    """Shortest chain {1} = F0 < ... < Fn = H with every F_i//F_{i-1} thin."""
    nodes = list(all_closed_subsets(H).subsets)
    path = _least_path(nodes, 1, H.full, lambda E, F: _thin_step(H, E, F))
    return None if path is None else _chain(H, path)


def is_rt(H: Hypergroup) -> bool:
    return rt_chain(H) is not None


def all_rt_chains(H: Hypergroup) -> list[Chain]:
    nodes = list(all_closed_subsets(H).subsets)
    out = []

    def walk(path):
        top = path[-1]
        if top == H.full:
            out.append(_chain(H, path))
            return
        for F in nodes:
            if F != top and is_subset(top, F) and _thin_step(H, top, F):
                walk(path + [F])

    walk([1])
    return out


@lru_cache(maxsize=8192)
def valency(H: Hypergroup, check: bool = True) -> ValencyRecord:
    chain = rt_chain(H)
    if chain is None:
        raise UndefinedForNonRT("valency is defined only for residually thin hypergroups")
    n = prod(chain.quotient_orders)
    if check:
        for other in all_rt_chains(H):
            if prod(other.quotient_orders) != n:
                raise InvariantViolation(f"RT chains give different valencies {n} and {prod(other.quotient_orders)}")
    return ValencyRecord(n, chain)


def closed_valency(H: Hypergroup, C: ElementSet) -> int | None:
    """Valency of the sub-hypergroup on C, or None when it is not RT."""
    sub = restriction(H, C)[0]
    return valency(sub).n_H if is_rt(sub) else None


def is_p_subset(H: Hypergroup, C, p: int) -> bool:
    C = _require_closed(H, C)
    n = closed_valency(H, C)
    if n is None:
        raise UndefinedForNonRT(f"sub-hypergroup on {list(members(C))} is not RT")
    return is_p_power(n, p)


def sylow_p_subsets(H: Hypergroup, p: int) -> list[ElementSet]:
    """Closed p-subsets C with n_H / n_C an integer prime to p."""
    n_H = valency(H).n_H
    out = []
    for C in all_closed_subsets(H).subsets:
        n_C = closed_valency(H, C)
        if n_C is None:
            log.info("excluding non-RT closed subset %s from p-subset scan", list(members(C)))
            continue
        if is_p_power(n_C, p) and n_H % n_C == 0 and (n_H // n_C) % p != 0:
            out.append(C)
    return out


class PValencedEntry(NamedTuple):
    element: int
    U: ElementSet
    product: ElementSet  # (h*)^U h^U as a subset of H//U
    qualifies: bool
    ok: bool


class PValenced(NamedTuple):
    holds: bool
    entries: tuple[PValencedEntry, ...]

    @property
    def failures(self) -> tuple[PValencedEntry, ...]:
        return tuple(e for e in self.entries if not e.ok)

    def __bool__(self) -> bool:
        return self.holds


@lru_cache(maxsize=8192)
def is_p_valenced(H: Hypergroup, p: int, strict: bool = True) -> PValenced:
    """p-valencedness with respect to subnormal closed U of p-power valency.

    The product S = (h*)^U h^U in H//U is constrained to have p-power size
    when it qualifies. With ``strict`` (the default) S qualifies when all its
    members are thin in H//U. With ``strict=False`` it qualifies only when it
    is a single thin element, which makes the size constraint vacuous.
    """
    if not is_rt(H):
        raise UndefinedForNonRT("p-valencedness needs a residually thin hypergroup")
    entries = []
    for U in all_closed_subsets(H).subsets:
        if not is_subnormal(H, U):
            continue
        n_U = closed_valency(H, U)
        if n_U is None:
            log.info("excluding non-RT closed subset %s from p-valenced scan", list(members(U)))
            continue
        if not is_p_power(n_U, p):
            continue
        qm = quotient(H, U)
        Q = qm.quotient
        thin_q = 0
        for c in range(Q.order):
            if Q.table[Q.star[c]][c] == 1:
                thin_q |= 1 << c
        for h in range(H.order):
            S = Q.table[qm.class_of[H.star[h]]][qm.class_of[h]]
            if strict:
                qualifies = is_subset(S, thin_q)
            else:
                qualifies = popcount(S) == 1 and is_subset(S, thin_q)
            ok = not qualifies or is_p_power(popcount(S), p)
            entries.append(PValencedEntry(h, U, S, qualifies, ok))
    entries_t = tuple(entries)
    return PValenced(all(e.ok for e in entries_t), entries_t)


def o_p(H: Hypergroup, p: int, strict: bool = True) -> ElementSet:
    """Closed subset generated by all subnormal closed p-subsets, verified."""
    if not is_rt(H):
        raise UndefinedForNonRT("O_p needs a residually thin hypergroup")
    if not is_p_valenced(H, p, strict):
        raise HypothesisViolation(f"hypergroup is not {p}-valenced", {"p": p})
    union = 1
    for U in all_closed_subsets(H).subsets:
        if is_subnormal(H, U):
            n_U = closed_valency(H, U)
            if n_U is not None and is_p_power(n_U, p):
                union |= U
    O = generated_closed(H, union)
    report = {"p": p, "set": list(members(O))}
    if not _strongly_normal_in(H, O, H.full):
        raise HypothesisViolation("generated subset is not strongly normal", report)
    n_O = closed_valency(H, O)
    if n_O is None or not is_p_power(n_O, p):
        raise HypothesisViolation("generated subset is not a p-subset", report)
    return O


def is_p_hypergroup(H: Hypergroup, p: int) -> bool:
    return is_rt(H) and is_p_power(valency(H).n_H, p)


@lru_cache(maxsize=8192)
def is_solvable(H: Hypergroup) -> tuple[bool, Chain | None]:
    """Chain from {1} to H whose steps are thin quotients of prime order."""
    if H.order == 1:
        return True, Chain((1,), ())
    nodes = list(all_closed_subsets(H).subsets)

    def step(E, F):
        Q = step_quotient(H, E, F)
        return is_thin(Q) and isprime(Q.order)

    path = _least_path(nodes, 1, H.full, step)
    if path is None:
        return False, None
    return True, _chain(H, path)


def is_closed_p_subset(H: Hypergroup, C: ElementSet, p: int) -> bool:
    """Non-raising variant used by sweeps: False for non-RT restrictions."""
    try:
        return is_p_subset(H, C, p)
    except (UndefinedForNonRT, NotClosed):
        return False
