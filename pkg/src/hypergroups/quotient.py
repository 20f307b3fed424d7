"""Double cosets and the quotient hypergroup H//F."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .bits import ElementSet, is_subset, mask_of, members
from .core import Hypergroup, _lmul, _rmul, from_masks
from .errors import NotClosed, PartitionFailure, PreconditionError, QuotientAxiomFailure, ValidationError
from .subsets import _normal_in, _require_closed, is_closed, is_strongly_normal


def coset(H: Hypergroup, F, h: int) -> ElementSet:
    """FhF"""
    F = _require_closed(H, F)
    return _double(H, F, h)


def _double(H: Hypergroup, F: int, h: int) -> int:
    t = H.table
    hF = _lmul(t, h, F)
    out = 0
    for f in members(F):
        out |= _lmul(t, f, hF)
    return out


@dataclass(frozen=True)
class QuotientMap:
    parent: Hypergroup
    by: ElementSet
    classes: tuple[ElementSet, ...]
    quotient: Hypergroup
    class_of: tuple[int, ...]

    def image(self, S) -> ElementSet:
        """S//F as a subset of the quotient."""
        return mask_of(self.class_of[s] for s in members(mask_of(S)))

    def preimage(self, S) -> ElementSet:
        out = 0
        for c in members(mask_of(S)):
            out |= self.classes[c]
        return out


def quotient(H: Hypergroup, F) -> QuotientMap:
    return _quotient(H, mask_of(F))


@lru_cache(maxsize=16384)
def _quotient(H: Hypergroup, F: ElementSet) -> QuotientMap:
    if not F or not is_closed(H, F):
        raise NotClosed(f"{list(members(F))} is not a closed subset")
    n = H.order
    t = H.table
    cos = [_double(H, F, h) for h in range(n)]
    classes: list[int] = []
    for c in sorted(set(cos), key=lambda m: (m & -m).bit_length()):
        for d in classes:
            if c & d and c != d:
                raise PartitionFailure(
                    f"cosets {list(members(c))} and {list(members(d))} overlap without coinciding"
                )
        classes.append(c)
    cover = 0
    for c in classes:
        cover |= c
    if cover != H.full:
        raise PartitionFailure("cosets do not cover the hypergroup")
    for h in range(n):
        if not cos[h] >> h & 1:
            raise PartitionFailure(f"element {h} is not in its own coset")
    class_of = [0] * n
    for i, c in enumerate(classes):
        for h in members(c):
            class_of[h] = i
    if classes[0] != F:
        raise PartitionFailure("identity coset differs from F")

    k = len(classes)
    table = [[0] * k for _ in range(k)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            entry = None
            for a in members(ci):
                aF = _lmul(t, a, F)
                for b in members(cj):
                    prod = _rmul(t, aF, b)
                    img = mask_of(class_of[x] for x in members(prod))
                    if entry is None:
                        entry = img
                    elif img != entry:
                        raise QuotientAxiomFailure(
                            f"product of classes {i}, {j} depends on representatives ({a}, {b})"
                        )
            table[i][j] = entry
    star = []
    for c in classes:
        imgs = {class_of[H.star[a]] for a in members(c)}
        if len(imgs) != 1:
            raise QuotientAxiomFailure("star is not well defined on cosets")
        star.append(imgs.pop())
    try:
        Q = from_masks(k, table, star)
    except ValidationError as e:
        raise QuotientAxiomFailure(f"quotient fails the axioms: {e}") from e
    return QuotientMap(H, F, tuple(classes), Q, tuple(class_of))


class Correspondence(NamedTuple):
    in_parent: bool
    in_quotient: bool

    @property
    def agree(self) -> bool:
        return self.in_parent == self.in_quotient


def strongly_normal_correspondence(H: Hypergroup, N, F) -> Correspondence:
    """Strong normality of F in H versus F//N in H//N, for normal N within F."""
    N = mask_of(N)
    F = mask_of(F)
    try:
        _require_closed(H, N)
        _require_closed(H, F)
    except NotClosed as e:
        raise PreconditionError(str(e)) from e
    if not _normal_in(H, N, H.full):
        raise PreconditionError("N must be normal in H")
    if not is_subset(N, F):
        raise PreconditionError("N must be contained in F")
    qm = quotient(H, N)
    return Correspondence(is_strongly_normal(H, F), is_strongly_normal(qm.quotient, qm.image(F)))
