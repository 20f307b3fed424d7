import pytest

from hypergroups import (
    all_closed_subsets,
    coset,
    is_strongly_normal,
    is_thin,
    quotient,
    strongly_normal_correspondence,
)
from hypergroups.bits import full_mask, is_subset, mask_of as m
from hypergroups.core import validate_table
from hypergroups.enumeration import are_isomorphic, build_catalog, canonical_form
from hypergroups.errors import NotClosed, PreconditionError
from hypergroups.subsets import is_normal

CATALOG = build_catalog(4)


def test_coset_examples(W3, K2, C2):
    assert coset(W3, {0, 1}, 2) == m({2})
    assert coset(K2, {0}, 1) == m({1})
    for H in (W3, K2, C2):
        for F in all_closed_subsets(H).subsets:
            for h in range(H.order):
                if F >> h & 1:
                    assert coset(H, F, h) == F


def test_quotient_of_w3(W3, C2):
    qm = quotient(W3, {0, 1})
    assert qm.classes == (m({0, 1}), m({2}))
    assert qm.class_of == (0, 0, 1)
    assert is_thin(qm.quotient)
    assert are_isomorphic(qm.quotient, C2)


def test_trivial_quotient_is_a_copy(W3, K2, S3):
    for H in (W3, K2, S3):
        assert quotient(H, {0}).quotient == H


def test_quotient_by_whole_is_trivial(W3, T1):
    assert quotient(W3, {0, 1, 2}).quotient == T1


def test_quotient_needs_closed(W3):
    with pytest.raises(NotClosed):
        quotient(W3, {0, 2})


def test_correspondence_examples(W3, S3):
    c = strongly_normal_correspondence(W3, {0}, {0, 1})
    assert (c.in_parent, c.in_quotient) == (True, True)
    for F in all_closed_subsets(S3).subsets:
        assert strongly_normal_correspondence(S3, {0}, F).agree


def test_correspondence_preconditions(W3, S3):
    with pytest.raises(PreconditionError):
        strongly_normal_correspondence(W3, {0, 1}, {0})
    with pytest.raises(PreconditionError):
        strongly_normal_correspondence(W3, {0, 2}, {0, 1, 2})
    two = next(F for F in all_closed_subsets(S3).subsets if bin(F).count("1") == 2)
    with pytest.raises(PreconditionError):
        strongly_normal_correspondence(S3, two, S3.full)


@pytest.mark.parametrize("H", CATALOG)
def test_quotient_well_formed(H):
    for F in all_closed_subsets(H).subsets:
        qm = quotient(H, F)
        cover = 0
        for c in qm.classes:
            assert cover & c == 0
            cover |= c
        assert cover == full_mask(H.order)
        Q = qm.quotient
        assert Q.order <= H.order
        _, _, violations = validate_table(Q.order, [[set(_ms(c)) for c in row] for row in Q.table])
        assert violations == []
        assert is_strongly_normal(H, F) == is_thin(Q)


def _ms(c):
    return [i for i in range(c.bit_length()) if c >> i & 1]


@pytest.mark.parametrize("H", CATALOG)
def test_double_quotient_coherence(H):
    subs = all_closed_subsets(H).subsets
    for N in subs:
        if not is_normal(H, N):
            continue
        qN = quotient(H, N)
        for F in subs:
            if is_subset(N, F):
                lhs = quotient(qN.quotient, qN.image(F)).quotient
                assert canonical_form(lhs) == canonical_form(quotient(H, F).quotient)


@pytest.mark.parametrize("H", CATALOG)
def test_correspondence_sweep(H):
    subs = all_closed_subsets(H).subsets
    for N in subs:
        if not is_normal(H, N):
            continue
        for F in subs:
            if is_subset(N, F):
                assert strongly_normal_correspondence(H, N, F).agree
