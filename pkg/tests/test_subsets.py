import pytest
from hypothesis import given, settings, strategies as st

from hypergroups import (
    all_closed_subsets,
    generated_closed,
    is_closed,
    is_normal,
    is_strongly_normal,
    is_thin,
    maximal_closed_subsets,
    quotient,
    restrict,
    subnormal_chain,
    thin_residue,
)
from hypergroups.bits import full_mask, is_subset, mask_of as m
from hypergroups.core import restriction, to_sub
from hypergroups.enumeration import build_catalog
from hypergroups.errors import BudgetExceeded, EmptySubset, NotClosed
from hypergroups.subsets import (
    closed_subsets_bruteforce,
    is_closed_by_criterion,
    is_strongly_subnormal,
    is_subnormal,
)

CATALOG = build_catalog(4)


def test_is_closed_examples(K2, W3, C2):
    assert is_closed(K2, {0})
    assert not is_closed(K2, {1})
    assert is_closed(W3, {0, 1})
    assert not is_closed(W3, {0, 2})
    for H in (K2, W3, C2):
        assert is_closed(H, {0})
        assert is_closed(H, full_mask(H.order))


def test_empty_subset_is_rejected(W3):
    with pytest.raises(EmptySubset):
        is_closed(W3, set())


def test_generated_closed_examples(W3, K2, C2):
    assert generated_closed(W3, {2}) == m({0, 1, 2})
    assert generated_closed(K2, {1}) == m({0, 1})
    for H in (W3, K2, C2):
        assert generated_closed(H, set()) == m({0})
        assert generated_closed(H, {0}) == m({0})


@pytest.mark.parametrize(
    "name, expected",
    [("K2", [{0}, {0, 1}]), ("T1", [{0}]), ("W3", [{0}, {0, 1}, {0, 1, 2}])],
)
def test_lattice_examples(name, expected, request):
    H = request.getfixturevalue(name)
    assert list(all_closed_subsets(H).subsets) == [m(s) for s in expected]


def test_normality_examples(W3, K2):
    assert is_normal(W3, {0, 1})
    assert is_normal(K2, {0})
    assert is_strongly_normal(W3, {0, 1})
    assert not is_strongly_normal(K2, {0})
    for H in (W3, K2):
        assert is_normal(H, {0}) and is_normal(H, full_mask(H.order))
        assert is_strongly_normal(H, full_mask(H.order))


def test_normality_needs_closed(W3):
    with pytest.raises(NotClosed):
        is_normal(W3, {0, 2})


def test_maximal_examples(W3, K2, T1):
    assert maximal_closed_subsets(W3) == [m({0, 1})]
    assert maximal_closed_subsets(K2) == [m({0})]
    assert maximal_closed_subsets(T1) == []


def test_subnormal_chain_examples(W3, K2, C2):
    ch = subnormal_chain(W3, {0}, "strongly-normal")
    assert ch.links == (m({0}), m({0, 1}), m({0, 1, 2}))
    assert subnormal_chain(K2, {0}, "strongly-normal") is None
    for H in (W3, K2, C2):
        top = full_mask(H.order)
        assert subnormal_chain(H, top).links == (top,)
        assert subnormal_chain(H, top, "strongly-normal").links == (top,)


def test_thin_residue_examples(C2, K2, W3):
    assert thin_residue(C2) == m({0})
    assert thin_residue(K2) == m({0, 1})
    assert thin_residue(W3) == m({0, 1})


def test_s3_chains(S3):
    # the order-3 rotations are normal, the order-2 subgroups are not
    rotations = next(F for F in all_closed_subsets(S3).subsets if bin(F).count("1") == 3)
    assert is_strongly_normal(S3, rotations)
    for F in all_closed_subsets(S3).subsets:
        if bin(F).count("1") == 2:
            assert not is_normal(S3, F)
            assert not is_subnormal(S3, F)
    assert thin_residue(S3) == 1


def test_lattice_budget(W3):
    with pytest.raises(BudgetExceeded):
        all_closed_subsets(W3, max_order=2)


@pytest.mark.parametrize("H", CATALOG)
def test_lattice_properties(H):
    L = all_closed_subsets(H)
    subs = set(L.subsets)
    top = full_mask(H.order)
    assert 1 in subs and top in subs
    assert sorted(closed_subsets_bruteforce(H)) == sorted(subs)
    for A in subs:
        assert is_closed_by_criterion(H, A)
        for B in subs:
            assert A & B in subs
    for A in range(1, top + 1):
        assert is_closed(H, A) == is_closed_by_criterion(H, A)
    for F in subs:
        if is_strongly_normal(H, F):
            assert is_normal(H, F)
        if is_strongly_subnormal(H, F):
            assert is_subnormal(H, F)
    assert set(L.maximal) == {F for F in subs if F != top and not any(F != G != top and is_subset(F, G) for G in subs)}


@pytest.mark.parametrize("H", CATALOG)
def test_generated_closed_is_least_closed_superset(H):
    subs = all_closed_subsets(H).subsets
    top = full_mask(H.order)
    for A in range(top + 1):
        supers = [F for F in subs if is_subset(A, F)]
        meet = top
        for F in supers:
            meet &= F
        assert generated_closed(H, A) == meet


@pytest.mark.parametrize("H", CATALOG)
def test_thin_residue_characterisation(H):
    R = thin_residue(H)
    assert (R == 1) == is_thin(H)
    assert is_strongly_normal(H, R)
    assert is_thin(quotient(H, R).quotient)


@pytest.mark.parametrize("H", CATALOG)
def test_within_matches_restriction(H):
    subs = all_closed_subsets(H).subsets
    for F in subs:
        sub, idx = restriction(H, F)
        for E in subs:
            if is_subset(E, F):
                assert is_normal(H, E, within=F) == is_normal(sub, to_sub(E, idx))
                assert is_strongly_normal(H, E, within=F) == is_strongly_normal(sub, to_sub(E, idx))


@pytest.mark.parametrize("H", CATALOG)
def test_chain_links_respect_mode(H):
    for F in all_closed_subsets(H).subsets:
        for mode, rel in (("normal", is_normal), ("strongly-normal", is_strongly_normal)):
            ch = subnormal_chain(H, F, mode)
            if ch is None:
                continue
            assert ch.links[0] == F and ch.links[-1] == full_mask(H.order)
            for a, b in zip(ch.links, ch.links[1:]):
                assert a != b and is_subset(a, b)
                assert rel(restrict(H, b), to_sub(a, restriction(H, b)[1]))


@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_closure_is_a_closure_operator(data):
    H = data.draw(st.sampled_from(CATALOG))
    top = full_mask(H.order)
    A = data.draw(st.integers(0, top))
    B = data.draw(st.integers(0, top)) | A
    gA = generated_closed(H, A)
    assert is_subset(A, gA)
    assert generated_closed(H, gA) == gA
    assert is_subset(gA, generated_closed(H, B))
    assert is_closed(H, gA)
