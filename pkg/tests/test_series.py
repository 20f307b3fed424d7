import pytest

from hypergroups import (
    all_closed_subsets,
    center,
    hypercenter,
    is_central_series,
    is_nilpotent_group,
    is_thin,
    is_weakly_nilpotent,
    quotient,
    upper_center_series,
)
from hypergroups.bits import full_mask, is_subset, mask_of as m
from hypergroups.enumeration import build_catalog
from hypergroups.errors import MalformedChain
from hypergroups.series import central_series
from hypergroups.subsets import is_closed, is_normal

CATALOG = build_catalog(4)


def test_center_examples(K2, C2, W3, S3):
    assert center(K2) == m({0})
    assert center(C2) == m({0, 1})
    assert center(W3) == m({0, 1})
    assert center(S3) == m({0})


def test_upper_center_series_examples(W3, K2, C2):
    s = upper_center_series(W3)
    assert s.terms == (m({0}), m({0, 1}), m({0, 1, 2}))
    assert s.stabilized_at == 2 and s.is_exhaustive
    s = upper_center_series(K2)
    assert s.terms == (m({0}),)
    assert s.stabilized_at == 0 and not s.is_exhaustive
    assert upper_center_series(C2).terms == (m({0}), m({0, 1}))


def test_series_term_is_clamped(W3):
    s = upper_center_series(W3)
    assert s.term(0) == 1 and s.term(7) == W3.full


def test_hypercenter_examples(W3, K2, T1):
    assert hypercenter(W3) == m({0, 1, 2})
    assert hypercenter(K2) == m({0})
    assert hypercenter(T1) == m({0})


def test_weak_nilpotency_examples(W3, K2, D8, S3):
    assert is_weakly_nilpotent(W3) == (True, 2)
    assert is_weakly_nilpotent(K2) == (False, None)
    assert is_weakly_nilpotent(D8) == (True, 2)
    assert is_weakly_nilpotent(S3) == (False, None)


def test_central_series_examples(W3, C2, K2):
    assert is_central_series(W3, [{0, 1, 2}, {0, 1}, {0}])
    assert is_central_series(C2, [{0, 1}, {0}])
    assert not is_central_series(K2, [{0, 1}, {0}])


@pytest.mark.parametrize(
    "chain",
    [[{0, 1}, {0}], [{0, 1, 2}, {0, 1}], [{0, 1, 2}, {0}, {0, 1}], [{0, 1, 2}, {0, 2}, {0}]],
)
def test_malformed_chains(W3, chain):
    with pytest.raises(MalformedChain):
        is_central_series(W3, chain)


def test_nilpotent_group(W3, C2, K2, D8, S3):
    assert not is_nilpotent_group(W3)
    assert is_nilpotent_group(C2)
    assert not is_nilpotent_group(K2)
    assert is_nilpotent_group(D8)
    assert not is_nilpotent_group(S3)


@pytest.mark.parametrize("H", CATALOG)
def test_series_invariants(H):
    s = upper_center_series(H)
    assert s.terms[0] == 1
    for prev, cur in zip(s.terms, s.terms[1:]):
        assert prev != cur and is_subset(prev, cur)
        assert is_closed(H, cur) and is_normal(H, cur)
        qm = quotient(H, prev)
        assert qm.image(cur) == center(qm.quotient)
    wn, cls = is_weakly_nilpotent(H)
    if wn and H.order > 1:
        assert center(H) != 1
    if is_nilpotent_group(H):
        assert wn and is_thin(H)


@pytest.mark.parametrize("H", CATALOG)
def test_central_series_bound_and_existence(H):
    series = central_series(H)
    wn, _ = is_weakly_nilpotent(H)
    assert bool(series) == wn
    ucs = upper_center_series(H)
    for ch in series:
        assert is_central_series(H, ch)
        asc = list(reversed(ch))
        for i, T in enumerate(asc):
            assert is_subset(T, ucs.term(i))


@pytest.mark.parametrize("H", CATALOG)
def test_center_maps_into_quotient_center(H):
    Z = center(H)
    for T in all_closed_subsets(H).subsets:
        qm = quotient(H, T)
        assert is_subset(qm.image(Z), center(qm.quotient))


@pytest.mark.parametrize("H", CATALOG)
def test_center_and_hypercenter_quotients(H):
    wn = is_weakly_nilpotent(H)[0]
    assert is_weakly_nilpotent(quotient(H, center(H)).quotient)[0] == wn
    assert is_weakly_nilpotent(quotient(H, hypercenter(H)).quotient)[0] == wn


def test_abelian_thin_series(C2):
    assert upper_center_series(C2).terms == (1, full_mask(2))
