import pytest

from minorlab import bfz, clustercore as cc, groupfun as gf
from minorlab.rootweyl import (
    all_elements,
    from_word,
    identity_element,
    longest_element,
    min_coset_rep,
)


def test_double_word_validation(a2):
    with pytest.raises(ValueError):
        bfz.DoubleWord(a2, (1, 1, 2, -1, -2, -1))
    with pytest.raises(ValueError):
        bfz.DoubleWord(a2, (1, 2, 1))
    bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))


def test_index_structure(a2):
    dw = bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))
    idx = bfz.index_structure(dw)
    assert set(idx.exchangeable) == {1, 2, 3, 4}
    assert set(idx.frozen) == {-1, -2, 5, 6}
    assert idx.kplus[1] == 3 and idx.kplus[3] == 4 and idx.kplus[4] == 6 and idx.kplus[2] == 5
    assert len(idx.labels) == 8
    assert idx.kplus[-1] == 1 and idx.kplus[-2] == 2


def test_frozen_structure_all_words(a2):
    for dw in bfz.all_double_words(a2):
        idx = bfz.index_structure(dw)
        assert all(k < 0 for k in idx.frozen[:2])
        assert len(idx.frozen) == 2 * a2.n
        labels = {bfz.minor_label(dw, k) for k in idx.frozen}
        assert labels == set(bfz.frozen_labels(a2))


def test_minor_labels(a2):
    dw = bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))
    w0 = longest_element(a2)
    e = identity_element(a2)
    lab = bfz.minor_label(dw, -1)
    assert lab == gf.MinorLabel(1, e, w0)
    lab1 = bfz.minor_label(dw, 1)
    assert lab1 == gf.MinorLabel(1, e, from_word(a2, (1, 2)))
    # all variables of this word are pairwise distinct as functions
    idx = bfz.index_structure(dw)
    labels = [bfz.minor_label(dw, k) for k in idx.labels]
    assert len(set(labels)) == len(labels)


def test_exchange_matrix_columns(a2):
    # hand-derived exchange relations on the natural 3x3 minors
    dw = bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))
    b = bfz.exchange_matrix(dw)
    col = lambda k: {p: v for (p, q), v in b.items() if q == k}
    assert col(3) == {1: -1, 2: 1, 4: -1}
    assert col(1) == {-1: -1, -2: 1, 2: -1, 3: 1}
    assert set(col(2)) == {-2, 1, 3, 4, 5} and set(col(4)) == {2, 3, 5, 6}


def test_exchange_matrix_contract_all_words(a2):
    for dw in bfz.all_double_words(a2):
        seed = bfz.build_seed(dw, regularity=False)
        idx = bfz.index_structure(dw)
        assert set(k for (_, k) in seed.b) <= set(idx.exchangeable)


def test_build_seed_regularity(a2):
    dw = bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))
    seed = bfz.build_seed(dw, regularity=True)
    assert len(seed.labels) == 8 and len(seed.frozen) == 4
    # deleting a needed entry breaks regularity of that exchange
    for victim, k in [((-1, 1), 1), ((2, 1), 1), ((2, 4), 4)]:
        bad = dict(seed.b)
        del bad[victim]
        broken = seed.copy_with(b=bad)
        assert not bfz.exchange_regular(broken, dw, k)


def test_realize_minor_examples(a2):
    e = identity_element(a2)
    w0 = longest_element(a2)
    half = w0.length
    # w = w' = e at k = N/2
    dw, k = bfz.realize_minor(a2, e, e, 1)
    assert k == half
    assert bfz.minor_label(dw, k) == gf.MinorLabel(1, e, e)
    # (r1, r2 r1, 1) realizes at k = 1 - 2 + 3 = 2
    w = from_word(a2, (1,))
    wp = from_word(a2, (2, 1))
    dw, k = bfz.realize_minor(a2, w, wp, 1)
    assert k == 2
    assert bfz.minor_label(dw, k) == gf.MinorLabel(1, w, wp)


def test_realize_minor_exhaustive(a2):
    w0 = longest_element(a2)
    half = w0.length
    for w in all_elements(a2):
        for wp in all_elements(a2):
            for s in (1, 2):
                dw, k = bfz.realize_minor(a2, w, wp, s)
                assert bfz.minor_label(dw, k) == gf.MinorLabel(s, w, wp)
                w2, w3 = min_coset_rep(w, s), min_coset_rep(wp, s)
                if k < 0:
                    # frozen corner: left weight dominant, right weight lowest
                    assert w2.is_identity()
                    assert w3.apply(a2.fundamental_weight(s)) == w0.apply(a2.fundamental_weight(s))
                else:
                    assert k == w2.length - w3.length + half


def test_realize_minor_g2_sample(g2):
    # cross-rank spot check, including a padded corner case
    e = identity_element(g2)
    for w_word, wp_word, s in [((), (2, 1), 1), ((1, 2), (2,), 2), ((), (1,), 2)]:
        w, wp = from_word(g2, w_word), from_word(g2, wp_word)
        dw, k = bfz.realize_minor(g2, w, wp, s)
        assert bfz.minor_label(dw, k) == gf.MinorLabel(s, w, wp)


def test_disjoint_pair(a2, g2):
    dw1, dw2 = bfz.disjoint_pair(a2, (1, 2, 1), (1, 2, 1))
    assert dw1.entries == (-1, -2, -1, 1, 2, 1)
    assert dw2.entries == (1, 2, 1, -1, -2, -1)
    s1 = bfz.build_seed(dw1, regularity=False)
    s2 = bfz.build_seed(dw2, regularity=False)
    assert cc.clusters_disjoint(s1, s2)
    # every exchangeable variable of the s2-seed has a dominant-weight side
    for k in s2.exchangeable:
        lw, rw = s2.functions[k].label.weight_pair()
        assert all(c >= 0 for c in lw) or all(c >= 0 for c in rw)
    with pytest.raises(ValueError):
        bfz.disjoint_pair(a2, (1, 2), (1, 2, 1))


def test_disjoint_pair_g2(g2):
    word = longest_element(g2).word
    dw1, dw2 = bfz.disjoint_pair(g2, word, word)
    s1 = bfz.build_seed(dw1, regularity=False)
    s2 = bfz.build_seed(dw2, regularity=False)
    assert cc.clusters_disjoint(s1, s2)


def test_double_word_json(a2):
    dw = bfz.DoubleWord(a2, (1, 2, 1, -1, -2, -1))
    assert bfz.double_word_from_json(a2, bfz.double_word_to_json(dw)) == dw
