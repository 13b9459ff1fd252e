import random
from fractions import Fraction as Q

import pytest

from minorlab import groupfun as gf
from minorlab import ratmat, repcore
from minorlab.rootweyl import all_elements, from_word, identity_element, longest_element, reduced_words


def test_x_factor_on_natural_rep(a2, v3_a2):
    # oracle: hand-written 3x3 unipotent matrices
    m = gf.act_matrix(gf.GroupWord(a2, [gf.x_factor(1, "t")]), v3_a2, {"t": Q(7)})
    assert m == [[1, 7, 0], [0, 1, 0], [0, 0, 1]]
    m = gf.act_matrix(gf.GroupWord(a2, [gf.x_factor(2, Q(1, 2))]), v3_a2)
    assert m == [[1, 0, 0], [0, 1, Q(1, 2)], [0, 0, 1]]


def test_x_zero_is_identity(a2, v3_a2):
    m = gf.act_matrix(gf.GroupWord(a2, [gf.x_factor(1, 0)]), v3_a2)
    assert m == ratmat.identity(3)


def test_torus_action_matches_weights(a2, v3_a2, v7_g2):
    for mod, params in ((v3_a2, (Q(2), Q(3)),), (v7_g2, (Q(5), Q(-2)))):
        gw = gf.GroupWord(mod.datum, [gf.torus_factor(params)])
        cols = gf.act_columns(gw, mod)
        for j in range(mod.dim):
            expect = Q(1)
            for s in range(1, mod.datum.n + 1):
                expect *= params[s - 1] ** mod.weights[j].pairing(s)
            assert cols[j] == {j: expect}
    with pytest.raises(ValueError):
        gf.torus_factor((0, 1))


def test_rbar_block(a2, v3_a2):
    m = gf.act_matrix(gf.lift_reflection(a2, 1), v3_a2)
    assert m == [[0, -1, 0], [1, 0, 0], [0, 0, 1]]


def test_lift_weyl_identity_and_word_independence(a2, g2):
    for datum in (a2, g2):
        mod = repcore.irreducible(datum, datum.fundamental_weight(1))
        assert gf.act_matrix(gf.lift_weyl(identity_element(datum)), mod) == ratmat.identity(mod.dim)
        for w in all_elements(datum):
            mats = {
                tuple(map(tuple, gf.act_matrix(gf.GroupWord(datum, [gf.rbar_factor(s) for s in word]), mod)))
                for word in reduced_words(w)
            }
            assert len(mats) == 1


def test_act_multiplicative(a2, v3_a2):
    w1 = gf.GroupWord(a2, [gf.x_factor(1, 2), gf.y_factor(2, -3)])
    w2 = gf.GroupWord(a2, [gf.torus_factor((2, Q(1, 3))), gf.x_factor(2, 1)])
    lhs = gf.act_matrix(w1 * w2, v3_a2)
    rhs = ratmat.mat_mul(gf.act_matrix(w1, v3_a2), gf.act_matrix(w2, v3_a2))
    assert lhs == rhs


def test_act_on_tensor_is_kronecker(a2, v3_a2):
    v2 = repcore.irreducible(a2, a2.fundamental_weight(2))
    t = repcore.tensor(v3_a2, v2)
    rng = random.Random(3)
    word = gf.GroupWord(a2, [gf.y_factor(1, 2), gf.x_factor(2, rng.randint(1, 5)), gf.torus_factor((3, 2))])
    big = gf.act_matrix(word, t)
    left = gf.act_matrix(word, v3_a2)
    right = gf.act_matrix(word, v2)
    for i1 in range(3):
        for j1 in range(3):
            for i2 in range(3):
                for j2 in range(3):
                    assert big[t.pair_index(i1, i2)][t.pair_index(j1, j2)] == left[i1][j1] * right[i2][j2]


def test_exp_nilpotency_guard(e8):
    adj = repcore.adjoint_module(e8)
    cols = gf._exp_columns_cached(adj, "e", 1)
    assert max(k for col in cols for (_, k, _) in col) <= 3


def test_extremal_vectors(a2, g2, v7_g2, v3_a2):
    for datum, mod in ((a2, v3_a2), (g2, v7_g2)):
        for w in all_elements(datum):
            ev = gf.extremal_vector(mod, w)
            fv = gf.extremal_dual(mod, w)
            assert len(ev) == 1
            assert sum(fv[i] * c for i, c in ev.items()) == 1
            direct = gf.apply_word(gf.lift_weyl(w), mod, {0: Q(1)})
            assert direct == ev


def test_extremal_identity(v3_a2):
    e = identity_element(v3_a2.datum)
    assert gf.extremal_vector(v3_a2, e) == {0: Q(1)}


def test_minor_is_matrix_entry(a2, v3_a2):
    e = identity_element(a2)
    mi = gf.minor(a2, gf.MinorLabel(1, e, e))
    rng = random.Random(11)
    for _ in range(6):
        pt = gf.random_point(a2, rng)
        cols = gf.point_columns(v3_a2, pt)
        assert mi.eval_columns(cols) == cols[0].get(0, Q(0))


def test_minor_at_lift_is_normalized(a2):
    # <f_{w l}, wbar' . v_l> = 1 iff w l = w' l, else 0 (different weights pair to zero)
    w0 = longest_element(a2)
    e = identity_element(a2)
    v = repcore.irreducible(a2, a2.fundamental_weight(1))
    for w in (e, from_word(a2, (1,)), w0):
        for wp in (e, from_word(a2, (1,)), w0):
            fn = gf.CoefficientFunction(v, gf.extremal_dual(v, w), gf.extremal_vector(v, e))
            val = fn.eval_at(gf.lift_weyl(wp))
            lam = a2.fundamental_weight(1)
            expect = 1 if w.apply(lam) == wp.apply(lam) else 0
            assert val == expect, (w.word, wp.word)


def test_minor_label_equivalence(a2):
    e = identity_element(a2)
    r2 = from_word(a2, (2,))
    a = gf.MinorLabel(1, e, e)
    b = gf.MinorLabel(1, r2, r2)  # r2 fixes w_1
    assert a == b and hash(a) == hash(b)
    eq, _ = gf.function_equal(gf.minor(a2, a), gf.minor(a2, b), mode="symbolic")
    assert eq


def test_label_equal_functions_scan(a2):
    # labels with equal weight pairs define equal functions; a different pair differs
    e = identity_element(a2)
    r1 = from_word(a2, (1,))
    same = [(w, wp) for w in all_elements(a2) for wp in all_elements(a2)]
    by_pair = {}
    for w, wp in same:
        by_pair.setdefault(gf.MinorLabel(1, w, wp).weight_pair(), []).append((w, wp))
    group = next(g for g in by_pair.values() if len(g) > 1)
    lhs = gf.minor(a2, gf.MinorLabel(1, *group[0]))
    rhs = gf.minor(a2, gf.MinorLabel(1, *group[1]))
    eq, _ = gf.function_equal(lhs, rhs, mode="symbolic")
    assert eq
    neq, cert = gf.function_equal(
        gf.minor(a2, gf.MinorLabel(1, e, e)),
        gf.minor(a2, gf.MinorLabel(1, e, r1)),
        mode="probabilistic",
        seed=5,
    )
    assert not neq and "witness" in cert


def test_function_equal_guards(g2, v7_g2, e8):
    f = gf.minor(g2, gf.MinorLabel(2, identity_element(g2), identity_element(g2)))
    eq, _ = gf.function_equal(f, f, mode="symbolic")
    assert eq
    adj = repcore.adjoint_module(e8)
    fn = gf.CoefficientFunction(adj, {0: Q(1)}, {0: Q(1)})
    with pytest.raises(ValueError):
        gf.symbolic_equal(fn, fn)
    with pytest.raises(ValueError):
        gf.function_equal(f, f, mode="nope")


def test_group_word_json_roundtrip(a2):
    gw = gf.GroupWord(
        a2,
        [gf.x_factor(1, Q(3, 2)), gf.y_factor(2, "t"), gf.torus_factor((2, 3)), gf.rbar_factor(1)],
    )
    data = gf.group_word_to_json(gw)
    back = gf.group_word_from_json(a2, data)
    assert back.factors == gw.factors


def test_minor_label_json_roundtrip(a2):
    lab = gf.MinorLabel(2, from_word(a2, (1, 2)), longest_element(a2))
    back = gf.minor_label_from_json(a2, gf.minor_label_to_json(lab))
    assert back == lab
