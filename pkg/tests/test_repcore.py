from fractions import Fraction as Q

import pytest

from minorlab import repcore
from minorlab.repcore import (
    adjoint_module,
    construct_irreducible,
    decompose_tensor,
    dual_module,
    freudenthal_multiplicities,
    highest_weight_vectors,
    irreducible,
    is_quasi_minuscule,
    kills_zero_square,
    map_from_highest_vector,
    multiplication_map,
    nonzero_preimage,
    surjective_onto_target,
    tensor,
    verify_module_identities,
    weyl_dimension,
    zero_weight_regeneration,
    zero_square_witness,
)
from minorlab.rootweyl import Weight


def test_dimensions(a2, g2, f4, v3_a2, v7_g2, v26_f4):
    assert v3_a2.dim == 3
    assert v7_g2.dim == 7
    assert v26_f4.dim == 26
    assert len(v26_f4.weight_space(f4.zero_weight())) == 2


def test_construct_rejects_bad_input(a2):
    with pytest.raises(ValueError):
        construct_irreducible(a2, Weight((-1, 0)))
    with pytest.raises(ValueError):
        construct_irreducible(a2, Weight((50, 50)), guard=100)


def test_natural_rep_matrices(a2, v3_a2):
    # oracle: the hand-written sl3 natural representation
    e1 = {1: {0: Q(1)}}
    e2 = {2: {1: Q(1)}}
    for j in range(3):
        assert v3_a2.gen_col("e", 1, j) == e1.get(j, {})
        assert v3_a2.gen_col("e", 2, j) == e2.get(j, {})
    assert [w.coords for w in v3_a2.weights] == [(1, 0), (-1, 1), (0, -1)]


def test_adjoint_modules(a2, g2, e8):
    assert adjoint_module(a2).dim == 8
    assert adjoint_module(g2).dim == 14
    adj = adjoint_module(e8)
    assert adj.dim == 248
    assert len(adj.weight_space(e8.zero_weight())) == 8
    # nonzero weights are exactly the 240 roots, each once
    mults = adj.weight_multiplicities()
    roots = {e8.weight_of_root(r) for r in e8.positive_roots}
    roots |= {-w for w in roots}
    assert {w for w in mults if not w.is_zero()} == roots
    assert all(m == 1 for w, m in mults.items() if not w.is_zero())


def test_weyl_dim_vs_freudenthal_vs_construction(a2, g2, f4):
    cases = [
        (a2, a2.fundamental_weight(1)),
        (a2, a2.highest_root()),
        (g2, g2.fundamental_weight(2)),
        (g2, g2.fundamental_weight(1)),
        (f4, f4.fundamental_weight(4)),
    ]
    for datum, lam in cases:
        mults = freudenthal_multiplicities(datum, lam)
        assert sum(mults.values()) == weyl_dimension(datum, lam)
        mod = irreducible(datum, lam)
        assert mod.weight_multiplicities() == mults


def test_module_identities(a2, g2, v3_a2, v7_g2, v26_f4):
    for mod in (v3_a2, v7_g2, v26_f4, adjoint_module(a2), adjoint_module(g2)):
        assert verify_module_identities(mod)


def test_half_chain_basis(g2, v7_g2):
    # weights of the basis produced by f2, f1, f2, (1/2) f2, f1, f2
    assert [w.coords for w in v7_g2.weights] == [
        (0, 1), (1, -1), (-1, 2), (0, 0), (1, -2), (-1, 1), (0, -1),
    ]
    chain = [(2, Q(1)), (1, Q(1)), (2, Q(1)), (2, Q(1, 2)), (1, Q(1)), (2, Q(1))]
    vec = {0: Q(1)}
    for idx, (s, c) in enumerate(chain, start=1):
        vec = {k: c * x for k, x in v7_g2.apply_gen("f", s, vec).items()}
        assert list(vec) == [idx]


def test_dual_module(g2, v7_g2, v3_a2):
    d = dual_module(v7_g2)
    dd = dual_module(d)
    for s in (1, 2):
        for j in range(7):
            assert dd.gen_col("e", s, j) == v7_g2.gen_col("e", s, j)
            assert dd.gen_col("f", s, j) == v7_g2.gen_col("f", s, j)
    assert sorted(w.coords for w in d.weights) == sorted((-w).coords for w in v7_g2.weights)
    # G2: V(w2) is self-dual
    assert d.highest_weight == v7_g2.highest_weight
    assert verify_module_identities(dual_module(v3_a2))


def test_tensor_module(a2, v3_a2):
    v2 = irreducible(a2, a2.fundamental_weight(2))
    t = tensor(v3_a2, v2)
    assert t.dim == 9
    assert verify_module_identities(t)
    mults = t.weight_multiplicities()
    expect = {}
    for w1 in v3_a2.weights:
        for w2 in v2.weights:
            expect[w1 + w2] = expect.get(w1 + w2, 0) + 1
    assert mults == expect


def test_tensor_guard_and_mismatch(a2, g2, v3_a2, v7_g2):
    with pytest.raises(ValueError):
        tensor(v3_a2, v7_g2)
    with pytest.raises(ValueError):
        decompose_tensor(g2, g2.fundamental_weight(1), g2.fundamental_weight(1), guard=10)


def test_decompose_tensor(a2, g2, f4):
    w1 = a2.fundamental_weight(1)
    dec = decompose_tensor(a2, w1, w1)
    assert dec == {w1.scaled(2): 1, a2.fundamental_weight(2): 1}
    w2 = g2.fundamental_weight(2)
    dec = decompose_tensor(g2, w2, w2)
    assert dec[w2] == 1
    # F4: the four non-trivial constituents have multiplicity one (plus V(0))
    w4 = f4.fundamental_weight(4)
    dec = decompose_tensor(f4, w4, w4)
    assert dec == {
        w4.scaled(2): 1,
        f4.fundamental_weight(1): 1,
        f4.fundamental_weight(3): 1,
        w4: 1,
        f4.zero_weight(): 1,
    }
    assert sum(m * weyl_dimension(f4, w) for w, m in dec.items()) == 26 * 26


def test_quasi_minuscule(a2, g2, e8, v3_a2, v7_g2, v26_f4):
    qm, s = is_quasi_minuscule(v7_g2)
    assert qm and s == 2
    qm, _ = is_quasi_minuscule(adjoint_module(e8))
    assert qm
    qm, s = is_quasi_minuscule(v3_a2)
    assert not qm
    qm, s = is_quasi_minuscule(v26_f4)
    assert qm
    with pytest.raises(ValueError):
        is_quasi_minuscule(irreducible(a2, a2.zero_weight()))


def test_quasi_minuscule_weights_extremal(v7_g2, v26_f4):
    for mod in (v7_g2, v26_f4):
        for w, m in mod.weight_multiplicities().items():
            if not w.is_zero():
                assert m == 1


def test_highest_weight_vectors(g2, v7_g2, v26_f4, f4):
    assert highest_weight_vectors(v7_g2, v7_g2.highest_weight) == [{0: Q(1)}]
    vv = tensor(v7_g2, v7_g2)
    hw = highest_weight_vectors(vv, v7_g2.highest_weight)
    assert len(hw) == 1
    # reference coefficient pattern (1,-2,2,-1) on the four pure tensors
    pairs = [(0, 3), (1, 2), (2, 1), (3, 0)]
    got = [hw[0].get(vv.pair_index(i, j), Q(0)) for i, j in pairs]
    assert got == [Q(1), Q(-2), Q(2), Q(-1)]
    vvf = tensor(v26_f4, v26_f4)
    assert len(highest_weight_vectors(vvf, v26_f4.highest_weight)) == 1


def test_map_from_highest_vector(g2, v7_g2):
    vv = tensor(v7_g2, v7_g2)
    hw = highest_weight_vectors(vv, v7_g2.highest_weight)[0]
    iota = map_from_highest_vector(v7_g2, vv, hw)
    assert iota.intertwines()
    # identity map from the canonical highest vector
    ident = map_from_highest_vector(v7_g2, v7_g2, {0: Q(1)})
    assert all(ident.col(j) == {j: Q(1)} for j in range(7))
    with pytest.raises(ValueError):
        map_from_highest_vector(v7_g2, vv, {1: Q(1)})


def test_dualize_map_roundtrip(g2, v7_g2):
    vv = tensor(v7_g2, v7_g2)
    hw = highest_weight_vectors(vv, v7_g2.highest_weight)[0]
    iota = map_from_highest_vector(v7_g2, vv, hw)
    vd = dual_module(v7_g2)
    vvd = tensor(vd, vd)
    star = repcore.dualize_map(iota, vd, vvd)
    double = repcore.dualize_map(star, vvd_dual := dual_module(vvd), dual_module(vd))
    for j in range(7):
        assert double.col(j) == iota.col(j)
    # pairing compatibility <iota*(F), v> = <F, iota(v)> on a few vectors
    for j in (0, 3, 6):
        img = iota.col(j)
        for k in list(img)[:3]:
            assert star.col(k).get(j, Q(0)) == img[k]


def test_multiplication_map_g2(v7_g2, g2):
    m, iota = multiplication_map(v7_g2)
    assert kills_zero_square(m)
    assert surjective_onto_target(m)
    assert m.intertwines()
    assert zero_weight_regeneration(v7_g2)
    # iota(v_00) support: six pure tensors with the +,+,-,+,-,- sign pattern
    vv = m.source
    col = iota.col(3)
    pairs = [(0, 6), (1, 5), (2, 4), (4, 2), (5, 1), (6, 0)]
    assert set(col) == {vv.pair_index(i, j) for i, j in pairs}
    signs = [1, 1, -1, 1, -1, -1]
    vals = [col[vv.pair_index(i, j)] for i, j in pairs]
    assert all(v * s > 0 for v, s in zip(vals, signs))


def test_multiplication_map_f4_obstruction(v26_f4):
    m, _ = multiplication_map(v26_f4)
    assert surjective_onto_target(m)
    assert not kills_zero_square(m)
    i, j, img = zero_square_witness(m)
    zero = v26_f4.datum.zero_weight()
    assert v26_f4.weights[i] == zero and v26_f4.weights[j] == zero
    assert img
    assert zero_weight_regeneration(v26_f4)
    # scalar invariance of the obstruction
    m2 = repcore.ModuleMap(m.source, m.target, col_fn=lambda k: {i: 3 * c for i, c in m.col(k).items()})
    assert not kills_zero_square(m2)


def test_nonzero_preimage(g2, v7_g2):
    m, _ = multiplication_map(v7_g2)
    vv = m.source
    zero = g2.zero_weight()
    for target in range(7):
        x = nonzero_preimage(m, {target: Q(1)})
        assert m.apply(x) == {target: Q(1)}
        for k in x:
            i, j = vv.split_index(k)
            assert not v7_g2.weights[i].is_zero()
            assert not v7_g2.weights[j].is_zero()
    # preimage of a zero-weight vector lives on (nu, -nu) pairs
    x = nonzero_preimage(m, {3: Q(1)})
    for k in x:
        i, j = vv.split_index(k)
        assert v7_g2.weights[i] == -v7_g2.weights[j]


def test_e8_preimages_solvable(e8):
    adj = adjoint_module(e8)
    m, _ = multiplication_map(adj)
    for target in range(0, 248, 31):
        x = nonzero_preimage(m, {target: Q(1)})
        assert m.apply(x) == {target: Q(1)}


def test_e8_nilpotency_degree(e8):
    adj = adjoint_module(e8)
    for s in (1, 5, 8):
        cur = [{j: Q(1)} for j in range(adj.dim)]
        for _ in range(3):
            cur = [adj.apply_gen("e", s, v) for v in cur]
        assert all(not v for v in cur)
