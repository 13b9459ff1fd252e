from fractions import Fraction as Q

from minorlab import ratmat


def F(rows):
    return [[Q(x) for x in row] for row in rows]


def test_rref_and_rank():
    m, pivots = ratmat.rref(F([[1, 2], [2, 4]]))
    assert pivots == [0]
    assert ratmat.rank(F([[1, 2], [2, 4]])) == 1
    assert ratmat.rank(F([[1, 2], [3, 4]])) == 2


def test_nullspace_is_kernel():
    a = F([[1, 2, 3], [4, 5, 6]])
    basis = ratmat.nullspace(a)
    assert len(basis) == 1
    assert all(sum(r * x for r, x in zip(row, basis[0])) == 0 for row in a)


def test_solve_prefers_pivot_solution():
    a = F([[1, 0, 1], [0, 1, 1]])
    x = ratmat.solve(a, [Q(3), Q(5)])
    assert x == [Q(3), Q(5), Q(0)]
    assert ratmat.solve(F([[1, 1], [1, 1]]), [Q(0), Q(1)]) is None


def test_invert_roundtrip():
    a = F([[2, 1], [1, 1]])
    inv = ratmat.invert(a)
    assert ratmat.mat_mul(a, inv) == ratmat.identity(2)


def test_incremental_rank():
    acc = ratmat.IncrementalRank(3)
    assert acc.add([Q(1), Q(0), Q(0)])
    assert not acc.add([Q(2), Q(0), Q(0)])
    assert acc.add([Q(1), Q(1), Q(0)])
    assert acc.rank == 2
