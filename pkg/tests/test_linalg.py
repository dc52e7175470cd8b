from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affine_sl2.linalg import (Echelon, InconsistentSystem, dense_to_rows, fraction_free_rank, inverse, matmul,
                               nullspace, rank, solve)
from oracles import rank_oracle

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c),
                                                           min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_ranks_agree(mat):
    ncols = len(mat[0])
    assert fraction_free_rank(mat) == rank(dense_to_rows(mat), ncols) == rank_oracle(mat)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(mat):
    ncols = len(mat[0])
    basis = nullspace(dense_to_rows(mat), ncols)
    assert len(basis) == ncols - rank_oracle(mat)
    for vec in basis:
        for row in mat:
            assert sum(row[i] * c for i, c in vec.items()) == 0


def test_solve_and_inconsistency():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
    assert solve(rows, [Fraction(3), Fraction(1)], 2) == {0: 2, 1: 1}
    with pytest.raises(InconsistentSystem):
        solve([{0: Fraction(1)}, {0: Fraction(2)}], [Fraction(1), Fraction(1)], 1)
    ech = Echelon(1)
    assert ech.add({0: Fraction(1)})
    assert not ech.add({0: Fraction(2)})
    assert ech.consistent
    ech.add({1: Fraction(1)})
    assert not ech.consistent


def test_inverse():
    m = [[Fraction(2), Fraction(1)], [Fraction(5), Fraction(3)]]
    assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
