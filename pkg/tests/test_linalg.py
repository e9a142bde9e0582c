from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgtilt import linalg
from dgtilt.errors import ShapeMismatch
from dgtilt.scalars import GF, QQ

FIELDS = [QQ, GF(2), GF(3), GF(7)]


def mat(field, rows):
    return [[field(x) for x in r] for r in rows]


def test_rank_of_a_known_matrix():
    a = mat(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert linalg.rank(a, 3, QQ) == 2


def test_rank_depends_on_the_characteristic():
    rows = [[1, 1], [1, -1]]
    assert linalg.rank(mat(QQ, rows), 2, QQ) == 2
    assert linalg.rank(mat(GF(2), rows), 2, GF(2)) == 1


def test_rref_normalises_pivots():
    red, piv = linalg.rref(mat(QQ, [[2, 4], [3, 7]]), 2, QQ)
    assert piv == [0, 1]
    assert red == mat(QQ, [[1, 0], [0, 1]])


def test_solve_reports_inconsistency():
    a = mat(QQ, [[1, 1], [2, 2]])
    assert linalg.solve(a, 2, mat(QQ, [[1, 3]])[0], QQ) is None
    x = linalg.solve(a, 2, mat(QQ, [[1, 2]])[0], QQ)
    assert linalg.matvec(a, x, QQ) == mat(QQ, [[1, 2]])[0]


def test_inverse_and_singularity():
    a = mat(QQ, [[2, 1], [1, 1]])
    inv = linalg.inverse(a, 2, QQ)
    assert linalg.matmul(a, inv, 2, 2, QQ) == linalg.identity(2, QQ)
    with pytest.raises(ZeroDivisionError):
        linalg.inverse(mat(QQ, [[1, 1], [1, 1]]), 2, QQ)


def test_ragged_rows_rejected():
    with pytest.raises(ShapeMismatch):
        linalg.rref([[QQ(1)], [QQ(1), QQ(2)]], 2, QQ)


def test_fraction_free_keeps_exact_values():
    a = mat(QQ, [[Fraction(1, 3), Fraction(2, 5)], [Fraction(1, 7), Fraction(1, 11)]])
    inv = linalg.inverse(a, 2, QQ)
    assert linalg.matmul(inv, a, 2, 2, QQ) == linalg.identity(2, QQ)


@st.composite
def matrices(draw):
    field = draw(st.sampled_from(FIELDS))
    m = draw(st.integers(0, 5))
    n = draw(st.integers(1, 5))
    rows = [[field(draw(st.integers(-3, 3))) for _ in range(n)] for _ in range(m)]
    return field, rows, n


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(data):
    field, rows, n = data
    r = linalg.rank(rows, n, field)
    ker = linalg.nullspace(rows, n, field)
    assert r + len(ker) == n
    for v in ker:
        assert all(not x for x in linalg.matvec(rows, v, field))


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_solve_finds_preimages_of_images(data, extra):
    field, rows, n = data
    x = [field(extra.draw(st.integers(-3, 3))) for _ in range(n)]
    b = linalg.matvec(rows, x, field)
    y = linalg.solve(rows, n, b, field) if rows else [field.zero] * n
    assert y is not None
    assert linalg.matvec(rows, y, field) == b


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_of_transpose(data):
    field, rows, n = data
    if not rows:
        return
    assert linalg.rank(rows, n, field) == linalg.rank(linalg.transpose(rows, len(rows), n),
                                                      len(rows), field)
