import random

from hypothesis import given, settings, strategies as st
from sympy import Matrix, Rational

from belian import linalg as la
from belian.errors import StructuralError

import pytest


def rand_rows(rng, r, c, zero_bias=0.5):
    return [[0 if rng.random() < zero_bias else Rational(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(c)]
            for _ in range(r)]


def to_sympy(M):
    r, c = M.shape
    return Matrix(r, c, lambda i, j: Rational(la.to_strings(M)[i][j]))


shapes = st.tuples(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5))


@settings(max_examples=80, deadline=None)
@given(shapes)
def test_rank_and_kernel_against_sympy_matrix(args):
    seed, r, c = args
    rows = rand_rows(random.Random(seed), r, c)
    M = la.from_rows(rows, c)
    S = Matrix(rows)
    assert la.rank(M) == S.rank()
    K = la.kernel(M)
    assert K.shape[1] == c - S.rank()
    assert la.is_zero(la.matmul(M, K))
    assert la.zz_rank(M) == S.rank()


@settings(max_examples=60, deadline=None)
@given(shapes)
def test_solve_round_trip(args):
    seed, r, c = args
    rng = random.Random(seed)
    B = la.column_basis(la.from_rows(rand_rows(rng, r + 2, c), c))
    X = la.from_rows(rand_rows(rng, B.shape[1], 2, 0.2), 2) if B.shape[1] else la.zeros(0, 2)
    V = la.matmul(B, X)
    assert la.equal(la.solve(B, V), X)
    assert all(la.in_span(B, V.extract(list(range(V.shape[0])), [j])) for j in range(2))


def test_solve_rejects_outside_span():
    B = la.from_rows([[1], [0]])
    with pytest.raises(StructuralError):
        la.solve(B, la.from_rows([[0], [1]]))


def test_strings_round_trip():
    M = la.from_rows([["1/2", 0, "-3"], [0, "4/6", 1]])
    assert la.to_strings(M) == [["1/2", "0", "-3"], ["0", "2/3", "1"]]
    assert la.equal(la.from_strings(la.to_strings(M)), M)


def test_subquotient_dimension():
    Z = la.identity(3)
    B = la.from_rows([[1], [1], [0]])
    Q = la.Subquotient(Z, B)
    assert Q.dim == 2
    assert la.is_zero(Q.project(B))
    assert to_sympy(Q.project(la.identity(3))).rank() == 2


def test_empty_shapes():
    assert la.rank(la.zeros(0, 3)) == 0
    assert la.kernel(la.zeros(0, 3)).shape == (3, 3)
    assert la.zz_rank(la.zeros(2, 0)) == 0
