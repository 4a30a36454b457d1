"""Exact linear algebra over Q (and ranks over Z) on top of sympy's DomainMatrix.

Vectors are columns; a subspace is given by a matrix whose columns span it.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import StructuralError


def zeros(rows, cols) -> DomainMatrix:
    return DomainMatrix.zeros((rows, cols), QQ).to_sparse()


def identity(n) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ).to_sparse()


def from_entries(rows, cols, entries) -> DomainMatrix:
    """``entries`` maps (i, j) to a rational (int, Fraction or "p/q" string)."""
    d = {}
    for (i, j), v in entries.items():
        q = parse_rational(v)
        if q:
            d.setdefault(i, {})[j] = q
    return DomainMatrix(d, (rows, cols), QQ)


def from_rows(rows, cols=None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows and cols is None else (cols or 0)
    return from_entries(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})


def parse_rational(v):
    if isinstance(v, str):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return QQ(v.numerator, v.denominator)
    if isinstance(v, int):
        return QQ(v)
    return QQ.convert(v)


def columns(vectors, n) -> DomainMatrix:
    """The n x k matrix with the given length-n vectors (dicts or lists) as columns."""
    d = {}
    for j, v in enumerate(vectors):
        items = v.items() if isinstance(v, dict) else enumerate(v)
        for i, x in items:
            if x:
                d.setdefault(i, {})[j] = parse_rational(x)
    return DomainMatrix(d, (n, len(vectors)), QQ)


def to_strings(M: DomainMatrix) -> list:
    """Dense rows of "p/q" strings (integers written without a denominator)."""
    rows, cols = M.shape
    dense = M.to_dense().to_list()
    return [[_fmt(dense[i][j]) for j in range(cols)] for i in range(rows)]


def _fmt(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q)


def from_strings(rows, cols=None) -> DomainMatrix:
    return from_rows(rows, cols)


def rank(M: DomainMatrix) -> int:
    if 0 in M.shape:
        return 0
    return M.rank()


def kernel(M: DomainMatrix) -> DomainMatrix:
    """Columns forming a basis of the null space."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    if n == 0:
        return zeros(0, 0)
    N = M.nullspace()
    if N.shape[0] == 0:
        return zeros(n, 0)
    return N.transpose().to_sparse()


def column_basis(M: DomainMatrix) -> DomainMatrix:
    """An independent subset of the columns spanning the column space."""
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return zeros(rows, 0)
    _, pivots = M.rref()
    return M.extract(list(range(rows)), list(pivots)) if pivots else zeros(rows, 0)


def hstack(*Ms) -> DomainMatrix:
    Ms = [m.to_sparse() for m in Ms if m.shape[1]] or [Ms[0].to_sparse()]
    out = Ms[0]
    for m in Ms[1:]:
        out = out.hstack(m)
    return out


def solve(B: DomainMatrix, V: DomainMatrix) -> DomainMatrix:
    """X with B X == V, for B of full column rank; StructuralError if some
    column of V is outside the span of B."""
    n, k = B.shape
    m = V.shape[1]
    if k == 0:
        if any(V.to_dok().values()):
            raise StructuralError("vector outside the span")
        return zeros(0, m)
    R, pivots = hstack(B, V).rref()
    if tuple(pivots[:k]) != tuple(range(k)) or any(p >= k for p in pivots):
        raise StructuralError("vector outside the span or basis not independent")
    return R.extract(list(range(k)), list(range(k, k + m))).to_sparse()


def in_span(B: DomainMatrix, v: DomainMatrix) -> bool:
    return rank(hstack(B, v)) == rank(B)


def left_annihilator(B: DomainMatrix) -> DomainMatrix:
    """Rows q with q B = 0, a basis of them; its kernel is the span of B."""
    n = B.shape[0]
    if B.shape[1] == 0:
        return identity(n)
    return kernel(B.transpose()).transpose()


class Subquotient:
    """Z / B for subspaces B <= Z of Q^n, with coordinates on the quotient."""

    def __init__(self, Z: DomainMatrix, B: DomainMatrix):
        self.n = Z.shape[0]
        self.Z = column_basis(Z)
        self.B = B
        Bz = solve(self.Z, B) if B.shape[1] else zeros(self.Z.shape[1], 0)
        self.Q = left_annihilator(Bz)
        self.dim = self.Q.shape[0]

    def project(self, V: DomainMatrix) -> DomainMatrix:
        """Coordinates in Z/B of the columns of V, which must lie in Z."""
        X = solve(self.Z, V)
        if self.dim == 0:
            return zeros(0, V.shape[1])
        return (self.Q * X).to_sparse()


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape[1] == 0 or 0 in A.shape or 0 in B.shape:
        return zeros(A.shape[0], B.shape[1])
    return (A * B).to_sparse()


def is_zero(M: DomainMatrix) -> bool:
    return not any(M.to_dok().values())


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and A.to_dok() == B.to_dok()


def zz_rank(M: DomainMatrix) -> int:
    """Rank read off the Smith normal form over Z, after clearing denominators."""
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return 0
    den = 1
    for q in M.to_dok().values():
        den = lcm(den, int(q.denominator))
    d = {}
    for (i, j), q in M.to_dok().items():
        if q:
            d.setdefault(i, {})[j] = ZZ(int(q * den))
    Z = DomainMatrix(d, (rows, cols), ZZ)
    return sum(1 for f in invariant_factors(Z.to_dense()) if f)
