"""Finite topological spaces, stored by their family of open sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product

from ..errors import StructuralError, ValidationError, Violation


@dataclass(frozen=True, eq=False)
class FinSpace:
    points: tuple
    opens: tuple  # frozensets of point indices, sorted shortlex

    def __post_init__(self):
        n = len(self.points)
        if len(set(self.points)) != n:
            raise StructuralError("duplicate point names")
        for U in self.opens:
            if not all(0 <= x < n for x in U):
                raise StructuralError("open set mentions an unknown point")

    @classmethod
    def from_opens(cls, points, opens, check=True):
        opens = {frozenset(U) for U in opens}
        sp = cls(tuple(points), tuple(sorted(opens, key=lambda U: (len(U), sorted(U)))))
        if check:
            bad = sp.check()
            if bad:
                raise ValidationError("not a topology", bad)
        return sp

    @classmethod
    def from_order(cls, points, below):
        """Alexandrov space of a preorder: ``below[x]`` is the set of points in
        the minimal open neighbourhood of x (x included)."""
        n = len(points)
        opens = []
        for mask in range(1 << n):
            U = frozenset(i for i in range(n) if mask >> i & 1)
            if all(below[x] <= U for x in U):
                opens.append(U)
        return cls.from_opens(points, opens)

    def check(self) -> list:
        out = []
        full = frozenset(range(len(self.points)))
        S = set(self.opens)
        if frozenset() not in S:
            out.append(Violation("empty", "the empty set is not open"))
        if full not in S:
            out.append(Violation("full", "the whole space is not open"))
        for U, V in combinations(self.opens, 2):
            if U | V not in S:
                out.append(Violation("union", "not closed under union", (self.names(U), self.names(V))))
            if U & V not in S:
                out.append(Violation("intersection", "not closed under intersection", (self.names(U), self.names(V))))
        return out

    def names(self, U):
        return [self.points[i] for i in sorted(U)]

    def __len__(self):
        return len(self.points)

    @cached_property
    def full(self) -> frozenset:
        return frozenset(range(len(self.points)))

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.opens)

    def is_open(self, U) -> bool:
        return frozenset(U) in self.open_set

    def is_closed(self, Y) -> bool:
        return self.full - frozenset(Y) in self.open_set

    @cached_property
    def minimal(self) -> tuple:
        """U_x, the smallest open containing x."""
        out = []
        for x in range(len(self.points)):
            U = self.full
            for V in self.opens:
                if x in V:
                    U = U & V
            out.append(U)
        return tuple(out)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def closure(self, S) -> frozenset:
        S = frozenset(S)
        return frozenset(x for x in range(len(self.points)) if self.minimal[x] & S)

    @cached_property
    def closed_sets(self) -> tuple:
        return tuple(sorted((self.full - U for U in self.opens), key=lambda Y: (len(Y), sorted(Y))))

    def is_irreducible(self, Y) -> bool:
        Y = frozenset(Y)
        if not Y:
            return False
        proper = [Z for Z in self.closed_sets if Z < Y]
        return not any(Z1 | Z2 == Y for Z1 in proper for Z2 in proper)

    @cached_property
    def irreducible_closed(self) -> tuple:
        return tuple(Y for Y in self.closed_sets if self.is_irreducible(Y))

    def maximal_points(self, U) -> list:
        """Points x of U whose minimal open is not inside another's within U."""
        U = frozenset(U)
        return [x for x in sorted(U)
                if not any(y != x and x in self.minimal[y] and self.minimal[x] < self.minimal[y] for y in U)]

    def is_t0(self) -> bool:
        return len(set(self.minimal)) == len(self.points)

    def subspace_opens(self, Y) -> list:
        Y = frozenset(Y)
        return sorted({U & Y for U in self.opens}, key=lambda U: (len(U), sorted(U)))


def _longest_chain(items) -> int:
    items = list(items)
    best = {}
    for Y in sorted(items, key=len):
        best[Y] = max([best[Z] + 1 for Z in best if Z < Y], default=0)
    return max(best.values(), default=-1)


def dimension(X: FinSpace) -> int:
    """Length of the longest strictly increasing chain of irreducible closed subsets."""
    return _longest_chain(X.irreducible_closed)


def closed_chain_length(X: FinSpace) -> int:
    """Length of the longest strict chain of arbitrary closed subsets, the empty set included."""
    return _longest_chain(X.closed_sets)


def sierpinski() -> FinSpace:
    """Points o (open) and c (closed)."""
    return FinSpace.from_opens(("o", "c"), [(), (0,), (0, 1)])


def v_space() -> FinSpace:
    """A generic point g with two closed specializations s1, s2."""
    return FinSpace.from_opens(("g", "s1", "s2"), [(), (0,), (0, 1), (0, 2), (0, 1, 2)])


def point() -> FinSpace:
    return FinSpace.from_opens(("p",), [(), (0,)])


def discrete(n) -> FinSpace:
    pts = tuple(f"p{i}" for i in range(n))
    opens = [U for r in range(n + 1) for U in combinations(range(n), r)]
    return FinSpace.from_opens(pts, opens)


def _posets(n):
    """All partial orders on range(n), as tuples of down-sets including the point."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = []
    for bits in product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for (i, j) in rel):
            continue
        if any((i, k) not in rel for (i, j) in rel for (jj, k) in rel if j == jj and i != k):
            continue
        below = tuple(frozenset([x] + [i for (i, j) in rel if j == x]) for x in range(n))
        seen.append(below)
    return seen


def _canonical(below, n):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted(perm[i] for i in below[x])) + (perm[x],) for x in range(n)))
        if best is None or key < best:
            best = key
    return best


def t0_spaces(max_points=4) -> list:
    """Every T0 topology on 1..max_points points, one per homeomorphism class."""
    out = []
    for n in range(1, max_points + 1):
        classes = {}
        for below in _posets(n):
            key = _canonical(below, n)
            if key not in classes:
                classes[key] = below
        for key in sorted(classes):
            below = classes[key]
            out.append(FinSpace.from_order(tuple(f"x{i}" for i in range(n)), below))
    return out
