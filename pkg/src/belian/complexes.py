"""Bounded complexes of pointed modules and their cohomology.

Cohomology is indexed at the kernel's degree: H^i = ker d^i / im d^(i-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import StructuralError, ValidationError, Violation
from .pmod.module import ModMorphism, SubModule, collapse, zero_module, zero_morphism
from .pmod.limits import is_strong


@dataclass(frozen=True, eq=False)
class Complex:
    monoid: object
    lo: int
    objects: tuple  # degrees lo .. lo + len - 1
    diffs: tuple  # diffs[k]: objects[k] -> objects[k + 1]
    _zero: object = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.diffs) != max(len(self.objects) - 1, 0):
            raise StructuralError("need one differential between each pair of consecutive objects")
        for k, d in enumerate(self.diffs):
            if d.source != self.objects[k] or d.target != self.objects[k + 1]:
                raise StructuralError(f"differential in degree {self.lo + k} has the wrong endpoints")
        if self._zero is None:
            object.__setattr__(self, "_zero", zero_module(self.monoid))

    @property
    def hi(self) -> int:
        return self.lo + len(self.objects) - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def obj(self, i):
        if self.lo <= i <= self.hi:
            return self.objects[i - self.lo]
        return self._zero

    def d(self, i) -> ModMorphism:
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return zero_morphism(self.obj(i), self.obj(i + 1))

    def check(self) -> list:
        out = []
        for i in range(self.lo - 1, self.hi + 1):
            if not (self.d(i + 1) @ self.d(i)).is_zero():
                out.append(Violation("d^2", f"d^{i + 1} o d^{i} is not zero", (i,)))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("not a complex", bad)
        return self


def complex_from(objects, diffs, lo=0, monoid=None) -> Complex:
    objects = tuple(objects)
    monoid = objects[0].monoid if monoid is None else monoid
    return Complex(monoid, lo, objects, tuple(diffs)).require()


def augmented(X, aug, C: Complex) -> Complex:
    """0 -> X -> C^lo -> ... placed with X in degree lo - 1."""
    return Complex(C.monoid, C.lo - 1, (X,) + C.objects, (aug,) + C.diffs)


@dataclass(frozen=True, eq=False)
class Cohomology:
    module: object
    cycles: SubModule  # ker d^i inside C^i
    projection: ModMorphism  # cycles.module -> module

    def class_of(self, x: int) -> int:
        """Class of a cycle given by its index in C^i."""
        return self.projection.table[self.cycles.order.index(x)]

    def representative(self, c: int) -> int:
        """Least cycle (as an index into C^i) in class c."""
        for k, v in enumerate(self.projection.table):
            if v == c:
                return self.cycles.order[k]
        raise AssertionError("empty class")


def cohomology(C: Complex, i: int) -> Cohomology:
    d_out = C.d(i)
    d_in = C.d(i - 1)
    Z = SubModule(C.obj(i), d_out.kernel_set)
    pos = {m: k for k, m in enumerate(Z.order)}
    bounds = [pos[m] for m in d_in.image_set]
    q = collapse(Z.module, bounds)
    return Cohomology(q.target, Z, q)


def is_exact_at(C: Complex, i: int) -> bool:
    set_level = C.d(i - 1).image_set == C.d(i).kernel_set
    via_h = cohomology(C, i).module.is_zero()
    assert set_level == via_h
    return set_level


def is_exact(C: Complex) -> bool:
    return all(is_exact_at(C, i) for i in range(C.lo, C.hi + 1))


def is_strong_complex(C: Complex) -> bool:
    return all(is_strong(d)[0] for d in C.diffs)


@dataclass(frozen=True, eq=False)
class ComplexMap:
    source: Complex
    target: Complex
    maps: dict  # degree -> ModMorphism; missing degrees are zero

    def at(self, i) -> ModMorphism:
        if i in self.maps:
            return self.maps[i]
        return zero_morphism(self.source.obj(i), self.target.obj(i))

    def check(self) -> list:
        out = []
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi) + 1
        for i in range(lo, hi):
            left = self.at(i + 1) @ self.source.d(i)
            right = self.target.d(i) @ self.at(i)
            if left.table != right.table:
                out.append(Violation("square", f"square in degree {i} does not commute", (i,)))
        return out

    def require(self):
        bad = self.check()
        if bad:
            raise ValidationError("not a map of complexes", bad)
        return self

    def __matmul__(self, other: "ComplexMap") -> "ComplexMap":
        degs = set(self.maps) | set(other.maps)
        return ComplexMap(other.source, self.target, {i: self.at(i) @ other.at(i) for i in degs})


def identity_map(C: Complex) -> ComplexMap:
    return ComplexMap(C, C, {i: C.obj(i).identity() for i in C.degrees()})


def map_cohomology(f: ComplexMap, i: int) -> ModMorphism:
    f.require()
    HS = cohomology(f.source, i)
    HT = cohomology(f.target, i)
    fi = f.at(i)
    table = [None] * len(HS.module)
    for k, x in enumerate(HS.cycles.order):
        c = HS.projection.table[k]
        v = HT.class_of(fi.table[x])
        if table[c] is None:
            table[c] = v
        elif table[c] != v:
            raise ValidationError("induced map on cohomology is not well defined")
    return ModMorphism(HS.module, HT.module, tuple(table))
