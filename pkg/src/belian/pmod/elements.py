"""Generalized elements of a pointed module.

A morphism from a cyclic module is determined by where it sends the
generator, and two such morphisms are equivalent exactly when their images
generate the same cyclic submodule. Classes are named by their least point.
"""
from __future__ import annotations

from dataclasses import dataclass

from .module import ModMorphism, PointedModule
from .limits import image


@dataclass(frozen=True)
class GeneralizedElement:
    point: int
    name: str
    members: frozenset  # all points in the class


def generalized_elements(X: PointedModule) -> list:
    orbits = [X.orbit(x) for x in range(len(X))]
    seen = set()
    out = []
    for x in range(len(X)):
        if x in seen:
            continue
        cls = frozenset(y for y in range(len(X)) if orbits[y] == orbits[x])
        seen |= cls
        out.append(GeneralizedElement(x, X.elements[x], cls))
    return out


def atoms(X: PointedModule) -> list:
    """One morphism from a cyclic module per carrier point: the orbit inclusion."""
    from .module import SubModule
    out = []
    for x in range(len(X)):
        sub = SubModule(X, X.orbit(x))
        out.append(sub.inclusion)
    return out


def element_of(X: PointedModule, x: int) -> GeneralizedElement:
    for g in generalized_elements(X):
        if x in g.members:
            return g
    raise AssertionError("unreachable")


def exact_by_elements(f: ModMorphism, g: ModMorphism) -> bool:
    """im = ker computed on generalized elements of the middle object."""
    classes = generalized_elements(f.target)
    hit = {c.point for c in classes if c.members & f.image_set}
    dead = {c.point for c in classes if c.members & g.kernel_set}
    # a class meets the image iff it is contained in it, since images are submodules
    return hit == dead


def exact_categorically(f: ModMorphism, g: ModMorphism) -> bool:
    """The canonical mono im(f) -> ker(g) is an isomorphism."""
    if not f.image_set <= g.kernel_set:
        return False
    return len(image(f)) == len(g.kernel_set)


def exact_by_sets(f: ModMorphism, g: ModMorphism) -> bool:
    return f.image_set == g.kernel_set
