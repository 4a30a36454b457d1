"""Category adapters: the few operations the resolution engine needs,
implemented for pointed modules here and for sheaves in the sheaf package."""
from __future__ import annotations

from ..pmod.module import zero_morphism
from ..pmod.limits import cokernel, product, strong_witness
from .snake import induced_on_quotients


class ModuleCategory:
    name = "modules"

    def cokernel(self, f):
        return cokernel(f)

    def factor(self, p, g):
        """u with u o p == g, for p a cokernel projection."""
        return induced_on_quotients(g, p, g.target.identity())

    def identity(self, X):
        return X.identity()

    def zero_map(self, X, Y):
        return zero_morphism(X, Y)

    def is_zero_object(self, X) -> bool:
        return len(X) == 1

    def is_zero_map(self, f) -> bool:
        return f.is_zero()

    def same(self, f, g) -> bool:
        return f.table == g.table

    def is_mono(self, f) -> bool:
        return f.is_injective()

    def is_strong(self, f) -> bool:
        return strong_witness(f) is None

    def exact(self, f, g) -> bool:
        return f.image_set == g.kernel_set

    def product(self, objs):
        P = product(list(objs))
        return P.module, P.projections, lambda maps, src: P.mediate_from(src, maps)

    def size(self, X) -> int:
        return len(X)


MODULES = ModuleCategory()
