"""Resolutions by iterated embedding and cokernel, lifts of morphisms over
them, and the comparison of two resolutions of the same object."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CapExceeded, ValidationError
from .category import MODULES

DEFAULT_CAP = 8


@dataclass
class Resolution:
    """0 -> X -> I^0 -> I^1 -> ... with d^p = m^(p+1) o c^p.

    ``cokernels[p]`` is c^p: I^p -> Q^p, the cokernel of the map into I^p, and
    ``monos[p]`` is m^(p+1): Q^p -> I^(p+1)."""
    obj: object
    cat: object
    tag: str
    augmentation: object
    objects: list = field(default_factory=list)
    embeddings: list = field(default_factory=list)
    cokernels: list = field(default_factory=list)
    monos: list = field(default_factory=list)
    diffs: list = field(default_factory=list)
    complete: bool = True

    def __len__(self):
        return len(self.objects)

    def I(self, p):
        return self.objects[p] if 0 <= p < len(self.objects) else None

    def sizes(self):
        return [self.cat.size(I) for I in self.objects]

    def check(self) -> dict:
        """Strong exactness of the augmented complex, joint by joint."""
        cat = self.cat
        out = {"augmentation mono": cat.is_mono(self.augmentation)}
        maps = [self.augmentation] + list(self.diffs)
        for k, d in enumerate(self.diffs):
            out[f"d{k} strong"] = cat.is_strong(d)
        for k in range(len(maps) - 1):
            out[f"exact at I{k}"] = cat.exact(maps[k], maps[k + 1])
        if self.complete and self.objects:
            # exact at the last object: the last cokernel is zero
            out[f"exact at I{len(self.objects) - 1}"] = cat.is_zero_object(self.cokernels[-1].target)
        return out

    def is_strong_exact(self) -> bool:
        return all(self.check().values())


def resolve(X, provider, cat=MODULES, cap=DEFAULT_CAP, tag="injective") -> Resolution:
    """Embed, take the cokernel, repeat until the cokernel vanishes.

    Raises CapExceeded, carrying the partial resolution, when more than
    ``cap + 1`` objects would be needed."""
    e = provider(X)
    R = Resolution(X, cat, tag, e.mono)
    R.objects.append(e.target)
    R.embeddings.append(e)
    c = cat.cokernel(e.mono)
    R.cokernels.append(c)
    while not cat.is_zero_object(c.target):
        p = len(R.objects) - 1
        if p + 1 > cap:
            R.complete = False
            raise CapExceeded(f"resolution needs more than {cap + 1} terms", partial=R)
        e = provider(c.target)
        R.objects.append(e.target)
        R.embeddings.append(e)
        R.monos.append(e.mono)
        R.diffs.append(e.mono @ c)
        c = cat.cokernel(e.mono)
        R.cokernels.append(c)
    return R


def injective_resolution(X, provider, cat=MODULES, cap=DEFAULT_CAP) -> Resolution:
    return resolve(X, provider, cat, cap, "injective")


def lift_over_resolution(f, RX: Resolution, RY: Resolution) -> list:
    """Maps f^p: I_X^p -> I_Y^p commuting with augmentations and differentials.
    Only the embeddings of RY are used, so RX may be any resolution."""
    cat = RX.cat
    out = []
    if not RY.objects:
        return out
    g = RY.augmentation @ f
    fp = RY.embeddings[0].extend(RX.augmentation, g)
    out.append(fp)
    for p in range(len(RX.objects)):
        if p + 1 >= len(RX.objects):
            break
        if p + 1 >= len(RY.objects):
            out.append(cat.zero_map(RX.objects[p + 1], RY.cokernels[-1].target))
            continue
        u = cat.factor(RX.cokernels[p], RY.diffs[p] @ fp)
        fp = RY.embeddings[p + 1].extend(RX.monos[p], u)
        out.append(fp)
    return out


def check_lift(f, RX: Resolution, RY: Resolution, maps) -> bool:
    cat = RX.cat
    if maps and not cat.same(maps[0] @ RX.augmentation, RY.augmentation @ f):
        return False
    for p in range(len(RX.diffs)):
        left = maps[p + 1] @ RX.diffs[p]
        if p < len(RY.diffs):
            right = RY.diffs[p] @ maps[p]
        else:
            right = cat.zero_map(RX.objects[p], maps[p + 1].target)
        if not cat.same(left, right):
            return False
    return True


def require_lift(f, RX, RY):
    maps = lift_over_resolution(f, RX, RY)
    if not check_lift(f, RX, RY, maps):
        raise ValidationError("lift does not commute")
    return maps
