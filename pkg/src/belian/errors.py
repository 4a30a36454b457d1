"""Exception hierarchy shared by every subpackage.

Each error carries a machine-readable ``code`` and an optional ``location``
(a file path and/or JSON pointer) so the CLI can report them uniformly.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class BelianError(Exception):
    code = "error"

    def __init__(self, message: str, *, code: str | None = None, location: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.location = location

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.location:
            out["location"] = self.location
        return out


class StructuralError(BelianError):
    """Malformed input: tables of the wrong shape, indices out of range, unknown names."""

    code = "structural"


class SizeGuardError(StructuralError):
    code = "size-guard"


class ValidationError(BelianError):
    """Well-formed input that violates an algebraic law."""

    code = "validation"

    def __init__(self, message: str, violations=(), **kw):
        super().__init__(message, **kw)
        self.violations = list(violations)

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["violations"] = [v.to_dict() for v in self.violations]
        return out


class NotStrongError(BelianError):
    code = "not-strong"


class CapExceeded(BelianError):
    code = "cap-exceeded"

    def __init__(self, message: str, partial=None, **kw):
        super().__init__(message, **kw)
        self.partial = partial


@dataclass(frozen=True)
class Violation:
    law: str
    message: str
    witness: tuple = field(default=())

    def to_dict(self) -> dict:
        return {"law": self.law, "message": self.message, "witness": list(self.witness)}
