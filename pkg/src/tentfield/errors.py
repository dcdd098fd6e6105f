from __future__ import annotations

from dataclasses import dataclass


class TentfieldError(RuntimeError):
    pass


class InvalidArgumentError(TentfieldError, ValueError):
    pass


class InvalidModulusError(InvalidArgumentError):
    pass


class DomainError(TentfieldError, ValueError):
    pass


class ConsistencyError(TentfieldError):
    """A computed object contradicts another one; this always indicates a bug."""


@dataclass(eq=False)
class PrecisionError(TentfieldError):
    message: str
    target: float
    candidates: tuple[float, ...] = ()

    def __str__(self) -> str:
        if not self.candidates:
            return f"{self.message} (target={self.target!r})"
        found = ", ".join(repr(c) for c in self.candidates)
        return f"{self.message} (target={self.target!r}, candidates={found})"
