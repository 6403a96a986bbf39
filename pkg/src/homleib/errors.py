"""Exception types and the small verdict record shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class HomLeibError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(HomLeibError, ValueError):
    """An operation was called on input that violates its precondition."""


class TheoremViolation(HomLeibError, AssertionError):
    """A computed object failed a property that the theory guarantees.

    Raised loudly: either the input is not what it claims to be, or the
    engine has a bug.
    """


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check.

    ``witness`` holds the first violating basis indices (and, for action
    axioms, the axiom letter in ``tag``) when ``ok`` is false.
    """

    ok: bool
    witness: Any = None
    tag: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def require(self, what: str) -> "Verdict":
        """Raise :class:`TheoremViolation` unless the check passed."""
        if not self.ok:
            detail = f" [{self.tag}]" if self.tag else ""
            raise TheoremViolation(f"{what} failed{detail}: witness {self.witness!r}")
        return self


PASS = Verdict(True)


class Report:
    """Named verdicts in insertion order, plus free-form numeric data."""

    def __init__(self, title: str = ""):
        self.title = title
        self.checks: list[tuple[str, Verdict]] = []
        self.data: dict[str, Any] = {}

    def add(self, name: str, result, witness: Any = None) -> Verdict:
        v = result if isinstance(result, Verdict) else Verdict(bool(result), None if result else witness)
        self.checks.append((name, v))
        return v

    def extend(self, other: "Report", prefix: str = "") -> None:
        for name, v in other.checks:
            self.checks.append((prefix + name, v))
        for k, val in other.data.items():
            self.data[prefix + k] = val

    @property
    def ok(self) -> bool:
        return all(v.ok for _, v in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Verdict:
        for n, v in self.checks:
            if n == name:
                return v
        raise KeyError(name)

    def failures(self) -> list[tuple[str, Verdict]]:
        return [(n, v) for n, v in self.checks if not v.ok]

    def require(self, what: str = "") -> "Report":
        bad = self.failures()
        if bad:
            names = ", ".join(n for n, _ in bad)
            raise TheoremViolation(f"{what or self.title}: failed {names}; first witness {bad[0][1].witness!r}")
        return self

    def __repr__(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures())} failed"
        return f"Report({self.title!r}, {len(self.checks)} checks, {status})"
