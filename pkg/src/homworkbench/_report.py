"""Verdicts with exact witnesses, shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class Witness:
    """A failing basis tuple.

    ``indices`` are 1-based basis labels; ``residual`` is the flattened
    exact value of ``LHS - RHS`` at that tuple.
    """

    clause: str
    indices: tuple[int, ...]
    residual: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "clause": self.clause,
            "indices": list(self.indices),
            "residual": [str(r) for r in self.residual],
        }


@dataclass(frozen=True)
class Report:
    check: str
    clauses: tuple[str, ...]
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.ok

    def passed(self, clause: str) -> bool:
        if clause not in self.clauses:
            raise KeyError(f"{self.check} has no clause {clause!r}")
        return not any(w.clause == clause for w in self.witnesses)

    def failing(self) -> list[str]:
        return [c for c in self.clauses if not self.passed(c)]

    def first(self, clause: str | None = None) -> Witness | None:
        for w in self.witnesses:
            if clause is None or w.clause == clause:
                return w
        return None

    def to_dict(self, max_witnesses: int | None = None) -> dict:
        shown = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "check": self.check,
            "status": "ok" if self.ok else "fail",
            "clauses": {c: self.passed(c) for c in self.clauses},
            "witness_count": len(self.witnesses),
            "witnesses": [w.to_dict() for w in shown],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        if self.ok:
            return f"{self.check}: ok"
        bad = ", ".join(self.failing())
        w = self.first()
        where = ",".join(map(str, w.indices))
        res = ", ".join(map(str, w.residual))
        return f"{self.check}: FAIL ({bad}); first witness {w.clause} at ({where}) residual ({res})"


@dataclass
class ReportBuilder:
    """Accumulates clauses in a fixed order."""

    check: str
    clauses: list[str] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def residual(self, clause: str, res: np.ndarray, nidx: int) -> "ReportBuilder":
        """Record a residual grid whose first ``nidx`` axes index the basis tuple."""
        self.clauses.append(clause)
        res = np.asarray(res, dtype=object)
        if res.ndim < nidx:
            raise ValueError("residual has fewer axes than indices")
        lead = res.shape[:nidx]
        flat = res.reshape(lead + (-1,))
        for idx in np.ndindex(*lead):
            vec = flat[idx]
            if any(v != 0 for v in vec):
                self.witnesses.append(
                    Witness(clause, tuple(i + 1 for i in idx), tuple(Fraction(v) for v in vec))
                )
        return self

    def flag(self, clause: str, ok: bool, indices=(), residual=()) -> "ReportBuilder":
        self.clauses.append(clause)
        if not ok:
            self.witnesses.append(
                Witness(clause, tuple(indices), tuple(Fraction(v) for v in residual))
            )
        return self

    def include(self, report: Report, prefix: str | None = None) -> "ReportBuilder":
        """Fold a sub-report in, renaming its clauses ``prefix:clause``."""
        def rename(c):
            return f"{prefix}:{c}" if prefix else c

        self.clauses.extend(rename(c) for c in report.clauses)
        self.witnesses.extend(
            Witness(rename(w.clause), w.indices, w.residual) for w in report.witnesses
        )
        self.notes.extend(report.notes)
        return self

    def note(self, text: str) -> "ReportBuilder":
        self.notes.append(text)
        return self

    def build(self) -> Report:
        return Report(self.check, tuple(self.clauses), tuple(self.witnesses), tuple(self.notes))


class PreconditionFailed(ValueError):
    """An operation's hypotheses do not hold; ``report`` says which."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message if report is None else f"{message}: {report.summary()}")
        self.report = report


class ConstructionRefused(PreconditionFailed):
    """A builder declined to build because its inputs failed a check."""
