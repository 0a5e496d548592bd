"""Binary linear models and the constraint type shared by formulations and separators."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

SENSES = ("<=", ">=", "==")


@dataclass(frozen=True)
class Constraint:
    idx: tuple[int, ...]
    coef: tuple[float, ...]
    sense: str
    rhs: float
    family: str = "static"

    @classmethod
    def build(cls, terms: Iterable[tuple[int, float]], sense: str, rhs: float, family: str = "static") -> "Constraint":
        if sense not in SENSES:
            raise ValueError(f"unknown sense {sense!r}")
        acc: dict[int, float] = {}
        for i, a in terms:
            acc[i] = acc.get(i, 0.0) + a
        items = sorted((i, a) for i, a in acc.items() if a != 0)
        return cls(tuple(i for i, _ in items), tuple(a for _, a in items), sense, rhs, family)

    def activity(self, x: Sequence[float]) -> float:
        return float(sum(a * x[i] for i, a in zip(self.idx, self.coef)))

    def violation(self, x: Sequence[float]) -> float:
        """Amount by which ``x`` violates the row (<= 0 when satisfied)."""
        act = self.activity(x)
        if self.sense == "<=":
            return act - self.rhs
        if self.sense == ">=":
            return self.rhs - act
        return abs(act - self.rhs)

    def satisfied(self, x: Sequence[float], tol: float = 1e-9) -> bool:
        return self.violation(x) <= tol

    def bounds(self) -> tuple[float, float]:
        if self.sense == "<=":
            return -math.inf, self.rhs
        if self.sense == ">=":
            return self.rhs, math.inf
        return self.rhs, self.rhs

    def row_key(self) -> tuple:
        """Identity of the left-hand side, for merging rows that differ only in bounds."""
        return (self.idx, self.coef)

    def key(self) -> tuple:
        return (self.idx, self.coef, self.sense, self.rhs)


@dataclass
class Model:
    sense: str  # "min" | "max"
    obj: list[int] = field(default_factory=list)
    names: list = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    fixings: dict[int, int] = field(default_factory=dict)

    @property
    def n_vars(self) -> int:
        return len(self.obj)

    def add_var(self, name, obj: int) -> int:
        self.obj.append(int(obj))
        self.names.append(name)
        return len(self.obj) - 1

    def add(self, con: Constraint) -> None:
        self.constraints.append(con)

    def objective(self, x: Sequence[float]) -> float:
        return float(np.dot(self.obj, x))

    def static_violations(self, x: Sequence[float], tol: float = 1e-9) -> list[Constraint]:
        bad = [c for c in self.constraints if not c.satisfied(x, tol)]
        for j, v in self.fixings.items():
            if abs(x[j] - v) > tol:
                bad.append(Constraint((j,), (1.0,), "==", float(v), "fixing"))
        return bad

    def count(self, family: str) -> int:
        return sum(1 for c in self.constraints if c.family == family)
