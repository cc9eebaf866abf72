"""Structured pass/fail verdicts with exact, re-checkable evidence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

KINDS = ("window_inclusion", "orthogonality", "generation_dag", "duality_bijection",
         "mutation_pair", "schober_MIT", "witness_independence", "mainprop", "equivariance",
         "perverse_axioms")

PASS, FAIL = "pass", "fail"


@dataclass
class Certificate:
    kind: str
    verdict: str
    evidence: list = field(default_factory=list)
    children: list = field(default_factory=list)
    label: str = ""

    @classmethod
    def build(cls, kind: str, ok: bool, evidence=None, children=None, label="") -> "Certificate":
        children = list(children or [])
        ok = ok and all(c.passed for c in children)
        return cls(kind, PASS if ok else FAIL, list(evidence or []), children, label)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def failures(self) -> list["Certificate"]:
        """Leaf-most failing certificates."""
        if self.passed:
            return []
        below = [f for c in self.children for f in c.failures()]
        return below or [self]

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "verdict": self.verdict, "evidence": to_jsonable(self.evidence)}
        if self.label:
            out["label"] = self.label
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


def to_jsonable(x: Any):
    """Fractions become ``"p/q"`` strings; tuples become lists; sets are sorted."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")
