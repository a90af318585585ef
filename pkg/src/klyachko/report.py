"""Verification reports shared by every suite and serialized by the CLI."""

from __future__ import annotations

import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .perm import Permutation

MAX_RECORDED_FAILURES = 50


def fmt(x) -> str:
    """Exact values render as ``p/q`` strings, never floats."""
    if isinstance(x, Permutation):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(fmt(v) for v in x) + ")"
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        num, den = int(x.numerator), int(x.denominator)
        return str(num) if den == 1 else f"{num}/{den}"
    return str(x)


@dataclass
class Failure:
    id: str
    witness: Dict[str, str] = field(default_factory=dict)


@dataclass
class VerificationReport:
    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    mode: str = "symbolic"
    checks_run: int = 0
    failures: List[Failure] = field(default_factory=list)
    failure_count: int = 0
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, check_id: str, ok: bool, witness=None) -> bool:
        """Count one check; keep the witness of a failure (callable witnesses are built lazily)."""
        self.checks_run += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                if callable(witness):
                    witness = witness()
                self.failures.append(Failure(check_id, {k: fmt(v) for k, v in (witness or {}).items()}))
        return ok

    def absorb(self, other: "VerificationReport", prefix: str = "") -> None:
        self.checks_run += other.checks_run
        self.failure_count += other.failure_count
        for f in other.failures:
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(Failure(prefix + f.id, f.witness))

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "mode": self.mode,
            "checks_run": self.checks_run,
            "failures": [{"id": f.id, "witness": f.witness} for f in self.failures],
            "elapsed_ms": self.elapsed_ms if timing else None,
            "verdict": self.verdict,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        lines = [f"suite {self.suite} {json.dumps(self.params, sort_keys=True)} mode={self.mode}"]
        lines.append(f"  checks: {self.checks_run}  failures: {self.failure_count}  verdict: {self.verdict.upper()}")
        if self.failures:
            first = self.failures[0]
            lines.append(f"  first counterexample: {first.id}")
            for k, v in first.witness.items():
                lines.append(f"    {k} = {v}")
        if self.elapsed_ms is not None:
            lines.append(f"  elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)


def randomized_mode(points: int, seed: int) -> str:
    return f"randomized(points={points}, seed={seed})"


def default_seed() -> int:
    return int(os.environ.get("KLYACHKO_SEED", "0"))
