"""Report records shared by the verifiers, suites, and the CLI.

Sampling verifiers are falsifiers, not provers: a passing report means "no
violation found in N trials", never a proof. Messages are worded accordingly
and every report carries the seed that reproduces it.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    trials: int = 0
    seed: int | None = None
    witness: str | None = None
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "witness": self.witness,
            "message": self.message,
        }

    def to_text(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.message}"
        if self.witness is not None:
            line += f" [witness: {self.witness}]"
        return line


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (trials={self.trials}, seed={self.seed})"]
        lines.extend("  " + c.to_text() for c in self.checks)
        lines.append(
            f"result: {'all checks passed' if self.passed else 'VIOLATIONS FOUND'}"
        )
        return "\n".join(lines)


def no_violation_message(trials: int) -> str:
    return f"no violation found in {trials} trials"
