from dataclasses import dataclass, field


@dataclass
class SuiteResult:
    """
    SuiteResult is the outcome of one invariant suite: how many cases ran, the worst residual seen
    against its tolerance and up to a handful of failing cases for diagnosis.
    """

    name: str
    cases: int = 0
    max_residual: float = 0.0
    tolerance: float = 0.0
    failures: int = 0
    examples: list = field(default_factory=list)

    MAX_EXAMPLES = 5

    def record(self, residual: float, passed: bool, case: dict):
        self.cases += 1
        self.max_residual = max(self.max_residual, float(residual))
        if not passed:
            self.failures += 1
            if len(self.examples) < self.MAX_EXAMPLES:
                self.examples.append(dict(case, residual=float(residual)))

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "failing_examples": self.examples,
        }


@dataclass
class VerificationReport:
    grid_steps: int
    samples: int
    seed: int
    suites: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    def suite(self, name: str) -> SuiteResult:
        for suite in self.suites:
            if suite.name == name:
                return suite
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "grid_steps": self.grid_steps,
            "samples": self.samples,
            "seed": self.seed,
            "suites": [suite.to_dict() for suite in self.suites],
        }
