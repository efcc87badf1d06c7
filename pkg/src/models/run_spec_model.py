from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from common.custom_exceptions import DomainValidationException


class Command(str, Enum):
    DECOMPOSE = "decompose"
    COUNTER = "counter"
    MEASUREMENT_FOR = "measurement-for"
    DECOMPOSITION_FOR = "decomposition-for"
    PURIFY = "purify"
    MEASURE = "measure"
    DISTANT_CHECK = "distant-check"
    PATTERN = "pattern"
    SIMULATE = "simulate"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


REQUIRED_PARAMS = {
    Command.DECOMPOSE: ("r", "p", "theta"),
    Command.COUNTER: ("r", "p", "theta"),
    Command.MEASUREMENT_FOR: ("r", "p", "theta"),
    Command.DECOMPOSITION_FOR: ("r",),
    Command.PURIFY: ("r",),
    Command.MEASURE: ("r",),
    Command.DISTANT_CHECK: ("r",),
    Command.PATTERN: ("x_min", "x_max", "n_grid", "separation", "width", "tilt"),
    Command.SIMULATE: ("r", "n", "seed"),
    Command.VERIFY: ("grid_steps", "samples", "seed"),
}

CSV_COMMANDS = (Command.PATTERN, Command.SIMULATE)
# commands that take a (q, λ) measurement, given either directly or as an analyzer angle
MEASUREMENT_COMMANDS = (Command.DECOMPOSITION_FOR, Command.MEASURE, Command.DISTANT_CHECK, Command.SIMULATE)


@dataclass(frozen=True)
class RunSpec:
    """
    RunSpec is one fully parsed invocation: the command, its parameters keyed by name,
    the artifact format and an optional output file.
    """

    command: Command
    params: dict = field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[str] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "command", Command(self.command))
            object.__setattr__(self, "output_format", OutputFormat(self.output_format))
        except ValueError as ex:
            raise DomainValidationException(str(ex)) from ex
        missing = [name for name in REQUIRED_PARAMS[self.command] if self.params.get(name) is None]
        if missing:
            raise DomainValidationException(f"{self.command.value} requires parameters: {', '.join(missing)}")
        if self.command in MEASUREMENT_COMMANDS:
            has_q = self.params.get("q") is not None
            has_analyzer = self.params.get("analyzer_deg") is not None
            if has_q == has_analyzer:
                raise DomainValidationException(f"{self.command.value} requires exactly one of q and analyzer_deg")
        if self.output_format is OutputFormat.CSV and self.command not in CSV_COMMANDS:
            raise DomainValidationException(f"{self.command.value} only emits json")

    def param(self, name: str, default=None):
        value = self.params.get(name)
        return default if value is None else value
