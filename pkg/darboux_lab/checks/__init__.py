"""Verification suites over a scenario."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from darboux_lab.checks.base import Check, CheckContext, CheckResult, CheckSkipped, check
from darboux_lab.checks.classical_checks import classical_checks
from darboux_lab.checks.coherent_checks import coherent_checks
from darboux_lab.checks.darboux_checks import darboux_checks
from darboux_lab.checks.modes_checks import modes_checks
from darboux_lab.models.scenario import Scenario
from darboux_lab.utils.errors import ConfigError
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

SUITES: dict[str, list[Check]] = {
    "classical": classical_checks,
    "modes": modes_checks,
    "darboux": darboux_checks,
    "coherent": coherent_checks,
}


@dataclass
class SuiteReport:
    """Results of one verification run."""

    scenario: str
    suite: str
    results: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "suite": self.suite,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [result.to_dict() for result in self.results],
        }


def list_suites() -> list[str]:
    return [*SUITES, "all"]


def _run_checks(suite: str, scenario: Scenario) -> list[CheckResult]:
    logger.info(f"Running {suite} checks ({len(SUITES[suite])})")
    ctx = CheckContext(scenario)
    return [item.run(ctx, suite) for item in SUITES[suite]]


def run_suite(name: str, scenario: Scenario, threads: int = 1) -> SuiteReport:
    """Run one suite, or every suite for ``name="all"``, against a scenario.

    Check failures are recorded in the report, never raised; the caller decides
    whether a failed report is an error. Suites run concurrently when ``threads``
    is above one, each with its own context; results keep the suite order.

    Args:
        name: Suite name from ``list_suites()``.
        scenario: Validated scenario.
        threads: Worker threads over suites.

    Returns:
        Report with one result per check.

    Raises:
        ConfigError: If the suite name is unknown.
    """
    if name == "all":
        selected = list(SUITES)
    elif name in SUITES:
        selected = [name]
    else:
        raise ConfigError(f"Unknown suite {name!r}; available: {', '.join(list_suites())}")

    report = SuiteReport(scenario=scenario.name, suite=name)
    start = time.perf_counter()
    if threads <= 1 or len(selected) == 1:
        batches = [_run_checks(suite, scenario) for suite in selected]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(selected))) as pool:
            batches = list(pool.map(lambda suite: _run_checks(suite, scenario), selected))
    for batch in batches:
        report.results.extend(batch)
    report.seconds = time.perf_counter() - start

    failed = len(report.failures)
    logger.info(
        f"Suite {name}: {len(report.results) - failed} passed, {failed} failed "
        f"in {report.seconds:.1f} s"
    )
    return report


__all__ = [
    "Check",
    "CheckContext",
    "CheckResult",
    "CheckSkipped",
    "SUITES",
    "SuiteReport",
    "check",
    "list_suites",
    "run_suite",
]
