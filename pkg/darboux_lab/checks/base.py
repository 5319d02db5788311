"""Check registry: decorated measurement functions and their pass/fail results."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Literal, TypeVar

from darboux_lab.darboux.transform import DarbouxModel, build_darboux
from darboux_lab.models.oscillator import TrajectorySpec, ValidatedModel
from darboux_lab.models.scenario import Scenario
from darboux_lab.utils.errors import DarbouxLabError
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D

logger = get_logger(__name__)

Comparison = Literal["below", "above"]

T = TypeVar("T")


class CheckSkipped(Exception):
    """Raised by a check whose prerequisites are absent from the scenario."""


@dataclass(frozen=True)
class CheckResult:
    """Measured value of one check against its tolerance."""

    name: str
    suite: str
    passed: bool
    measured: float
    tolerance: float
    comparison: Comparison
    detail: str = ""
    expected_failure: bool = False
    skipped: bool = False
    seconds: float = 0.0

    def to_dict(self) -> dict:
        measured = self.measured if math.isfinite(self.measured) else None
        return {
            "name": self.name,
            "suite": self.suite,
            "passed": self.passed,
            "measured": measured,
            "tolerance": self.tolerance,
            "comparison": self.comparison,
            "detail": self.detail,
            "expected_failure": self.expected_failure,
            "skipped": self.skipped,
            "seconds": round(self.seconds, 4),
        }


@dataclass
class CheckContext:
    """Scenario data shared by the checks of one verification run."""

    scenario: Scenario
    _darboux: dict[int, DarbouxModel] = field(default_factory=dict, repr=False)
    _memo: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def model(self) -> ValidatedModel:
        return self.scenario.model

    @property
    def trajectories(self) -> list[TrajectorySpec]:
        return self.scenario.trajectories

    @property
    def grid(self) -> Grid1D:
        return self.scenario.grid

    @cached_property
    def fine_grid(self) -> Grid1D:
        """Scenario grid at half the spacing."""
        return self.scenario.grid.refined()

    @property
    def i0(self) -> float:
        return self.scenario.i0

    @property
    def t0(self) -> float:
        return self.model.t0

    @property
    def times(self) -> tuple[float, float, float]:
        return (self.t0, self.t0 + 1.3, self.t0 + 6.0)

    def darboux(self, index: int = 0) -> DarbouxModel:
        """Certified transformation for trajectory ``index``, built once.

        Raises:
            CheckSkipped: If the scenario has no darboux section.
        """
        if self.scenario.darboux is None:
            raise CheckSkipped("scenario has no darboux section")
        if index not in self._darboux:
            self._darboux[index] = build_darboux(
                self.model,
                self.scenario.darboux,
                self.trajectories[index],
                self.scenario.chi_max,
            )
        return self._darboux[index]

    def cached(self, key: str, factory: Callable[[], T]) -> T:
        """Value shared by several checks of one run, computed on first use."""
        if key not in self._memo:
            logger.debug(f"Computing shared check data {key!r}")
            self._memo[key] = factory()
        return self._memo[key]

    def grid_for(self, dm: DarbouxModel, t: float, fine: bool = False) -> Grid1D:
        """Scenario grid, or a grid clipped to the certified chi window at time t."""
        grid = self.fine_grid if fine else self.grid
        if math.isinf(dm.window):
            return grid
        lo, hi = dm.x_window(t)
        return Grid1D.around(0.5 * (lo + hi), 0.5 * (hi - lo), grid.spacing)


@dataclass(frozen=True)
class Check:
    """A named measurement compared against a tolerance.

    ``expected_error`` marks a negative control that passes when the measurement
    raises that exception.
    """

    name: str
    func: Callable[[CheckContext], float]
    tolerance: float
    comparison: Comparison = "below"
    expected_failure: bool = False
    expected_error: type[Exception] | None = None

    def run(self, ctx: CheckContext, suite: str) -> CheckResult:
        start = time.perf_counter()
        detail = ""
        skipped = False
        try:
            measured = float(self.func(ctx))
            if self.comparison == "below":
                passed = measured < self.tolerance
            else:
                passed = measured > self.tolerance
            if self.expected_error is not None:
                passed = False
                detail = f"expected {self.expected_error.__name__}, measurement succeeded"
        except CheckSkipped as e:
            measured, passed, skipped, detail = math.nan, True, True, str(e)
        except DarbouxLabError as e:
            measured = math.nan
            passed = self.expected_error is not None and isinstance(e, self.expected_error)
            detail = f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        result = CheckResult(
            name=self.name,
            suite=suite,
            passed=passed,
            measured=measured,
            tolerance=self.tolerance,
            comparison=self.comparison,
            detail=detail,
            expected_failure=self.expected_failure or self.expected_error is not None,
            skipped=skipped,
            seconds=elapsed,
        )
        logger.debug(
            f"{suite}.{self.name}: {result.passed} ({measured:.3e} vs {self.tolerance:.1e})"
        )
        return result


def check(
    tolerance: float,
    comparison: Comparison = "below",
    expected_failure: bool = False,
    expected_error: type[Exception] | None = None,
) -> Callable[[Callable[[CheckContext], float]], Check]:
    """Turn a measurement function into a Check named after the function."""

    def decorator(func: Callable[[CheckContext], float]) -> Check:
        return Check(
            name=func.__name__,
            func=func,
            tolerance=tolerance,
            comparison=comparison,
            expected_failure=expected_failure,
            expected_error=expected_error,
        )

    return decorator
