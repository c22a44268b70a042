"""In-place case testing for callables, with per-call wall-clock timing.

Cases are executed right where a function is defined (behind an
environment toggle, so production imports stay free of test work), each
one timed over the entire call cycle with a monotonic clock. A failing
case never aborts the suite; reports carry the outcome and duration.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .contract import InfoFn, SignatureMismatchError, normalize

ENV_TOGGLE = "INFOFN_TEST"

_UNSET = object()


@dataclass(frozen=True)
class Case:
    """One declared invocation: arguments plus the expected outcome.

    At most one of `expect` / `expect_error` may be set; with neither,
    the case only demands that the call does not raise. The default
    comparator is plain structural equality with exact numerics.
    """

    args: Mapping[str, Any] = field(default_factory=dict)
    expect: Any = _UNSET
    expect_error: type[BaseException] | None = None
    comparator: Callable[[Any, Any], bool] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", dict(self.args))
        if self.expect is not _UNSET and self.expect_error is not None:
            raise ValueError("a case may set expect or expect_error, not both")


@dataclass(frozen=True)
class CaseReport:
    case_index: int
    passed: bool
    duration_s: float
    observed: Any
    message: str


class SandboxFailure(Exception):
    """Aggregated failure raised by a fail-fast sandbox."""

    def __init__(self, failed: list[int], reports: list[CaseReport]):
        self.failed = list(failed)
        self.reports = list(reports)
        super().__init__(f"failing case index(es): {', '.join(map(str, failed))}")


def _callable_form(target: Callable | InfoFn) -> Callable:
    """Give any callable the keyword-record calling convention."""
    if isinstance(target, InfoFn):
        return target
    try:
        return normalize(target)
    except SignatureMismatchError:
        return lambda **record: target(**record)


def run_cases(target: Callable | InfoFn, cases: list[Case]) -> list[CaseReport]:
    """Execute every case in order, timing the full call cycle.

    Works for info functions and for plain callables in any argument
    declaration form (plain callables are bound through the same
    record-normalization used for info functions). Failures are
    reported, never raised.
    """
    if not cases:
        raise ValueError("run_cases needs at least one case")
    call = _callable_form(target)
    reports = []
    for index, case in enumerate(cases):
        started = time.perf_counter()
        error: BaseException | None = None
        value: Any = None
        try:
            value = call(**case.args)
        except Exception as exc:
            error = exc
        duration = time.perf_counter() - started
        reports.append(_judge(index, case, value, error, duration))
    return reports


def _judge(
    index: int,
    case: Case,
    value: Any,
    error: BaseException | None,
    duration: float,
) -> CaseReport:
    if error is not None:
        kind = type(error).__name__
        if case.expect_error is not None and isinstance(error, case.expect_error):
            return CaseReport(index, True, duration, kind, f"raised {kind} as expected")
        return CaseReport(index, False, duration, kind, f"unexpected {kind}: {error}")
    if case.expect_error is not None:
        return CaseReport(
            index, False, duration, value,
            f"expected {case.expect_error.__name__}, got a return value",
        )
    if case.expect is not _UNSET:
        compare = case.comparator or _equal
        try:
            same = bool(compare(value, case.expect))
        except Exception as exc:
            return CaseReport(index, False, duration, value, f"comparator raised: {exc}")
        if same:
            return CaseReport(index, True, duration, value, "result matches")
        return CaseReport(
            index, False, duration, value,
            f"result {value!r} != expected {case.expect!r}",
        )
    return CaseReport(index, True, duration, value, "completed without error")


def _equal(x: Any, y: Any) -> bool:
    return x == y


def report_line(report: CaseReport) -> str:
    """Stable one-line form: index, PASS|FAIL, seconds (6 decimals), message."""
    verdict = "PASS" if report.passed else "FAIL"
    return f"{report.case_index}\t{verdict}\t{report.duration_s:.6f}\t{report.message}"


def _default_reporter(line: str) -> None:
    sys.stderr.write(line + "\n")


def _env_enabled() -> bool:
    return os.environ.get(ENV_TOGGLE, "").strip().lower() in ("1", "true", "yes", "on")


def sandbox(
    target: Callable | InfoFn,
    cases: list[Case],
    enabled: bool | None = None,
    fail_fast: bool = False,
    reporter: Callable[[str], Any] | None = None,
) -> Callable | InfoFn:
    """Run cases at the definition site, then hand the target back unchanged.

    With `enabled` left as None the INFOFN_TEST environment variable
    decides; disabled sandboxes execute nothing, so production import
    paths are unaffected. In fail-fast mode a failing suite raises
    SandboxFailure listing the failing case indexes.
    """
    if enabled is None:
        enabled = _env_enabled()
    if not enabled:
        return target
    emit = reporter or _default_reporter
    reports = run_cases(target, cases)
    for report in reports:
        emit(report_line(report))
    failed = [r.case_index for r in reports if not r.passed]
    if fail_fast and failed:
        raise SandboxFailure(failed, reports)
    return target


def sandboxed(
    cases: list[Case],
    enabled: bool | None = None,
    fail_fast: bool = False,
    reporter: Callable[[str], Any] | None = None,
):
    """Decorator form of `sandbox`: ``@sandboxed([...cases...])``."""

    def wrap(target: Callable | InfoFn):
        return sandbox(target, cases, enabled=enabled, fail_fast=fail_fast, reporter=reporter)

    return wrap
