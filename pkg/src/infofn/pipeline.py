"""Named pipeline steps and their validated, data-free composition.

A Unit wraps one info function under a step name; a Pipe is an ordered
run of Units (or nested Pipes, which keep their own name as an address
prefix). Junction compatibility is proved at composition time with the
conservative `subsumes` relation, so no step body ever executes before
the whole pipe is known to connect. Per-step arguments are addressed
with dot-qualified keys like ``"crop.box"``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Mapping

from .contract import VAR_KEYWORD, InfoFn, _as_info
from .typeexpr import TypeExpr, render, subsumes

ArgNamespace = Mapping[str, Any]


class BadNameError(ValueError):
    """Step names must be non-empty and must not contain the '.' separator."""


class DuplicateStepNameError(ValueError):
    """Two sibling steps share a name."""


class IncompatibleStepsError(ValueError):
    """A junction's downstream entry expression cannot be proven to admit
    everything the upstream return expression allows."""

    def __init__(self, junction: int, produced: str, expected: str):
        self.junction = junction
        self.produced = produced
        self.expected = expected
        super().__init__(
            f"junction {junction}: step output {produced} is not provably "
            f"accepted by next entry {expected}"
        )


class UnresolvedArgError(LookupError):
    """A dot-qualified argument key matches no step/parameter."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"argument key {key!r} resolves to no step parameter")


class ConflictError(ValueError):
    """Union merge found one key with two different values."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"conflicting values for argument key {key!r}")


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise BadNameError("step name must be a non-empty string")
    if "." in name:
        raise BadNameError(f"step name {name!r} contains the reserved '.' separator")
    return name


class _Step:
    """Shared sugar for Units and Pipes."""

    name: str

    def then(self, other: "_Step", name: str | None = None) -> "Pipe":
        """Infix-style composition; same semantics as `compose` on the pair."""
        return compose(name or f"{self.name}_{other.name}", [self, other])


@dataclass(frozen=True, eq=False)
class Unit(_Step):
    """One named pipeline step wrapping an info function."""

    name: str
    info: InfoFn

    @property
    def entry_tp(self) -> TypeExpr:
        return self.info.contract.entry_tp

    @property
    def return_tp(self) -> TypeExpr:
        return self.info.contract.return_tp

    def __repr__(self) -> str:
        return f"<Unit {self.name}: {render(self.entry_tp)} -> {render(self.return_tp)}>"


def make_unit(info: InfoFn | Callable, name: str) -> Unit:
    """Wrap an info function (or any callable, normalized first) as a Unit."""
    _check_name(name)
    return Unit(name=name, info=_as_info(info))


@dataclass(frozen=True, eq=False)
class Pipe(_Step):
    """A validated ordered composition of steps; itself usable as a step."""

    name: str
    steps: tuple[Unit | "Pipe", ...]
    asserted_junctions: tuple[int, ...] = ()

    @property
    def entry_tp(self) -> TypeExpr:
        return self.steps[0].entry_tp

    @property
    def return_tp(self) -> TypeExpr:
        return self.steps[-1].return_tp

    def __repr__(self) -> str:
        return f"<Pipe {self.name}: {len(self.steps)} steps>"

    def run(self, data: Any, args: ArgNamespace | None = None, **kw: Any) -> Any:
        return run(self, data, args, **kw)

    def _flat_units(self, prefix: str = "") -> Iterator[tuple[str, Unit]]:
        for step in self.steps:
            if isinstance(step, Pipe):
                yield from step._flat_units(f"{prefix}{step.name}.")
            else:
                yield f"{prefix}{step.name}", step

    def _resolve(self, segments: tuple[str, ...], full_key: str) -> None:
        head, rest = segments[0], segments[1:]
        for step in self.steps:
            if step.name != head:
                continue
            if isinstance(step, Pipe):
                if not rest:
                    raise UnresolvedArgError(full_key)
                step._resolve(rest, full_key)
                return
            if len(rest) != 1:
                raise UnresolvedArgError(full_key)
            pname = rest[0]
            declared = step.info.contract.param(pname) is not None
            gathers = any(p.kind == VAR_KEYWORD for p in step.info.contract.params)
            if not declared and not gathers:
                raise UnresolvedArgError(full_key)
            return
        raise UnresolvedArgError(full_key)

    def _run(
        self,
        data: Any,
        args: Mapping[str, Any],
        prefix: str,
        step_timer: Callable[[str, float], Any] | None,
    ) -> Any:
        current = data
        for step in self.steps:
            flat = f"{prefix}{step.name}"
            sub = {
                key.split(".", 1)[1]: value
                for key, value in args.items()
                if "." in key and key.split(".", 1)[0] == step.name
            }
            started = time.perf_counter() if step_timer else 0.0
            try:
                if isinstance(step, Pipe):
                    current = step._run(current, sub, f"{flat}.", step_timer)
                else:
                    current = step.info(data=current, **sub)
            except Exception as exc:
                if not hasattr(exc, "pipeline_step"):
                    exc.pipeline_step = flat  # type: ignore[attr-defined]
                raise
            if step_timer:
                step_timer(flat, time.perf_counter() - started)
        return current


def compose(
    name: str,
    steps: list[Unit | Pipe] | tuple[Unit | Pipe, ...],
    assert_compatible: bool = False,
) -> Pipe:
    """Build a Pipe, proving every junction before any data can flow.

    Adjacent steps must satisfy ``subsumes(next.entry_tp, prev.return_tp)``;
    the first unprovable junction raises IncompatibleStepsError. Passing
    ``assert_compatible=True`` waives failed junctions instead, recording
    them so `describe` can surface the override. No step body runs here.
    """
    _check_name(name)
    steps = tuple(steps)
    if not steps:
        raise ValueError("a pipe needs at least one step")
    for step in steps:
        if not isinstance(step, (Unit, Pipe)):
            raise TypeError(f"pipe steps must be Units or Pipes, got {type(step).__name__}")
    seen: set[str] = set()
    for step in steps:
        if step.name in seen:
            raise DuplicateStepNameError(f"duplicate step name {step.name!r}")
        seen.add(step.name)
    asserted = []
    for i in range(len(steps) - 1):
        if subsumes(steps[i + 1].entry_tp, steps[i].return_tp):
            continue
        if not assert_compatible:
            raise IncompatibleStepsError(
                i, render(steps[i].return_tp), render(steps[i + 1].entry_tp)
            )
        asserted.append(i)
    return Pipe(name=name, steps=steps, asserted_junctions=tuple(asserted))


def run(
    pipe: Pipe,
    data: Any,
    args: ArgNamespace | None = None,
    step_timer: Callable[[str, float], Any] | None = None,
) -> Any:
    """Thread `data` through the pipe's steps in order.

    Every args key must resolve to a step parameter before the first step
    runs (UnresolvedArgError otherwise). Step errors propagate with a
    ``pipeline_step`` attribute naming the flattened step. `step_timer`,
    when given, receives (flat step name, seconds) after each step.
    """
    args = dict(args or {})
    for key in args:
        segments = tuple(key.split("."))
        if len(segments) < 2 or not all(segments):
            raise UnresolvedArgError(key)
        pipe._resolve(segments, key)
    return pipe._run(data, args, "", step_timer)


def merge_args(a: ArgNamespace, b: ArgNamespace, mode: str = "union") -> dict[str, Any]:
    """Set operations over argument namespaces.

    union: all keys, ConflictError when one key has two unequal values;
    intersect: keys present in both with equal values; override: a's
    entries replaced by b's on collision.
    """
    a, b = dict(a), dict(b)
    if mode == "union":
        merged = dict(a)
        for key, value in b.items():
            if key in merged and not _same(merged[key], value):
                raise ConflictError(key)
            merged[key] = value
        return merged
    if mode == "intersect":
        return {k: v for k, v in a.items() if k in b and _same(v, b[k])}
    if mode == "override":
        return {**a, **b}
    raise ValueError(f"unknown merge mode {mode!r}")


def _same(x: Any, y: Any) -> bool:
    if x is y:
        return True
    try:
        return bool(x == y)
    except Exception:
        return False


def describe(pipe: Pipe) -> str:
    """Deterministic, data-free rendering of the flattened step list.

    One line per step: qualified name, entry and return expressions, and
    the declared parameter names. Waived junctions (from
    ``assert_compatible``) are listed after the steps.
    """
    lines = []
    for flat, unit in pipe._flat_units():
        params = ", ".join(p.name for p in unit.info.contract.params) or "-"
        lines.append(
            f"{flat}: {render(unit.entry_tp)} -> {render(unit.return_tp)} "
            f"[args: {params}]"
        )
    for i in pipe.asserted_junctions:
        lines.append(
            f"! junction {i} asserted compatible: "
            f"{render(pipe.steps[i].return_tp)} vs {render(pipe.steps[i + 1].entry_tp)}"
        )
    return "\n".join(lines)


def dump_pipe(pipe: Pipe, path: str) -> None:
    """Write the describe() manifest to a file, one line per step."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(describe(pipe) + "\n")
