"""Info functions: callables normalized to one keyword record in, one value out.

Any Python callable can be wrapped into an `InfoFn` that is invoked as
``info(**record)``. The record's reserved ``data`` key is the flow slot;
every other entry is a controlling argument bound to the body's real
signature by name, spread into its var-positional parameter, or gathered
into its var-keyword parameter. Flow contracts, per-argument constraints,
metadata attributes, dynamic defaults, and exception capture are attached
as separate layers that never touch the body, and their application order
is canonical regardless of how the user stacks them: bind, flow check,
argument checks, defaults, guarded body call, return check.
"""

from __future__ import annotations

import datetime as _dt
import inspect
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping

from .typeexpr import (
    ANY,
    Pred,
    Predicate,
    TypeExpr,
    ValidationResult,
    as_expr,
    make_predicate,
    render,
    validate,
)

DATA_KEY = "data"

POSITIONAL = "positional"
OPTIONAL = "optional-with-default"
VAR_POSITIONAL = "var-positional"
VAR_KEYWORD = "var-keyword"

_KIND_ORDER = {POSITIONAL: 0, OPTIONAL: 1, VAR_POSITIONAL: 2, VAR_KEYWORD: 3}


class SignatureMismatchError(TypeError):
    """Declared parameters contradict the callable's actual signature."""


class MissingArgumentError(TypeError):
    """A required parameter has no entry in the call record."""


class UnexpectedArgumentError(TypeError):
    """Record entries remain and the callable has no var-keyword parameter."""


class ConfigError(ValueError):
    """A contract was configured inconsistently (bad default, unknown name)."""


class ContractViolation(Exception):
    """A value failed its contract; the ValidationResult rides along."""

    def __init__(self, fn_name: str, result: ValidationResult, what: str):
        self.fn_name = fn_name
        self.result = result
        where = f" at {list(result.path)}" if result.path else ""
        super().__init__(
            f"{fn_name}: {what} expected {result.expected}, got {result.actual}{where}"
        )


class InflowViolation(ContractViolation):
    def __init__(self, fn_name: str, result: ValidationResult):
        super().__init__(fn_name, result, "inflow contract on 'data':")


class OutflowViolation(ContractViolation):
    def __init__(self, fn_name: str, result: ValidationResult):
        super().__init__(fn_name, result, "outflow contract on result:")


class ArgumentViolation(ContractViolation):
    def __init__(self, fn_name: str, argument: str, result: ValidationResult):
        self.argument = argument
        super().__init__(fn_name, result, f"constraint on argument {argument!r}:")


_NO_DEFAULT = object()


@dataclass(frozen=True)
class ParamSpec:
    """One controlling parameter: its kind, optional default, and constraint."""

    name: str
    kind: str
    default: Any = _NO_DEFAULT
    constraint: TypeExpr | Predicate | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown parameter kind {self.kind!r}")
        if self.kind == OPTIONAL and self.default is _NO_DEFAULT:
            raise ValueError(f"optional parameter {self.name!r} needs a default")

    @property
    def has_default(self) -> bool:
        return self.default is not _NO_DEFAULT


@dataclass(frozen=True)
class FnContract:
    """Flow expressions, controlling parameters, and metadata for one InfoFn."""

    entry_tp: TypeExpr = ANY
    return_tp: TypeExpr = ANY
    params: tuple[ParamSpec, ...] = ()
    attributes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "attributes", dict(self.attributes))
        _check_params(self.params)

    def param(self, name: str) -> ParamSpec | None:
        for p in self.params:
            if p.name == name:
                return p
        return None


def _check_params(params: tuple[ParamSpec, ...]) -> None:
    last = -1
    seen: set[str] = set()
    for p in params:
        if p.name == DATA_KEY:
            raise SignatureMismatchError(
                f"{DATA_KEY!r} is the reserved flow slot, not a controlling argument"
            )
        if p.name in seen:
            raise SignatureMismatchError(f"duplicate parameter {p.name!r}")
        seen.add(p.name)
        rank = _KIND_ORDER[p.kind]
        if rank < last:
            raise SignatureMismatchError(
                f"parameter {p.name!r} out of kind order (priority is "
                "positional < optional < var-positional < var-keyword)"
            )
        if rank == last and rank >= _KIND_ORDER[VAR_POSITIONAL]:
            raise SignatureMismatchError(f"more than one {p.kind} parameter")
        last = rank


@dataclass(frozen=True)
class _BindPlan:
    """How a call record maps onto the body's real signature."""

    # positional section in signature order: (name, positional_only, has_default)
    prefix: tuple[tuple[str, bool, bool], ...]
    kwonly: tuple[tuple[str, bool], ...]  # (name, has_default)
    var_positional: str | None
    var_keyword: str | None


def _plan_of(fn: Callable) -> _BindPlan:
    try:
        sig = inspect.signature(fn)
    except (TypeError, ValueError) as exc:
        raise SignatureMismatchError(f"cannot introspect {fn!r}: {exc}") from None
    prefix = []
    kwonly = []
    var_pos = var_kw = None
    for p in sig.parameters.values():
        has_default = p.default is not inspect.Parameter.empty
        if p.kind in (inspect.Parameter.VAR_POSITIONAL, inspect.Parameter.VAR_KEYWORD):
            if p.name == DATA_KEY:
                raise SignatureMismatchError(
                    f"a var parameter may not take the reserved name {DATA_KEY!r}"
                )
        if p.kind is inspect.Parameter.VAR_POSITIONAL:
            var_pos = p.name
        elif p.kind is inspect.Parameter.VAR_KEYWORD:
            var_kw = p.name
        elif p.kind is inspect.Parameter.KEYWORD_ONLY:
            kwonly.append((p.name, has_default))
        else:
            only = p.kind is inspect.Parameter.POSITIONAL_ONLY
            prefix.append((p.name, only, has_default))
    return _BindPlan(tuple(prefix), tuple(kwonly), var_pos, var_kw)


def derive_params(fn: Callable) -> tuple[ParamSpec, ...]:
    """Read a callable's controlling parameters off its signature.

    The reserved ``data`` parameter is the flow slot and is skipped.
    Required parameters (keyword-only included) map to the positional
    kind, defaulted ones to optional-with-default; specs are listed in
    canonical kind order.
    """
    plan = _plan_of(fn)
    required, optional = [], []
    sig = inspect.signature(fn)
    for p in sig.parameters.values():
        if p.name == DATA_KEY:
            continue
        if p.kind is inspect.Parameter.VAR_POSITIONAL:
            continue
        if p.kind is inspect.Parameter.VAR_KEYWORD:
            continue
        if p.default is inspect.Parameter.empty:
            required.append(ParamSpec(p.name, POSITIONAL))
        else:
            optional.append(ParamSpec(p.name, OPTIONAL, default=p.default))
    specs = required + optional
    if plan.var_positional and plan.var_positional != DATA_KEY:
        specs.append(ParamSpec(plan.var_positional, VAR_POSITIONAL))
    if plan.var_keyword and plan.var_keyword != DATA_KEY:
        specs.append(ParamSpec(plan.var_keyword, VAR_KEYWORD))
    return tuple(specs)


@dataclass(frozen=True)
class _Guard:
    """Exception capture config: sink for formatted records, then the policy."""

    sink: Callable[[str], Any]
    policy: str  # "reraise" | "swallow"
    fallback: Any = None

    def emit(self, fn_name: str, record: Mapping[str, Any], exc: BaseException) -> None:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat()
        snapshot = ", ".join(f"{k}={_clip(repr(v))}" for k, v in record.items())
        line = "\t".join(
            [stamp, fn_name, type(exc).__name__, _flatten(str(exc)), _flatten(snapshot)]
        )
        self.sink(line)


def _clip(text: str, limit: int = 256) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _flatten(text: str) -> str:
    return text.replace("\t", " ").replace("\n", " ")


@dataclass(frozen=True, eq=False)
class InfoFn:
    """A normalized callable with its contract attached.

    Invoked as ``info(**record)``: exactly one keyword record in, one
    value out. Inflow, argument, and defaulted-argument checks all run
    before the body; the result is checked against the return contract
    before it is handed back.
    """

    body: Callable
    contract: FnContract
    name: str
    dynamic_defaults: Mapping[str, Callable[[], Any]] = field(default_factory=dict)
    injected_defaults: Mapping[str, Any] = field(default_factory=dict)
    guard: _Guard | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "dynamic_defaults", dict(self.dynamic_defaults))
        object.__setattr__(self, "injected_defaults", dict(self.injected_defaults))
        object.__setattr__(self, "_plan", _plan_of(self.body))

    def __repr__(self) -> str:
        c = self.contract
        return f"<InfoFn {self.name}: {render(c.entry_tp)} -> {render(c.return_tp)}>"

    @property
    def attributes(self) -> Mapping[str, str]:
        return dict(self.contract.attributes)

    def __call__(self, **record: Any) -> Any:
        args = dict(record)
        for pname, supplier in self.dynamic_defaults.items():
            if pname not in args:
                args[pname] = supplier()
        if DATA_KEY in args:
            res = validate(args[DATA_KEY], self.contract.entry_tp)
            if not res.ok:
                raise InflowViolation(self.name, res)
        self._check_arguments(args)
        for pname, value in self.injected_defaults.items():
            args.setdefault(pname, value)
        pos, kw = _bind(self._plan, args)
        try:
            result = self.body(*pos, **kw)
        except Exception as exc:
            if self.guard is None:
                raise
            self.guard.emit(self.name, args, exc)
            if self.guard.policy != "swallow":
                raise
            result = self.guard.fallback
        res = validate(result, self.contract.return_tp)
        if not res.ok:
            err = OutflowViolation(self.name, res)
            if self.guard is not None:
                self.guard.emit(self.name, args, err)
            raise err
        return result

    def _check_arguments(self, args: Mapping[str, Any]) -> None:
        var_kw_spec = next(
            (p for p in self.contract.params if p.kind == VAR_KEYWORD), None
        )
        for key, value in args.items():
            if key == DATA_KEY:
                continue
            spec = self.contract.param(key) or var_kw_spec
            if spec is None or spec.constraint is None:
                continue
            res = validate(value, _constraint_expr(spec.constraint))
            if not res.ok:
                raise ArgumentViolation(self.name, key, res)


def _constraint_expr(constraint: TypeExpr | Predicate) -> TypeExpr:
    return Pred(constraint) if isinstance(constraint, Predicate) else constraint


def _bind(plan: _BindPlan, record: Mapping[str, Any]) -> tuple[list, dict]:
    """Turn a keyword record into the (args, kwargs) of a direct call."""
    entries = dict(record)
    pos: list[Any] = []
    kw: dict[str, Any] = {}

    spread: tuple[Any, ...] = ()
    if plan.var_positional and plan.var_positional in entries:
        payload = entries.pop(plan.var_positional)
        if not isinstance(payload, (list, tuple)):
            raise TypeError(
                f"entry {plan.var_positional!r} feeds a var-positional parameter "
                f"and must be a list or tuple, got {type(payload).__name__}"
            )
        spread = tuple(payload)

    if spread:
        # Values spread into *args force the whole prefix to go positionally.
        for name, _, _ in plan.prefix:
            if name not in entries:
                raise MissingArgumentError(
                    f"{name!r} must be supplied when var-positional values are present"
                )
            pos.append(entries.pop(name))
        pos.extend(spread)
    else:
        filling = True
        for name, positional_only, has_default in plan.prefix:
            if positional_only:
                if name in entries:
                    if not filling:
                        raise MissingArgumentError(
                            f"positional-only {name!r} follows an omitted parameter"
                        )
                    pos.append(entries.pop(name))
                elif has_default:
                    filling = False
                else:
                    raise MissingArgumentError(f"missing required argument {name!r}")
            else:
                if name in entries:
                    kw[name] = entries.pop(name)
                elif not has_default:
                    raise MissingArgumentError(f"missing required argument {name!r}")

    for name, has_default in plan.kwonly:
        if name in entries:
            kw[name] = entries.pop(name)
        elif not has_default:
            raise MissingArgumentError(f"missing required argument {name!r}")

    if entries:
        if plan.var_keyword is None:
            names = ", ".join(sorted(entries))
            raise UnexpectedArgumentError(f"unexpected argument(s): {names}")
        kw.update(entries)
    return pos, kw


def normalize(
    fn: Callable,
    declared_params: tuple[ParamSpec, ...] | list[ParamSpec] | None = None,
    name: str | None = None,
) -> InfoFn:
    """Wrap any callable as an InfoFn with the single-record calling convention.

    `declared_params` may restate the controlling parameters (typically to
    carry constraints or replacement defaults); names and kinds must agree
    with the actual signature. When omitted, parameters are derived from
    the signature directly.
    """
    if isinstance(fn, InfoFn):
        return fn
    derived = derive_params(fn)
    injected: dict[str, Any] = {}
    if declared_params is None:
        params = derived
    else:
        declared = tuple(declared_params)
        _check_params(declared)
        derived_kinds = {p.name: p.kind for p in derived}
        declared_kinds = {p.name: p.kind for p in declared}
        if declared_kinds != derived_kinds:
            raise SignatureMismatchError(
                f"declared parameters {sorted(declared_kinds)} do not match "
                f"the signature of {getattr(fn, '__name__', fn)!r} "
                f"({sorted(derived_kinds)})"
            )
        defaults = {p.name: p.default for p in derived if p.has_default}
        merged = []
        for p in declared:
            if not p.has_default and p.name in defaults:
                p = replace(p, default=defaults[p.name])
            elif p.has_default and p.default != defaults.get(p.name, _NO_DEFAULT):
                injected[p.name] = p.default
            merged.append(p)
        params = tuple(merged)
    contract = FnContract(params=params)
    info = InfoFn(
        body=fn,
        contract=contract,
        name=name or getattr(fn, "__name__", "info_fn"),
        injected_defaults=injected,
    )
    _validate_recorded_defaults(info)
    return info


def info_fn(fn: Callable | None = None, *, name: str | None = None):
    """Decorator form of `normalize`."""

    def wrap(f: Callable) -> InfoFn:
        return normalize(f, name=name)

    return wrap(fn) if fn is not None else wrap


def _as_info(target: Callable | InfoFn) -> InfoFn:
    return target if isinstance(target, InfoFn) else normalize(target)


def attach_flow(
    info: InfoFn | Callable,
    entry_tp: Any = None,
    return_tp: Any = None,
) -> InfoFn:
    """Attach inflow/outflow contracts; the body stays untouched.

    `entry_tp` governs the record's ``data`` entry, `return_tp` the
    returned value. Both accept a TypeExpr, a Predicate, or a typing
    hint; None keeps the current expression.
    """
    info = _as_info(info)
    contract = info.contract
    new_contract = replace(
        contract,
        entry_tp=as_expr(entry_tp) if entry_tp is not None else contract.entry_tp,
        return_tp=as_expr(return_tp) if return_tp is not None else contract.return_tp,
    )
    out = replace(info, contract=new_contract)
    _check_guard_fallback(out)
    return out


def configure_args(
    info: InfoFn | Callable,
    specs: Mapping[str, Any],
) -> InfoFn:
    """Constrain controlling arguments, optionally recording new defaults.

    Each spec value is a constraint (TypeExpr, Predicate, typing hint, or
    plain boolean callable) or a ``(constraint, default)`` pair. A name
    absent from the signature can be added as optional-with-default when
    the body has a var-keyword parameter to receive it. Recorded defaults
    are validated against their constraint here, once.
    """
    info = _as_info(info)
    params = {p.name: p for p in info.contract.params}
    injected = dict(info.injected_defaults)
    has_var_kw = any(p.kind == VAR_KEYWORD for p in info.contract.params)

    for pname, raw in specs.items():
        if pname == DATA_KEY:
            raise ConfigError(
                f"{info.name}: {DATA_KEY!r} is contracted via entry_tp, "
                "not argument configuration"
            )
        constraint, default = _split_spec(raw)
        existing = params.get(pname)
        if existing is None:
            if default is _NO_DEFAULT:
                raise ConfigError(
                    f"{info.name}: unknown parameter {pname!r} "
                    "(give a default to add it as optional-with-default)"
                )
            if not has_var_kw:
                raise ConfigError(
                    f"{info.name}: cannot add {pname!r}; the body has no "
                    "var-keyword parameter to receive it"
                )
            params[pname] = ParamSpec(pname, OPTIONAL, default, constraint)
            injected[pname] = default
        else:
            new_default = default if default is not _NO_DEFAULT else existing.default
            kind = existing.kind
            if default is not _NO_DEFAULT:
                if kind == POSITIONAL:
                    kind = OPTIONAL
                injected[pname] = default
            params[pname] = replace(
                existing, kind=kind, default=new_default, constraint=constraint
            )

    ordered = tuple(sorted(params.values(), key=lambda p: _KIND_ORDER[p.kind]))
    out = replace(
        info,
        contract=replace(info.contract, params=ordered),
        injected_defaults=injected,
    )
    _validate_recorded_defaults(out)
    return out


def _split_spec(raw: Any) -> tuple[TypeExpr | Predicate, Any]:
    if isinstance(raw, tuple) and len(raw) == 2:
        constraint, default = raw
    else:
        constraint, default = raw, _NO_DEFAULT
    if isinstance(constraint, (TypeExpr, Predicate)):
        return constraint, default
    if callable(constraint) and not isinstance(constraint, type):
        return make_predicate(constraint), default
    return as_expr(constraint), default


def _validate_recorded_defaults(info: InfoFn) -> None:
    for p in info.contract.params:
        if p.constraint is None or not p.has_default:
            continue
        res = validate(p.default, _constraint_expr(p.constraint))
        if not res.ok:
            raise ConfigError(
                f"{info.name}: default for {p.name!r} violates its constraint "
                f"(expected {res.expected}, got {res.actual})"
            )


def attach_attributes(info: InfoFn | Callable, attrs: Mapping[str, str]) -> InfoFn:
    """Merge metadata attributes (doc, authors, maintainers, testers,
    version, ...); later attachments win key by key."""
    info = _as_info(info)
    merged = dict(info.contract.attributes)
    merged.update(attrs)
    return replace(info, contract=replace(info.contract, attributes=merged))


def default_param(
    info: InfoFn | Callable,
    dynamic_defaults: Mapping[str, Callable[[], Any]],
) -> InfoFn:
    """Fill absent arguments from zero-argument suppliers, per call.

    Suppliers run at call time (not now), and their values pass through
    the same constraint checks as caller-supplied arguments.
    """
    info = _as_info(info)
    for pname in dynamic_defaults:
        if info.contract.param(pname) is None:
            raise ConfigError(f"{info.name}: unknown parameter {pname!r}")
    merged = dict(info.dynamic_defaults)
    merged.update(dynamic_defaults)
    return replace(info, dynamic_defaults=merged)


def guard_exceptions(
    info: InfoFn | Callable,
    sink: Callable[[str], Any],
    policy: str = "reraise",
    fallback: Any = None,
) -> InfoFn:
    """Capture body exceptions as one-line records delivered to `sink`.

    Record format (tab-separated): ISO-8601 timestamp, function name,
    error kind, message, argument snapshot (values clipped to 256 chars).
    Under "reraise" the original error propagates after logging; under
    "swallow" the fallback value is returned instead, and must satisfy
    the return contract (checked now). Outflow violations are logged too.
    """
    info = _as_info(info)
    if policy not in ("reraise", "swallow"):
        raise ConfigError(f"unknown guard policy {policy!r}")
    out = replace(info, guard=_Guard(sink=sink, policy=policy, fallback=fallback))
    _check_guard_fallback(out)
    return out


def _check_guard_fallback(info: InfoFn) -> None:
    if info.guard is None or info.guard.policy != "swallow":
        return
    res = validate(info.guard.fallback, info.contract.return_tp)
    if not res.ok:
        raise OutflowViolation(info.name, res)


def stream_sink(stream) -> Callable[[str], None]:
    """Adapt a writable text stream into a guard sink (adds the newline)."""

    def write(line: str) -> None:
        stream.write(line + "\n")

    return write
