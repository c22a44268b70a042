"""Structural type expressions for runtime value contracts.

A TypeExpr is a small immutable tree describing the shapes a value may
take: scalar atoms, unions, homogeneous lists, fixed or variadic tuples,
mappings, a universal matcher, and named predicates for duck-typed
constraints. `validate` walks values recursively, `subsumes` gives a
conservative data-free compatibility relation, and `render` produces the
canonical textual form used in error messages and pipeline dumps.
"""

from __future__ import annotations

import types
import typing
from collections.abc import Mapping as AbcMapping
from dataclasses import dataclass
from typing import Any, Callable


class CyclicValueError(ValueError):
    """A self-referential container was found while walking a value."""


@dataclass(frozen=True, eq=False)
class Predicate:
    """A named boolean constraint over a candidate value.

    `check` must not mutate the candidate. Exceptions raised inside
    `check` count as "does not match", never as a validation crash.
    Predicates compare by identity; names are used for rendering and
    should be unique within a system.
    """

    name: str
    check: Callable[[Any], bool]
    description: str = ""

    def __call__(self, value: Any) -> bool:
        return self.check(value)


class TypeExpr:
    """Base class for type expression nodes. Immutable after construction."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(TypeExpr):
    """A named scalar category: text, integer, real, boolean, bytes, none."""

    kind: str

    def __post_init__(self) -> None:
        if self.kind not in _ATOM_CHECKS:
            raise ValueError(f"unknown atom kind {self.kind!r}")


@dataclass(frozen=True)
class Union(TypeExpr):
    """Ordered alternatives; a value matches if any alternative matches."""

    alternatives: tuple[TypeExpr, ...]

    def __post_init__(self) -> None:
        alts = tuple(self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        if len(alts) < 2:
            raise ValueError("Union needs at least two alternatives")
        for i, a in enumerate(alts):
            _require_expr(a)
            if a in alts[:i]:
                raise ValueError(f"duplicate Union alternative {render(a)}")


@dataclass(frozen=True)
class Seq(TypeExpr):
    """Homogeneous list of any length."""

    element: TypeExpr

    def __post_init__(self) -> None:
        _require_expr(self.element)


@dataclass(frozen=True)
class FixedSeq(TypeExpr):
    """Fixed-arity heterogeneous tuple."""

    elements: tuple[TypeExpr, ...]

    def __post_init__(self) -> None:
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise ValueError("FixedSeq needs at least one element")
        for e in elems:
            _require_expr(e)


@dataclass(frozen=True)
class VarSeq(TypeExpr):
    """Variadic homogeneous tuple (the ``tuple[str, ...]`` form)."""

    element: TypeExpr

    def __post_init__(self) -> None:
        _require_expr(self.element)


@dataclass(frozen=True)
class Map(TypeExpr):
    """Mapping with contracted key and value expressions."""

    key: TypeExpr
    value: TypeExpr

    def __post_init__(self) -> None:
        _require_expr(self.key)
        _require_expr(self.value)


@dataclass(frozen=True)
class AnyExpr(TypeExpr):
    """Matches every value, without recursing into it."""


@dataclass(frozen=True)
class Pred(TypeExpr):
    """Matches iff the wrapped predicate accepts the value."""

    predicate: Predicate

    def __post_init__(self) -> None:
        if not isinstance(self.predicate, Predicate):
            raise TypeError("Pred wraps a Predicate instance")


def _require_expr(x: Any) -> None:
    if not isinstance(x, TypeExpr):
        raise TypeError(f"expected a TypeExpr, got {type(x).__name__}")


_ATOM_CHECKS: dict[str, Callable[[Any], bool]] = {
    "text": lambda v: isinstance(v, str),
    # bool is an int subclass but gets its own category; no coercion.
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "real": lambda v: isinstance(v, float),
    "boolean": lambda v: isinstance(v, bool),
    "bytes": lambda v: isinstance(v, bytes),
    "none": lambda v: v is None,
}

# Atom singletons; the usual vocabulary for scalar contracts.
TEXT = Atom("text")
INTEGER = Atom("integer")
REAL = Atom("real")
BOOLEAN = Atom("boolean")
BYTES = Atom("bytes")
NONE = Atom("none")
ANY = AnyExpr()


def union(*alternatives: TypeExpr) -> Union:
    return Union(tuple(alternatives))


def seq(element: TypeExpr) -> Seq:
    return Seq(element)


def fixed(*elements: TypeExpr) -> FixedSeq:
    return FixedSeq(tuple(elements))


def varseq(element: TypeExpr) -> VarSeq:
    return VarSeq(element)


def map_of(key: TypeExpr, value: TypeExpr) -> Map:
    return Map(key, value)


def pred(predicate: Predicate) -> Pred:
    return Pred(predicate)


def make_predicate(
    check: Callable[[Any], bool],
    name: str | None = None,
    description: str = "",
) -> Predicate:
    """Wrap a plain boolean callable as a Predicate, naming it for rendering."""
    if isinstance(check, Predicate):
        return check
    if name is None:
        name = getattr(check, "__name__", None) or "anonymous"
    return Predicate(name=name, check=check, description=description)


_HINT_ATOMS: dict[Any, TypeExpr] = {
    str: TEXT,
    int: INTEGER,
    float: REAL,
    bool: BOOLEAN,
    bytes: BYTES,
    type(None): NONE,
    None: NONE,
    Any: ANY,
}


def from_hint(hint: Any) -> TypeExpr:
    """Convert a Python typing hint into a TypeExpr.

    Supports the scalar builtins, ``Any``, ``list[X]``, ``tuple[X, ...]``,
    fixed tuples, ``dict[K, V]``, and unions (both ``Union[...]`` and the
    ``X | Y`` form). Bare containers get Any-typed contents.
    """
    if hint in _HINT_ATOMS:
        return _HINT_ATOMS[hint]
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is list:
        return Seq(from_hint(args[0])) if args else Seq(ANY)
    if origin is tuple:
        if not args:
            return VarSeq(ANY)
        if len(args) == 2 and args[1] is Ellipsis:
            return VarSeq(from_hint(args[0]))
        return FixedSeq(tuple(from_hint(a) for a in args))
    if origin is dict:
        if args:
            return Map(from_hint(args[0]), from_hint(args[1]))
        return Map(ANY, ANY)
    if origin is typing.Union or origin is types.UnionType:
        return Union(tuple(from_hint(a) for a in args))
    raise TypeError(f"cannot express typing hint {hint!r} as a TypeExpr")


def as_expr(spec: Any) -> TypeExpr:
    """Coerce a contract spec into a TypeExpr.

    Accepts a TypeExpr (returned as-is), a Predicate (wrapped in Pred),
    or a typing hint (converted via `from_hint`).
    """
    if isinstance(spec, TypeExpr):
        return spec
    if isinstance(spec, Predicate):
        return Pred(spec)
    return from_hint(spec)


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of one structural validation.

    On failure `path` locates the shallowest offending element (indices
    for sequences, keys for mappings; empty at the root), `expected` is
    the rendered expression that failed there, `actual` the category of
    the offending value, and `alternatives_tried` carries the per-branch
    failures when a Union fails.
    """

    ok: bool
    path: tuple[Any, ...] = ()
    expected: str = ""
    actual: str = ""
    alternatives_tried: tuple[ValidationResult, ...] = ()


_OK = ValidationResult(True)


def _category(value: Any) -> str:
    for kind, check in _ATOM_CHECKS.items():
        if check(value):
            return kind
    if isinstance(value, list):
        return "list"
    if isinstance(value, tuple):
        return "tuple"
    if isinstance(value, AbcMapping):
        return "mapping"
    return type(value).__name__


def _fail(expr: TypeExpr, value: Any, path: tuple[Any, ...]) -> ValidationResult:
    return ValidationResult(False, path, render(expr), _category(value))


def validate(value: Any, expr: TypeExpr) -> ValidationResult:
    """Check `value` against `expr`, recursing into container elements.

    Union alternatives are tried left to right and the first match wins.
    Ordinary mismatches are reported through the result, never raised;
    a self-referential container raises CyclicValueError.
    """
    _require_expr(expr)
    return _validate(value, expr, (), frozenset())


def _validate(
    value: Any,
    expr: TypeExpr,
    path: tuple[Any, ...],
    trail: frozenset[int],
) -> ValidationResult:
    if isinstance(expr, AnyExpr):
        return _OK
    if isinstance(expr, Atom):
        return _OK if _ATOM_CHECKS[expr.kind](value) else _fail(expr, value, path)
    if isinstance(expr, Pred):
        res = check_predicate(value, expr.predicate)
        if res.ok or not path:
            return res
        return ValidationResult(False, path, res.expected, res.actual)
    if isinstance(expr, Union):
        tried = []
        for alt in expr.alternatives:
            res = _validate(value, alt, path, trail)
            if res.ok:
                return _OK
            tried.append(res)
        # Surface the branch that got furthest into the value (leftmost on
        # ties); a branch that failed on an inner element localizes the
        # problem better than "nothing matched" at this level.
        deepest = max(tried, key=lambda r: len(r.path))
        if len(deepest.path) > len(path):
            return ValidationResult(
                False, deepest.path, deepest.expected, deepest.actual, tuple(tried)
            )
        return ValidationResult(False, path, render(expr), _category(value), tuple(tried))
    if isinstance(expr, Seq):
        if not isinstance(value, list):
            return _fail(expr, value, path)
        inner = _descend(value, trail)
        for i, item in enumerate(value):
            res = _validate(item, expr.element, path + (i,), inner)
            if not res.ok:
                return res
        return _OK
    if isinstance(expr, FixedSeq):
        if not isinstance(value, tuple) or len(value) != len(expr.elements):
            return _fail(expr, value, path)
        inner = _descend(value, trail)
        for i, (item, elem) in enumerate(zip(value, expr.elements)):
            res = _validate(item, elem, path + (i,), inner)
            if not res.ok:
                return res
        return _OK
    if isinstance(expr, VarSeq):
        if not isinstance(value, tuple):
            return _fail(expr, value, path)
        inner = _descend(value, trail)
        for i, item in enumerate(value):
            res = _validate(item, expr.element, path + (i,), inner)
            if not res.ok:
                return res
        return _OK
    if isinstance(expr, Map):
        if not isinstance(value, AbcMapping):
            return _fail(expr, value, path)
        inner = _descend(value, trail)
        for k, v in value.items():
            res = _validate(k, expr.key, path + (k,), inner)
            if not res.ok:
                return res
            res = _validate(v, expr.value, path + (k,), inner)
            if not res.ok:
                return res
        return _OK
    raise TypeError(f"unhandled TypeExpr node {type(expr).__name__}")


def _descend(container: Any, trail: frozenset[int]) -> frozenset[int]:
    if id(container) in trail:
        raise CyclicValueError("self-referential container in validated value")
    return trail | {id(container)}


def check_predicate(value: Any, predicate: Predicate) -> ValidationResult:
    """Apply a predicate; a raised exception means "does not match"."""
    expected = f"pred:{predicate.name}"
    try:
        accepted = bool(predicate.check(value))
    except Exception as exc:
        return ValidationResult(False, (), expected, f"{type(exc).__name__}: {exc}")
    if accepted:
        return _OK
    return ValidationResult(False, (), expected, _category(value))


def subsumes(general: TypeExpr, specific: TypeExpr) -> bool:
    """Conservative syntactic subsumption.

    True only when every value matching `specific` provably matches
    `general` under purely structural rules. False does not mean actual
    values are incompatible, only that compatibility is not provable
    (two different predicates, for instance, are never comparable).
    """
    _require_expr(general)
    _require_expr(specific)
    if isinstance(general, AnyExpr):
        return True
    if isinstance(specific, Union):
        return all(subsumes(general, s) for s in specific.alternatives)
    if isinstance(general, Union):
        return any(subsumes(g, specific) for g in general.alternatives)
    if isinstance(general, Atom) and isinstance(specific, Atom):
        return general.kind == specific.kind
    if isinstance(general, Seq) and isinstance(specific, Seq):
        return subsumes(general.element, specific.element)
    if isinstance(general, VarSeq):
        if isinstance(specific, VarSeq):
            return subsumes(general.element, specific.element)
        if isinstance(specific, FixedSeq):
            return all(subsumes(general.element, e) for e in specific.elements)
        return False
    if isinstance(general, FixedSeq) and isinstance(specific, FixedSeq):
        return len(general.elements) == len(specific.elements) and all(
            subsumes(g, s) for g, s in zip(general.elements, specific.elements)
        )
    if isinstance(general, Map) and isinstance(specific, Map):
        return subsumes(general.key, specific.key) and subsumes(general.value, specific.value)
    if isinstance(general, Pred) and isinstance(specific, Pred):
        return general.predicate is specific.predicate
    return False


def render(expr: TypeExpr) -> str:
    """Canonical human-readable form; equal expressions render identically."""
    if isinstance(expr, AnyExpr):
        return "Any"
    if isinstance(expr, Atom):
        return expr.kind
    if isinstance(expr, Union):
        parts = [
            f"({render(a)})" if isinstance(a, Union) else render(a)
            for a in expr.alternatives
        ]
        return " | ".join(parts)
    if isinstance(expr, Seq):
        return f"seq[{render(expr.element)}]"
    if isinstance(expr, FixedSeq):
        return f"tuple[{', '.join(render(e) for e in expr.elements)}]"
    if isinstance(expr, VarSeq):
        return f"varseq[{render(expr.element)}]"
    if isinstance(expr, Map):
        return f"map[{render(expr.key)}, {render(expr.value)}]"
    if isinstance(expr, Pred):
        return f"pred:{expr.predicate.name}"
    raise TypeError(f"unhandled TypeExpr node {type(expr).__name__}")
