#!/usr/bin/env python3
# Argument configuration: three ways to constrain controlling arguments
# (category atoms, composite expressions, predicates), plus metadata,
# dynamic defaults, and exception capture.

import numpy as np

from infofn import (
    INTEGER,
    REAL,
    ArgumentViolation,
    attach_attributes,
    configure_args,
    default_param,
    fixed,
    guard_exceptions,
    normalize,
)
from infofn.predicates import between, positive_semidefinite, symmetric


def blend(data, arg1=(0.5, 1), arg2=0.5):
    weight, repeats = arg1
    return [data * weight * arg2] * repeats


# Mode 1+2+3 in one go: a composite tuple expression for arg1 and a
# predicate ("coefficient between 0 and 1") for arg2.
info = configure_args(
    normalize(blend),
    {"arg1": fixed(REAL, INTEGER), "arg2": between(0, 1)},
)

print(info(data=10, arg1=(0.5, 2), arg2=0.5))   # [2.5, 2.5]

try:
    info(data=10, arg2=1.5)
except ArgumentViolation as err:
    print("rejected:", err)

try:
    info(data=10, arg1=(0.5, 2.0))              # 2.0 is real, not integer
except ArgumentViolation as err:
    print("rejected:", err)

# Predicates shine for duck-typed mathematical concepts. This step wants
# a symmetric positive-semidefinite matrix; nested lists, numpy arrays,
# or anything array-like all pass the same check.


def quad_form(data, matrix=((1, 0), (0, 1))):
    v = np.asarray(data, dtype=float)
    return float(v @ np.asarray(matrix, dtype=float) @ v)


constrained = configure_args(normalize(quad_form), {"matrix": positive_semidefinite})
print(constrained(data=[1, 2], matrix=[[2, 0], [0, 1]]))   # 6.0

try:
    constrained(data=[1, 2], matrix=[[1, 2], [3, 4]])       # not symmetric
except ArgumentViolation as err:
    print("rejected:", err)

print("symmetric?", symmetric([[1, 2], [2, 1]]))

# Documentation and authorship live in an attribute carrier, outside the
# body:
documented = attach_attributes(constrained, {"doc": "x^T M x", "authors": "demo"})
print(documented.attributes)

# Dynamic defaults are evaluated per call, unlike static defaults:
ticker = iter(range(100))
counted = default_param(
    configure_args(normalize(lambda data, seed=0: (data, seed)), {"seed": INTEGER}),
    {"seed": lambda: next(ticker)},
)
print(counted(data="a"), counted(data="b"))     # seeds 0, then 1

# Exception capture: body errors become one-line records in your sink.
lines = []
guarded = guard_exceptions(
    normalize(lambda data: 1 / data, name="inverse"),
    sink=lines.append,
    policy="swallow",
    fallback=0.0,
)
print(guarded(data=0))    # 0.0 instead of ZeroDivisionError
print("log:", lines[0])
