#!/usr/bin/env python3
# Pipelines: wrap info functions as named Units, compose them into Pipes,
# and let junction checking prove the chain fits before any data exists.

from infofn import (
    INTEGER,
    TEXT,
    IncompatibleStepsError,
    attach_flow,
    compose,
    describe,
    make_unit,
    merge_args,
    normalize,
    run,
)

# Three small numeric steps with matching contracts.


def offset(data, n=0):
    return data + n


def scale(data, factor=1):
    return data * factor


def clamp(data, lo=0, hi=100):
    return max(lo, min(hi, data))


num = INTEGER

units = [
    make_unit(attach_flow(normalize(offset), entry_tp=num, return_tp=num), "offset"),
    make_unit(attach_flow(normalize(scale), entry_tp=num, return_tp=num), "scale"),
    make_unit(attach_flow(normalize(clamp), entry_tp=num, return_tp=num), "clamp"),
]

pipe = compose("adjust", units)

# Arguments are addressed per step with dot-qualified keys and stripped
# of the prefix before delivery:
print(run(pipe, 5, {"offset.n": 3, "scale.factor": 10}))   # clamp((5+3)*10) = 80

# The pipe's surface is fully describable without running anything:
print(describe(pipe))

# Junction checking happens at composition time. A step that returns
# integers cannot feed a step that wants text, and no body ever runs to
# find that out:
texty = make_unit(attach_flow(lambda data: data, entry_tp=TEXT, return_tp=TEXT), "texty")
try:
    compose("broken", units + [texty])
except IncompatibleStepsError as err:
    print("rejected at junction", err.junction, ":", err.produced, "vs", err.expected)

# Pipes are steps too; reuse the whole adjust pipe inside a bigger one:
report = make_unit(
    attach_flow(lambda data: f"value={data}", entry_tp=num, return_tp=TEXT), "report"
)
experiment = compose("experiment", [pipe, report])
print(run(experiment, 5, {"adjust.offset.n": 1, "adjust.scale.factor": 2}))

# Argument namespaces support set operations for mixing configurations:
base = {"adjust.offset.n": 1, "adjust.scale.factor": 2}
override = {"adjust.scale.factor": 5}
print(merge_args(base, override, mode="override"))
