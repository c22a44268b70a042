#!/usr/bin/env python3
# The testing frame: declare cases next to the function, run them in
# place, and get per-call wall-clock durations. A disabled sandbox costs
# nothing, so the calls can stay in production modules.

import time

from infofn import Case, InflowViolation, TEXT, attach_flow, run_cases, sandboxed, seq, union

# Direct use: run cases against any callable and inspect the reports.


def word_count(data):
    return len(data.split())


reports = run_cases(
    word_count,
    [
        Case(args={"data": "one two three"}, expect=3),
        Case(args={"data": ""}, expect=0),       # fails: ''.split() == []
        Case(args={"data": 42}, expect_error=AttributeError),
    ],
)
for r in reports:
    print(f"case {r.case_index}: passed={r.passed} in {r.duration_s:.6f}s ({r.message})")

# Timing covers the whole call cycle, validation included:


def slow(data):
    time.sleep(0.05)
    return data


print("slow case took >= 0.05s:",
      run_cases(slow, [Case(args={"data": 1})])[0].duration_s >= 0.05)

# Sandbox form: cases execute at the definition site when enabled (here
# explicitly; by default the INFOFN_TEST environment variable decides),
# and the target comes back unchanged either way. Contracted functions
# are tested through their contracts, so expected violations are cases
# like any other.


def shout_body(data):
    return data.upper() if isinstance(data, str) else [s.upper() for s in data]


shout = attach_flow(shout_body, entry_tp=union(TEXT, seq(TEXT)))
shout = sandboxed(
    [
        Case(args={"data": "hello"}, expect="HELLO"),
        Case(args={"data": ("a",)}, expect_error=InflowViolation),
    ],
    enabled=True,
)(shout)

print(shout(data="still works"))
