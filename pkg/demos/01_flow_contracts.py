#!/usr/bin/env python3
# Flow contracts: wrap a plain function as an info function and let the
# wrapper police what flows in and out, instead of if-instance checks
# inside the body.

from infofn import ANY, TEXT, InflowViolation, attach_flow, seq, union, varseq

# A text processor that should accept a single string or a list of strings.
# The body stays oblivious to validation.


def tokenize(data):
    if isinstance(data, str):
        return data.split()
    return [item for chunk in data for item in chunk.split()]


entry = union(TEXT, seq(TEXT))
info = attach_flow(tokenize, entry_tp=entry, return_tp=seq(TEXT))

print(info(data="hello world"))          # ['hello', 'world']
print(info(data=["a b", "c"]))           # ['a', 'b', 'c']

# A tuple is neither text nor a list of text, so the call never reaches
# the body:
try:
    info(data=("a", "b"))
except InflowViolation as err:
    print("rejected:", err)

# Supporting tuples is a contract edit, not a body edit. Swap the entry
# expression for one with a variadic-tuple alternative:
widened = attach_flow(info, entry_tp=union(TEXT, seq(TEXT), varseq(TEXT)))
print(widened(data=("a b", "c")))        # ['a', 'b', 'c']

# Validation recurses into elements, so a single bad element is located
# precisely:
try:
    info(data=["fine", 42])
except InflowViolation as err:
    print("inner element:", err.result.path, "expected", err.result.expected)

# An Any/Any contract is vacuous; behavior is identical to the raw call.
plain = attach_flow(tokenize, entry_tp=ANY, return_tp=ANY)
print(plain(data="same as raw"))
