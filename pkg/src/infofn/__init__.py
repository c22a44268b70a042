"""infofn: contract-checked info functions and validated data pipelines.

Any callable becomes an "info function" taking one keyword record (the
reserved ``data`` key is the flow slot) and returning one value. Flow
and argument contracts are checked at every call boundary, metadata is
attached from outside the body, and validated functions compose into
pipelines whose junctions are proven compatible before any data flows.
"""

from .contract import (
    DATA_KEY,
    OPTIONAL,
    POSITIONAL,
    VAR_KEYWORD,
    VAR_POSITIONAL,
    ArgumentViolation,
    ConfigError,
    ContractViolation,
    FnContract,
    InflowViolation,
    InfoFn,
    MissingArgumentError,
    OutflowViolation,
    ParamSpec,
    SignatureMismatchError,
    UnexpectedArgumentError,
    attach_attributes,
    attach_flow,
    configure_args,
    default_param,
    derive_params,
    guard_exceptions,
    info_fn,
    normalize,
    stream_sink,
)
from .pipeline import (
    BadNameError,
    ConflictError,
    DuplicateStepNameError,
    IncompatibleStepsError,
    Pipe,
    Unit,
    UnresolvedArgError,
    compose,
    describe,
    dump_pipe,
    make_unit,
    merge_args,
    run,
)
from .testkit import (
    ENV_TOGGLE,
    Case,
    CaseReport,
    SandboxFailure,
    report_line,
    run_cases,
    sandbox,
    sandboxed,
)
from .typeexpr import (
    ANY,
    BOOLEAN,
    BYTES,
    INTEGER,
    NONE,
    REAL,
    TEXT,
    AnyExpr,
    Atom,
    CyclicValueError,
    FixedSeq,
    Map,
    Pred,
    Predicate,
    Seq,
    TypeExpr,
    Union,
    ValidationResult,
    VarSeq,
    as_expr,
    check_predicate,
    fixed,
    from_hint,
    make_predicate,
    map_of,
    pred,
    render,
    seq,
    subsumes,
    union,
    validate,
    varseq,
)

__version__ = "0.1.0"

__all__ = [
    "ANY", "BOOLEAN", "BYTES", "INTEGER", "NONE", "REAL", "TEXT",
    "AnyExpr", "Atom", "FixedSeq", "Map", "Pred", "Predicate", "Seq",
    "TypeExpr", "Union", "VarSeq", "ValidationResult", "CyclicValueError",
    "as_expr", "check_predicate", "fixed", "from_hint", "make_predicate",
    "map_of", "pred", "render", "seq", "subsumes", "union", "validate",
    "varseq",
    "DATA_KEY", "POSITIONAL", "OPTIONAL", "VAR_POSITIONAL", "VAR_KEYWORD",
    "FnContract", "InfoFn", "ParamSpec",
    "ContractViolation", "InflowViolation", "OutflowViolation",
    "ArgumentViolation", "ConfigError", "SignatureMismatchError",
    "MissingArgumentError", "UnexpectedArgumentError",
    "normalize", "info_fn", "attach_flow", "configure_args",
    "attach_attributes", "default_param", "guard_exceptions", "stream_sink",
    "derive_params",
    "Unit", "Pipe", "make_unit", "compose", "run", "merge_args",
    "describe", "dump_pipe", "BadNameError", "DuplicateStepNameError",
    "IncompatibleStepsError", "UnresolvedArgError", "ConflictError",
    "Case", "CaseReport", "SandboxFailure", "ENV_TOGGLE",
    "run_cases", "sandbox", "sandboxed", "report_line",
    "__version__",
]
