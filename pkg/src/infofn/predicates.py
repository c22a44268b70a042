"""Ready-made predicates: numeric ranges, choices, and matrix constraints.

The matrix predicates follow the duck-typing idea: anything convertible
to a 2-D numeric numpy array counts as a matrix, so nested lists, numpy
arrays, and array-likes from other libraries all pass the same checks.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .typeexpr import Predicate


def _as_matrix(value: Any) -> np.ndarray | None:
    """Return `value` as a 2-D numeric array, or None if it is not one."""
    try:
        arr = np.asarray(value)
    except Exception:
        return None
    if arr.ndim != 2 or not np.issubdtype(arr.dtype, np.number):
        return None
    return arr


def _is_matrix(value: Any) -> bool:
    return _as_matrix(value) is not None


def _is_symmetric(value: Any) -> bool:
    arr = _as_matrix(value)
    return (
        arr is not None
        and arr.shape[0] == arr.shape[1]
        and bool(np.array_equal(arr, arr.T))
    )


def _eigenvalues_if_symmetric(value: Any) -> np.ndarray | None:
    if not _is_symmetric(value):
        return None
    return np.linalg.eigvalsh(np.asarray(value, dtype=float))


def _is_positive_definite(value: Any) -> bool:
    eig = _eigenvalues_if_symmetric(value)
    return eig is not None and bool(np.all(eig > 0))


def _is_positive_semidefinite(value: Any) -> bool:
    eig = _eigenvalues_if_symmetric(value)
    return eig is not None and bool(np.all(eig >= 0))


matrix_like = Predicate(
    name="matrix",
    check=_is_matrix,
    description="convertible to a 2-D numeric array",
)

symmetric = Predicate(
    name="symmetric",
    check=_is_symmetric,
    description="square matrix equal to its transpose",
)

# Definiteness is read in the symmetric real sense: non-symmetric input
# does not match, rather than being symmetrized silently.
positive_definite = Predicate(
    name="positive_definite",
    check=_is_positive_definite,
    description="symmetric matrix with all eigenvalues > 0",
)

positive_semidefinite = Predicate(
    name="positive_semidefinite",
    check=_is_positive_semidefinite,
    description="symmetric matrix with all eigenvalues >= 0",
)


def between(lo: float, hi: float) -> Predicate:
    """Numeric value in the closed interval [lo, hi]; bools do not count."""

    def check(value: Any) -> bool:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return False
        return lo <= value <= hi

    return Predicate(
        name=f"between({lo},{hi})",
        check=check,
        description=f"number in [{lo}, {hi}]",
    )


def one_of(*choices: Any) -> Predicate:
    """Membership in a fixed set of allowed values."""
    allowed = tuple(choices)

    def check(value: Any) -> bool:
        return any(value == c for c in allowed)

    return Predicate(
        name=f"one_of({', '.join(repr(c) for c in allowed)})",
        check=check,
        description=f"one of {allowed!r}",
    )


def positive_number() -> Predicate:
    """Strictly positive int or float; bools do not count."""

    def check(value: Any) -> bool:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return False
        return value > 0

    return Predicate(name="positive", check=check, description="number > 0")
