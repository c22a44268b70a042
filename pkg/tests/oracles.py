"""Independent oracles used to compute expected values before freezing them.

Everything here is deliberately naive: closed-form 2x2 eigenvalues from
the characteristic polynomial, and pure-Python nested-loop image
operations. None of it shares code with the package's implementations.
"""

from __future__ import annotations

import math


def eig2x2(m) -> tuple[float, float]:
    """Eigenvalues of a real 2x2 matrix via the characteristic polynomial.

    det(M - tI) = t^2 - (a+d) t + (ad - bc); roots are
    ((a+d) +- sqrt((a+d)^2 - 4(ad-bc))) / 2. Only real roots are expected
    by the callers (symmetric input).
    """
    (a, b), (c, d) = m
    trace = a + d
    det = a * d - b * c
    disc = trace * trace - 4 * det
    if disc < 0:
        raise ValueError("complex eigenvalues; oracle expects symmetric input")
    root = math.sqrt(disc)
    return ((trace - root) / 2, (trace + root) / 2)


def _round_half_up_clamped(x: float) -> int:
    return int(math.floor(min(255.0, max(0.0, x)) + 0.5))


def _pixel(grid: list[list[int]], x: int, y: int) -> int:
    """Replicate-padded read."""
    h = len(grid)
    w = len(grid[0])
    return grid[min(h - 1, max(0, y))][min(w - 1, max(0, x))]


def correlate3_at(grid: list[list[int]], x: int, y: int, weights) -> float:
    """Raw 3x3 cross-correlation response at one position."""
    total = 0.0
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            total += weights[dy + 1][dx + 1] * _pixel(grid, x + dx, y + dy)
    return total


def crop_walk(grid: list[list[int]], box) -> list[list[int]]:
    x0, y0, w, h = box
    return [[grid[y0 + y][x0 + x] for x in range(w)] for y in range(h)]


def denoise_walk(grid: list[list[int]], kernel: str) -> list[list[int]]:
    weights, norm = {
        "mean": (((1, 1, 1), (1, 1, 1), (1, 1, 1)), 9),
        "gaussian3": (((1, 2, 1), (2, 4, 2), (1, 2, 1)), 16),
    }[kernel]
    h, w = len(grid), len(grid[0])
    return [
        [_round_half_up_clamped(correlate3_at(grid, x, y, weights) / norm) for x in range(w)]
        for y in range(h)
    ]


def resample_walk(grid: list[list[int]], scale: float) -> list[list[int]]:
    h, w = len(grid), len(grid[0])
    out_w = max(1, int(math.floor(w * scale)))
    out_h = max(1, int(math.floor(h * scale)))
    return [
        [
            grid[min(h - 1, int(math.floor(y / scale)))][min(w - 1, int(math.floor(x / scale)))]
            for x in range(out_w)
        ]
        for y in range(out_h)
    ]


_PREWITT_X = ((-1, 0, 1), (-1, 0, 1), (-1, 0, 1))
_PREWITT_Y = ((-1, -1, -1), (0, 0, 0), (1, 1, 1))
_LAPLACIAN = ((0, 1, 0), (1, -4, 1), (0, 1, 0))


def edge_walk(grid: list[list[int]], method: str) -> list[list[int]]:
    h, w = len(grid), len(grid[0])
    out = []
    for y in range(h):
        row = []
        for x in range(w):
            if method == "prewitt":
                gx = correlate3_at(grid, x, y, _PREWITT_X)
                gy = correlate3_at(grid, x, y, _PREWITT_Y)
                row.append(_round_half_up_clamped(math.sqrt(gx * gx + gy * gy)))
            elif method == "laplacian":
                row.append(_round_half_up_clamped(abs(correlate3_at(grid, x, y, _LAPLACIAN))))
            else:
                raise ValueError(method)
        out.append(row)
    return out


def reference_walk(grid: list[list[int]], box, kernel: str, scale: float, method: str):
    """The whole demo pipeline, step by step, in plain loops.

    Returns (intermediate, final) pixel grids.
    """
    intermediate = resample_walk(denoise_walk(crop_walk(grid, box), kernel), scale)
    return intermediate, edge_walk(intermediate, method)


def grid_of(img) -> list[list[int]]:
    """Row-major GrayImage pixels as a list-of-rows grid."""
    return [
        list(img.pixels[y * img.width : (y + 1) * img.width]) for y in range(img.height)
    ]


def encode_pgm(grid: list[list[int]]) -> bytes:
    """Minimal independent P5 encoder for golden file generation."""
    h, w = len(grid), len(grid[0])
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + bytes(v for row in grid for v in row)
