"""8-bit grayscale images and the atomic operations of the demo pipeline.

Images are immutable row-major pixel grids in [0, 255]. All kernel
operations use 3x3 neighborhoods with replicate border padding, and
results are clamped to [0, 255] then rounded half-up, so outputs are
bit-exact across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contract import ArgumentViolation
from .typeexpr import Predicate, ValidationResult


class FormatError(ValueError):
    """The file is not a binary 8-bit PGM in the accepted form."""


class UnknownMethodError(ValueError):
    """An edge-enhancement label outside the supported set."""


@dataclass(frozen=True)
class GrayImage:
    """Row-major 8-bit grayscale image."""

    width: int
    height: int
    pixels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pixels", tuple(self.pixels))
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be at least 1x1")
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"pixel count {len(self.pixels)} != {self.width}x{self.height}"
            )
        for p in self.pixels:
            if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p <= 255:
                raise ValueError(f"pixel value {p!r} outside [0, 255]")

    def to_array(self) -> np.ndarray:
        return np.array(self.pixels, dtype=np.int64).reshape(self.height, self.width)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "GrayImage":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        height, width = arr.shape
        return cls(width=width, height=height, pixels=tuple(int(v) for v in arr.ravel()))

    def __repr__(self) -> str:
        return f"<GrayImage {self.width}x{self.height}>"


is_gray_image = Predicate(
    name="gray_image",
    check=lambda v: isinstance(v, GrayImage),
    description="an 8-bit grayscale image",
)


@dataclass(frozen=True)
class Kernel:
    """Square convolution kernel with an integer-preserving divisor."""

    size: int
    weights: tuple[tuple[float, ...], ...]
    normalizer: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(tuple(row) for row in self.weights))
        if self.size % 2 != 1:
            raise ValueError("kernel size must be odd")
        if self.normalizer == 0:
            raise ValueError("kernel normalizer must be nonzero")
        if len(self.weights) != self.size or any(len(r) != self.size for r in self.weights):
            raise ValueError(f"weights must be {self.size}x{self.size}")


MEAN3 = Kernel(3, ((1, 1, 1), (1, 1, 1), (1, 1, 1)), 9)
GAUSSIAN3 = Kernel(3, ((1, 2, 1), (2, 4, 2), (1, 2, 1)), 16)
LAPLACIAN3 = Kernel(3, ((0, 1, 0), (1, -4, 1), (0, 1, 0)), 1)
PREWITT_X = Kernel(3, ((-1, 0, 1), (-1, 0, 1), (-1, 0, 1)), 1)
PREWITT_Y = Kernel(3, ((-1, -1, -1), (0, 0, 0), (1, 1, 1)), 1)

DENOISE_KERNELS = {"mean": MEAN3, "gaussian3": GAUSSIAN3}
EDGE_METHODS = ("prewitt", "laplacian")


def load_pgm(path: str) -> GrayImage:
    """Read a binary PGM (magic P5, maxval 255) with exact pixel round-trip."""
    with open(path, "rb") as fh:
        blob = fh.read()
    pos = 0

    def next_token() -> bytes:
        nonlocal pos
        while pos < len(blob):
            c = blob[pos : pos + 1]
            if c == b"#":
                while pos < len(blob) and blob[pos : pos + 1] != b"\n":
                    pos += 1
            elif c.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(blob) and not blob[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated PGM header")
        return blob[start:pos]

    magic = next_token()
    if magic != b"P5":
        raise FormatError(f"expected binary PGM magic P5, got {magic!r}")
    try:
        width, height, maxval = (int(next_token()) for _ in range(3))
    except ValueError as exc:
        raise FormatError(f"bad PGM header: {exc}") from None
    if width < 1 or height < 1:
        raise FormatError("PGM dimensions must be positive")
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(blob) or not blob[pos : pos + 1].isspace():
        raise FormatError("missing whitespace after maxval")
    pos += 1
    payload = blob[pos:]
    if len(payload) < width * height:
        raise FormatError("truncated PGM payload")
    if len(payload) > width * height:
        raise FormatError("trailing data after PGM payload")
    return GrayImage(width=width, height=height, pixels=tuple(payload))


def save_pgm(img: GrayImage, path: str) -> None:
    """Write a binary PGM; `load_pgm(save_pgm(img))` is the identity."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + bytes(img.pixels))


def _arg_violation(fn: str, arg: str, expected: str, actual: str) -> ArgumentViolation:
    return ArgumentViolation(
        fn, arg, ValidationResult(ok=False, expected=expected, actual=actual)
    )


def crop(data: GrayImage, box: tuple[int, int, int, int]) -> GrayImage:
    """Exact sub-rectangle copy; box is (x0, y0, w, h) in pixel units."""
    x0, y0, w, h = box
    if x0 < 0 or y0 < 0 or w < 1 or h < 1 or x0 + w > data.width or y0 + h > data.height:
        raise _arg_violation(
            "crop",
            "box",
            f"box inside {data.width}x{data.height} image",
            f"(x0={x0}, y0={y0}, w={w}, h={h})",
        )
    arr = data.to_array()
    return GrayImage.from_array(arr[y0 : y0 + h, x0 : x0 + w])


def _correlate3(arr: np.ndarray, kernel: Kernel) -> np.ndarray:
    """3x3 cross-correlation with replicate padding, unnormalized."""
    height, width = arr.shape
    padded = np.pad(arr.astype(np.float64), 1, mode="edge")
    out = np.zeros((height, width), dtype=np.float64)
    for dy in range(3):
        for dx in range(3):
            w = kernel.weights[dy][dx]
            if w:
                out += w * padded[dy : dy + height, dx : dx + width]
    return out


def _to_pixels(arr: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] then round half-up."""
    return np.floor(np.clip(arr, 0, 255) + 0.5).astype(np.int64)


def denoise(data: GrayImage, kernel: str = "mean") -> GrayImage:
    """3x3 smoothing: "mean" (all-ones/9) or "gaussian3" ([1 2 1] outer /16)."""
    spec = DENOISE_KERNELS.get(kernel)
    if spec is None:
        raise ValueError(f"unknown denoise kernel {kernel!r}")
    response = _correlate3(data.to_array(), spec) / spec.normalizer
    return GrayImage.from_array(_to_pixels(response))


def resample(data: GrayImage, scale: float) -> GrayImage:
    """Nearest-neighbor rescale: source index = floor(dest / scale), clamped."""
    if not isinstance(scale, (int, float)) or isinstance(scale, bool) or scale <= 0:
        raise _arg_violation("resample", "scale", "number > 0", repr(scale))
    out_w = max(1, int(np.floor(data.width * scale)))
    out_h = max(1, int(np.floor(data.height * scale)))
    xs = np.clip(np.floor(np.arange(out_w) / scale).astype(np.int64), 0, data.width - 1)
    ys = np.clip(np.floor(np.arange(out_h) / scale).astype(np.int64), 0, data.height - 1)
    arr = data.to_array()
    return GrayImage.from_array(arr[np.ix_(ys, xs)])


def edge(data: GrayImage, method: str = "prewitt") -> GrayImage:
    """Edge enhancement: Prewitt gradient magnitude or 3x3 Laplacian response.

    Only "prewitt" and "laplacian" are implemented; anything else (Canny,
    Laplacian-of-Gaussian, ...) raises UnknownMethodError.
    """
    arr = data.to_array()
    if method == "prewitt":
        gx = _correlate3(arr, PREWITT_X)
        gy = _correlate3(arr, PREWITT_Y)
        response = np.sqrt(gx * gx + gy * gy)
    elif method == "laplacian":
        response = np.abs(_correlate3(arr, LAPLACIAN3))
    else:
        raise UnknownMethodError(
            f"unknown edge method {method!r}; supported: {', '.join(EDGE_METHODS)}"
        )
    return GrayImage.from_array(_to_pixels(response))


def synthetic_image(width: int = 64, height: int = 64) -> GrayImage:
    """The bundled test subject: a horizontal gradient with a bright disk."""
    pixels = []
    for y in range(height):
        for x in range(width):
            if (x - 40) ** 2 + (y - 24) ** 2 <= 100:
                pixels.append(255)
            else:
                pixels.append((x * 255) // max(1, width - 1))
    return GrayImage(width=width, height=height, pixels=tuple(pixels))
