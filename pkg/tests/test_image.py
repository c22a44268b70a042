"""Grayscale image operations, checked against nested-loop oracles."""

import math

import pytest

from infofn.contract import ArgumentViolation
from infofn.image import (
    FormatError,
    GrayImage,
    UnknownMethodError,
    crop,
    denoise,
    edge,
    load_pgm,
    resample,
    save_pgm,
    synthetic_image,
)

from .oracles import edge_walk, grid_of


def flat(width, height, value=0):
    return GrayImage(width, height, tuple([value] * (width * height)))


def bright_center(size=9):
    pixels = [0] * (size * size)
    pixels[(size // 2) * size + size // 2] = 255
    return GrayImage(size, size, tuple(pixels))


class TestGrayImage:
    def test_pixel_count_invariant(self):
        with pytest.raises(ValueError):
            GrayImage(2, 2, (0, 0, 0))

    def test_pixel_range_invariant(self):
        with pytest.raises(ValueError):
            GrayImage(1, 1, (256,))
        with pytest.raises(ValueError):
            GrayImage(1, 1, (-1,))

    def test_min_dimensions(self):
        with pytest.raises(ValueError):
            GrayImage(0, 1, ())

    def test_array_round_trip(self):
        img = synthetic_image()
        assert GrayImage.from_array(img.to_array()) == img


class TestPgm:
    def test_1x1_round_trip(self, tmp_path):
        img = GrayImage(1, 1, (0,))
        path = str(tmp_path / "one.pgm")
        save_pgm(img, path)
        assert load_pgm(path) == img

    def test_gradient_round_trip_byte_identical(self, tmp_path):
        img = synthetic_image()
        p1, p2 = str(tmp_path / "a.pgm"), str(tmp_path / "b.pgm")
        save_pgm(img, p1)
        save_pgm(load_pgm(p1), p2)
        assert open(p1, "rb").read() == open(p2, "rb").read()

    def test_ascii_p2_rejected(self, tmp_path):
        path = tmp_path / "ascii.pgm"
        path.write_bytes(b"P2\n1 1\n255\n0\n")
        with pytest.raises(FormatError):
            load_pgm(str(path))

    def test_wrong_maxval_rejected(self, tmp_path):
        path = tmp_path / "deep.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(FormatError):
            load_pgm(str(path))

    def test_truncated_payload_rejected(self, tmp_path):
        path = tmp_path / "short.pgm"
        path.write_bytes(b"P5\n2 2\n255\n\x00\x01")
        with pytest.raises(FormatError):
            load_pgm(str(path))

    def test_comments_in_header_ok(self, tmp_path):
        path = tmp_path / "commented.pgm"
        path.write_bytes(b"P5\n# a comment\n1 1\n255\n\x07")
        assert load_pgm(str(path)).pixels == (7,)


class TestCrop:
    def test_full_frame_identity(self):
        img = synthetic_image()
        assert crop(img, (0, 0, 64, 64)) == img

    def test_size_arithmetic(self):
        out = crop(synthetic_image(), (8, 8, 48, 48))
        assert (out.width, out.height) == (48, 48)

    def test_out_of_bounds(self):
        with pytest.raises(ArgumentViolation) as err:
            crop(synthetic_image(), (0, 0, 65, 1))
        assert err.value.argument == "box"

    def test_negative_origin(self):
        with pytest.raises(ArgumentViolation):
            crop(synthetic_image(), (-1, 0, 4, 4))

    def test_pixels_copied_exactly(self):
        img = synthetic_image()
        out = crop(img, (3, 5, 7, 2))
        for y in range(2):
            for x in range(7):
                assert out.pixels[y * 7 + x] == img.pixels[(5 + y) * 64 + (3 + x)]


class TestDenoise:
    @pytest.mark.parametrize("kernel", ["mean", "gaussian3"])
    def test_constant_image_unchanged(self, kernel):
        img = flat(6, 4, value=77)
        assert denoise(img, kernel) == img

    def test_bright_pixel_mean_plateau(self):
        # oracle: every 3x3 window containing the bright pixel averages to
        # 255/9 = 28.33..., which rounds half-up to 28
        img = bright_center(9)
        out = denoise(img, "mean")
        grid = grid_of(out)
        expected = int(math.floor(255 / 9 + 0.5))
        assert expected == 28
        for y in range(3, 6):
            for x in range(3, 6):
                assert grid[y][x] == expected
        assert grid[0][0] == 0

    def test_1x1_unchanged(self):
        img = GrayImage(1, 1, (123,))
        assert denoise(img, "mean") == img
        assert denoise(img, "gaussian3") == img

    def test_unknown_kernel(self):
        with pytest.raises(ValueError):
            denoise(flat(2, 2), "median")


class TestResample:
    def test_scale_one_identity(self):
        img = synthetic_image()
        assert resample(img, 1.0) == img

    def test_scale_two_duplicates_blocks(self):
        img = GrayImage(2, 2, (10, 20, 30, 40))
        out = resample(img, 2.0)
        assert (out.width, out.height) == (4, 4)
        assert grid_of(out) == [
            [10, 10, 20, 20],
            [10, 10, 20, 20],
            [30, 30, 40, 40],
            [30, 30, 40, 40],
        ]

    def test_downscale(self):
        img = GrayImage(4, 4, tuple(range(16)))
        out = resample(img, 0.5)
        assert (out.width, out.height) == (2, 2)

    def test_scale_zero_rejected(self):
        with pytest.raises(ArgumentViolation) as err:
            resample(flat(2, 2), 0)
        assert err.value.argument == "scale"

    def test_negative_scale_rejected(self):
        with pytest.raises(ArgumentViolation):
            resample(flat(2, 2), -1.5)

    def test_minimum_one_pixel(self):
        out = resample(flat(4, 4, 9), 0.1)
        assert (out.width, out.height) == (1, 1)


class TestEdge:
    @pytest.mark.parametrize("method", ["prewitt", "laplacian"])
    def test_constant_image_all_zero(self, method):
        out = edge(flat(8, 8, value=200), method)
        assert set(out.pixels) == {0}

    def test_vertical_step_prewitt_matches_oracle(self):
        # left half 0, right half 255
        width, height = 8, 6
        pixels = [(0 if x < width // 2 else 255) for _ in range(height) for x in range(width)]
        img = GrayImage(width, height, tuple(pixels))
        out = edge(img, "prewitt")
        assert grid_of(out) == edge_walk(grid_of(img), "prewitt")
        grid = grid_of(out)
        for y in range(height):
            assert grid[y][3] == 255 and grid[y][4] == 255  # clamped 3*255 response
            assert grid[y][0] == 0 and grid[y][-1] == 0

    def test_laplacian_matches_oracle(self):
        img = bright_center(7)
        assert grid_of(edge(img, "laplacian")) == edge_walk(grid_of(img), "laplacian")

    def test_canny_rejected(self):
        with pytest.raises(UnknownMethodError):
            edge(flat(4, 4), "canny")

    def test_laplacian_of_gaussian_rejected(self):
        with pytest.raises(UnknownMethodError):
            edge(flat(4, 4), "log")

    def test_output_stays_in_range(self):
        out = edge(synthetic_image(), "prewitt")
        assert all(0 <= p <= 255 for p in out.pixels)


class TestSyntheticImage:
    def test_deterministic(self):
        assert synthetic_image() == synthetic_image()

    def test_shape_and_features(self):
        img = synthetic_image()
        assert (img.width, img.height) == (64, 64)
        grid = grid_of(img)
        assert grid[24][40] == 255  # disk center
        assert grid[60][0] == 0  # gradient start
        assert grid[60][63] == 255  # gradient end
