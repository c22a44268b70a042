"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Verdict lines are written past pytest's capture so they appear in the
live run output regardless of capture mode.
"""

import contextlib
import os
import random
import sys
import time

import pytest

from infofn.bench import BenchConfig, run_benchmark
from infofn.contract import attach_flow, normalize
from infofn.demo import demo_main
from infofn.image import GrayImage, is_gray_image, load_pgm, save_pgm, synthetic_image
from infofn.pipeline import IncompatibleStepsError, compose, make_unit
from infofn.predicates import (
    matrix_like,
    positive_definite,
    positive_semidefinite,
    symmetric,
)
from infofn.testkit import Case, run_cases, sandbox
from infofn.typeexpr import TEXT, Pred, seq, union, validate, varseq

from .oracles import eig2x2
from .test_normalize_equivalence import (
    _direct_call,
    _make_record,
    _make_signature,
)


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL", file=sys.__stdout__)
        raise
    print(f"[acceptance] {name}: PASS", file=sys.__stdout__)


def test_benchmark_reproduction(capsys):
    """Defaults: every mean in [0.100 s, 0.105 s]; decorated overhead < 5 ms."""
    with criterion("benchmark reproduction"):
        cfg = BenchConfig()  # 30 trials, 0.1 s sleep, 4 configs, 3 warmups
        _, summary = run_benchmark(cfg)
        for label, stats in summary.items():
            assert 0.100 <= stats["mean_s"] <= 0.105, (label, stats["mean_s"])
        base = summary["NoDeco"]["mean_s"]
        for label in ("FlowConf", "ArgConf", "FlowConf+ArgConf"):
            overhead = summary[label]["mean_s"] - base
            assert overhead < 0.005, (label, overhead)
        capsys.readouterr()


def test_code6_behavior_suite():
    """Union[text, seq[text]] inflow behavior, then widening with varseq."""
    with criterion("flow contract behavior suite"):
        entry = union(TEXT, seq(TEXT))
        assert validate("a string", entry).ok
        assert validate(["a", "b"], entry).ok
        bad = validate(["a", 7, "c"], entry)
        assert not bad.ok
        assert bad.path == (1,)
        assert not validate(("a", "b"), entry).ok
        widened = union(TEXT, seq(TEXT), varseq(TEXT))
        assert validate(("a", "b"), widened).ok


def test_matrix_constraint_suite():
    """Symmetry/definiteness verdicts, each checked against the 2x2 eigenvalue oracle."""
    with criterion("matrix constraint suite"):
        identity = [[1, 0], [0, 1]]
        zero = [[0, 0], [0, 0]]
        skewed = [[1, 2], [3, 4]]

        assert eig2x2(identity) == (1.0, 1.0)  # both > 0
        assert symmetric(identity)
        assert positive_definite(identity)
        assert positive_semidefinite(identity)

        assert eig2x2(zero) == (0.0, 0.0)  # >= 0 but not > 0
        assert symmetric(zero)
        assert positive_semidefinite(zero)
        assert not positive_definite(zero)

        assert skewed[0][1] != skewed[1][0]
        assert not symmetric(skewed)


def test_normalization_equivalence_200_of_200():
    """Normalized call equals direct call on 200 randomized pairs."""
    with criterion("normalization equivalence 200/200"):
        rng = random.Random(20240817)
        matches = 0
        for _ in range(200):
            fn, pos, opt, vp, has_vk = _make_signature(rng)
            record = _make_record(rng, pos, opt, vp, has_vk)
            if normalize(fn)(**record) == _direct_call(fn, record, pos, opt, vp, has_vk):
                matches += 1
        assert matches == 200


def test_data_free_composition():
    """Incompatible junction rejected with zero executions; processing nests."""
    with criterion("data-free composition"):
        calls = []

        def counting(name, ret):
            def body(data):
                calls.append(name)
                return ret

            return body

        matrix_unit = make_unit(
            attach_flow(
                normalize(counting("mk", [[1]]), name="mk"),
                return_tp=Pred(matrix_like),
            ),
            "mk",
        )
        text_unit = make_unit(
            attach_flow(
                normalize(counting("tx", "t"), name="tx"), entry_tp=TEXT, return_tp=TEXT
            ),
            "tx",
        )
        with pytest.raises(IncompatibleStepsError):
            compose("broken", [matrix_unit, text_unit])
        assert calls == []

        gray = Pred(is_gray_image)
        steps = [
            make_unit(attach_flow(counting(n, None), entry_tp=gray, return_tp=gray), n)
            for n in ("crop", "denoise", "resample")
        ]
        processing = compose("processing", steps)
        experiment = compose(
            "experiment",
            [processing, make_unit(attach_flow(counting("edge", None), entry_tp=gray, return_tp=gray), "edge")],
        )
        assert calls == []  # composition ran no bodies
        flat = [name for name, _ in experiment._flat_units()]
        assert flat == ["processing.crop", "processing.denoise", "processing.resample", "edge"]


def test_demo_determinism(tmp_path, capsys):
    """Three identical runs matching the frozen golden files; flat input -> zero edges."""
    with criterion("demo determinism"):
        sample = str(tmp_path / "sample.pgm")
        save_pgm(synthetic_image(), sample)
        golden_dir = os.path.join(os.path.dirname(__file__), "data")

        outputs = []
        for i in range(3):
            out_dir = str(tmp_path / f"run{i}")
            assert demo_main(["--in", sample, "--out-dir", out_dir]) == 0
            outputs.append(
                tuple(
                    open(os.path.join(out_dir, name), "rb").read()
                    for name in ("intermediate.pgm", "final.pgm")
                )
            )
        assert outputs[0] == outputs[1] == outputs[2]
        golden = tuple(
            open(os.path.join(golden_dir, f"golden_{tag}.pgm"), "rb").read()
            for tag in ("intermediate", "final")
        )
        assert outputs[0] == golden

        flat = str(tmp_path / "flat.pgm")
        save_pgm(GrayImage(64, 64, tuple([90] * 64 * 64)), flat)
        out_dir = str(tmp_path / "flat_out")
        assert demo_main(["--in", flat, "--out-dir", out_dir]) == 0
        final = load_pgm(os.path.join(out_dir, "final.pgm"))
        assert set(final.pixels) == {0}
        capsys.readouterr()


def test_testkit_properties():
    """Sleeper timing, disabled no-op, and full report counts."""
    with criterion("testkit properties"):
        def sleeper(data):
            time.sleep(0.1)
            return data

        reports = run_cases(sleeper, [Case(args={"data": 1}, expect=1)])
        assert reports[0].duration_s >= 0.1

        executed = []

        def target(data):
            executed.append(data)
            return data

        assert sandbox(target, [Case(args={"data": 1})], enabled=False) is target
        assert executed == []

        cases = [
            Case(args={"data": 1}, expect=1),
            Case(args={"data": 1}, expect=2),  # the failing one
            Case(args={"data": 1}),
        ]
        reports = run_cases(target, cases)
        assert len(reports) == len(cases)
        assert [r.passed for r in reports] == [True, False, True]
