"""Acceptance suite: one test per shipping criterion, one verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Hard criteria assert; criteria marked REPORTED print their measured outcome
without asserting a direction (they correspond to claims that have no
numeric oracle and are evaluated on the bundled synthetic corpus).
"""
import time

import numpy as np

from ridgekit.cli import main as cli_main
from ridgekit.hardware.adders import BitVector, cla_add, dadda_reduce_17
from ridgekit.hardware.mvcu import mvcu_mean
from ridgekit.hardware.pipeline import (Pipeline, PipelineConfig,
                                        timing_report, verify_against_reference)
from ridgekit.metrics import snr_ms
from ridgekit.morphology import build_lut, iteration_profile, thin, thin_pass
from ridgekit.pnm import save_pgm
from ridgekit.threshold import (ClassStats, binarize, build_block_grid,
                                optimal_threshold, select_block_size,
                                threshold_map)

#: The six candidate neighborhoods (single runs of 5 or 6 ones) that the
#: subiteration-I corner conditions strike from the count-only candidate set.
OMITTED_BY_CORNER_CONDITIONS = frozenset({
    0b00011111,  # P2..P6
    0b01111100,  # P4..P8
    0b00111111,  # P2..P7
    0b01111110,  # P3..P8
    0b11111100,  # P4..P9
    0b10011111,  # P9,P2..P6
})


def _verdict(num, status, detail):
    print(f"\nACCEPTANCE CRITERION {num}: {status} - {detail}")


def _raw_conditions(code, phase):
    """Deletion conditions restated from scratch (independent of the library)."""
    ring = [(code >> i) & 1 for i in range(8)]
    p2, p3, p4, p5, p6, p7, p8, p9 = ring
    if not 3 <= sum(ring) <= 6:
        return False
    transitions = sum(ring[i] == 0 and ring[(i + 1) % 8] == 1 for i in range(8))
    if transitions != 1:
        return False
    if phase == 1:
        return not (p2 and p4 and p6) and not (p4 and p6 and p8)
    return not (p2 and p4 and p8) and not (p2 and p6 and p8)


def test_criterion_1_lut_cardinality():
    lut = build_lut()
    assert int(lut.phase1.sum()) == 26
    assert int(lut.phase2.sum()) == 26
    for code in range(256):
        assert bool(lut.phase1[code]) == _raw_conditions(code, 1)
        assert bool(lut.phase2[code]) == _raw_conditions(code, 2)
    _verdict(1, "PASS", "26 deletable codes per subiteration, exhaustively "
                        "matching the raw conditions")


def test_criterion_2_thirtytwo_to_twentysix():
    def count_conditions_only(code):
        ring = [(code >> i) & 1 for i in range(8)]
        transitions = sum(ring[i] == 0 and ring[(i + 1) % 8] == 1
                          for i in range(8))
        return 3 <= sum(ring) <= 6 and transitions == 1

    candidates = {code for code in range(256) if count_conditions_only(code)}
    assert len(candidates) == 32
    eliminated = {code for code in candidates if not _raw_conditions(code, 1)}
    assert eliminated == OMITTED_BY_CORNER_CONDITIONS
    assert len(candidates) - len(eliminated) == 26
    _verdict(2, "PASS", "32 count-only candidates; corner conditions remove "
                        "exactly the 6 tabulated runs")


def test_criterion_3_equal_prior_reduction():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        mu1, mu2 = rng.uniform(0, 255, 2)
        if mu1 == mu2:
            continue
        stats = ClassStats(mu1=mu1, mu2=mu2, sigma2=rng.uniform(0, 2000),
                           p1=0.5, p2=0.5)
        midpoint = (mu1 + mu2) / 2
        assert abs(optimal_threshold(stats) - midpoint) <= 1e-12 * max(1.0, abs(midpoint))
    _verdict(3, "PASS", "equal priors reduce the optimal threshold to the "
                        "class-mean midpoint (1000 random draws, 1e-12 rel)")


def test_criterion_4_datapath_equivalence():
    rng = np.random.default_rng(2)
    for _ in range(10_000):
        vals = rng.integers(0, 256, 17)
        s, c = dadda_reduce_17([BitVector(8, int(v)) for v in vals])
        assert cla_add(s, c).value == int(vals.sum())
    blocks = rng.integers(0, 256, (10_000, 256))
    for block in blocks:
        assert mvcu_mean([int(v) for v in block]) == int(block.sum()) // 256
    _verdict(4, "PASS", "CSA tree + CLA equals integer summation on 10k "
                        "operand sets; mean unit equals floor(sum/256) on 10k blocks")


def test_criterion_5_simulator_equivalence(corpus):
    started = time.perf_counter()
    cfg = PipelineConfig(record_events=False)
    checked = 0
    for img in corpus:
        report = verify_against_reference(img, cfg)
        assert report.passed, "corpus image diverged"
        checked += 1
    for seed in range(100):
        noise = np.random.default_rng(seed).integers(0, 256, (512, 512))
        report = verify_against_reference(noise.astype(np.uint8), cfg)
        assert report.passed, f"noise seed {seed} diverged"
        checked += 1
    elapsed = time.perf_counter() - started
    _verdict(5, "PASS", f"simulator bit-identical to the reference path at all "
                        f"three taps on {checked} images in {elapsed:.1f}s "
                        f"(target 60s)")


def test_criterion_6_cycle_bookkeeping(corpus):
    trace = Pipeline(PipelineConfig()).run(corpus[0])

    def spans(stage, start_tag, done_tag):
        starts = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                  if s == stage and m.startswith(start_tag)}
        dones = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                 if s == stage and m.startswith(done_tag)}
        assert set(starts) == set(dones) == set(range(trace.rows))
        return {y: dones[y] - starts[y] + 1 for y in starts}

    load_spans = spans("input", "row_load_start", "row_load_done")
    assert set(load_spans.values()) == {128}
    emit_spans = spans("output", "row_emit_start", "row_emit_done")
    assert set(emit_spans.values()) == {16}
    assert trace.phase_clocks["input"] == 512 * 128
    _verdict(6, "PASS", "every row loads in exactly 128 main clocks and "
                        "leaves in exactly 16")


def test_criterion_7_thinning_exhaustion(corpus):
    def tail_fraction(img):
        profile = iteration_profile(img, 10)
        return max(profile[6:])

    for width in range(1, 14):
        bar = np.zeros((50, width + 10), dtype=np.uint8)
        bar[5:45, 5:5 + width] = 1
        assert tail_fraction(bar) < 0.01, f"bar width {width} not exhausted"
    worst = 0.0
    for img in corpus:
        grid = build_block_grid(512, 512, 16, 1)
        binarized = binarize(img, threshold_map(img, grid), "dark")
        worst = max(worst, tail_fraction(binarized))
    assert worst < 0.01
    _verdict(7, "PASS", f"deletions beyond iteration 6 stay under 1% of "
                        f"iteration 1 (corpus worst case {worst:.4f})")


def test_criterion_8_monotonicity_and_fixed_point():
    rng = np.random.default_rng(3)
    for _ in range(25):
        shape = (int(rng.integers(8, 40)), int(rng.integers(8, 40)))
        img = (rng.random(shape) < rng.uniform(0.2, 0.8)).astype(np.uint8)
        cur = img
        for phase in (1, 2, 1, 2):
            nxt, _ = thin_pass(cur, phase)
            assert not (nxt & ~cur & 1).any(), "a pass added foreground"
            cur = nxt
        settled = thin(img, iterations=16)
        assert settled.changed_per_iteration[-1] == 0
        for phase in (1, 2):
            again, changed = thin_pass(settled.image, phase)
            assert changed == 0
            assert np.array_equal(again, settled.image)
    _verdict(8, "PASS", "passes never add foreground and quiescence is a "
                        "fixed point (25 random rasters)")


def test_criterion_9_reference_figures_and_overlap_direction(corpus):
    # Hard half: the reference hardware figures are echoed, never computed.
    trace = Pipeline(PipelineConfig(record_events=False)).run(corpus[0])
    report = timing_report(trace, 79.4e6)
    text = report.format()
    assert "79.4" in text and "6.84" in text
    assert report.seconds == trace.main_clocks / 79.4e6

    # Reported half: overlap-1 versus overlap-0 against the global-Otsu
    # reference.  No numeric oracle exists for this comparison, so the
    # measured majority is reported, not asserted.
    from ridgekit.threshold import otsu_binarize
    better = 0
    for img in corpus:
        reference = otsu_binarize(img, "dark")
        values = {}
        for overlap in (0, 1):
            grid = build_block_grid(512, 512, 16, overlap)
            current = binarize(img, threshold_map(img, grid), "dark")
            values[overlap] = snr_ms(reference, current)
            assert values[overlap] > 0
        if values[1] >= values[0]:
            better += 1
    _verdict(9, "REPORTED", f"FPGA figures echoed verbatim; overlap-1 SNR >= "
                            f"overlap-0 on {better}/{len(corpus)} synthetic "
                            f"corpus images (directional claim not asserted)")


def test_criterion_10_block_size_experiment(corpus, tmp_path, capsys):
    # Hard half: constructed images with known winners and tie-breaks.
    constant = np.full((256, 256), 70, dtype=np.uint8)
    assert select_block_size(constant).selected == 4   # all zero, smallest N

    cells = np.add.outer(np.arange(256) // 16, np.arange(256) // 16) % 2
    checker = (cells * 255).astype(np.uint8)
    assert select_block_size(checker).selected == 16   # 16 px cells

    path = tmp_path / "const.pgm"
    path.write_bytes(save_pgm(constant))
    assert cli_main(["blocksize", str(path)]) == 0
    first = capsys.readouterr().out
    assert cli_main(["blocksize", str(path)]) == 0
    assert capsys.readouterr().out == first
    assert "selected: N=4" in first

    # Reported half: the winning size on the bundled corpus.
    selected = [select_block_size(img).selected for img in corpus]
    wins = selected.count(16)
    _verdict(10, "PASS", f"constructed cases deterministic and tie-break "
                         f"correct; corpus selects N=16 on {wins}/"
                         f"{len(corpus)} images (reported)")
