import numpy as np
import pytest

from ridgekit.hardware.mvcu import MvcuState, mvcu_cycle
from ridgekit.hardware.pipeline import (MvcuLaneBank, Pipeline, PipelineConfig,
                                        SimTrace, build_pipeline, export_trace,
                                        reference_taps, timing_report,
                                        verify_against_reference)
from ridgekit.synth import synthetic_fingerprint


def _noise(rng, height, width):
    return rng.integers(0, 256, (height, width)).astype(np.uint8)


class TestConfig:
    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.pixels_per_clock == 4
        assert cfg.input_clocks_per_row == 128
        assert cfg.output_clocks_per_row == 16
        assert cfg.mvcu_count == 35

    def test_mvcu_count_without_overlap(self):
        assert PipelineConfig(overlap=0).mvcu_count == 32

    def test_invalid_configs(self):
        with pytest.raises(ValueError):
            PipelineConfig(row_width=100)       # not a bus-width multiple
        with pytest.raises(ValueError):
            PipelineConfig(block_size=8)
        with pytest.raises(ValueError):
            PipelineConfig(overlap=16)
        with pytest.raises(ValueError):
            PipelineConfig(polarity="up")
        with pytest.raises(ValueError):
            PipelineConfig(clock_hz=0)

    def test_thinning_stage_structure(self):
        pipe = build_pipeline(PipelineConfig())
        assert len(pipe.superstages) == 6
        assert all(ss.stage_count == 6 for ss in pipe.superstages)
        assert pipe.thinning_stage_count == 36


class TestLaneBank:
    def test_matches_scalar_unit_cycle_by_cycle(self, rng):
        x_origins = (0, 15, 30, 48)
        bank = MvcuLaneBank(x_origins, 16)
        states = [MvcuState() for _ in x_origins]
        for _ in range(16):
            row = rng.integers(0, 256, 64).astype(np.uint8)
            bank.feed(row)
            for lane, x0 in enumerate(x_origins):
                states[lane] = mvcu_cycle(states[lane],
                                          [int(v) for v in row[x0:x0 + 16]])
                assert bank.low[lane] == states[lane].low_feedback
                assert bank.high[lane] == states[lane].high_accum

    def test_latch_returns_means_and_resets(self, rng):
        bank = MvcuLaneBank((0,), 16)
        block = rng.integers(0, 256, (16, 16)).astype(np.uint8)
        for row in block:
            bank.feed(row)
        thresholds = bank.latch_and_reset()
        assert thresholds[0] == int(block.sum(dtype=np.int64)) // 256
        assert bank.cycles == 0 and bank.low[0] == 0 and bank.high[0] == 0


class TestStep:
    def test_row_zero_latched_after_128_steps(self, rng):
        pipe = build_pipeline()
        pipe.load(_noise(rng, 16, 512))
        for _ in range(127):
            pipe.step()
        assert pipe.distributor.next_row == 0      # last 4 pixels still pending
        assert pipe.distributor.loaded_px == 508
        pipe.step()                                # 128th clock: load completes,
        assert pipe.pipeline_clocks == 1           # the counter wraps, ticks once,
        assert pipe.distributor.next_row == 1
        assert pipe.distributor.pending is None    # and row 0 moves downstream
        assert pipe.binsection.fed == 1

    def test_events_report_load_and_tick(self, rng):
        pipe = build_pipeline()
        pipe.load(_noise(rng, 16, 512))
        events = []
        for _ in range(128):
            events += pipe.step()
        messages = [f"{stage} {msg}" for _, stage, msg in events]
        assert "input row_load_start y=0" in messages
        assert "input row_load_done y=0" in messages
        assert "pipeline tick 1" in messages

    def test_step_without_load_is_noop(self):
        pipe = build_pipeline()
        assert pipe.step() == [(0, "pipeline", "noop")]

    def test_step_after_drain_is_noop(self, rng):
        cfg = PipelineConfig(row_width=64, record_events=False)
        pipe = build_pipeline(cfg)
        trace = pipe.run(_noise(rng, 16, 64))
        clocks = pipe.main_clocks
        assert pipe.step() == [(clocks, "pipeline", "noop")]
        assert pipe.main_clocks == clocks
        assert trace.main_clocks == clocks


class TestRunEquivalence:
    @pytest.mark.parametrize("height,width,overlap", [
        (64, 64, 1), (64, 64, 0), (96, 64, 1), (48, 128, 5), (17, 64, 1),
    ])
    def test_noise_equivalence_across_geometries(self, rng, height, width, overlap):
        cfg = PipelineConfig(row_width=width, overlap=overlap,
                             record_events=False)
        report = verify_against_reference(_noise(rng, height, width), cfg)
        assert report.passed

    def test_light_polarity_equivalence(self, rng):
        cfg = PipelineConfig(row_width=64, polarity="light", record_events=False)
        report = verify_against_reference(_noise(rng, 64, 64), cfg)
        assert report.passed

    def test_zero_superstages_bypass_thinning(self, rng):
        cfg = PipelineConfig(row_width=64, thinning_superstages=0,
                             record_events=False)
        report = verify_against_reference(_noise(rng, 32, 64), cfg)
        assert report.passed
        assert np.array_equal(report.trace.thinned, report.trace.dilated)

    def test_constant_image_light_polarity_binarizes_to_zero(self):
        img = np.full((32, 64), 7, dtype=np.uint8)
        cfg = PipelineConfig(row_width=64, polarity="light", record_events=False)
        trace = Pipeline(cfg).run(img)
        assert not trace.binarized.any()

    def test_full_frame_fingerprint(self):
        img = synthetic_fingerprint(seed=1)
        report = verify_against_reference(img)
        assert report.passed
        assert report.trace.binarized.shape == (512, 512)

    def test_width_mismatch_rejected(self, rng):
        pipe = build_pipeline()
        with pytest.raises(ValueError, match="width"):
            pipe.load(_noise(rng, 64, 256))

    def test_short_image_rejected(self, rng):
        pipe = build_pipeline(PipelineConfig(row_width=64))
        with pytest.raises(ValueError, match="height"):
            pipe.load(_noise(rng, 8, 64))


class TestTraceInvariants:
    @pytest.fixture(scope="class")
    @staticmethod
    def trace():
        img = synthetic_fingerprint(256, 192, seed=9)
        cfg = PipelineConfig(row_width=256)
        return Pipeline(cfg).run(img)

    def test_phase_clocks_account_for_every_main_clock(self, trace):
        assert sum(trace.phase_clocks.values()) == trace.main_clocks

    def test_pipeline_clock_is_divided_main_clock(self, trace):
        assert trace.pipeline_clocks == trace.main_clocks // trace.config.input_clocks_per_row

    def test_input_phase_is_full_load_time(self, trace):
        assert trace.phase_clocks["input"] == trace.rows * trace.config.input_clocks_per_row

    def test_threshold_latch_cadence(self, trace):
        gaps = np.diff(trace.latch_ticks)
        assert (gaps == 16).all()

    def test_one_latch_per_block_row(self, trace):
        from ridgekit.threshold import build_block_grid
        grid = build_block_grid(256, trace.rows, 16, 1)
        assert len(trace.latch_ticks) == len(grid.y_origins)

    def test_row_load_takes_exactly_128_clocks_each(self, trace):
        per_row = trace.config.input_clocks_per_row
        starts = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                  if s == "input" and m.startswith("row_load_start")}
        dones = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                 if s == "input" and m.startswith("row_load_done")}
        assert set(starts) == set(dones) == set(range(trace.rows))
        for y in starts:
            assert dones[y] - starts[y] + 1 == per_row

    def test_row_emit_takes_exactly_16_clocks_each(self, trace):
        per_row = trace.config.output_clocks_per_row
        starts = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                  if s == "output" and m.startswith("row_emit_start")}
        dones = {int(m.split("y=")[1]): clk for clk, s, m in trace.events
                 if s == "output" and m.startswith("row_emit_done")}
        assert set(starts) == set(dones) == set(range(trace.rows))
        for y in starts:
            assert dones[y] - starts[y] + 1 == per_row

    def test_binarize_buffer_occupancy_bounded_by_sixteen_rows(self, trace):
        assert trace.max_occupancy["binarize.emit"] <= 16

    def test_determinism(self):
        img = synthetic_fingerprint(128, 64, seed=4)
        cfg = PipelineConfig(row_width=128)
        a = Pipeline(cfg).run(img)
        b = Pipeline(cfg).run(img)
        assert a.main_clocks == b.main_clocks
        assert a.events == b.events
        assert np.array_equal(a.thinned, b.thinned)

    def test_run_equals_manual_stepping(self, rng):
        img = _noise(rng, 32, 64)
        cfg = PipelineConfig(row_width=64)
        auto = Pipeline(cfg).run(img)
        pipe = Pipeline(cfg)
        pipe.load(img)
        while not pipe.finished:
            pipe.step()
        manual = pipe.trace()
        assert manual.main_clocks == auto.main_clocks
        assert manual.events == auto.events
        assert np.array_equal(manual.thinned, auto.thinned)


class TestFaultInjection:
    def test_single_lut_fault_corrupts_only_thinning(self, rng):
        img = _noise(rng, 64, 64)
        cfg = PipelineConfig(row_width=64, record_events=False)
        pipe = Pipeline(cfg)
        # Make a fully-surrounded pixel deletable in the first window
        # circuit: any solid region now erodes where it should not.
        pipe.superstages[0].tpc1.table[255] = 1
        trace = pipe.run(img)
        ref_bin, ref_dil, ref_thin = reference_taps(img, cfg)
        assert np.array_equal(trace.binarized, ref_bin)
        assert np.array_equal(trace.dilated, ref_dil)
        diff = int(np.count_nonzero(trace.thinned != ref_thin))
        assert diff > 0

    def test_fault_free_pipeline_recovers(self, rng):
        img = _noise(rng, 64, 64)
        cfg = PipelineConfig(row_width=64, record_events=False)
        report = verify_against_reference(img, cfg)
        assert report.passed


class TestTimingReport:
    def test_zero_clocks_zero_seconds(self):
        trace = SimTrace(config=PipelineConfig(), rows=0, main_clocks=0,
                         pipeline_clocks=0, phase_clocks={}, latch_ticks=[],
                         max_occupancy={}, binarized=np.zeros((1, 1), np.uint8),
                         dilated=np.zeros((1, 1), np.uint8),
                         thinned=np.zeros((1, 1), np.uint8))
        report = timing_report(trace, 79.4e6)
        assert report.seconds == 0.0

    def test_input_phase_for_512_rows(self):
        img = synthetic_fingerprint(seed=2)
        trace = Pipeline(PipelineConfig(record_events=False)).run(img)
        assert trace.phase_clocks["input"] == 512 * 128 == 65536

    def test_report_echoes_reference_design_figures(self, rng):
        cfg = PipelineConfig(row_width=64, record_events=False)
        trace = Pipeline(cfg).run(_noise(rng, 16, 64))
        report = timing_report(trace, 79.4e6)
        text = report.format()
        assert "79.4" in text
        assert "6.84" in text
        assert report.seconds == trace.main_clocks / 79.4e6

    def test_rejects_nonpositive_clock(self, rng):
        cfg = PipelineConfig(row_width=64, record_events=False)
        trace = Pipeline(cfg).run(_noise(rng, 16, 64))
        with pytest.raises(ValueError):
            timing_report(trace, 0)


class TestTraceExport:
    def test_line_format(self, rng):
        cfg = PipelineConfig(row_width=64)
        trace = Pipeline(cfg).run(_noise(rng, 16, 64))
        text = export_trace(trace)
        lines = text.strip().split("\n")
        assert len(lines) == len(trace.events)
        clock, stage, rest = lines[0].split(" ", 2)
        assert clock.isdigit()
        assert stage == "input"

    def test_golden_trace(self, tmp_path):
        img = synthetic_fingerprint(32, 32, seed=11)
        cfg = PipelineConfig(row_width=32)
        trace = Pipeline(cfg).run(img)
        golden = (__import__("pathlib").Path(__file__).parent
                  / "data" / "golden_trace_32x32.txt")
        assert export_trace(trace) == golden.read_text()
