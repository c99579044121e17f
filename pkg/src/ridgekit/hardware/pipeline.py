"""Cycle-level model of the streaming preprocessing pipeline.

Structure (one main clock drives everything; dividing it by the per-row
load count yields the pipeline clock that advances rows between stages):

  input distributor   32-bit bus, 4 pixels per main clock into one row of
                      8-bit registers; 128 main clocks per 512-pixel row
  binarize section    16-row buffer over a bank of mean-value lanes (one
                      17-input CSA tree + CLA per 16-pixel lane); lane
                      outputs latch into threshold registers once per 16
                      pipeline clocks, then buffered rows compare against
                      their owner lane's latched threshold
  dilation stage      2x2 window OR combining each row with the next
  thinning            six super-stages, each six pipeline stages deep
                      (3 row buffers + subiteration-I window circuit,
                      3 row buffers + subiteration-II circuit)
  output buffer       one binary row leaves over the 32-bit bus in
                      row_width / 32 main clocks

Overlapped block rows share image rows, so the binarize section replays a
buffered row at each block-row boundary; the input distributor simply
holds its completed row one pipeline clock longer.  That keeps threshold
latches exactly 16 pipeline clocks apart while row loading still takes
exactly 128 main clocks per row.

The model is deterministic and bit-exact against the pure software path
(`reference_taps`); `verify_against_reference` diffs the two at the
binarize/dilate/thin taps.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..morphology import build_lut, dilate_2x2, row_neighborhood_codes, thin
from ..threshold import (DARK_FOREGROUND, LIGHT_FOREGROUND, BlockGrid,
                         binarize, build_block_grid, threshold_map)
from ..validation import check_gray_image
from .adders import cla_block_table, reduction_plan

#: Figures reported for the reference FPGA realization of this pipeline;
#: echoed in timing reports for comparison, never asserted.
REFERENCE_CLOCK_MHZ = 79.4
REFERENCE_FRAME_MS = 6.84
REFERENCE_DEVICE = "Virtex-II Pro xc2vp20"
REFERENCE_MVCU_COUNT = 34

PHASE_NAMES = ("input", "binarize", "dilate", "thin", "output")


@dataclass
class PipelineConfig:
    """Geometry and clocking parameters of the pipeline."""

    row_width: int = 512
    bus_width: int = 32
    pixel_bits: int = 8
    block_size: int = 16
    overlap: int = 1
    thinning_superstages: int = 6
    polarity: str = DARK_FOREGROUND
    clock_hz: float | None = None
    record_events: bool = True

    def __post_init__(self):
        if self.pixel_bits != 8:
            raise ValueError("only 8-bit pixels are supported")
        if self.block_size != 16:
            raise ValueError(
                "block size is fixed at 16: the mean lanes divide by 256 "
                "with an 8-bit right shift")
        if self.bus_width % self.pixel_bits != 0:
            raise ValueError("bus width must be a multiple of the pixel width")
        if self.row_width % self.pixels_per_clock != 0:
            raise ValueError("row width must be a multiple of pixels per clock")
        if self.row_width % self.bus_width != 0:
            raise ValueError("row width must be a multiple of the bus width")
        if self.row_width < self.block_size:
            raise ValueError("row width must be at least one block")
        if not 0 <= self.overlap < self.block_size:
            raise ValueError("overlap must be in [0, block_size)")
        if self.thinning_superstages < 0:
            raise ValueError("super-stage count must be nonnegative")
        if self.polarity not in (DARK_FOREGROUND, LIGHT_FOREGROUND):
            raise ValueError(f"unknown polarity {self.polarity!r}")
        if self.clock_hz is not None and self.clock_hz <= 0:
            raise ValueError("clock_hz must be positive")

    @property
    def pixels_per_clock(self) -> int:
        return self.bus_width // self.pixel_bits

    @property
    def input_clocks_per_row(self) -> int:
        return self.row_width // self.pixels_per_clock

    @property
    def output_clocks_per_row(self) -> int:
        return self.row_width // self.bus_width

    @property
    def mvcu_count(self) -> int:
        """Mean-lane count derived from the block tiling of one row."""
        stride = self.block_size - self.overlap
        count = (self.row_width - self.block_size) // stride + 1
        last = (count - 1) * stride
        if last + self.block_size < self.row_width:
            count += 1
        return count


class MvcuLaneBank:
    """All mean-value lanes of one block row, vectorized across lanes.

    Replays the exact scalar reduction plan (same CSA groupings, same
    4-bit CLA blocks via a tabulated block circuit) with one numpy array
    per operand, so results are bit-identical to running `mvcu_cycle`
    per lane.
    """

    def __init__(self, x_origins: Sequence[int], block_size: int):
        self.lane_cols = np.array(
            [[x0 + i for i in range(block_size)] for x0 in x_origins],
            dtype=np.intp)
        self.n_lanes = len(x_origins)
        self.plan = reduction_plan(block_size + 1, 8)
        self.cla_table = cla_block_table()
        self.low = np.zeros(self.n_lanes, dtype=np.int64)
        self.high = np.zeros(self.n_lanes, dtype=np.int64)
        self.cycles = 0

    def reset(self) -> None:
        self.low[:] = 0
        self.high[:] = 0
        self.cycles = 0

    def feed(self, gray_row: np.ndarray) -> None:
        mat = gray_row[self.lane_cols].astype(np.int64)
        ops = [mat[:, k] for k in range(mat.shape[1])]
        ops.append(self.low)
        for layer in self.plan:
            nxt = []
            for i, j, k in layer.groups:
                a, b, c = ops[i], ops[j], ops[k]
                nxt.append(a ^ b ^ c)
                nxt.append(((a & b) | (a & c) | (b & c)) << 1)
            nxt.extend(ops[i] for i in layer.passthrough)
            ops = nxt
        total = self._cla(ops[0], ops[1])
        self.high = self.high + (total >> 8)
        self.low = total & 0xFF
        self.cycles += 1

    def _cla(self, a: np.ndarray, b: np.ndarray, n_blocks: int = 4) -> np.ndarray:
        carry = np.zeros_like(a)
        result = np.zeros_like(a)
        for blk in range(n_blocks):
            shift = 4 * blk
            idx = ((((a >> shift) & 0xF) << 5)
                   | (((b >> shift) & 0xF) << 1) | carry)
            packed = self.cla_table[idx]
            result |= (packed & 0xF) << shift
            carry = packed >> 4
        return result | (carry << (4 * n_blocks))

    def latch_and_reset(self) -> np.ndarray:
        thresholds = self.high.copy()
        self.reset()
        return thresholds


class _InputDistributor:
    """Decoder-driven register file: four pixels latch per main clock."""

    stage_id = "input"

    def __init__(self, cfg: PipelineConfig, rows: list[np.ndarray], event):
        self.cfg = cfg
        self.rows = rows
        self.next_row = 0
        self.loaded_px = 0
        self.pending: tuple[int, np.ndarray] | None = None
        self._event = event

    def main_tick(self, clock: int) -> bool:
        if self.pending is not None or self.next_row >= len(self.rows):
            return False
        if self.loaded_px == 0:
            self._event(clock, self.stage_id, f"row_load_start y={self.next_row}")
        self.loaded_px += self.cfg.pixels_per_clock
        if self.loaded_px == self.cfg.row_width:
            self._event(clock, self.stage_id, f"row_load_done y={self.next_row}")
            self.pending = (self.next_row, self.rows[self.next_row])
            self.next_row += 1
            self.loaded_px = 0
        return True

    @property
    def done(self) -> bool:
        return self.pending is None and self.next_row >= len(self.rows)


class _BinarizeSection:
    """Row buffers + mean-lane bank + latched threshold compare."""

    stage_id = "binarize"

    def __init__(self, cfg: PipelineConfig, grid: BlockGrid, bank: MvcuLaneBank,
                 event, tap, downstream: deque):
        self.cfg = cfg
        self.y_origins = grid.y_origins
        self.n_groups = len(self.y_origins)
        self.owner_x = np.asarray(grid.owner_x)
        owned: list[list[int]] = [[] for _ in range(self.n_groups)]
        for y, g in enumerate(grid.owner_y):
            owned[g].append(y)
        self.owned_rows = owned
        self.bank = bank
        self._event = event
        self._tap = tap
        self.downstream = downstream
        self.hold: dict[int, np.ndarray] = {}
        self.group = 0
        self.fed = 0
        self.next_new_y = 0
        self.emit_queue: deque[tuple[int, np.ndarray]] = deque()
        self.eos_sent = False
        self.latch_ticks: list[int] = []

    def tick(self, tick_no: int, clock: int,
             pending: tuple[int, np.ndarray] | None) -> bool:
        if self.emit_queue:
            y, row = self.emit_queue.popleft()
            self._tap(y, row)
            self.downstream.append((y, row))
        elif self.group >= self.n_groups and not self.eos_sent:
            self.downstream.append(None)
            self.eos_sent = True

        accepted = False
        if self.group < self.n_groups:
            y_need = self.y_origins[self.group] + self.fed
            row = None
            if y_need < self.next_new_y:
                row = self.hold[y_need]
            elif pending is not None and pending[0] == y_need:
                row = pending[1]
                self.hold[y_need] = row
                self.next_new_y = y_need + 1
                accepted = True
            if row is not None:
                self.bank.feed(row)
                self.fed += 1
                if self.fed == self.cfg.block_size:
                    self._latch(tick_no, clock)
        return accepted

    def _latch(self, tick_no: int, clock: int) -> None:
        thresholds = self.bank.latch_and_reset()
        self.latch_ticks.append(tick_no)
        self._event(clock, self.stage_id, f"threshold_latch group={self.group}")
        threshold_row = thresholds[self.owner_x]
        light = self.cfg.polarity == LIGHT_FOREGROUND
        for y in self.owned_rows[self.group]:
            gray = self.hold[y]
            bits = (gray > threshold_row) if light else (gray <= threshold_row)
            self.emit_queue.append((y, bits.astype(np.uint8)))
        self.group += 1
        self.fed = 0
        if self.group < self.n_groups:
            keep_from = self.y_origins[self.group]
            self.hold = {y: r for y, r in self.hold.items() if y >= keep_from}
        else:
            self.hold = {}

    @property
    def done(self) -> bool:
        return self.group >= self.n_groups and not self.emit_queue and self.eos_sent


class _DilateStage:
    """2x2 window OR: each output row combines one row with the next."""

    stage_id = "dilate"

    def __init__(self, event, tap):
        self._event = event
        self._tap = tap
        self.inq: deque = deque()
        self.downstream: deque | None = None
        self.prev: tuple[int, np.ndarray] | None = None
        self.eos_sent = False

    def reset(self) -> None:
        self.inq.clear()
        self.prev = None
        self.eos_sent = False

    @staticmethod
    def _combine(cur: np.ndarray, nxt: np.ndarray | None) -> np.ndarray:
        out = cur.copy()
        out[:-1] |= cur[1:]
        if nxt is not None:
            out |= nxt
            out[:-1] |= nxt[1:]
        return out

    def tick(self, clock: int) -> None:
        if not self.inq:
            return
        item = self.inq.popleft()
        if item is None:
            if self.prev is not None:
                y, row = self.prev
                self._emit(y, self._combine(row, None))
                self.prev = None
            self.downstream.append(None)
            self.eos_sent = True
            return
        y, row = item
        if self.prev is not None:
            py, prow = self.prev
            self._emit(py, self._combine(prow, row))
        self.prev = (y, row)

    def _emit(self, y: int, row: np.ndarray) -> None:
        self._tap(y, row)
        self.downstream.append((y, row))

    @property
    def done(self) -> bool:
        return self.eos_sent and not self.inq


class _TpcStage:
    """One streaming thinning subiteration: 3-row window + deletion table."""

    def __init__(self, stage_id: str, table: np.ndarray, event):
        self.stage_id = stage_id
        self.table = table
        self._event = event
        self.inq: deque = deque()
        self.downstream: deque | None = None
        self.rows: dict[int, np.ndarray] = {}
        self.received = 0
        self.next_out = 0
        self.eos_in = False
        self.eos_sent = False

    def reset(self) -> None:
        self.inq.clear()
        self.rows.clear()
        self.received = 0
        self.next_out = 0
        self.eos_in = False
        self.eos_sent = False

    def tick(self, clock: int) -> None:
        if self.inq:
            item = self.inq.popleft()
            if item is None:
                self.eos_in = True
            else:
                y, row = item
                self.rows[y] = row
                self.received += 1

        if self.next_out < self.received:
            is_last = self.eos_in and self.next_out + 1 == self.received
            if is_last or self.next_out + 1 < self.received:
                self._emit(is_last)

        if self.eos_in and not self.eos_sent and self.next_out == self.received:
            self.downstream.append(None)
            self.eos_sent = True
            self.rows.clear()

    def _emit(self, is_last: bool) -> None:
        y = self.next_out
        above = self.rows.get(y - 1)
        mid = self.rows[y]
        below = None if is_last else self.rows[y + 1]
        codes = row_neighborhood_codes(above, mid, below)
        delete = self.table[codes] & mid
        self.downstream.append((y, mid & (delete ^ 1)))
        self.rows.pop(y - 1, None)
        self.next_out += 1

    @property
    def done(self) -> bool:
        return self.eos_sent and not self.inq


class _ThinSuperStage:
    """One full thinning iteration: subiteration I then II, 6 stages deep."""

    #: 3 row buffers + window circuit, twice.
    stage_count = 6

    def __init__(self, index: int, lut, event):
        self.tpc1 = _TpcStage(f"thin{index}.tpc1", lut.phase1.copy(), event)
        self.tpc2 = _TpcStage(f"thin{index}.tpc2", lut.phase2.copy(), event)
        self.tpc1.downstream = self.tpc2.inq

    def reset(self) -> None:
        self.tpc1.reset()
        self.tpc2.reset()

    def tick(self, clock: int) -> None:
        self.tpc2.tick(clock)
        self.tpc1.tick(clock)

    @property
    def inq(self) -> deque:
        return self.tpc1.inq

    @property
    def done(self) -> bool:
        return self.tpc1.done and self.tpc2.done


class _OutputBuffer:
    """One-bit buffers shifting a binary row out over the bus."""

    stage_id = "output"

    def __init__(self, cfg: PipelineConfig, event):
        self.cfg = cfg
        self._event = event
        self.inq: deque = deque()
        self.current: tuple[int, np.ndarray] | None = None
        self.words_done = 0
        self.eos_in = False
        self.collected: list[tuple[int, np.ndarray]] = []

    def main_tick(self, clock: int) -> bool:
        if self.current is None:
            while self.inq and self.inq[0] is None:
                self.inq.popleft()
                self.eos_in = True
            if not self.inq:
                return False
            y, row = self.inq.popleft()
            self.current = (y, np.packbits(row))
            self.words_done = 0
            self._event(clock, self.stage_id, f"row_emit_start y={y}")
        self.words_done += 1
        if self.words_done == self.cfg.output_clocks_per_row:
            y, packed = self.current
            self._event(clock, self.stage_id, f"row_emit_done y={y}")
            self.collected.append((y, packed))
            self.current = None
        return True

    @property
    def done(self) -> bool:
        return self.eos_in and self.current is None and not self.inq


@dataclass
class SimTrace:
    """Cycle counters, per-stage occupancy highs, and the three tap images."""

    config: PipelineConfig
    rows: int
    main_clocks: int
    pipeline_clocks: int
    phase_clocks: dict[str, int]
    latch_ticks: list[int]
    max_occupancy: dict[str, int]
    binarized: np.ndarray
    dilated: np.ndarray
    thinned: np.ndarray
    events: list[tuple[int, str, str]] = field(repr=False, default_factory=list)


class Pipeline:
    """Deterministic main-clock-stepped model of the whole chain."""

    def __init__(self, cfg: PipelineConfig | None = None):
        self.cfg = cfg or PipelineConfig()
        lut = build_lut()
        self.superstages = [
            _ThinSuperStage(i + 1, lut, self._event)
            for i in range(self.cfg.thinning_superstages)
        ]
        self.dilate = _DilateStage(self._event, self._tap_dilated)
        self.outbuf = _OutputBuffer(self.cfg, self._event)
        self.dilate.downstream = (self.superstages[0].inq if self.superstages
                                  else self.outbuf.inq)
        for ss, nxt in zip(self.superstages, self.superstages[1:]):
            ss.tpc2.downstream = nxt.inq
        if self.superstages:
            self.superstages[-1].tpc2.downstream = self.outbuf.inq
        self.events: list[tuple[int, str, str]] = []
        self.loaded = False
        self.finished = False
        self.main_clocks = 0
        self.pipeline_clocks = 0

    @property
    def thinning_stage_count(self) -> int:
        return sum(ss.stage_count for ss in self.superstages)

    def _event(self, clock: int, stage: str, message: str) -> None:
        if self.cfg.record_events:
            self.events.append((clock, stage, message))

    def _tap_binarized(self, y: int, row: np.ndarray) -> None:
        if y != len(self._bin_rows):
            raise RuntimeError(f"binarized rows out of order: got {y}")
        self._bin_rows.append(row)

    def _tap_dilated(self, y: int, row: np.ndarray) -> None:
        if y != len(self._dil_rows):
            raise RuntimeError(f"dilated rows out of order: got {y}")
        self._dil_rows.append(row)

    def load(self, img) -> None:
        """Latch an image at the pipeline input and reset all state."""
        arr = check_gray_image(img)
        height, width = arr.shape
        if width != self.cfg.row_width:
            raise ValueError(
                f"image width {width} does not match configured row width "
                f"{self.cfg.row_width}")
        if height < self.cfg.block_size:
            raise ValueError(
                f"image height {height} is below one block ({self.cfg.block_size})")
        grid = build_block_grid(width, height, self.cfg.block_size, self.cfg.overlap)
        self.grid = grid
        self.rows = height
        self.events = []
        self.main_clocks = 0
        self.pipeline_clocks = 0
        self.phase_clocks = {name: 0 for name in PHASE_NAMES}
        self.max_occupancy: dict[str, int] = {}
        self._bin_rows: list[np.ndarray] = []
        self._dil_rows: list[np.ndarray] = []

        bank = MvcuLaneBank(grid.x_origins, self.cfg.block_size)
        self.distributor = _InputDistributor(self.cfg, list(arr), self._event)
        self.dilate.reset()
        for ss in self.superstages:
            ss.reset()
        self.outbuf = _OutputBuffer(self.cfg, self._event)
        if self.superstages:
            self.superstages[-1].tpc2.downstream = self.outbuf.inq
        else:
            self.dilate.downstream = self.outbuf.inq
        self.binsection = _BinarizeSection(
            self.cfg, grid, bank, self._event, self._tap_binarized,
            self.dilate.inq)
        self.loaded = True
        self.finished = False

    def step(self) -> list[tuple[int, str, str]]:
        """Advance one main clock; returns the events it produced."""
        if not self.loaded or self.finished:
            return [(self.main_clocks, "pipeline", "noop")]
        clock = self.main_clocks
        start = len(self.events)

        input_active = self.distributor.main_tick(clock)
        output_active = self.outbuf.main_tick(clock)
        if (clock + 1) % self.cfg.input_clocks_per_row == 0:
            self.pipeline_clocks += 1
            self._pipeline_tick(self.pipeline_clocks, clock)

        if input_active:
            phase = "input"
        elif output_active:
            phase = "output"
        elif not self.binsection.done:
            phase = "binarize"
        elif not self.dilate.done:
            phase = "dilate"
        elif not all(ss.done for ss in self.superstages):
            phase = "thin"
        else:
            phase = "output"
        self.phase_clocks[phase] += 1
        self.main_clocks += 1

        if (self.distributor.done and self.binsection.done and self.dilate.done
                and all(ss.done for ss in self.superstages) and self.outbuf.done):
            self.finished = True
        return self.events[start:]

    def _pipeline_tick(self, tick_no: int, clock: int) -> None:
        self._event(clock, "pipeline", f"tick {tick_no}")
        for ss in reversed(self.superstages):
            ss.tick(clock)
        self.dilate.tick(clock)
        accepted = self.binsection.tick(tick_no, clock, self.distributor.pending)
        if accepted:
            self.distributor.pending = None
        self._note_occupancy()

    def _note_occupancy(self) -> None:
        occ = self.max_occupancy
        occ["binarize.emit"] = max(occ.get("binarize.emit", 0),
                                   len(self.binsection.emit_queue))
        occ["dilate.in"] = max(occ.get("dilate.in", 0), len(self.dilate.inq))
        for ss in self.superstages:
            occ[ss.tpc1.stage_id] = max(occ.get(ss.tpc1.stage_id, 0),
                                        len(ss.tpc1.inq))
            occ[ss.tpc2.stage_id] = max(occ.get(ss.tpc2.stage_id, 0),
                                        len(ss.tpc2.inq))
        occ["output.in"] = max(occ.get("output.in", 0), len(self.outbuf.inq))

    def run(self, img) -> SimTrace:
        """Load, step until drained, and return the trace."""
        self.load(img)
        limit = (2 * self.rows + 600) * self.cfg.input_clocks_per_row
        while not self.finished:
            self.step()
            if self.main_clocks > limit:
                raise RuntimeError("pipeline failed to drain within clock budget")
        return self.trace()

    def trace(self) -> SimTrace:
        if not self.finished:
            raise RuntimeError("pipeline has not finished")
        width = self.cfg.row_width
        binarized = np.stack(self._bin_rows)
        dilated = np.stack(self._dil_rows)
        thin_rows = []
        for y, packed in self.outbuf.collected:
            if y != len(thin_rows):
                raise RuntimeError(f"output rows out of order: got {y}")
            thin_rows.append(np.unpackbits(packed)[:width])
        thinned = np.stack(thin_rows).astype(np.uint8)
        return SimTrace(
            config=self.cfg,
            rows=self.rows,
            main_clocks=self.main_clocks,
            pipeline_clocks=self.pipeline_clocks,
            phase_clocks=dict(self.phase_clocks),
            latch_ticks=list(self.binsection.latch_ticks),
            max_occupancy=dict(self.max_occupancy),
            binarized=binarized,
            dilated=dilated,
            thinned=thinned,
            events=list(self.events),
        )


def build_pipeline(cfg: PipelineConfig | None = None) -> Pipeline:
    """Instantiate the stage graph for a configuration."""
    return Pipeline(cfg)


def run(pipeline: Pipeline, img) -> SimTrace:
    return pipeline.run(img)


def step(pipeline: Pipeline) -> list[tuple[int, str, str]]:
    return pipeline.step()


def export_trace(trace: SimTrace) -> str:
    """Line-oriented event log: ``<main_clock> <stage_id> <event>``."""
    lines = [f"{clock} {stage} {message}" for clock, stage, message in trace.events]
    return "\n".join(lines) + "\n"


def reference_taps(img, cfg: PipelineConfig | None = None
                   ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pure software chain producing the three images the pipeline must match."""
    cfg = cfg or PipelineConfig()
    arr = check_gray_image(img)
    grid = build_block_grid(arr.shape[1], arr.shape[0], cfg.block_size, cfg.overlap)
    binarized = binarize(arr, threshold_map(arr, grid), cfg.polarity)
    dilated = dilate_2x2(binarized)
    thinned = thin(dilated, cfg.thinning_superstages).image
    return binarized, dilated, thinned


@dataclass
class EquivalenceReport:
    """Pixel diff between simulator and reference at the three taps."""

    binarize_mismatches: int
    dilate_mismatches: int
    thin_mismatches: int
    trace: SimTrace

    @property
    def passed(self) -> bool:
        return (self.binarize_mismatches == 0 and self.dilate_mismatches == 0
                and self.thin_mismatches == 0)


def verify_against_reference(img, cfg: PipelineConfig | None = None
                             ) -> EquivalenceReport:
    """Run both paths and diff them pixel by pixel at every tap."""
    if cfg is None:
        cfg = PipelineConfig(record_events=False)
    trace = Pipeline(cfg).run(img)
    ref_bin, ref_dil, ref_thin = reference_taps(img, cfg)
    return EquivalenceReport(
        binarize_mismatches=int(np.count_nonzero(trace.binarized != ref_bin)),
        dilate_mismatches=int(np.count_nonzero(trace.dilated != ref_dil)),
        thin_mismatches=int(np.count_nonzero(trace.thinned != ref_thin)),
        trace=trace,
    )


@dataclass
class TimingReport:
    """Simulated cycle counts with a wall-time estimate at a given clock."""

    main_clocks: int
    pipeline_clocks: int
    phase_clocks: dict[str, int]
    clock_hz: float
    seconds: float
    lanes_modeled: int
    reference_clock_mhz: float = REFERENCE_CLOCK_MHZ
    reference_frame_ms: float = REFERENCE_FRAME_MS
    reference_device: str = REFERENCE_DEVICE
    reference_lanes: int = REFERENCE_MVCU_COUNT

    def format(self) -> str:
        lines = [
            f"main clocks:      {self.main_clocks}",
            f"pipeline clocks:  {self.pipeline_clocks}",
        ]
        for name in PHASE_NAMES:
            lines.append(f"  {name + ' clocks:':<17}{self.phase_clocks.get(name, 0)}")
        lines += [
            f"clock:            {self.clock_hz / 1e6:.3f} MHz",
            f"estimated time:   {self.seconds * 1e3:.3f} ms",
            f"mean lanes:       {self.lanes_modeled} modeled "
            f"(reference design used {self.reference_lanes})",
            f"reference:        {self.reference_clock_mhz} MHz, "
            f"{self.reference_frame_ms} ms per 512x512 frame "
            f"on {self.reference_device}",
        ]
        return "\n".join(lines)


def timing_report(trace: SimTrace, clock_hz: float) -> TimingReport:
    """Wall-time estimate for a trace, with the reference figures alongside."""
    if clock_hz <= 0:
        raise ValueError("clock_hz must be positive")
    return TimingReport(
        main_clocks=trace.main_clocks,
        pipeline_clocks=trace.pipeline_clocks,
        phase_clocks=dict(trace.phase_clocks),
        clock_hz=clock_hz,
        seconds=trace.main_clocks / clock_hz,
        lanes_modeled=trace.config.mvcu_count,
    )
