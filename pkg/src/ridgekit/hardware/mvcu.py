"""Mean value calculator unit: a 16x16 block mean from one row per cycle.

Each cycle the unit adds its sixteen 8-bit pixels and the 8-bit low part
fed back from the previous cycle through the 17-input CSA tree plus CLA.
The low byte of the result becomes the next cycle's feedback; the bits
above it are the running contribution to the divide-by-256 right shift.
Accumulating those high parts over the 16 rows of a block yields exactly
floor(total / 256): with t_i = low_(i-1) + row_i and low_i = t_i mod 256,
the per-cycle high parts telescope to (total - low_16) / 256.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .adders import BitVector, cla_add, dadda_reduce_17

PIXELS_PER_ROW = 16
ROWS_PER_BLOCK = 16
BLOCK_PIXELS = PIXELS_PER_ROW * ROWS_PER_BLOCK


@dataclass(frozen=True)
class MvcuState:
    """low feedback byte, accumulated high parts, and cycles consumed."""

    low_feedback: int = 0
    high_accum: int = 0
    cycles_done: int = 0

    def __post_init__(self):
        if not 0 <= self.low_feedback < 256:
            raise ValueError(f"low feedback must be a byte, got {self.low_feedback}")
        if self.high_accum < 0 or self.cycles_done < 0:
            raise ValueError("accumulator and cycle count must be nonnegative")


def mvcu_cycle(state: MvcuState, row: Sequence[int]) -> MvcuState:
    """Consume one 16-pixel row; returns the updated state."""
    if state.cycles_done >= ROWS_PER_BLOCK:
        raise ValueError(f"cycle overrun: unit already consumed {ROWS_PER_BLOCK} rows")
    if len(row) != PIXELS_PER_ROW:
        raise ValueError(f"expected {PIXELS_PER_ROW} pixels, got {len(row)}")
    operands = [BitVector(8, int(p)) for p in row]
    operands.append(BitVector(8, state.low_feedback))
    s, c = dadda_reduce_17(operands)
    total = cla_add(s, c).value
    return MvcuState(
        low_feedback=total & 0xFF,
        high_accum=state.high_accum + (total >> 8),
        cycles_done=state.cycles_done + 1,
    )


def mvcu_mean(block: Sequence[int]) -> int:
    """Mean of a 256-pixel block via 16 cycles; equals floor(sum / 256)."""
    if len(block) != BLOCK_PIXELS:
        raise ValueError(f"expected {BLOCK_PIXELS} pixels, got {len(block)}")
    state = MvcuState()
    for r in range(ROWS_PER_BLOCK):
        state = mvcu_cycle(state, block[r * PIXELS_PER_ROW:(r + 1) * PIXELS_PER_ROW])
    return state.high_accum
