"""Carry-save adder tree and carry-lookahead adder, modeled at bit level.

The 17-operand tree follows Dadda's reduction: at every layer the operand
count drops to the largest member of the series 2, 3, 4, 6, 9, 13, 19, ...
below it, so 17 inputs take one initial layer of four CSAs down to 13 and
then five more layers down to the final sum/carry pair.  CSAs inside a
layer group the widest operands first, left to right.  Operand widths grow
by one bit wherever a carry vector is produced; every CSA instance is
the same circuit at a different width.

The final addition chains 4-bit carry-lookahead blocks whose carries are
two-level generate/propagate logic, widened to as many blocks as the
operands need.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class BitVector:
    """Unsigned register value with an explicit width in bits."""

    __slots__ = ("width", "value")

    def __init__(self, width: int, value: int):
        if width < 1:
            raise ValueError(f"width must be >= 1, got {width}")
        if not 0 <= value < (1 << width):
            raise ValueError(f"value {value} does not fit in {width} bits")
        self.width = width
        self.value = value

    def zero_extend(self, width: int) -> "BitVector":
        if width == self.width:
            return self
        if width < self.width:
            raise ValueError(f"cannot narrow {self.width}-bit vector to {width} bits")
        return BitVector(width, self.value)

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        return (isinstance(other, BitVector)
                and self.width == other.width and self.value == other.value)

    def __hash__(self) -> int:
        return hash((self.width, self.value))

    def __repr__(self) -> str:
        return f"BitVector({self.width}, {self.value:#x})"


def csa(a: BitVector, b: BitVector, c: BitVector) -> tuple[BitVector, BitVector]:
    """Carry-save (3:2) compression of three equal-width operands.

    Returns (sum, carry) where sum is the bitwise XOR, carry the majority
    function shifted left one bit (hence one bit wider), preserving
    a + b + c == sum + carry as integers.
    """
    if not (a.width == b.width == c.width):
        raise ValueError(
            f"csa operands must share a width, got {a.width}/{b.width}/{c.width}")
    s = a.value ^ b.value ^ c.value
    maj = (a.value & b.value) | (a.value & c.value) | (b.value & c.value)
    return BitVector(a.width, s), BitVector(a.width + 1, maj << 1)


@dataclass(frozen=True)
class ReductionLayer:
    """One CSA layer: operand-index triples, passthrough indices, CSA widths."""

    groups: tuple[tuple[int, int, int], ...]
    passthrough: tuple[int, ...]
    group_widths: tuple[int, ...]


def _dadda_targets(n: int) -> list[int]:
    targets = [2]
    while targets[-1] < n:
        targets.append(targets[-1] * 3 // 2)
    return targets


def reduction_plan(count: int, width: int) -> list[ReductionLayer]:
    """Value-independent CSA schedule for ``count`` operands of equal width.

    Each layer reduces the operand count to the next lower Dadda number;
    widths alone determine the grouping, so the same plan drives both the
    scalar model and vectorized lane banks.
    """
    if count < 3:
        raise ValueError(f"need at least 3 operands to reduce, got {count}")
    targets = _dadda_targets(count)
    widths = [width] * count
    layers: list[ReductionLayer] = []
    while len(widths) > 2:
        n = len(widths)
        target = max(t for t in targets if t < n)
        n_csa = n - target
        order = sorted(range(n), key=lambda i: -widths[i])
        groups = tuple(tuple(order[3 * k:3 * k + 3]) for k in range(n_csa))
        passthrough = tuple(order[3 * n_csa:])
        group_widths = tuple(max(widths[i] for i in g) for g in groups)
        layers.append(ReductionLayer(groups, passthrough, group_widths))
        nxt: list[int] = []
        for w in group_widths:
            nxt.extend((w, w + 1))
        nxt.extend(widths[i] for i in passthrough)
        widths = nxt
    return layers


_PLAN_17: list[ReductionLayer] | None = None


def _plan_17() -> list[ReductionLayer]:
    global _PLAN_17
    if _PLAN_17 is None:
        _PLAN_17 = reduction_plan(17, 8)
    return _PLAN_17


def dadda_reduce_17(inputs: Sequence[BitVector]) -> tuple[BitVector, BitVector]:
    """Reduce seventeen 8-bit operands to a (sum, carry) pair of vectors.

    The integer invariant sum(inputs) == s + c holds at every layer.
    """
    ops = list(inputs)
    if len(ops) != 17:
        raise ValueError(f"expected 17 operands, got {len(ops)}")
    for bv in ops:
        if bv.width != 8:
            raise ValueError(f"operands must be 8 bits wide, got {bv.width}")
    for layer in _plan_17():
        nxt: list[BitVector] = []
        for (i, j, k), w in zip(layer.groups, layer.group_widths):
            s, cy = csa(ops[i].zero_extend(w), ops[j].zero_extend(w),
                        ops[k].zero_extend(w))
            nxt.extend((s, cy))
        nxt.extend(ops[i] for i in layer.passthrough)
        ops = nxt
    return ops[0], ops[1]


def dadda_layer_counts(count: int = 17, width: int = 8) -> list[int]:
    """Operand count entering each layer plus the final count (17 -> ... -> 2)."""
    counts = [count]
    for layer in reduction_plan(count, width):
        counts.append(2 * len(layer.groups) + len(layer.passthrough))
    return counts


def _cla_block4(a4: int, b4: int, cin: int) -> tuple[int, int]:
    """One 4-bit carry-lookahead block; carries are two-level g/p logic."""
    g = a4 & b4
    p = a4 ^ b4
    g0, g1, g2, g3 = g & 1, (g >> 1) & 1, (g >> 2) & 1, (g >> 3) & 1
    p0, p1, p2, p3 = p & 1, (p >> 1) & 1, (p >> 2) & 1, (p >> 3) & 1
    c1 = g0 | (p0 & cin)
    c2 = g1 | (p1 & g0) | (p1 & p0 & cin)
    c3 = g2 | (p2 & g1) | (p2 & p1 & g0) | (p2 & p1 & p0 & cin)
    c4 = (g3 | (p3 & g2) | (p3 & p2 & g1) | (p3 & p2 & p1 & g0)
          | (p3 & p2 & p1 & p0 & cin))
    s = ((p0 ^ cin) | ((p1 ^ c1) << 1) | ((p2 ^ c2) << 2) | ((p3 ^ c3) << 3))
    return s, c4


def cla_add(a: BitVector, b: BitVector, width: int | None = None) -> BitVector:
    """Add two vectors through chained 4-bit carry-lookahead blocks.

    The result width defaults to max(widths) + 1; passing an explicit
    ``width`` raises OverflowError if the sum does not fit.
    """
    span = max(a.width, b.width)
    out_width = span + 1 if width is None else width
    n_blocks = (span + 3) // 4
    carry = 0
    result = 0
    for blk in range(n_blocks):
        shift = 4 * blk
        s4, carry = _cla_block4((a.value >> shift) & 0xF,
                                (b.value >> shift) & 0xF, carry)
        result |= s4 << shift
    result |= carry << (4 * n_blocks)
    if result >= (1 << out_width):
        raise OverflowError(
            f"sum {result} overflows declared {out_width}-bit output")
    return BitVector(out_width, result)


def cla_block_table() -> np.ndarray:
    """Tabulate the 4-bit CLA block over all (a4, b4, cin) combinations.

    Entry index is (a4 << 5) | (b4 << 1) | cin; the value packs the block
    carry-out in bit 4 above the 4 sum bits.  Vectorized lane banks replay
    the block circuit through this table.
    """
    table = np.zeros(512, dtype=np.int64)
    for a4 in range(16):
        for b4 in range(16):
            for cin in range(2):
                s4, cout = _cla_block4(a4, b4, cin)
                table[(a4 << 5) | (b4 << 1) | cin] = (cout << 4) | s4
    return table
