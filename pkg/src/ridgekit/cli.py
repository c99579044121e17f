"""Command-line front end: process, simulate, blocksize, metrics.

All commands read binary PGM input and write binary PBM outputs.  Output
text is deterministic (no timestamps), every emitted file is listed in a
manifest with its checksum, and nothing is written on a failure exit.

Exit codes: 0 success, 2 I/O or processing error, 64 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import sys

import numpy as np

from . import morphology, threshold
from .hardware.pipeline import (PipelineConfig, export_trace, timing_report,
                                verify_against_reference)
from .metrics import correlation, e_rms, snr_ms
from .pnm import PnmDecodeError, load_pgm, save_pbm
from .threshold import FACTOR_DIVIDE, FACTOR_MULTIPLY

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 64

DEFAULT_METRIC_COMBOS = ((16, 0), (16, 1))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _read_gray(path: str) -> tuple[np.ndarray, bytes]:
    with open(path, "rb") as fh:
        data = fh.read()
    return load_pgm(data), data


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--block-size", type=int, default=16)
    parser.add_argument("--overlap", type=int, default=1)
    parser.add_argument("--polarity", choices=("dark", "light"), default="dark")


def cmd_process(args) -> int:
    img, raw = _read_gray(args.input)
    grid = threshold.build_block_grid(img.shape[1], img.shape[0],
                                      args.block_size, args.overlap)
    binarized = threshold.binarize(img, threshold.threshold_map(img, grid),
                                   args.polarity)
    dilated = morphology.dilate_2x2(binarized)
    thinned = morphology.thin(dilated, args.iterations).image

    taps = (("binarized", args.out_binarized, binarized),
            ("dilated", args.out_dilated, dilated),
            ("thinned", args.out_thinned, thinned))
    writes = []
    manifest = [
        "ridgekit process manifest",
        f"input: {args.input}",
        f"input-sha256: {_sha256(raw)}",
        f"options: block-size={args.block_size} overlap={args.overlap} "
        f"polarity={args.polarity} iterations={args.iterations}",
    ]
    for name, path, image in taps:
        count = int(image.sum(dtype=np.int64))
        manifest.append(f"tap: {name} foreground={count}")
        if path:
            data = save_pbm(image)
            writes.append((path, data))
            manifest.append(f"output: {name} {path} sha256={_sha256(data)}")
    manifest_text = "\n".join(manifest) + "\n"

    for path, data in writes:
        with open(path, "wb") as fh:
            fh.write(data)
    manifest_path = args.manifest
    if manifest_path is None and writes:
        manifest_path = writes[0][0] + ".manifest"
    if manifest_path:
        with open(manifest_path, "w") as fh:
            fh.write(manifest_text)
    else:
        sys.stdout.write(manifest_text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    img, _ = _read_gray(args.input)
    cfg = PipelineConfig(block_size=args.block_size, overlap=args.overlap,
                         polarity=args.polarity,
                         record_events=args.trace is not None)
    if img.shape[1] != cfg.row_width:
        raise ValueError(
            f"input width {img.shape[1]} does not match pipeline row width "
            f"{cfg.row_width}")
    report = verify_against_reference(img, cfg)
    timing = timing_report(report.trace, args.clock_mhz * 1e6)

    lines = [timing.format()]
    for name, count in (("binarize", report.binarize_mismatches),
                        ("dilate", report.dilate_mismatches),
                        ("thin", report.thin_mismatches)):
        lines.append(f"tap {name}: {count} mismatched pixels")
    lines.append("equivalence: " + ("PASS" if report.passed else "FAIL"))
    out = "\n".join(lines) + "\n"

    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(export_trace(report.trace))
    sys.stdout.write(out)
    return EXIT_OK if report.passed else 1


def cmd_blocksize(args) -> int:
    img, _ = _read_gray(args.input)
    usable = []
    for n in sorted(set(args.candidates)):
        if n > min(img.shape):
            print(f"warning: skipping block size {n}: image is only "
                  f"{img.shape[1]}x{img.shape[0]}", file=sys.stderr)
            continue
        usable.append(n)
    if not usable:
        raise ValueError("no usable block size candidates for this image")

    rows = []
    for n in usable:
        sigma2, f_mul = threshold.block_factor(img, n, FACTOR_MULTIPLY)
        _, f_div = threshold.block_factor(img, n, FACTOR_DIVIDE)
        rows.append((n, sigma2, f_mul, f_div))
    report = threshold.select_block_size(img, usable, args.factor_mode)

    lines = [f"{'N':>4}  {'variance':>14}  {'factor(mul)':>14}  {'factor(div)':>14}"]
    for n, sigma2, f_mul, f_div in rows:
        lines.append(f"{n:>4}  {sigma2:>14.4f}  {f_mul:>14.4f}  {f_div:>14.4f}")
    lines.append(f"selected: N={report.selected} (mode={args.factor_mode})")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _parse_combo(text: str) -> tuple[int, int]:
    try:
        n, overlap = text.split(",")
        return int(n), int(overlap)
    except ValueError:
        raise _UsageError(f"bad --combo {text!r}, expected N,OVERLAP") from None


def cmd_metrics(args) -> int:
    img, _ = _read_gray(args.input)
    combos = [_parse_combo(c) for c in args.combo] if args.combo \
        else list(DEFAULT_METRIC_COMBOS)
    reference = threshold.otsu_binarize(img, args.polarity)

    lines = [f"{'block':>5}  {'overlap':>7}  {'snr_ms':>12}  {'e_rms':>10}  {'correlation':>12}"]
    for n, overlap in combos:
        grid = threshold.build_block_grid(img.shape[1], img.shape[0], n, overlap)
        current = threshold.binarize(img, threshold.threshold_map(img, grid),
                                     args.polarity)
        snr = snr_ms(reference, current)
        err = e_rms(reference, current)
        try:
            corr = f"{correlation(reference, current):12.6f}"
        except ValueError:
            corr = f"{'undefined':>12}"
        lines.append(f"{n:>5}  {overlap:>7}  {snr:>12.6f}  {err:>10.6f}  {corr}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ridgekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("process", help="binarize -> dilate -> thin an image")
    p.add_argument("input")
    _add_common_flags(p)
    p.add_argument("--iterations", type=int, default=morphology.DEFAULT_ITERATIONS)
    p.add_argument("--out-binarized")
    p.add_argument("--out-dilated")
    p.add_argument("--out-thinned")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_process)

    p = sub.add_parser("simulate", help="run the pipeline model and verify it")
    p.add_argument("input")
    _add_common_flags(p)
    p.add_argument("--clock-mhz", type=float, default=79.4)
    p.add_argument("--trace", help="write the event log to this path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("blocksize", help="score candidate block sizes")
    p.add_argument("input")
    p.add_argument("--candidates", type=int, nargs="+",
                   default=list(threshold.DEFAULT_BLOCK_CANDIDATES))
    p.add_argument("--factor-mode", choices=(FACTOR_MULTIPLY, FACTOR_DIVIDE),
                   default=FACTOR_MULTIPLY)
    p.set_defaults(func=cmd_blocksize)

    p = sub.add_parser("metrics", help="compare adaptive binarization to global Otsu")
    p.add_argument("input")
    p.add_argument("--polarity", choices=("dark", "light"), default="dark")
    p.add_argument("--combo", action="append",
                   help="block,overlap pair (repeatable); default 16,0 and 16,1")
    p.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PnmDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
