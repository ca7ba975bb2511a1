"""Command-line entry point.

Exit status: 0 success, 1 domain or I/O error, 2 usage error.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import dwt_watermark, spatial
from .attacks import AttackSpec, psnr, rms
from .circ import CircConfig, InterleaverConfig
from .errors import WatermarkError
from .image_io import load_pgm, save_pgm, synth_test_image
from .keystream import ChaosKey, dump_key, load_key
from .payload import text_to_bits
from .transform import LscSelector

log = logging.getLogger("chaoswm")


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.replace("[", "").replace("]", "").split(",") if v.strip())


def _add_key_overrides(p):
    g = p.add_argument_group("key overrides (applied on top of --key)")
    g.add_argument("--mu", type=float)
    g.add_argument("--x0", type=float)
    g.add_argument("--discard", type=int)
    g.add_argument("--iterations", type=int)
    g.add_argument("--u0", type=int)
    g.add_argument("--msb", type=_ints, help="MSC bit planes, e.g. 4,5,6,7")


def _key(args) -> ChaosKey:
    key = load_key(Path(args.key).read_text()) if getattr(args, "key", None) else ChaosKey()
    changes = {
        name: getattr(args, name)
        for name in ("mu", "x0", "discard", "iterations", "u0")
        if getattr(args, name, None) is not None
    }
    if getattr(args, "msb", None):
        changes["msb_set"] = args.msb
    return replace(key, **changes) if changes else key


def _text(args) -> str:
    if args.text_file:
        return Path(args.text_file).read_text()
    return args.text


def _add_text(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--text")
    g.add_argument("--text-file")


def _selector(args) -> LscSelector:
    return LscSelector.parse(args.band, args.bit)


def _add_selector(p):
    p.add_argument("--band", default="HH2", help="band and level, e.g. HH2 or LL1")
    p.add_argument("--bit", type=int, default=1, help="coefficient bit index, 0 = least significant")


def cmd_keygen(args):
    Path(args.out).write_text(dump_key(_key(args)))


def cmd_synth_image(args):
    save_pgm(args.out, synth_test_image(args.width, args.height, args.seed))


def _circ(args) -> CircConfig:
    return CircConfig(interleaver=InterleaverConfig(args.delay))


def cmd_embed_spatial(args):
    img = load_pgm(args.input)
    out = spatial.embed(img, _text(args), _key(args), args.authenticate, _circ(args))
    save_pgm(args.out, out)


def cmd_extract_spatial(args):
    text = spatial.extract(load_pgm(args.input), _key(args), args.authenticate, _circ(args))
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_embed_dwt(args):
    img = load_pgm(args.input)
    out = dwt_watermark.embed_switch(img, text_to_bits(_text(args)), _key(args), _selector(args), args.authenticate)
    save_pgm(args.out, out)


def cmd_detect_dwt(args):
    report = dwt_watermark.detect(
        load_pgm(args.input), load_pgm(args.original), text_to_bits(_text(args)),
        _key(args), _selector(args), args.threshold, args.authenticate,
    )
    sys.stdout.write(report.to_text())


def cmd_sweep_dwt(args):
    rows = dwt_watermark.wrong_parameter_sweep(
        load_pgm(args.input), load_pgm(args.original), text_to_bits(_text(args)),
        _key(args), _selector(args), args.authenticate,
    )
    sys.stdout.write("perturbation\trms\n")
    for row in rows:
        sys.stdout.write(f"{row.label}\t{row.rms:.6f}\n")


def cmd_attack(args):
    spec = AttackSpec(args.kind, x=args.x, y=args.y, size=args.size, height=args.height,
                      width=args.width, sigma=args.sigma, seed=args.seed)
    save_pgm(args.out, spec.apply(load_pgm(args.input)))


def cmd_metrics(args):
    a, b = load_pgm(args.a), load_pgm(args.b)
    sys.stdout.write(f"psnr={psnr(a, b):.6f}\nrms={rms(a, b):.6f}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaoswm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("keygen", help="write a key file")
    p.add_argument("--out", required=True)
    _add_key_overrides(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("synth-image", help="write a deterministic test image")
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth_image)

    for verb, func, writes in (
        ("embed-spatial", cmd_embed_spatial, True),
        ("extract-spatial", cmd_extract_spatial, False),
    ):
        p = sub.add_parser(verb)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--key")
        if writes:
            _add_text(p)
            p.add_argument("--out", required=True)
        p.add_argument("--authenticate", action="store_true")
        p.add_argument("--delay", type=int, default=InterleaverConfig().delay, help="interleaver delay step")
        _add_key_overrides(p)
        p.set_defaults(func=func)

    p = sub.add_parser("embed-dwt")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key")
    _add_text(p)
    p.add_argument("--out", required=True)
    p.add_argument("--authenticate", action="store_true")
    _add_selector(p)
    _add_key_overrides(p)
    p.set_defaults(func=cmd_embed_dwt)

    for verb, func in (("detect-dwt", cmd_detect_dwt), ("sweep-dwt", cmd_sweep_dwt)):
        p = sub.add_parser(verb)
        p.add_argument("--in", dest="input", required=True, help="candidate image")
        p.add_argument("--original", required=True)
        p.add_argument("--key")
        _add_text(p)
        p.add_argument("--authenticate", action="store_true")
        _add_selector(p)
        if verb == "detect-dwt":
            p.add_argument("--threshold", type=float, default=dwt_watermark.DEFAULT_THRESHOLD)
        _add_key_overrides(p)
        p.set_defaults(func=func)

    p = sub.add_parser("attack")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", required=True, choices=["zero-square", "gaussian-noise", "crop-pad"])
    p.add_argument("--x", type=int, default=0, help="row of the top-left corner")
    p.add_argument("--y", type=int, default=0, help="column of the top-left corner")
    p.add_argument("--size", type=int, default=40)
    p.add_argument("--height", type=int, default=0)
    p.add_argument("--width", type=int, default=0)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("metrics")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_metrics)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except WatermarkError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error[E_IO]: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
