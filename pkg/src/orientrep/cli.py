"""Command-line front end: ``orientrep <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 numeric error.
"""
import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import analysis, kitti
from .angles import alpha_to_roty, circular_diff, wrap
from .errors import DegenerateError, InvalidInputError, InvalidSchemeError, KittiParseError, OrientationError
from .losses import LOSS_IDS
from .metrics import orientation_similarity
from .representations import ReprScheme, decode, encode

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _scheme(text):
    try:
        return ReprScheme.parse(text)
    except InvalidSchemeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _finite(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def build_parser():
    p = _Parser(prog="orientrep", description="Yaw-angle representations, losses and evaluation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    enc = sub.add_parser("encode", help="angles (one per line) -> CSV vectors")
    enc.add_argument("--scheme", type=_scheme, required=True)
    enc.add_argument("input", nargs="?", default="-")

    dec = sub.add_parser("decode", help="CSV vectors -> angles")
    dec.add_argument("--scheme", type=_scheme, required=True)
    dec.add_argument("input", nargs="?", default="-")

    conv = sub.add_parser("convert", help="rewrite alpha or rotation_y of KITTI labels")
    conv.add_argument("--from", dest="source", choices=("alpha", "roty"), required=True)
    conv.add_argument("--to", dest="target", choices=("alpha", "roty"), required=True)
    conv.add_argument("input", nargs="?", default="-")
    conv.add_argument("-o", "--output")

    ev = sub.add_parser("eval", help="orientation similarity of KITTI predictions")
    ev.add_argument("--pred", required=True, help="label file or directory")
    ev.add_argument("--gt", required=True, help="label file or directory")
    ev.add_argument("--class", dest="class_name")
    ev.add_argument("--field", choices=("roty", "alpha"), default="roty")

    land = sub.add_parser("landscape", help="loss sweep over the predicted angle (CSV)")
    land.add_argument("--scheme", type=_scheme, required=True)
    land.add_argument("--loss", choices=LOSS_IDS, required=True)
    land.add_argument("--gt", type=_finite, default=0.0)
    land.add_argument("--points", type=_positive_int, default=1000)

    fit = sub.add_parser("fit", help="gradient descent on the prediction vector (CSV trace)")
    fit.add_argument("--scheme", type=_scheme, required=True)
    fit.add_argument("--loss", choices=LOSS_IDS, required=True)
    fit.add_argument("--init", type=_finite, required=True, help="initial angle, radians")
    fit.add_argument("--gt", type=_finite, required=True)
    fit.add_argument("--steps", type=_positive_int, default=500)
    fit.add_argument("--lr", type=_finite, default=0.1)

    sim = sub.add_parser("simulate", help="orientation similarity under representation noise")
    sim.add_argument("--scheme", type=_scheme, required=True)
    sim.add_argument("--sigma", type=_finite, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--count", type=_positive_int, default=10_000)

    chk = sub.add_parser("check", help="alpha/rotation_y consistency report")
    chk.add_argument("--labels", required=True)
    chk.add_argument("--tol", type=_finite, default=0.02)
    return p


def _read_text(name, stdin):
    if name == "-":
        return stdin.read()
    try:
        return Path(name).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{name}: {exc.strerror or exc}") from None


def _numbers(line, lineno, name):
    try:
        values = [float(tok) for tok in line.replace(",", " ").split()]
    except ValueError:
        raise DataError(f"{name} line {lineno}: not a number list: {line.strip()!r}") from None
    if not np.all(np.isfinite(values)):
        raise DataError(f"{name} line {lineno}: non-finite value")
    return values


def _fmt(x):
    return repr(float(x))


def cmd_encode(args, stdin, stdout):
    name = "<stdin>" if args.input == "-" else args.input
    for lineno, line in enumerate(_read_text(args.input, stdin).splitlines(), start=1):
        if not line.strip():
            continue
        values = _numbers(line, lineno, name)
        if len(values) != 1:
            raise DataError(f"{name} line {lineno}: expected one angle, got {len(values)} values")
        stdout.write(",".join(_fmt(v) for v in encode(args.scheme, values[0])) + "\n")


def cmd_decode(args, stdin, stdout):
    name = "<stdin>" if args.input == "-" else args.input
    dim = args.scheme.dimension
    for lineno, line in enumerate(_read_text(args.input, stdin).splitlines(), start=1):
        if not line.strip():
            continue
        values = _numbers(line, lineno, name)
        if len(values) != dim:
            raise DataError(f"{name} line {lineno}: {args.scheme} needs {dim} values, got {len(values)}")
        try:
            stdout.write(_fmt(decode(args.scheme, values)) + "\n")
        except DegenerateError as exc:
            raise DegenerateError(f"{name} line {lineno}: {exc}") from None


def _load_labels(name, stdin=None):
    if name == "-":
        return kitti.parse_label_file(stdin.read(), path="<stdin>")
    path = Path(name)
    if not path.is_file():
        raise DataError(f"{name}: no such label file")
    return kitti.read_label_file(path)


def cmd_convert(args, stdin, stdout):
    if args.source == args.target:
        raise UsageError("convert: --from and --to must differ")
    labels = kitti.convert_angles(_load_labels(args.input, stdin), args.source, args.target)
    text = kitti.write_label_file(labels)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _label_pairs(pred, gt):
    pred, gt = Path(pred), Path(gt)
    if pred.is_dir() != gt.is_dir():
        raise DataError("--pred and --gt must both be files or both be directories")
    if not pred.is_dir():
        return [(pred, gt)]
    pairs = []
    for gt_file in sorted(gt.glob("*.txt")):
        pred_file = pred / gt_file.name
        if not pred_file.is_file():
            raise DataError(f"{pred_file}: missing prediction file for {gt_file.name}")
        pairs.append((pred_file, gt_file))
    if not pairs:
        raise DataError(f"{gt}: no label files")
    return pairs


def cmd_eval(args, stdin, stdout):
    attr = "rotation_y" if args.field == "roty" else "alpha"
    preds, gts = [], []
    for pred_file, gt_file in _label_pairs(args.pred, args.gt):
        p = [lab for lab in _load_labels(str(pred_file)) if not lab.is_dontcare]
        g = [lab for lab in _load_labels(str(gt_file)) if not lab.is_dontcare]
        if args.class_name:
            p, g = kitti.filter_class(p, args.class_name), kitti.filter_class(g, args.class_name)
        if len(p) != len(g):
            raise DataError(f"{pred_file}: {len(p)} objects, but {gt_file} has {len(g)}")
        preds += [getattr(lab, attr) for lab in p]
        gts += [getattr(lab, attr) for lab in g]
    if not gts:
        raise DataError("no objects to evaluate")
    stdout.write("%.6f\n" % orientation_similarity(preds, gts))


def cmd_landscape(args, stdin, stdout):
    sweep = analysis.sweep_landscape(args.scheme, args.loss, wrap(args.gt), args.points)
    stdout.write(sweep.to_csv())


def cmd_fit(args, stdin, stdout):
    init = encode(args.scheme, wrap(args.init))
    trace = analysis.fit_representation(args.scheme, args.loss, wrap(args.gt), init, args.lr, args.steps)
    stdout.write(trace.to_csv())
    if trace.error:
        raise DegenerateError(trace.error)


def cmd_simulate(args, stdin, stdout):
    if args.sigma < 0:
        raise UsageError("simulate: --sigma must be non-negative")
    if not 0 <= args.seed < 2**64:
        raise UsageError("simulate: --seed must be a non-negative 64-bit integer")
    batch = analysis.simulate_noisy_predictions(
        args.scheme, analysis.angle_grid(args.count), args.sigma, args.seed
    )
    stdout.write("%.6f\n" % orientation_similarity(batch))


def cmd_check(args, stdin, stdout):
    if args.tol < 0:
        raise UsageError("check: --tol must be non-negative")
    failed = 0
    path = Path(args.labels)
    if not path.is_file():
        raise DataError(f"{args.labels}: no such label file")
    lines = path.read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        lab = kitti.parse_line(line, lineno, path)
        if lab.is_dontcare:
            stdout.write(f"{lineno} {lab.object_type} SKIP\n")
            continue
        try:
            ok = kitti.check_label_consistency(lab, args.tol)
        except OrientationError as exc:
            stdout.write(f"{lineno} {lab.object_type} FAIL {exc}\n")
            failed += 1
            continue
        x, _, z = lab.location
        err = abs(circular_diff(lab.rotation_y, alpha_to_roty(lab.alpha, x, z)))
        stdout.write(f"{lineno} {lab.object_type} {'OK' if ok else 'FAIL'} {err:.4f}\n")
        failed += not ok
    if failed:
        raise DataError(f"{args.labels}: {failed} inconsistent row(s)")


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "convert": cmd_convert,
    "eval": cmd_eval,
    "landscape": cmd_landscape,
    "fit": cmd_fit,
    "simulate": cmd_simulate,
    "check": cmd_check,
}


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=stderr)
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (DataError, KittiParseError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    except DegenerateError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC
    except (InvalidInputError, OrientationError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
