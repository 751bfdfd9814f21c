"""Command-line front end: splitting, model fitting/sampling, benchmarks,
image segmentation, classification, and plot-data export."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .bench import run_bench
from .dataset import Ecdf, make_dataset, read_value_table, read_values
from .hull import PointKind, gl_set
from .imgseg import read_image, recolor, segment, write_pgm
from .nb import kfold_accuracy, read_csv_table
from .splitting import unisplit
from .stats import ks_two_sample, nmi
from .synth import builtin, sample_mixture
from .udmm import fit_udmm, load_model, save_model
from .uutest import uu_test

__all__ = ["main"]


def _write_text(path, text: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _cmd_split(args) -> int:
    values, file_labels = read_value_table(args.input)
    d = make_dataset(values)
    result = unisplit(d, args.alpha)
    print(f"n={d.total} distinct={d.nvalues} k={result.k}")
    print("valley_points:", " ".join(repr(float(v)) for v in result.valley_points) or "(none)")
    for i, sub in enumerate(result.subsets):
        print(f"subset {i}: n={sub.total} range=[{sub.xmin:.6g}, {sub.xmax:.6g}]")
    labels = None
    if args.labels:
        labels = np.asarray([int(float(t)) for t in read_values(args.labels)])
    elif file_labels is not None:
        labels = file_labels
    if labels is not None:
        score = nmi(labels, result.labels_for(values))
        print(f"nmi={score:.6f}")
    return 0


def _cmd_fit(args) -> int:
    values, _ = read_value_table(args.input)
    d = make_dataset(values)
    model = fit_udmm(d, args.alpha)
    save_model(model, args.out)
    print(f"k={model.k}")
    print("components_m:", " ".join(str(c.ncomponents) for c in model.components))
    print(f"log_likelihood={model.log_likelihood(values):.6f}")
    print(f"model written to {args.out}")
    return 0


def _cmd_sample(args) -> int:
    model = load_model(args.model)
    draw = model.sample(args.n, seed=args.seed)
    out = "\n".join(repr(float(v)) for v in draw) + "\n"
    if args.out:
        _write_text(args.out, out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    values, _ = read_value_table(args.data)
    n = args.n if args.n else len(values)
    draw = model.sample(n, seed=args.seed)
    stat = ks_two_sample(make_dataset(values), make_dataset(draw))
    print(f"ks={stat:.6f} n_model={n} n_data={len(values)}")
    return 0


def _cmd_bench(args) -> int:
    dists = args.dist.split(",") if args.dist else None
    report = run_bench(args.suite, replicates=args.replicates, m=args.m,
                       alpha=args.alpha, seed=args.seed, dists=dists)
    print(report.text_table())
    csv = "\n".join(report.csv_lines()) + "\n"
    if args.csv:
        _write_text(args.csv, csv)
        print(f"csv written to {args.csv}")
    else:
        sys.stdout.write(csv)
    return 0


def _cmd_segment(args) -> int:
    img = read_image(args.image)
    labels, k, thresholds = segment(img, args.alpha)
    out_img = recolor(img, labels)
    if args.out:
        write_pgm(out_img, args.out)
    print(f"k={k}")
    print("thresholds:", " ".join(f"{t:.6g}" for t in thresholds) or "(none)")
    flat = img.pixels.astype(np.float64).ravel()
    lab = labels.ravel()
    for s in range(k):
        mask = lab == s
        print(f"segment {s}: pixels={int(mask.sum())} mean={flat[mask].mean():.3f}")
    if args.out:
        print(f"recolored image written to {args.out}")
    return 0


def _cmd_nb(args) -> int:
    X, y = read_csv_table(args.csv)
    mean, std = kfold_accuracy(X, y, k=args.folds, mode=args.mode,
                               alpha=args.alpha, seed=args.seed)
    print(f"mode={args.mode} folds={args.folds} accuracy={mean:.4f} +- {std:.4f}")
    return 0


def _cmd_gen(args) -> int:
    specs = builtin(args.name, args.m)
    values, labels = sample_mixture(specs, seed=args.seed)
    _write_text(args.out, "\n".join(repr(float(v)) for v in values) + "\n")
    _write_text(f"{args.out}.labels", "\n".join(str(v) for v in labels) + "\n")
    print(f"wrote {len(values)} values to {args.out} (labels alongside)")
    return 0


def _cmd_plotdata(args) -> int:
    values, _ = read_value_table(args.input)
    d = make_dataset(values)
    e = Ecdf.of(d)
    lines = ["series,x,y"]
    counts, edges = np.histogram(values, bins=args.bins)
    for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
        lines.append(f"hist,{repr(float((lo + hi) / 2))},{int(c)}")
    for x, f in zip(d.values, e.cum):
        lines.append(f"ecdf,{repr(float(x))},{repr(float(f))}")
    gl = gl_set(e)
    for p in gl.points:
        name = {PointKind.GCM: "gcm", PointKind.LCM: "lcm", PointKind.BOTH: "gcm_lcm"}[p.kind]
        lines.append(f"{name},{repr(p.x)},{repr(p.f)}")
    outcome = uu_test(d, args.alpha)
    if not outcome.unimodal:
        for c in outcome.candidates:
            if c.md_x is not None:
                lines.append(f"md,{repr(float(c.md_x))},{repr(float(c.deviation))}")
    for vp in unisplit(d, args.alpha).valley_points:
        lines.append(f"vp,{repr(float(vp))},")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unisplit",
                                 description="valley-point splitting and uniform-mixture modeling of 1-d data")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="partition a sample into unimodal subsets")
    p.add_argument("input")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--labels", help="label file for NMI scoring")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("fit", help="fit a mixture model and write it to a file")
    p.add_argument("input")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("sample", help="draw values from a model file")
    p.add_argument("model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("eval", help="two-sample KS between a model sample and data")
    p.add_argument("model")
    p.add_argument("data")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="replicate benchmark suites")
    p.add_argument("--suite", choices=["table3", "table5"], required=True)
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", help="comma-separated subset of distribution names")
    p.add_argument("--csv", help="write per-replicate rows to this file")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("segment", help="segment a PGM/PPM image by intensity valleys")
    p.add_argument("image")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--out", help="write the recolored PGM here")
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("nb", help="cross-validated naive Bayes on a CSV table")
    p.add_argument("csv")
    p.add_argument("--mode", choices=["udmm", "gaussian"], default="udmm")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_nb)

    p = sub.add_parser("gen", help="generate a named benchmark dataset")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--m", type=int, default=100)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("plotdata", help="histogram/ecdf/critical-point CSV for plotting")
    p.add_argument("input")
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_plotdata)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
