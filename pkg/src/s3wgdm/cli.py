"""Command-line front end.

Commands: ``validate``, ``decide``, ``fuse``, ``sweep``, ``baseline``.
Exit codes: 0 on success, 1 on input validation failure, 2 on runtime error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import replace

from .caseio import (
    CaseFile,
    CaseFormatError,
    ParamsFile,
    RankOptions,
    case_summary,
    fused_table_dict,
    load_case,
    load_params,
    report_dict,
    validate_report_dict,
    write_json,
)
from .engine import (
    LevelConfig,
    baseline_full_fusion,
    rank,
    run_sequential,
)
from .neighborhood import build_similarity_matrix
from .tables import build_nested_subsets, extract, fuse_dhhflmwa, orient_to_concept

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2


def _sig6(x: float) -> str:
    return f"{x:.6g}"


def _apply_overrides(spec: ParamsFile, args) -> ParamsFile:
    if getattr(args, "levels", None):
        if args.levels < 1 or args.levels > len(spec.levels):
            raise CaseFormatError(
                [f"--levels must be between 1 and {len(spec.levels)}"])
        spec = replace(spec, levels=spec.levels[:args.levels])
    if getattr(args, "neg_direction", None):
        spec = replace(spec, rank=RankOptions(key=spec.rank.key,
                                              neg_direction=args.neg_direction))
    if getattr(args, "override_monotonicity", False):
        spec = replace(spec, monotonicity_override=True)
    return spec


def _print_report(out, case: CaseFile, spec: ParamsFile, report) -> None:
    for level in report.levels:
        cfg = spec.levels[level.index - 1]
        print(f"level {level.index}: attributes {{{', '.join(level.z)}}} "
              f"kappa={_sig6(cfg.kappa)} sigma={_sig6(cfg.sigma)}", file=out)
        print(f"  POS {sorted(level.pos)}  BND {sorted(level.bnd)}  "
              f"NEG {sorted(level.neg)}", file=out)
        for alt in level.universe:
            acc, dfr, rej = level.expected[alt]
            print(f"    {alt}: pr={_sig6(level.probability[alt])} "
                  f"accept={_sig6(acc)} defer={_sig6(dfr)} reject={_sig6(rej)}",
                  file=out)
    final = report.regions_after(len(report.levels))
    pos = sorted(a for a, r in final.items() if r == "POS")
    bnd = sorted(a for a, r in final.items() if r == "BND")
    neg = sorted(a for a, r in final.items() if r == "NEG")
    print(f"final regions: POS {pos}  BND {bnd}  NEG {neg}", file=out)
    order = rank(report, key=spec.rank.key, neg_direction=spec.rank.neg_direction)
    print("final ranking: " + " > ".join(order), file=out)


def cmd_validate(args) -> int:
    try:
        case = load_case(args.case)
    except CaseFormatError as exc:
        print("case file is invalid:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_INVALID
    summary = case_summary(case)
    print(f"valid case: n={summary['alternatives']} m={summary['attributes']} "
          f"e={summary['experts']} k={summary['levels']}")
    for i, subset in enumerate(summary["nested_subsets"], start=1):
        print(f"  Z{i} = {{{', '.join(subset)}}}")
    return EXIT_OK


def cmd_decide(args) -> int:
    case = load_case(args.case)
    spec = _apply_overrides(load_params(args.params), args)
    started = time.perf_counter()
    report = run_sequential(
        case.experts, case.attributes, spec.levels, spec.params,
        monotonicity_override=spec.monotonicity_override)
    baseline = baseline_full_fusion(case.experts, case.attributes, spec.params)
    elapsed = time.perf_counter() - started
    metadata = {"deterministic": True, "elapsed_seconds": elapsed}
    data = report_dict(case, spec, report, baseline=baseline, metadata=metadata)
    problems = validate_report_dict(data)
    if problems:
        raise RuntimeError("report failed self-validation: " + "; ".join(problems))
    if args.out:
        write_json(args.out, data)
    if args.dump_similarity:
        _dump_similarity(args.dump_similarity, case, spec, report)
    _print_report(sys.stdout, case, spec, report)
    return EXIT_OK


def _dump_similarity(prefix: str, case: CaseFile, spec: ParamsFile, report) -> None:
    subsets = build_nested_subsets(case.attributes)
    for level in report.levels:
        z = [a for a in case.experts[0].attributes if a in subsets[level.index - 1]]
        extracted = [extract(t, level.universe, z) for t in case.experts]
        fused = orient_to_concept(fuse_dhhflmwa(extracted), case.attributes)
        sim = build_similarity_matrix(fused, z, spec.levels[level.index - 1].sigma)
        path = f"{prefix}.level{level.index}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow([""] + list(sim.ids))
            for i, row_id in enumerate(sim.ids):
                writer.writerow([row_id] + [repr(float(v)) for v in sim.values[i]])


def cmd_fuse(args) -> int:
    case = load_case(args.case)
    fused = fuse_dhhflmwa(case.experts)
    data = fused_table_dict(fused)
    if args.out:
        write_json(args.out, data)
    else:
        json.dump(data, sys.stdout, indent=2, sort_keys=True)
        print()
    return EXIT_OK


def _parse_grid(specs) -> dict:
    """``eta=0:1:0.1`` inclusive ranges or bare values; returns name -> values."""
    grids = {}
    for raw in specs or []:
        if "=" not in raw:
            raise CaseFormatError([f"grid spec {raw!r} must look like name=start:stop:step"])
        name, _, rest = raw.partition("=")
        name = name.strip()
        if name not in ("eta", "sigma", "kappa"):
            raise CaseFormatError([f"grid parameter must be eta, sigma or kappa, got {name!r}"])
        parts = rest.split(":")
        try:
            if len(parts) == 1:
                values = [float(parts[0])]
            elif len(parts) == 3:
                start, stop, step = (float(p) for p in parts)
                if step <= 0:
                    raise ValueError("step must be positive")
                values = []
                k = 0
                while True:
                    v = start + k * step
                    if v > stop + step * 1e-9:
                        break
                    values.append(round(v, 12))
                    k += 1
            else:
                raise ValueError("expected start:stop:step")
        except ValueError as exc:
            raise CaseFormatError([f"grid spec {raw!r}: {exc}"]) from exc
        if not values:
            raise CaseFormatError([f"grid spec {raw!r} produced no points"])
        grids[name] = values
    if not grids:
        raise CaseFormatError(["sweep needs at least one --grid specification"])
    return grids


def _grid_points(grids: dict):
    names = sorted(grids)
    def rec(i, acc):
        if i == len(names):
            yield dict(acc)
            return
        for v in grids[names[i]]:
            acc[names[i]] = v
            yield from rec(i + 1, acc)
    yield from rec(0, {})


def cmd_sweep(args) -> int:
    case = load_case(args.case)
    base_spec = _apply_overrides(load_params(args.params), args)
    grids = _parse_grid(args.grid)
    names = sorted(grids)
    n_levels = len(base_spec.levels)
    header = names[:]
    for i in range(1, n_levels + 1):
        header += [f"pos_{i}", f"bnd_{i}", f"neg_{i}"]
    header.append("final_ranking")

    rows = []
    for point in _grid_points(grids):
        spec = base_spec
        if "eta" in point:
            spec = replace(spec, params=replace(spec.params, eta=point["eta"]))
        if "sigma" in point or "kappa" in point:
            levels = tuple(
                LevelConfig(kappa=point.get("kappa", c.kappa),
                            sigma=point.get("sigma", c.sigma))
                for c in spec.levels)
            spec = replace(spec, levels=levels)
        report = run_sequential(
            case.experts, case.attributes, spec.levels, spec.params,
            monotonicity_override=spec.monotonicity_override)
        row = [repr(point[name]) for name in names]
        for i in range(1, n_levels + 1):
            regions = report.regions_after(i)
            row += [str(sum(1 for r in regions.values() if r == region))
                    for region in ("POS", "BND", "NEG")]
        order = rank(report, key=spec.rank.key, neg_direction=spec.rank.neg_direction)
        row.append(">".join(order))
        rows.append(row)

    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    print(f"swept {len(rows)} grid points", file=sys.stderr)
    return EXIT_OK


def cmd_baseline(args) -> int:
    case = load_case(args.case)
    order = baseline_full_fusion(case.experts, case.attributes)
    print("baseline ranking: " + " > ".join(order))
    if args.out:
        data = {"baseline_ranking": list(order)}
        try:
            with open(args.out, "r", encoding="utf-8") as fh:
                existing = json.load(fh)
            if isinstance(existing, dict) and "final" in existing:
                existing["baseline_ranking"] = list(order)
                data = existing
        except (OSError, json.JSONDecodeError):
            pass
        write_json(args.out, data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="s3wgdm",
        description="Sequential three-way group decision-making over double "
                    "hierarchy hesitant fuzzy linguistic decision tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a case file and print its summary")
    p.add_argument("--case", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decide", help="run the sequential decision pipeline")
    p.add_argument("--case", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--deterministic", action="store_true",
                   help="force the single-threaded execution path (always on)")
    p.add_argument("--levels", type=int, help="run only the first N levels")
    p.add_argument("--neg-direction", choices=("desc", "asc"), dest="neg_direction",
                   help="override the ranking direction inside the rejected block")
    p.add_argument("--override-monotonicity", action="store_true",
                   dest="override_monotonicity",
                   help="allow non-monotone kappa/sigma sequences")
    p.add_argument("--dump-similarity", metavar="PREFIX",
                   help="write the per-level similarity matrices as CSV")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("fuse", help="emit the fused group table only")
    p.add_argument("--case", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("sweep", help="run a parameter grid and emit CSV")
    p.add_argument("--case", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--grid", action="append", metavar="NAME=START:STOP:STEP",
                   help="grid over eta, sigma or kappa (repeatable)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--levels", type=int)
    p.add_argument("--neg-direction", choices=("desc", "asc"), dest="neg_direction")
    p.add_argument("--override-monotonicity", action="store_true",
                   dest="override_monotonicity")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("baseline", help="one-shot full-fusion comparison ranking")
    p.add_argument("--case", required=True)
    p.add_argument("--out", help="write or extend a JSON report here")
    p.set_defaults(func=cmd_baseline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CaseFormatError as exc:
        print("invalid input:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:  # configuration rejected before the run
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # engine/runtime failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
