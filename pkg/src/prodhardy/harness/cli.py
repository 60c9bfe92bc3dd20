"""Command line entry point: ``prodhardy {gen-corpus, verify, report}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..atoms import build_corpus
from ..field import write_field
from .config import EXPERIMENT_IDS, ConfigError, load_config
from .experiments import ExperimentError, run_experiment, write_report


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--seed", type=int, help="corpus seed")
    p.add_argument("--grid", help="grid as n=<int>,L=<float>")
    p.add_argument("--p", type=float, help="Hardy exponent")
    p.add_argument("--alpha", type=float, help="fractional order (hls only)")
    p.add_argument("--gate", type=float, help="ratio spread gate")
    p.add_argument("--d", type=int, help="dimension")
    p.add_argument("--count", type=int, help="number of rectangle (or 1-d) atoms")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prodhardy", description="Hardy space inequality experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-corpus", help="write an atom corpus: JSON-lines manifest and binary fields")
    _common(g)

    v = sub.add_parser("verify", help="run one experiment and write <out>/<id>.csv and .json")
    v.add_argument("inequality", choices=EXPERIMENT_IDS)
    _common(v)

    r = sub.add_parser("report", help="summarise the reports found in --out")
    _common(r)
    return ap


def _overrides(args) -> dict:
    return {"seed": args.seed, "grid": args.grid, "p": args.p, "alpha": args.alpha, "gate": args.gate, "d": args.d, "count": args.count}


def _gen_corpus(args) -> int:
    cfg = load_config(args.config, _overrides(args), inequality=None if args.config else "hls")
    out = Path(args.out)
    (out / "fields").mkdir(parents=True, exist_ok=True)
    members = build_corpus(cfg.corpus(), cfg.grid())
    lines = []
    for m in members:
        rel = f"fields/{m.id}.phl"
        write_field(m.field, out / rel)
        lines.append(json.dumps(m.manifest(rel), sort_keys=True))
    (out / "corpus.jsonl").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(members)} members to {out}")
    return 0


def _verify(args) -> int:
    cfg = load_config(args.config, _overrides(args), inequality=args.inequality)
    report = run_experiment(cfg)
    csv_path, json_path = write_report(report, args.out)
    s = report.summary
    status = "PASS" if report.passed else "FAIL"
    print(
        f"{status} {report.id}: rows={len(report.rows)} min={s['min']:.6g} median={s['median']:.6g} "
        f"max={s['max']:.6g} spread={s['spread']:.6g} gate={cfg.gate:g} "
        f"oracle={report.config['oracle']['name']}:{'ok' if report.config['oracle']['ok'] else 'FAIL'}"
    )
    print(f"wrote {csv_path} and {json_path}")
    return 0 if report.passed else 1


def _report(args) -> int:
    out = Path(args.out)
    found = sorted(out.glob("*.json"))
    if not found:
        print(f"no reports in {out}", file=sys.stderr)
        return 1
    ok = True
    for path in found:
        data = json.loads(path.read_text())
        if "summary" not in data:
            continue
        s = data["summary"]
        ok &= bool(data["pass"])
        print(
            f"{'PASS' if data['pass'] else 'FAIL'} {data['id']:<24} rows={data['rows']:<4} "
            f"median={s['median']:.6g} spread={s['spread']:.6g}"
        )
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen-corpus":
            return _gen_corpus(args)
        if args.command == "verify":
            return _verify(args)
        return _report(args)
    except (ConfigError, ExperimentError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
