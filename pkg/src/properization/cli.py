"""Command-line front end: ``properize score | bayes-act | verify``.

Exit codes: 0 success, 1 unreadable input or unknown suite, 2 some cases
failed to score, 3 no Bayes act exists, 4 a verification suite did not
behave as expected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import scores as sc
from .distributions import Gaussian, from_literal
from .errors import NoBayesActError, ProperizationError
from .families import FamilyDescriptor
from .properize import Properized, bayes_act
from .verify import SUITES, propriety_test, run_suite

EXIT_OK, EXIT_INPUT, EXIT_CASES, EXIT_NO_ACT, EXIT_VERIFY = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class ForecastCase:
    id: str
    forecast: object  # Distribution, or None when the line was malformed
    observation: float
    error: str | None = None


@dataclass(frozen=True)
class ScoreReport:
    rule: sc.ScoringRule
    family: FamilyDescriptor | None
    per_case: list
    mean_raw: float | None
    mean_properized: float | None
    n_errors: int

    def to_json(self) -> dict:
        return {
            "rule": self.rule.to_literal(),
            "family": None if self.family is None else str(self.family),
            "n_cases": len(self.per_case),
            "n_errors": self.n_errors,
            "mean_raw": _num(self.mean_raw),
            "mean_properized": _num(self.mean_properized),
            "cases": self.per_case,
        }


def _num(x):
    """JSON-safe number: infinities become strings."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _error(exc: BaseException) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def parse_rule(text: str) -> sc.ScoringRule:
    text = text.strip()
    return sc.rule_from_literal(json.loads(text) if text.startswith("{") else text)


def _case_from_json(index: int, line: str) -> ForecastCase:
    fallback = f"line-{index + 1}"
    try:
        obj = json.loads(line)
        if not isinstance(obj, dict) or set(obj) != {"id", "forecast", "observation"}:
            raise ValueError("a case needs exactly the keys id, forecast, observation")
        obs = obj["observation"]
        if isinstance(obs, bool) or not isinstance(obs, (int, float)) or not math.isfinite(obs):
            raise ValueError(f"observation must be a finite number, got {obs!r}")
        return ForecastCase(str(obj["id"]), from_literal(obj["forecast"]), float(obs))
    except (ValueError, ProperizationError, TypeError, KeyError) as exc:
        return ForecastCase(fallback, None, math.nan, f"{type(exc).__name__}: {exc}")


def _case_from_row(index: int, row: dict) -> ForecastCase:
    try:
        obs = float(row["obs"])
        if not math.isfinite(obs):
            raise ValueError("obs must be finite")
        return ForecastCase(row["id"], Gaussian(float(row["mu"]), float(row["sigma2"])), obs)
    except (ValueError, ProperizationError, TypeError, KeyError) as exc:
        return ForecastCase(row.get("id") or f"row-{index + 1}", None, math.nan,
                            f"{type(exc).__name__}: {exc}")


def read_cases(path: Path, fmt: str) -> list[ForecastCase]:
    text = path.read_text()
    if fmt == "auto":
        fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if fmt == "csv":
        rows = csv.DictReader(io.StringIO(text))
        return [_case_from_row(i, row) for i, row in enumerate(rows)]
    return [_case_from_json(i, line) for i, line in enumerate(text.splitlines()) if line.strip()]


# ---------------------------------------------------------------------------
# scoring
# ---------------------------------------------------------------------------


def score_case(rule: sc.ScoringRule, family, case: ForecastCase) -> dict:
    out: dict = {"id": case.id}
    if case.error is not None:
        out["error"] = {"type": "MalformedCase", "message": case.error}
        return out
    try:
        out["raw"] = _num(sc.score(rule, case.forecast, case.observation))
    except ProperizationError as exc:
        out["error"] = _error(exc)
        return out
    try:
        out["properized"] = _num(Properized(rule, family).score(case.forecast, case.observation))
    except NoBayesActError as exc:
        out["properized"] = None
        out["error"] = {"type": "NoBayesAct", "message": exc.result.reason}
    except ProperizationError as exc:
        out["properized"] = None
        out["error"] = _error(exc)
    return out


def _mean(values):
    vals = [math.inf if v == "inf" else -math.inf if v == "-inf" else v for v in values]
    if not vals:
        return None
    return math.fsum(vals) / len(vals) if all(math.isfinite(v) for v in vals) else sum(vals) / len(vals)


def build_report(rule, family, cases: list[ForecastCase], jobs: int = 1) -> ScoreReport:
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_case = list(pool.map(score_case, [rule] * len(cases), [family] * len(cases), cases,
                                     chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        per_case = [score_case(rule, family, c) for c in cases]
    raw = [c["raw"] for c in per_case if c.get("raw") is not None]
    prop = [c["properized"] for c in per_case if c.get("properized") is not None]
    n_errors = sum("error" in c for c in per_case)
    return ScoreReport(rule, family, per_case, _mean(raw), _mean(prop), n_errors)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return v
    return f"{v:.10g}"


def report_table(report: ScoreReport) -> str:
    rows = [("id", "raw", "properized", "error")]
    for c in report.per_case:
        err = c.get("error")
        rows.append((c["id"], _fmt(c.get("raw")), _fmt(c.get("properized")),
                     err["type"] if err else ""))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.append("")
    lines.append(f"rule: {json.dumps(report.rule.to_literal(), sort_keys=True)}")
    lines.append(f"cases: {len(report.per_case)}  errors: {report.n_errors}")
    lines.append(f"mean raw: {_fmt(_num(report.mean_raw))}")
    lines.append(f"mean properized: {_fmt(_num(report.mean_properized))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _family(text: str | None) -> FamilyDescriptor | None:
    return FamilyDescriptor.parse(text) if text else None


def cmd_score(args) -> int:
    try:
        rule = parse_rule(args.rule)
        family = _family(args.family)
    except (ValueError, ProperizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cases = read_cases(Path(args.input), args.input_format)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_report(rule, family, cases, args.jobs)
    text = report_table(report) if args.format == "table" else _dump(report.to_json())
    _emit(text, args.output)
    return EXIT_CASES if report.n_errors else EXIT_OK


def cmd_bayes_act(args) -> int:
    try:
        rule = parse_rule(args.rule)
        family = _family(args.family)
        if args.forecast is not None:
            literal = json.loads(args.forecast)
        else:
            literal = json.loads(Path(args.input).read_text())
        P = from_literal(literal)
    except (OSError, ValueError, ProperizationError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = bayes_act(rule, P, family)
    except ProperizationError as exc:
        _emit(_dump({"status": "error", "error": _error(exc)}), args.output)
        return EXIT_CASES
    out = result.to_json() if not result.exists else result.act.to_literal()
    if args.format == "table" and result.exists:
        _emit(f"{json.dumps(out, sort_keys=True)}\nunique: {result.unique}\n", args.output)
    else:
        _emit(_dump(out), args.output)
    return EXIT_OK if result.exists else EXIT_NO_ACT


def cmd_verify(args) -> int:
    if args.rule:
        if not args.family:
            print("error: --rule needs --family", file=sys.stderr)
            return EXIT_INPUT
        try:
            rule = parse_rule(args.rule)
            family = FamilyDescriptor.parse(args.family)
        except (ValueError, ProperizationError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        verdict = propriety_test(rule, family, args.pairs, args.tol, args.seed)
        _emit(_dump(verdict.to_json()), args.output)
        return EXIT_OK if verdict.passed else EXIT_VERIFY
    if args.suite not in SUITES:
        sys.stderr.write(args.usage)
        print(f"error: unknown suite {args.suite!r}; choose from {sorted(SUITES)}", file=sys.stderr)
        return EXIT_INPUT
    results = run_suite(args.suite, args.pairs, args.tol, args.seed, args.jobs)
    if args.format == "table":
        rows = [f"{'ok' if r.as_expected else 'UNEXPECTED':10s} {r.verdict.label:24s} "
                f"{json.dumps(r.verdict.rule.to_literal(), sort_keys=True)} on {r.verdict.family}"
                for r in results]
        text = "\n".join(rows) + "\n"
    else:
        text = _dump({"suite": args.suite, "results": [r.to_json() for r in results]})
    _emit(text, args.output)
    return EXIT_OK if all(r.as_expected for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="properize", description="Score forecasts under raw and properized scoring rules")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("score", help="score a dataset of forecast cases")
    p.add_argument("--rule", required=True, help="rule name or JSON literal")
    p.add_argument("--family", help="forecast family, e.g. P2m:4")
    p.add_argument("--input", required=True, help="JSON-lines or CSV (id, mu, sigma2, obs) file")
    p.add_argument("--input-format", choices=("auto", "jsonl", "csv"), default="auto")
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = sub.add_parser("bayes-act", help="compute the Bayes act of one forecast")
    p.add_argument("--rule", required=True)
    p.add_argument("--family")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--forecast", help="distribution literal as JSON")
    src.add_argument("--input", help="file holding a distribution literal")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?", default="paper-proper", help=f"one of {sorted(SUITES)}")
    p.add_argument("--rule", help="test a single rule instead of a suite")
    p.add_argument("--family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(usage=p.format_usage())
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "score":
        return cmd_score(args)
    if args.command == "bayes-act":
        return cmd_bayes_act(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
