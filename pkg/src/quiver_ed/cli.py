"""Command-line front end.

Quiver files are plain text: a "vertices N" line, then one "arrow S T"
line per arrow (1-based endpoints, repeated lines for parallel arrows,
S = T for a loop).  Lines starting with "#" are comments.  Every
subcommand prints either human-readable lines or, with --json, one JSON
document with fixed fields: command, quiver, vector, result, bounds,
status, notes, seed.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import canonical, classify, essdim, roots
from .errors import QuiverEdError, QuiverFileError, ResourceLimitError
from .fforacle import oracle as ff
from .quiver import Quiver, Vector, build_quiver, has_loop_everywhere

# ---------------------------------------------------------------------------
# quiver file format


def parse_quiver_text(text: str) -> Quiver:
    """Parse the textual quiver format; raises QuiverFileError."""
    vertex_count = None
    arrows: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "vertices":
            if vertex_count is not None:
                raise QuiverFileError(f"line {lineno}: repeated vertices line")
            if len(fields) != 2:
                raise QuiverFileError(f"line {lineno}: expected 'vertices N'")
            try:
                vertex_count = int(fields[1])
            except ValueError:
                raise QuiverFileError(
                    f"line {lineno}: vertex count {fields[1]!r} is not an integer"
                ) from None
        elif fields[0] == "arrow":
            if vertex_count is None:
                raise QuiverFileError(
                    f"line {lineno}: arrow before the vertices line"
                )
            if len(fields) != 3:
                raise QuiverFileError(f"line {lineno}: expected 'arrow S T'")
            try:
                s, t = int(fields[1]), int(fields[2])
            except ValueError:
                raise QuiverFileError(
                    f"line {lineno}: arrow endpoints must be integers"
                ) from None
            arrows.append((s, t))
        else:
            raise QuiverFileError(
                f"line {lineno}: unknown keyword {fields[0]!r}"
            )
    if vertex_count is None:
        raise QuiverFileError("missing vertices line")
    try:
        return build_quiver(vertex_count, arrows)
    except QuiverEdError as exc:
        raise QuiverFileError(str(exc)) from exc


def serialize_quiver(quiver: Quiver) -> str:
    lines = [f"vertices {quiver.vertex_count}"]
    for s, t in quiver.arrows:
        lines.append(f"arrow {s} {t}")
    return "\n".join(lines) + "\n"


def bundled_quiver_names() -> tuple[str, ...]:
    base = resources.files("quiver_ed").joinpath("data/quivers")
    names = sorted(
        entry.name[: -len(".quiver")]
        for entry in base.iterdir()
        if entry.name.endswith(".quiver")
    )
    return tuple(names)


def load_bundled_quiver(name: str) -> Quiver:
    base = resources.files("quiver_ed").joinpath("data/quivers")
    candidate = base.joinpath(f"{name}.quiver")
    if not candidate.is_file():
        raise QuiverFileError(
            f"no file or bundled quiver named {name!r}; bundled names: "
            + ", ".join(bundled_quiver_names())
        )
    return parse_quiver_text(candidate.read_text(encoding="ascii"))


def _resolve_quiver(spec: str) -> Quiver:
    """A path to a quiver file, or the name of a bundled quiver."""
    import os

    if os.path.exists(spec):
        try:
            with open(spec, "r", encoding="ascii") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise QuiverFileError(f"cannot read {spec}: {exc}") from exc
        return parse_quiver_text(text)
    return load_bundled_quiver(spec)


def _parse_vector(text: str, quiver: Quiver) -> Vector:
    parts = [p.strip() for p in text.split(",")]
    try:
        vec = tuple(int(p) for p in parts)
    except ValueError:
        raise QuiverFileError(
            f"vector {text!r} is not comma-separated integers"
        ) from None
    if len(vec) != quiver.vertex_count:
        raise QuiverFileError(
            f"vector has {len(vec)} entries, quiver has {quiver.vertex_count} vertices"
        )
    return vec


# ---------------------------------------------------------------------------
# report plumbing


def _quiver_payload(quiver: Quiver) -> dict:
    return {
        "vertices": quiver.vertex_count,
        "arrows": [list(a) for a in quiver.arrows],
    }


def _report_payload(report: essdim.EdReport) -> dict:
    return {
        "quantity": report.quantity,
        "vector": list(report.vector),
        "lower": report.lower_bound,
        "upper": report.upper_bound,
        "status": report.status,
        "base": report.base,
        "gcd": report.gcd_d,
        "tower_sum": report.tower_sum,
        "tower_max": report.tower_max,
        "note": report.note,
    }


def _report_lines(report: essdim.EdReport) -> list[str]:
    if report.lower_bound == report.upper_bound:
        head = f"{report.quantity} = {report.upper_bound} [{report.status}]"
    else:
        head = (
            f"{report.quantity} in [{report.lower_bound}, {report.upper_bound}] "
            f"[{report.status}]"
        )
    return [head, f"  {report.note}"]


def _empty_report(command: str) -> dict:
    return {
        "command": command,
        "quiver": None,
        "vector": None,
        "result": None,
        "bounds": None,
        "status": "ok",
        "notes": [],
        "seed": None,
    }


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    rt = classify.rep_type(quiver)
    loops = has_loop_everywhere(quiver)
    generic_all = essdim.genericity_all_alpha(quiver)
    witness = None
    if rt.verdict == classify.WILD:
        w = classify.find_witness_subquiver(quiver)
        witness = {
            "kind": w.kind,
            "vertices": list(w.vertices),
            "arrows": [list(a) for a in w.arrows],
            "note": w.note,
        }
    report = _empty_report("classify")
    report["quiver"] = _quiver_payload(quiver)
    report["result"] = {
        "rep_type": rt.verdict,
        "components": [
            {
                "vertices": list(c.vertices),
                "verdict": c.verdict,
                "label": c.label,
            }
            for c in rt.components
        ],
        "loops_everywhere": loops,
        "genericity_all_vectors": generic_all,
        "witness": witness,
    }
    report["status"] = rt.verdict
    lines = [f"representation type: {rt.verdict}"]
    for c in rt.components:
        label = f" ({c.label})" if c.label else ""
        lines.append(f"  component {list(c.vertices)}: {c.verdict}{label}")
    lines.append(f"loops everywhere: {'yes' if loops else 'no'}")
    lines.append(
        f"genericity for all dimension vectors: {'yes' if generic_all else 'no'}"
    )
    if witness is not None:
        lines.append(
            f"wildness witness: {witness['kind']} on vertices "
            f"{witness['vertices']} ({witness['note']})"
        )
    return report, lines


def _cmd_root(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    vec = _parse_vector(args.vector, quiver)
    rc = roots.classify_root(quiver, vec)
    fundamental = roots.in_fundamental_region(quiver, vec)
    report = _empty_report("root")
    report["quiver"] = _quiver_payload(quiver)
    report["vector"] = list(vec)
    report["result"] = {
        "verdict": rc.verdict,
        "sign": rc.sign,
        "reflections": list(rc.trace),
        "terminal": list(rc.terminal) if rc.terminal is not None else None,
        "in_fundamental_region": fundamental,
    }
    report["status"] = rc.verdict
    lines = [f"root class: {rc.verdict}"]
    if rc.verdict != roots.NOT_ROOT:
        lines.append(f"  sign: {rc.sign:+d}")
        if rc.trace:
            lines.append(f"  reflection chain: {list(rc.trace)}")
        if rc.terminal is not None:
            lines.append(f"  terminal vector: {list(rc.terminal)}")
    lines.append(f"in fundamental region: {'yes' if fundamental else 'no'}")
    return report, lines


def _cmd_ged(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    vec = _parse_vector(args.vector, quiver)
    report = _empty_report("ged")
    report["quiver"] = _quiver_payload(quiver)
    report["vector"] = list(vec)
    rc = roots.classify_root(quiver, vec)
    if rc.verdict != roots.NOT_ROOT and rc.sign > 0:
        ed = essdim.ged_root(quiver, vec)
        report["result"] = _report_payload(ed)
        report["bounds"] = [ed.lower_bound, ed.upper_bound]
        report["status"] = ed.status
        report["notes"] = [ed.note]
        return report, _report_lines(ed)
    # not a positive root: no supported exact answer, but the canonical
    # summands are Schur roots and their individual reports still carry
    # information
    decomp = canonical.canonical_decomposition(quiver, vec)
    summand_reports = []
    lines = [
        "unsupported: the vector is not a positive root; "
        "reporting per-summand values only (informational)"
    ]
    for part, mult in decomp.summands:
        sub = essdim.ged_schur_root(quiver, part)
        summand_reports.append(
            {"summand": list(part), "multiplicity": mult, "report": _report_payload(sub)}
        )
        lines.append(
            f"  summand {list(part)} x{mult}: "
            f"[{sub.lower_bound}, {sub.upper_bound}] [{sub.status}]"
        )
    report["result"] = {"unsupported": True, "summands": summand_reports}
    report["status"] = "Unsupported"
    report["notes"] = [
        "no exact aggregate is claimed for vectors that are not positive roots"
    ]
    return report, lines


def _cmd_genericity(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    report = _empty_report("genericity")
    report["quiver"] = _quiver_payload(quiver)
    if args.vector is not None:
        vec = _parse_vector(args.vector, quiver)
        verdict = essdim.genericity_for(quiver, vec)
        report["vector"] = list(vec)
        result = {"verdict": verdict.verdict, "reason": verdict.reason}
        lines = [f"genericity: {verdict.verdict}", f"  {verdict.reason}"]
        if verdict.alpha_report is not None:
            result["ed_report"] = _report_payload(verdict.alpha_report)
            lines.extend("  " + l for l in _report_lines(verdict.alpha_report))
        if verdict.beta_report is not None:
            result["witness_report"] = _report_payload(verdict.beta_report)
            lines.extend("  " + l for l in _report_lines(verdict.beta_report))
        if verdict.pair is not None:
            result["pair"] = [list(v) for v in verdict.pair]
        report["result"] = result
        report["status"] = verdict.verdict
        return report, lines
    if essdim.genericity_all_alpha(quiver):
        report["result"] = {"all_vectors": True}
        report["status"] = "Holds"
        return report, ["genericity holds for every dimension vector"]
    alpha, beta, gap = essdim.genericity_counterexample(quiver)
    report["result"] = {
        "all_vectors": False,
        "alpha": list(alpha),
        "beta": list(beta),
        "gap_report": _report_payload(gap),
    }
    report["status"] = "Fails"
    lines = [
        "genericity fails for some dimension vector; counterexample pair:",
        f"  alpha = {list(alpha)} (generic value is an upper bound for the stack)",
        f"  beta  = {list(beta)} (a summand forced to exceed it)",
    ]
    lines.extend("  " + l for l in _report_lines(gap))
    return report, lines


def _cmd_decomp(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    vec = _parse_vector(args.vector, quiver)
    decomp = canonical.canonical_decomposition(quiver, vec)
    schur = canonical.is_schur_root(quiver, vec)
    report = _empty_report("decomp")
    report["quiver"] = _quiver_payload(quiver)
    report["vector"] = list(vec)
    report["result"] = {
        "summands": [
            {"vector": list(part), "multiplicity": mult}
            for part, mult in decomp.summands
        ],
        "is_schur_root": schur,
    }
    lines = ["canonical decomposition:"]
    for part, mult in decomp.summands:
        lines.append(f"  {list(part)} x{mult}")
    lines.append(f"input is a Schur root: {'yes' if schur else 'no'}")
    return report, lines


def _cmd_oracle(args) -> tuple[dict, list[str]]:
    quiver = _resolve_quiver(args.quiver)
    vec = _parse_vector(args.vector, quiver)
    report = _empty_report("oracle")
    report["quiver"] = _quiver_payload(quiver)
    report["vector"] = list(vec)
    report["seed"] = args.seed
    caps = {}
    if args.cap is not None:
        caps["idempotent_cap"] = args.cap
    sample = ff.sampled_generic_decomposition(
        quiver, vec, args.prime, args.trials, seed=args.seed, **caps
    )
    brick_kwargs = {}
    if args.cap is not None:
        brick_kwargs["exhaustive_cap"] = args.cap
    brick = ff.brick_witness(
        quiver, vec, args.prime, budget=args.trials, seed=args.seed, **brick_kwargs
    )
    report["result"] = {
        "prime": args.prime,
        "trials": sample.trials,
        "skipped": sample.skipped,
        "modal_partition": [list(v) for v in sample.modal_partition],
        "partition_counts": [
            {"partition": [list(v) for v in part], "count": count}
            for part, count in sorted(sample.counts.items())
        ],
        "brick": {
            "found": brick.found,
            "index": brick.index,
            "definitive": brick.definitive,
            "checked": brick.checked,
            "note": brick.note,
        },
    }
    report["notes"] = [brick.note]
    lines = [
        f"sampled decomposition over F_{args.prime} "
        f"({sample.trials} trials, {sample.skipped} skipped):"
    ]
    for part, count in sorted(sample.counts.items(), key=lambda kv: -kv[1]):
        tag = " (modal)" if part == sample.modal_partition else ""
        lines.append(f"  {count:5d}  {[list(v) for v in part]}{tag}")
    lines.append(
        f"brick search: {'found' if brick.found else 'none found'} "
        f"({'definitive' if brick.definitive else 'inconclusive'}; {brick.note})"
    )
    return report, lines


def _cmd_star(args) -> tuple[dict, list[str]]:
    report = _empty_report("star")
    ed = essdim.star_ed(args.m, args.n)
    ged = essdim.star_ged(args.m, args.n)
    report["result"] = {"m": args.m, "n": args.n, "ed": ed, "ged": ged}
    report["status"] = "Exact"
    lines = [
        f"star with {args.m} arms, weight vector ({args.n + 1}, 1, ..., 1):",
        f"  ed  = {ed}",
        f"  ged = {ged}",
    ]
    return report, lines


def _cmd_kron(args) -> tuple[dict, list[str]]:
    report = _empty_report("kron")
    value = essdim.kronecker_ed(args.r, args.a, args.b)
    report["result"] = {"r": args.r, "a": args.a, "b": args.b, "ed": value}
    report["status"] = "Exact"
    lines = [f"ed for {args.r} parallel arrows at ({args.a}, {args.b}): {value}"]
    return report, lines


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiver-ed",
        description=(
            "Exact invariants of quiver representations: root classes, "
            "canonical decompositions, essential-dimension bounds, and a "
            "finite-field oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quiver_arg(p):
        p.add_argument(
            "quiver",
            help="path to a quiver file, or the name of a bundled quiver",
        )

    def add_common(p):
        p.add_argument("--json", action="store_true", help="emit one JSON document")

    p = sub.add_parser("classify", help="representation type and wildness witness")
    add_quiver_arg(p)
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("root", help="classify a dimension vector as a root")
    add_quiver_arg(p)
    p.add_argument("vector", help="comma-separated integers")
    add_common(p)
    p.set_defaults(func=_cmd_root)

    p = sub.add_parser("ged", help="generic essential dimension of a root")
    add_quiver_arg(p)
    p.add_argument("vector", help="comma-separated integers")
    add_common(p)
    p.set_defaults(func=_cmd_ged)

    p = sub.add_parser("genericity", help="decide the genericity property")
    add_quiver_arg(p)
    p.add_argument("vector", nargs="?", default=None, help="optional vector")
    add_common(p)
    p.set_defaults(func=_cmd_genericity)

    p = sub.add_parser("decomp", help="canonical decomposition of a vector")
    add_quiver_arg(p)
    p.add_argument("vector", help="comma-separated integers")
    add_common(p)
    p.set_defaults(func=_cmd_decomp)

    p = sub.add_parser("oracle", help="finite-field sampling oracle")
    add_quiver_arg(p)
    p.add_argument("vector", help="comma-separated integers")
    p.add_argument("--prime", type=int, default=7, help="field size (prime)")
    p.add_argument("--trials", type=int, default=200, help="sample count")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap override")
    add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("star", help="closed forms for one-source stars")
    p.add_argument("--m", type=int, required=True, help="arm count")
    p.add_argument("--n", type=int, required=True, help="center weight minus one")
    add_common(p)
    p.set_defaults(func=_cmd_star)

    p = sub.add_parser("kron", help="closed forms for parallel-arrow pairs")
    p.add_argument("--r", type=int, required=True, help="arrow count (1 or 2)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_kron)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, lines = args.func(args)
    except QuiverFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except QuiverEdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if getattr(args, "json", False):
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
