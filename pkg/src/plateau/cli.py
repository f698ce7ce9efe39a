"""``plateau`` command line: classify | code | search | sss."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    macwilliams_dual,
    minimal_access_sets_oracle,
    minimality_report,
    sss_report,
    ORACLE_BOUND,
    EXHAUSTIVE_BOUND,
)
from .codes import FULL_KINDS, KINDS, brute_force_distribution, build_defining_set, closed_form_distribution
from .errors import (
    ClassificationError,
    NonIntegerResult,
    NotBalanced,
    NotMinimal,
    NotOrbitClosed,
    PlateauError,
    TooLarge,
    UncoveredBranch,
)
from .field import build_field, parse_field_spec
from .pfunc import from_table, parse_function_file, quadratic
from .search import DEFAULT_CAP, FAMILIES, build_corpus, parse_corpus
from .spectrum import classify

EXIT_OK, EXIT_CLASSIFY, EXIT_CHECK, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- arguments


def _kind(value: str) -> str:
    if value != "all" and value not in KINDS:
        raise argparse.ArgumentTypeError(f"unknown kind {value!r}; choose from {', '.join(KINDS)} or all")
    return value


def _target(value: str) -> tuple[int, int, int]:
    try:
        p, m, s = (int(t) for t in value.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("target must look like p,m,s") from exc
    return p, m, s


def _add_source(sp) -> None:
    src = sp.add_argument_group("function source (exactly one)")
    src.add_argument("--quad", help="quadratic coefficients a_0 ... a_{m//2} as encodings")
    src.add_argument("--table", help="dense value table, space or comma separated")
    src.add_argument("--file", type=Path, help="function file")
    src.add_argument("--corpus", type=Path, help="corpus file; use with --pick")
    sp.add_argument("--field", help="field spec p=..,m=..[,mod=..] for --quad/--table")
    sp.add_argument("--linear", type=int, default=0, help="add Tr(b x) to a --quad function")
    sp.add_argument("--pick", type=int, default=0, help="0-based witness index in --corpus")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="plateau", description="Linear codes from plateaued p-ary functions.")
    ap.add_argument("--version", action="version", version=f"plateau {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", help="Walsh profile and WRPB certificate")
    _add_source(sp)

    for name, helptext in (("code", "codes, weight distributions and checks"),
                           ("sss", "access structure of the scheme on the dual code")):
        sp = sub.add_parser(name, help=helptext)
        _add_source(sp)
        sp.add_argument("--kind", action="append", type=_kind,
                        help="defining set kind (repeatable, or 'all'); default D0")
        sp.add_argument("--check", action="store_true", help="compare closed-form tables to brute force")
        sp.add_argument("--punctured", action="store_true", help="add punctured D0/D12 codes")
        sp.add_argument("--dual", action="store_true", help="MacWilliams dual enumerator")
        sp.add_argument("--sss", action="store_true", help="secret-sharing report")
        sp.add_argument("--oracle", action="store_true", help="small-instance enumerations")
        sp.add_argument("--exhaustive-bound", type=int, default=EXHAUSTIVE_BOUND)
        sp.add_argument("--oracle-bound", type=int, default=ORACLE_BOUND)

    sp = sub.add_parser("search", help="build the witness corpus")
    sp.add_argument("--target", action="append", type=_target, help="p,m,s (repeatable)")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="candidates swept per target")
    sp.add_argument("--family", action="append", choices=FAMILIES)
    sp.add_argument("--out", type=Path, help="write the corpus text here")
    sp.add_argument("--json", type=Path, help="write the JSON mirror here")
    sp.add_argument("--no-codes", action="store_true", help="skip per-kind code summaries")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return ap


# ---------------------------------------------------------------- helpers


def load_function(args):
    given = [x for x in (args.quad, args.table, args.file, args.corpus) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --quad, --table, --file, --corpus")
    if args.file is not None:
        return parse_function_file(args.file.read_text())
    if args.corpus is not None:
        recs = parse_corpus(args.corpus.read_text()).records
        if not 0 <= args.pick < len(recs):
            raise UsageError(f"--pick {args.pick} out of range (corpus has {len(recs)} witnesses)")
        return recs[args.pick].function()
    if args.field is None:
        raise UsageError("--quad and --table need --field")
    p, m, mod = parse_field_spec(args.field)
    ctx = build_field(p, m, mod)
    nums = [int(t) for t in (args.quad or args.table).replace(",", " ").split()]
    if args.quad is not None:
        return quadratic(ctx, nums, args.linear)
    return from_table(ctx, nums)


def _function_dict(f) -> dict:
    ctx = f.ctx
    out = {"p": ctx.p, "m": ctx.m, "modulus": list(ctx.modulus)}
    if f.provenance is not None:
        out["coeffs"] = list(f.provenance.coeffs)
        out["linear"] = f.provenance.linear
    return out


def _kinds(args) -> list[str]:
    kinds = args.kind or ["D0"]
    if "all" in kinds:
        return list(FULL_KINDS)
    return list(dict.fromkeys(kinds))


def _dist_dict(dist: dict) -> dict:
    return {str(w): a for w, a in sorted(dist.items())}


def _check_section(profile, kind: str, code) -> dict:
    try:
        cf = closed_form_distribution(profile, kind)
    except UncoveredBranch as exc:
        return {"verdict": "UNCOVERED", "reason": str(exc)}
    except NonIntegerResult as exc:
        return {"verdict": "MISMATCH", "reason": str(exc)}
    ok = cf.weights == code.weight_distribution and cf.total == profile.ctx.p ** code.k - 1
    return {
        "verdict": "MATCH" if ok else "MISMATCH",
        "source": cf.source(),
        "table": cf.source_table,
        "expected": _dist_dict(cf.weights),
    }


def code_report(f, profile, kind: str, args) -> dict:
    ds = build_defining_set(f, kind)
    code = brute_force_distribution(ds)
    rep = {
        "kind": kind,
        "params": list(code.params),
        "weight_distribution": _dist_dict(code.weight_distribution),
        "enumerator": code.enumerator_string(),
        "hash": code.enumerator_hash(),
        "source": "brute_force",
    }
    mr = minimality_report(code, profile, bound=args.exhaustive_bound)
    rep["minimality"] = mr.to_dict()
    if args.check:
        rep["check"] = _check_section(profile, kind, code)
    dual = None
    if args.dual or args.sss:
        dual = macwilliams_dual(code)
        if args.dual:
            rep["dual"] = dual.to_dict()
    if args.sss:
        try:
            rep["sss"] = sss_report(code, dual, mr).to_dict()
        except NotMinimal as exc:
            rep["sss"] = {"error": str(exc)}
    if args.oracle:
        try:
            sets = minimal_access_sets_oracle(code, args.oracle_bound)
            rep["oracle"] = {
                "num_minimal_access_sets": len(sets),
                "participant_1_count": sum(1 in s for s in sets),
            }
        except TooLarge as exc:
            rep["oracle"] = {"error": str(exc)}
    return rep


def _failed(rep: dict) -> bool:
    if rep.get("error"):
        return True
    if rep.get("check", {}).get("verdict") == "MISMATCH":
        return True
    if rep["minimality"]["ab_ratio_holds"] and rep["minimality"]["exhaustive_verdict"] is False:
        return True
    return False


# ---------------------------------------------------------------- commands


def cmd_classify(args) -> tuple[dict, int]:
    f = load_function(args)
    out = {"command": "classify", "function": _function_dict(f)}
    try:
        prof = classify(f)
    except ClassificationError as exc:
        out["error"] = {"type": type(exc).__name__, "message": str(exc), "omegas": [int(w) for w in exc.omegas[:20]]}
        return out, EXIT_CLASSIFY
    out["profile"] = prof.to_dict()
    out["certificate"] = prof.wrpb.to_dict()
    return out, EXIT_OK if prof.wrpb.holds else EXIT_CLASSIFY


def cmd_code(args) -> tuple[dict, int]:
    f = load_function(args)
    out = {"command": args.command, "function": _function_dict(f)}
    try:
        prof = classify(f)
    except ClassificationError as exc:
        out["error"] = {"type": type(exc).__name__, "message": str(exc), "omegas": [int(w) for w in exc.omegas[:20]]}
        return out, EXIT_CLASSIFY
    out["profile"] = prof.to_dict()
    out["certificate"] = prof.wrpb.to_dict()
    reports, code = [], EXIT_OK
    kinds = _kinds(args)
    if args.punctured:
        kinds += [f"Punc{k}" for k in kinds if k in ("D0", "D12")]
    for kind in kinds:
        try:
            rep = code_report(f, prof, kind, args)
        except NotBalanced as exc:
            out["codes"] = reports
            out["error"] = {"type": "NotBalanced", "message": str(exc), "omegas": []}
            return out, EXIT_CLASSIFY
        except NotOrbitClosed as exc:
            rep = {"kind": kind, "error": str(exc)}
        reports.append(rep)
        if _failed(rep) and (args.check or "error" not in rep):
            code = EXIT_CHECK
    out["codes"] = reports
    return out, code


def cmd_sss(args) -> tuple[dict, int]:
    args.sss = True
    out, code = cmd_code(args)
    for rep in out.get("codes", []):
        if "error" in rep.get("sss", {}):
            code = max(code, EXIT_CHECK)
    return out, code


def cmd_search(args) -> tuple[dict, int]:
    targets = args.target or None
    kwargs = {"cap": args.cap, "with_codes": not args.no_codes}
    if args.family:
        kwargs["families"] = tuple(dict.fromkeys(args.family))
    corpus = build_corpus(targets, **kwargs) if targets else build_corpus(**kwargs)
    if args.out:
        args.out.write_text(corpus.text())
    if args.json:
        args.json.write_text(corpus.json())
    out = {"command": "search", "corpus_text": corpus.text(), **json.loads(corpus.json())}
    return out, EXIT_OK


# ---------------------------------------------------------------- rendering


def render_text(out: dict) -> str:
    lines = []
    cmd = out["command"]
    if cmd == "search":
        return out["corpus_text"]
    fn = out["function"]
    lines.append(f"field p={fn['p']} m={fn['m']} modulus={','.join(map(str, fn['modulus']))}")
    if "coeffs" in fn:
        lin = f" linear={fn['linear']}" if fn.get("linear") else ""
        lines.append(f"coeffs={','.join(map(str, fn['coeffs']))}{lin}")
    if "profile" in out:
        pr, ce = out["profile"], out["certificate"]
        t = ce["t"] if ce["t"] is not None else "-"
        tags = ["balanced" if pr["balanced"] else "unbalanced", "wrpb" if ce["holds"] else "not-wrpb"]
        lines.append(f"s={pr['s']} epsilon={pr['epsilon']:+d} {' '.join(tags)} t={t}")
        lines.append(f"support_size={pr['support_size']} parity={pr['parity']}")
        if ce["reasons"]:
            lines.append("reasons: " + "; ".join(ce["reasons"]))
    for rep in out.get("codes", []):
        if "error" in rep:
            lines.append(f"[{rep['kind']}] error: {rep['error']}")
            continue
        n, k, d = rep["params"]
        lines.append(f"[{rep['kind']}] [{n},{k},{d}] {rep['enumerator']} hash={rep['hash']}")
        mi = rep["minimality"]
        ex = {None: "-", True: "minimal", False: "not-minimal"}[mi["exhaustive_verdict"]]
        lines.append(f"  minimality: w_min={mi['w_min']} w_max={mi['w_max']} "
                     f"ab={'pass' if mi['ab_ratio_holds'] else 'fail'} exhaustive={ex}")
        if mi["proposition_params"]:
            lines.append(f"  predicted: {mi['proposition_params']}")
        elif mi["proposition_note"]:
            lines.append(f"  predicted: n/a ({mi['proposition_note']})")
        if "check" in rep:
            ch = rep["check"]
            extra = ch.get("source") or ch.get("reason", "")
            lines.append(f"  check: {ch['verdict']} {extra}")
        if "dual" in rep:
            du = rep["dual"]
            lines.append(f"  dual: k_perp={du['k_perp']} d_perp={du['d_perp']}")
        if "sss" in rep:
            ss = rep["sss"]
            if "error" in ss:
                lines.append(f"  sss: {ss['error']}")
            else:
                lines.append(f"  sss: participants={ss['num_participants']} "
                             f"minimal_access_sets={ss['num_minimal_access_sets']} d_perp={ss['d_perp']}")
                if ss["coverage"]:
                    cov = " ".join(f"l={l}:{c}" for l, c in ss["coverage"].items())
                    lines.append(f"  coverage: {cov}")
                else:
                    lines.append(f"  in_all={len(ss['in_all'])} others_in={ss['partial_count']}")
        if "oracle" in rep:
            orc = rep["oracle"]
            if "error" in orc:
                lines.append(f"  oracle: {orc['error']}")
            else:
                lines.append(f"  oracle: minimal_access_sets={orc['num_minimal_access_sets']} "
                             f"participant_1_in={orc['participant_1_count']}")
    if "error" in out:
        lines.append(f"error: {out['error']['type']}: {out['error']['message']}")
    return "\n".join(lines) + "\n"


def render_csv(out: dict) -> str:
    rows = ["kind,weight,multiplicity"]
    for rep in out.get("codes", []):
        if "error" in rep:
            continue
        rows.append(f"{rep['kind']},0,1")
        rows += [f"{rep['kind']},{w},{a}" for w, a in rep["weight_distribution"].items()]
    return "\n".join(rows) + "\n"


COMMANDS = {"classify": cmd_classify, "code": cmd_code, "sss": cmd_sss, "search": cmd_search}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"plateau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PlateauError, OSError) as exc:
        print(f"plateau: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        out.pop("corpus_text", None)
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        sys.stdout.write(render_csv(out))
    else:
        sys.stdout.write(render_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
