"""Command-line front end: kernel operations on ideal files and stratum verifiers."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor

from .coeff import DEFAULT_PRIME
from .engine import GBTimeout
from .groebner import Ideal, eliminate, intersect, saturate
from .hilbert import RationalSeries, check_invariants, hilbert_series
from .parse import ParseError, parse_poly, print_poly, read_ideal_file
from .resolution import canonical_twist, minimal_resolution
from .ring import MonomialOrder
from .strata.checks import DEFAULT_TIME_BUDGET, DEFAULT_TRUNCATION, SUITES, verify_stratum

log = logging.getLogger("canring")

ENV_PREFIX = "CANRING_"

KIND_NAMES = {
    "type-a": "TypeA", "type-b": "TypeB", "type-dd": "TypeDD", "type-de": "TypeDE",
    "curve-a": "CurveA", "curve-b": "CurveB", "type-d-component": "TypeD_component",
    "type-e-component": "TypeE_component", "x1-de": "X1_DE", "x2-de": "X2_DE",
    "glueing": "Glueing", "invariant-cover": "InvariantCover",
    "type-b-family": "TypeB_family", "type-dd-family": "TypeDD_family",
}
FAMILY_NAMES = {"type-b": "TypeB_family", "type-dd": "TypeDD_family"}

DEFAULT_CONFIG = [
    {"kind": "TypeA", "seed": 1},
    {"kind": "TypeA", "seed": 2, "options": {"through_0010": True}},
    {"kind": "TypeB", "seed": 1},
    {"kind": "TypeDD", "seed": 1},
    {"kind": "TypeDE", "seed": 1},
    {"kind": "CurveA", "seed": 1},
    {"kind": "CurveB", "seed": 1},
    {"kind": "TypeD_component", "seed": 1, "options": {"pinched": True}},
    {"kind": "TypeE_component", "seed": 1, "options": {"pinched": True}},
    {"kind": "X1_DE", "seed": 1},
    {"kind": "X2_DE", "seed": 1},
    {"kind": "TypeB_family", "seed": 1},
    {"kind": "TypeDD_family", "seed": 1},
    {"kind": "Glueing", "seed": 1},
    {"kind": "InvariantCover", "seed": 1},
]


class UsageError(Exception):
    pass


def _env(name: str, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name}={raw!r} is not a valid value") from None


def kind_name(text: str) -> str:
    if text in SUITES:
        return text
    if text.lower() in KIND_NAMES:
        return KIND_NAMES[text.lower()]
    raise UsageError(f"unknown kind {text!r}; expected one of {', '.join(KIND_NAMES)}")


# verbs; each returns (result dict, exit code)

def _load(path):
    ring, gens = read_ideal_file(path)
    return Ideal(ring, gens)


def _gb_or_truncated(I: Ideal, args, order=None):
    kw = {} if order is None else {"order": order}
    try:
        return I.gb(time_budget=args.time_budget, **kw)
    except GBTimeout:
        log.warning("time budget exhausted; truncating at degree %d", args.truncation)
        return I.gb(truncation=args.truncation, **kw)


def _ideal_result(I: Ideal, comment: str = "") -> dict:
    return {"type": "ideal", "ring": str(I.ring), "comment": comment,
            "generators": [print_poly(g) for g in I.generators]}


def cmd_gb(args):
    I = _load(args.file)
    order = MonomialOrder("EliminationBlock", args.elim) if args.elim else MonomialOrder()
    gb = _gb_or_truncated(I, args, order)
    note = "complete" if gb.complete else f"truncated at degree {gb.truncation}"
    out = _ideal_result(Ideal(I.ring, gb.polys), f"Groebner basis ({order.kind}), {note}")
    out.update({"type": "gb", "complete": gb.complete, "truncation": gb.truncation})
    return out, 0


def cmd_hilbert(args):
    I = _load(args.file)
    upto = args.upto if args.upto is not None else args.truncation
    try:
        s = hilbert_series(I, time_budget=args.time_budget)
    except GBTimeout:
        s = hilbert_series(I, truncation=max(upto, args.truncation))
    out = {"type": "hilbert", "complete": isinstance(s, RationalSeries),
           "coefficients": s.expand(upto)}
    if isinstance(s, RationalSeries):
        out["series"] = str(s)
        out["dimension"] = s.pole_order() - 1
        inv = check_invariants(s, upto) if upto >= 2 else None
        if inv is not None and inv.surface:
            out["invariants"] = {"chi": str(inv.chi), "K2": str(inv.Ksq), "pg": inv.pg, "q": inv.q}
    else:
        out["series"] = str(s)
    return out, 0


def cmd_member(args):
    I = _load(args.file)
    p = parse_poly(args.polynomial, I.ring)
    gb = I.cached() or _gb_or_truncated(I, args)
    if not gb.covers(p.degree if p else 0):
        raise UsageError(f"degree {p.degree} is above the certified degree {gb.truncation}")
    nf = gb.reduce(p)
    member = not nf
    return {"type": "member", "polynomial": print_poly(p), "member": member,
            "normal_form": print_poly(nf)}, 0 if member else 1


def cmd_eliminate(args):
    I = _load(args.file)
    drop = [v.strip() for v in args.vars.split(",") if v.strip()]
    J = eliminate(I, drop, time_budget=args.time_budget)
    return _ideal_result(J, f"eliminated {', '.join(drop)}"), 0


def cmd_intersect(args):
    I, J = _load(args.file), _load(args.other)
    if I.ring != J.ring:
        raise UsageError("the two ideal files must use the same ring")
    return _ideal_result(intersect(I, J, time_budget=args.time_budget), "intersection"), 0


def cmd_saturate(args):
    I = _load(args.file)
    f = parse_poly(args.by, I.ring)
    return _ideal_result(saturate(I, f), f"saturated by {print_poly(f)}"), 0


def cmd_resolve(args):
    I = _load(args.file)
    res = minimal_resolution(I)
    b = res.betti
    out = {"type": "resolution", "ranks": b.ranks(), "twists": [list(s) for s in b.steps],
           "betti": str(b)}
    if len(b.steps[-1]) == 1:
        out["final_twist"] = b.steps[-1][0]
        out["canonical_twist"] = canonical_twist(res)
    return out, 0


def _options(args) -> dict:
    opts = {"prime": args.prime, "truncation": args.truncation, "time_budget": args.time_budget}
    for flag in ("through_0010", "drop_z2", "pinched", "no_y4"):
        if getattr(args, flag, False):
            opts[flag] = True
    if getattr(args, "resolve", None) is not None:
        opts["resolve"] = args.resolve
    if getattr(args, "lambdas", None):
        try:
            opts["lambdas"] = [int(x) for x in args.lambdas.split(",")]
        except ValueError:
            raise UsageError(f"bad lambda list {args.lambdas!r}") from None
        if any(x % args.prime == 0 for x in opts["lambdas"]):
            raise UsageError("lambda values must be nonzero")
    return opts


def _report_result(report) -> tuple[dict, int]:
    d = report.to_dict()
    d["type"] = "report"
    return d, 0 if report.ok else 1


def cmd_verify(args):
    return _report_result(verify_stratum(kind_name(args.kind), args.seed, _options(args)))


def cmd_family(args):
    kind = FAMILY_NAMES.get(args.kind.lower())
    if kind is None:
        raise UsageError(f"no family for {args.kind!r}; expected one of {', '.join(FAMILY_NAMES)}")
    return _report_result(verify_stratum(kind, args.seed, _options(args)))


def _run_entry(entry: dict, defaults: dict) -> dict:
    opts = dict(defaults)
    opts.update(entry.get("options") or {})
    r = verify_stratum(kind_name(entry["kind"]), entry.get("seed", 0), opts)
    return r.to_dict()


def load_config(path) -> list[dict]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise UsageError(f"{path}: invalid JSON ({e})") from None
    entries = data.get("entries", []) if isinstance(data, dict) else data
    if not isinstance(entries, list) or not all(isinstance(e, dict) and "kind" in e for e in entries):
        raise UsageError("config must be a list of {kind, seed, options} entries")
    for e in entries:
        kind_name(e["kind"])
    return entries


def run_all(entries, defaults: dict | None = None, jobs: int = 1) -> dict:
    """Run every entry; reports come back in config order whatever the job count."""
    defaults = dict(defaults or {})
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_run_entry, entries, [defaults] * len(entries)))
    else:
        reports = [_run_entry(e, defaults) for e in entries]
    failed = [f"{r['kind']}:{r['seed']}:{c['name']}" for r in reports for c in r["checks"]
              if c["status"] == "fail"]
    return {"type": "aggregate", "status": "fail" if failed else "pass",
            "entries": len(reports), "failed_checks": failed, "reports": reports}


def cmd_report(args):
    entries = load_config(args.config) if args.config else DEFAULT_CONFIG
    defaults = {"prime": args.prime, "truncation": args.truncation, "time_budget": args.time_budget}
    out = run_all(entries, defaults, args.jobs)
    return out, 0 if out["status"] == "pass" else 1


# rendering

def _render_report(d: dict) -> list[str]:
    opts = ", ".join(f"{k}={v}" for k, v in d.get("options", {}).items())
    lines = [f"{d['kind']} seed {d['seed']} prime {d['prime']}" + (f" ({opts})" if opts else "")
             + f": {d['status'].upper()}"]
    for c in d["checks"]:
        detail = c["detail"].splitlines()
        head = f"  [{c['status']}] {c['name']} ({c['millis']} ms)"
        lines.append(head + (f": {detail[0]}" if detail else ""))
        lines += ["      " + ln for ln in detail[1:]]
    return lines


def render_text(d: dict) -> str:
    t = d.get("type")
    if t in ("ideal", "gb"):
        lines = [d["ring"]] + [f"# {c}" for c in d["comment"].splitlines() if c] + d["generators"]
    elif t == "hilbert":
        lines = [d["series"], "coefficients: " + " ".join(map(str, d["coefficients"]))]
        if "dimension" in d:
            lines.append(f"dimension: {d['dimension']}")
        for k, v in d.get("invariants", {}).items():
            lines.append(f"{k}: {v}")
    elif t == "member":
        lines = [f"{d['polynomial']}: {'member' if d['member'] else 'not a member'}",
                 f"normal form: {d['normal_form']}"]
    elif t == "resolution":
        lines = [d["betti"], "ranks: " + " ".join(map(str, d["ranks"]))]
        if "final_twist" in d:
            lines.append(f"final twist: {d['final_twist']}; canonical twist: {d['canonical_twist']}")
    elif t == "report":
        lines = _render_report(d)
    elif t == "aggregate":
        lines = []
        for r in d["reports"]:
            lines += _render_report(r)
        lines.append(f"{d['entries']} entries: {d['status'].upper()}")
        lines += [f"  failed: {f}" for f in d["failed_checks"]]
    else:
        lines = [json.dumps(d, indent=2)]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=argparse.SUPPRESS,
                        help=f"field characteristic for constructed instances (default {DEFAULT_PRIME})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--truncation", type=int, default=argparse.SUPPRESS,
                        help=f"degree bound for series checks and truncated bases (default {DEFAULT_TRUNCATION})")
    common.add_argument("--time-budget", type=float, default=argparse.SUPPRESS,
                        help=f"seconds per Groebner basis before truncating (default {DEFAULT_TIME_BUDGET:g})")
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="canring", parents=[common],
                                description="Groebner bases, Hilbert series and stratum verifiers "
                                            "for weighted canonical rings.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = verb("gb", cmd_gb, "Groebner basis of an ideal file")
    sp.add_argument("file")
    sp.add_argument("--elim", type=int, default=0, metavar="K",
                    help="block order eliminating the first K variables")
    sp = verb("hilbert", cmd_hilbert, "Hilbert series of an ideal file")
    sp.add_argument("file")
    sp.add_argument("--upto", type=int)
    sp = verb("member", cmd_member, "ideal membership (exit 1 if not a member)")
    sp.add_argument("file")
    sp.add_argument("polynomial")
    sp = verb("eliminate", cmd_eliminate, "eliminate variables")
    sp.add_argument("file")
    sp.add_argument("--vars", required=True, help="comma separated variable names")
    sp = verb("intersect", cmd_intersect, "intersect two ideals in the same ring")
    sp.add_argument("file")
    sp.add_argument("other")
    sp = verb("saturate", cmd_saturate, "saturate by a polynomial")
    sp.add_argument("file")
    sp.add_argument("--by", required=True)
    sp = verb("resolve", cmd_resolve, "minimal graded free resolution")
    sp.add_argument("file")

    for name, fn, help in (("verify", cmd_verify, "run the checks for one stratum kind"),
                           ("family", cmd_family, "check the fibers of a degeneration family")):
        sp = verb(name, fn, help)
        sp.add_argument("kind")
        sp.add_argument("--resolve", action="store_true", default=None,
                        help="also compute the minimal resolution")
        sp.add_argument("--no-resolve", dest="resolve", action="store_false")
        sp.add_argument("--through-0010", action="store_true", help="type A: put (0:0:1:0) on X")
        sp.add_argument("--drop-z2", action="store_true", help="type A: degenerate instance without z^2")
        sp.add_argument("--pinched", action="store_true", help="components: the pinched forms")
        sp.add_argument("--no-y4", action="store_true", help="type B: remove y^4 from g8")
        sp.add_argument("--lambdas", help="comma separated nonzero lambda values")
    sp = verb("report", cmd_report, "run a config of verifications (default: every stratum)")
    sp.add_argument("config", nargs="?")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def parse_args(argv):
    args = build_parser().parse_args(argv)
    defaults = {
        "prime": _env("PRIME", int, DEFAULT_PRIME),
        "seed": _env("SEED", int, 0),
        "truncation": _env("TRUNCATION", int, DEFAULT_TRUNCATION),
        "time_budget": _env("TIME_BUDGET", float, DEFAULT_TIME_BUDGET),
        "format": _env("FORMAT", str, "json"),
        "verbose": False,
    }
    for k, v in defaults.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.format not in ("json", "text"):
        raise UsageError(f"unknown format {args.format!r}")
    if args.truncation < 2:
        raise UsageError("truncation must be at least 2")
    if args.time_budget <= 0:
        raise UsageError("time budget must be positive")
    return args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
    except UsageError as e:
        print(f"canring: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out, code = args.func(args)
    except ParseError as e:
        print(f"canring: parse error: {e}", file=sys.stderr)
        return 2
    except (UsageError, OSError) as e:
        print(f"canring: {e}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(render_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
