"""Command line driver: classify, left-part, catalog, verify.

Reports are deterministic: a plain-text summary on stdout and, with
``--out``, a canonically ordered JSON document.  Exit codes: 0 for a
completed run (inconclusive entries allowed), 1 for a verification
failure, 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import modules as md
from .algebra import AlgebraError, build_algebra, ext_quiver, is_connected
from .catalog import SearchBudgetExceeded, enumerate_catalog
from . import classify as cls
from . import leftpart as lp
from .specfile import SpecParseError, parse_spec

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torsionpairs",
        description="Split torsion pair classification for bound quiver algebras over GF(p)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "left-part", "catalog", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("specfile", help="algebra spec file")
        sp.add_argument("--max-dim", type=int, default=4,
                        help="catalog dimension bound (default 4)")
        sp.add_argument("--assume-complete", action="store_true",
                        help="assert the catalog is complete at --max-dim")
        sp.add_argument("--end-cap", type=int, default=16,
                        help="hom/endomorphism enumeration cap exponent: cap = 2**N (default 16)")
        sp.add_argument("--pd-cap", type=int, default=8,
                        help="projective dimension cap (default 8)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized self-checks and fixtures")
        sp.add_argument("--out", default=None, help="write the JSON report here")
    return parser


def _plain(value):
    """Make a report JSON-safe: tuples to lists, numpy scalars to ints."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, frozenset):
        return sorted(_plain(v) for v in value)
    return value


def _sigma_str(sigma):
    return "{" + ",".join(sigma) + "}"


def load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    spec = parse_spec(text)
    return build_algebra(spec)


def algebra_summary(A):
    q = ext_quiver(A)
    return {
        "dim": A.dim,
        "field": A.p,
        "vertices": list(A.vertices),
        "quiver_arrows": [list(a) for a in q.arrows],
        "radical_dim": len(A.radical_indices),
        "connected": is_connected(A),
    }


def cmd_classify(A, args, warnings):
    cap = 1 << args.end_cap
    records = cls.classify_all_sigma(A, pd_cap=args.pd_cap, cap=cap)
    for rec in records:
        if rec["valid"]:
            rec["arrow_source_check"] = cls.arrow_source_check(A, rec["sigma"])
    valid = [rec["sigma"] for rec in records if rec["valid"]]
    lines = ["valid sigma subsets (%d): %s" % (len(valid), ", ".join(_sigma_str(s) for s in valid))]
    for rec in records:
        if rec["valid"] and rec["sigma"] and len(rec["sigma"]) < len(A.vertices):
            lines.append(
                "sigma %s: M dim vector %s over corner; injective=%s; hereditary injective=%s; gl.dim(C)=%s"
                % (_sigma_str(rec["sigma"]), rec["m_dim_vector"], rec["m_injective"],
                   rec["m_hereditary_injective"], rec["gldim_corner"])
            )
    return {"records": records, "valid_sigmas": valid, "scope": "exact"}, lines, False


def cmd_catalog(A, args, warnings):
    cap = 1 << args.end_cap
    cat = enumerate_catalog(A, args.max_dim, assume_complete=args.assume_complete, cap=cap)
    if not cat.complete:
        warnings.append(f"catalog truncated at max_dim={args.max_dim}; completeness not asserted")
    results = {
        "count": len(cat),
        "complete": cat.complete,
        "entries": [
            {"label": cat.labels[i], "dim": e.dim, "dim_vector": e.dim_vector}
            for i, e in enumerate(cat.entries)
        ],
        "hom_dims": cat.hom_dims.tolist(),
    }
    lines = ["catalog entries (%d%s): %s"
             % (len(cat), "" if cat.complete else f", truncated at {args.max_dim}",
                ", ".join(cat.labels))]
    return results, lines, False


def cmd_left_part(A, args, warnings):
    cap = 1 << args.end_cap
    cat = enumerate_catalog(A, args.max_dim, assume_complete=args.assume_complete, cap=cap)
    report = lp.left_part(cat, cap, args.pd_cap)
    support = lp.left_support(A, report)
    if not cat.complete:
        warnings.append(
            f"catalog truncated at max_dim={args.max_dim}: the left part is an over-approximation candidate"
        )
    results = {
        "left_part": report["labels"],
        "pd_values": report["pd_values"],
        "supporting_vertices": report["supporting_vertices"],
        "left_support_quiver": [] if support is None else [list(a) for a in ext_quiver(support).arrows],
        "abelian_exact": report["abelian_exact"],
        "witness": report["abelian_exact_witness"],
        "scope": "exact" if cat.complete else f"relative to truncation at max_dim={args.max_dim}",
    }
    lines = [
        "L_A = {%s}" % ", ".join(report["labels"]),
        "supporting vertices: %s" % (_sigma_str(report["supporting_vertices"])),
        "abelian exact: %s" % report["abelian_exact"],
    ]
    if report["abelian_exact_witness"]:
        lines.append("witness: %s" % json.dumps(_plain(report["abelian_exact_witness"]), sort_keys=True))
    return results, lines, False


def cmd_verify(A, args, warnings):
    cap = 1 << args.end_cap
    cat = enumerate_catalog(A, args.max_dim, assume_complete=args.assume_complete, cap=cap)
    scope = "exact" if cat.complete else f"relative to truncation at max_dim={args.max_dim}"
    if not cat.complete:
        warnings.append(f"catalog-based verdicts are relative to truncation at max_dim={args.max_dim}")
    failures = []
    inconclusive = []
    results = {"scope": scope}

    records = cls.classify_all_sigma(A, pd_cap=args.pd_cap, cap=cap)
    valid_sigmas = [rec["sigma"] for rec in records if rec["valid"]]
    results["valid_sigmas"] = valid_sigmas

    # oracle agreement on the predecessor closures of singletons
    closures = []
    seen = set()
    for i in range(len(cat)):
        C = frozenset(j for j in range(len(cat)) if cat.reach[j, i])
        if C not in seen:
            seen.add(C)
            closures.append(C)
    lemma_reports = []
    prop_reports = []
    for C in sorted(closures, key=lambda c: (len(c), sorted(c))):
        lem = cls.lemma21_check(cat, C)
        if not lem["agree"]:
            failures.append("lemma21 clauses disagree on C=%s" % sorted(cat.labels[i] for i in C))
        lemma_reports.append({"C": sorted(cat.labels[i] for i in C), **lem})
        p23 = cls.prop23_conditions(cat, C, cap, args.pd_cap)
        agree = cls.conditions_agree(p23["verdicts"])
        if not agree:
            failures.append("prop23 conditions disagree on C=%s" % sorted(cat.labels[i] for i in C))
        for cond, verdict in p23["verdicts"].items():
            if verdict == "inconclusive":
                inconclusive.append("prop23 %s on C=%s" % (cond, sorted(cat.labels[i] for i in C)))
        prop_reports.append({"C": sorted(cat.labels[i] for i in C),
                             "verdicts": p23["verdicts"], "agree": agree})
    results["lemma21"] = lemma_reports
    results["prop23"] = prop_reports

    crosscheck = cls.theorem_crosscheck(A, cat, cap, args.pd_cap)
    results["crosscheck"] = crosscheck
    if not crosscheck["ok"]:
        failures.append("theorem crosscheck failed")

    split_reports = []
    gldim_reports = []
    arrow_reports = []
    for sigma in valid_sigmas:
        sp = cls.splitness_check(A, sigma, cat)
        split_reports.append(sp)
        if not sp["ok"]:
            failures.append("splitness failed at sigma=%s" % _sigma_str(sigma))
        gl = cls.gldim_equality_check(A, sigma, cat, args.pd_cap)
        gldim_reports.append(gl)
        if gl["verdict"] == "UNEQUAL":
            failures.append("gl.dim equality failed at sigma=%s" % _sigma_str(sigma))
        elif gl["verdict"] == "inconclusive":
            inconclusive.append("gl.dim at sigma=%s" % _sigma_str(sigma))
        asrc = cls.arrow_source_check(A, sigma)
        arrow_reports.append(asrc)
        if not asrc["ok"]:
            failures.append("arrow source check failed at sigma=%s" % _sigma_str(sigma))
    results["splitness"] = split_reports
    results["gldim"] = gldim_reports
    results["arrow_source"] = arrow_reports

    c32 = lp.cor32_checks(A, cat, cap, args.pd_cap)
    results["cor32"] = c32
    if not c32["ok"]:
        failures.append("left-part consequence checks failed")

    if lp.detect_local_extension(A) is not None:
        p35 = lp.prop35_check(A, cat, cap, args.pd_cap)
        results["prop35"] = p35
        if not p35["agree"]:
            failures.append("local extension three-way equivalence failed")
    else:
        results["prop35"] = "not applicable (no local extension shape)"

    results["failures"] = failures
    results["inconclusive"] = inconclusive
    results["overall"] = "FAIL" if failures else "PASS"
    lines = ["verify: %s (%d failures, %d inconclusive)"
             % (results["overall"], len(failures), len(inconclusive))]
    lines += ["  FAIL: " + f for f in failures]
    lines += ["  inconclusive: " + s for s in inconclusive]
    return results, lines, bool(failures)


COMMANDS = {
    "classify": cmd_classify,
    "left-part": cmd_left_part,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings: list[str] = []
    try:
        A = load_algebra(args.specfile)
    except (OSError, SpecParseError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if not is_connected(A):
        warnings.append("the algebra is not connected; verdicts remain well-defined")
    try:
        results, lines, failed = COMMANDS[args.command](A, args, warnings)
    except (SearchBudgetExceeded, md.EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    doc = {
        "command": args.command,
        "config": {
            "specfile": args.specfile,
            "max_dim": args.max_dim,
            "assume_complete": bool(args.assume_complete),
            "end_cap": args.end_cap,
            "pd_cap": args.pd_cap,
            "seed": args.seed,
            "field": A.p,
        },
        "algebra": algebra_summary(A),
        "results": results,
        "warnings": warnings,
    }
    doc = _plain(doc)
    for w in warnings:
        print("warning: " + w)
    print("algebra: dim %d over GF(%d), %d vertices%s"
          % (A.dim, A.p, len(A.vertices), "" if is_connected(A) else " (disconnected)"))
    for line in lines:
        print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return EXIT_CHECK_FAILURE if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
