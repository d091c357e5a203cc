"""Command line interface: ``cihom invariants | classify | corpus``."""

from __future__ import annotations

import argparse
import json
import sys

from .deviations import MAX_CUTOFF, MIN_CUTOFF, deviation_profile
from .errors import (
    IllDefinedMapError,
    NotHomogeneousError,
    ParseError,
    ResourceLimitError,
    RingMismatchError,
    TheoremMismatch,
)
from .invariants import ring_invariants
from .maps import classify
from .parsing import load_map, load_ring, print_ring

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_THEOREM = 4

INVARIANT_KEYS = (
    "dim", "depth", "embdim", "coprof", "mu", "ci_defect", "regular",
    "complete_intersection", "cohen_macaulay", "gorenstein", "cm_type",
    "betti", "deviations",
)


def invariants_payload(algebra, deviations=None):
    inv = ring_invariants(algebra)
    out = {
        "dim": inv.dim,
        "depth": inv.depth,
        "embdim": inv.embdim,
        "coprof": inv.coprof,
        "mu": inv.mu_defining,
        "ci_defect": inv.ci_defect,
        "regular": inv.regular,
        "complete_intersection": inv.complete_intersection,
        "cohen_macaulay": inv.cohen_macaulay,
        "gorenstein": inv.gorenstein,
        "cm_type": inv.cm_type,
        "betti": None,
        "deviations": None,
    }
    profile = None
    if deviations is not None:
        profile = deviation_profile(algebra, deviations)
        out["betti"] = list(profile.betti)
        out["deviations"] = list(profile.deviations)
    return out, profile


def _ring_label(algebra):
    text = print_ring(algebra).strip().splitlines()
    return " | ".join(text)


def cmd_invariants(args):
    rf = load_ring(args.file)
    A = rf.algebra()
    payload, profile = invariants_payload(A, args.deviations)
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"ring: {_ring_label(A)}")
    for k in INVARIANT_KEYS[:-2]:
        v = payload[k]
        note = "  (only meaningful when Cohen-Macaulay)" if k == "cm_type" else ""
        print(f"  {k:<22}{_fmt(v)}{note}")
    if profile is not None:
        print(f"  {'betti':<22}{profile.betti}")
        print(f"  {'deviations':<22}{profile.deviations}")
        print(f"  {'ci by eps_3':<22}{_fmt(profile.ci_by_eps3)}")
        print(f"  {'ci by eps_4':<22}{_fmt(profile.ci_by_eps4)}")
        if profile.label:
            print(f"  note: {profile.label}")
    return EXIT_OK


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def cmd_classify(args):
    mf = load_map(args.file)
    f = mf.build()
    c = classify(f)
    payload = c.as_dict()
    if args.json:
        if args.explain:
            payload = dict(payload)
            payload["explain"] = _explain_data(c)
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"map: {args.file} ({c.kind})")
    for k in ("h1", "h2", "dim_R", "dim_B", "depth_R", "depth_B", "grade", "d_f"):
        print(f"  {k:<16}{payload[k]}")
    print(f"  {'ci':<16}{_fmt(c.is_ci)}")
    print(f"  {'qci':<16}{_fmt(c.is_qci)}")
    print(f"  {'mci':<16}{_fmt(c.is_mci)}")
    print(f"  {'fci':<16}{c.is_fci}")
    print(f"  {'rci':<16}{c.is_rci}")
    if c.is_qci and not c.is_mci:
        print("  NOTE: qci but not mci (see the open question on qci versus mci)")
    print("  transfer:")
    for name, t in c.transfer.items():
        state = "n/a" if not t["applicable"] else ("holds" if t["holds"] else "FAILS")
        print(f"    {name:<16}{state:<7}{t['values']}")
    if args.explain:
        e = _explain_data(c)
        print("  explain:")
        print(f"    koszul mu(H_i)    {e['koszul_mu']}")
        h1 = "0" if e["koszul_mu"][1:2] in ([0], []) else f"mu {e['koszul_mu'][1]}"
        print(f"    H_1 Koszul        {h1}, free: {_fmt(c.koszul_h1_free)}, rank: {c.koszul_h1_rank}")
        print(f"    exterior iso      {e['exterior'] or 'vacuous'}")
        print(f"    d(f) via h        {c.d_f}")
        print(f"    d(f) via grade    {c.d_f_via_grade}")
        print(f"    fci certificate   {e['fci_reason']}")
        print(f"    rci certificate   {e['rci_reason']}")
    return EXIT_OK


def _explain_data(c):
    return {
        "koszul_mu": list(c.koszul_mu),
        "exterior": {str(k): v for k, v in c.exterior.items()},
        "fci_reason": c.fci_reason,
        "rci_reason": c.rci_reason,
    }


def cmd_corpus(args):
    from .corpus import list_checks, run_all

    if args.action == "list":
        checks = list_checks(args.filter)
        if not checks:
            print(f"no checks matched filter {args.filter!r}", file=sys.stderr)
            return EXIT_FAIL
        for cid in checks:
            print(cid)
        return EXIT_OK
    summary = run_all(args.filter, parallel=args.parallel)
    if summary.empty:
        print(f"no checks matched filter {args.filter!r}", file=sys.stderr)
        return EXIT_FAIL
    for r in summary.results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check_id}  {r.detail}")
    print(f"{summary.passed}/{summary.total} checks passed")
    return EXIT_OK if summary.ok else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(
        prog="cihom",
        description="Complete-intersection classes of graded ring homomorphisms.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("invariants", help="ring invariants of a ring file")
    pi.add_argument("file")
    pi.add_argument(
        "--deviations", type=int, metavar="N",
        help=f"also compute Betti numbers of k and deviations (N in {MIN_CUTOFF}..{MAX_CUTOFF})",
    )
    pi.add_argument("--json", action="store_true")
    pi.set_defaults(func=cmd_invariants)

    pc = sub.add_parser("classify", help="classify the homomorphism of a map file")
    pc.add_argument("file")
    pc.add_argument("--json", action="store_true")
    pc.add_argument("--explain", action="store_true")
    pc.set_defaults(func=cmd_classify)

    pk = sub.add_parser("corpus", help="run or list the built-in theorem checks")
    pk.add_argument("action", choices=["run", "list"])
    pk.add_argument("--filter", default=None, help="substring of check ids or a family name")
    pk.add_argument("--parallel", action="store_true")
    pk.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, IllDefinedMapError, NotHomogeneousError, RingMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except TheoremMismatch as exc:
        print(f"theorem mismatch: {exc}", file=sys.stderr)
        print(exc.dump(), file=sys.stderr)
        return EXIT_THEOREM
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
