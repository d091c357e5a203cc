"""Acceptance suite: one pass/fail line per criterion.

Run with pytest (the lines are printed in the terminal summary) or directly
with ``python tests/test_acceptance.py``.
"""

import json
import os
import random
import subprocess
import sys
import time

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, HERE)

from cihom import corpus  # noqa: E402
from cihom.deviations import deviation_profile  # noqa: E402
from cihom.field import QQ  # noqa: E402
from cihom.ideal import GradedAlgebra, HomogeneousIdeal  # noqa: E402
from cihom.invariants import depth_auslander_buchsbaum, depth_koszul, ring_invariants  # noqa: E402
from cihom.maps import YES  # noqa: E402
from cihom.modules import PresentedModule, minimal_free_resolution  # noqa: E402
from cihom.poly import PolyRing  # noqa: E402

RESULTS = {}

GOLDEN = {
    "dual_to_k": {"is_ci": False, "is_qci": True, "is_mci": True, "is_fci": "yes",
                  "is_rci": "yes", "d_f": 0},
    "square_zero_to_k": {"is_qci": False, "d_f": 1},
    "node_mod_x": {"is_qci": True, "is_mci": True, "d_f": 0, "h2": 1},
}


def record(n, title, ok, detail):
    RESULTS[n] = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    return ok


def maps():
    return [e["id"] for e in corpus.manifest()["maps"]]


def rings():
    return [e["id"] for e in corpus.manifest()["rings"]]


def family(name):
    start = time.perf_counter()
    s = corpus.run_all(name + "/")
    return s, time.perf_counter() - start


def criterion_1():
    s, secs = family("implication-chain")
    ok = s.ok and s.total >= 10 and secs < 60
    return record(1, "implication chain", ok, f"{s.passed}/{s.total} maps, {secs:.1f} s")


def criterion_2():
    s, _ = family("d-invariance")
    return record(2, "d(f) padded invariance", s.ok and s.total >= 10, f"{s.passed}/{s.total} maps")


def criterion_3():
    s, _ = family("two-of-three")
    ci_pairs = 0
    bad = []
    for m in maps():
        c = corpus.classification(m)
        if c.source_ci and c.target_ci:
            ci_pairs += 1
            if not (c.is_mci and c.is_qci and c.is_rci == YES):
                bad.append(m)
        if c.is_mci and c.source_ci != c.target_ci:
            bad.append(m)
    ok = s.ok and not bad and ci_pairs >= 5
    return record(3, "two-of-three", ok, f"{ci_pairs} CI-to-CI maps, violations {bad or 'none'}")


def criterion_4():
    checked, bad = 0, []
    for m in maps():
        c = corpus.classification(m)
        if not c.is_qci:
            continue
        checked += 1
        lhs = c.h2 - c.h1 + c.dim_R - c.dim_B
        if lhs != c.dim_R - c.dim_B - c.grade or c.depth_R - c.depth_B != c.grade:
            bad.append(m)
    return record(4, "grade and depth cross-checks", checked > 0 and not bad,
                  f"{checked} qci maps, violations {bad or 'none'}")


def criterion_5():
    checked, bad = 0, []
    for m in maps():
        c = corpus.classification(m)
        if not c.is_mci:
            continue
        f = corpus.graded_map(m)
        a, b = ring_invariants(f.source), ring_invariants(f.target)
        checked += 1
        if (a.coprof, a.gorenstein, a.cohen_macaulay) != (b.coprof, b.gorenstein, b.cohen_macaulay):
            bad.append(m)
    return record(5, "mci transfer", checked > 0 and not bad,
                  f"{checked} mci maps, violations {bad or 'none'}")


def criterion_6():
    s, _ = family("koszul-independence")
    return record(6, "Koszul generating-set independence", s.ok and s.total >= 6,
                  f"{s.passed}/{s.total} ideals, +1 and +2 redundant generators")


def criterion_7():
    total, non_ci, bad = 0, 0, []
    for r in rings():
        A = corpus.ring(r)
        if A.field != QQ:
            continue
        total += 1
        inv = ring_invariants(A)
        p = deviation_profile(A, 4)
        non_ci += not inv.complete_intersection
        if not ((inv.ci_defect == 0) == p.ci_by_eps3 == p.ci_by_eps4):
            bad.append(r)
    ok = total >= 10 and non_ci >= 3 and not bad
    return record(7, "CI criterion equivalence", ok,
                  f"{total} rings over Q ({non_ci} non-CI), violations {bad or 'none'}")


def criterion_8():
    bad = [r for r in rings()
           if depth_auslander_buchsbaum(corpus.ring(r)) != depth_koszul(corpus.ring(r))]
    return record(8, "depth double computation", not bad,
                  f"{len(rings())} rings, violations {bad or 'none'}")


def criterion_9():
    bad = []
    for name, want in GOLDEN.items():
        proc = subprocess.run(
            [sys.executable, "-m", "cihom.cli", "classify",
             str(corpus.data_dir() / "maps" / (name + ".map")), "--json"],
            capture_output=True, text=True, check=False,
        )
        payload = proc.stdout
        with open(os.path.join(HERE, "golden", name + ".json")) as fh:
            frozen = fh.read()
        data = json.loads(frozen)
        if payload != frozen or any(data[k] != v for k, v in want.items()):
            bad.append(name)
    return record(9, "golden verdicts (bit-exact JSON)", not bad,
                  f"{len(GOLDEN)} maps, mismatches {bad or 'none'}")


def random_monomial_ideals(count=50, seed=20261016):
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        n = rnd.randint(1, 3)
        k = rnd.randint(1, 4)
        gens = set()
        while len(gens) < k:
            e = tuple(rnd.randint(0, 4) for _ in range(n))
            if 0 < sum(e) <= 4:
                gens.add(e)
        out.append((n, sorted(gens)))
    return out


def criterion_10():
    names = ("x", "y", "z")
    resolutions, violations = 0, []

    def check(tag, res):
        nonlocal resolutions
        resolutions += 1
        if not (res.is_complex() and res.is_minimal() and res.euler_check()):
            violations.append(tag)

    def gb_stable(tag, ring, gens, rnd):
        shuffled = list(gens)
        rnd.shuffle(shuffled)
        if HomogeneousIdeal(ring, gens).groebner_basis() != HomogeneousIdeal(ring, shuffled).groebner_basis():
            violations.append(tag + " gb")

    rnd = random.Random(7)
    for r in rings():
        A = corpus.ring(r)
        check(r + " k", minimal_free_resolution(PresentedModule.residue_field(A), 4))
        S = GradedAlgebra(A.ring)
        check(r + " S/J", minimal_free_resolution(PresentedModule.cyclic(S, A.ideal.gens), A.nvars + 1))
        gb_stable(r, A.ring, list(A.ideal.gens), rnd)
    for i, (n, gens) in enumerate(random_monomial_ideals()):
        R = PolyRing(QQ, names[:n])
        polys = [R.monomial(g) for g in gens]
        S = GradedAlgebra(R)
        res = minimal_free_resolution(PresentedModule.cyclic(S, polys), n + 1)
        if not res.terminated:
            violations.append(f"random {i} not terminated")
        check(f"random {i}", res)
        gb_stable(f"random {i}", R, polys, rnd)
    return record(10, "engine sanity", not violations,
                  f"{resolutions} resolutions, 50 random ideals, violations {violations or 'none'}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(crit):
    n = CRITERIA.index(crit) + 1
    try:
        ok = crit()
    except Exception as exc:  # a crash is a failure of that criterion
        record(n, crit.__name__, False, f"{type(exc).__name__}: {exc}")
        raise
    print(RESULTS[n])
    assert ok, RESULTS[n]


def main():
    failed = 0
    for n, crit in enumerate(CRITERIA, start=1):
        try:
            ok = crit()
        except Exception as exc:
            ok = record(n, crit.__name__, False, f"{type(exc).__name__}: {exc}")
        failed += not ok
        print(RESULTS[n], flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
