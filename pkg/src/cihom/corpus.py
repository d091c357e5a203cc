"""Built-in corpus of rings and maps, and the theorem-check harness.

Entries live in ``corpus_data/manifest.json`` next to plain ring and map
files.  Each check is identified as ``family/entry`` and only uses the
public classifier and invariant functions.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .deviations import deviation_profile
from .errors import CIHomError
from .invariants import depth_auslander_buchsbaum, depth_koszul, ring_invariants
from .koszul import koszul_homology
from .maps import YES, NO, classify
from .parsing import load_map, load_ring, parse_polynomial

FAMILIES = (
    "implication-chain",
    "d-invariance",
    "two-of-three",
    "transfer",
    "grade-depth",
    "koszul-independence",
    "deviations",
    "depth",
    "surjection-shortcut",
    "composition",
    "golden",
)


def data_dir():
    return resources.files("cihom") / "corpus_data"


@lru_cache(maxsize=1)
def manifest():
    with (data_dir() / "manifest.json").open(encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def ring(entry_id):
    e = _by_id("rings")[entry_id]
    return load_ring(str(data_dir() / e["file"])).algebra()


@lru_cache(maxsize=None)
def graded_map(entry_id):
    e = _by_id("maps")[entry_id]
    return load_map(str(data_dir() / e["file"])).build()


@lru_cache(maxsize=None)
def classification(entry_id, padded=False, general=False):
    return classify(graded_map(entry_id), padded=padded, general=general)


def _by_id(section):
    return {e["id"]: e for e in manifest()[section]}


def _entries(section, family):
    return [e for e in manifest()[section] if family in e.get("families", ())]


def list_checks(filter=None):
    ids = []
    sections = {
        "implication-chain": "maps",
        "d-invariance": "maps",
        "two-of-three": "maps",
        "transfer": "maps",
        "grade-depth": "maps",
        "surjection-shortcut": "maps",
        "koszul-independence": "ideals",
        "deviations": "rings",
        "depth": "rings",
        "composition": "compositions",
    }
    for fam in FAMILIES:
        if fam == "golden":
            ents = _entries("rings", fam) + _entries("maps", fam)
        else:
            ents = _entries(sections[fam], fam)
        ids.extend(f"{fam}/{e['id']}" for e in ents)
    if filter:
        ids = [i for i in ids if filter in i]
    return ids


@dataclass
class CheckResult:
    check_id: str
    passed: bool
    detail: str = ""


@dataclass
class Summary:
    results: list

    @property
    def total(self):
        return len(self.results)

    @property
    def passed(self):
        return sum(r.passed for r in self.results)

    @property
    def empty(self):
        return not self.results

    @property
    def ok(self):
        return bool(self.results) and self.passed == self.total


def run_check(check_id):
    fam, entry = check_id.split("/", 1)
    try:
        ok, detail = _CHECKS[fam](entry)
    except CIHomError as exc:
        return CheckResult(check_id, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(check_id, bool(ok), detail)


def run_all(filter=None, parallel=False):
    ids = list_checks(filter)
    if parallel and len(ids) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(run_check, ids))
    else:
        results = [run_check(i) for i in ids]
    return Summary(results)


# -- individual families ----------------------------------------------------

def check_implication_chain(entry):
    c = classification(entry)
    ok = (
        (not c.is_ci or c.is_mci)
        and (not c.is_mci or c.is_qci)
        and (c.is_rci != YES or c.is_mci)
        and (c.is_fci != NO or c.is_rci == NO)
    )
    return ok, f"ci={c.is_ci} mci={c.is_mci} qci={c.is_qci} fci={c.is_fci} rci={c.is_rci}"


def check_d_invariance(entry):
    a = classification(entry).d_f
    b = classification(entry, padded=True).d_f
    return a == b, f"d(f)={a} padded={b}"


def check_two_of_three(entry):
    c = classification(entry)
    ok = True
    if c.source_ci and c.target_ci:
        ok = c.is_mci and c.is_qci and c.is_rci == YES
    if c.is_mci and c.source_ci != c.target_ci:
        ok = False
    return ok, f"CI(A)={c.source_ci} CI(B)={c.target_ci} mci={c.is_mci} rci={c.is_rci}"


def check_transfer(entry):
    f = graded_map(entry)
    c = classification(entry)
    if not c.is_mci:
        return False, "entry is not mci; transfer family needs mci maps"
    a = ring_invariants(f.source)
    b = ring_invariants(f.target)
    ok = a.coprof == b.coprof and a.gorenstein == b.gorenstein and a.cohen_macaulay == b.cohen_macaulay
    return ok, f"coprof {a.coprof}/{b.coprof} gor {a.gorenstein}/{b.gorenstein} cm {a.cohen_macaulay}/{b.cohen_macaulay}"


def check_grade_depth(entry):
    c = classification(entry)
    if not c.is_qci:
        return False, "entry is not qci"
    ok = (
        c.h2 - c.h1 + c.dim_R - c.dim_B == c.dim_R - c.dim_B - c.grade
        and c.depth_R - c.depth_B == c.grade
    )
    return ok, f"d={c.d_f} via grade={c.d_f_via_grade} depth {c.depth_R}-{c.depth_B} grade {c.grade}"


def check_surjection_shortcut(entry):
    a = classification(entry)
    b = classification(entry, padded=True, general=True)
    keys = ("is_ci", "is_qci", "is_mci", "is_fci", "is_rci", "d_f")
    va = [getattr(a, k) for k in keys]
    vb = [getattr(b, k) for k in keys]
    return va == vb, f"trivial {va} general {vb}"


def check_koszul_independence(entry):
    e = _by_id("ideals")[entry]
    A = ring(e["ring"])
    gens = [parse_polynomial(g, A.ring) for g in e["generators"]]
    redundant = [parse_polynomial(g, A.ring) for g in e["redundant"]]
    base = koszul_homology(A, gens)
    details = []
    ok = True
    for k in (1, 2):
        s = koszul_homology(A, gens + redundant[:k])
        want = list(base.mu)
        for _ in range(k):
            want = [(want[i] if i < len(want) else 0) + (want[i - 1] if i else 0)
                    for i in range(len(want) + 1)]
        ok = ok and s.mu == want and s.free[1] == base.free[1]
        details.append(f"+{k}: mu={s.mu}")
    return ok, f"mu={base.mu} " + " ".join(details)


def check_deviations(entry):
    A = ring(entry)
    p = deviation_profile(A, 4)
    inv = ring_invariants(A)
    ok = p.deviations[0] == inv.embdim and p.deviations[1] == inv.mu_defining
    ok = ok and (inv.complete_intersection == p.ci_by_eps3 == p.ci_by_eps4)
    return ok, f"betti={p.betti} eps={p.deviations} d(A)={inv.ci_defect}"


def check_depth(entry):
    A = ring(entry)
    a = depth_auslander_buchsbaum(A)
    b = depth_koszul(A)
    return a == b, f"Auslander-Buchsbaum {a}, Koszul {b}"


def check_composition(entry):
    e = _by_id("compositions")[entry]
    f = graded_map(e["first"])
    g = graded_map(e["second"])
    cf = classification(e["first"])
    cg = classification(e["second"])
    if not (cf.is_qci and cf.is_fci == YES and cg.is_ci):
        return False, "composition entries need f qci with fci yes and g ci"
    h = classify(f.compose(g))
    return h.is_fci != NO, f"g o f: fci={h.is_fci} qci={h.is_qci}"


def check_golden(entry):
    rings = _by_id("rings")
    if entry in rings:
        expected = rings[entry]["expected"]
        A = ring(entry)
        inv = ring_invariants(A).as_dict()
        got = {}
        for k in expected:
            if k == "betti":
                got[k] = deviation_profile(A, 4).betti
            elif k == "deviations":
                got[k] = deviation_profile(A, 4).deviations
            else:
                got[k] = inv[k]
    else:
        expected = _by_id("maps")[entry]["expected"]
        c = classification(entry).as_dict()
        got = {k: c[k] for k in expected}
    bad = {k: (expected[k], got[k]) for k in expected if expected[k] != got[k]}
    return not bad, "ok" if not bad else f"expected/got {bad}"


_CHECKS = {
    "implication-chain": check_implication_chain,
    "d-invariance": check_d_invariance,
    "two-of-three": check_two_of_three,
    "transfer": check_transfer,
    "grade-depth": check_grade_depth,
    "surjection-shortcut": check_surjection_shortcut,
    "koszul-independence": check_koszul_independence,
    "deviations": check_deviations,
    "depth": check_depth,
    "composition": check_composition,
    "golden": check_golden,
}
