"""Ring-level invariants: dimension, depth, ci-defect and the CM/Gorenstein tests."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

from .errors import TheoremMismatch
from .ideal import GradedAlgebra, minimalize_generators
from .koszul import KoszulComplex
from .modules import PresentedModule, homology, minimal_free_resolution


def dimension(algebra):
    """Krull dimension from the lead-term ideal (largest independent variable set)."""

    def compute():
        n = algebra.nvars
        supports = [
            frozenset(i for i, a in enumerate(e) if a) for e in algebra.ideal.lead_exponents()
        ]
        for size in range(n, -1, -1):
            for U in combinations(range(n), size):
                U = set(U)
                if not any(s <= U for s in supports):
                    d = size
                    break
            else:
                continue
            break
        hs = algebra_hilbert_series(algebra)
        if hs.dimension() != d:
            raise TheoremMismatch(
                "dimension from lead terms disagrees with the Hilbert series pole order",
                {"lead_terms": d, "hilbert": hs.dimension(), "algebra": repr(algebra)},
            )
        return d

    return algebra.cached("dimension", compute)


def algebra_hilbert_series(algebra):
    return algebra.cached(
        "hilbert", lambda: PresentedModule.free(algebra, [0]).hilbert_series()
    )


def projective_dimension_over_polynomial_ring(algebra):
    """``pdim_S(S/J)``; finite by the syzygy theorem."""

    def compute():
        S = GradedAlgebra(algebra.ring)
        M = PresentedModule.cyclic(S, algebra.ideal.gens)
        res = minimal_free_resolution(M, max(algebra.nvars, 1))
        if not res.terminated:
            raise TheoremMismatch(
                "resolution over a polynomial ring did not terminate by the number of variables",
                {"algebra": repr(algebra), "betti": res.betti()},
            )
        return res.projective_dimension()

    return algebra.cached("pdim_S", compute)


def depth_auslander_buchsbaum(algebra):
    return algebra.nvars - projective_dimension_over_polynomial_ring(algebra)


def depth_koszul(algebra):
    """``n - max{i : H_i(x_1..x_n; A) != 0}``."""

    def compute():
        n = algebra.nvars
        if n == 0:
            return 0
        K = KoszulComplex(algebra, algebra.ring.gens())
        for i in range(n, 0, -1):
            if not K.homology_vanishes(i):
                return n - i
        return n

    return algebra.cached("depth_koszul", compute)


def depth(algebra):
    """Depth, computed by two independent methods that must agree."""
    a = depth_auslander_buchsbaum(algebra)
    b = depth_koszul(algebra)
    if a != b:
        raise TheoremMismatch(
            "Auslander-Buchsbaum depth disagrees with Koszul depth",
            {"auslander_buchsbaum": a, "koszul": b, "algebra": repr(algebra)},
        )
    return a


def minimal_presentation(algebra):
    """``(absorbed algebra, minimal defining generators)`` with ideal inside m^2."""

    def compute():
        absorbed, _ = algebra.absorb_linear()
        kept, _ = minimalize_generators(absorbed.ideal)
        return absorbed, kept

    return algebra.cached("minimal_presentation", compute)


def embedding_dimension(algebra):
    return minimal_presentation(algebra)[0].nvars


def mu_defining(algebra):
    return len(minimal_presentation(algebra)[1])


def ci_defect(algebra):
    """``d(A) = mu(I) - (embdim - dim)``."""
    return mu_defining(algebra) - (embedding_dimension(algebra) - dimension(algebra))


def is_complete_intersection(algebra):
    return ci_defect(algebra) == 0


def cm_type(algebra, depth_value=None):
    """``dim_k Ext^depth(k, A)`` from the dual of a resolution prefix of k."""

    def compute():
        t = depth(algebra) if depth_value is None else depth_value
        A = minimal_presentation(algebra)[0]
        k = PresentedModule.residue_field(A)
        res = minimal_free_resolution(k, t + 1, check_termination=False)
        degs = res.degrees + [[]] * (t + 2 - len(res.degrees))
        maps = res.maps + [[]] * (t + 1 - len(res.maps))

        def dual(i):
            # transpose of d_i : F_i -> F_{i-1}, as columns indexed by F_{i-1}
            cols = [dict() for _ in degs[i - 1]]
            for b, col in enumerate(maps[i - 1]):
                for (a, e), c in col.items():
                    cols[a][(b, e)] = c
            return cols

        neg = [[-d for d in ds] for ds in degs]
        if not neg[t]:
            return 0
        outgoing = dual(t + 1) if degs[t + 1] else None
        incoming = dual(t) if t >= 1 else ()
        H = homology(A, neg[t], outgoing, neg[t + 1], incoming)
        return H.mu()

    key = "cm_type" if depth_value is None else ("cm_type", depth_value)
    return algebra.cached(key, compute)


@dataclass(frozen=True)
class RingInvariants:
    dim: int
    depth: int
    embdim: int
    coprof: int
    mu_defining: int
    codim: int
    ci_defect: int
    regular: bool
    complete_intersection: bool
    cohen_macaulay: bool
    gorenstein: bool
    cm_type: int

    def as_dict(self):
        return asdict(self)


def ring_invariants(algebra):
    def compute():
        d = dimension(algebra)
        dp = depth(algebra)
        e = embedding_dimension(algebra)
        mu = mu_defining(algebra)
        defect = mu - (e - d)
        cm = dp == d
        typ = cm_type(algebra)
        inv = RingInvariants(
            dim=d,
            depth=dp,
            embdim=e,
            coprof=d - dp,
            mu_defining=mu,
            codim=e - d,
            ci_defect=defect,
            regular=defect == 0 and mu == 0,
            complete_intersection=defect == 0,
            cohen_macaulay=cm,
            gorenstein=cm and typ == 1,
            cm_type=typ,
        )
        _check_chain(inv, algebra)
        return inv

    return algebra.cached("invariants", compute)


def _check_chain(inv, algebra):
    problems = []
    if not 0 <= inv.depth <= inv.dim <= inv.embdim:
        problems.append("0 <= depth <= dim <= embdim")
    if inv.ci_defect < 0:
        problems.append("d(A) >= 0")
    if inv.regular and not inv.complete_intersection:
        problems.append("regular => CI")
    if inv.complete_intersection and not inv.gorenstein:
        problems.append("CI => Gorenstein")
    if inv.gorenstein and not inv.cohen_macaulay:
        problems.append("Gorenstein => CM")
    if problems:
        data = inv.as_dict()
        data["algebra"] = repr(algebra)
        raise TheoremMismatch("ring invariant chain violated: " + ", ".join(problems), data)
