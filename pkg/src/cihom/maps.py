"""Graded homomorphisms, regular factorizations and their classification."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .errors import IllDefinedMapError, RingMismatchError, TheoremMismatch
from .ideal import GradedAlgebra, HomogeneousIdeal, minimalize_generators
from .invariants import depth, dimension, ring_invariants
from .koszul import KoszulComplex, KoszulHomologySummary
from .modules import PresentedModule, minimal_free_resolution
from .poly import Polynomial

EXPLICIT_QUOTIENT = "explicit-quotient"
GENERAL = "general"


class GradedMap:
    """Graded local homomorphism ``f: A -> B``.

    ``images[i]`` is the image of the i-th variable of A, a homogeneous
    element of B's polynomial ring whose degree is that variable's weight
    (zero is allowed).  Use :meth:`quotient` for the explicit-quotient kind.
    """

    def __init__(self, source, target, images, kind=GENERAL, quotient_by=()):
        if not isinstance(source, GradedAlgebra) or not isinstance(target, GradedAlgebra):
            raise TypeError("source and target must be GradedAlgebra instances")
        if source.field != target.field:
            raise RingMismatchError(
                f"source field {source.field.name} differs from target field {target.field.name}"
            )
        images = list(images)
        if len(images) != source.nvars:
            raise IllDefinedMapError(
                f"expected {source.nvars} images, got {len(images)}"
            )
        T = target.ring
        for name, w, img in zip(source.ring.names, source.ring.weights, images):
            if not isinstance(img, Polynomial) or img.ring != T:
                raise IllDefinedMapError(f"image of {name} does not live in the target ring")
            if img.is_zero():
                continue
            if not img.is_homogeneous() or img.degree() != w:
                raise IllDefinedMapError(
                    f"image of {name} must be homogeneous of degree {w}, got {img}"
                )
        for g in source.ideal.gens:
            if not target.reduce(g.substitute(images, T)).is_zero():
                raise IllDefinedMapError(
                    f"relation {g} of the source does not map to zero in the target"
                )
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.kind = kind
        self.quotient_by = tuple(quotient_by)

    @classmethod
    def quotient(cls, source, elements, target=None):
        """The surjection ``A -> A/(elements)``."""
        S = source.ring
        elements = [e for e in elements if not e.is_zero()]
        for e in elements:
            if e.ring != S:
                raise IllDefinedMapError(f"{e} does not live in the source ring")
            if not e.is_homogeneous() or e.degree() <= 0:
                raise IllDefinedMapError(
                    f"quotient element {e} must be homogeneous of positive degree"
                )
        B = source.quotient(elements)
        if target is not None:
            if target.ring != S or not target.same_quotient(B):
                raise IllDefinedMapError(
                    "target ring is not the quotient of the source by the given elements"
                )
            B = target
        return cls(source, B, S.gens(), kind=EXPLICIT_QUOTIENT, quotient_by=elements)

    def __repr__(self):
        return f"GradedMap({self.source!r} -> {self.target!r}, kind={self.kind})"

    def compose(self, other):
        """``other o self`` for ``other: B -> C``."""
        if other.source != self.target and not other.source.same_quotient(self.target):
            raise RingMismatchError("maps are not composable")
        C = other.target
        imgs = [C.reduce(f.substitute(other.images, C.ring)) for f in self.images]
        return GradedMap(self.source, C, imgs)

    def as_general(self):
        """The same map, forgetting that it is an explicit quotient."""
        return GradedMap(self.source, self.target, self.images)


@dataclass
class FactorizationRecord:
    """Graded regular factorization ``A -> R -> B``.

    ``R`` is ``A`` with ``extra`` polynomial variables adjoined; ``kernel``
    lists minimal generators of ``ker(R -> B)``.
    """

    R: GradedAlgebra
    target: GradedAlgebra
    extra: int
    kernel: list
    kind: str
    padded: bool = False
    _summary: object = field(default=None, repr=False)

    @property
    def h1(self):
        return len(self.kernel)

    def koszul(self):
        if self._summary is None:
            if self.kernel:
                self._summary = KoszulHomologySummary(KoszulComplex(self.R, self.kernel))
            else:
                self._summary = _EmptySummary()
        return self._summary

    @property
    def h2(self):
        s = self.koszul()
        return s.mu[1] if s.length >= 1 else 0


class _EmptySummary:
    """Koszul data of the zero ideal."""

    length = 0
    mu = [1]
    free = [True]
    ranks = [1]
    grade = 0
    exterior = {}
    qci_pattern = True
    h1_free = True
    h1_rank = 0


def _pad(R, kernel):
    ring = R.ring
    z = ring.fresh_name("z")
    S2 = ring.extend([z], [1])
    R2 = GradedAlgebra(S2, [g.to_ring(S2) for g in R.ideal.gens])
    gens = [g.to_ring(S2) for g in kernel] + [S2.var(z)]
    return R2, gens


def regular_factorization(f, padded=False, general=False):
    """Factor ``f`` as ``A -> R -> B`` with ``R`` a polynomial extension of ``A``.

    Explicit quotients use ``R = A`` unless ``general`` is set.  With
    ``padded`` one more variable ``z`` (weight 1, sent to 0) is adjoined.
    """
    A, B = f.source, f.target
    if f.kind == EXPLICIT_QUOTIENT and not general:
        R = A
        extra = 0
        kernel, _ = minimalize_generators(HomogeneousIdeal(A.ring, f.quotient_by), base=A.ideal)
        kind = EXPLICIT_QUOTIENT
    else:
        SA, SB = A.ring, B.ring
        taken = set(SA.names)
        ynames = []
        for n in SB.names:
            y = SA.fresh_name(n, taken)
            taken.add(y)
            ynames.append(y)
        SR = SA.extend(ynames, SB.weights)
        n = SA.nvars
        ymap = [n + j for j in range(SB.nvars)]
        R = GradedAlgebra(SR, [g.to_ring(SR) for g in A.ideal.gens])
        graph = [g.to_ring(SR, ymap) for g in B.ideal.gens]
        for i, img in enumerate(f.images):
            graph.append(SR.var(i) - img.to_ring(SR, ymap))
        kernel, _ = minimalize_generators(HomogeneousIdeal(SR, graph), base=R.ideal)
        extra = SB.nvars
        kind = GENERAL
    if padded:
        R, kernel = _pad(R, kernel)
        extra += 1
    return FactorizationRecord(R, B, extra, kernel, kind, padded)


def ci_defect(f, padded=False, general=False):
    """``d(f) = h2 - h1 + dim R - dim B`` through the chosen factorization."""
    fac = regular_factorization(f, padded=padded, general=general)
    dim_R = dimension(f.source) + fac.extra
    return fac.h2 - fac.h1 + dim_R - dimension(f.target)


YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class MapClassification:
    kind: str
    h1: int
    h2: int
    dim_R: int
    dim_B: int
    depth_R: int
    depth_B: int
    grade: int
    d_f: int
    d_f_via_grade: int
    koszul_h1_free: bool
    koszul_h1_rank: object
    is_ci: bool
    is_qci: bool
    is_mci: bool
    is_fci: str
    is_rci: str
    source_ci: bool
    target_ci: bool
    transfer: dict
    koszul_mu: list = field(default_factory=list, repr=False)
    exterior: dict = field(default_factory=dict, repr=False)
    fci_reason: str = ""
    rci_reason: str = ""

    def as_dict(self):
        d = asdict(self)
        for k in ("koszul_mu", "exterior", "fci_reason", "rci_reason"):
            d.pop(k)
        return d


def _pdim_finite(fac, depth_R):
    """Whether ``B = R/I`` has finite projective dimension over ``R``.

    By Auslander-Buchsbaum a finite resolution has length at most
    ``depth R``, so resolving that far decides the question.
    """
    M = PresentedModule.cyclic(fac.R, fac.kernel)
    res = minimal_free_resolution(M, max(depth_R, 1))
    return res.terminated


def classify(f, padded=False, general=False):
    """Classify ``f`` into ci / qci / mci and three-valued fci / rci."""
    A, B = f.source, f.target
    fac = regular_factorization(f, padded=padded, general=general)
    inv_A = ring_invariants(A)
    inv_B = ring_invariants(B)
    summ = fac.koszul()
    dim_R = inv_A.dim + fac.extra
    depth_R = inv_A.depth + fac.extra
    h1, h2 = fac.h1, fac.h2
    g = summ.grade
    d_f = h2 - h1 + dim_R - inv_B.dim
    d_via = dim_R - inv_B.dim - g
    is_ci = h2 == 0
    is_qci = bool(summ.qci_pattern)
    is_mci = is_qci and d_f == 0
    if not is_qci:
        fci, fci_reason = NO, "Koszul pattern fails, so H_3 does not vanish"
    elif is_ci:
        fci, fci_reason = YES, "kernel generated by a regular sequence"
    elif inv_A.complete_intersection:
        fci, fci_reason = YES, "source is a complete intersection"
    elif _pdim_finite(fac, depth_R):
        fci, fci_reason = YES, "finite projective dimension over R"
    else:
        fci, fci_reason = UNKNOWN, "no sufficient certificate"
    if is_ci:
        rci, rci_reason = YES, "ci"
    elif inv_A.complete_intersection and inv_B.complete_intersection:
        rci, rci_reason = YES, "source and target are complete intersections"
    elif not is_mci or fci == NO:
        rci, rci_reason = NO, "rci requires mci and fci"
    else:
        rci, rci_reason = UNKNOWN, "auxiliary ring not searched"
    transfer = transfer_report(
        inv_A, inv_B, is_qci, is_mci, fci, depth_R, g, d_f, d_via
    )
    out = MapClassification(
        kind=fac.kind,
        h1=h1,
        h2=h2,
        dim_R=dim_R,
        dim_B=inv_B.dim,
        depth_R=depth_R,
        depth_B=inv_B.depth,
        grade=g,
        d_f=d_f,
        d_f_via_grade=d_via,
        koszul_h1_free=bool(summ.h1_free),
        koszul_h1_rank=summ.h1_rank,
        is_ci=is_ci,
        is_qci=is_qci,
        is_mci=is_mci,
        is_fci=fci,
        is_rci=rci,
        source_ci=inv_A.complete_intersection,
        target_ci=inv_B.complete_intersection,
        transfer=transfer,
        koszul_mu=list(summ.mu),
        exterior=dict(summ.exterior),
        fci_reason=fci_reason,
        rci_reason=rci_reason,
    )
    check_theorems(out, f)
    return out


def transfer_report(inv_A, inv_B, is_qci, is_mci, fci, depth_R, grade_, d_f, d_via):
    """Predicted relations between A and B next to the computed values."""
    strong = is_mci or fci == YES

    def entry(applicable, values, holds):
        return {"applicable": applicable, "values": values, "holds": holds if applicable else None}

    return {
        "grade_depth": entry(
            is_qci,
            {"depth_R": depth_R, "depth_B": inv_B.depth, "grade": grade_},
            depth_R - inv_B.depth == grade_,
        ),
        "d_formula": entry(is_qci, {"d_f": d_f, "d_f_via_grade": d_via}, d_f == d_via),
        "coprof": entry(
            strong, {"source": inv_A.coprof, "target": inv_B.coprof}, inv_A.coprof == inv_B.coprof
        ),
        "gorenstein": entry(
            strong,
            {"source": inv_A.gorenstein, "target": inv_B.gorenstein},
            inv_A.gorenstein == inv_B.gorenstein,
        ),
        "cohen_macaulay": entry(
            strong,
            {"source": inv_A.cohen_macaulay, "target": inv_B.cohen_macaulay},
            inv_A.cohen_macaulay == inv_B.cohen_macaulay,
        ),
    }


def check_theorems(c, f=None):
    """Raise :class:`TheoremMismatch` if a classification contradicts a theorem."""
    problems = []
    if c.is_ci and not c.is_mci:
        problems.append("ci => mci")
    if c.is_mci and not c.is_qci:
        problems.append("mci => qci")
    if c.is_rci == YES and not c.is_mci:
        problems.append("rci => mci")
    if c.is_rci == YES and c.is_fci == NO:
        problems.append("rci => fci")
    if c.is_fci == NO and c.is_rci != NO:
        problems.append("fci = no => rci = no")
    if c.is_fci == YES and not c.is_qci:
        problems.append("fci => qci")
    if c.is_qci and c.source_ci != c.target_ci:
        problems.append("qci => (CI(A) <=> CI(B))")
    if c.source_ci and c.target_ci and not (c.is_mci and c.is_qci and c.is_rci == YES):
        problems.append("two-of-three: CI(A) and CI(B) => mci, rci")
    for name, t in c.transfer.items():
        if t["applicable"] and not t["holds"]:
            problems.append(f"transfer {name}")
    if problems:
        data = c.as_dict()
        data["map"] = repr(f)
        raise TheoremMismatch("classification contradicts: " + "; ".join(problems), data)
