"""Graded modules over a quotient ``B = S/J`` via presentation matrices.

Every computation is lifted to the polynomial ring ``S``: a module
``coker(phi)`` over ``B`` is the ``S``-module ``S^r / (im(phi) + J S^r)``.
Vectors are sparse dicts ``{(component, exponent): coefficient}``; a matrix
is a list of column vectors.
"""

from __future__ import annotations

import os
from math import comb

from .errors import NotHomogeneousError, ResourceLimitError
from .groebner import GroebnerBasis, TermOrder, add_into
from .hilbert import HilbertSeries, monomial_numerator
from .ideal import GradedAlgebra, poly_to_vec
from .poly import Polynomial, mono_degree

DEFAULT_MAX_RANK = 4096
MAX_CUTOFF = 24


def max_rank():
    raw = os.environ.get("CI_CLASSIFY_MAX_RANK")
    return int(raw) if raw else DEFAULT_MAX_RANK


def check_rank(n, what="free module"):
    limit = max_rank()
    if n > limit:
        raise ResourceLimitError(
            f"{what} of rank {n} exceeds CI_CLASSIFY_MAX_RANK={limit}"
        )


# -- vector helpers -----------------------------------------------------------

def column(polys):
    """Column vector from a list of polynomials (one per component)."""
    vec = {}
    for c, p in enumerate(polys):
        if p is None:
            continue
        for e, v in p.terms.items():
            vec[(c, e)] = v
    return vec


def entries(vec, rank, ring):
    """Inverse of :func:`column`: list of polynomials."""
    parts = [dict() for _ in range(rank)]
    for (c, e), v in vec.items():
        parts[c][e] = v
    return [Polynomial(ring, p) for p in parts]


def vec_degree(vec, weights, degrees):
    """Common degree of a homogeneous vector (None for zero)."""
    d = None
    for c, e in vec:
        dd = mono_degree(e, weights) + degrees[c]
        if d is None:
            d = dd
        elif dd != d:
            raise NotHomogeneousError(f"vector is not homogeneous: degrees {d} and {dd}")
    return d


def poly_times_vec(p_terms, vec, field):
    """``p * vec`` for a polynomial given as a term dict."""
    out = {}
    for e, c in p_terms.items():
        add_into(out, vec, c, e, field)
    return out


def combine(columns, coeffs, field):
    """``sum_k coeffs_k * columns[k]`` where ``coeffs`` is a vector."""
    out = {}
    for (k, e), c in coeffs.items():
        add_into(out, columns[k], c, e, field)
    return out


def base_engine(algebra, degrees, extra=(), blocks=None):
    """Groebner engine seeded with ``J * e_c`` for each component plus ``extra``."""
    ring = algebra.ring
    order = TermOrder(ring.weights, degrees, blocks)
    eng = GroebnerBasis(ring.field, order)
    J = algebra.ideal.groebner_basis()
    if J:
        eng.add_basis([poly_to_vec(g, c) for c in range(len(degrees)) for g in J])
    for v in extra:
        eng.add(v)
    return eng


def kernel(algebra, columns, source_degrees, target_degrees, extra=()):
    """Generators of ``{a in S^m : sum a_k col_k in J S^r + span(extra)}``.

    ``columns`` are vectors in ``S^r`` (graded by ``target_degrees``) and the
    k-th column has degree ``source_degrees[k]``.  Computed by elimination of
    module components: a Groebner basis of the graph ``(col_k | e_k)`` in a
    block order that makes target terms larger than source terms.
    """
    r = len(target_degrees)
    m = len(columns)
    if m == 0:
        return []
    check_rank(r + m, "tracked module")
    ring = algebra.ring
    degs = list(target_degrees) + list(source_degrees)
    blocks = [1] * r + [0] * m
    eng = base_engine(algebra, degs, extra=(), blocks=blocks)
    for v in extra:
        eng.add(v)
    one = ring.field.one
    z = ring.zero_exp
    for k, col in enumerate(columns):
        if col:
            d = vec_degree(col, ring.weights, target_degrees)
            if d != source_degrees[k]:
                raise NotHomogeneousError(
                    f"column {k} has degree {d}, expected {source_degrees[k]}"
                )
        v = dict(col)
        v[(r + k, z)] = one
        eng.add(v)
    eng.complete()
    out = []
    for g, (c, _) in zip(eng.basis, eng.lts):
        if c >= r:
            out.append({(cc - r, e): val for (cc, e), val in g.items()})
    return out


def minimal_subset(algebra, vectors, degrees, extra=()):
    """Minimal generators of ``(span(vectors) + W) / W`` with ``W = J S^r + span(extra)``.

    Candidates are scanned by increasing degree (stable); each one is kept,
    in reduced normal form, iff it is not in the span of ``W`` and the
    previously kept vectors.
    """
    ring = algebra.ring
    eng = base_engine(algebra, degrees, extra)
    cands = []
    for i, v in enumerate(vectors):
        if v:
            cands.append((vec_degree(v, ring.weights, degrees), i, v))
    cands.sort(key=lambda t: (t[0], t[1]))
    kept = []
    for d, _, v in cands:
        eng.complete(d)
        r = eng.reduce(v)
        if r:
            kept.append(r)
            eng.add(r)
            eng.complete(d)
    return kept


def prune_constants(degrees, relations, field, zero_exp):
    """Gaussian elimination on unit entries of a presentation.

    Returns ``(kept_generators, relations)`` where ``kept_generators`` are
    indices into the original generator list and the relations are
    re-indexed on them.  Pivots are chosen on the earliest column, then
    the earliest row, carrying a nonzero constant entry.
    """
    rels = [dict(v) for v in relations if v]
    alive = list(range(len(degrees)))
    while True:
        pivot = None
        for k, v in enumerate(rels):
            rows = sorted(c for (c, e) in v if e == zero_exp)
            if rows:
                pivot = (k, rows[0])
                break
        if pivot is None:
            break
        k, c = pivot
        P = rels.pop(k)
        a = P[(c, zero_exp)]
        inv = field.inv(a)
        new = []
        for v in rels:
            coeff = {e: val for (cc, e), val in v.items() if cc == c}
            if coeff:
                v = dict(v)
                for e, val in coeff.items():
                    add_into(v, P, field.reduce(-val * inv), e, field)
                assert not any(cc == c for (cc, _) in v)
            if v:
                new.append(v)
        rels = new
        alive.remove(c)
    index = {c: i for i, c in enumerate(alive)}
    rels = [{(index[c], e): val for (c, e), val in v.items()} for v in rels]
    return alive, rels


class PresentedModule:
    """Finitely generated graded module ``coker(B^m -> B^r)`` over ``B = S/J``.

    ``gen_degrees`` lists the degrees of the r generators; ``relations`` is a
    list of homogeneous column vectors in ``S^r``.  The relations coming from
    ``J`` acting on each generator are implicit.  ``representatives`` is an
    optional list of vectors (elements of some ambient free module) that the
    generators stand for; it is carried along but never interpreted.
    """

    def __init__(self, algebra, gen_degrees, relations=(), representatives=None,
                 minimal=False):
        if not isinstance(algebra, GradedAlgebra):
            raise TypeError("algebra must be a GradedAlgebra")
        self.algebra = algebra
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        rels = []
        for rel in relations:
            if isinstance(rel, (list, tuple)):
                rel = column(rel)
            if rel:
                vec_degree(rel, algebra.ring.weights, self.gen_degrees)
                rels.append(dict(rel))
        self.relations = rels
        self.representatives = representatives
        self.minimal = minimal
        self._engine = None
        self._min = None

    @classmethod
    def free(cls, algebra, degrees):
        return cls(algebra, degrees, (), minimal=True)

    @classmethod
    def cyclic(cls, algebra, ideal_gens, degree=0):
        """``B / (ideal_gens)`` as a module with one generator."""
        rels = [column([g]) for g in ideal_gens if not g.is_zero()]
        return cls(algebra, [degree], rels)

    @classmethod
    def residue_field(cls, algebra):
        return cls.cyclic(algebra, algebra.ring.gens())

    @property
    def rank(self):
        """Number of generators in this presentation (not necessarily minimal)."""
        return len(self.gen_degrees)

    def relation_degrees(self):
        ring = self.algebra.ring
        return [vec_degree(v, ring.weights, self.gen_degrees) for v in self.relations]

    def relation_matrix(self):
        """Relations as lists of polynomials (columns)."""
        ring = self.algebra.ring
        return [entries(v, self.rank, ring) for v in self.relations]

    def __repr__(self):
        return (
            f"PresentedModule(rank={self.rank}, degrees={list(self.gen_degrees)}, "
            f"relations={len(self.relations)})"
        )

    # -- Groebner data ---------------------------------------------------
    def engine(self):
        """Completed Groebner basis of ``im(phi) + J S^r``."""
        if self._engine is None:
            eng = base_engine(self.algebra, self.gen_degrees, self.relations)
            eng.complete()
            self._engine = eng
        return self._engine

    def reduce(self, vec):
        return self.engine().reduce(vec)

    def hilbert_series(self):
        ring = self.algebra.ring
        eng = self.engine()
        per_comp = [[] for _ in range(self.rank)]
        for c, e in eng.lts:
            per_comp[c].append(e)
        num = {}
        for c, monos in enumerate(per_comp):
            n = monomial_numerator(monos, ring.weights)
            for k, v in n.items():
                key = k + self.gen_degrees[c]
                num[key] = num.get(key, 0) + v
        return HilbertSeries(num, ring.weights)

    # -- minimalization -------------------------------------------------
    def minimalize(self):
        """Equivalent presentation with minimal generators and relations."""
        if self.minimal:
            return self
        if self._min is None:
            ring = self.algebra.ring
            alive, rels = prune_constants(
                self.gen_degrees, self.relations, ring.field, ring.zero_exp
            )
            degs = [self.gen_degrees[c] for c in alive]
            rels = minimal_subset(self.algebra, rels, degs)
            reps = None
            if self.representatives is not None:
                reps = [self.representatives[c] for c in alive]
            self._min = PresentedModule(self.algebra, degs, rels, reps, minimal=True)
        return self._min

    def mu(self):
        """Minimal number of generators (graded Nakayama)."""
        return self.minimalize().rank

    def is_zero(self):
        return self.mu() == 0

    def is_free(self):
        """``(True, rank)`` when free, ``(False, None)`` otherwise."""
        m = self.minimalize()
        if m.relations:
            return False, None
        return True, m.rank

    def tensor_residue_dimension(self):
        """``dim_k M / mM`` computed from the Hilbert series of ``M / mM``."""
        ring = self.algebra.ring
        extra = []
        for c in range(self.rank):
            for x in ring.gens():
                extra.append(poly_to_vec(x, c))
        q = PresentedModule(self.algebra, self.gen_degrees, self.relations + extra)
        return q.hilbert_series().total_dimension()

    # -- homological algebra -------------------------------------------
    def syzygies(self):
        """First syzygy module: the kernel of the (minimal) presentation map."""
        m = self.minimalize()
        src = m.relation_degrees()
        gens = minimal_subset(
            m.algebra, kernel(m.algebra, m.relations, src, m.gen_degrees), src
        )
        gdeg = [vec_degree(v, m.algebra.ring.weights, src) for v in gens]
        rels = kernel(m.algebra, gens, gdeg, src)
        return PresentedModule(m.algebra, gdeg, rels, representatives=gens).minimalize()

    def resolution(self, cutoff, check_termination=True):
        return minimal_free_resolution(self, cutoff, check_termination)


class FreeResolutionPrefix:
    """Prefix ``F_0 <- F_1 <- ... <- F_N`` of a minimal graded free resolution.

    ``degrees[i]`` lists generator degrees of ``F_i``; ``maps[i-1]`` holds the
    columns of ``d_i : F_i -> F_{i-1}``.  ``terminated`` is True when the
    prefix is known to be the whole resolution.
    """

    def __init__(self, algebra, degrees, maps, terminated, module=None):
        self.algebra = algebra
        self.degrees = [list(d) for d in degrees]
        self.maps = maps
        self.terminated = terminated
        self.module = module
        self.minimal = True

    @property
    def length(self):
        return len(self.degrees) - 1

    def betti(self):
        return [len(d) for d in self.degrees]

    def graded_betti(self):
        """``{(i, j): beta_ij}``."""
        out = {}
        for i, ds in enumerate(self.degrees):
            for j in ds:
                out[(i, j)] = out.get((i, j), 0) + 1
        return out

    def projective_dimension(self):
        if not self.terminated:
            return None
        nz = [i for i, d in enumerate(self.degrees) if d]
        return max(nz) if nz else -1

    def is_complex(self):
        """Check ``d_i o d_{i+1} = 0`` modulo the defining ideal."""
        fld = self.algebra.ring.field
        for i in range(1, len(self.maps)):
            eng = base_engine(self.algebra, self.degrees[i - 1])
            eng.complete()
            for col in self.maps[i]:
                img = combine(self.maps[i - 1], col, fld)
                if eng.reduce(img):
                    return False
        return True

    def is_minimal(self):
        """No map has a nonzero constant entry."""
        z = self.algebra.ring.zero_exp
        return not any(e == z for cols in self.maps for col in cols for (_, e) in col)

    def euler_polynomial(self):
        """``sum_i (-1)^i sum_j beta_ij t^j`` as a dict."""
        out = {}
        for (i, j), b in self.graded_betti().items():
            out[j] = out.get(j, 0) + (-1) ** i * b
        return {k: v for k, v in out.items() if v}

    def euler_check(self, module=None):
        """Euler characteristic against the Hilbert series of the module.

        A terminated resolution must match exactly.  A prefix is checked in
        degrees up to the lowest degree of ``F_N``, below which the missing
        tail cannot contribute.
        """
        module = module or self.module
        hs_m = module.hilbert_series()
        base = PresentedModule.free(self.algebra, [0]).hilbert_series()
        num = {}
        for j, v in self.euler_polynomial().items():
            for k, w in base.numerator.items():
                num[j + k] = num.get(j + k, 0) + v * w
        prod = HilbertSeries(num, base.weights)
        if self.terminated:
            return prod.numerator == hs_m.numerator
        bound = min(self.degrees[-1])
        lo = min(hs_m.min_degree(), prod.min_degree())
        a = hs_m.coefficients(bound)
        b = prod.coefficients(bound)
        return all(a.get(d, 0) == b.get(d, 0) for d in range(lo, bound + 1))


def minimal_free_resolution(module, cutoff, check_termination=True):
    """Minimal graded free resolution of ``module`` through ``F_cutoff``.

    With ``check_termination`` the kernel of ``d_cutoff`` is also computed so
    that ``terminated`` is decided even when ``F_cutoff`` is nonzero.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if cutoff > MAX_CUTOFF:
        raise ResourceLimitError(f"resolution cutoff {cutoff} exceeds the cap {MAX_CUTOFF}")
    algebra = module.algebra
    weights = algebra.ring.weights
    m = module.minimalize()
    degrees = [list(m.gen_degrees)]
    maps = []
    if m.rank == 0:
        return FreeResolutionPrefix(algebra, degrees, maps, True, module)
    cols = m.relations
    src = m.relation_degrees()
    tgt = list(m.gen_degrees)
    i = 1
    while True:
        if not cols:
            return FreeResolutionPrefix(algebra, degrees, maps, True, module)
        check_rank(len(cols))
        maps.append(cols)
        degrees.append(src)
        if i == cutoff and not check_termination:
            return FreeResolutionPrefix(algebra, degrees, maps, False, module)
        nxt = minimal_subset(algebra, kernel(algebra, cols, src, tgt), src)
        if i == cutoff:
            return FreeResolutionPrefix(algebra, degrees, maps, not nxt, module)
        tgt = src
        src = [vec_degree(v, weights, tgt) for v in nxt]
        cols = nxt
        i += 1


def homology(algebra, mid_degrees, outgoing=None, out_degrees=None, incoming=(),
             result_algebra=None):
    """Homology ``ker(outgoing) / im(incoming)`` at a free module ``F``.

    ``outgoing`` are the columns of ``F -> G`` (None for the zero map) and
    ``incoming`` the columns of ``E -> F``.  Returns a minimalized
    :class:`PresentedModule` over ``result_algebra`` (default ``algebra``)
    whose ``representatives`` are cycle vectors in ``F``.
    """
    ring = algebra.ring
    r = len(mid_degrees)
    if outgoing is None or not any(outgoing):
        z = ring.zero_exp
        one = ring.field.one
        cycles = [{(c, z): one} for c in range(r)]
    else:
        cycles = kernel(algebra, outgoing, mid_degrees, out_degrees)
    gens = minimal_subset(algebra, cycles, mid_degrees, extra=incoming)
    gdeg = [vec_degree(v, ring.weights, mid_degrees) for v in gens]
    rels = kernel(algebra, gens, gdeg, mid_degrees, extra=incoming)
    result_algebra = result_algebra or algebra
    mod = PresentedModule(result_algebra, gdeg, rels, representatives=gens)
    out = mod.minimalize()
    assert out.rank == len(gens), "cycle generators were not minimal"
    return out


def binomial_rank_guard(s):
    """Guard for exterior powers: C(s, s//2) must stay below 2^20."""
    if comb(s, s // 2) > 2**20:
        raise ResourceLimitError(f"Koszul complex on {s} elements is too large")
