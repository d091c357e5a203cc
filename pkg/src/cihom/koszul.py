"""Koszul complexes over graded quotients and their homology."""

from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import NotHomogeneousError, RingMismatchError
from .ideal import GradedAlgebra
from .modules import (
    base_engine,
    PresentedModule,
    binomial_rank_guard,
    combine,
    homology,
    kernel,
    minimal_subset,
)


def _check_sequence(algebra, seq):
    ring = algebra.ring
    out = []
    for f in seq:
        if f.ring != ring:
            raise RingMismatchError(f"{f} does not live in {ring!r}")
        if not f.is_homogeneous():
            raise NotHomogeneousError(f"{f} is not homogeneous")
        if f.is_zero():
            raise ValueError("Koszul sequences must consist of nonzero elements")
        if f.degree() <= 0:
            raise ValueError(f"{f} is not in the irrelevant ideal (unit ambiguity)")
        out.append(f)
    return tuple(out)


class KoszulComplex:
    """Koszul complex ``K(x_1..x_s; A)``.

    ``basis[i]`` lists the increasing index tuples spanning ``K_i`` and
    ``degrees[i]`` their internal degrees.  ``differential(i)`` returns the
    columns of ``d_i : K_i -> K_{i-1}`` with the sign rule
    ``d(e_J) = sum_t (-1)^(t+1) x_{j_t} e_{J - j_t}``.
    """

    def __init__(self, algebra, sequence):
        if not isinstance(algebra, GradedAlgebra):
            raise TypeError("algebra must be a GradedAlgebra")
        self.algebra = algebra
        self.sequence = _check_sequence(algebra, sequence)
        s = len(self.sequence)
        binomial_rank_guard(s)
        self.length = s
        self.basis = [list(combinations(range(s), i)) for i in range(s + 1)]
        self.index = [{J: k for k, J in enumerate(b)} for b in self.basis]
        seq_deg = [f.degree() for f in self.sequence]
        self.degrees = [[sum(seq_deg[j] for j in J) for J in b] for b in self.basis]
        self._diff = {}
        self._homology = {}
        self.quotient = algebra.quotient(self.sequence)

    def rank(self, i):
        return comb(self.length, i) if 0 <= i <= self.length else 0

    def differential(self, i):
        """Columns of ``d_i``; empty for ``i`` outside ``1..s``."""
        if i < 1 or i > self.length:
            return []
        if i not in self._diff:
            fld = self.algebra.field
            cols = []
            for J in self.basis[i]:
                vec = {}
                for t, j in enumerate(J):
                    drop = J[:t] + J[t + 1:]
                    row = self.index[i - 1][drop]
                    sign = fld.one if t % 2 == 0 else fld.reduce(-fld.one)
                    for e, c in self.sequence[j].terms.items():
                        vec[(row, e)] = fld.reduce(sign * c)
                cols.append(vec)
            self._diff[i] = cols
        return self._diff[i]

    def is_complex(self):
        """``d_{i} o d_{i+1} = 0`` modulo the defining ideal."""
        fld = self.algebra.field
        for i in range(1, self.length):
            eng = base_engine(self.algebra, self.degrees[i - 1])
            eng.complete()
            for col in self.differential(i + 1):
                if eng.reduce(combine(self.differential(i), col, fld)):
                    return False
        return True

    def cycles(self, i):
        if i == 0:
            z = self.algebra.ring.zero_exp
            return [{(0, z): self.algebra.field.one}]
        return kernel(self.algebra, self.differential(i), self.degrees[i], self.degrees[i - 1])

    def homology_vanishes(self, i):
        """True when ``H_i = 0`` (cheaper than building the module)."""
        if i < 0 or i > self.length:
            return True
        if i == 0:
            return False
        cyc = self.cycles(i)
        return not minimal_subset(
            self.algebra, cyc, self.degrees[i], extra=self.differential(i + 1)
        )

    def homology(self, i):
        """``H_i`` as a minimalized module over ``A / (x_1..x_s)``.

        The module's ``representatives`` are cycles in ``K_i`` in reduced
        normal form, one per minimal generator.
        """
        if i not in self._homology:
            if i < 0 or i > self.length:
                self._homology[i] = PresentedModule(self.quotient, [], minimal=True)
            else:
                out_cols = self.differential(i) if i >= 1 else None
                out_degs = self.degrees[i - 1] if i >= 1 else None
                self._homology[i] = homology(
                    self.algebra,
                    self.degrees[i],
                    out_cols,
                    out_degs,
                    self.differential(i + 1),
                    result_algebra=self.quotient,
                )
        return self._homology[i]

    # -- exterior products ------------------------------------------------
    def product(self, u, i, v, j):
        """Product of ``u`` in ``K_i`` and ``v`` in ``K_j`` (an element of ``K_{i+j}``)."""
        fld = self.algebra.field
        out = {}
        basis_i, basis_j = self.basis[i], self.basis[j]
        idx = self.index[i + j] if i + j <= self.length else {}
        for (a, ea), ca in u.items():
            A = basis_i[a]
            for (b, eb), cb in v.items():
                B = basis_j[b]
                if set(A) & set(B):
                    continue
                merged = A + B
                # sign of the sorting permutation = parity of inversions
                inv = sum(1 for x in A for y in B if x > y)
                key = tuple(sorted(merged))
                term = (idx[key], tuple(p + q for p, q in zip(ea, eb)))
                c = ca * cb if inv % 2 == 0 else -(ca * cb)
                nv = fld.reduce(out.get(term, 0) + c)
                if nv:
                    out[term] = nv
                else:
                    out.pop(term, None)
        return out


class KoszulHomologySummary:
    """All Koszul homology of a sequence, with freeness and grade data.

    ``exterior[i]`` is True/False for ``2 <= i <= s`` when ``H_1`` is free, and
    ``None`` (not applicable) otherwise.
    """

    def __init__(self, complex_):
        self.complex = complex_
        s = complex_.length
        self.length = s
        self.modules = [complex_.homology(i) for i in range(s + 1)]
        self.mu = [m.mu() for m in self.modules]
        self.free = []
        self.ranks = []
        for m in self.modules:
            ok, r = m.is_free()
            self.free.append(ok)
            self.ranks.append(r)
        top = max(i for i in range(s + 1) if self.mu[i])
        self.grade = s - top
        self.exterior = exterior_comparison(self)
        self.qci_pattern = self.free[1] if s >= 1 else True
        if self.qci_pattern:
            self.qci_pattern = all(v for v in self.exterior.values())

    @property
    def h1_free(self):
        return self.free[1] if self.length >= 1 else True

    @property
    def h1_rank(self):
        if self.length == 0:
            return 0
        return self.ranks[1]

    def __repr__(self):
        return (
            f"KoszulHomologySummary(mu={self.mu}, free={self.free}, grade={self.grade}, "
            f"qci_pattern={self.qci_pattern})"
        )


def koszul_homology(algebra, sequence):
    return KoszulHomologySummary(KoszulComplex(algebra, sequence))


def exterior_comparison(summary):
    """Test that ``wedge^i H_1 -> H_i`` is an isomorphism for ``2 <= i <= s``.

    Returns ``{i: True/False}``, or ``{i: None}`` for every ``i`` when ``H_1`` is
    not free.  The map is built from products of the chosen ``H_1`` cycles.
    """
    K = summary.complex
    s = K.length
    if s < 2:
        return {}
    if not summary.free[1]:
        return {i: None for i in range(2, s + 1)}
    A = K.algebra
    z1 = summary.modules[1].representatives or []
    r = len(z1)
    deg1 = summary.modules[1].gen_degrees
    verdict = {}
    B = K.quotient
    for i in range(2, s + 1):
        target = summary.modules[i]
        subsets = list(combinations(range(r), i))
        if not subsets:
            verdict[i] = target.mu() == 0
            continue
        prods, pdeg = [], []
        for T in subsets:
            p = z1[T[0]]
            for k in range(1, i):
                p = K.product(p, k, z1[T[k]], 1)
            prods.append(p)
            pdeg.append(sum(deg1[t] for t in T))
        incoming = K.differential(i + 1)
        # surjectivity: every homology generator lies in span(products) + boundaries
        eng = base_engine(A, K.degrees[i], list(incoming) + [p for p in prods if p])
        eng.complete()
        surj = all(not eng.reduce(v) for v in (target.representatives or []))
        if not surj:
            verdict[i] = False
            continue
        # injectivity: relations among products modulo boundaries vanish over B
        if any(not p for p in prods):
            verdict[i] = False
            continue
        cols = prods + list(incoming)
        cdeg = pdeg + [K.degrees[i + 1][k] for k in range(len(incoming))]
        ker = kernel(A, cols, cdeg, K.degrees[i])
        m = len(prods)
        beng = base_engine(B, pdeg)
        beng.complete()
        inj = True
        for v in ker:
            part = {(c, e): x for (c, e), x in v.items() if c < m}
            if part and beng.reduce(part):
                inj = False
                break
        verdict[i] = inj
    return verdict


def grade(algebra, generators):
    """Grade of the ideal generated by ``generators`` (depth sensitivity)."""
    gens = [g for g in generators if not g.is_zero()]
    for g in gens:
        if g.degree() <= 0:
            raise ValueError("the unit ideal has no grade")
    if not gens:
        return 0
    K = KoszulComplex(algebra, gens)
    for i in range(K.length, 0, -1):
        if not K.homology_vanishes(i):
            return K.length - i
    return K.length


def regular_sequence(algebra, sequence):
    """True when the sequence is regular, i.e. ``H_1`` vanishes."""
    return KoszulComplex(algebra, sequence).homology_vanishes(1)
