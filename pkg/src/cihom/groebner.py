"""Buchberger's algorithm for homogeneous submodules of graded free modules.

A *term* is a pair ``(component, exponent)``; a *vector* is a dict mapping
terms to nonzero coefficients.  Ideals are the rank-one case (every term in
component 0).  All input is assumed homogeneous with respect to
``TermOrder.degree``, which lets the algorithm run degree by degree and stop
at any degree bound with a basis that is complete up to that bound.
"""

from __future__ import annotations

import heapq
import os
from collections import defaultdict

from .errors import ResourceLimitError
from .poly import mono_degree, mono_div, mono_divides, mono_lcm, mono_mul

DEFAULT_MAX_STEPS = 20_000_000


def max_steps():
    """Reduction-step ceiling, overridable through ``CI_CLASSIFY_MAX_STEPS``."""
    raw = os.environ.get("CI_CLASSIFY_MAX_STEPS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_STEPS


class TermOrder:
    """Monomial order on module terms.

    Terms are compared by, in turn: ``blocks[component]`` (larger block is
    larger), weighted degree in the ``elim`` variables, total degree
    (monomial degree plus generator degree), weighted reverse lex on the
    exponent, and finally the component index (smaller index is larger).
    """

    def __init__(self, weights, gen_degrees=(0,), blocks=None, elim=None):
        self.weights = tuple(weights)
        self.gen_degrees = tuple(gen_degrees)
        self.blocks = tuple(blocks) if blocks is not None else None
        self.elim = tuple(elim) if elim is not None else None
        self._cache = {}

    def degree(self, term):
        c, e = term
        return mono_degree(e, self.weights) + self.gen_degrees[c]

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            c, e = term
            d = mono_degree(e, self.weights)
            ed = 0
            if self.elim is not None:
                ed = sum(w * a for w, a, m in zip(self.weights, e, self.elim) if m)
            b = self.blocks[c] if self.blocks is not None else 0
            k = (b, ed, d + self.gen_degrees[c], tuple(-a for a in reversed(e)), -c)
            self._cache[term] = k
        return k


def leading_term(vec, order):
    return max(vec, key=order.key)


def vector_degree(vec, order):
    for t in vec:
        return order.degree(t)
    return None


def scale_shift(vec, coeff, shift, field):
    """Return ``coeff * x^shift * vec``."""
    red = field.reduce
    return {(c, mono_mul(e, shift)): red(coeff * v) for (c, e), v in vec.items()}


def add_into(target, vec, coeff, shift, field):
    """In place: ``target += coeff * x^shift * vec``."""
    red = field.reduce
    for (c, e), v in vec.items():
        t = (c, mono_mul(e, shift))
        nv = red(target.get(t, 0) + coeff * v)
        if nv:
            target[t] = nv
        else:
            target.pop(t, None)


def make_monic(vec, order, field):
    lt = leading_term(vec, order)
    inv = field.inv(vec[lt])
    red = field.reduce
    return {t: red(v * inv) for t, v in vec.items()}, lt


class GroebnerBasis:
    """Incremental homogeneous Groebner basis of a submodule.

    Use :meth:`add` to queue generators, :meth:`add_basis` to register
    vectors already known to form a Groebner basis among themselves, and
    :meth:`complete` to run Buchberger's algorithm up to a degree bound.
    """

    def __init__(self, field, order, *, product_criterion=False):
        self.field = field
        self.order = order
        self.product_criterion = product_criterion
        self.basis = []
        self.lts = []
        self.by_comp = defaultdict(list)
        self._pairs = {}
        self._pair_heap = []
        self._pending = []
        self._counter = 0
        self.steps = 0
        self._max_steps = max_steps()

    # -- input ----------------------------------------------------------
    def add(self, vec):
        if not vec:
            return
        d = vector_degree(vec, self.order)
        self._counter += 1
        heapq.heappush(self._pending, (d, self._counter, dict(vec)))

    def add_basis(self, vecs):
        for v in vecs:
            if v:
                m, lt = make_monic(v, self.order, self.field)
                self._register(m, lt, make_pairs=False)

    # -- pair management (Gebauer-Moeller) -----------------------------
    def _register(self, vec, lt, make_pairs=True):
        k = len(self.basis)
        self.basis.append(vec)
        self.lts.append(lt)
        c, mh = lt
        if make_pairs:
            self._update_pairs(k, c, mh)
        self.by_comp[c].append(k)
        return k

    def _update_pairs(self, h, c, mh):
        order = self.order
        cands = []
        for i in self.by_comp[c]:
            mi = self.lts[i][1]
            L = mono_lcm(mi, mh)
            coprime = self.product_criterion and mono_mul(mi, mh) == L
            cands.append((i, L, coprime))
        # chain criterion on old pairs
        dead = []
        for (i, j), (d, L) in self._pairs.items():
            if self.lts[i][0] != c or not mono_divides(mh, L):
                continue
            Lih = mono_lcm(self.lts[i][1], mh)
            Ljh = mono_lcm(self.lts[j][1], mh)
            if Lih != L and Ljh != L:
                dead.append((i, j))
        for p in dead:
            del self._pairs[p]
        # criterion M: drop (i,h) if some (j,h) has lcm properly dividing
        keep = []
        for i, L, cop in cands:
            if any(L2 != L and mono_divides(L2, L) for _, L2, _ in cands):
                continue
            keep.append((i, L, cop))
        # criterion F: one pair per lcm, coprime pairs discarded
        by_lcm = {}
        for i, L, cop in keep:
            if L in by_lcm:
                by_lcm[L] = (by_lcm[L][0], by_lcm[L][1] or cop)
            else:
                by_lcm[L] = (i, cop)
        for L, (i, cop) in by_lcm.items():
            if cop:
                continue
            d = order.degree((c, L))
            self._pairs[(i, h)] = (d, L)
            heapq.heappush(self._pair_heap, (d, i, h))

    def _next_degree(self):
        while self._pair_heap and (self._pair_heap[0][1], self._pair_heap[0][2]) not in self._pairs:
            heapq.heappop(self._pair_heap)
        cands = []
        if self._pair_heap:
            cands.append(self._pair_heap[0][0])
        if self._pending:
            cands.append(self._pending[0][0])
        return min(cands) if cands else None

    def _spoly(self, i, j, L):
        f = self.field
        gi, gj = self.basis[i], self.basis[j]
        out = scale_shift(gi, f.one, mono_div(L, self.lts[i][1]), f)
        add_into(out, gj, f.reduce(-f.one), mono_div(L, self.lts[j][1]), f)
        return out

    def complete(self, upto=None):
        """Run Buchberger until every pair/generator of degree <= upto is done."""
        while True:
            d = self._next_degree()
            if d is None or (upto is not None and d > upto):
                return self
            work = []
            while self._pending and self._pending[0][0] == d:
                work.append(heapq.heappop(self._pending)[2])
            while self._pair_heap and self._pair_heap[0][0] == d:
                _, i, j = heapq.heappop(self._pair_heap)
                entry = self._pairs.pop((i, j), None)
                if entry is not None:
                    work.append(self._spoly(i, j, entry[1]))
            for v in work:
                r = self.reduce(v)
                if r:
                    m, lt = make_monic(r, self.order, self.field)
                    self._register(m, lt)

    @property
    def is_complete(self):
        return self._next_degree() is None

    # -- reduction ------------------------------------------------------
    def find_reducer(self, term):
        c, e = term
        for k in self.by_comp.get(c, ()):
            if mono_divides(self.lts[k][1], e):
                return k
        return None

    def reduce(self, vec, full=True):
        """Normal form of ``vec`` (full reduction unless ``full`` is False)."""
        if not vec:
            return {}
        f = self.field
        red = f.reduce
        key = self.order.key
        v = dict(vec)
        rem = {}
        heap = [(_neg(key(t)), t) for t in v]
        heapq.heapify(heap)
        seen = set(v)
        lts = self.lts
        basis = self.basis
        while heap:
            _, t = heapq.heappop(heap)
            coef = v.pop(t, None)
            if coef is None:
                continue
            k = self.find_reducer(t)
            if k is None:
                rem[t] = coef
                if not full:
                    rem.update(v)
                    return rem
                continue
            self.steps += 1
            if self.steps > self._max_steps:
                raise ResourceLimitError(
                    f"Groebner reduction exceeded {self._max_steps} steps "
                    "(raise CI_CLASSIFY_MAX_STEPS to allow more)"
                )
            shift = mono_div(t[1], lts[k][1])
            g = basis[k]
            q = red(-coef)
            for (c2, e2), gv in g.items():
                t2 = (c2, mono_mul(e2, shift))
                if t2 == t:
                    continue
                nv = red(v.get(t2, 0) + q * gv)
                if nv:
                    v[t2] = nv
                    if t2 not in seen:
                        seen.add(t2)
                        heapq.heappush(heap, (_neg(key(t2)), t2))
                else:
                    v.pop(t2, None)
        return rem

    def contains(self, vec):
        return not self.reduce(vec, full=False)

    def reduced_basis(self):
        """Interreduced, monic basis sorted by leading term (descending)."""
        self.complete()
        key = self.order.key
        idx = list(range(len(self.basis)))
        minimal = []
        for i in idx:
            ci, ei = self.lts[i]
            redundant = False
            for j in idx:
                if j == i:
                    continue
                cj, ej = self.lts[j]
                if cj == ci and mono_divides(ej, ei) and (ej != ei or j < i):
                    redundant = True
                    break
            if not redundant:
                minimal.append(i)
        sub = GroebnerBasis(self.field, self.order)
        sub.add_basis([self.basis[i] for i in minimal])
        out = []
        for pos, i in enumerate(minimal):
            g = self.basis[i]
            lt = self.lts[i]
            tail = {t: c for t, c in g.items() if t != lt}
            # reduce the tail against all minimal elements (none divides lt)
            tail = sub.reduce(tail)
            tail[lt] = g[lt]
            out.append(tail)
        out.sort(key=lambda v: key(leading_term(v, self.order)), reverse=True)
        return out


def _neg(k):
    # heapq is a min-heap; invert the key tuple component-wise.
    return _Desc(k)


class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k
