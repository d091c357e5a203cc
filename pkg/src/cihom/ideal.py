"""Homogeneous ideals, graded quotient algebras and ideal-level operations."""

from __future__ import annotations

import threading

from .errors import NotHomogeneousError, RingMismatchError
from .groebner import GroebnerBasis, TermOrder, leading_term
from .poly import Polynomial, PolyRing


def poly_to_vec(p, comp=0):
    return {(comp, e): c for e, c in p.terms.items()}


def vec_to_poly(ring, vec):
    return ring.poly({e: c for (_, e), c in vec.items()}) if vec else ring.zero()


class HomogeneousIdeal:
    """Ideal of a :class:`PolyRing` generated by homogeneous polynomials.

    The reduced Groebner basis is computed on first use and cached.
    """

    def __init__(self, ring, gens=()):
        self.ring = ring
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} lives in {g.ring!r}, not {ring!r}")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise NotHomogeneousError(f"generator {g} is not homogeneous")
            if g.degree() <= 0:
                raise NotHomogeneousError(
                    f"generator {g} has degree 0; ideals must lie in the irrelevant ideal"
                )
            clean.append(g)
        self.gens = tuple(clean)
        self._engine = None
        self._gb = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"HomogeneousIdeal({', '.join(map(str, self.gens))})"

    def __eq__(self, other):
        """Equality of ideals (not of generating lists)."""
        if not isinstance(other, HomogeneousIdeal) or other.ring != self.ring:
            return NotImplemented
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, tuple(self.groebner_basis())))

    def is_zero(self):
        return not self.gens

    # -- Groebner machinery --------------------------------------------
    def order(self):
        return TermOrder(self.ring.weights)

    def engine(self):
        """Completed :class:`GroebnerBasis` engine (cached)."""
        with self._lock:
            if self._engine is None:
                eng = GroebnerBasis(self.ring.field, self.order(), product_criterion=True)
                for g in self.gens:
                    eng.add(poly_to_vec(g))
                eng.complete()
                self._engine = eng
            return self._engine

    def groebner_basis(self):
        """Reduced Groebner basis as a list of monic polynomials."""
        if self._gb is None:
            eng = self.engine()
            self._gb = [vec_to_poly(self.ring, v) for v in eng.reduced_basis()]
        return list(self._gb)

    def normal_form(self, f):
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring!r} vs {self.ring!r}")
        if not self.gens or f.is_zero():
            return f
        return vec_to_poly(self.ring, self.engine().reduce(poly_to_vec(f)))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def lead_exponents(self):
        return [g.leading_monomial() for g in self.groebner_basis()]

    def lift(self, f):
        """Cofactors ``c`` with ``f == sum(c_i * gens[i])``, or None if f not in I."""
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring!r} vs {self.ring!r}")
        k = len(self.gens)
        ring = self.ring
        degs = [0] + [g.degree() for g in self.gens]
        order = TermOrder(ring.weights, degs, blocks=[1] + [0] * k)
        eng = GroebnerBasis(ring.field, order)
        for i, g in enumerate(self.gens):
            v = poly_to_vec(g)
            v[(i + 1, ring.zero_exp)] = ring.field.one
            eng.add(v)
        eng.complete()
        r = eng.reduce(poly_to_vec(f))
        if any(c == 0 for c, _ in r):
            return None
        fld = ring.field
        cof = [dict() for _ in range(k)]
        for (c, e), v in r.items():
            cof[c - 1][e] = fld.reduce(-v)
        return [ring.poly(t) for t in cof]

    # -- ideal operations ----------------------------------------------
    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)


def ideal_sum(I, J):
    if I.ring != J.ring:
        raise RingMismatchError("ideal_sum across different rings")
    return HomogeneousIdeal(I.ring, I.gens + J.gens)


def ideal_product(I, J):
    if I.ring != J.ring:
        raise RingMismatchError("ideal_product across different rings")
    return HomogeneousIdeal(I.ring, [f * g for f in I.gens for g in J.gens])


def elimination(ideal, variables):
    """Generators of ``ideal`` intersected with the subring without ``variables``.

    The result lives in the subring on the kept variables.
    """
    ring = ideal.ring
    drop = set()
    for v in variables:
        drop.add(ring.index(v))
    kept = [n for i, n in enumerate(ring.names) if i not in drop]
    sub = ring.subring(kept)
    if not drop:
        return HomogeneousIdeal(sub, [g.to_ring(sub) for g in ideal.gens])
    mask = [1 if i in drop else 0 for i in range(ring.nvars)]
    order = TermOrder(ring.weights, elim=mask)
    eng = GroebnerBasis(ring.field, order, product_criterion=True)
    for g in ideal.gens:
        eng.add(poly_to_vec(g))
    out = []
    for v in eng.reduced_basis():
        if all(not any(e[i] for i in drop) for (_, e) in v):
            p = vec_to_poly(ring, v)
            idx = [i for i in range(ring.nvars) if i not in drop]
            out.append(sub.poly({tuple(e[i] for i in idx): c for e, c in p.terms.items()}))
    return HomogeneousIdeal(sub, out)


def minimalize_generators(ideal, base=None):
    """Minimal homogeneous generating set of ``ideal`` and its size mu.

    With ``base`` (an ideal of the same ring) the minimal generators are
    those of ``(ideal + base) / base``, i.e. of the image of ``ideal`` in the
    quotient ring by ``base``.
    """
    ring = ideal.ring
    order = TermOrder(ring.weights)
    eng = GroebnerBasis(ring.field, order, product_criterion=True)
    if base is not None and base.gens:
        if base.ring != ring:
            raise RingMismatchError("base ideal lives in another ring")
        eng.add_basis([poly_to_vec(g) for g in base.groebner_basis()])
    gens = sorted(ideal.gens, key=lambda g: g.degree())
    kept = []
    for g in gens:
        d = g.degree()
        eng.complete(d)
        r = eng.reduce(poly_to_vec(g))
        if r:
            kept.append(vec_to_poly(ring, r))
            eng.add(r)
            eng.complete(d)
    return kept, len(kept)


class GradedAlgebra:
    """Quotient ``S / J`` of a weighted polynomial ring by a homogeneous ideal.

    Stands in for the local ring obtained by localizing at the irrelevant
    maximal ideal.  Linear generators in ``J`` are allowed.
    """

    def __init__(self, ring, ideal=None):
        if isinstance(ideal, HomogeneousIdeal):
            if ideal.ring != ring:
                raise RingMismatchError("defining ideal lives in another ring")
        else:
            ideal = HomogeneousIdeal(ring, ideal or ())
        self.ring = ring
        self.ideal = ideal
        self._cache = {}
        self._lock = threading.RLock()

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self):
        return self.ring.nvars

    def __repr__(self):
        gens = ", ".join(map(str, self.ideal.gens))
        return f"GradedAlgebra({self.ring!r} / ({gens}))"

    def __eq__(self, other):
        """Structural equality: same ring and same defining generators."""
        return (
            isinstance(other, GradedAlgebra)
            and self.ring == other.ring
            and self.ideal.gens == other.ideal.gens
        )

    def __hash__(self):
        return hash((self.ring, self.ideal.gens))

    def same_quotient(self, other):
        return self.ring == other.ring and self.ideal == other.ideal

    def cached(self, key, compute):
        """Memoize ``compute()`` under ``key`` for this algebra."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
            return self._cache[key]

    def reduce(self, f):
        return self.ideal.normal_form(f)

    def quotient(self, elements):
        """``self / (elements)`` presented over the same polynomial ring."""
        return GradedAlgebra(self.ring, HomogeneousIdeal(self.ring, self.ideal.gens + tuple(elements)))

    def is_zero_ring(self):
        return False  # generators have positive degree, so 1 is never in J

    def absorb_linear(self):
        """Isomorphic presentation whose defining ideal lies in m^2.

        Returns ``(algebra, substitution)`` where ``substitution[i]`` is the
        image of the i-th original variable in the new ring.
        """
        return self.cached("absorb", self._absorb)

    def _absorb(self):
        ring = self.ring
        fld = ring.field
        names = list(ring.names)
        images = {n: ring.var(n) for n in names}
        gens = [g for g in self.ideal.gens]
        current = ring
        cur_gens = list(gens)
        removed = []
        while True:
            pivot = None
            for g in cur_gens:
                for e, c in g.terms.items():
                    if sum(e) == 1:
                        pivot = (g, e.index(1), c)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            g, i, c = pivot
            xi = current.var(i)
            # x_i = -(g - c*x_i)/c
            expr = (g - xi * c) * fld.reduce(-fld.inv(c))
            subs = [current.var(j) for j in range(current.nvars)]
            subs[i] = expr
            keep = [n for j, n in enumerate(current.names) if j != i]
            new_ring = current.subring(keep)
            idx_map = {j: k for k, j in enumerate(j for j in range(current.nvars) if j != i)}

            def move(p, subs=subs, new_ring=new_ring, idx_map=idx_map, current=current):
                q = p.substitute(subs, ring=current)
                out = {}
                for e, cc in q.terms.items():
                    out[tuple(e[j] for j in sorted(idx_map))] = cc
                return new_ring.poly(out)

            cur_gens = [move(h) for h in cur_gens if h is not g]
            cur_gens = [h for h in cur_gens if not h.is_zero()]
            for n in images:
                images[n] = move(images[n].to_ring(current) if images[n].ring != current else images[n])
            removed.append(current.names[i])
            current = new_ring
        absorbed = GradedAlgebra(current, HomogeneousIdeal(current, cur_gens))
        subst = [images[n] for n in names]
        return absorbed, subst
