"""Hilbert series of graded quotients, computed from monomial lead-term ideals."""

from __future__ import annotations

from functools import lru_cache

from .poly import mono_degree, mono_div, mono_divides, mono_lcm


def _minimal_monomials(monos):
    monos = sorted(set(monos), key=lambda e: (sum(e), e))
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


def _padd(a, b, sign=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k + shift, 0) + sign * v
        if nv:
            out[k + shift] = nv
        else:
            out.pop(k + shift, None)
    return out


def _pmul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=65536)
def _numerator(gens, weights):
    if not gens:
        return ((0, 1),)
    n = len(weights)
    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    pivot = max(range(n), key=lambda i: counts[i])
    if counts[pivot] <= 1:
        # pairwise coprime generators: a regular sequence of monomials
        out = {0: 1}
        for g in gens:
            out = _pmul(out, {0: 1, mono_degree(g, weights): -1})
        return tuple(sorted(out.items()))
    xi = tuple(1 if i == pivot else 0 for i in range(n))
    plus = _minimal_monomials(list(gens) + [xi])
    colon = _minimal_monomials([mono_div(mono_lcm(g, xi), xi) for g in gens])
    a = dict(_numerator(plus, weights))
    b = dict(_numerator(colon, weights))
    out = _padd(a, b, 1, weights[pivot])
    return tuple(sorted(out.items()))


def monomial_numerator(monos, weights):
    """Numerator N(t) with HS(S/(monos)) = N(t) / prod(1 - t^w)."""
    return dict(_numerator(_minimal_monomials(monos), tuple(weights)))


class HilbertSeries:
    """Rational function ``numerator(t) / prod_i (1 - t^{w_i})``.

    ``numerator`` maps powers of t (possibly negative, for shifted modules)
    to integer coefficients.
    """

    def __init__(self, numerator, weights):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.weights = tuple(weights)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        if self.weights == other.weights:
            return self.numerator == other.numerator
        lo = min(self.min_degree(), other.min_degree())
        hi = lo + 40
        return self.coefficients(hi) == other.coefficients(hi)

    def __repr__(self):
        return f"HilbertSeries({self.numerator_str()} / {self.denominator_str()})"

    def numerator_str(self):
        if not self.numerator:
            return "0"
        parts = []
        for k in sorted(self.numerator):
            parts.append(f"{self.numerator[k]:+d}*t^{k}")
        return " ".join(parts)

    def denominator_str(self):
        return "*".join(f"(1-t^{w})" for w in self.weights) or "1"

    def min_degree(self):
        return min(self.numerator) if self.numerator else 0

    def is_zero(self):
        return not self.numerator

    def _ring_counts(self, upto):
        counts = [0] * (upto + 1)
        if upto < 0:
            return counts
        counts[0] = 1
        for w in self.weights:
            for d in range(w, upto + 1):
                counts[d] += counts[d - w]
        return counts

    def coefficients(self, upto):
        """Dict degree -> dimension for degrees from the lowest shift to ``upto``."""
        lo = self.min_degree()
        span = upto - lo
        counts = self._ring_counts(span)
        out = {}
        for d in range(lo, upto + 1):
            s = 0
            for k, v in self.numerator.items():
                if 0 <= d - k <= span:
                    s += v * counts[d - k]
            out[d] = s
        return out

    def coefficient(self, d):
        return self.coefficients(d).get(d, 0)

    def dimension(self):
        """Krull dimension = order of the pole at t = 1 (-1 for the zero module)."""
        if not self.numerator:
            return -1
        lo = self.min_degree()
        poly = [0] * (max(self.numerator) - lo + 1)
        for k, v in self.numerator.items():
            poly[k - lo] = v
        order = 0
        while sum(poly) == 0:
            # divide by (t - 1): synthetic division
            q = []
            acc = 0
            for c in reversed(poly):
                acc = acc + c
                q.append(acc)
            q = list(reversed(q))[1:]
            poly = q
            order += 1
        return len(self.weights) - order

    def total_dimension(self):
        """Sum of all coefficients; finite only when the series is a polynomial."""
        if self.dimension() > 0:
            raise ValueError("module has positive dimension; total dimension is infinite")
        lo = self.min_degree()
        hi = max(self.numerator) if self.numerator else 0
        return sum(self.coefficients(hi + sum(self.weights)).values())
