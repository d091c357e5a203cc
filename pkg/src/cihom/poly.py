"""Weighted polynomial rings and their (immutable) polynomials."""

from __future__ import annotations

from .errors import RingMismatchError
from .field import Field


def grevlex_key(exp, weights):
    """Sort key: larger key means larger monomial in weighted grevlex."""
    deg = 0
    for w, a in zip(weights, exp):
        deg += w * a
    return (deg, tuple(-a for a in reversed(exp)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial ``a`` divides monomial ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(exp, weights):
    d = 0
    for w, a in zip(weights, exp):
        d += w * a
    return d


class PolyRing:
    """Polynomial ring ``k[x_1..x_n]`` with positive integer weights.

    The monomial order is weighted degree reverse lexicographic, ties broken
    by declared variable order (the first variable is the largest).
    """

    order = "grevlex"

    def __init__(self, field, names, weights=None):
        if not isinstance(field, Field):
            raise TypeError("field must be a cihom.field.Field")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {names}")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable is required")
        if any(w < 1 for w in weights):
            raise ValueError(f"weights must be >= 1: {weights}")
        self.field = field
        self.names = names
        self.weights = weights
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def __repr__(self):
        vs = ", ".join(
            n if w == 1 else f"{n}:{w}" for n, w in zip(self.names, self.weights)
        )
        return f"PolyRing({self.field.name}[{vs}])"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    @property
    def zero_exp(self):
        return (0,) * self.nvars

    def key(self, exp):
        return grevlex_key(exp, self.weights)

    def degree_of(self, exp):
        return mono_degree(exp, self.weights)

    def poly(self, terms=None):
        """Build a polynomial from a ``{exponent: coefficient}`` mapping."""
        if not terms:
            return Polynomial(self, {})
        f = self.field
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong length for {self!r}")
            c = f(c)
            if c:
                clean[e] = f.reduce(clean.get(e, f.zero) + c)
                if not clean[e]:
                    del clean[e]
        return Polynomial(self, clean)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def var(self, name):
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        return self.poly({tuple(exp): coeff})

    def subring(self, names):
        """Ring on the given subset of variables, same field and weights."""
        idx = [self.index(n) for n in names]
        return PolyRing(self.field, [self.names[i] for i in idx], [self.weights[i] for i in idx])

    def extend(self, names, weights):
        """Ring with extra variables appended."""
        return PolyRing(self.field, self.names + tuple(names), self.weights + tuple(weights))

    def fresh_name(self, base, taken=()):
        taken = set(taken) | set(self.names)
        name = base
        k = 0
        while name in taken:
            k += 1
            name = f"{base}{k}"
        return name

    def monomials_of_degree(self, d):
        """All exponent vectors of weighted degree ``d``, in descending order."""
        out = []
        n = self.nvars
        ws = self.weights

        def rec(i, rest, acc):
            if i == n:
                if rest == 0:
                    out.append(tuple(acc))
                return
            w = ws[i]
            for a in range(rest // w, -1, -1):
                acc.append(a)
                rec(i + 1, rest - a * w, acc)
                acc.pop()

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.key, reverse=True)
        return out


class Polynomial:
    """Immutable sparse polynomial; terms kept in descending monomial order."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms):
        # ``terms`` must already be clean (no zero coefficients).
        self.ring = ring
        if len(terms) > 1:
            key = ring.key
            terms = dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))
        self._terms = terms
        self._hash = None

    # -- structure ------------------------------------------------------
    @property
    def terms(self):
        """Mapping exponent -> coefficient, in descending order."""
        return self._terms

    def items(self):
        return list(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return next(iter(self._terms))

    def leading_coefficient(self):
        if not self._terms:
            return self.ring.field.zero
        return next(iter(self._terms.values()))

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), self.ring.field.zero)

    def degrees(self):
        return {self.ring.degree_of(e) for e in self._terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Weighted degree of the leading term (``-1`` for zero)."""
        if not self._terms:
            return -1
        return max(self.degrees())

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(self.leading_monomial()))

    def variables(self):
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    def monic(self):
        if not self._terms:
            return self
        f = self.ring.field
        inv = f.inv(self.leading_coefficient())
        return Polynomial(self.ring, {e: f.reduce(c * inv) for e, c in self._terms.items()})

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = f.reduce(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.reduce(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                v = f.reduce(out.get(e, 0) + c1 * c2)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images, ring=None):
        """Replace the i-th variable by ``images[i]`` (polynomials in ``ring``)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable is required")
        if ring is None:
            ring = images[0].ring if images else self.ring
        result = ring.zero()
        cache = {}
        for e, c in self._terms.items():
            term = ring.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = images[i] ** a
                    term = term * cache[key]
            result = result + term
        return result

    def to_ring(self, ring, mapping=None):
        """Re-express in ``ring`` by variable names (or an index ``mapping``)."""
        if mapping is None:
            mapping = [ring.index(n) for n in self.ring.names]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    ne[mapping[i]] += a
            out[tuple(ne)] = c
        if ring.field != self.ring.field:
            return ring.poly({e: int(c) if ring.field.characteristic else c for e, c in out.items()})
        return Polynomial(ring, out)

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        f = self.ring.field
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(
                (n if a == 1 else f"{n}^{a}") for n, a in zip(self.ring.names, e) if a
            )
            cs = f.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Polynomial({self})"
