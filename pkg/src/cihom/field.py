"""Exact coefficient fields: the rationals and prime fields Z/p."""

from fractions import Fraction
from numbers import Rational

_MAX_PRIME = 2**31


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """A coefficient field, identified by its characteristic.

    Elements are plain Python values: :class:`fractions.Fraction` over the
    rationals (always reduced, positive denominator) and ``int`` in
    ``[0, p)`` over Z/p.  Ring operations ``+ - *`` can be applied to raw
    elements directly as long as the result is passed through
    :meth:`reduce`.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)
        if characteristic != 0:
            if not _is_prime(characteristic) or characteristic >= _MAX_PRIME:
                raise ValueError(
                    f"characteristic must be 0 or a prime below 2^31, got {characteristic}"
                )
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def name(self):
        """Name as written in a ring file (``Q`` or ``Fp <p>``)."""
        return "Q" if self.characteristic == 0 else f"Fp {self.characteristic}"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, int):
            return value % p
        if isinstance(value, Rational):
            num, den = value.numerator, value.denominator
            if den % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return num * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def reduce(self, value):
        """Normalize the result of raw arithmetic on field elements."""
        if self.characteristic:
            return value % self.characteristic
        return value

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def neg(self, a):
        return self.reduce(-a)

    def to_str(self, a):
        if self.characteristic:
            return str(int(a))
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


QQ = Field(0)


def GF(p):
    return Field(p)
