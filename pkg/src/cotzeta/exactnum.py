"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

The scalar of all exact computation is :data:`Rational` (``gmpy2.mpq``):
arbitrary precision, always canonical (positive denominator, gcd 1).
High-precision floats are ``gmpy2.mpfr`` values, which carry their own
precision and round to nearest-even; :func:`workprec` scopes the working
precision of a block of operations.

:class:`QuadElem` represents a + b*sqrt(d) under the real embedding
sqrt(d) > 0, with d squarefree >= 2.  Ordering, floor and fractional part
are decided by exact integer comparisons, never by floating point: these
feed exact identities downstream, where any rounding would be fatal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

__all__ = [
    "Rational",
    "RationalLike",
    "QuadElem",
    "quad_make",
    "sqrt_of",
    "squarefree_split",
    "workprec",
    "to_real",
]

Rational = mpq
RationalLike = Union[int, Fraction, mpq]

# d values already certified squarefree (cheap re-validation in hot loops)
_SQUAREFREE_OK: set[int] = set()


def workprec(bits: int) -> gmpy2.context:
    """Context manager setting the mpfr working precision in bits."""
    if bits < 2:
        raise ValueError(f"precision must be >= 2 bits, got {bits}")
    return gmpy2.context(precision=bits)


def squarefree_split(n: int) -> tuple[int, int]:
    """Split n >= 1 as n = s * f**2 with s squarefree; return (s, f)."""
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    s, f = 1, 1
    n = int(n)
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * n, f


def _is_squarefree(d: int) -> bool:
    if d in _SQUAREFREE_OK:
        return True
    s, f = squarefree_split(d)
    if f == 1:
        _SQUAREFREE_OK.add(d)
        return True
    return False


class QuadElem:
    """An element a + b*sqrt(d) of Q(sqrt(d)), d squarefree >= 2.

    Values are immutable; all operations are pure and exact.  Elements
    over different d do not mix (a rational element keeps its d).  Plain
    ints, Fractions and mpq values coerce into the element's own field.
    """

    __slots__ = ("_d", "_a", "_b")

    def __init__(self, d: int, a: RationalLike = 0, b: RationalLike = 0) -> None:
        d = int(d)
        if d < 2 or not _is_squarefree(d):
            raise ValueError(f"d must be squarefree and >= 2, got {d}")
        self._d = d
        self._a = mpq(a)
        self._b = mpq(b)

    # -- basic accessors ---------------------------------------------------

    @property
    def d(self) -> int:
        return self._d

    @property
    def a(self) -> mpq:
        return self._a

    @property
    def b(self) -> mpq:
        return self._b

    def is_rational(self) -> bool:
        return self._b == 0

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __repr__(self) -> str:
        return f"QuadElem(d={self._d}, a={self._a}, b={self._b})"

    def __str__(self) -> str:
        return f"{self._a} + {self._b}*sqrt({self._d})"

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._d, self._a, self._b))

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other: object) -> "QuadElem | None":
        if isinstance(other, QuadElem):
            if other._d != self._d:
                raise ValueError(
                    f"cannot mix Q(sqrt({self._d})) and Q(sqrt({other._d}))"
                )
            return other
        if isinstance(other, (int, Fraction, mpq, mpz)):
            return QuadElem(self._d, mpq(other), 0)
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self._d, self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self._d, self._a - o._a, self._b - o._b)

    def __rsub__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QuadElem":
        return QuadElem(self._d, -self._a, -self._b)

    def __mul__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(
            self._d,
            self._a * o._a + self._b * o._b * self._d,
            self._a * o._b + self._b * o._a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QuadElem":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "QuadElem":
        """Exact inverse via (a + b*sqrt(d))^-1 = (a - b*sqrt(d)) / (a^2 - b^2 d)."""
        n = self._a * self._a - self._b * self._b * self._d
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadElem(self._d, self._a / n, -self._b / n)

    def __pow__(self, e: int) -> "QuadElem":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadElem(self._d, 1, 0)
        base = self
        n = e
        while n > 0:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- conjugation and norm ----------------------------------------------

    def conj(self) -> "QuadElem":
        """Image under the Galois involution sqrt(d) -> -sqrt(d)."""
        return QuadElem(self._d, self._a, -self._b)

    def norm(self) -> mpq:
        """Field norm x * conj(x), a rational number."""
        return self._a * self._a - self._b * self._b * self._d

    # -- exact ordering ------------------------------------------------------

    def sign(self) -> int:
        """Exact sign under the real embedding, by integer comparison only."""
        a, b = self._a, self._b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d; equality is impossible
        # because sqrt(d) is irrational and b != 0
        aa = a * a
        bb = b * b * self._d
        if a > 0:  # b < 0: positive iff a > |b| sqrt(d)
            return 1 if aa > bb else -1
        return 1 if bb > aa else -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadElem):
            if other._d == self._d:
                return self._a == other._a and self._b == other._b
            # across fields only rational values can coincide
            return self._b == 0 and other._b == 0 and self._a == other._a
        if isinstance(other, (int, Fraction, mpq, mpz)):
            return self._b == 0 and self._a == mpq(other)
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self) -> "QuadElem":
        return -self if self.sign() < 0 else self

    # -- floor / fractional part ---------------------------------------------

    def floor(self) -> int:
        """The unique integer n with n <= x < n+1, decided exactly."""
        if self._b == 0:
            return int(self._a.numerator // self._a.denominator)
        # write x = (p + r*sqrt(d)) / q with integers p, r, q > 0
        q = int(gmpy2.lcm(self._a.denominator, self._b.denominator))
        p = int(self._a * q)
        r = int(self._b * q)
        s = int(gmpy2.isqrt(r * r * self._d))
        # r>0: r*sqrt(d) in (s, s+1); r<0: in (-s-1, -s)
        n = (p + s) // q if r > 0 else (p - s - 1) // q
        # exact fix-up (at most a step or two)
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def frac(self) -> "QuadElem":
        """Fractional part x - floor(x), an exact element of [0, 1)."""
        return self - self.floor()

    def dist_nearest_int(self) -> "QuadElem":
        """Exact distance to the nearest integer, min(frac, 1 - frac)."""
        f = self.frac()
        return f if (2 * f - 1).sign() <= 0 else 1 - f

    # -- numeric conversion ---------------------------------------------------

    def to_real(self, prec: int) -> mpfr:
        """Round to an mpfr of `prec` bits with relative error <= 2^(1-prec).

        The working precision adapts to the cancellation between a and
        b*sqrt(d), so tiny values such as fractional parts {n*alpha} keep
        full relative accuracy.
        """
        if prec < 16:
            raise ValueError(f"precision must be >= 16 bits, got {prec}")
        if self._b == 0:
            with workprec(prec):
                return mpfr(self._a)
        if self._a == 0:
            with workprec(prec + 16):
                r = mpfr(self._b) * gmpy2.sqrt(mpfr(self._d))
            with workprec(prec):
                return mpfr(r)
        w = prec + 16
        while True:
            with workprec(w):
                ta = mpfr(self._a)
                tb = mpfr(self._b) * gmpy2.sqrt(mpfr(self._d))
                r = ta + tb
            if r != 0:
                cancel = max(gmpy2.get_exp(ta), gmpy2.get_exp(tb)) - gmpy2.get_exp(r)
                if cancel <= w - prec - 8:
                    with workprec(prec):
                        return mpfr(r)
                w = prec + cancel + 16
            else:
                # total cancellation at this precision; the exact value is
                # irrational, hence nonzero
                w = 2 * w + prec


def quad_make(p: int, q: int, r: int, big_d: int) -> QuadElem:
    """Build (p + q*sqrt(D)) / r canonically over the squarefree core of D.

    Square factors of D fold into the sqrt coefficient, so e.g.
    (0 + 1*sqrt(8))/1 comes back as 2*sqrt(2).
    """
    if r == 0:
        raise ValueError("denominator r must be nonzero")
    big_d = int(big_d)
    if big_d <= 1:
        raise ValueError(f"D must be > 1, got {big_d}")
    s, f = squarefree_split(big_d)
    if s == 1:
        raise ValueError(f"D must not be a perfect square, got {big_d}")
    return QuadElem(s, mpq(p, r), mpq(q * f, r))


def sqrt_of(big_d: int) -> QuadElem:
    """sqrt(D) as an exact QuadElem (D > 1 and not a perfect square)."""
    return quad_make(0, 1, 1, big_d)


def to_real(x: "QuadElem | RationalLike", prec: int) -> mpfr:
    """Convert an exact value (QuadElem or rational) to an mpfr of `prec` bits."""
    if isinstance(x, QuadElem):
        return x.to_real(prec)
    with workprec(prec):
        return mpfr(mpq(x))
