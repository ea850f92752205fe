"""Exact Bernoulli numbers and polynomials over the rationals.

Convention fixed by the generating function t*e^(t*x)/(e^t - 1): the
linear coefficient is B_1 = -1/2.  Numbers come from the recurrence
sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1; polynomial coefficients from
B_n(x) = sum_j C(n, j) B_j x^(n-j).
"""

from __future__ import annotations

from math import comb

from gmpy2 import mpq

from .exactnum import RationalLike

__all__ = ["BernCache", "bern_number", "bern_poly", "bern_poly_eval"]


class BernCache:
    """Grow-only cache of Bernoulli numbers and polynomial coefficients.

    Precomputes numbers up to `limit` at construction (all downstream
    sums need index <= 2m, so the default 64 covers m <= 32); extends
    transparently if a larger index is requested.  Read-only after the
    extension that covers a given index, hence safe to share.
    """

    def __init__(self, limit: int = 64) -> None:
        self._numbers: list[mpq] = [mpq(1)]
        self._polys: dict[int, tuple[mpq, ...]] = {}
        self._extend(limit)

    def _extend(self, n: int) -> None:
        for m in range(len(self._numbers), n + 1):
            if m % 2 == 1 and m >= 3:
                self._numbers.append(mpq(0))
                continue
            acc = mpq(0)
            for j in range(m):
                acc += comb(m + 1, j) * self._numbers[j]
            self._numbers.append(-acc / (m + 1))

    def number(self, n: int) -> mpq:
        """B_n, exactly."""
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        if n >= len(self._numbers):
            self._extend(n)
        return self._numbers[n]

    def poly(self, n: int) -> tuple[mpq, ...]:
        """Coefficients of B_n(x), constant term first (degree n, monic)."""
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        cached = self._polys.get(n)
        if cached is None:
            self.number(n)
            cached = tuple(
                comb(n, i) * self._numbers[n - i] for i in range(n + 1)
            )
            self._polys[n] = cached
        return cached

    def eval(self, n: int, x: RationalLike) -> mpq:
        """B_n(x) at a rational point, by Horner evaluation."""
        coeffs = self.poly(n)
        xq = mpq(x)
        acc = mpq(0)
        for c in reversed(coeffs):
            acc = acc * xq + c
        return acc


_DEFAULT = BernCache()


def bern_number(n: int) -> mpq:
    """B_n from the shared default cache."""
    return _DEFAULT.number(n)


def bern_poly(n: int) -> tuple[mpq, ...]:
    """Coefficients of B_n(x) (constant first) from the shared default cache."""
    return _DEFAULT.poly(n)


def bern_poly_eval(n: int, x: RationalLike) -> mpq:
    """B_n(x) at a rational point from the shared default cache."""
    return _DEFAULT.eval(n, x)
