"""Graded generating functions in one variable ``t`` (t counts topological degree).

A series is stored as ``numerator / prod_d (1 - t^d)``; the numerator is a
dense integer coefficient list.  Ordinary cohomology gives a polynomial,
equivariant cohomology a rational function with ``(1 - t^2)`` denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _trim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def int_poly_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[tuple, tuple]:
    """Polynomial long division over Q; returns (quotient, remainder) as Fractions."""
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = [Fraction(v) for v in _trim(a)]
    q = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        q[shift] = factor
        for i, bi in enumerate(b):
            rem[shift + i] -= factor * bi
        rem = list(_trim(rem))
    return _trim(q), _trim(rem)


def int_poly_exact_div(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...] | None:
    """``a / b`` if it is exact with integer coefficients, else None."""
    q, r = int_poly_divmod(a, b)
    if r or any(v.denominator != 1 for v in q):
        return None
    return tuple(int(v) for v in q)


def _one_minus(d: int) -> tuple[int, ...]:
    out = [0] * (d + 1)
    out[0] = 1
    out[d] -= 1
    return tuple(out)


@dataclass(frozen=True)
class GradedSeries:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...] = ()

    @classmethod
    def polynomial(cls, coeffs: Sequence[int] | dict) -> "GradedSeries":
        if isinstance(coeffs, dict):
            dense = [0] * (max(coeffs, default=-1) + 1)
            for d, v in coeffs.items():
                dense[d] += v
            coeffs = dense
        return cls(_trim(coeffs), ())

    @classmethod
    def one(cls) -> "GradedSeries":
        return cls((1,), ())

    @classmethod
    def geometric_sum(cls, n: int, step: int = 2) -> "GradedSeries":
        """1 + t^step + ... + t^(step*(n-1))."""
        out = [0] * (step * (n - 1) + 1)
        for i in range(n):
            out[step * i] = 1
        return cls(tuple(out), ())

    def normalized(self) -> "GradedSeries":
        num = self.numerator
        kept = []
        for d in sorted(self.denominator, reverse=True):
            q = int_poly_exact_div(num, _one_minus(d)) if num else ()
            if q is None:
                kept.append(d)
            else:
                num = q
        return GradedSeries(_trim(num), tuple(sorted(kept)))

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        return GradedSeries(
            int_poly_mul(self.numerator, other.numerator),
            tuple(sorted(self.denominator + other.denominator)),
        ).normalized()

    def times_one_minus(self, d: int, k: int = 1) -> "GradedSeries":
        """Multiply by ``(1 - t^d)^k``."""
        num = self.numerator
        den = list(self.denominator)
        for _ in range(k):
            if d in den:
                den.remove(d)
            else:
                num = int_poly_mul(num, _one_minus(d))
        return GradedSeries(num, tuple(sorted(den))).normalized()

    def divided_by(self, other: "GradedSeries") -> "GradedSeries":
        """Exact quotient of two polynomial series; raises ValueError if inexact."""
        if self.denominator or other.denominator:
            raise ValueError("divided_by expects polynomial series")
        q = int_poly_exact_div(self.numerator, other.numerator)
        if q is None:
            raise ValueError("division is not exact")
        return GradedSeries(q, ())

    @property
    def is_polynomial(self) -> bool:
        return not self.normalized().denominator

    def coefficients(self) -> tuple[int, ...]:
        s = self.normalized()
        if s.denominator:
            raise ValueError("series is not a polynomial")
        return s.numerator

    def expand(self, max_degree: int) -> list[int]:
        """Power-series coefficients in degrees 0..max_degree."""
        out = [0] * (max_degree + 1)
        for i, v in enumerate(self.numerator[: max_degree + 1]):
            out[i] = v
        for d in self.denominator:
            # multiply by 1/(1 - t^d)
            for i in range(d, max_degree + 1):
                out[i] += out[i - d]
        return out

    def first_difference(self, other: "GradedSeries", max_degree: int | None = None) -> int | None:
        """Lowest degree where the two series differ, or None if equal."""
        if self == other:
            return None
        if max_degree is None:
            max_degree = max(len(self.numerator), len(other.numerator)) + sum(self.denominator) + sum(other.denominator) + 2
        a, b = self.expand(max_degree), other.expand(max_degree)
        for i, (p, q) in enumerate(zip(a, b)):
            if p != q:
                return i
        return max_degree + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        lhs = self.numerator
        for d in other.denominator:
            lhs = int_poly_mul(lhs, _one_minus(d))
        rhs = other.numerator
        for d in self.denominator:
            rhs = int_poly_mul(rhs, _one_minus(d))
        return _trim(lhs) == _trim(rhs)

    def __hash__(self):
        s = self.normalized()
        return hash((s.numerator, s.denominator))

    def at_one(self) -> int:
        return sum(self.coefficients())

    def is_palindromic(self) -> bool:
        c = self.coefficients()
        return c == c[::-1]

    def top_degree(self) -> int:
        return len(self.coefficients()) - 1

    # -- rendering ----------------------------------------------------------
    @staticmethod
    def _render_poly(coeffs: Sequence[int]) -> str:
        parts = []
        for d, v in enumerate(coeffs):
            if not v:
                continue
            mag = abs(v)
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            if not parts:
                parts.append(f"-{body}" if v < 0 else body)
            else:
                parts.append(f" - {body}" if v < 0 else f" + {body}")
        return "".join(parts) or "0"

    def render(self) -> str:
        s = self.normalized()
        num = self._render_poly(s.numerator)
        if not s.denominator:
            return num
        factors = []
        for d in sorted(set(s.denominator)):
            k = s.denominator.count(d)
            f = f"(1 - t^{d})"
            factors.append(f if k == 1 else f"{f}^{k}")
        den = " ".join(factors)
        if len(factors) > 1:
            den = f"({den})"
        return f"({num})/{den}"

    def __str__(self):
        return self.render()

    def to_data(self) -> dict:
        s = self.normalized()
        return {"numerator": list(s.numerator), "denominator": list(s.denominator), "text": s.render()}

    @classmethod
    def from_data(cls, data: dict) -> "GradedSeries":
        return cls(tuple(data["numerator"]), tuple(data["denominator"]))


def product(series: Iterable[GradedSeries]) -> GradedSeries:
    out = GradedSeries.one()
    for s in series:
        out = out * s
    return out
