"""Exact sparse multivariate polynomials over Z, Q and prime fields.

All generators carry an even topological degree.  The generators ``u``, ``y``
and ``x`` sit in degree 2; Chern symbols ``c[k]`` sit in degree ``2k`` and the
block invariants ``z[j,k]`` in twice their polynomial degree.  Internally a
variable stores its *weight* (half its topological degree).

Polynomials are immutable: every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InhomogeneousSubstitution, RingMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Z", "Q" or "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"PrimeField requires a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"ring {self.kind} takes no modulus")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def inverts(self, prime: int) -> bool:
        """True iff ``prime`` is a unit of this ring."""
        if self.kind == "Q":
            return True
        if self.kind == "Z":
            return False
        return prime != self.p

    def coerce(self, c) -> int | Fraction:
        if self.kind == "Z":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return int(c.numerator)
            return int(c)
        if self.kind == "Q":
            return Fraction(c)
        c = Fraction(c)
        return (c.numerator * pow(c.denominator, -1, self.p)) % self.p

    @property
    def tag(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    def __str__(self):
        return {"Z": "ZZ", "Q": "QQ"}.get(self.kind, f"GF({self.p})")


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("Fp", p)


def parse_ring(tag: str) -> CoefficientRing:
    """Parse ``Z``, ``Q`` or ``Fp:<p>``."""
    tag = tag.strip()
    if tag in ("Z", "Q"):
        return CoefficientRing(tag)
    if tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise ValueError(f"bad prime in ring tag {tag!r}") from None
        return GF(p)
    raise ValueError(f"unknown ring tag {tag!r}")


# ---------------------------------------------------------------------------
# variables and monomials

_FAMILY_RANK = {"c": 0, "z": 1, "y": 2, "u": 3, "x": 4}


@dataclass(frozen=True)
class Variable:
    """A generator.  ``stage`` is 0 for the stage-free symbols ``c`` and ``x``."""

    family: str
    stage: int
    index: int
    weight: int = 1

    def __post_init__(self):
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.weight < 1:
            raise ValueError("variable weight must be positive")

    @property
    def degree(self) -> int:
        return 2 * self.weight

    @property
    def rank(self) -> tuple[int, int, int]:
        # larger rank = larger variable; u[1,1] > u[1,2] > u[2,1]
        return (_FAMILY_RANK[self.family], -self.stage, -self.index)

    def __lt__(self, other: "Variable") -> bool:
        return self.rank < other.rank

    @property
    def token(self) -> str:
        if self.family == "c":
            return f"c[{self.index}]"
        if self.family == "x":
            return "x" if self.index == 0 else f"x[{self.index}]"
        return f"{self.family}[{self.stage},{self.index}]"

    def __str__(self):
        return self.token

    def __repr__(self):
        return self.token


def u(j: int, k: int) -> Variable:
    return Variable("u", j, k)


def y(j: int, k: int) -> Variable:
    return Variable("y", j, k)


def z(j: int, k: int, weight: int) -> Variable:
    return Variable("z", j, k, weight)


def c(k: int) -> Variable:
    return Variable("c", 0, k, k)


def x(k: int = 0) -> Variable:
    return Variable("x", 0, k)


# A monomial is a tuple of (Variable, exponent) pairs, biggest variable first,
# with no zero exponents.
Monomial = tuple

ONE: Monomial = ()


def monomial(exps: Mapping[Variable, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: t[0].rank, reverse=True))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return monomial(d)


def mono_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m)


def mono_degree(m: Monomial) -> int:
    """Topological degree."""
    return 2 * mono_weight(m)


_SENTINEL = ((10**9,), 0)


def mono_key(m: Monomial):
    """Sort key for weighted graded reverse lexicographic order (bigger key = bigger monomial)."""
    asc = tuple((v.rank, -e) for v, e in reversed(m))
    return (mono_weight(m), asc + (_SENTINEL,))


def render_monomial(m: Monomial) -> str:
    return "*".join(v.token if e == 1 else f"{v.token}^{e}" for v, e in m)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True, eq=False)
class Polynomial:
    ring: CoefficientRing
    terms: Mapping[Monomial, object] = field(default_factory=dict)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_terms(cls, ring: CoefficientRing, items: Iterable[tuple[Monomial, object]]) -> "Polynomial":
        acc: dict = {}
        for m, co in items:
            acc[m] = acc.get(m, 0) + co
        return cls._canonical(ring, acc)

    @classmethod
    def _canonical(cls, ring, acc: dict) -> "Polynomial":
        out = {}
        for m, co in acc.items():
            co = ring.coerce(co)
            if co:
                out[m] = co
        return cls(ring, out)

    @classmethod
    def const(cls, ring: CoefficientRing, value) -> "Polynomial":
        return cls._canonical(ring, {ONE: value})

    @classmethod
    def var(cls, ring: CoefficientRing, v: Variable, coeff=1) -> "Polynomial":
        return cls._canonical(ring, {((v, 1),): coeff})

    @classmethod
    def zero(cls, ring: CoefficientRing) -> "Polynomial":
        return cls(ring, {})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> set[Variable]:
        return {v for m in self.terms for v, _ in m}

    def degrees(self) -> set[int]:
        """Topological degrees of the terms."""
        return {mono_degree(m) for m in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self.ring, {m: co for m, co in self.terms.items() if mono_degree(m) == degree})

    def homogeneous_components(self) -> list["Polynomial"]:
        return [self.homogeneous_part(d) for d in sorted(self.degrees())]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, object]:
        return max(self.terms.items(), key=lambda t: mono_key(t[0]))

    def coefficient(self, m: Monomial):
        return self.terms.get(m, 0)

    def constant_term(self):
        return self.terms.get(ONE, 0)

    def is_linear_form(self) -> bool:
        return all(mono_weight(m) == 1 for m in self.terms)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.const(self.ring, other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        acc = dict(self.terms)
        for m, co in other.terms.items():
            acc[m] = acc.get(m, 0) + co
        return Polynomial._canonical(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._canonical(self.ring, {m: -co for m, co in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial._canonical(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and dict(self.terms) == dict(other.terms)
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.const(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient is 1 (fields only)."""
        if not self.terms:
            return self
        lc = self.leading_term()[1]
        if self.ring.kind == "Fp":
            inv = pow(lc, -1, self.ring.p)
            return Polynomial._canonical(self.ring, {m: co * inv for m, co in self.terms.items()})
        return Polynomial._canonical(self.ring, {m: Fraction(co) / lc for m, co in self.terms.items()})

    def primitive(self) -> "Polynomial":
        """Over Z: divide out the content and make the leading coefficient positive."""
        if not self.terms or self.ring.kind != "Z":
            return self
        from math import gcd

        g = 0
        for co in self.terms.values():
            g = gcd(g, co)
        if self.leading_term()[1] < 0:
            g = -g
        return Polynomial(self.ring, {m: co // g for m, co in self.terms.items()})

    # -- rendering ----------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, co) in enumerate(self.sorted_terms()):
            neg = co < 0 if self.ring.kind != "Fp" else False
            mag = -co if neg else co
            body = render_monomial(m)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if i == 0:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f" - {text}" if neg else f" + {text}")
        return "".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.ring}, {self.render()})"


# ---------------------------------------------------------------------------
# spec-level operations


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


def substitute(p: Polynomial, mapping: Mapping[Variable, Polynomial]) -> Polynomial:
    """Simultaneous substitution of variables by polynomials.

    Each image must be homogeneous of the same degree as the variable it
    replaces (so degree-2 generators go to linear forms with no constant
    term); variables absent from ``mapping`` are fixed.
    """
    for v, img in mapping.items():
        if img.ring != p.ring:
            raise RingMismatch(f"substitution value for {v} lives over {img.ring}, not {p.ring}")
        if img.terms and img.degrees() != {v.degree}:
            raise InhomogeneousSubstitution(
                f"image of {v} must be homogeneous of degree {v.degree}, got {img.render()}"
            )
    ring = p.ring
    powers: dict[tuple[Variable, int], Polynomial] = {}

    def power(v: Variable, e: int) -> Polynomial:
        key = (v, e)
        if key not in powers:
            powers[key] = mapping[v] if e == 1 else power(v, e - 1) * mapping[v]
        return powers[key]

    acc: dict = {}
    for m, co in p.terms.items():
        fixed = []
        term = None
        for v, e in m:
            if v in mapping:
                f = power(v, e)
                term = f if term is None else term * f
            else:
                fixed.append((v, e))
        fixed_m = tuple(fixed)
        if term is None:
            acc[fixed_m] = acc.get(fixed_m, 0) + co
            continue
        for m2, c2 in term.terms.items():
            mm = mono_mul(fixed_m, m2)
            acc[mm] = acc.get(mm, 0) + co * c2
    return Polynomial._canonical(ring, acc)


def elementary_symmetric(k: int, forms: list[Polynomial], ring: CoefficientRing | None = None) -> Polynomial:
    """e_k of the given forms; e_0 = 1."""
    if not 0 <= k <= len(forms):
        raise ValueError(f"k={k} out of range for {len(forms)} forms")
    if ring is None:
        if not forms:
            raise ValueError("ring required for an empty list of forms")
        ring = forms[0].ring
    # e_k via the recurrence on prefixes: E_i(t) = E_{i-1}(t) (1 + f_i t)
    es = [Polynomial.const(ring, 1)] + [Polynomial.zero(ring)] * k
    for f in forms:
        for j in range(k, 0, -1):
            es[j] = es[j] + es[j - 1] * f
    return es[k]


def elementary_symmetric_all(forms: list[Polynomial], ring: CoefficientRing) -> list[Polynomial]:
    """[e_1, ..., e_n] of the forms."""
    n = len(forms)
    es = [Polynomial.const(ring, 1)] + [Polynomial.zero(ring)] * n
    for f in forms:
        for j in range(n, 0, -1):
            es[j] = es[j] + es[j - 1] * f
    return es[1:]


def elementary_symmetric_bruteforce(k: int, forms: list[Polynomial], ring: CoefficientRing) -> Polynomial:
    """Sum over k-subsets; kept as an independent check of :func:`elementary_symmetric`."""
    total = Polynomial.zero(ring)
    for subset in combinations(forms, k):
        prod = Polynomial.const(ring, 1)
        for f in subset:
            prod = prod * f
        total = total + prod
    return total


def reduce_coefficients(p: Polynomial, target: CoefficientRing) -> Polynomial:
    """Coefficient-wise image of an integer polynomial in Q or F_p."""
    if p.ring == target:
        return p
    if p.ring.kind == "Fp" and target.kind == "Fp" and p.ring.p != target.p:
        raise RingMismatch(f"cannot map {p.ring} to {target}")
    if p.ring.kind == "Q" and target.kind == "Z":
        raise RingMismatch("cannot map QQ to ZZ")
    return Polynomial._canonical(target, dict(p.terms))


def linear_form(ring: CoefficientRing, coeffs: Iterable[int], variables: Iterable[Variable]) -> Polynomial:
    return Polynomial.from_terms(ring, [(((v, 1),), a) for a, v in zip(coeffs, variables) if a])


def variables_of(polys: Iterable[Polynomial]) -> set[Variable]:
    out: set[Variable] = set()
    for p in polys:
        out |= p.variables()
    return out


# -- machine-readable form ---------------------------------------------------


def poly_to_data(p: Polynomial) -> list:
    return [[str(co), [[v.token, e] for v, e in m]] for m, co in p.sorted_terms()]


def parse_token(token: str, weights: Mapping[str, int] | None = None) -> Variable:
    """Inverse of :attr:`Variable.token`; ``weights`` supplies z-variable weights."""
    if token == "x":
        return x()
    fam = token[0]
    inner = token[2:-1] if token[1:2] == "[" and token.endswith("]") else None
    if inner is None:
        raise ValueError(f"bad variable token {token!r}")
    parts = [int(s) for s in inner.split(",")]
    if fam == "c" and len(parts) == 1:
        return c(parts[0])
    if fam == "x" and len(parts) == 1:
        return x(parts[0])
    if fam in ("u", "y") and len(parts) == 2:
        return Variable(fam, parts[0], parts[1])
    if fam == "z" and len(parts) == 2:
        w = (weights or {}).get(token)
        if w is None:
            raise ValueError(f"weight of {token} unknown")
        return z(parts[0], parts[1], w)
    raise ValueError(f"bad variable token {token!r}")


def poly_from_data(ring: CoefficientRing, data: list, weights: Mapping[str, int] | None = None) -> Polynomial:
    items = []
    for co, mono in data:
        m = monomial({parse_token(t, weights): e for t, e in mono})
        items.append((m, Fraction(co)))
    return Polynomial.from_terms(ring, items)
