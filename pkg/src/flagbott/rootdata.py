"""Root data, Weyl groups and invariant tables for U(n+1), SU(n+1), Sp(n) and G2.

Coordinates
-----------
Characters of the maximal torus are integer vectors in the coordinates
``y_1, ..., y_N`` of one stage:

* ``U(n+1)`` and ``SU(n+1)``: N = n+1, roots ``y_i - y_j``, permutation action.
  SU keeps all n+1 coordinates and imposes ``y_1 + ... + y_{n+1} = 0``.
* ``Sp(n)``: N = n, roots ``±y_i ± y_j`` and ``±2 y_i``, signed permutations.
* ``G2``: N = 2 for the torus ``diag(t1, t2, 1/(t1 t2))`` of ``SU(3) ⊂ G2``.
  Short roots ``±y1, ±y2, ±(y1+y2)``, long roots the SU(3) roots
  ``±(y_i - y_j)`` with ``y3 = -y1 - y2``.

A Weyl group element is an integer matrix acting on character coordinate
vectors; its action on polynomials sends ``y_i`` to the image of the i-th
basis character.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InadmissibleCoefficients,
    NotInvariant,
    RankBoundExceeded,
    UnsupportedCentralizer,
)
from .polykernel import (
    CoefficientRing,
    Polynomial,
    Variable,
    elementary_symmetric_all,
    linear_form,
    mono_mul,
    substitute,
    y as yvar,
)
from .series import GradedSeries

Matrix = tuple[tuple[int, ...], ...]

# Torsion primes of the simply connected compact groups, by Cartan type.
TORSION_PRIMES: dict[str, frozenset[int]] = {
    "A": frozenset(),
    "B": frozenset({2}),
    "C": frozenset(),
    "D": frozenset({2}),
    "G2": frozenset({2}),
    "F4": frozenset({2, 3}),
    "E6": frozenset({2, 3}),
    "E7": frozenset({2, 3}),
    "E8": frozenset({2, 3, 5}),
}

_CARTAN = {"U": "A", "SU": "A", "Sp": "C", "G2": "G2"}

DEFAULT_MAX_RANK = 6


@dataclass(frozen=True)
class GroupSpec:
    """``size`` is the number in the tag: U:<n+1>, SU:<n+1>, Sp:<n>; 2 for G2."""

    lie_type: str
    size: int

    def __post_init__(self):
        if self.lie_type not in _CARTAN:
            raise ValueError(f"unsupported Lie type {self.lie_type!r}")
        if self.lie_type == "G2" and self.size != 2:
            raise ValueError("G2 has rank exactly 2")
        if self.size < 1 or (self.lie_type == "SU" and self.size < 2):
            raise ValueError(f"bad size {self.size} for {self.lie_type}")

    @classmethod
    def parse(cls, tag: str) -> "GroupSpec":
        tag = tag.strip()
        if tag == "G2":
            return cls("G2", 2)
        kind, _, num = tag.partition(":")
        if kind not in ("U", "SU", "Sp") or not num:
            raise ValueError(f"unknown group tag {tag!r}")
        return cls(kind, int(num))

    @property
    def tag(self) -> str:
        return "G2" if self.lie_type == "G2" else f"{self.lie_type}:{self.size}"

    @property
    def name(self) -> str:
        return "G2" if self.lie_type == "G2" else f"{self.lie_type}({self.size})"

    @property
    def cartan_type(self) -> str:
        return _CARTAN[self.lie_type]

    @property
    def rank(self) -> int:
        """Dimension of the maximal torus."""
        return self.size - 1 if self.lie_type == "SU" else self.size

    @property
    def ncoords(self) -> int:
        """Number of y-coordinates used for one stage."""
        return self.size


def U(n: int) -> GroupSpec:
    return GroupSpec("U", n)


def SU(n: int) -> GroupSpec:
    return GroupSpec("SU", n)


def Sp(n: int) -> GroupSpec:
    return GroupSpec("Sp", n)


G2 = GroupSpec("G2", 2)


def torsion_primes(g: GroupSpec) -> frozenset[int]:
    return TORSION_PRIMES[g.cartan_type]


def admissible_coefficients(groups, ring: CoefficientRing) -> bool:
    return all(ring.inverts(p) for g in groups for p in torsion_primes(g))


def require_admissible(groups, ring: CoefficientRing) -> None:
    for g in groups:
        bad = sorted(p for p in torsion_primes(g) if not ring.inverts(p))
        if bad:
            raise InadmissibleCoefficients(
                f"torsion prime(s) {bad} of {g.name} are not invertible in {ring}"
            )


# ---------------------------------------------------------------------------
# root systems


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _mat_vec(m: Matrix, v) -> tuple[int, ...]:
    return tuple(_dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _unit(n: int, i: int, s: int = 1) -> tuple[int, ...]:
    return tuple(s if k == i else 0 for k in range(n))


def _add(*vs) -> tuple[int, ...]:
    return tuple(sum(t) for t in zip(*vs))


def _neg(v) -> tuple[int, ...]:
    return tuple(-a for a in v)


def _roots_and_gram(g: GroupSpec) -> tuple[list[tuple[int, ...]], Matrix]:
    n = g.ncoords
    roots = []
    if g.lie_type in ("U", "SU"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    roots.append(_add(_unit(n, i), _unit(n, j, -1)))
        return roots, identity(n)
    if g.lie_type == "Sp":
        for i in range(n):
            roots.append(_unit(n, i, 2))
            roots.append(_unit(n, i, -2))
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(_add(_unit(n, i, si), _unit(n, j, sj)))
        return roots, identity(n)
    # G2: y3 = -y1 - y2 in SU(3) weight coordinates, invariant form 3*(e_i, e_j)
    ys = [(1, 0), (0, 1), (-1, -1)]
    short = [v for yy in ys for v in (yy, _neg(yy))]
    long_ = [_add(ys[i], _neg(ys[j])) for i in range(3) for j in range(3) if i != j]
    return short + long_, ((2, -1), (-1, 2))


def _positive_functional(g: GroupSpec) -> tuple[int, ...]:
    if g.lie_type == "G2":
        return (2, 1)
    n = g.ncoords
    return tuple(n - i for i in range(n))


def reflection_matrix(alpha, gram: Matrix) -> Matrix:
    """s_alpha(v) = v - 2 (v, alpha)/(alpha, alpha) alpha on character coordinates."""
    n = len(alpha)
    g_alpha = _mat_vec(gram, alpha)
    norm = _dot(alpha, g_alpha)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = 2 * alpha[i] * g_alpha[j]
            if num % norm:
                raise ValueError(f"reflection in {alpha} is not integral")
            row.append(int(i == j) - num // norm)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class RootDatum:
    group: GroupSpec
    roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    simple_reflections: tuple[Matrix, ...]
    gram: Matrix
    weyl_degrees: tuple[int, ...]


_WEYL_DEGREES = {
    "U": lambda n: tuple(range(1, n + 1)),
    "SU": lambda n: tuple(range(2, n + 1)),
    "Sp": lambda n: tuple(2 * k for k in range(1, n + 1)),
    "G2": lambda n: (2, 6),
}


@lru_cache(maxsize=None)
def root_datum(g: GroupSpec) -> RootDatum:
    roots, gram = _roots_and_gram(g)
    f = _positive_functional(g)
    if any(_dot(f, a) == 0 for a in roots):
        raise AssertionError("positive functional vanishes on a root")
    positive = [a for a in roots if _dot(f, a) > 0]
    pos_set = set(positive)
    decomposable = {_add(a, b) for a in positive for b in positive} & pos_set
    simple = sorted((a for a in positive if a not in decomposable), key=lambda a: tuple(-v for v in a))
    reflections = tuple(reflection_matrix(a, gram) for a in simple)
    return RootDatum(
        group=g,
        roots=tuple(roots),
        positive_roots=tuple(positive),
        simple_roots=tuple(simple),
        simple_reflections=reflections,
        gram=gram,
        weyl_degrees=_WEYL_DEGREES[g.lie_type](g.size),
    )


def closure(generators, n: int) -> list[Matrix]:
    """All products of the generators, identity first, in breadth-first order."""
    e = identity(n)
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in generators:
                ws = mat_mul(w, s)
                if ws not in seen:
                    seen.add(ws)
                    order.append(ws)
                    nxt.append(ws)
        frontier = nxt
    return order


@lru_cache(maxsize=None)
def _weyl_elements_cached(g: GroupSpec) -> tuple[Matrix, ...]:
    rd = root_datum(g)
    return tuple(closure(rd.simple_reflections, g.ncoords))


def weyl_elements(rd: RootDatum, max_rank: int = DEFAULT_MAX_RANK) -> list[Matrix]:
    if rd.group.rank > max_rank:
        raise RankBoundExceeded(f"rank {rd.group.rank} of {rd.group.name} exceeds bound {max_rank}")
    return list(_weyl_elements_cached(rd.group))


def inversion_length(w: Matrix, positive_roots) -> int:
    """Number of positive roots sent to negative roots."""
    pos = set(positive_roots)
    return sum(1 for a in positive_roots if _mat_vec(w, a) not in pos)


def weyl_poincare(rd: RootDatum) -> GradedSeries:
    """sum_w t^(2 l(w)), computed from the explicit element list."""
    counts: dict[int, int] = {}
    for w in weyl_elements(rd):
        d = 2 * inversion_length(w, rd.positive_roots)
        counts[d] = counts.get(d, 0) + 1
    return GradedSeries.polynomial(counts)


def degree_poincare(degrees) -> GradedSeries:
    """prod_i (1 + t^2 + ... + t^(2(d_i - 1)))."""
    out = GradedSeries.one()
    for d in degrees:
        out = out * GradedSeries.geometric_sum(d)
    return out


# ---------------------------------------------------------------------------
# acting on polynomials


def stage_variables(g: GroupSpec, stage: int = 1) -> list[Variable]:
    return [yvar(stage, k + 1) for k in range(g.ncoords)]


def act(w: Matrix, p: Polynomial, variables: list[Variable]) -> Polynomial:
    """Apply a Weyl element to a polynomial in the given stage variables."""
    ring = p.ring
    images = {}
    for i, v in enumerate(variables):
        images[v] = linear_form(ring, [w[k][i] for k in range(len(variables))], variables)
    return substitute(p, images)


def fundamental_invariants(g: GroupSpec, ring: CoefficientRing, stage: int = 1) -> list[Polynomial]:
    """Generators of R[y]^W(K) in the stage's y-variables, by increasing degree.

    SU(n+1) returns e_2..e_{n+1}; its linear relation e_1 comes from
    :func:`sum_zero_relation`.  The G2 quadratic is ``y1^2 + y1 y2 + y2^2``,
    which coincides with ``(y1 - y2)^2`` over F_3.
    """
    require_admissible([g], ring)
    vs = stage_variables(g, stage)
    lin = [Polynomial.var(ring, v) for v in vs]
    if g.lie_type == "U":
        return elementary_symmetric_all(lin, ring)
    if g.lie_type == "SU":
        return elementary_symmetric_all(lin, ring)[1:]
    if g.lie_type == "Sp":
        return elementary_symmetric_all([f * f for f in lin], ring)
    y1, y2 = lin
    h4 = y1 * y1 + y1 * y2 + y2 * y2
    h12 = (y1 * y2 * (y1 + y2)) ** 2
    return [h4, h12]


def sum_zero_relation(g: GroupSpec, ring: CoefficientRing, stage: int = 1, family: str = "y") -> Polynomial | None:
    """``e_1`` of the stage coordinates for SU stages, None otherwise."""
    if g.lie_type != "SU":
        return None
    return linear_form(ring, [1] * g.ncoords, [Variable(family, stage, k + 1) for k in range(g.ncoords)])


# ---------------------------------------------------------------------------
# centralizers


@dataclass(frozen=True)
class CentralizerSpec:
    group: GroupSpec
    cocharacter: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cocharacter", tuple(int(a) for a in self.cocharacter))
        if len(self.cocharacter) != self.group.ncoords:
            raise ValueError(
                f"cocharacter for {self.group.name} needs {self.group.ncoords} entries, got {len(self.cocharacter)}"
            )

    @classmethod
    def torus(cls, g: GroupSpec) -> "CentralizerSpec":
        """A regular cocharacter: its centralizer is the maximal torus."""
        if g.lie_type == "G2":
            return cls(g, (1, 2))
        return cls(g, tuple(range(1, g.ncoords + 1)))

    @property
    def text(self) -> str:
        return " ".join(str(a) for a in self.cocharacter)


@dataclass(frozen=True)
class Block:
    """A factor of W(Z) acting on a set of coordinates (0-based).

    ``kind`` "A": all permutations of the block; "C": all signed permutations.
    A singleton "A" block is a fixed coordinate.
    """

    kind: str
    coords: tuple[int, ...]

    @property
    def order(self) -> int:
        n = len(self.coords)
        f = 1
        for k in range(2, n + 1):
            f *= k
        return f * (2**n if self.kind == "C" else 1)

    @property
    def trivial(self) -> bool:
        return self.kind == "A" and len(self.coords) == 1

    @property
    def invariant_weights(self) -> tuple[int, ...]:
        n = len(self.coords)
        if self.trivial:
            return (1,)
        step = 2 if self.kind == "C" else 1
        return tuple(step * k for k in range(1, n + 1))


@dataclass(frozen=True)
class ReflectionSubgroup:
    group: GroupSpec
    generators: tuple[Matrix, ...]
    element_list: tuple[Matrix, ...]
    roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    factor_structure: tuple[Block, ...] | None  # None: not a product of A/C coordinate blocks

    @property
    def order(self) -> int:
        return len(self.element_list)

    def contains(self, w: Matrix) -> bool:
        return w in set(self.element_list)


def _signed_permutation(m: Matrix):
    """Return [(target_row, sign)] per column, or None if ``m`` is not a signed permutation."""
    cols = []
    for j in range(len(m)):
        nz = [(i, m[i][j]) for i in range(len(m)) if m[i][j]]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        cols.append(nz[0])
    return cols


def _factor_structure(elements, generators, n: int) -> tuple[Block, ...] | None:
    gens = [_signed_permutation(s) for s in generators]
    if any(gp is None for gp in gens):
        return None
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for gp in gens:
        for j, (i, _) in enumerate(gp):
            parent[find(i)] = find(j)
    orbits: dict[int, list[int]] = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(i)
    blocks = []
    signed_elems = [_signed_permutation(w) for w in elements]
    for coords in sorted(orbits.values()):
        restricted = {tuple(sp[j] for j in coords) for sp in signed_elems}
        has_sign = any(s < 0 for r in restricted for _, s in r)
        block = Block("C" if has_sign else "A", tuple(coords))
        if len(restricted) != block.order:
            return None
        blocks.append(block)
    total = 1
    for b in blocks:
        total *= b.order
    if total != len(elements):
        return None
    return tuple(blocks)


@lru_cache(maxsize=None)
def centralizer_weyl(c: CentralizerSpec) -> ReflectionSubgroup:
    """W(Z): generated by reflections in the roots orthogonal to the cocharacter."""
    rd = root_datum(c.group)
    ortho = [a for a in rd.roots if _dot(c.cocharacter, a) == 0]
    ortho_pos = [a for a in rd.positive_roots if a in set(ortho)]
    gens = tuple(reflection_matrix(a, rd.gram) for a in ortho_pos)
    elements = tuple(closure(gens, c.group.ncoords))
    return ReflectionSubgroup(
        group=c.group,
        generators=gens,
        element_list=elements,
        roots=tuple(ortho),
        positive_roots=tuple(ortho_pos),
        factor_structure=_factor_structure(elements, gens, c.group.ncoords),
    )


def _require_blocks(w: ReflectionSubgroup) -> tuple[Block, ...]:
    if w.factor_structure is None:
        raise UnsupportedCentralizer(
            f"centralizer Weyl group of order {w.order} in {w.group.name} is not a product of "
            "type A/C coordinate blocks; its invariant ring is not supported"
        )
    return w.factor_structure


def block_invariants(block: Block, ring: CoefficientRing, stage: int = 1) -> list[Polynomial]:
    lin = [Polynomial.var(ring, yvar(stage, i + 1)) for i in block.coords]
    if block.kind == "C":
        lin = [f * f for f in lin]
    return elementary_symmetric_all(lin, ring)


def invariant_generators(w: ReflectionSubgroup, ring: CoefficientRing, stage: int = 1) -> list[Polynomial]:
    """Block-wise fundamental invariants of W(Z), blocks in coordinate order."""
    out = []
    for b in _require_blocks(w):
        out.extend(block_invariants(b, ring, stage))
    return out


def weyl_poincare_subgroup(w: ReflectionSubgroup) -> GradedSeries:
    """Length generating function of W(Z) with its own simple system."""
    counts: dict[int, int] = {}
    for e in w.element_list:
        d = 2 * inversion_length(e, w.positive_roots)
        counts[d] = counts.get(d, 0) + 1
    return GradedSeries.polynomial(counts)


# ---------------------------------------------------------------------------
# rewriting invariants in block generators


def _reduce_symmetric_block(p: Polynomial, block_vars, symbols, power: int) -> Polynomial:
    """Rewrite ``p`` (symmetric in ``block_vars``, or in their squares for power 2)
    as a polynomial in ``symbols`` = e_1..e_n of ``block_vars**power``."""
    ring = p.ring
    index = {v: i for i, v in enumerate(block_vars)}
    n = len(block_vars)
    lin = [Polynomial.var(ring, v) ** power for v in block_vars]
    es = elementary_symmetric_all(lin, ring)
    cache: dict[tuple[int, ...], Polynomial] = {}

    def e_power(steps):
        if steps not in cache:
            prod = Polynomial.const(ring, 1)
            for i, s in enumerate(steps):
                if s:
                    prod = prod * es[i] ** s
            cache[steps] = prod
        return cache[steps]

    remaining = dict(p.terms)
    done: dict = {}

    def split(m):
        exps = [0] * n
        rest = []
        for v, e in m:
            if v in index:
                exps[index[v]] = e
            else:
                rest.append((v, e))
        return tuple(exps), tuple(rest)

    while remaining:
        best = None
        for m, co in remaining.items():
            exps, rest = split(m)
            if best is None or exps > best[0]:
                best = (exps, rest, co, m)
        exps, rest, co, m = best
        if not any(exps):
            for mm, cc in remaining.items():
                done[mm] = done.get(mm, 0) + cc
            break
        if any(e % power for e in exps) or any(exps[i] < exps[i + 1] for i in range(n - 1)):
            raise NotInvariant(f"polynomial {p.render()} is not invariant under the block on {block_vars}")
        part = [e // power for e in exps]
        steps = tuple(part[i] - (part[i + 1] if i + 1 < n else 0) for i in range(n))
        sym_mono = tuple((symbols[i], s) for i, s in enumerate(steps) if s)
        key = mono_mul(rest, tuple(sorted(sym_mono, key=lambda t: t[0].rank, reverse=True)))
        done[key] = done.get(key, 0) + co
        for mm, cc in e_power(steps).terms.items():
            full = mono_mul(rest, mm)
            val = remaining.get(full, 0) - co * cc
            if ring.coerce(val):
                remaining[full] = val
            else:
                remaining.pop(full, None)
    return Polynomial.from_terms(ring, done.items())


def express_in_invariants(p: Polynomial, blocks, symbols_per_block, stage: int) -> Polynomial:
    """Rewrite a W(Z)-invariant polynomial in terms of the block generators.

    ``symbols_per_block[i]`` lists the variables standing for the invariants of
    ``blocks[i]``; trivial blocks keep their y-variable.  Raises NotInvariant if
    the polynomial is not invariant.
    """
    for block, symbols in zip(blocks, symbols_per_block):
        if block.trivial:
            continue
        block_vars = [yvar(stage, i + 1) for i in block.coords]
        p = _reduce_symmetric_block(p, block_vars, symbols, 2 if block.kind == "C" else 1)
    return p


def all_cocharacters_supported(g: GroupSpec, bound: int = 2):
    """Representative cocharacters whose centralizers have supported invariant rings."""
    seen = {}
    n = g.ncoords
    vals = range(-bound, bound + 1)
    from itertools import product as iproduct

    for cochar in iproduct(vals, repeat=n):
        cs = CentralizerSpec(g, cochar)
        w = centralizer_weyl(cs)
        if w.factor_structure is None:
            continue
        key = w.element_list
        if key not in seen:
            seen[key] = cs
    return list(seen.values())


__all__ = [
    "TORSION_PRIMES",
    "GroupSpec",
    "U",
    "SU",
    "Sp",
    "G2",
    "torsion_primes",
    "admissible_coefficients",
    "require_admissible",
    "RootDatum",
    "root_datum",
    "weyl_elements",
    "weyl_poincare",
    "degree_poincare",
    "fundamental_invariants",
    "sum_zero_relation",
    "CentralizerSpec",
    "Block",
    "ReflectionSubgroup",
    "centralizer_weyl",
    "invariant_generators",
    "block_invariants",
    "express_in_invariants",
    "act",
    "stage_variables",
    "closure",
    "mat_mul",
    "Matrix",
    "inversion_length",
    "weyl_poincare_subgroup",
]
