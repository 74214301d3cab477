"""Tower specifications and the presentation builders.

A tower is a list of stages ``(K_j, Z_j)`` together with integer matrices
``A[l, j]`` (rows: coordinates of stage l, columns: coordinates of stage j)
for every ``j < l``.  Stage l is twisted over the earlier stages through the
linear forms

    Phi_k = sum_{j<l} sum_h A[l, j][k][h] * y[j,h]

and its relations are ``h(y_l) - h(u_l + Phi)`` for the fundamental invariants
``h`` of W(K_l).  Coordinates of a stage with non-torus centralizer enter the
ring only through the block invariants of W(Z_j), named ``z[j,k]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import EliminationFailed, SpecError
from .groebner import eliminate as groebner_eliminate, hilbert_series
from .polykernel import (
    QQ,
    ZZ,
    CoefficientRing,
    Polynomial,
    Variable,
    c as cvar,
    elementary_symmetric_all,
    linear_form,
    reduce_coefficients,
    substitute,
    u as uvar,
    x as xvar,
    y as yvar,
    z as zvar,
)
from .rootdata import (
    Block,
    CentralizerSpec,
    GroupSpec,
    Matrix,
    ReflectionSubgroup,
    act,
    centralizer_weyl,
    express_in_invariants,
    fundamental_invariants,
    require_admissible,
    stage_variables,
    _require_blocks,
)
from .series import GradedSeries


@dataclass(frozen=True)
class Stage:
    group: GroupSpec
    centralizer: CentralizerSpec

    @classmethod
    def make(cls, group: GroupSpec, cocharacter: Sequence[int] | None = None) -> "Stage":
        if cocharacter is None:
            return cls(group, CentralizerSpec.torus(group))
        return cls(group, CentralizerSpec(group, tuple(cocharacter)))


@dataclass(frozen=True)
class TowerSpec:
    """Validated tower description.  Missing connections are zero matrices."""

    stages: tuple[Stage, ...]
    connections: tuple[tuple[tuple[int, int], Matrix], ...] = ()
    ring: CoefficientRing = ZZ

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        conns = dict(self.connections) if not isinstance(self.connections, dict) else dict(self.connections)
        clean = {}
        m = len(self.stages)
        for (l, j), mat in conns.items():
            if not 1 <= j < l <= m:
                raise SpecError(f"connection ({l},{j}) does not satisfy 1 <= j < l <= {m}")
            rows = self.stages[l - 1].group.ncoords
            cols = self.stages[j - 1].group.ncoords
            mat = tuple(tuple(int(a) for a in row) for row in mat)
            if len(mat) != rows or any(len(r) != cols for r in mat):
                got = f"{len(mat)}x{len(mat[0]) if mat else 0}"
                raise SpecError(f"connection ({l},{j}) must be a {rows}x{cols} matrix, got {got}")
            clean[(l, j)] = mat
        object.__setattr__(self, "connections", tuple(sorted(clean.items())))
        require_admissible([s.group for s in self.stages], self.ring)
        self._check_connections()

    @classmethod
    def build(
        cls,
        stages: Iterable[tuple[GroupSpec, Sequence[int] | None] | Stage],
        connections: Mapping[tuple[int, int], Sequence[Sequence[int]]] | None = None,
        ring: CoefficientRing = ZZ,
    ) -> "TowerSpec":
        out = []
        for s in stages:
            out.append(s if isinstance(s, Stage) else Stage.make(*s))
        return cls(tuple(out), tuple((connections or {}).items()), ring)

    def with_ring(self, ring: CoefficientRing) -> "TowerSpec":
        return TowerSpec(self.stages, self.connections, ring)

    @property
    def height(self) -> int:
        return len(self.stages)

    def matrix(self, l: int, j: int) -> Matrix:
        for key, mat in self.connections:
            if key == (l, j):
                return mat
        rows = self.stages[l - 1].group.ncoords
        cols = self.stages[j - 1].group.ncoords
        return tuple((0,) * cols for _ in range(rows))

    def total_rank(self) -> int:
        return sum(s.group.rank for s in self.stages)

    def _check_connections(self):
        for (l, j), mat in self.connections:
            target = self.stages[l - 1].group
            source = self.stages[j - 1]
            if target.lie_type == "SU":
                sums = {sum(row[h] for row in mat) for h in range(source.group.ncoords)}
                if source.group.lie_type == "SU":
                    if len(sums) > 1:
                        raise SpecError(
                            f"connection ({l},{j}) into {target.name} must have equal column sums"
                        )
                elif sums - {0}:
                    raise SpecError(f"connection ({l},{j}) into {target.name} must have zero column sums")
            w = centralizer_weyl(source.centralizer)
            vs = stage_variables(source.group, j)
            for k, row in enumerate(mat):
                form = linear_form(QQ, row, vs)
                for g in w.generators:
                    if act(g, form, vs) != form:
                        raise SpecError(
                            f"row {k + 1} of connection ({l},{j}) is not invariant under the "
                            f"Weyl group of the centralizer of stage {j}"
                        )


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    ring: CoefficientRing
    generators: tuple[Variable, ...]
    relations: tuple[Polynomial, ...]
    label: str = ""
    definitions: tuple[tuple[Variable, Polynomial], ...] = ()
    stages: int = 0

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(r for r in self.relations if r))
        object.__setattr__(self, "definitions", tuple(self.definitions))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("repeated generator")
        gens = set(self.generators)
        for r in self.relations:
            if r.ring != self.ring:
                raise ValueError(f"relation over {r.ring} in a presentation over {self.ring}")
            if not r.is_homogeneous():
                raise ValueError(f"relation {r.render()} is not homogeneous")
            extra = r.variables() - gens
            if extra:
                raise ValueError(f"relation {r.render()} uses non-generators {sorted(map(str, extra))}")

    @classmethod
    def point(cls, ring: CoefficientRing = ZZ, generators: Sequence[Variable] = (), label: str = "point") -> "Presentation":
        return cls(ring, tuple(generators), (), label)

    def hilbert_series(self, kind: str = "grevlex", budget: int | None = None) -> GradedSeries:
        """Graded ranks over Q (integer presentations) or over the prime field."""
        field_ring = QQ if self.ring.kind == "Z" else self.ring
        rels = [reduce_coefficients(r, field_ring) for r in self.relations]
        return hilbert_series(self.generators, rels, kind=kind, budget=budget)

    def render(self) -> str:
        lines = [f"ring: {self.ring.tag}"]
        if self.label:
            lines.append(f"label: {self.label}")
        gens = ", ".join(f"{v.token} (deg {v.degree})" for v in self.generators)
        lines.append(f"generators: {gens or '(none)'}")
        if self.definitions:
            lines.append("definitions:")
            lines.extend(f"  {v.token} = {p.render()}" for v, p in self.definitions)
        lines.append("relations:")
        lines.extend(f"  {r.render()}" for r in self.relations)
        if not self.relations:
            lines.append("  (none)")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StageModel:
    """The generators that one stage contributes, and how they sit in y-coordinates."""

    stage: int
    group: GroupSpec
    centralizer: CentralizerSpec
    weyl: ReflectionSubgroup
    blocks: tuple[Block, ...]
    symbols: tuple[tuple[Variable, ...], ...]  # per block; empty for fixed coordinates
    generators: tuple[Variable, ...]
    definitions: tuple[tuple[Variable, Polynomial], ...]

    @property
    def is_torus(self) -> bool:
        return all(b.trivial for b in self.blocks)

    def rewrite(self, p: Polynomial) -> Polynomial:
        """Express a W(Z)-invariant polynomial in this stage's generators."""
        if self.is_torus:
            return p
        return express_in_invariants(p, self.blocks, self.symbols, self.stage)


def stage_model(stage: Stage, ring: CoefficientRing, index: int) -> StageModel:
    w = centralizer_weyl(stage.centralizer)
    blocks = _require_blocks(w)
    symbols = []
    gens = []
    defs = []
    k = 0
    for b in blocks:
        if b.trivial:
            symbols.append(())
            gens.append(yvar(index, b.coords[0] + 1))
            continue
        lin = [Polynomial.var(ring, yvar(index, i + 1)) for i in b.coords]
        if b.kind == "C":
            lin = [f * f for f in lin]
        vals = elementary_symmetric_all(lin, ring)
        syms = []
        for wt, val in zip(b.invariant_weights, vals):
            k += 1
            v = zvar(index, k, wt)
            syms.append(v)
            gens.append(v)
            defs.append((v, val))
        symbols.append(tuple(syms))
    return StageModel(index, stage.group, stage.centralizer, w, blocks, tuple(symbols), tuple(gens), tuple(defs))


def _stage_invariants(g: GroupSpec, ring: CoefficientRing, index: int) -> list[Polynomial]:
    """The invariants whose two sides are equated: for SU all e_k of the n+1 coordinates."""
    if g.lie_type == "SU":
        lin = [Polynomial.var(ring, v) for v in stage_variables(g, index)]
        return elementary_symmetric_all(lin, ring)
    return fundamental_invariants(g, ring, index)


def flag_bundle_step(
    base: Presentation,
    group: GroupSpec,
    centralizer: CentralizerSpec,
    chern_map: Sequence[Polynomial] | None = None,
    invariant_images: Sequence[Polynomial] | None = None,
    label: str | None = None,
    _extra: Sequence[Polynomial] = (),
) -> Presentation:
    """Add one flag-bundle stage on top of ``base``.

    ``chern_map`` gives the images of the stage's torus coordinates as degree-2
    forms in the base generators; alternatively ``invariant_images`` gives the
    images of the fundamental invariants directly (for example Chern classes
    ``c[k]`` of a bundle whose Chern roots are not in the base).
    """
    ring = base.ring
    index = base.stages + 1
    require_admissible([group], ring)
    model = stage_model(Stage(group, centralizer), ring, index)
    vs = stage_variables(group, index)
    hs = _stage_invariants(group, ring, index)
    if (chern_map is None) == (invariant_images is None):
        raise ValueError("give exactly one of chern_map and invariant_images")
    if chern_map is not None:
        chern_map = list(chern_map)
        if len(chern_map) != group.ncoords:
            raise ValueError(f"{group.name} needs {group.ncoords} images, got {len(chern_map)}")
        images = [substitute(h, dict(zip(vs, chern_map))) for h in hs]
    else:
        images = list(invariant_images)
        if len(images) != len(hs):
            raise ValueError(f"{group.name} has {len(hs)} invariants, got {len(images)} images")
        for h, img in zip(hs, images):
            if img and img.degrees() != h.degrees():
                raise ValueError(f"image {img.render()} has the wrong degree for {h.render()}")
    rels = []
    if group.lie_type == "SU":
        rels.append(model.rewrite(hs[0]))
        rels.extend(_extra)
        pairs = list(zip(hs, images))[1:]
    else:
        rels.extend(_extra)
        pairs = list(zip(hs, images))
    for h, img in pairs:
        rels.append(model.rewrite(h) - img)
    return Presentation(
        ring,
        base.generators + model.generators,
        base.relations + tuple(rels),
        label if label is not None else base.label,
        base.definitions + model.definitions,
        index,
    )


def twist_forms(spec: TowerSpec, l: int, models: Sequence[StageModel]) -> list[Polynomial]:
    """Phi_k for stage l in the generators of the earlier stages."""
    ring = spec.ring
    n = spec.stages[l - 1].group.ncoords
    out = [Polynomial.zero(ring) for _ in range(n)]
    for j in range(1, l):
        mat = spec.matrix(l, j)
        vs = stage_variables(spec.stages[j - 1].group, j)
        for k in range(n):
            if any(mat[k]):
                form = linear_form(ring, mat[k], vs)
                out[k] = out[k] + models[j - 1].rewrite(form)
    return out


def _models(spec: TowerSpec) -> list[StageModel]:
    return [stage_model(s, spec.ring, i + 1) for i, s in enumerate(spec.stages)]


def _u_vars(spec: TowerSpec, l: int) -> list[Variable]:
    return [uvar(l, k + 1) for k in range(spec.stages[l - 1].group.ncoords)]


def equivariant_presentation(spec: TowerSpec) -> Presentation:
    ring = spec.ring
    models = _models(spec)
    us = [v for l in range(1, spec.height + 1) for v in _u_vars(spec, l)]
    p = Presentation.point(ring, us, "equivariant")
    for l, stage in enumerate(spec.stages, start=1):
        uforms = [Polynomial.var(ring, v) for v in _u_vars(spec, l)]
        phi = twist_forms(spec, l, models)
        extra = [sum(uforms, Polynomial.zero(ring))] if stage.group.lie_type == "SU" else []
        p = flag_bundle_step(p, stage.group, stage.centralizer, [a + b for a, b in zip(uforms, phi)], _extra=extra)
    return p


def ordinary_presentation(spec: TowerSpec) -> Presentation:
    models = _models(spec)
    p = Presentation.point(spec.ring, (), "ordinary")
    for l, stage in enumerate(spec.stages, start=1):
        p = flag_bundle_step(p, stage.group, stage.centralizer, twist_forms(spec, l, models))
    return p


def effective_presentation(spec: TowerSpec) -> Presentation:
    for l, s in enumerate(spec.stages, start=1):
        if s.group.lie_type != "U" or not stage_model(s, spec.ring, l).is_torus:
            raise SpecError(f"effective torus quotient needs U stages with torus centralizer; stage {l} is not")
    p = equivariant_presentation(spec)
    extra = [Polynomial.var(spec.ring, uvar(l, s.group.ncoords)) for l, s in enumerate(spec.stages, start=1)]
    return Presentation(p.ring, p.generators, p.relations + tuple(extra), "effective", p.definitions, p.stages)


def su_partner_variables(spec: TowerSpec, equivariant: bool = True) -> list[Variable]:
    """Last coordinate of every SU stage: removable through the relation e_1 = 0."""
    out = []
    for l, s in enumerate(spec.stages, start=1):
        if s.group.lie_type == "SU" and stage_model(s, spec.ring, l).is_torus:
            out.append(yvar(l, s.group.ncoords))
            if equivariant:
                out.append(uvar(l, s.group.ncoords))
    return out


# ---------------------------------------------------------------------------
# the classical specializations


def chern_symbols(n: int) -> list[Variable]:
    return [cvar(k) for k in range(1, n + 1)]


def projective_bundle_relation(n: int, ring: CoefficientRing = ZZ, chern: Sequence[Polynomial] | None = None) -> Polynomial:
    """x^(n+1) - x^n c_1 + x^(n-1) c_2 - ... + (-1)^(n+1) c_(n+1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if chern is None:
        chern = [Polynomial.var(ring, v) for v in chern_symbols(n + 1)]
    xp = Polynomial.var(ring, xvar())
    out = xp ** (n + 1)
    for k in range(1, n + 2):
        out = out + (-1) ** k * xp ** (n + 1 - k) * chern[k - 1]
    return out


def full_flag_relation(n: int, ring: CoefficientRing = ZZ, chern: Sequence[Polynomial] | None = None) -> list[Polynomial]:
    """e_k(x_1..x_(n+1)) - c_k for k = 1..n+1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if chern is None:
        chern = [Polynomial.var(ring, v) for v in chern_symbols(n + 1)]
    xs = [Polynomial.var(ring, xvar(k)) for k in range(1, n + 2)]
    return [e - ck for e, ck in zip(elementary_symmetric_all(xs, ring), chern)]


def generating_function_relations(lhs: Sequence[Polynomial], rhs: Sequence[Polynomial]) -> list[Polynomial]:
    """Nonzero graded pieces of prod(1 + a) - prod(1 + b)."""
    if not lhs and not rhs:
        return []
    ring = (lhs or rhs)[0].ring
    one = Polynomial.const(ring, 1)
    left = one
    for a in lhs:
        left = left * (one + a)
    right = one
    for b in rhs:
        right = right * (one + b)
    return [piece for piece in (left - right).homogeneous_components() if piece]


# ---------------------------------------------------------------------------
# elimination


@dataclass(frozen=True)
class EliminationStep:
    variable: Variable
    value: Polynomial
    definition: Polynomial | None = None  # the variable in y-coordinates, for block symbols

    def render(self) -> str:
        lhs = self.definition.render() if self.definition is not None else self.variable.token
        return f"{lhs} = {self.value.render()}"


@dataclass(frozen=True)
class Elimination:
    presentation: Presentation
    steps: tuple[EliminationStep, ...]
    used_groebner: bool = False


def _normalize(p: Polynomial) -> Polynomial:
    if p.ring.kind == "Z":
        return p.primitive()
    return p.monic()


def _is_unit(co, ring: CoefficientRing) -> bool:
    if ring.kind == "Z":
        return co in (1, -1)
    return co != 0


def _linear_solution(r: Polynomial, v: Variable):
    """If ``r = a*v + rest`` with ``a`` a unit and ``v`` absent from ``rest``, return ``-rest/a``."""
    bare = ((v, 1),)
    a = r.terms.get(bare)
    if a is None or not _is_unit(a, r.ring):
        return None
    rest = {}
    for m, co in r.terms.items():
        if m == bare:
            continue
        if any(w == v for w, _ in m):
            return None
        rest[m] = co
    ring = r.ring
    if ring.kind == "Fp":
        inv = pow(a, -1, ring.p)
        return Polynomial._canonical(ring, {m: -co * inv for m, co in rest.items()})
    if ring.kind == "Z":
        return Polynomial._canonical(ring, {m: -co * a for m, co in rest.items()})
    return Polynomial._canonical(ring, {m: -Fraction(co) / a for m, co in rest.items()})


def elimination_steps(
    p: Presentation,
    eliminate: Sequence[Variable],
    rename: Mapping[Variable, Variable] | None = None,
    check: bool = False,
    budget: int | None = None,
) -> Elimination:
    """Remove ``eliminate`` from the presentation.

    Variables that occur linearly with a unit coefficient in some relation are
    solved for and substituted, one step at a time.  Any left over are removed
    with a block elimination order (integer presentations are computed over Q
    and cleared of denominators).  ``check`` compares Hilbert series before and
    after and raises :class:`EliminationFailed` on a mismatch.
    """
    if not eliminate and not rename:
        return Elimination(p, ())
    defs = dict(p.definitions)
    rels = list(p.relations)
    todo = [v for v in eliminate]
    unknown = set(todo) - set(p.generators)
    if unknown:
        raise ValueError(f"cannot eliminate non-generators {sorted(map(str, unknown))}")
    steps = []
    progress = True
    while todo and progress:
        progress = False
        for v in list(todo):
            for i, r in enumerate(rels):
                sol = _linear_solution(r, v)
                if sol is None:
                    continue
                steps.append(EliminationStep(v, sol, defs.get(v)))
                rels = [substitute(q, {v: sol}) for k, q in enumerate(rels) if k != i]
                todo.remove(v)
                progress = True
                break
    used_groebner = False
    keep = [g for g in p.generators if g not in set(eliminate)]
    if todo:
        used_groebner = True
        field_ring = QQ if p.ring.kind == "Z" else p.ring
        elim = groebner_eliminate([reduce_coefficients(r, field_ring) for r in rels], todo, keep, budget)
        if p.ring.kind == "Z":
            rels = [_clear_denominators(g) for g in elim]
        else:
            rels = elim
    rels = [_normalize(r) for r in rels if r]
    defs_kept = tuple((v, d) for v, d in p.definitions if v in set(keep))
    out = Presentation(p.ring, tuple(keep), tuple(rels), p.label, defs_kept, p.stages)
    if rename:
        sub = {old: Polynomial.var(p.ring, new) for old, new in rename.items()}
        out = Presentation(
            p.ring,
            tuple(rename.get(g, g) for g in out.generators),
            tuple(_normalize(substitute(r, sub)) for r in out.relations),
            out.label,
            tuple((rename.get(v, v), d) for v, d in out.definitions),
            out.stages,
        )
    if check and p.hilbert_series(budget=budget) != out.hilbert_series(budget=budget):
        raise EliminationFailed("elimination changed the Hilbert series")
    return Elimination(out, tuple(steps), used_groebner)


def derive_elimination(
    p: Presentation,
    eliminate: Sequence[Variable],
    rename: Mapping[Variable, Variable] | None = None,
    check: bool = False,
    budget: int | None = None,
) -> Presentation:
    return elimination_steps(p, eliminate, rename, check, budget).presentation


def _clear_denominators(p: Polynomial) -> Polynomial:
    from math import lcm

    den = 1
    for co in p.terms.values():
        den = lcm(den, Fraction(co).denominator)
    return Polynomial.from_terms(ZZ, [(m, int(Fraction(co) * den)) for m, co in p.terms.items()])


def simplified(spec: TowerSpec, p: Presentation, equivariant: bool) -> Presentation:
    """Drop the SU partner coordinates via their linear relations."""
    partners = [v for v in su_partner_variables(spec, equivariant) if v in set(p.generators)]
    if not partners:
        return p
    return derive_elimination(p, partners)
