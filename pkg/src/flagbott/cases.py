"""Named worked examples replayed by ``flagbott example``.

Each case builds its presentations, runs the checks that apply to it and
returns the rendered sections together with the check results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .groebner import ideal_equal
from .oracle import (
    CheckResult,
    check_invariance,
    cross_check,
    euler_characteristic,
    fiber_poincare,
    full_weyl_group,
    tower_poincare,
)
from .polykernel import GF, QQ, ZZ, Polynomial, Variable, reduce_coefficients, substitute, u, x, y
from .rootdata import G2, SU, CentralizerSpec, Sp, U, fundamental_invariants
from .series import GradedSeries
from .tower import (
    Presentation,
    Stage,
    TowerSpec,
    chern_symbols,
    elimination_steps,
    equivariant_presentation,
    flag_bundle_step,
    full_flag_relation,
    generating_function_relations,
    ordinary_presentation,
    projective_bundle_relation,
    simplified,
    stage_model,
    twist_forms,
)


@dataclass
class ExampleResult:
    name: str
    sections: list[tuple[str, str]] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, title: str, body) -> None:
        text = body.render() if hasattr(body, "render") else str(body)
        self.sections.append((title, text if text.endswith("\n") else text + "\n"))

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))

    def render(self) -> str:
        out = [f"== example: {self.name} ==\n"]
        for title, text in self.sections:
            out.append(f"-- {title} --\n{text}")
        out.append("-- checks --\n")
        for c in self.checks:
            line = f"[{'PASS' if c.passed else 'FAIL'}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            out.append(line + "\n")
        return "".join(out)

    def to_data(self) -> dict:
        return {
            "schema": 1,
            "kind": "example",
            "name": self.name,
            "passed": self.passed,
            "sections": [{"title": t, "text": s} for t, s in self.sections],
            "checks": [c.to_data() for c in self.checks],
        }


def _var(ring, v: Variable) -> Polynomial:
    return Polynomial.var(ring, v)


# ---------------------------------------------------------------------------


def projective_bundle_case(n: int = 2):
    """Projective bundle of a rank n+1 bundle: one flag-bundle step, then elimination."""
    chern = chern_symbols(n + 1)
    base = Presentation.point(ZZ, chern, "projective bundle")
    stage = Stage.make(U(n + 1), (1,) + (0,) * n)
    step = flag_bundle_step(base, stage.group, stage.centralizer, invariant_images=[_var(ZZ, v) for v in chern])
    blocks = [v for v in stage_model(stage, ZZ, 1).generators if v.family == "z"]
    elim = elimination_steps(step, blocks, rename={y(1, 1): x()}, check=True)
    return step, elim


def case_u3_projective() -> ExampleResult:
    res = ExampleResult("u3-projective")
    step, elim = projective_bundle_case(2)
    res.add("flag-bundle step for U(3) with centralizer U(1) x U(2)", step)
    res.add("elimination steps", "\n".join(s.render() for s in elim.steps) + "\nrename y[1,1] -> x")
    res.add("eliminated presentation", elim.presentation)
    want = projective_bundle_relation(2)
    res.check("relation is x^3 - x^2*c[1] + x*c[2] - c[3]", list(elim.presentation.relations) == [want], want.render())
    point = Presentation(ZZ, [x()], [substitute(want, {v: Polynomial.zero(ZZ) for v in chern_symbols(3)})], "over a point")
    series = point.hilbert_series()
    res.check("over a point the series is that of CP^2", series == fiber_poincare(U(3), CentralizerSpec(U(3), (1, 1, 2))), series.render())
    return res


def case_full_flag() -> ExampleResult:
    res = ExampleResult("full-flag")
    rels = full_flag_relation(2)
    gens = [x(k) for k in (1, 2, 3)] + chern_symbols(3)
    p = Presentation(ZZ, gens, rels, "full flag bundle of a rank 3 bundle")
    res.add("full flag bundle relations", p)
    zero = {v: Polynomial.zero(ZZ) for v in chern_symbols(3)}
    point = Presentation(ZZ, [x(k) for k in (1, 2, 3)], [substitute(r, zero) for r in rels], "over a point")
    series = point.hilbert_series()
    res.add("Hilbert series over a point", series.render())
    res.check(
        "over a point the series is that of Fl(3)", series == fiber_poincare(U(3), CentralizerSpec.torus(U(3))), series.render()
    )
    elim = elimination_steps(p, [x(3), x(2)])
    res.add("eliminating x[3], x[2]", "\n".join(s.render() for s in elim.steps) + "\n" + elim.presentation.render())
    bh = projective_bundle_relation(2, chern=[_var(ZZ, v) for v in chern_symbols(3)])
    bh = substitute(bh, {x(): _var(ZZ, x(1))})
    same = ideal_equal(
        [reduce_coefficients(r, QQ) for r in elim.presentation.relations], [reduce_coefficients(bh, QQ)]
    )
    res.check("elimination leaves the projective bundle relation", same, bh.render())
    return res


def case_su2() -> ExampleResult:
    res = ExampleResult("su2")
    spec = TowerSpec.build([(SU(2), None)])
    eq = equivariant_presentation(spec)
    res.add("equivariant presentation", eq)
    simple = simplified(spec, eq, True)
    res.add("after removing y[1,2], u[1,2]", simple)
    want = _var(ZZ, u(1, 1)) ** 2 - _var(ZZ, y(1, 1)) ** 2
    res.check("relation is u[1,1]^2 - y[1,1]^2", list(simple.relations) == [want], want.render())
    series = simple.hilbert_series()
    expected = GradedSeries((1, 0, 1), (2,))
    res.check("Hilbert series over Q is (1 + t^2)/(1 - t^2)", series == expected, series.render())
    report = cross_check(spec)
    res.checks.extend(report.results)
    return res


TYPE_C_MATRICES = {
    "zero": {},
    "sample": {
        (2, 1): [[1, 0, -2], [2, -1, 0], [0, 1, 1]],
        (3, 1): [[-1, 2, 0], [0, -2, 1]],
        (3, 2): [[1, 1, 0], [2, 0, -1]],
    },
}


def type_c_spec(connections, ring=ZZ) -> TowerSpec:
    return TowerSpec.build([(Sp(3), None), (Sp(3), None), (Sp(2), None)], connections, ring)


def type_c_product_form(spec: TowerSpec) -> list[list[Polynomial]]:
    """Graded pieces of the product-form relations I_1, I_2, I_3, built directly from the matrices."""
    ring = spec.ring
    out = []
    for l, stage in enumerate(spec.stages, start=1):
        n = stage.group.ncoords
        args = []
        for k in range(n):
            form = _var(ring, u(l, k + 1))
            for j in range(1, l):
                row = spec.matrix(l, j)[k]
                for h, a in enumerate(row):
                    if a:
                        form = form + a * _var(ring, y(j, h + 1))
            args.append(form)
        ys = [_var(ring, y(l, k + 1)) for k in range(n)]
        out.append(generating_function_relations([v * v for v in ys], [f * f for f in args]))
    return out


def stage_relations(p: Presentation, spec: TowerSpec) -> list[list[Polynomial]]:
    """Split an equivariant presentation's relations by the stage of their y-variables."""
    blocks: list[list[Polynomial]] = [[] for _ in spec.stages]
    for r in p.relations:
        top = max((v.stage for v in r.variables() if v.family in ("y", "z")), default=None)
        if top is None:
            top = max(v.stage for v in r.variables())
        blocks[top - 1].append(r)
    return blocks


def type_c_ideal_checks(spec: TowerSpec) -> list[bool]:
    eq = equivariant_presentation(spec)
    ours = stage_relations(eq, spec)
    theirs = type_c_product_form(spec)
    return [
        ideal_equal([reduce_coefficients(r, QQ) for r in a], [reduce_coefficients(r, QQ) for r in b])
        for a, b in zip(ours, theirs)
    ]


def case_type_c() -> ExampleResult:
    res = ExampleResult("typeC")
    spec = type_c_spec(TYPE_C_MATRICES["zero"])
    eq = equivariant_presentation(spec)
    res.add("equivariant presentation, zero matrices", eq)
    prod = type_c_product_form(spec)
    res.add(
        "product-form relations I_1, I_2, I_3 (graded pieces)",
        "\n".join(f"I_{l}: " + "; ".join(r.render() for r in rels) for l, rels in enumerate(prod, start=1)),
    )
    for l, ok in enumerate(type_c_ideal_checks(spec), start=1):
        res.check(f"stage {l} relations generate the same ideal as I_{l}", ok)
    i1 = [substitute(r, {y(1, k): _var(ZZ, y(2, k)) for k in (1, 2, 3)}) for r in prod[0]]
    i1 = [substitute(r, {u(1, k): _var(ZZ, u(2, k)) for k in (1, 2, 3)}) for r in i1]
    res.check("with zero matrices I_2 is I_1 moved to stage 2", i1 == prod[1])
    res.add("tower Poincaré polynomial", tower_poincare(spec).render())
    chi = euler_characteristic(spec)
    res.check("Euler characteristic is 48*48*8", chi == 48 * 48 * 8, str(chi))
    res.checks.extend(cross_check(spec).results)
    return res


# connecting matrices for the G2 example; the SU(4) model pads stage-1 columns with zeros
G2_MATRICES = {
    (2, 1): [[1, 0, -1], [0, 2, 1], [1, 1, 0]],
    (3, 1): [[1, -1, 0], [0, 1, 2]],
    (3, 2): [[2, 0, 1], [-1, 1, 0]],
}


def g2_specs():
    f3 = GF(3)
    literal = TowerSpec.build([(U(3), None), (Sp(3), None), (G2, None)], G2_MATRICES, f3)
    padded = {key: [row + [0] if key[1] == 1 else row for row in mat] for key, mat in G2_MATRICES.items()}
    su4 = TowerSpec.build([(SU(4), None), (Sp(3), None), (G2, None)], padded, f3)
    return literal, su4


def g2_l3(spec: TowerSpec) -> list[Polynomial]:
    """Graded pieces of L_3 with h_4 = (x1 - x2)^2 and h_12 = x1^2 x2^2 (x1 + x2)^2."""
    ring = spec.ring
    models = [stage_model(s, ring, i + 1) for i, s in enumerate(spec.stages)]
    phi = twist_forms(spec, 3, models)
    args = [_var(ring, u(3, k + 1)) + phi[k] for k in range(2)]

    def h4(a, b):
        return (a - b) ** 2

    def h12(a, b):
        return (a * b * (a + b)) ** 2

    ys = [_var(ring, y(3, 1)), _var(ring, y(3, 2))]
    return generating_function_relations([h4(*ys), h12(*ys)], [h4(*args), h12(*args)])


def case_g2_f3() -> ExampleResult:
    res = ExampleResult("g2-f3")
    literal, su4 = g2_specs()
    f3 = literal.ring
    eq = equivariant_presentation(literal)
    res.add("equivariant presentation over F_3 (stage 1 with three coordinates, as written)", eq)
    y1, y2 = _var(f3, y(3, 1)), _var(f3, y(3, 2))
    h4 = (y1 - y2) ** 2
    h12 = (y1 * y2 * (y1 + y2)) ** 2
    w = full_weyl_group(G2)
    res.check("W(G2) has 12 elements", w.order == 12, str(w.order))
    res.check("h_4 = (y1 - y2)^2 is W(G2)-invariant over F_3", check_invariance(h4, w, 3))
    res.check("h_12 = y1^2 y2^2 (y1 + y2)^2 is W(G2)-invariant over F_3", check_invariance(h12, w, 3))
    res.check(
        "built-in G2 invariants agree with h_4, h_12 over F_3",
        fundamental_invariants(G2, f3, 3) == [h4, h12],
    )
    ours = stage_relations(eq, literal)[2]
    res.check("stage 3 relations generate the same ideal as L_3 over F_3", ideal_equal(ours, g2_l3(literal)))
    res.checks.extend(cross_check(literal).results)
    res.add("SU(4) model: stage 1 presentation relations", "\n".join(r.render() for r in stage_relations(equivariant_presentation(su4), su4)[0]))
    chi_lit = euler_characteristic(literal)
    chi_su4 = euler_characteristic(su4)
    res.add(
        "model discrepancy",
        "stage 1 as written uses three coordinates and e_1, e_2, e_3: a U(3) flag manifold, fiber Euler characteristic 6\n"
        "stage 1 as SU(4) uses four coordinates with e_1 = 0 and e_2, e_3, e_4: fiber Euler characteristic 24\n"
        f"tower Euler characteristic: {chi_lit} as written, {chi_su4} for SU(4)",
    )
    res.check("SU(4) model stage 3 relations generate the same ideal as L_3", ideal_equal(stage_relations(equivariant_presentation(su4), su4)[2], g2_l3(su4)))
    res.checks.extend(CheckResult("SU(4) model: " + r.name, r.passed, r.detail, r.first_divergence) for r in cross_check(su4).results)
    return res


def hirzebruch_spec(a: int = 2) -> TowerSpec:
    return TowerSpec.build([(U(2), None), (U(2), None)], {(2, 1): [[a, 0], [0, 0]]})


def case_hirzebruch(a: int = 2) -> ExampleResult:
    res = ExampleResult("hirzebruch")
    spec = hirzebruch_spec(a)
    p = ordinary_presentation(spec)
    res.add(f"ordinary presentation, A(2,1) = [[{a}, 0], [0, 0]]", p)
    elim = elimination_steps(p, [y(1, 2), y(2, 2)], check=True)
    res.add("after eliminating y[1,2], y[2,2]", "\n".join(s.render() for s in elim.steps) + "\n" + elim.presentation.render())
    y11, y21 = _var(ZZ, y(1, 1)), _var(ZZ, y(2, 1))
    target = [y11 * y11, y21 * (y21 - a * y11)]
    same = ideal_equal([reduce_coefficients(r, QQ) for r in elim.presentation.relations], [reduce_coefficients(r, QQ) for r in target])
    res.check(f"ideal is <y[1,1]^2, y[2,1]*(y[2,1] - {a}*y[1,1])>", same)
    series = elim.presentation.hilbert_series()
    res.check("Betti numbers 1, 2, 1", series.coefficients() == (1, 0, 2, 0, 1), series.render())
    return res


CASES: dict[str, Callable[[], ExampleResult]] = {
    "u3-projective": case_u3_projective,
    "full-flag": case_full_flag,
    "su2": case_su2,
    "typeC": case_type_c,
    "g2-f3": case_g2_f3,
    "hirzebruch": case_hirzebruch,
}


def run_case(name: str) -> ExampleResult:
    try:
        fn = CASES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(CASES)}") from None
    return fn()
