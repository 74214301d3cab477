"""Combinatorial cross-checks that do not go through the presentation builders.

Fiber Poincaré polynomials are computed twice: by dividing length generating
functions (inversion counts) and by breadth-first enumeration of words in the
simple reflections, keeping the shortest word per coset.  Neither route reads
the invariant tables used to build relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import FlagBottError, InternalConsistencyError
from .polykernel import Polynomial, Variable
from .rootdata import (
    CentralizerSpec,
    GroupSpec,
    ReflectionSubgroup,
    act,
    centralizer_weyl,
    closure,
    fundamental_invariants,
    mat_mul,
    root_datum,
    weyl_elements,
    weyl_poincare,
    weyl_poincare_subgroup,
)
from .series import GradedSeries, product
from .tower import TowerSpec, equivariant_presentation, ordinary_presentation, stage_model


def _row_times(lam: tuple[int, ...], w) -> tuple[int, ...]:
    n = len(lam)
    return tuple(sum(lam[i] * w[i][j] for i in range(n)) for j in range(n))


def _standard_representative(g: GroupSpec, lam: tuple[int, ...]) -> tuple[int, ...]:
    """A point of the orbit lam*W whose stabilizer is generated by simple reflections.

    Shortest coset representatives only count cells for standard parabolic
    subgroups, so the cocharacter is moved into the closed dominant chamber first.
    """
    rd = root_datum(g)
    orbit = {_row_times(lam, w) for w in weyl_elements(rd)}
    stabilizer_order = len(weyl_elements(rd)) // len(orbit)
    for mu in sorted(orbit, reverse=True):
        fixing = [s for s in rd.simple_reflections if _row_times(mu, s) == mu]
        if len(closure(fixing, g.ncoords)) == stabilizer_order:
            return mu
    raise InternalConsistencyError(f"no dominant point in the orbit of {lam} under W({g.name})")


def _coset_poincare(g: GroupSpec, z: CentralizerSpec) -> GradedSeries:
    """Shortest word length per coset W(Z)w, by breadth-first search from the identity."""
    rd = root_datum(g)
    lam = _standard_representative(g, z.cocharacter)
    n = g.ncoords
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {e}
    shortest: dict[tuple[int, ...], int] = {lam: 0}
    frontier = [e]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for w in frontier:
            for s in rd.simple_reflections:
                ws = mat_mul(w, s)
                if ws in seen:
                    continue
                seen.add(ws)
                nxt.append(ws)
                # the stabilizer fixes the row vector lam, so lam * w labels the coset
                shortest.setdefault(_row_times(lam, ws), depth)
        frontier = nxt
    counts: dict[int, int] = {}
    for d in shortest.values():
        counts[2 * d] = counts.get(2 * d, 0) + 1
    return GradedSeries.polynomial(counts)


def fiber_poincare_by_division(g: GroupSpec, z: CentralizerSpec) -> GradedSeries:
    full = weyl_poincare(root_datum(g))
    sub = weyl_poincare_subgroup(centralizer_weyl(z))
    try:
        return full.divided_by(sub)
    except ValueError:
        raise InternalConsistencyError(
            f"length polynomial of W({g.name}) is not divisible by that of the centralizer subgroup"
        ) from None


def fiber_poincare_by_cosets(g: GroupSpec, z: CentralizerSpec) -> GradedSeries:
    return _coset_poincare(g, z)


def fiber_poincare(g: GroupSpec, z: CentralizerSpec) -> GradedSeries:
    """Poincaré polynomial of K/Z; both routes must agree."""
    a = fiber_poincare_by_division(g, z)
    b = fiber_poincare_by_cosets(g, z)
    if a != b:
        raise InternalConsistencyError(f"fiber Poincaré routes disagree for {g.name}: {a} vs {b}")
    return a


def tower_poincare(spec: TowerSpec) -> GradedSeries:
    return product(fiber_poincare(s.group, s.centralizer) for s in spec.stages)


def euler_characteristic(spec: TowerSpec) -> int:
    out = 1
    for s in spec.stages:
        full = len(weyl_elements(root_datum(s.group)))
        sub = centralizer_weyl(s.centralizer).order
        if full % sub:
            raise InternalConsistencyError(f"|W(Z)| = {sub} does not divide |W| = {full}")
        out *= full // sub
    return out


def positive_roots_outside_centralizer(g: GroupSpec, z: CentralizerSpec) -> int:
    rd = root_datum(g)
    return len(rd.positive_roots) - len(centralizer_weyl(z).positive_roots)


def _stage_of(p: Polynomial) -> int:
    stages = {v.stage for v in p.variables()}
    if any(v.family != "y" for v in p.variables()) or len(stages) > 1:
        raise ValueError("check_invariance expects a polynomial in one stage's y-variables")
    return stages.pop() if stages else 1


def check_invariance(
    p: Polynomial,
    group: ReflectionSubgroup | Sequence,
    stage: int | None = None,
    ncoords: int | None = None,
) -> bool:
    """True iff every element of the group fixes ``p``.

    ``group`` is a ReflectionSubgroup or an explicit list of matrices.
    """
    elements = group.element_list if isinstance(group, ReflectionSubgroup) else list(group)
    if not elements:
        return True
    if stage is None:
        stage = _stage_of(p)
    n = ncoords if ncoords is not None else len(elements[0])
    vs = [Variable("y", stage, k + 1) for k in range(n)]
    return all(act(w, p, vs) == p for w in elements)


def full_weyl_group(g: GroupSpec) -> ReflectionSubgroup:
    rd = root_datum(g)
    return ReflectionSubgroup(
        group=g,
        generators=rd.simple_reflections,
        element_list=tuple(weyl_elements(rd)),
        roots=rd.roots,
        positive_roots=rd.positive_roots,
        factor_structure=None,
    )


# ---------------------------------------------------------------------------
# the end-to-end report


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    first_divergence: int | None = None

    def to_data(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "first_divergence": self.first_divergence,
        }


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)
    expected: GradedSeries | None = None
    euler: int | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = []
        if self.expected is not None:
            lines.append(f"tower Poincaré polynomial: {self.expected.render()}")
        if self.euler is not None:
            lines.append(f"Euler characteristic: {self.euler}")
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"[{status}] {r.name}"
            if r.detail:
                line += f": {r.detail}"
            if r.first_divergence is not None:
                line += f" (first divergence in degree {r.first_divergence})"
            lines.append(line)
        lines.append("all checks passed" if self.passed else "some checks failed")
        return "\n".join(lines) + "\n"

    def to_data(self) -> dict:
        return {
            "schema": 1,
            "kind": "check-report",
            "passed": self.passed,
            "tower_poincare": self.expected.to_data() if self.expected is not None else None,
            "euler_characteristic": self.euler,
            "results": [r.to_data() for r in self.results],
        }


def _compare(name: str, got: GradedSeries, want: GradedSeries) -> CheckResult:
    d = got.first_difference(want)
    if d is None:
        return CheckResult(name, True, got.render())
    return CheckResult(name, False, f"got {got.render()}, expected {want.render()}", d)


def _guarded(name: str, fn) -> CheckResult:
    try:
        return fn()
    except (FlagBottError, ValueError) as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")


def cross_check(
    spec: TowerSpec,
    kind: str = "grevlex",
    budget: int | None = None,
    ordinary=None,
    equivariant=None,
) -> CheckReport:
    """Run the four oracle checks; ``ordinary``/``equivariant`` override the builders (for mutation tests)."""
    report = CheckReport()
    expected = tower_poincare(spec)
    report.expected = expected
    report.euler = euler_characteristic(spec)

    def ordinary_check():
        p = ordinary if ordinary is not None else ordinary_presentation(spec)
        return _compare("ordinary Hilbert series = tower Poincaré polynomial", p.hilbert_series(kind, budget), expected)

    def equivariant_check():
        p = equivariant if equivariant is not None else equivariant_presentation(spec)
        got = p.hilbert_series(kind, budget).times_one_minus(2, spec.total_rank())
        return _compare("equivariant Hilbert series x (1-t^2)^rank = tower Poincaré polynomial", got, expected)

    def palindrome_check():
        top = 2 * sum(positive_roots_outside_centralizer(s.group, s.centralizer) for s in spec.stages)
        ok = expected.is_palindromic() and expected.top_degree() == top
        coeffs = expected.coefficients()
        first = None
        if not ok:
            first = next((i for i in range(len(coeffs)) if coeffs[i] != coeffs[-1 - i]), len(coeffs))
        return CheckResult("tower Poincaré polynomial is palindromic", ok, f"top degree {expected.top_degree()}", first)

    def invariance_check():
        ring = spec.ring
        bad = []
        for l, s in enumerate(spec.stages, start=1):
            full = weyl_elements(root_datum(s.group))
            for h in fundamental_invariants(s.group, ring, l):
                if not check_invariance(h, full, l, s.group.ncoords):
                    bad.append(h.render())
            model = stage_model(s, ring, l)
            for v, d in model.definitions:
                if not check_invariance(d, model.weyl, l, s.group.ncoords):
                    bad.append(f"{v.token} = {d.render()}")
        return CheckResult("emitted invariants are invariant", not bad, "; ".join(bad))

    for name, fn in (
        ("ordinary", ordinary_check),
        ("equivariant", equivariant_check),
        ("palindromic", palindrome_check),
        ("invariance", invariance_check),
    ):
        report.results.append(_guarded(name, fn))
    return report
