"""Intuitionistic topological systems ``(X, |=, A)`` over finite Heyting algebras.

The satisfaction relation is stored as a full boolean matrix and validated
against the four clauses (0 is never satisfied, meets and joins are evaluated
pointwise, and ``a -> b`` is quantified over points whose hom lies above).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .duality import SpectrumPoset, TwoValuedHom, is_forest, spectrum
from .errors import AxiomViolation, InputError, NotAHom, TriangleFailure
from .lattice import (
    BOUNDED_LATTICE,
    HEYTING,
    HeytingAlgebra,
    HomCandidate,
    Verdict,
    check_hom,
    compose,
    homomorphisms,
    identity_hom,
    is_goedel,
    require_hom,
)

# exhaustive uniqueness search in unit_and_triangle is skipped above this size
UNIQUENESS_BOUND = 6


@dataclass(frozen=True)
class ITopSystem:
    points: tuple[str, ...]
    algebra: HeytingAlgebra
    sat: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        sat = {p: [a for a, v in zip(self.algebra.names, row) if v]
               for p, row in zip(self.points, self.sat)}
        return f"ITopSystem(sat={sat!r})"

    def point_index(self, x) -> int:
        if isinstance(x, int) and 0 <= x < len(self.points):
            return x
        try:
            return self.points.index(x)
        except ValueError:
            raise InputError(f"unknown point {x!r}") from None

    def satisfies(self, x, a) -> bool:
        return self.sat[self.point_index(x)][self.algebra.index(a)]

    def row_bits(self, x: int) -> tuple[int, ...]:
        return tuple(int(b) for b in self.sat[x])


@dataclass(frozen=True)
class SystemMorphism:
    """``(f1, f2): S -> T`` with f1 a point map and f2 a hom ``T.algebra -> S.algebra``."""

    source: ITopSystem
    target: ITopSystem
    f1: tuple[int, ...]
    f2: HomCandidate

    def __repr__(self) -> str:
        f1 = {self.source.points[x]: self.target.points[y] for x, y in enumerate(self.f1)}
        return f"SystemMorphism(f1={f1!r}, f2={self.f2!r})"


@dataclass(frozen=True)
class SystemClassification:
    heyting_algebraic: bool
    goedel_algebraic: bool
    t0: bool


@dataclass
class TriangleReport:
    commutes: bool
    unique: Optional[bool]  # None: not checked (algebras above UNIQUENESS_BOUND)
    f_hat: HomCandidate
    eta: SystemMorphism
    composite: SystemMorphism
    unit_is_isomorphism: bool
    candidates_checked: int = 0


def _hom_rows(points: Sequence[str], A: HeytingAlgebra, sat) -> list[AxiomViolation]:
    names = A.names
    out = []
    for x, row in enumerate(sat):
        p = points[x]
        if row[A.bottom]:
            out.append(AxiomViolation(1, p, (names[A.bottom],)))
        for a, b in itertools.combinations_with_replacement(range(len(A)), 2):
            if row[A.meet[a][b]] != (row[a] and row[b]):
                out.append(AxiomViolation(2, p, (names[a], names[b])))
            if row[A.join[a][b]] != (row[a] or row[b]):
                out.append(AxiomViolation(3, p, (names[a], names[b])))
        if not row[A.top]:
            # x |= 1 is the clause-4 instance 1 = 1 -> 1
            out.append(AxiomViolation(4, p, (names[A.top], names[A.top])))
    return out


def check_axioms(points: Sequence[str], A: HeytingAlgebra, sat) -> list[AxiomViolation]:
    """Every failing clause, in point order; empty iff the system is valid.

    Clause 4 is only evaluated once every row is a bounded-lattice hom, since
    the order it quantifies over lives on homs.
    """
    out = _hom_rows(points, A, sat)
    if out:
        return out
    n = len(points)
    rows = [tuple(int(v) for v in row) for row in sat]
    above = [[y for y in range(n) if all(p <= q for p, q in zip(rows[x], rows[y]))]
             for x in range(n)]
    for x in range(n):
        for a in range(len(A)):
            for b in range(len(A)):
                rhs = all(not sat[y][a] or sat[y][b] for y in above[x])
                if sat[x][A.imp[a][b]] != rhs:
                    out.append(AxiomViolation(4, points[x], (A.names[a], A.names[b])))
    return out


def build_system(points: Sequence[str], A: HeytingAlgebra, sat) -> ITopSystem:
    """Validate and freeze a system; raises the first AxiomViolation (all in ``.violations``).

    The point set may be empty; over the one-element algebra it must be.
    """
    points = tuple(points)
    if len(set(points)) != len(points) or any(not isinstance(p, str) or not p for p in points):
        raise InputError("point names must be distinct nonempty strings")
    if len(sat) != len(points) or any(len(row) != len(A) for row in sat):
        raise InputError("satisfaction matrix has the wrong shape")
    sat = tuple(tuple(bool(v) for v in row) for row in sat)
    violations = check_axioms(points, A, sat)
    if violations:
        first = violations[0]
        raise AxiomViolation(first.axiom, first.point, first.elements, violations)
    return ITopSystem(points, A, sat)


def system_from_sets(points: Sequence[str], A: HeytingAlgebra,
                     satisfied: dict[str, Sequence[str]]) -> ITopSystem:
    """Build from ``{point: [satisfied element names]}``."""
    sat = []
    for p in points:
        chosen = {A.index(a) for a in satisfied.get(p, ())}
        sat.append([a in chosen for a in range(len(A))])
    return build_system(points, A, sat)


def p_star(S: ITopSystem) -> tuple[TwoValuedHom, ...]:
    """``x -> (a -> [x |= a])``, each row checked as a bounded-lattice hom."""
    out = []
    for x, row in enumerate(S.sat):
        h = TwoValuedHom(S.algebra, tuple(int(v) for v in row))
        verdict = check_hom(h.as_hom(), BOUNDED_LATTICE)
        if not verdict:
            raise NotAHom(f"row of {S.points[x]} is not a hom", (S.points[x],))
        out.append(h)
    return tuple(out)


def p_star_indices(S: ITopSystem, spec: SpectrumPoset | None = None) -> tuple[int, ...]:
    """p* as indices into ``spectrum(S.algebra)``."""
    spec = spec or spectrum(S.algebra)
    out = []
    for h in p_star(S):
        i = spec.locate(h.bits)
        if i is None:
            raise NotAHom("row is not in the spectrum", ())
        out.append(i)
    return tuple(out)


def classify_system(S: ITopSystem) -> SystemClassification:
    spec = spectrum(S.algebra)
    image = p_star_indices(S, spec)
    bijective = len(set(image)) == len(image) == len(spec)
    t0 = len(set(S.sat)) == len(S.sat)
    return SystemClassification(
        heyting_algebraic=bijective,
        goedel_algebraic=bijective and bool(is_goedel(S.algebra)),
        t0=t0,
    )


def canonical_system(A: HeytingAlgebra) -> ITopSystem:
    """``(spectrum(A), v |= a iff v(a) = 1, A)``, validated on construction."""
    spec = spectrum(A)
    return build_system(spec.names, A, [[bool(b) for b in h.bits] for h in spec.homs])


def identity_morphism(S: ITopSystem) -> SystemMorphism:
    return SystemMorphism(S, S, tuple(range(len(S))), identity_hom(S.algebra))


def compose_morphisms(g: SystemMorphism, f: SystemMorphism) -> SystemMorphism:
    """``(g1, g2) ∘ (f1, f2) = (g1 ∘ f1, f2 ∘ g2)``."""
    return SystemMorphism(f.source, g.target, tuple(g.f1[x] for x in f.f1),
                          compose(f.f2, g.f2))


def check_morphism(m: SystemMorphism) -> Verdict:
    """Heyting-hom condition on f2 plus continuity ``x |= f2(b) iff f1(x) |=' b``."""
    S, T = m.source, m.target
    violations: list = []
    if m.f2.source != T.algebra or m.f2.target != S.algebra:
        violations.append(("typing", "f2"))
        return Verdict(False, violations[0], violations)
    if len(m.f1) != len(S) or any(not 0 <= y < len(T) for y in m.f1):
        violations.append(("typing", "f1"))
        return Verdict(False, violations[0], violations)
    hom = check_hom(m.f2, HEYTING)
    violations.extend(("hom",) + tuple(v) for v in hom.violations)
    for x in range(len(S)):
        for b in range(len(T.algebra)):
            if S.sat[x][m.f2.mapping[b]] != T.sat[m.f1[x]][b]:
                violations.append(("continuity", S.points[x], T.algebra.names[b]))
    return Verdict(not violations, violations[0] if violations else (), violations)


def dual_system_morphism(f: HomCandidate) -> SystemMorphism:
    """``(_∘f, f): canonical_system(A) -> canonical_system(B)`` for a Heyting hom f: B -> A."""
    require_hom(f, HEYTING)
    B, A = f.source, f.target
    SA, SB = canonical_system(A), canonical_system(B)
    specB = spectrum(B)
    f1 = []
    for row in SA.sat:
        bits = tuple(int(row[f.mapping[b]]) for b in range(len(B)))
        f1.append(specB.locate(bits))
    m = SystemMorphism(SA, SB, tuple(f1), f)
    assert check_morphism(m), "dual morphism must be continuous"
    return m


def unit(S: ITopSystem) -> SystemMorphism:
    """``η = (p*, id_A): S -> canonical_system(A)``."""
    return SystemMorphism(S, canonical_system(S.algebra), p_star_indices(S),
                          identity_hom(S.algebra))


def _is_iso(m: SystemMorphism) -> bool:
    if sorted(m.f1) != list(range(len(m.target))) or len(m.f1) != len(m.target):
        return False
    if sorted(m.f2.mapping) != list(range(len(m.f2.target))) or len(m.f2.source) != len(m.f2.target):
        return False
    inv1 = [0] * len(m.f1)
    for x, y in enumerate(m.f1):
        inv1[y] = x
    inv2 = [0] * len(m.f2.mapping)
    for b, a in enumerate(m.f2.mapping):
        inv2[a] = b
    back = SystemMorphism(m.target, m.source, tuple(inv1),
                          HomCandidate(m.f2.target, m.f2.source, tuple(inv2)))
    return bool(check_morphism(back))


def unit_and_triangle(S: ITopSystem, m: SystemMorphism) -> TriangleReport:
    """Factor ``m: S -> canonical_system(B)`` through the unit and check uniqueness.

    ``f_hat = m.f2`` and the claim is ``m = (_∘f_hat, f_hat) ∘ η``.  Uniqueness
    is decided by trying every Heyting hom ``B -> A`` when both algebras have
    at most UNIQUENESS_BOUND elements.
    """
    if m.source != S:
        raise InputError("morphism does not start at the given system")
    if not check_morphism(m):
        raise InputError("morphism is not continuous or f2 is not a Heyting hom")
    A, B = S.algebra, m.f2.source
    eta = unit(S)
    f_hat = m.f2
    composite = compose_morphisms(dual_system_morphism(f_hat), eta)
    if composite.target != m.target:
        raise TriangleFailure("target of m is not the canonical system of B", ())
    if composite.f2.mapping != m.f2.mapping:
        b = next(b for b in range(len(B)) if composite.f2.mapping[b] != m.f2.mapping[b])
        raise TriangleFailure(f"algebra maps disagree at {B.names[b]}", (B.names[b],))
    for x in range(len(S)):
        if composite.f1[x] != m.f1[x]:
            raise TriangleFailure(f"point maps disagree at {S.points[x]}", (S.points[x],))

    unique: Optional[bool] = None
    checked = 0
    if len(A) <= UNIQUENESS_BOUND and len(B) <= UNIQUENESS_BOUND:
        hits = 0
        for g in homomorphisms(B, A, HEYTING):
            checked += 1
            other = compose_morphisms(dual_system_morphism(g), eta)
            if other.f1 == m.f1 and other.f2.mapping == m.f2.mapping:
                hits += 1
        unique = hits == 1
    return TriangleReport(True, unique, f_hat, eta, composite, _is_iso(eta), checked)


def counit(A: HeytingAlgebra) -> HomCandidate:
    """``ξ: H(S(A)) -> A``, the identity; checked as a table identity."""
    B = canonical_system(A).algebra
    if B != A:
        raise TriangleFailure("H(S(A)) differs from A", ())
    return identity_hom(A)


def morphisms_into_canonical(S: ITopSystem, B: HeytingAlgebra):
    """Every morphism ``S -> canonical_system(B)``, one per Heyting hom ``B -> S.algebra``."""
    T = canonical_system(B)
    specB = spectrum(B)
    for f2 in homomorphisms(B, S.algebra, HEYTING):
        f1 = []
        for row in S.sat:
            f1.append(specB.locate(tuple(int(row[f2.mapping[b]]) for b in range(len(B)))))
        yield SystemMorphism(S, T, tuple(f1), f2)


def is_forest_dual(A: HeytingAlgebra) -> Verdict:
    return is_forest(spectrum(A).poset)


def two_point_example() -> ITopSystem:
    """Two points x, y over the 3-chain 0 < a < 1 with only y satisfying a."""
    from .lattice import chain

    A = chain(["0", "a", "1"])
    return system_from_sets(["x", "y"], A, {"x": ["1"], "y": ["a", "1"]})

