"""End-to-end acceptance gate, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the PASS/FAIL lines appear in the
"acceptance criteria" section of the terminal summary.
"""

import random
import time

from itopsys.duality import (
    is_forest,
    prime_filters,
    roundtrip_algebra,
    roundtrip_poset,
    spectrum,
    upset_algebra,
)
from itopsys.errors import AxiomViolation
from itopsys.formula import BOT, And, Atom, Imp, Neg, Or, parse_formula
from itopsys.kripke import (
    KripkeModel,
    countermodel_search,
    evaluate_in_algebra,
    forces,
    model_from_system,
    truth_set,
)
from itopsys.lattice import (
    BOUNDED_LATTICE,
    HEYTING,
    LatticeSpec,
    build_lattice,
    chain,
    check_hom,
    is_goedel,
    residuate,
)
from itopsys.posets import all_posets, posets_of_size
from itopsys.topsys import (
    build_system,
    canonical_system,
    check_axioms,
    morphisms_into_canonical,
    two_point_example,
    unit_and_triangle,
)

IPC_THEOREMS = [
    "a -> b -> a",
    "(a -> b -> c) -> (a -> b) -> a -> c",
    "0 -> a",
    "a & b -> a",
    "a -> a | b",
    "(a -> c) -> (b -> c) -> a | b -> c",
    "a -> ~~a",
    "~~~a -> ~a",
    "(a -> b) -> ~b -> ~a",
    "~~(a | ~a)",
]


def test_criterion_1_three_chain_spectrum(report_criterion):
    t0 = time.perf_counter()
    A = chain(["0", "a", "1"])
    S = spectrum(A)
    # filter {1} is the non-Heyting hom, filter {1,a} the Heyting one
    by_filter = {frozenset(h.filter_names): (i, h) for i, h in enumerate(S.homs)}
    i_small, h_small = by_filter[frozenset({"1"})]
    i_big, h_big = by_filter[frozenset({"1", "a"})]
    v_big = check_hom(h_big.as_hom(), HEYTING)
    v_small = check_hom(h_small.as_hom(), HEYTING)
    ok = (
        len(S) == 2
        and all(check_hom(h.as_hom(), BOUNDED_LATTICE) for h in S.homs)
        and S.le(i_small, i_big) and not S.le(i_big, i_small)
        and bool(v_big)
        and not v_small
        and tuple(v_small.witness) == ("imp", ("a", "0"))
        and set(prime_filters(A)) == {frozenset({"1"}), frozenset({"1", "a"})}
    )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    report_criterion(1, "3-chain spectrum and Heyting check", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_2_excluded_middle(report_criterion):
    t0 = time.perf_counter()
    A = chain(["0", "a", "1"])
    S = canonical_system(A)
    lem = evaluate_in_algebra(A, parse_formula("a | ~a"))
    spec = spectrum(A)
    bottom = next(i for i in range(len(spec)) if all(spec.le(i, j) for j in range(len(spec))))
    top = 1 - bottom
    ok = not check_axioms(S.points, A, S.sat) and not S.sat[bottom][lem] and S.sat[top][lem]
    # the same through the induced Kripke model
    M = model_from_system(S)
    f = parse_formula("a | ~a")
    ok = ok and not forces(M, bottom, f) and forces(M, top, f)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    report_criterion(2, "canonical 3-chain system refutes a | ~a at its bottom point", ok,
                     f"{elapsed:.3f}s")
    assert ok


def test_criterion_3_duality_round_trips(report_criterion):
    t0 = time.perf_counter()
    failures = []
    count = 0
    for P in all_posets(5):
        count += 1
        try:
            roundtrip_poset(P)
            A = upset_algebra(P)
            # the empty poset yields the one-element algebra, outside the |A| >= 2 domain
            if len(A) >= 2:
                roundtrip_algebra(A)
        except Exception as exc:  # noqa: BLE001 - every failure is a finding
            failures.append((P.pairs(), repr(exc)))
    elapsed = time.perf_counter() - t0
    ok = not failures and count == 88 and elapsed < 60
    report_criterion(3, "round trips over all posets with <= 5 points", ok,
                     f"{count} posets, {len(failures)} failures, {elapsed:.2f}s")
    assert ok, failures[:3]


def test_criterion_4_goedel_iff_forest(report_criterion):
    mismatches = []
    count = 0
    for P in all_posets(5):
        count += 1
        if bool(is_goedel(upset_algebra(P))) != bool(is_forest(P)):
            mismatches.append(P.pairs())
    ok = not mismatches
    report_criterion(4, "Goedel algebra iff dual poset is a forest", ok,
                     f"{count} posets, {len(mismatches)} discrepancies")
    assert ok, mismatches[:3]


def test_criterion_5_canonical_systems_are_valid(report_criterion):
    failures = []
    count = 0
    for P in all_posets(4):
        A = upset_algebra(P)
        count += 1
        try:
            S = canonical_system(A)
        except AxiomViolation as exc:
            failures.append(exc.violations)
            continue
        if check_axioms(S.points, A, S.sat):
            failures.append(S.points)
    ok = not failures
    report_criterion(5, "canonical systems satisfy every axiom", ok,
                     f"{count} algebras, {len(failures)} failures")
    assert ok


def trivial_algebra():
    return residuate(build_lattice(LatticeSpec(["*"], [])))


def corpus_algebras(max_elements=6):
    out = [trivial_algebra()]
    for P in all_posets(5):
        if 1 <= len(P) and len(P.upsets) <= max_elements:
            out.append(upset_algebra(P))
    return out


def corpus_systems(algebras):
    """Canonical systems, their valid subsystems, duplicate-row systems, the two-point example."""
    systems = [two_point_example()]
    for A in algebras:
        C = canonical_system(A)
        spec = spectrum(A).poset
        for mask in spec.upsets:
            keep = [x for x in range(len(C)) if mask >> x & 1]
            systems.append(build_system([C.points[x] for x in keep], A,
                                        [C.sat[x] for x in keep]))
        if len(C):
            systems.append(build_system(list(C.points) + ["dup"], A,
                                        list(C.sat) + [C.sat[0]]))
    return systems


def test_criterion_6_adjunction_triangle(report_criterion):
    t0 = time.perf_counter()
    algebras = corpus_algebras()
    systems = corpus_systems(algebras)
    failures = []
    morphisms = 0
    for S in systems:
        for B in algebras:
            for m in morphisms_into_canonical(S, B):
                morphisms += 1
                try:
                    r = unit_and_triangle(S, m)
                    if not (r.commutes and r.unique is True):
                        failures.append((S, m, r.unique))
                except Exception as exc:  # noqa: BLE001
                    failures.append((S, m, repr(exc)))
    elapsed = time.perf_counter() - t0
    ok = not failures and morphisms > 0
    report_criterion(6, "every morphism into a canonical system factors uniquely through the unit",
                     ok, f"{len(systems)} systems, {len(algebras)} algebras, {morphisms} morphisms, "
                         f"{len(failures)} failures, {elapsed:.2f}s")
    assert ok, failures[:3]


def random_formula(rnd, atom_names, depth):
    if depth == 0 or rnd.random() < 0.2:
        return BOT if rnd.random() < 0.1 else Atom(rnd.choice(atom_names))
    kind = rnd.randrange(4)
    if kind == 3:
        return Neg(random_formula(rnd, atom_names, depth - 1))
    ctor = (And, Or, Imp)[kind]
    return ctor(random_formula(rnd, atom_names, depth - 1),
                random_formula(rnd, atom_names, depth - 1))


def test_criterion_7_heredity_and_agreement(report_criterion):
    rnd = random.Random(20240607)
    atom_names = ["p", "q", "r"]
    frames = {n: posets_of_size(n) for n in range(1, 7)}
    violations = 0
    for _ in range(1000):
        frame = rnd.choice(frames[rnd.randint(1, 6)])
        val = tuple(rnd.choice(frame.upsets) for _ in atom_names)
        M = KripkeModel(frame, tuple(atom_names), val)
        f = random_formula(rnd, atom_names, rnd.randint(1, 5))
        n = len(frame)
        forced = [forces(M, w, f) for w in range(n)]
        for w in range(n):
            for u in range(n):
                if frame.leq[w][u] and forced[w] and not forced[u]:
                    violations += 1

    algebras = corpus_algebras()
    systems = [S for S in corpus_systems(algebras) if len(set(S.sat)) == len(S.sat)]
    disagreements = 0
    checks = 0
    for S in systems:
        M = model_from_system(S)
        A = S.algebra
        for _ in range(50):
            f = random_formula(rnd, list(A.names), rnd.randint(0, 4))
            a = evaluate_in_algebra(A, f)
            t = truth_set(M, f)
            for x in range(len(S)):
                checks += 1
                if bool(t >> x & 1) != S.sat[x][a]:
                    disagreements += 1
    ok = violations == 0 and disagreements == 0
    report_criterion(7, "heredity on random models, system/model agreement on the corpus", ok,
                     f"1000 heredity cases, {violations} violations; {len(systems)} systems, "
                     f"{checks} agreement checks, {disagreements} disagreements")
    assert ok


def test_criterion_8_countermodel_sanity(report_criterion):
    t0 = time.perf_counter()
    peirce = countermodel_search(parse_formula("((a -> b) -> a) -> a"), 2)
    found = [t for t in IPC_THEOREMS if countermodel_search(parse_formula(t), 6) is not None]
    elapsed = time.perf_counter() - t0
    ok = peirce is not None and not found and elapsed < 120
    report_criterion(8, "Peirce refuted in 2 worlds, ten IPC theorems survive 6 worlds", ok,
                     f"{len(found)} theorems refuted, {elapsed:.2f}s")
    assert ok, found
