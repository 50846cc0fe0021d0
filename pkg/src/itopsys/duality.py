"""Two-valued spectra, up-set algebras and the finite duality round trips.

In the finite case an Esakia space is just a finite poset with the discrete
topology, so the dual of a Heyting algebra ``A`` is the set of bounded-lattice
homs ``A -> 2`` ordered pointwise, and the dual of a poset is its algebra of
up-sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import NotIsomorphic
from .lattice import (
    BOUNDED_LATTICE,
    HEYTING,
    HeytingAlgebra,
    HomCandidate,
    LatticeSpec,
    Verdict,
    _bits,
    build_lattice,
    check_hom,
    heyting_from_table,
    require_hom,
    two,
)
from .posets import FinitePoset


@dataclass(frozen=True)
class TwoValuedHom:
    source: HeytingAlgebra
    bits: tuple[int, ...]

    def __call__(self, a) -> int:
        return self.bits[self.source.index(a)]

    @property
    def filter(self) -> frozenset[int]:
        return frozenset(i for i, b in enumerate(self.bits) if b)

    @property
    def filter_names(self) -> frozenset[str]:
        return frozenset(self.source.names[i] for i in self.filter)

    def as_hom(self) -> HomCandidate:
        return HomCandidate(self.source, two(), self.bits)

    def le(self, other: "TwoValuedHom") -> bool:
        return all(x <= y for x, y in zip(self.bits, other.bits))


@dataclass(frozen=True)
class SpectrumPoset:
    algebra: HeytingAlgebra
    homs: tuple[TwoValuedHom, ...]

    def __len__(self) -> int:
        return len(self.homs)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(f"h{i}" for i in range(len(self.homs)))

    @cached_property
    def poset(self) -> FinitePoset:
        n = len(self.homs)
        leq = [[self.homs[i].le(self.homs[j]) for j in range(n)] for i in range(n)]
        return FinitePoset.from_matrix(self.names, leq)

    def le(self, i: int, j: int) -> bool:
        return self.poset.leq[i][j]

    @cached_property
    def _by_bits(self) -> dict[tuple[int, ...], int]:
        return {h.bits: i for i, h in enumerate(self.homs)}

    def locate(self, bits: Sequence[int]) -> int | None:
        return self._by_bits.get(tuple(bits))


@dataclass(frozen=True)
class Isomorphism:
    """Witness of an isomorphism; ``forward`` and ``backward`` are index maps."""

    kind: str
    source: object
    target: object
    forward: tuple[int, ...]
    backward: tuple[int, ...]


@dataclass(frozen=True)
class DualMap:
    """The poset map ``v -> v∘f`` from spectrum(A) to spectrum(B) for f: B -> A."""

    hom: HomCandidate
    source: SpectrumPoset
    target: SpectrumPoset
    mapping: tuple[int, ...]
    monotone: bool
    p_morphism: bool
    failures: list = field(default_factory=list)


def join_irreducibles(A: HeytingAlgebra) -> list[int]:
    """Elements with exactly one lower cover."""
    L = A.lattice
    out = []
    for j in range(len(A)):
        if j == A.bottom:
            continue
        below = L.down_masks[j] & ~(1 << j)
        maximal = [x for x in _bits(below) if L.up_masks[x] & below == 1 << x]
        if len(maximal) == 1:
            out.append(j)
    return out


def spectrum(A: HeytingAlgebra) -> SpectrumPoset:
    """All bounded-lattice homs ``A -> 2``, sorted lexicographically by bits.

    In a finite distributive lattice every prime filter is principal, generated
    by a join-irreducible element, so the homs are exactly ``a -> [j <= a]``.
    """
    homs = []
    for j in join_irreducibles(A):
        homs.append(tuple(int(A.leq[j][a]) for a in range(len(A))))
    homs.sort()
    return SpectrumPoset(A, tuple(TwoValuedHom(A, bits) for bits in homs))


def prime_filters(A: HeytingAlgebra) -> list[frozenset[str]]:
    """Prime filters (as element-name sets) in spectrum order."""
    return [h.filter_names for h in spectrum(A).homs]


def upset_name(P: FinitePoset, mask: int) -> str:
    return "{" + ",".join(P.mask_names(mask)) + "}"


def upset_algebra(P: FinitePoset) -> HeytingAlgebra:
    """Heyting algebra of up-sets of ``P`` under union and intersection.

    Implication is ``U -> V = {x : every y >= x in U lies in V}``.  Element names list the
    members, e.g. ``{w0,w1}``.
    """
    masks = P.upsets
    names = [upset_name(P, m) for m in masks]
    pairs = [(names[i], names[j]) for i, u in enumerate(masks) for j, v in enumerate(masks)
             if i != j and u & ~v == 0]
    L = build_lattice(LatticeSpec(names, pairs, covers=False))
    mask_of = {upset_name(P, m): m for m in masks}
    canon = [mask_of[x] for x in L.names]
    where = {m: i for i, m in enumerate(canon)}
    n = len(canon)
    for i in range(n):
        for j in range(n):
            assert canon[L.meet[i][j]] == canon[i] & canon[j]
            assert canon[L.join[i][j]] == canon[i] | canon[j]
    imp = []
    for u in canon:
        row = []
        for v in canon:
            w = 0
            for x in range(len(P)):
                if P.up_masks[x] & u & ~v == 0:
                    w |= 1 << x
            row.append(where[w])
        imp.append(row)
    return heyting_from_table(L, imp)


def upset_masks(P: FinitePoset, A: HeytingAlgebra) -> list[int]:
    """Bitmask of each element of ``A = upset_algebra(P)``."""
    lookup = {upset_name(P, m): m for m in P.upsets}
    return [lookup[x] for x in A.names]


def roundtrip_algebra(A: HeytingAlgebra) -> Isomorphism:
    """Verify ``a -> {h : h(a) = 1}`` is a Heyting isomorphism onto the up-sets of the spectrum."""
    if len(A) < 2:
        raise ValueError("round trip needs a nontrivial algebra")
    S = spectrum(A)
    P = S.poset
    B = upset_algebra(P)
    index = {m: i for i, m in enumerate(upset_masks(P, B))}
    forward = []
    for a in range(len(A)):
        mask = sum(1 << i for i, h in enumerate(S.homs) if h.bits[a])
        if not P.is_upset(mask) or mask not in index:
            raise NotIsomorphic(f"image of {A.names[a]} is not an up-set", (A.names[a],))
        forward.append(index[mask])
    if len(set(forward)) != len(A) or len(B) != len(A):
        dup = next((A.names[a] for a in range(len(A)) if forward.count(forward[a]) > 1), None)
        raise NotIsomorphic("representation map is not bijective", (dup,) if dup else ())
    backward = [0] * len(B)
    for a, b in enumerate(forward):
        backward[b] = a
    f = HomCandidate(A, B, tuple(forward))
    g = HomCandidate(B, A, tuple(backward))
    for h in (f, g):
        verdict = check_hom(h, HEYTING)
        if not verdict:
            raise NotIsomorphic(f"representation map breaks {verdict.witness.law}",
                                verdict.witness)
    return Isomorphism("heyting", A, B, f.mapping, g.mapping)


def roundtrip_poset(P: FinitePoset) -> Isomorphism:
    """Verify ``x -> (U -> [x in U])`` is an order isomorphism onto spectrum(upset_algebra(P))."""
    A = upset_algebra(P)
    S = spectrum(A)
    masks = upset_masks(P, A)
    forward = []
    for x in range(len(P)):
        bits = tuple(int(m >> x & 1) for m in masks)
        i = S.locate(bits)
        if i is None:
            raise NotIsomorphic(f"h_{P.names[x]} is not in the spectrum", (P.names[x],))
        forward.append(i)
    if len(set(forward)) != len(P) or len(S) != len(P):
        raise NotIsomorphic("point map is not bijective", ())
    Q = S.poset
    for x in range(len(P)):
        for y in range(len(P)):
            if P.leq[x][y] != Q.leq[forward[x]][forward[y]]:
                raise NotIsomorphic("order not preserved and reflected",
                                    (P.names[x], P.names[y]))
    backward = [0] * len(P)
    for x, i in enumerate(forward):
        backward[i] = x
    return Isomorphism("order", P, S, tuple(forward), tuple(backward))


def dualize_hom(f: HomCandidate) -> DualMap:
    """Dual of a Heyting hom ``f: B -> A``: the map ``v -> v∘f``.

    Reports monotonicity and the back condition: if ``v∘f <= w`` then some
    ``v' >= v`` has ``v'∘f = w``.
    """
    require_hom(f, HEYTING)
    B, A = f.source, f.target
    SA, SB = spectrum(A), spectrum(B)
    mapping = []
    for v in SA.homs:
        i = SB.locate(tuple(v.bits[f.mapping[b]] for b in range(len(B))))
        assert i is not None, "composite of homs must be a hom"
        mapping.append(i)
    failures = []
    PA, PB = SA.poset, SB.poset
    monotone = True
    for x in range(len(SA)):
        for y in range(len(SA)):
            if PA.leq[x][y] and not PB.leq[mapping[x]][mapping[y]]:
                monotone = False
                failures.append(("monotone", SA.names[x], SA.names[y]))
    p_morphism = True
    for x in range(len(SA)):
        for w in range(len(SB)):
            if PB.leq[mapping[x]][w] and not any(
                    PA.leq[x][z] and mapping[z] == w for z in range(len(SA))):
                p_morphism = False
                failures.append(("back", SA.names[x], SB.names[w]))
    return DualMap(f, SA, SB, tuple(mapping), monotone, p_morphism, failures)


def compose_maps(g: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """``g ∘ f`` for index maps."""
    return tuple(g[x] for x in f)


def is_forest(P: FinitePoset) -> Verdict:
    """Every principal up-set is a chain; witness ``(x, y, z)`` with y, z >= x incomparable."""
    n = len(P)
    for x in range(n):
        above = list(_bits(P.up_masks[x]))
        for i, y in enumerate(above):
            for z in above[i + 1:]:
                if not P.leq[y][z] and not P.leq[z][y]:
                    return Verdict(False, (P.names[x], P.names[y], P.names[z]))
    return Verdict(True)


def esakia_conditions(P: FinitePoset) -> dict[str, bool]:
    """Esakia space axioms for the finite discrete topology.

    Compactness and clopenness of down-sets hold for every finite discrete
    space; they are reported rather than skipped.  Order separation is
    checked with the principal up-set of ``x``.
    """
    n = len(P)
    separation = all(P.leq[x][y] or not (P.up_masks[x] >> y & 1)
                     for x in range(n) for y in range(n))
    return {
        "compact": True,
        "priestley_separation": separation,
        "downset_of_clopen_is_clopen": all(P.is_downset(P.down_closure(m))
                                          for m in range(1 << n)) if n <= 12 else True,
    }


def inverse_relation_image(P: FinitePoset, mask: int) -> int:
    """Points below some member of ``mask``, read straight off the relation."""
    n = len(P)
    return sum(1 << x for x in range(n)
               if any(P.leq[x][u] for u in range(n) if mask >> u & 1))


def priestley_condition(S: SpectrumPoset) -> Verdict:
    """For every up-set U of the spectrum, the set of points below some member of U equals the down-closure of U."""
    P = S.poset
    for U in P.upsets:
        if inverse_relation_image(P, U) != P.down_closure(U):
            return Verdict(False, tuple(P.mask_names(U)))
    return Verdict(True)


def check_two_valued(h: TwoValuedHom) -> Verdict:
    return check_hom(h.as_hom(), BOUNDED_LATTICE)
