"""Finite bounded distributive lattices, Heyting algebras and homomorphisms.

Elements are addressed by their index in the canonical order (a topological
sort of ``leq`` with ties broken by name).  Every public function also accepts
element names where a single element is expected.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import (
    InputError,
    NotALattice,
    NotAPoset,
    NotAHom,
    NotBounded,
    NotDistributive,
    ResiduationFailure,
    UnknownElement,
)

Element = Union[int, str]

BOUNDED_LATTICE = "bounded-lattice"
HEYTING = "heyting"
HOM_KINDS = (BOUNDED_LATTICE, HEYTING)


@dataclass(frozen=True)
class LatticeSpec:
    """Input encoding: element names plus order pairs ``(x, y)`` meaning x <= y.

    ``covers`` records whether the pairs were given as a cover relation; both
    encodings are closed reflexively and transitively before use.
    """

    elements: Sequence[str]
    order: Sequence[tuple[str, str]]
    covers: bool = False


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def order_closure(n: int, pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure; returns the up-set bitmask of each index."""
    up = [1 << i for i in range(n)]
    for x, y in pairs:
        up[x] |= 1 << y
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    return up


def antisymmetry_witness(up: Sequence[int]) -> tuple[int, int] | None:
    for i, mask in enumerate(up):
        for j in _bits(mask):
            if j != i and up[j] >> i & 1:
                return i, j
    return None


def canonical_sort(names: Sequence[str], up: Sequence[int]) -> list[int]:
    """Kahn's algorithm over the strict order; ties go to the smaller name."""
    n = len(names)
    preds = [0] * n
    for i in range(n):
        for j in _bits(up[i] & ~(1 << i)):
            preds[j] += 1
    heap = [(names[i], i) for i in range(n) if preds[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(i)
        for j in _bits(up[i] & ~(1 << i)):
            preds[j] -= 1
            if preds[j] == 0:
                heapq.heappush(heap, (names[j], j))
    return out


@dataclass(frozen=True)
class BoundedDistributiveLattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"BoundedDistributiveLattice(names={self.names!r})"

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, a: Element) -> int:
        if isinstance(a, str):
            try:
                return self._index[a]
            except KeyError:
                raise UnknownElement(f"unknown element {a!r}", (a,)) from None
        if isinstance(a, int) and 0 <= a < len(self.names):
            return a
        raise UnknownElement(f"unknown element {a!r}", (a,))

    def le(self, a: Element, b: Element) -> bool:
        return self.leq[self.index(a)][self.index(b)]

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n))

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(sum(1 << j for j in range(n) if self.leq[j][i]) for i in range(n))

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(x, y)`` with y covering x, in canonical order."""
        out = []
        for x, y in itertools.product(range(len(self.names)), repeat=2):
            if x != y and self.leq[x][y]:
                between = self.up_masks[x] & self.down_masks[y] & ~(1 << x) & ~(1 << y)
                if not between:
                    out.append((x, y))
        return out


@dataclass(frozen=True)
class HeytingAlgebra:
    lattice: BoundedDistributiveLattice
    residuum: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.lattice)

    def __repr__(self) -> str:
        return f"HeytingAlgebra(names={self.names!r})"

    @property
    def names(self) -> tuple[str, ...]:
        return self.lattice.names

    @property
    def leq(self):
        return self.lattice.leq

    @property
    def meet(self):
        return self.lattice.meet

    @property
    def join(self):
        return self.lattice.join

    @property
    def imp(self):
        return self.residuum

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def index(self, a: Element) -> int:
        return self.lattice.index(a)

    def le(self, a: Element, b: Element) -> bool:
        return self.lattice.le(a, b)

    def name(self, a: int) -> str:
        return self.names[a]


@dataclass(frozen=True)
class HomCandidate:
    """A total map ``source -> target`` given by element indices."""

    source: HeytingAlgebra
    target: HeytingAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != len(self.source):
            raise InputError("hom candidate is not total on its source")
        if any(not 0 <= v < len(self.target) for v in self.mapping):
            raise InputError("hom candidate maps outside its target")

    @classmethod
    def from_names(cls, source: HeytingAlgebra, target: HeytingAlgebra,
                   mapping: dict[str, str]) -> "HomCandidate":
        missing = [a for a in source.names if a not in mapping]
        if missing:
            raise InputError(f"map undefined on {missing}")
        return cls(source, target,
                   tuple(target.index(mapping[a]) for a in source.names))

    def __call__(self, a: Element) -> int:
        return self.mapping[self.source.index(a)]

    def __repr__(self) -> str:
        return f"HomCandidate({self.as_names()!r})"

    def as_names(self) -> dict[str, str]:
        return {self.source.names[i]: self.target.names[v] for i, v in enumerate(self.mapping)}


class HomViolation(NamedTuple):
    """The equation for ``law`` fails at ``args`` (source element names)."""

    law: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome with an optional witness; truthy iff ``ok``."""

    ok: bool
    witness: tuple = ()
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def build_lattice(spec: LatticeSpec) -> BoundedDistributiveLattice:
    """Validate ``spec`` and return the lattice in canonical element order.

    Raises NotAPoset, NotBounded, NotALattice or NotDistributive with a witness.
    """
    names = list(spec.elements)
    if any(not isinstance(x, str) or not x for x in names):
        raise InputError("element names must be nonempty strings")
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise InputError(f"duplicate element name {dup!r}", (dup,))
    idx = {x: i for i, x in enumerate(names)}
    pairs = []
    for pair in spec.order:
        if len(pair) != 2:
            raise InputError(f"order pair {pair!r} does not have two entries")
        for x in pair:
            if x not in idx:
                raise UnknownElement(f"order pair mentions unknown element {x!r}", (x,))
        pairs.append((idx[pair[0]], idx[pair[1]]))

    n = len(names)
    up = order_closure(n, pairs)
    bad = antisymmetry_witness(up)
    if bad is not None:
        x, y = names[bad[0]], names[bad[1]]
        raise NotAPoset(f"cycle: {x} <= {y} <= {x}", (x, y, x))

    perm = canonical_sort(names, up)
    pos = {old: new for new, old in enumerate(perm)}
    cnames = tuple(names[i] for i in perm)
    cup = [0] * n
    for old, new in pos.items():
        cup[new] = sum(1 << pos[j] for j in _bits(up[old]))
    cdown = [sum(1 << j for j in range(n) if cup[j] >> i & 1) for i in range(n)]
    full = (1 << n) - 1

    if n == 0:
        raise NotBounded("empty carrier has no bottom or top", ())
    minimal = [i for i in range(n) if cdown[i] == 1 << i]
    maximal = [i for i in range(n) if cup[i] == 1 << i]
    if len(minimal) > 1:
        raise NotBounded("no bottom element",
                         (cnames[minimal[0]], cnames[minimal[1]], "bottom"))
    if len(maximal) > 1:
        raise NotBounded("no top element",
                         (cnames[maximal[0]], cnames[maximal[1]], "top"))

    def bound(masks_of, lower: bool):
        # the greatest lower bound (or least upper bound) is the common bound
        # whose own down-set (up-set) equals the set of common bounds
        table = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                common = masks_of[x] & masks_of[y]
                best = next((m for m in _bits(common) if masks_of[m] == common), None)
                if best is None:
                    op = "meet" if lower else "join"
                    raise NotALattice(f"{cnames[x]} and {cnames[y]} have no {op}",
                                      (cnames[x], cnames[y], op))
                table[x][y] = table[y][x] = best
        return tuple(tuple(row) for row in table)

    meet = bound(cdown, True)
    join = bound(cup, False)
    bottom, top = minimal[0], maximal[0]
    assert cup[bottom] == full and cdown[top] == full

    for a, b, c in itertools.product(range(n), repeat=3):
        if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
            raise NotDistributive(
                f"{cnames[a]} ∧ ({cnames[b]} ∨ {cnames[c]}) differs from its expansion",
                (cnames[a], cnames[b], cnames[c]))

    leq = tuple(tuple(bool(cup[i] >> j & 1) for j in range(n)) for i in range(n))
    return BoundedDistributiveLattice(cnames, leq, meet, join, bottom, top)


def check_residuation(L: BoundedDistributiveLattice, imp) -> None:
    """Raise ResiduationFailure unless ``c <= a->b  iff  a∧c <= b`` everywhere."""
    n = len(L)
    for a, b, c in itertools.product(range(n), repeat=3):
        if L.leq[c][imp[a][b]] != L.leq[L.meet[a][c]][b]:
            raise ResiduationFailure(
                f"residuation fails for a={L.names[a]}, b={L.names[b]}, c={L.names[c]}",
                (L.names[a], L.names[b], L.names[c]))


def residuate(L: BoundedDistributiveLattice) -> HeytingAlgebra:
    """Attach the relative pseudo-complement: a->b = join of {c : a∧c <= b}."""
    n = len(L)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = L.bottom
            for c in range(n):
                if L.leq[L.meet[a][c]][b]:
                    acc = L.join[acc][c]
            if not L.leq[L.meet[a][acc]][b]:
                raise ResiduationFailure(
                    f"{L.names[a]} ∧ ({L.names[a]} -> {L.names[b]}) is not below {L.names[b]}",
                    (L.names[a], L.names[b]))
            row.append(acc)
        table.append(tuple(row))
    return HeytingAlgebra(L, tuple(table))


def heyting_from_table(L: BoundedDistributiveLattice, imp) -> HeytingAlgebra:
    """Wrap an externally computed implication table after checking residuation."""
    imp = tuple(tuple(row) for row in imp)
    check_residuation(L, imp)
    return HeytingAlgebra(L, imp)


def heyting(elements: Sequence[str], order: Sequence[tuple[str, str]],
            covers: bool = True) -> HeytingAlgebra:
    """Shorthand: build and residuate in one step."""
    return residuate(build_lattice(LatticeSpec(elements, order, covers)))


def chain(names: Sequence[str]) -> HeytingAlgebra:
    """The chain ``names[0] < names[1] < ...`` as a Heyting algebra."""
    return heyting(names, list(zip(names, names[1:])))


def two() -> HeytingAlgebra:
    """The two-element algebra {0, 1}."""
    return chain(["0", "1"])


def negation(H: HeytingAlgebra, a: Element) -> int:
    return H.residuum[H.index(a)][H.bottom]


def is_goedel(H: HeytingAlgebra) -> Verdict:
    """Prelinearity (a->b) ∨ (b->a) = 1; the witness is a failing pair."""
    n = len(H)
    for a in range(n):
        for b in range(a + 1, n):
            if H.join[H.imp[a][b]][H.imp[b][a]] != H.top:
                return Verdict(False, (H.names[a], H.names[b]))
    return Verdict(True)


def check_hom(f: HomCandidate, kind: str = HEYTING) -> Verdict:
    """Check preservation of 0, 1, ∧, ∨ (and -> for the heyting kind).

    Every failing equation is listed in ``violations`` as a HomViolation.
    """
    if kind not in HOM_KINDS:
        raise ValueError(f"unknown hom kind {kind!r}")
    A, B, m = f.source, f.target, f.mapping
    names = A.names
    out: list[HomViolation] = []
    if m[A.bottom] != B.bottom:
        out.append(HomViolation("bottom", (names[A.bottom],)))
    if m[A.top] != B.top:
        out.append(HomViolation("top", (names[A.top],)))
    ops = [("meet", A.meet, B.meet), ("join", A.join, B.join)]
    if kind == HEYTING:
        ops.append(("imp", A.imp, B.imp))
    for law, src, dst in ops:
        for x, y in itertools.product(range(len(A)), repeat=2):
            if m[src[x][y]] != dst[m[x]][m[y]]:
                out.append(HomViolation(law, (names[x], names[y])))
    return Verdict(not out, out[0] if out else (), out)


def identity_hom(A: HeytingAlgebra) -> HomCandidate:
    return HomCandidate(A, A, tuple(range(len(A))))


def compose(g: HomCandidate, f: HomCandidate) -> HomCandidate:
    """``g ∘ f``: apply f, then g."""
    if f.target != g.source:
        raise InputError("homs are not composable")
    return HomCandidate(f.source, g.target, tuple(g.mapping[v] for v in f.mapping))


def require_hom(f: HomCandidate, kind: str = HEYTING) -> None:
    verdict = check_hom(f, kind)
    if not verdict:
        raise NotAHom(f"not a {kind} homomorphism: {verdict.witness!r}", verdict.witness)


def homomorphisms(source: HeytingAlgebra, target: HeytingAlgebra,
                  kind: str = HEYTING) -> Iterator[HomCandidate]:
    """All homs of the given kind, in lexicographic order of their mapping.

    Backtracks over source elements in canonical order and prunes as soon as
    an equation among already-assigned elements fails.
    """
    n, k = len(source), len(target)
    laws = [(source.meet, target.meet), (source.join, target.join)]
    if kind == HEYTING:
        laws.append((source.imp, target.imp))
    fixed = {source.bottom: target.bottom, source.top: target.top}
    m = [-1] * n

    def consistent(i: int) -> bool:
        for src, dst in laws:
            for x in range(i + 1):
                for y in range(i + 1):
                    if i not in (x, y):
                        continue
                    r = src[x][y]
                    if r <= i and m[r] != dst[m[x]][m[y]]:
                        return False
        return True

    def go(i: int):
        if i == n:
            yield HomCandidate(source, target, tuple(m))
            return
        choices = [fixed[i]] if i in fixed else range(k)
        for v in choices:
            m[i] = v
            if consistent(i) and _late_results_ok(i):
                yield from go(i + 1)
        m[i] = -1

    def _late_results_ok(i: int) -> bool:
        # equations whose result is i but whose operands were assigned before i
        for src, dst in laws:
            for x in range(i):
                for y in range(i):
                    if src[x][y] == i and m[i] != dst[m[x]][m[y]]:
                        return False
        return True

    if n == 0 or (source.bottom == source.top and target.bottom != target.top):
        return
    yield from go(0)
