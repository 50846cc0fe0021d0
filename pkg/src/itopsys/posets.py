"""Finite posets, their up-sets, and enumeration up to isomorphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence, Union

from .errors import InputError, NotAPoset, UnknownElement
from .lattice import _bits, antisymmetry_witness, order_closure

Point = Union[int, str]


@dataclass(frozen=True)
class FinitePoset:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_pairs(cls, names: Sequence[str], pairs: Sequence[tuple[str, str]]) -> "FinitePoset":
        """Close ``pairs`` reflexively and transitively; NotAPoset on a cycle."""
        names = tuple(names)
        if any(not isinstance(x, str) or not x for x in names):
            raise InputError("point names must be nonempty strings")
        if len(set(names)) != len(names):
            raise InputError("duplicate point names")
        idx = {x: i for i, x in enumerate(names)}
        ipairs = []
        for pair in pairs:
            if len(pair) != 2:
                raise InputError(f"order pair {pair!r} does not have two entries")
            for x in pair:
                if x not in idx:
                    raise UnknownElement(f"order pair mentions unknown point {x!r}", (x,))
            ipairs.append((idx[pair[0]], idx[pair[1]]))
        return cls.from_up_masks(names, order_closure(len(names), ipairs))

    @classmethod
    def from_up_masks(cls, names: Sequence[str], up: Sequence[int]) -> "FinitePoset":
        bad = antisymmetry_witness(up)
        if bad is not None:
            x, y = names[bad[0]], names[bad[1]]
            raise NotAPoset(f"cycle: {x} <= {y} <= {x}", (x, y, x))
        n = len(names)
        for i in range(n):
            for j in _bits(up[i]):
                if up[j] & ~up[i] or not up[i] >> i & 1:
                    raise NotAPoset("relation is not reflexive and transitive",
                                    (names[i], names[j]))
        leq = tuple(tuple(bool(up[i] >> j & 1) for j in range(n)) for i in range(n))
        return cls(tuple(names), leq)

    @classmethod
    def from_matrix(cls, names: Sequence[str], leq) -> "FinitePoset":
        n = len(names)
        up = [sum(1 << j for j in range(n) if leq[i][j]) for i in range(n)]
        return cls.from_up_masks(names, up)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.names)}

    def index(self, x: Point) -> int:
        if isinstance(x, str):
            if x in self._index:
                return self._index[x]
        elif isinstance(x, int) and 0 <= x < len(self.names):
            return x
        raise UnknownElement(f"unknown point {x!r}", (x,))

    def le(self, x: Point, y: Point) -> bool:
        return self.leq[self.index(x)][self.index(y)]

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n))

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(sum(1 << j for j in range(n) if self.leq[j][i]) for i in range(n))

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def is_upset(self, mask: int) -> bool:
        return all(self.up_masks[i] & ~mask == 0 for i in _bits(mask))

    def is_downset(self, mask: int) -> bool:
        return all(self.down_masks[i] & ~mask == 0 for i in _bits(mask))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.up_masks[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.down_masks[i]
        return out

    @cached_property
    def upsets(self) -> tuple[int, ...]:
        """All up-sets as bitmasks, in increasing numeric order."""
        return tuple(m for m in range(1 << len(self.names)) if self.is_upset(m))

    @cached_property
    def downsets(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << len(self.names)) if self.is_downset(m))

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for x, y in itertools.product(range(len(self.names)), repeat=2):
            if x != y and self.leq[x][y]:
                between = self.up_masks[x] & self.down_masks[y] & ~((1 << x) | (1 << y))
                if not between:
                    out.append((x, y))
        return out

    def pairs(self) -> list[tuple[str, str]]:
        """The full order relation as name pairs, reflexive pairs omitted."""
        n = len(self.names)
        return [(self.names[i], self.names[j]) for i in range(n) for j in range(n)
                if i != j and self.leq[i][j]]

    def mask_names(self, mask: int) -> list[str]:
        return [self.names[i] for i in _bits(mask)]


def linear_extensions(up: Sequence[int]) -> Iterator[tuple[int, ...]]:
    n = len(up)
    down = [sum(1 << j for j in range(n) if up[j] >> i & 1) for i in range(n)]
    order: list[int] = []

    def go(placed: int):
        if len(order) == n:
            yield tuple(order)
            return
        for i in range(n):
            if not placed >> i & 1 and down[i] & ~placed == 1 << i:
                order.append(i)
                yield from go(placed | 1 << i)
                order.pop()

    yield from go(0)


def _code(up: Sequence[int], perm: Sequence[int]) -> int:
    code = 0
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            code = code << 1 | (up[perm[i]] >> perm[j] & 1)
    return code


def canonical_form(up: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Minimum code over all linear extensions, with the relabelling achieving it.

    Two posets are isomorphic iff their codes agree; the canonical labelling is
    a linear extension, so position ``i <= j`` whenever ``i`` is below ``j``.
    """
    best = None
    for perm in linear_extensions(up):
        c = _code(up, perm)
        if best is None or c < best[0]:
            best = (c, perm)
    if best is None:
        return 0, ()
    return best


def poset_from_code(n: int, code: int, prefix: str = "w") -> FinitePoset:
    up = [1 << i for i in range(n)]
    bit = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                up[i] |= 1 << j
            bit -= 1
    return FinitePoset.from_up_masks([f"{prefix}{i}" for i in range(n)], up)


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[int, ...]:
    if n == 0:
        return (0,)
    if n == 1:
        return (0,)
    found = set()
    for code in _codes(n - 1):
        P = poset_from_code(n - 1, code)
        for D in P.downsets:
            # new maximal point n-1 lying above exactly the down-set D
            up = list(P.up_masks) + [1 << (n - 1)]
            for i in _bits(D):
                up[i] |= 1 << (n - 1)
            found.add(canonical_form(up)[0])
    return tuple(sorted(found))


def posets_of_size(n: int, prefix: str = "w") -> list[FinitePoset]:
    """One representative per isomorphism class, ordered by canonical code."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    return [poset_from_code(n, c, prefix) for c in _codes(n)]


def all_posets(max_size: int, min_size: int = 0) -> Iterator[FinitePoset]:
    for n in range(min_size, max_size + 1):
        yield from posets_of_size(n)


def chain_poset(n: int, prefix: str = "w") -> FinitePoset:
    names = [f"{prefix}{i}" for i in range(n)]
    return FinitePoset.from_pairs(names, list(zip(names, names[1:])))


def antichain_poset(n: int, prefix: str = "w") -> FinitePoset:
    return FinitePoset.from_pairs([f"{prefix}{i}" for i in range(n)], [])
