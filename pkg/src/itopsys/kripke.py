"""Kripke models for intuitionistic propositional logic.

Truth sets are bitmasks over worlds.  ``w`` forces ``a -> b`` iff no world
above ``w`` is in ``a`` but not in ``b``; negation is ``a -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import NotAntisymmetric, NotHereditary, UnknownAtom, UnknownWorld
from .formula import And, Atom, Bot, Formula, Or, atoms as formula_atoms
from .lattice import HeytingAlgebra, Verdict, _bits
from .posets import FinitePoset, posets_of_size
from .topsys import ITopSystem

World = Union[int, str]

KripkeFrame = FinitePoset


@dataclass(frozen=True)
class KripkeModel:
    frame: FinitePoset
    atoms: tuple[str, ...]
    # truth set of each atom, as a bitmask over worlds
    val: tuple[int, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.val):
            raise ValueError("one truth set per atom is required")
        if len(set(self.atoms)) != len(self.atoms) or any(not a for a in self.atoms):
            raise ValueError("atom names must be distinct and nonempty")
        F = self.frame
        for a, mask in zip(self.atoms, self.val):
            if mask >> len(F):
                raise ValueError(f"truth set of {a} mentions unknown worlds")
            for w in _bits(mask):
                escape = F.up_masks[w] & ~mask
                if escape:
                    u = next(_bits(escape))
                    raise NotHereditary(
                        f"{a} holds at {F.names[w]} but not at {F.names[u]} above it",
                        (a, F.names[w], F.names[u]))

    @classmethod
    def from_sets(cls, frame: FinitePoset, val: Mapping[str, Sequence[str]],
                  atoms: Sequence[str] | None = None) -> "KripkeModel":
        """Build from ``{world: [true atoms]}``; ``atoms`` defaults to all mentioned."""
        for w in val:
            if w not in frame.names:
                raise UnknownWorld(f"unknown world {w!r}", (w,))
        if atoms is None:
            atoms = sorted({p for ps in val.values() for p in ps})
        masks = []
        for p in atoms:
            masks.append(sum(1 << frame.index(w) for w, ps in val.items() if p in ps))
        return cls(frame, tuple(atoms), tuple(masks))

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.frame.names

    @cached_property
    def _atom_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    def world_index(self, w: World) -> int:
        if isinstance(w, str):
            if w in self.frame.names:
                return self.frame.names.index(w)
        elif isinstance(w, int) and 0 <= w < len(self.frame):
            return w
        raise UnknownWorld(f"unknown world {w!r}", (w,))

    def atom_mask(self, p: str) -> int:
        try:
            return self.val[self._atom_index[p]]
        except KeyError:
            raise UnknownAtom(f"unknown atom {p!r}", (p,)) from None

    def true_atoms(self, w: World) -> list[str]:
        i = self.world_index(w)
        return [a for a, m in zip(self.atoms, self.val) if m >> i & 1]


def truth_set(M: KripkeModel, f: Formula) -> int:
    """Bitmask of the worlds forcing ``f``."""
    up = M.frame.up_masks
    n = len(up)
    cache: dict[Formula, int] = {}

    def go(g: Formula) -> int:
        if g in cache:
            return cache[g]
        if isinstance(g, Atom):
            r = M.atom_mask(g.name)
        elif isinstance(g, Bot):
            r = 0
        elif isinstance(g, And):
            r = go(g.left) & go(g.right)
        elif isinstance(g, Or):
            r = go(g.left) | go(g.right)
        else:
            bad = go(g.left) & ~go(g.right)
            r = sum(1 << w for w in range(n) if not up[w] & bad)
        cache[g] = r
        return r

    return go(f)


def forces(M: KripkeModel, w: World, f: Formula) -> bool:
    i = M.world_index(w)
    return bool(truth_set(M, f) >> i & 1)


def validates(M: KripkeModel, f: Formula) -> Verdict:
    """True iff every world forces ``f``; otherwise the least counter-world."""
    full = (1 << len(M.frame)) - 1
    missing = full & ~truth_set(M, f)
    if missing:
        return Verdict(False, (M.frame.names[next(_bits(missing))],))
    return Verdict(True)


def model_from_system(S: ITopSystem) -> KripkeModel:
    """Worlds are the points, ordered by the pointwise order of their homs;
    atoms are the element names, with ``v(x, a) = [x |= a]``.
    """
    n = len(S.points)
    rows = [tuple(int(v) for v in row) for row in S.sat]
    for x in range(n):
        for y in range(x + 1, n):
            if rows[x] == rows[y]:
                raise NotAntisymmetric(
                    f"points {S.points[x]} and {S.points[y]} share a hom",
                    (S.points[x], S.points[y]))
    leq = [[all(p <= q for p, q in zip(rows[x], rows[y])) for y in range(n)] for x in range(n)]
    frame = FinitePoset.from_matrix(S.points, leq)
    A = S.algebra
    masks = tuple(sum(1 << x for x in range(n) if S.sat[x][a]) for a in range(len(A)))
    return KripkeModel(frame, A.names, masks)


def evaluate_in_algebra(A: HeytingAlgebra, f: Formula) -> int:
    """Interpret ``f`` in ``A``: atoms name elements, connectives are A's operations."""
    if isinstance(f, Atom):
        return A.index(f.name)
    if isinstance(f, Bot):
        return A.bottom
    x, y = evaluate_in_algebra(A, f.left), evaluate_in_algebra(A, f.right)
    if isinstance(f, And):
        return A.meet[x][y]
    if isinstance(f, Or):
        return A.join[x][y]
    return A.imp[x][y]


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: str


# valuations evaluated per numpy batch in countermodel_search
_CHUNK = 1 << 16


def _truth_sets_batched(f: Formula, atom_arrays: dict[str, np.ndarray],
                        up: Sequence[int], size: int) -> np.ndarray:
    cache: dict[Formula, np.ndarray] = {}
    up_arr = [np.int64(m) for m in up]

    def go(g: Formula) -> np.ndarray:
        if g in cache:
            return cache[g]
        if isinstance(g, Atom):
            r = atom_arrays[g.name]
        elif isinstance(g, Bot):
            r = np.zeros(size, dtype=np.int64)
        elif isinstance(g, And):
            r = go(g.left) & go(g.right)
        elif isinstance(g, Or):
            r = go(g.left) | go(g.right)
        else:
            bad = go(g.left) & ~go(g.right)
            r = np.zeros(size, dtype=np.int64)
            for w, m in enumerate(up_arr):
                r |= ((bad & m) == 0).astype(np.int64) << w
        cache[g] = r
        return r

    return go(f)


def search_frame(f: Formula, frame: FinitePoset) -> Optional[Countermodel]:
    """First refuting hereditary valuation on ``frame``.

    Valuations range over one up-set per atom of ``f`` (atoms sorted by name),
    ordered lexicographically by the up-set positions in ``frame.upsets``.
    """
    names = formula_atoms(f)
    ups = np.array(frame.upsets, dtype=np.int64)
    u = len(ups)
    k = len(names)
    total = u ** k
    full = (1 << len(frame)) - 1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        arrays = {}
        for i, p in enumerate(names):
            arrays[p] = ups[(idx // u ** (k - 1 - i)) % u]
        res = _truth_sets_batched(f, arrays, frame.up_masks, len(idx))
        failing = np.nonzero(res != full)[0]
        if len(failing):
            j = int(failing[0])
            masks = tuple(int(arrays[p][j]) for p in names)
            model = KripkeModel(frame, tuple(names), masks)
            missing = full & ~int(res[j])
            return Countermodel(model, frame.names[next(_bits(missing))])
    return None


def countermodel_search(f: Formula, max_worlds: int) -> Optional[Countermodel]:
    """Smallest refuting model over posets of 1..max_worlds worlds, up to isomorphism.

    Frames of each size are tried in canonical order; the first refutation in
    that order is returned, or None if ``f`` holds on every model searched.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    for n in range(1, max_worlds + 1):
        for frame in posets_of_size(n):
            hit = search_frame(f, frame)
            if hit is not None:
                return hit
    return None


def negation_clause(M: KripkeModel, f: Formula) -> int:
    """Worlds all of whose successors refute ``f``; equals ``truth_set(M, Neg(f))``."""
    t = truth_set(M, f)
    return sum(1 << w for w, up in enumerate(M.frame.up_masks) if not up & t)

