"""Brute-force oracles, written against the definitions only.

Nothing here imports the library's algorithms; structures are passed in as
plain Python data (names, relation sets, tables).
"""

import itertools


def closure(elements, pairs):
    rel = {(x, x) for x in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (x, y), (u, v) in itertools.product(list(rel), repeat=2):
            if y == u and (x, v) not in rel:
                rel.add((x, v))
                changed = True
    return rel


def greatest(cands, rel):
    tops = [c for c in cands if all((d, c) in rel for d in cands)]
    return tops[0] if tops else None


def least(cands, rel):
    bots = [c for c in cands if all((c, d) in rel for d in cands)]
    return bots[0] if bots else None


def meet_join(elements, rel):
    meet, join = {}, {}
    for x, y in itertools.product(elements, repeat=2):
        lower = [z for z in elements if (z, x) in rel and (z, y) in rel]
        upper = [z for z in elements if (x, z) in rel and (y, z) in rel]
        meet[x, y] = greatest(lower, rel)
        join[x, y] = least(upper, rel)
    return meet, join


def is_distributive(elements, meet, join):
    return all(meet[a, join[b, c]] == join[meet[a, b], meet[a, c]]
               for a, b, c in itertools.product(elements, repeat=3))


def residuum_by_max_scan(elements, rel, meet):
    """a -> b as the maximum of {c : a∧c <= b}, found by scanning for a dominating member."""
    out = {}
    for a, b in itertools.product(elements, repeat=2):
        cands = [c for c in elements if (meet[a, c], b) in rel]
        out[a, b] = greatest(cands, rel)
    return out


def algebra_tables(A):
    """Dictionary view of a library algebra (only reads its tables)."""
    names = list(A.names)
    rel = {(names[i], names[j]) for i in range(len(names)) for j in range(len(names))
           if A.leq[i][j]}
    meet = {(names[i], names[j]): names[A.meet[i][j]]
            for i in range(len(names)) for j in range(len(names))}
    join = {(names[i], names[j]): names[A.join[i][j]]
            for i in range(len(names)) for j in range(len(names))}
    imp = {(names[i], names[j]): names[A.imp[i][j]]
           for i in range(len(names)) for j in range(len(names))}
    return names, rel, meet, join, imp


def homs_to_two(A):
    """Every 0/1 vector on A's elements that preserves 0, 1, meet and join."""
    names, rel, meet, join, _ = algebra_tables(A)
    bottom = least(names, rel)
    top = greatest(names, rel)
    out = []
    for bits in itertools.product((0, 1), repeat=len(names)):
        h = dict(zip(names, bits))
        if h[bottom] != 0 or h[top] != 1:
            continue
        if all(h[meet[x, y]] == min(h[x], h[y]) and h[join[x, y]] == max(h[x], h[y])
               for x, y in itertools.product(names, repeat=2)):
            out.append(bits)
    return sorted(out)


def prime_filters(A):
    """All subsets meeting the prime filter axioms."""
    names, rel, meet, join, _ = algebra_tables(A)
    bottom = least(names, rel)
    top = greatest(names, rel)
    out = []
    for r in range(len(names) + 1):
        for F in itertools.combinations(names, r):
            F = set(F)
            if top not in F or bottom in F:
                continue
            if any((x, y) in rel and x in F and y not in F for x in names for y in names):
                continue
            if any(meet[x, y] not in F for x in F for y in F):
                continue
            if any(join[x, y] in F and x not in F and y not in F
                   for x in names for y in names):
                continue
            out.append(frozenset(F))
    return out


def upsets(points, rel):
    out = []
    for r in range(len(points) + 1):
        for U in itertools.combinations(points, r):
            U = set(U)
            if all(y in U for x in U for y in points if (x, y) in rel):
                out.append(frozenset(U))
    return out


def labeled_posets(n):
    """All partial orders on range(n) as sets of pairs, by filtering all relations."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    refl = {(i, i) for i in range(n)}
    for bits in itertools.product((0, 1), repeat=len(off)):
        rel = refl | {p for p, b in zip(off, bits) if b}
        if any((j, i) in rel for (i, j) in rel if i != j):
            continue
        if any((i, k) not in rel for (i, j) in rel for (jj, k) in rel if j == jj):
            continue
        yield frozenset(rel)


def iso_invariant_form(n, rel):
    """Lexicographically least relabelled relation over all n! permutations."""
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or form < best:
            best = form
    return best


def poset_iso_classes(n):
    return {iso_invariant_form(n, rel) for rel in labeled_posets(n)}


def naive_forces(worlds, rel, val, w, f):
    """Clause by clause; ``x -> 0`` uses the negation clause over successors directly."""
    from itopsys.formula import And, Atom, Bot, Imp, Or

    if isinstance(f, Atom):
        return f.name in val[w]
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return naive_forces(worlds, rel, val, w, f.left) and naive_forces(worlds, rel, val, w, f.right)
    if isinstance(f, Or):
        return naive_forces(worlds, rel, val, w, f.left) or naive_forces(worlds, rel, val, w, f.right)
    assert isinstance(f, Imp)
    succ = [u for u in worlds if (w, u) in rel]
    if isinstance(f.right, Bot):
        return all(not naive_forces(worlds, rel, val, u, f.left) for u in succ)
    return all(not naive_forces(worlds, rel, val, u, f.left) or naive_forces(worlds, rel, val, u, f.right)
               for u in succ)


def countermodel_exists(f, n, atom_names):
    """Any labelled n-world poset and hereditary valuation refuting f somewhere."""
    worlds = list(range(n))
    for rel in labeled_posets(n):
        ups = upsets(worlds, rel)
        for choice in itertools.product(ups, repeat=len(atom_names)):
            val = {w: {p for p, U in zip(atom_names, choice) if w in U} for w in worlds}
            if any(not naive_forces(worlds, rel, val, w, f) for w in worlds):
                return True
    return False
