"""Slow, literal reimplementation of the definitions, used as a test oracle.

Nothing here imports the package: structures are tuples of frozensets,
graphs are sets of 2-element frozensets, players are 1-based ints.
"""

from itertools import product

MODELS = ("sumSF", "sumEQ", "sumAL", "minSF", "minEQ", "minAL")


def rgs_list(n):
    """All restricted-growth strings of length n in lexicographic order."""
    out = []
    for labels in product(range(n), repeat=n):
        top = -1
        for lab in labels:
            if lab > top + 1:
                break
            top = max(top, lab)
        else:
            out.append(labels)
    return out


def to_blocks(labels):
    groups = {}
    for i, lab in enumerate(labels, 1):
        groups.setdefault(lab, set()).add(i)
    return canon(groups.values())


def canon(blocks):
    return tuple(sorted((frozenset(b) for b in blocks if b), key=min))


def partitions(n):
    return [to_blocks(r) for r in rgs_list(n)]


def block_of(P, i):
    return next(b for b in P if i in b)


def friends(E, n, i):
    return {j for j in range(1, n + 1) if frozenset((i, j)) in E}


def v(E, n, P, i):
    C = block_of(P, i)
    f = sum(1 for j in C if frozenset((i, j)) in E)
    e = len(C) - 1 - f
    return n * f - e


def utility(E, n, P, i, model):
    M = n**3
    F = friends(E, n, i)
    vi = v(E, n, P, i)
    fv = [v(E, n, P, j) for j in F]
    if model.startswith("sum"):
        agg, agg_plus = sum(fv), sum(fv) + vi
    else:
        agg = min(fv) if fv else 0
        agg_plus = min(fv + [vi])
    if model.endswith("SF"):
        return M * vi + agg
    if model.endswith("EQ"):
        return agg_plus
    return vi + M * agg


def move(P, i, C):
    rest = [b - {i} for b in P]
    if C:
        rest = [b | {i} if b == C - {i} and b else b for b in rest]
    else:
        rest.append({i})
    return canon(rest)


def carve(P, C):
    return canon([b - C for b in P] + [set(C)])


def individual_violation(E, n, P, model, notion):
    base = {j: utility(E, n, P, j, model) for j in range(1, n + 1)}
    for i in range(1, n + 1):
        own = block_of(P, i)
        targets = [] if notion == "ir" else [b for b in P if b != own]
        if own != {i}:
            targets.append(frozenset())
        for C in targets:
            D = move(P, i, C)
            after = {j: utility(E, n, D, j, model) for j in range(1, n + 1)}
            if after[i] <= base[i]:
                continue
            if notion in ("nash", "ir"):
                return i, C
            if notion == "is":
                veto = set(C)
            elif notion == "cis":
                veto = set(C) | (own - {i})
            else:
                veto = set(range(1, n + 1)) - {i}
            if all(after[j] >= base[j] for j in veto):
                return i, C
    return None


def blocking(E, n, P, C, model, weak):
    D = carve(P, C)
    diffs = [utility(E, n, D, i, model) - utility(E, n, P, i, model) for i in C]
    if weak:
        return all(d >= 0 for d in diffs) and any(d > 0 for d in diffs)
    return all(d > 0 for d in diffs)


def core_violation(E, n, P, model, weak):
    for mask in range(1, 1 << n):
        C = frozenset(i + 1 for i in range(n) if mask >> i & 1)
        if blocking(E, n, P, C, model, weak):
            return C
    return None


def counts(E, n, P, D, model):
    up = down = 0
    for i in range(1, n + 1):
        a, b = utility(E, n, P, i, model), utility(E, n, D, i, model)
        up += a > b
        down += a < b
    return up, down


def popular_violation(E, n, P, model, strict):
    for D in partitions(n):
        if D == P:
            continue
        up, down = counts(E, n, P, D, model)
        if (down >= up) if strict else (down > up):
            return D
    return None


def perfect_violation(E, n, P, model):
    for D in partitions(n):
        for i in range(1, n + 1):
            if utility(E, n, D, i, model) > utility(E, n, P, i, model):
                return i, D
    return None


def stable(E, n, P, model, notion):
    if notion in ("nash", "ir", "is", "cis", "tis"):
        return individual_violation(E, n, P, model, notion) is None
    if notion in ("core", "strictcore"):
        return core_violation(E, n, P, model, notion == "strictcore") is None
    if notion in ("popular", "strictpopular"):
        return popular_violation(E, n, P, model, notion == "strictpopular") is None
    return perfect_violation(E, n, P, model) is None


def components(E, n):
    seen, out = set(), []
    for s in range(1, n + 1):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in friends(E, n, x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(comp)
    return canon(out)


def edge_set(edges):
    return {frozenset(e) for e in edges}

