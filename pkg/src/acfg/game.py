"""Friend graphs, coalition structures and the combinatorics around them.

Players are numbered ``1..n`` on every public surface. Internally a
coalition is an ``int`` bit mask where bit ``i - 1`` stands for player ``i``;
Python integers are unbounded, so the same representation serves the
10-player examples and the several-hundred-player reduction gadgets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_PARTITION_N = 20
MAX_SUBSET_N = 24


class GameError(ValueError):
    """Base class for errors raised by this package."""


class ParseError(GameError):
    pass


class ContractViolation(GameError):
    pass


class CapExceeded(GameError):
    """An enumeration was requested beyond its configured size cap."""


def mask_of(players: Iterable[int]) -> int:
    m = 0
    for p in players:
        m |= 1 << (p - 1)
    return m


def members(mask: int) -> list[int]:
    """Players of a bit mask, ascending and 1-based."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def _full(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class FriendGraph:
    """An undirected, simple network of friends on players ``1..n``.

    ``adj[i - 1]`` is the bit mask of player ``i``'s friends.
    """

    n: int
    adj: tuple[int, ...]
    _dense: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GameError("a friend graph needs at least one player")
        if len(self.adj) != self.n:
            raise GameError("adjacency length does not match n")
        full = _full(self.n)
        for i, m in enumerate(self.adj):
            if m & ~full:
                raise GameError(f"player {i + 1} has a friend outside 1..{self.n}")
            if m >> i & 1:
                raise GameError(f"player {i + 1} is their own friend")
            for j in members(m):
                if not self.adj[j - 1] >> i & 1:
                    raise GameError(f"friendship {i + 1}-{j} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> FriendGraph:
        adj = [0] * n
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GameError(f"edge {u}-{v} out of range 1..{n}")
            if u == v:
                raise GameError(f"self-loop at {u}")
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> FriendGraph:
        full = _full(n)
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def edgeless(cls, n: int) -> FriendGraph:
        return cls(n, (0,) * n)

    @property
    def players(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.players for j in members(self.adj[i - 1]) if i < j]

    def friend_mask(self, i: int) -> int:
        return self.adj[i - 1]

    def enemy_mask(self, i: int) -> int:
        return _full(self.n) & ~self.adj[i - 1] & ~(1 << (i - 1))

    def are_friends(self, i: int, j: int) -> bool:
        return bool(self.adj[i - 1] >> (j - 1) & 1)

    def degree(self, i: int) -> int:
        return self.adj[i - 1].bit_count()

    def dense(self) -> np.ndarray:
        """Boolean ``n x n`` adjacency matrix (0-based), built once."""
        if self._dense is None:
            a = np.zeros((self.n, self.n), dtype=bool)
            for i, m in enumerate(self.adj):
                for j in members(m):
                    a[i, j - 1] = True
            a.setflags(write=False)
            object.__setattr__(self, "_dense", a)
        return self._dense


def parse_graph(text: str) -> FriendGraph:
    """Parse the edge-list format: a header ``n m`` then ``m`` lines ``u v``."""
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, tok) for no, tok in lines if tok and not tok[0].startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    no, head = lines[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise ParseError(f"line {no}: expected header 'n m', got {' '.join(head)!r}") from None
    if n < 1 or m < 0:
        raise ParseError(f"line {no}: need n >= 1 and m >= 0")
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges but {len(lines) - 1} edge lines follow")
    adj = [0] * n
    for no, tok in lines[1:]:
        try:
            u, v = (int(t) for t in tok)
        except ValueError:
            raise ParseError(f"line {no}: expected 'u v', got {' '.join(tok)!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {no}: vertex out of range 1..{n}")
        if u == v:
            raise ParseError(f"line {no}: self-loop at {u}")
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return FriendGraph(n, tuple(adj))


def format_graph(g: FriendGraph) -> str:
    edges = g.edges()
    return "".join([f"{g.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])


def friends(g: FriendGraph, i: int) -> frozenset[int]:
    return frozenset(members(g.adj[i - 1]))


def enemies(g: FriendGraph, i: int) -> frozenset[int]:
    return frozenset(members(g.enemy_mask(i)))


class CoalitionStructure:
    """A partition of ``{1..n}`` held in canonical form.

    Blocks are bit masks ordered by their smallest member, so two structures
    are equal exactly when their ``blocks`` tuples are.
    """

    __slots__ = ("n", "blocks", "_where")

    def __init__(self, n: int, blocks: Iterable[int]):
        blocks = sorted(blocks, key=lambda b: b & -b)
        seen = 0
        for b in blocks:
            if b <= 0:
                raise GameError("coalition structures have no empty blocks")
            if b & seen:
                raise GameError("blocks overlap")
            seen |= b
        if seen != _full(n):
            raise GameError(f"blocks do not cover 1..{n}")
        self.n = n
        self.blocks: tuple[int, ...] = tuple(blocks)
        self._where: tuple[int, ...] | None = None

    @classmethod
    def _trusted(cls, n: int, blocks: tuple[int, ...]) -> CoalitionStructure:
        obj = cls.__new__(cls)
        obj.n = n
        obj.blocks = blocks
        obj._where = None
        return obj

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int | None = None) -> CoalitionStructure:
        masks = [mask_of(s) for s in sets]
        if n is None:
            n = max(m.bit_length() for m in masks)
        return cls(n, masks)

    @classmethod
    def from_rgs(cls, labels: Sequence[int]) -> CoalitionStructure:
        """Build from a restricted-growth string (0-based block labels)."""
        masks: list[int] = []
        for i, lab in enumerate(labels):
            if lab == len(masks):
                masks.append(1 << i)
            elif lab < len(masks):
                masks[lab] |= 1 << i
            else:
                raise GameError("not a restricted-growth string")
        return cls._trusted(len(labels), tuple(masks))

    @classmethod
    def singletons(cls, n: int) -> CoalitionStructure:
        return cls._trusted(n, tuple(1 << i for i in range(n)))

    @classmethod
    def grand(cls, n: int) -> CoalitionStructure:
        return cls._trusted(n, (_full(n),))

    def block_index(self, i: int) -> int:
        if self._where is None:
            where = [0] * self.n
            for k, b in enumerate(self.blocks):
                for p in members(b):
                    where[p - 1] = k
            self._where = tuple(where)
        return self._where[i - 1]

    def block_mask(self, i: int) -> int:
        return self.blocks[self.block_index(i)]

    def coalition_of(self, i: int) -> frozenset[int]:
        return frozenset(members(self.block_mask(i)))

    def to_sets(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]

    def rgs(self) -> tuple[int, ...]:
        return tuple(self.block_index(i) for i in range(1, self.n + 1))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return (frozenset(members(b)) for b in self.blocks)

    def __contains__(self, coalition) -> bool:
        m = coalition if isinstance(coalition, int) else mask_of(coalition)
        return m in self.blocks

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoalitionStructure):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, members(b))) for b in self.blocks)

    def __repr__(self) -> str:
        return f"CoalitionStructure({self.to_sets()})"


def parse_partition(line: str, n: int | None = None) -> CoalitionStructure:
    """Parse ``"1 2 | 3 4 | 5"``; ``n`` defaults to the largest member."""
    try:
        sets = [[int(t) for t in part.split()] for part in line.split("|")]
    except ValueError:
        raise ParseError(f"bad partition line {line.strip()!r}") from None
    if any(not s for s in sets):
        raise ParseError(f"empty block in {line.strip()!r}")
    flat = [p for s in sets for p in s]
    if n is None:
        n = max(flat)
    if any(p < 1 or p > n for p in flat):
        raise ParseError(f"player out of range 1..{n} in {line.strip()!r}")
    if len(set(flat)) != len(flat):
        raise ParseError(f"repeated player in {line.strip()!r}")
    try:
        return CoalitionStructure.from_sets(sets, n)
    except GameError as exc:
        raise ParseError(f"{exc} in {line.strip()!r}") from None


def parse_partitions(text: str, n: int | None = None) -> list[CoalitionStructure]:
    return [parse_partition(ln, n) for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def format_partitions(structures: Iterable[CoalitionStructure]) -> str:
    return "".join(f"{s}\n" for s in structures)


def coalition_of(gamma: CoalitionStructure, i: int) -> frozenset[int]:
    return gamma.coalition_of(i)


def move_player(gamma: CoalitionStructure, i: int, target: Iterable[int] | int) -> CoalitionStructure:
    """``i`` leaves its block and joins ``target`` (a block of gamma, or empty)."""
    t = target if isinstance(target, int) else mask_of(target)
    own = gamma.block_mask(i)
    if t and t not in gamma.blocks:
        raise ContractViolation("move target must be a block of the structure or empty")
    if t == own:
        raise ContractViolation("move target is the player's own coalition")
    return _move(gamma, i, t)


def _move(gamma: CoalitionStructure, i: int, t: int) -> CoalitionStructure:
    bit = 1 << (i - 1)
    own = gamma.block_mask(i)
    out = []
    for b in gamma.blocks:
        if b == own:
            if b != bit:
                out.append(b ^ bit)
        elif b == t:
            out.append(b | bit)
        else:
            out.append(b)
    if not t:
        out.append(bit)
    out.sort(key=lambda b: b & -b)
    return CoalitionStructure._trusted(gamma.n, tuple(out))


def carve_out(gamma: CoalitionStructure, coalition: Iterable[int] | int) -> CoalitionStructure:
    """Everyone in ``coalition`` leaves their block and the group forms a new one."""
    c = coalition if isinstance(coalition, int) else mask_of(coalition)
    if not c:
        raise ContractViolation("cannot carve out the empty coalition")
    if c & ~_full(gamma.n):
        raise ContractViolation(f"coalition reaches outside 1..{gamma.n}")
    return _carve(gamma, c)


def _carve(gamma: CoalitionStructure, c: int) -> CoalitionStructure:
    out = [b & ~c for b in gamma.blocks if b & ~c]
    out.append(c)
    out.sort(key=lambda b: b & -b)
    return CoalitionStructure._trusted(gamma.n, tuple(out))


# -- partitions -------------------------------------------------------------


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number via ``B_n = sum_k C(n-1, k) B_k``."""
    if n < 0:
        raise GameError("bell(n) needs n >= 0")
    if n <= 1:
        return 1
    from math import comb

    return sum(comb(n - 1, k) * bell(k) for k in range(n))


@lru_cache(maxsize=None)
def _completions(n: int) -> tuple[tuple[int, ...], ...]:
    # table[m][r]: ways to fill r more positions when m labels are in use
    table = [[0] * (n + 1) for _ in range(n + 2)]
    for m in range(n + 2):
        table[m][0] = 1
    for r in range(1, n + 1):
        for m in range(n + 1):
            table[m][r] = m * table[m][r - 1] + table[m + 1][r - 1]
    return tuple(tuple(row) for row in table)


def _check_cap(n: int, cap: int | None) -> None:
    cap = MAX_PARTITION_N if cap is None else cap
    if n < 1:
        raise GameError("need at least one player")
    if n > cap:
        raise CapExceeded(
            f"n={n} exceeds the partition-enumeration cap {cap} "
            f"(bell({n}) = {bell(n):,} structures)"
        )


def unrank_rgs(n: int, index: int) -> list[int]:
    """The ``index``-th restricted-growth string of length ``n`` in lex order."""
    if not 0 <= index < bell(n):
        raise GameError(f"index {index} out of range for n={n}")
    table = _completions(n)
    labels = [0]
    used = 1
    for pos in range(1, n):
        remaining = n - pos - 1
        for c in range(used + 1):
            cnt = table[max(used, c + 1)][remaining]
            if index < cnt:
                labels.append(c)
                used = max(used, c + 1)
                break
            index -= cnt
    return labels


def rank_rgs(labels: Sequence[int]) -> int:
    """Inverse of :func:`unrank_rgs`."""
    n = len(labels)
    table = _completions(n)
    index = 0
    used = 1
    for pos in range(1, n):
        remaining = n - pos - 1
        for c in range(labels[pos]):
            index += table[max(used, c + 1)][remaining]
        used = max(used, labels[pos] + 1)
    return index


def iter_rgs(n: int, start: int = 0, stop: int | None = None, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings ``start <= index < stop`` in lexicographic order.

    The returned tuples are fresh objects; the range form lets several workers
    split one enumeration without coordination.
    """
    _check_cap(n, cap)
    total = bell(n)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    a = unrank_rgs(n, start)
    # pmax[j] = max(a[0..j])
    pmax = [0] * n
    for j in range(1, n):
        pmax[j] = max(pmax[j - 1], a[j])
    for _ in range(stop - start):
        yield tuple(a)
        j = n - 1
        while j > 0 and a[j] > pmax[j - 1]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        pmax[j] = max(pmax[j - 1], a[j])
        for k in range(j + 1, n):
            a[k] = 0
            pmax[k] = pmax[j]


def enumerate_partitions(
    n: int, start: int = 0, stop: int | None = None, cap: int | None = None
) -> Iterator[CoalitionStructure]:
    """Every partition of ``{1..n}`` exactly once, in restricted-growth order."""
    for labels in iter_rgs(n, start, stop, cap):
        masks: list[int] = []
        for i, lab in enumerate(labels):
            if lab == len(masks):
                masks.append(1 << i)
            else:
                masks[lab] |= 1 << i
        yield CoalitionStructure._trusted(n, tuple(masks))


def rgs_array(n: int, cap: int | None = None) -> np.ndarray:
    """All restricted-growth strings of length ``n`` as a ``bell(n) x n`` array.

    Row order matches :func:`iter_rgs`.
    """
    _check_cap(n, cap)
    rows = np.zeros((1, 1), dtype=np.int8)
    used = np.ones(1, dtype=np.int8)
    for _ in range(1, n):
        reps = used.astype(np.int64) + 1
        parent = np.repeat(np.arange(len(rows)), reps)
        offsets = np.arange(len(parent)) - np.repeat(np.cumsum(reps) - reps, reps)
        last = offsets.astype(np.int8)
        rows = np.concatenate([rows[parent], last[:, None]], axis=1)
        used = np.maximum(used[parent], last + 1)
    return rows


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (k < extra)
        out.append((lo, hi))
        lo = hi
    return out


# -- graph predicates -------------------------------------------------------


def connected_components(g: FriendGraph) -> list[frozenset[int]]:
    return [frozenset(members(m)) for m in component_masks(g)]


def component_masks(g: FriendGraph) -> list[int]:
    left = _full(g.n)
    comps = []
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = g.adj[low.bit_length() - 1] & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        left &= ~comp
    return comps


def components_partition(g: FriendGraph) -> CoalitionStructure:
    return CoalitionStructure._trusted(g.n, tuple(component_masks(g)))


def _as_mask(s: Iterable[int] | int) -> int:
    m = s if isinstance(s, int) else mask_of(s)
    if not m:
        raise ContractViolation("the vertex set must be nonempty")
    return m


def is_clique(g: FriendGraph, s: Iterable[int] | int) -> bool:
    m = _as_mask(s)
    return all(m & ~(1 << (p - 1)) & ~g.adj[p - 1] == 0 for p in members(m))


def diameter(g: FriendGraph, s: Iterable[int] | int) -> float:
    """Largest shortest-path distance inside the subgraph induced by ``s``.

    Returns ``math.inf`` when the induced subgraph is disconnected.
    """
    m = _as_mask(s)
    best = 0
    verts = members(m)
    for src in verts:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in members(g.adj[u - 1] & m):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) < len(verts):
            return float("inf")
        best = max(best, max(dist.values()))
    return best
