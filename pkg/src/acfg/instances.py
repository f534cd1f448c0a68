"""Example games, seeded random graphs, RX3C instances and hardness gadgets."""

from __future__ import annotations

import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .game import CoalitionStructure, ContractViolation, FriendGraph, GameError, mask_of
from .valuation import Model


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: FriendGraph
    structures: Mapping[str, CoalitionStructure] = field(default_factory=dict)
    coalitions: Mapping[str, frozenset[int]] = field(default_factory=dict)
    note: str = ""


def _cs(*blocks: Iterable[int]) -> CoalitionStructure:
    return CoalitionStructure.from_sets(blocks)


def _path(a: int, b: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(a, b)]


_G1 = [(1, 3), (1, 4), (3, 4), (3, 5), (4, 5)]
_G2 = [(1, 3), (1, 4), (3, 4)]


def _build(name: str) -> Fixture:
    if name == "fig1_path4":
        return Fixture(name, FriendGraph.from_edges(4, _path(1, 4)), {
            "gamma": _cs([1], [2, 3], [4]),
            "delta": _cs([1], [2, 4], [3]),
        }, note="non-hedonic altruism: player 1 cares how its friend is placed")
    if name == "fig2_altruism":
        return Fixture(name, FriendGraph.from_edges(10, [(1, 5), (1, 6), (1, 2), (2, 3), (3, 4), (4, 2)]), {
            "gamma": _cs([1, 2], *[[i] for i in range(3, 11)]),
            "delta": _cs([1, 5, 6, 7, 8, 9, 10], [2, 3, 4]),
        })
    if name in ("fig5_g1", "fig5_g1p"):
        edges = _G1 + ([(1, 2)] if name.endswith("p") else [])
        return Fixture(name, FriendGraph.from_edges(6, edges), {
            "gamma": _cs([1, 2], [3, 4, 5], [6]),
            "delta": _cs([1, 2], [3, 4, 5, 6]),
        }, note="type-I monotonicity fails for minSF (i=1, j=2)")
    if name in ("fig5_g2", "fig5_g2p"):
        edges = _G2 + ([(1, 2)] if name.endswith("p") else [])
        return Fixture(name, FriendGraph.from_edges(5, edges), {
            "gamma": _cs([1, 2, 3, 4], [5]),
            "delta": _cs([1, 2, 3, 4, 5]),
        }, note="type-I monotonicity fails for minEQ and minAL (i=1, j=2)")
    if name == "fig8_blocking":
        g = FriendGraph.from_edges(10, _path(1, 10) + [(8, 10), (5, 7)])
        return Fixture(name, g, {"gamma": CoalitionStructure.grand(10)},
                       {"blocking": frozenset({8, 9, 10})})
    if name == "fig9_no_popular":
        g = FriendGraph.from_edges(10, _path(1, 7) + [(4, 8), (8, 9), (9, 10)])
        return Fixture(name, g, note="no popular and no perfect structure under any model")
    if name == "fig10_eq_not_perfect":
        edges = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 9), (2, 6), (3, 6), (4, 6), (5, 6),
                 (9, 7), (9, 8), (7, 6), (8, 6)]
        return Fixture(name, FriendGraph.from_edges(9, edges), {
            "gamma": CoalitionStructure.grand(9),
            "delta": _cs([1, 2, 3, 4, 5, 6], [7, 8, 9]),
        }, note="diameter two, yet the grand coalition is not sumEQ-perfect")
    raise KeyError(name)


FIXTURE_NAMES = (
    "fig1_path4", "fig2_altruism", "fig5_g1", "fig5_g1p", "fig5_g2", "fig5_g2p",
    "fig8_blocking", "fig9_no_popular", "fig10_eq_not_perfect",
)


def builtin(name: str) -> Fixture:
    if name not in FIXTURE_NAMES:
        raise GameError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return _build(name)


def random_graph(n: int, p: float, seed: int | None = None) -> FriendGraph:
    """Each of the n(n-1)/2 possible friendships present independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise GameError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return FriendGraph.from_edges(n, edges)


# -- RX3C --------------------------------------------------------------------


@dataclass(frozen=True)
class Rx3cInstance:
    """Base set ``1..3k`` and ``3k`` triples; each element lies in exactly three (repeats allowed)."""

    k: int
    triples: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.k < 1:
            raise GameError("k must be positive")
        if len(self.triples) != 3 * self.k:
            raise GameError(f"expected {3 * self.k} triples, got {len(self.triples)}")
        base = range(1, 3 * self.k + 1)
        for t in self.triples:
            if len(t) != 3 or not set(t) <= set(base):
                raise GameError(f"triple {sorted(t)} is not a 3-subset of 1..{3 * self.k}")
        occ = Counter(b for t in self.triples for b in t)
        bad = [b for b in base if occ[b] != 3]
        if bad:
            raise GameError(f"elements {bad} do not occur in exactly three triples")

    @classmethod
    def from_lists(cls, k: int, triples: Iterable[Iterable[int]]) -> Rx3cInstance:
        return cls(k, tuple(frozenset(t) for t in triples))

    def is_exact_cover(self, indices: Iterable[int]) -> bool:
        idx = list(indices)
        if len(idx) != self.k or len(set(idx)) != self.k:
            return False
        if not all(0 <= s < len(self.triples) for s in idx):
            return False
        covered = set().union(*(self.triples[s] for s in idx))
        return covered == set(range(1, 3 * self.k + 1))


def planted_rx3c(k: int, seed: int | None = 0) -> tuple[Rx3cInstance, tuple[int, ...]]:
    """Instance with a known exact cover, returned as 0-based triple indices.

    The collection is the union of three partitions of the base set into
    triples (the first one planted), shuffled.
    """
    rng = random.Random(seed)
    base = list(range(1, 3 * k + 1))
    tagged = []
    for layer in range(3):
        perm = base[:]
        if layer:
            rng.shuffle(perm)
        tagged += [(layer == 0, frozenset(perm[3 * j : 3 * j + 3])) for j in range(k)]
    rng.shuffle(tagged)
    inst = Rx3cInstance(k, tuple(t for _, t in tagged))
    return inst, tuple(i for i, (planted, _) in enumerate(tagged) if planted)


# -- gadgets -----------------------------------------------------------------


class Variant(Enum):
    MIN_SF_CORE = "minSfCore"
    SUM_SF_CORE = "sumSfCore"
    MIN_SF_STRICT_POP = "minSfStrictPop"
    SUM_SF_STRICT_POP = "sumSfStrictPop"

    @classmethod
    def parse(cls, name: str) -> Variant:
        key = name.replace("-", "").replace("_", "").lower()
        for v in cls:
            if v.value.lower() == key:
                return v
        raise GameError(f"unknown gadget variant {name!r}; expected one of {', '.join(v.value for v in cls)}")

    @property
    def model(self) -> Model:
        return Model.MIN_SF if self.value.startswith("min") else Model.SUM_SF

    @property
    def is_core(self) -> bool:
        return self.value.endswith("Core")


@dataclass(frozen=True)
class PlayerLabel:
    tag: str  # alpha, beta, zeta, eta or delta
    group: str  # Beta, Alpha, Zeta or Q<s> (1-based triple index)
    index: int  # position within the class: b for beta, j for alpha/eta/delta

    def __str__(self) -> str:
        return f"{self.tag}[{self.group}:{self.index}]"


@dataclass(frozen=True)
class GadgetGame:
    instance: Rx3cInstance
    variant: Variant
    graph: FriendGraph
    gamma: CoalitionStructure
    labels: tuple[PlayerLabel, ...]  # labels[p - 1] describes player p
    beta: tuple[int, ...]
    zeta: tuple[int, ...]
    q: tuple[frozenset[int], ...]  # Q_S per triple, in triple order
    alpha: tuple[int, ...] = ()  # global Alpha group (strict-pop variants)
    alpha_count_override: int | None = None
    warnings: tuple[str, ...] = ()

    @property
    def model(self) -> Model:
        return self.variant.model

    def sidecar(self) -> dict:
        return {
            "variant": self.variant.value,
            "k": self.instance.k,
            "triples": [sorted(t) for t in self.instance.triples],
            "alpha_count": len(self.alpha) if self.alpha else None,
            "labels": {str(p): {"tag": lb.tag, "group": lb.group, "index": lb.index}
                       for p, lb in enumerate(self.labels, 1)},
            "gamma": str(self.gamma),
            "warnings": list(self.warnings),
        }


def make_gadget(inst: Rx3cInstance, variant: Variant | str, alpha_count_override: int | None = None) -> GadgetGame:
    variant = Variant.parse(variant) if isinstance(variant, str) else variant
    k = inst.k
    notes = []
    if variant is Variant.MIN_SF_CORE and k <= 4:
        notes.append(f"k={k} is below the reduction's threshold k>4; only the forward direction is meaningful")
    if variant is Variant.SUM_SF_CORE and k <= 8:
        notes.append(f"k={k} is below the reduction's threshold k>8; only the forward direction is meaningful")
    if alpha_count_override is not None:
        if variant.is_core:
            raise GameError("alpha_count_override applies only to the strict-popularity variants")
        if alpha_count_override < 0:
            raise GameError("alpha count must be nonnegative")
    for msg in notes:
        warnings.warn(msg, stacklevel=2)

    labels: list[PlayerLabel] = []

    def add(tag, group, index):
        labels.append(PlayerLabel(tag, group, index))
        return len(labels)

    beta = [add("beta", "Beta", b) for b in range(1, 3 * k + 1)]
    in_q = variant is not Variant.SUM_SF_CORE
    zeta = [add("zeta", f"Q{s + 1}" if in_q else "Zeta", s + 1) for s in range(3 * k)]
    edges: list[tuple[int, int]] = []

    def clique(ps):
        edges.extend((a, b) for x, a in enumerate(ps) for b in ps[x + 1 :])

    clique(beta)
    for s, t in enumerate(inst.triples):
        edges.extend((zeta[s], beta[b - 1]) for b in t)

    q: list[list[int]] = []
    alpha: list[int] = []
    if variant.is_core:
        for s in range(3 * k):
            grp = f"Q{s + 1}"
            al = [add("alpha", grp, j) for j in (1, 2, 3)]
            de = [add("delta", grp, j) for j in range(1, 4 * k - 2)]
            edges.extend((zeta[s], a) for a in al)
            if variant is Variant.MIN_SF_CORE:
                clique(al + de[:1])
                clique(de)
                q.append([zeta[s]] + al + de)
            else:
                clique(al + de)
                q.append(al + de)
        blocks = [mask_of(beta)] + [mask_of(grp) | (0 if in_q else 1 << (zeta[s] - 1)) for s, grp in enumerate(q)]
    else:
        etas = 2 if variant is Variant.MIN_SF_STRICT_POP else 1
        for s in range(3 * k):
            grp = f"Q{s + 1}"
            et = [add("eta", grp, j) for j in range(1, etas + 1)]
            if variant is Variant.MIN_SF_STRICT_POP:
                clique([zeta[s]] + et)
            else:
                edges.append((zeta[s], et[0]))
            q.append([zeta[s]] + et)
        default = 2 * k if variant is Variant.MIN_SF_STRICT_POP else 5 * k
        count = default if alpha_count_override is None else alpha_count_override
        alpha = [add("alpha", "Alpha", j) for j in range(1, count + 1)]
        clique(alpha + beta)
        blocks = [mask_of(alpha + beta)] + [mask_of(grp) for grp in q]

    n = len(labels)
    g = FriendGraph.from_edges(n, edges)
    return GadgetGame(
        instance=inst, variant=variant, graph=g, gamma=CoalitionStructure(n, blocks),
        labels=tuple(labels), beta=tuple(beta), zeta=tuple(zeta),
        q=tuple(frozenset(x) for x in q), alpha=tuple(alpha),
        alpha_count_override=alpha_count_override, warnings=tuple(notes),
    )


def _check_cover(gg: GadgetGame, cover: Iterable[int]) -> list[int]:
    cover = sorted(cover)
    if not gg.instance.is_exact_cover(cover):
        raise ContractViolation(f"triples {cover} do not form an exact cover")
    return cover


def cover_to_blocking(gg: GadgetGame, cover: Iterable[int]) -> frozenset[int]:
    """Beta plus the zeta player of every cover triple (0-based indices)."""
    if not gg.variant.is_core:
        raise ContractViolation("blocking coalitions come from the core gadgets")
    cover = _check_cover(gg, cover)
    return frozenset(gg.beta) | {gg.zeta[s] for s in cover}


def cover_to_rival(gg: GadgetGame, cover: Iterable[int]) -> CoalitionStructure:
    """Merge the cover's Q groups into Alpha and Beta; keep the other Q groups."""
    if gg.variant.is_core:
        raise ContractViolation("rival structures come from the strict-popularity gadgets")
    cover = _check_cover(gg, cover)
    big = set(gg.alpha) | set(gg.beta)
    for s in cover:
        big |= gg.q[s]
    rest = [gg.q[s] for s in range(len(gg.q)) if s not in cover]
    return CoalitionStructure.from_sets([big, *rest], n=gg.graph.n)
