"""Verification of the ten stability notions, with witnesses for failures."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from . import _sweep
from .game import (
    MAX_PARTITION_N,
    MAX_SUBSET_N,
    CapExceeded,
    CoalitionStructure,
    ContractViolation,
    FriendGraph,
    _carve,
    _move,
    bell,
    mask_of,
    members,
    rank_rgs,
)
from .valuation import Model, count_prefers, key_matrix, preference_key, values


class Notion(Enum):
    NASH = "nash"
    IR = "ir"
    IS = "is"
    CIS = "cis"
    TIS = "tis"
    CORE = "core"
    STRICT_CORE = "strictcore"
    POPULAR = "popular"
    STRICT_POPULAR = "strictpopular"
    PERFECT = "perfect"

    @classmethod
    def parse(cls, name: str) -> Notion:
        key = name.strip().lower().replace("-", "").replace("_", "")
        for m in cls:
            if m.value == key:
                return m
        raise ValueError(f"unknown stability notion {name!r}; expected one of {', '.join(m.value for m in cls)}")

    @property
    def individual(self) -> bool:
        return self in INDIVIDUAL_NOTIONS

    def __str__(self) -> str:
        return self.value


INDIVIDUAL_NOTIONS = (Notion.NASH, Notion.IR, Notion.IS, Notion.CIS, Notion.TIS)


@dataclass(frozen=True)
class PlayerMove:
    player: int
    target: frozenset[int]

    def to_dict(self) -> dict:
        return {"kind": "player_move", "player": self.player, "target": sorted(self.target)}


@dataclass(frozen=True)
class BlockingCoalition:
    coalition: frozenset[int]
    weak: bool

    def to_dict(self) -> dict:
        return {"kind": "blocking_coalition", "coalition": sorted(self.coalition), "weak": self.weak}


@dataclass(frozen=True)
class RivalPartition:
    rival: CoalitionStructure
    counts: tuple[int, int]  # (#prefer gamma, #prefer rival)

    def to_dict(self) -> dict:
        return {"kind": "rival_partition", "rival": str(self.rival), "prefer_gamma": self.counts[0], "prefer_rival": self.counts[1]}


@dataclass(frozen=True)
class PlayerAndPartition:
    player: int
    rival: CoalitionStructure

    def to_dict(self) -> dict:
        return {"kind": "player_and_partition", "player": self.player, "rival": str(self.rival)}


Witness = Union[PlayerMove, BlockingCoalition, RivalPartition, PlayerAndPartition]


@dataclass(frozen=True)
class StabilityVerdict:
    notion: Notion
    model: Model
    stable: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.stable

    def to_dict(self) -> dict:
        return {
            "notion": self.notion.value,
            "model": self.model.value,
            "stable": self.stable,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


# -- individual deviations -------------------------------------------------


def _keys(g: FriendGraph, vals, model: Model) -> list[tuple[int, ...]]:
    return [preference_key(g, vals, i, model) for i in g.players]


def individual_targets(gamma: CoalitionStructure, i: int, notion: Notion) -> list[int]:
    """Deviation targets for ``i`` in scan order: other blocks, then the empty coalition."""
    own = gamma.block_mask(i)
    bit = 1 << (i - 1)
    out = [] if notion is Notion.IR else [b for b in gamma.blocks if b != own]
    if own != bit:
        out.append(0)
    return out


def move_violates(
    g: FriendGraph, gamma: CoalitionStructure, i: int, target: int, model: Model, notion: Notion, base=None
) -> bool:
    """Whether moving ``i`` to ``target`` breaks ``notion`` (the definitional test)."""
    base = _keys(g, values(g, gamma), model) if base is None else base
    delta = _move(gamma, i, target)
    after = _keys(g, values(g, delta), model)
    if not after[i - 1] > base[i - 1]:
        return False
    if notion in (Notion.NASH, Notion.IR):
        return True
    if notion is Notion.IS:
        vetoers = target
    elif notion is Notion.CIS:
        vetoers = target | (gamma.block_mask(i) & ~(1 << (i - 1)))
    else:
        vetoers = ((1 << g.n) - 1) & ~(1 << (i - 1))
    return not any(base[j - 1] > after[j - 1] for j in members(vetoers))


def verify_individual(g: FriendGraph, gamma: CoalitionStructure, model: Model, notion: Notion) -> StabilityVerdict:
    if not notion.individual:
        raise ValueError(f"{notion} is not an individual-deviation notion")
    base = _keys(g, values(g, gamma), model)
    for i in g.players:
        for t in individual_targets(gamma, i, notion):
            if move_violates(g, gamma, i, t, model, notion, base):
                return StabilityVerdict(notion, model, False, PlayerMove(i, frozenset(members(t))))
    return StabilityVerdict(notion, model, True)


# -- core ---------------------------------------------------------------------


def _coalition_mask(g: FriendGraph, c) -> int:
    m = c if isinstance(c, int) else mask_of(c)
    if not m:
        raise ContractViolation("blocking checks need a nonempty coalition")
    if m >> g.n:
        raise ContractViolation(f"coalition reaches outside 1..{g.n}")
    return m


def _block_compare(g, gamma, c, model):
    delta = _carve(gamma, c)
    before = _keys(g, values(g, gamma), model)
    after = _keys(g, values(g, delta), model)
    return [(after[i - 1] > before[i - 1]) - (after[i - 1] < before[i - 1]) for i in members(c)]


def is_blocking(g: FriendGraph, gamma: CoalitionStructure, coalition, model: Model) -> bool:
    """Every member strictly prefers forming ``coalition`` on its own."""
    signs = _block_compare(g, gamma, _coalition_mask(g, coalition), model)
    return all(s > 0 for s in signs)


def is_weakly_blocking(g: FriendGraph, gamma: CoalitionStructure, coalition, model: Model) -> bool:
    """Every member weakly prefers the deviation and at least one strictly."""
    signs = _block_compare(g, gamma, _coalition_mask(g, coalition), model)
    return all(s >= 0 for s in signs) and any(s > 0 for s in signs)


def _core_scan(g: FriendGraph, labels0: np.ndarray, k0: np.ndarray, model: Model, strict: bool, lo: int, hi: int):
    for masks, inside in _sweep.subset_chunks(g.n, max(lo, 1), hi):
        labels = np.where(inside, g.n, labels0)
        k = key_matrix(g, labels, model)
        if strict:
            hit = (~inside | (k >= k0)).all(axis=1) & (inside & (k > k0)).any(axis=1)
        else:
            hit = (~inside | (k > k0)).all(axis=1)
        if hit.any():
            return (int(masks[np.argmax(hit)]),)
    return None


def first_blocking(
    g: FriendGraph, gamma: CoalitionStructure, model: Model, strict: bool, lo: int = 1, hi: int | None = None, workers: int = 1
) -> int | None:
    """Smallest coalition mask in ``[lo, hi)`` that (weakly, if ``strict``) blocks."""
    labels0 = np.array(gamma.rgs(), dtype=np.int16)
    k0 = key_matrix(g, labels0[None, :], model)[0]
    hi = (1 << g.n) if hi is None else hi
    hit = _sweep.first_hit(_core_scan, (g, labels0, k0, model, strict), hi, workers, start=lo)
    return None if hit is None else hit[0]


def verify_core(
    g: FriendGraph, gamma: CoalitionStructure, model: Model, strict: bool = False,
    cap: int = MAX_SUBSET_N, workers: int = 1,
) -> StabilityVerdict:
    """Scan every nonempty coalition in ascending bit order.

    ``strict=True`` checks strict core stability (no weakly blocking
    coalition). The first hit is re-checked with the scalar definition.
    """
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds the subset-scan cap {cap} (2^{g.n} coalitions)")
    notion = Notion.STRICT_CORE if strict else Notion.CORE
    c = first_blocking(g, gamma, model, strict, workers=workers)
    if c is None:
        return StabilityVerdict(notion, model, True)
    check = is_weakly_blocking if strict else is_blocking
    if not check(g, gamma, c, model):
        raise AssertionError(f"batch and scalar routes disagree on coalition {members(c)}")
    return StabilityVerdict(notion, model, False, BlockingCoalition(frozenset(members(c)), strict))


# -- partition sweeps --------------------------------------------------------


def _partition_cap(g: FriendGraph, cap: int | None) -> None:
    cap = MAX_PARTITION_N if cap is None else cap
    if g.n > cap:
        raise CapExceeded(
            f"n={g.n} exceeds the partition cap {cap} (bell({g.n}) = {bell(g.n):,} structures)"
        )


def _popular_scan(g: FriendGraph, k0: np.ndarray, own: int, model: Model, strict: bool, lo: int, hi: int):
    for off, labels in _sweep.label_chunks(g.n, lo, hi):
        k = key_matrix(g, labels, model)
        ahead = (k > k0).sum(axis=1)  # players preferring the rival
        behind = (k < k0).sum(axis=1)
        hit = ahead >= behind if strict else ahead > behind
        if strict and off <= own < off + len(labels):
            hit[own - off] = False
        if hit.any():
            r = int(np.argmax(hit))
            return off + r, labels[r].tolist()
    return None


def verify_popular(
    g: FriendGraph, gamma: CoalitionStructure, model: Model, strict: bool = False,
    cap: int | None = None, workers: int = 1,
) -> StabilityVerdict:
    """Compare ``gamma`` against every other partition of the players."""
    _partition_cap(g, cap)
    notion = Notion.STRICT_POPULAR if strict else Notion.POPULAR
    labels0 = gamma.rgs()
    k0 = key_matrix(g, np.array([labels0], dtype=np.int16), model)[0]
    hit = _sweep.first_hit(_popular_scan, (g, k0, rank_rgs(labels0), model, strict), bell(g.n), workers)
    if hit is None:
        return StabilityVerdict(notion, model, True)
    rival = CoalitionStructure.from_rgs(hit[1])
    counts = count_prefers(g, gamma, rival, model)
    if not (counts[1] >= counts[0] if strict else counts[1] > counts[0]):
        raise AssertionError("batch and scalar routes disagree on a popularity rival")
    return StabilityVerdict(notion, model, False, RivalPartition(rival, counts))


def _perfect_scan(g: FriendGraph, k0: np.ndarray, model: Model, lo: int, hi: int):
    for off, labels in _sweep.label_chunks(g.n, lo, hi):
        k = key_matrix(g, labels, model)
        hit = (k > k0).any(axis=1)
        if hit.any():
            r = int(np.argmax(hit))
            player = int(np.argmax(k[r] > k0)) + 1
            return off + r, labels[r].tolist(), player
    return None


def verify_perfect(
    g: FriendGraph, gamma: CoalitionStructure, model: Model, cap: int | None = None, workers: int = 1
) -> StabilityVerdict:
    """``gamma`` is perfect when nobody strictly prefers any partition to it.

    The witness is the first rival in enumeration order, paired with the
    smallest player who prefers it.
    """
    _partition_cap(g, cap)
    k0 = key_matrix(g, np.array([gamma.rgs()], dtype=np.int16), model)[0]
    hit = _sweep.first_hit(_perfect_scan, (g, k0, model), bell(g.n), workers)
    if hit is None:
        return StabilityVerdict(Notion.PERFECT, model, True)
    rival = CoalitionStructure.from_rgs(hit[1])
    return StabilityVerdict(Notion.PERFECT, model, False, PlayerAndPartition(hit[2], rival))


def verify(
    g: FriendGraph, gamma: CoalitionStructure, model: Model, notion: Notion, workers: int = 1, cap: int | None = None
) -> StabilityVerdict:
    if gamma.n != g.n:
        raise ContractViolation(f"structure has {gamma.n} players but the graph has {g.n}")
    if notion.individual:
        return verify_individual(g, gamma, model, notion)
    if notion in (Notion.CORE, Notion.STRICT_CORE):
        return verify_core(g, gamma, model, notion is Notion.STRICT_CORE,
                           cap=MAX_SUBSET_N if cap is None else cap, workers=workers)
    if notion in (Notion.POPULAR, Notion.STRICT_POPULAR):
        return verify_popular(g, gamma, model, notion is Notion.STRICT_POPULAR, cap=cap, workers=workers)
    return verify_perfect(g, gamma, model, cap=cap, workers=workers)


def witness_holds(g: FriendGraph, gamma: CoalitionStructure, verdict: StabilityVerdict) -> bool:
    """Re-check an unstable verdict's witness against the definition it violates."""
    w, model, notion = verdict.witness, verdict.model, verdict.notion
    if isinstance(w, PlayerMove):
        t = mask_of(w.target)
        if t and t not in gamma.blocks:
            return False
        return move_violates(g, gamma, w.player, t, model, notion)
    if isinstance(w, BlockingCoalition):
        check = is_weakly_blocking if w.weak else is_blocking
        return check(g, gamma, w.coalition, model)
    if isinstance(w, RivalPartition):
        ahead, behind = count_prefers(g, gamma, w.rival, model)
        if notion is Notion.STRICT_POPULAR:
            return w.rival != gamma and behind >= ahead
        return behind > ahead
    if isinstance(w, PlayerAndPartition):
        from .valuation import prefers

        return prefers(g, w.player, w.rival, gamma, model)
    return False
