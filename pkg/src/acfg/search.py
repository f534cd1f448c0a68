"""Existence search: brute force over all partitions, plus the proven fast paths."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _sweep
from .game import (
    MAX_PARTITION_N,
    CapExceeded,
    CoalitionStructure,
    FriendGraph,
    bell,
    component_masks,
    components_partition,
    diameter,
    is_clique,
    members,
    unrank_rgs,
)
from .stability import Notion, first_blocking, verify
from .valuation import Model, key_matrix, values

CORE_EXISTS_CAP = 12
POPULAR_EXISTS_CAP = 12
_POOL = 48


@dataclass(frozen=True)
class ExistenceResult:
    found: bool
    structure: CoalitionStructure | None
    partitions_examined: int
    method: str = "enumeration"

    def __bool__(self) -> bool:
        return self.found

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "structure": None if self.structure is None else str(self.structure),
            "partitions_examined": self.partitions_examined,
            "method": self.method,
        }


# -- constructions and characterizations -------------------------------------


def nash_construct(g: FriendGraph) -> CoalitionStructure:
    """Friendless players alone, everybody else together."""
    lonely = [1 << (i - 1) for i in g.players if not g.adj[i - 1]]
    rest = ((1 << g.n) - 1) & ~sum(lonely)
    return CoalitionStructure(g.n, lonely + ([rest] if rest else []))


def components_structure(g: FriendGraph) -> CoalitionStructure:
    """Connected components; strictly core stable under sumSF and minSF."""
    return components_partition(g)


def check_ir_characterization(g: FriendGraph, gamma: CoalitionStructure, model: Model) -> bool:
    vals = values(g, gamma) if model is Model.MIN_EQ else None
    for i in g.players:
        block = gamma.block_mask(i)
        fr = g.adj[i - 1]
        if block & fr or block == 1 << (i - 1):
            continue
        if vals is not None and any(vals[j - 1] <= vals[i - 1] for j in members(fr)):
            continue
        return False
    return True


def sf_perfect(g: FriendGraph) -> ExistenceResult:
    """Perfect structure under sumSF/minSF: exists iff every component is a clique."""
    if all(is_clique(g, c) for c in component_masks(g)):
        return ExistenceResult(True, components_partition(g), 0, "characterization")
    return ExistenceResult(False, None, 0, "characterization")


def eq_perfect_necessary(g: FriendGraph, gamma: CoalitionStructure) -> bool:
    """Necessary (not sufficient) condition for sumEQ perfectness."""
    if gamma != components_partition(g):
        return False
    return all(diameter(g, b) <= 2 for b in gamma.blocks)


# -- brute force ----------------------------------------------------------


def _individual_bad(g: FriendGraph, labels: np.ndarray, k0: np.ndarray, model: Model, notion: Notion) -> np.ndarray:
    """Rows of ``labels`` admitting a deviation that breaks ``notion``.

    Label ``n`` is the empty target. Moving to an unused label is the same
    structure as moving to the empty target, so no row needs masking.
    """
    n = g.n
    bad = np.zeros(len(labels), dtype=bool)
    targets = [n] if notion is Notion.IR else range(n + 1)
    for i in range(n):
        own = labels[:, i]
        for t in targets:
            moved = labels.copy()
            moved[:, i] = t
            k = key_matrix(g, moved, model)
            gain = (k[:, i] > k0[:, i]) & (own != t)
            if notion in (Notion.NASH, Notion.IR):
                bad |= gain
                continue
            hurt = k < k0
            hurt[:, i] = False
            if notion is Notion.IS:
                veto = labels == t
            elif notion is Notion.CIS:
                veto = (labels == t) | (labels == own[:, None])
            else:
                veto = np.ones_like(hurt)
            bad |= gain & ~(hurt & veto).any(axis=1)
    return bad


def _scan_individual(g, model, notion, lo, hi):
    for off, labels in _sweep.label_chunks(g.n, lo, hi):
        labels = labels.astype(np.int16)
        k0 = key_matrix(g, labels, model)
        ok = ~_individual_bad(g, labels, k0, model, notion)
        if ok.any():
            r = int(np.argmax(ok))
            return off + r, labels[r].tolist()
    return None


def _scan_core(g, model, strict, lo, hi):
    n = g.n
    pool: list[int] = []
    shifts = np.arange(n)
    for off, labels in _sweep.label_chunks(g.n, lo, hi, size=2048):
        labels = labels.astype(np.int16)
        k0 = key_matrix(g, labels, model)
        blocked = np.zeros(len(labels), dtype=bool)
        for c in pool:
            inside = ((c >> shifts) & 1).astype(bool)
            k = key_matrix(g, np.where(inside, n, labels), model)
            if strict:
                blocked |= (k[:, inside] >= k0[:, inside]).all(axis=1) & (k[:, inside] > k0[:, inside]).any(axis=1)
            else:
                blocked |= (k[:, inside] > k0[:, inside]).all(axis=1)
        for r in np.flatnonzero(~blocked):
            gamma = CoalitionStructure.from_rgs(labels[r].tolist())
            c = first_blocking(g, gamma, model, strict)
            if c is None:
                return off + int(r), labels[r].tolist()
            if c not in pool:
                pool.insert(0, c)
                del pool[_POOL:]
    return None


def _scan_popular(g, model, strict, lo, hi):
    keys = _sweep.partition_keys(g, model)
    total = len(keys)
    pool: list[int] = []
    for off in range(lo, hi, 4096):
        cand = keys[off : min(off + 4096, hi)]
        beaten = np.zeros(len(cand), dtype=bool)
        if pool:
            p = keys[pool]
            ahead = (cand[:, None, :] > p[None]).sum(axis=2)
            behind = (cand[:, None, :] < p[None]).sum(axis=2)
            if strict:
                same = np.arange(off, off + len(cand))[:, None] == np.array(pool)[None, :]
                beaten = ((behind >= ahead) & ~same).any(axis=1)
            else:
                beaten = (behind > ahead).any(axis=1)
        for r in np.flatnonzero(~beaten):
            idx = off + int(r)
            k0 = keys[idx]
            rival = None
            for lo2 in range(0, total, 16384):
                blk = keys[lo2 : lo2 + 16384]
                ahead = (k0 > blk).sum(axis=1)
                behind = (k0 < blk).sum(axis=1)
                hit = behind >= ahead if strict else behind > ahead
                if strict and lo2 <= idx < lo2 + len(blk):
                    hit[idx - lo2] = False
                if hit.any():
                    rival = lo2 + int(np.argmax(hit))
                    break
            if rival is None:
                return idx, None
            if rival not in pool:
                pool.insert(0, rival)
                del pool[_POOL:]
    return None


def _scan_perfect(g, model, lo, hi):
    keys = _sweep.partition_keys(g, model)
    ok = (keys[lo:hi] >= keys.max(axis=0)).all(axis=1)
    if ok.any():
        return lo + int(np.argmax(ok)), None
    return None


def exists_stable(
    g: FriendGraph,
    model: Model,
    notion: Notion,
    workers: int = 1,
    cap: int | None = None,
) -> ExistenceResult:
    """First structure in enumeration order that is stable, by exhaustive search.

    ``cap`` overrides the notion's default size limit: 12 for core and
    popularity notions, 20 otherwise.
    """
    if notion in (Notion.CORE, Notion.STRICT_CORE):
        default = CORE_EXISTS_CAP
    elif notion in (Notion.POPULAR, Notion.STRICT_POPULAR):
        default = POPULAR_EXISTS_CAP
    else:
        default = MAX_PARTITION_N
    limit = default if cap is None else min(cap, MAX_PARTITION_N)
    if g.n > limit:
        raise CapExceeded(f"{notion} existence refuses n={g.n} above its cap {limit} (bell({g.n}) = {bell(g.n):,})")
    if g.n > default:
        warnings.warn(f"{notion} existence at n={g.n} is above the default cap {default}; expect a long run",
                      stacklevel=2)

    total = bell(g.n)
    if notion.individual:
        hit = _sweep.first_hit(_scan_individual, (g, model, notion), total, workers)
    elif notion in (Notion.CORE, Notion.STRICT_CORE):
        hit = _sweep.first_hit(_scan_core, (g, model, notion is Notion.STRICT_CORE), total, workers)
    elif notion is Notion.PERFECT:
        hit = _sweep.first_hit(_scan_perfect, (g, model), total, workers)
    else:
        hit = _sweep.first_hit(_scan_popular, (g, model, notion is Notion.STRICT_POPULAR), total, workers)
    if hit is None:
        return ExistenceResult(False, None, total)
    gamma = CoalitionStructure.from_rgs(unrank_rgs(g.n, hit[0]))
    if not verify(g, gamma, model, notion).stable:
        raise AssertionError(f"search returned {gamma}, which fails {notion} verification")
    return ExistenceResult(True, gamma, hit[0] + 1)
