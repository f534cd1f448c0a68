"""Friend-oriented values, friend aggregates and the six altruistic preferences.

Two routes compute the same orders:

* the scalar route (:func:`values`, :func:`preference_key`, :func:`compare`)
  works on one structure at a time and compares lexicographic tuples;
* the batch route (:func:`value_matrix`, :func:`key_matrix`) evaluates many
  structures at once with numpy and packs each lexicographic pair into one
  integer, for the partition and subset sweeps.

:func:`utility` is the M-weighted closed form with ``M = n**3``; it is kept
as an independent cross-check of both routes.
"""

from __future__ import annotations

from enum import Enum, IntEnum
from typing import Sequence

import numpy as np

from .game import CoalitionStructure, FriendGraph, members


class Model(Enum):
    SUM_SF = "sumSF"
    SUM_EQ = "sumEQ"
    SUM_AL = "sumAL"
    MIN_SF = "minSF"
    MIN_EQ = "minEQ"
    MIN_AL = "minAL"

    @property
    def degree(self) -> str:
        return self.value[-2:]

    @property
    def aggregation(self) -> str:
        return self.value[:3]

    @classmethod
    def parse(cls, name: str) -> Model:
        key = name.strip().lower().replace("-", "").replace("_", "")
        for m in cls:
            if m.value.lower() == key:
                return m
        raise ValueError(f"unknown altruism model {name!r}; expected one of {', '.join(m.value for m in cls)}")

    def __str__(self) -> str:
        return self.value


ALL_MODELS = tuple(Model)
SUM_MODELS = (Model.SUM_SF, Model.SUM_EQ, Model.SUM_AL)
MIN_MODELS = (Model.MIN_SF, Model.MIN_EQ, Model.MIN_AL)


class Preference(IntEnum):
    """Outcome of comparing a first structure against a second for one player."""

    SECOND_PREFERRED = -1
    INDIFFERENT = 0
    FIRST_PREFERRED = 1

    def flipped(self) -> Preference:
        return Preference(-self.value)


# -- scalar route ------------------------------------------------------------


def values(g: FriendGraph, gamma: CoalitionStructure) -> list[int]:
    """``v_i(gamma)`` for every player, as a 0-based list."""
    n = g.n
    out = [0] * n
    for b in gamma.blocks:
        size = b.bit_count()
        for p in members(b):
            f = (b & g.adj[p - 1]).bit_count()
            out[p - 1] = (n + 1) * f - (size - 1)
    return out


def value(g: FriendGraph, gamma: CoalitionStructure, i: int) -> int:
    b = gamma.block_mask(i)
    f = (b & g.adj[i - 1]).bit_count()
    return g.n * f - (b.bit_count() - 1 - f)


def _friend_vals(g: FriendGraph, vals: Sequence[int], i: int) -> list[int]:
    return [vals[f - 1] for f in members(g.adj[i - 1])]


def _sum_f(g, vals, i):
    return sum(_friend_vals(g, vals, i))


def _min_f(g, vals, i):
    fv = _friend_vals(g, vals, i)
    return min(fv) if fv else 0


def _min_f_incl(g, vals, i):
    return min(_friend_vals(g, vals, i) + [vals[i - 1]])


def friend_sum(g: FriendGraph, gamma: CoalitionStructure, i: int) -> int:
    return _sum_f(g, values(g, gamma), i)


def friend_sum_incl(g: FriendGraph, gamma: CoalitionStructure, i: int) -> int:
    vals = values(g, gamma)
    return _sum_f(g, vals, i) + vals[i - 1]


def friend_min(g: FriendGraph, gamma: CoalitionStructure, i: int) -> int:
    """Minimum friend value; zero for a friendless player."""
    return _min_f(g, values(g, gamma), i)


def friend_min_incl(g: FriendGraph, gamma: CoalitionStructure, i: int) -> int:
    """Minimum over friends and ``i`` itself; never empty, so equals ``v_i`` when friendless."""
    return _min_f_incl(g, values(g, gamma), i)


def aggregates(g: FriendGraph, gamma: CoalitionStructure, i: int) -> dict[str, int]:
    vals = values(g, gamma)
    s = _sum_f(g, vals, i)
    return {
        "v": vals[i - 1],
        "sumF": s,
        "sumF+": s + vals[i - 1],
        "minF": _min_f(g, vals, i),
        "minF+": _min_f_incl(g, vals, i),
    }


def preference_key(g: FriendGraph, vals: Sequence[int], i: int, model: Model) -> tuple[int, ...]:
    """Tuple whose lexicographic order is player ``i``'s preference order."""
    v = vals[i - 1]
    if model is Model.SUM_SF:
        return (v, _sum_f(g, vals, i))
    if model is Model.MIN_SF:
        return (v, _min_f(g, vals, i))
    if model is Model.SUM_EQ:
        return (_sum_f(g, vals, i) + v,)
    if model is Model.MIN_EQ:
        return (_min_f_incl(g, vals, i),)
    if model is Model.SUM_AL:
        return (_sum_f(g, vals, i), v)
    return (_min_f(g, vals, i), v)


def utility(g: FriendGraph, gamma: CoalitionStructure, i: int, model: Model, weight: int | None = None) -> int:
    """The M-weighted utility; ``weight`` defaults to ``n**3``."""
    big = g.n**3 if weight is None else weight
    vals = values(g, gamma)
    v = vals[i - 1]
    if model is Model.SUM_SF:
        return big * v + _sum_f(g, vals, i)
    if model is Model.MIN_SF:
        return big * v + _min_f(g, vals, i)
    if model is Model.SUM_EQ:
        return _sum_f(g, vals, i) + v
    if model is Model.MIN_EQ:
        return _min_f_incl(g, vals, i)
    if model is Model.SUM_AL:
        return v + big * _sum_f(g, vals, i)
    return v + big * _min_f(g, vals, i)


def _order(a, b) -> Preference:
    return Preference((a > b) - (a < b))


def compare(g: FriendGraph, i: int, gamma: CoalitionStructure, delta: CoalitionStructure, model: Model) -> Preference:
    """How player ``i`` ranks ``gamma`` against ``delta``."""
    return _order(preference_key(g, values(g, gamma), i, model), preference_key(g, values(g, delta), i, model))


def prefers(g: FriendGraph, i: int, gamma: CoalitionStructure, delta: CoalitionStructure, model: Model) -> bool:
    """True when ``i`` strictly prefers ``gamma`` to ``delta``."""
    return compare(g, i, gamma, delta, model) is Preference.FIRST_PREFERRED


def count_prefers(
    g: FriendGraph, gamma: CoalitionStructure, delta: CoalitionStructure, model: Model
) -> tuple[int, int]:
    """``(#players preferring gamma, #players preferring delta)``."""
    vg, vd = values(g, gamma), values(g, delta)
    ahead = behind = 0
    for i in g.players:
        kg, kd = preference_key(g, vg, i, model), preference_key(g, vd, i, model)
        if kg > kd:
            ahead += 1
        elif kg < kd:
            behind += 1
    return ahead, behind


# -- batch route -------------------------------------------------------------


def value_matrix(g: FriendGraph, labels: np.ndarray) -> np.ndarray:
    """Values for a batch of structures given as block-label rows.

    ``labels`` has shape ``(k, n)``; two players share a block exactly when
    their labels are equal (labels need not be restricted-growth).
    """
    adj = g.dense()
    same = labels[:, :, None] == labels[:, None, :]
    f = (same & adj).sum(axis=2, dtype=np.int64)
    size = same.sum(axis=2, dtype=np.int64)
    return (g.n + 1) * f - (size - 1)


def _radix(n: int) -> int:
    # strictly larger than twice any |secondary component|
    return 2 * n**3 + 1


def key_matrix(g: FriendGraph, labels: np.ndarray, model: Model) -> np.ndarray:
    """Integer preference keys, shape ``(k, n)``; larger is better for that player.

    SF and AL pairs are packed as ``primary * R + secondary`` with a radix
    ``R`` exceeding twice the secondary's absolute bound, which preserves the
    lexicographic order exactly.
    """
    v = value_matrix(g, labels)
    return keys_from_values(g, v, model)


def keys_from_values(g: FriendGraph, v: np.ndarray, model: Model) -> np.ndarray:
    adj = g.dense()
    r = _radix(g.n)
    if model.aggregation == "sum":
        agg = v @ adj.astype(np.int64)
        if model is Model.SUM_SF:
            return v * r + agg
        if model is Model.SUM_EQ:
            return agg + v
        return agg * r + v
    has_friend = adj.any(axis=1)
    minf = np.empty_like(v)
    for i in range(g.n):
        if has_friend[i]:
            minf[:, i] = v[:, adj[i]].min(axis=1)
        else:
            minf[:, i] = 0
    if model is Model.MIN_SF:
        return v * r + minf
    if model is Model.MIN_AL:
        return minf * r + v
    return np.where(has_friend, np.minimum(minf, v), v)


def structure_keys(g: FriendGraph, gamma: CoalitionStructure, model: Model) -> np.ndarray:
    """Batch-route keys of a single structure, shape ``(n,)``."""
    return key_matrix(g, np.array([gamma.rgs()], dtype=np.int16), model)[0]
