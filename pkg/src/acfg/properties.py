"""Executable checks of the axiomatic properties: unanimity, monotonicity, sovereignty."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _sweep
from .game import (
    CoalitionStructure,
    ContractViolation,
    FriendGraph,
    _move,
    bell,
    enumerate_partitions,
    members,
    unrank_rgs,
)
from .valuation import ALL_MODELS, Model, Preference, compare, key_matrix, values


class PreconditionError(ContractViolation):
    """A property case whose premises are not met; never counted as a failure."""


def add_friendship(g: FriendGraph, i: int, j: int) -> FriendGraph:
    """``g`` with the enemies ``i`` and ``j`` turned into friends."""
    if i == j:
        raise ContractViolation("a player cannot befriend itself")
    if g.are_friends(i, j):
        raise ContractViolation(f"players {i} and {j} are already friends")
    return FriendGraph.from_edges(g.n, g.edges() + [(i, j)])


def random_structure(n: int, rng: random.Random) -> CoalitionStructure:
    """Uniformly random partition of ``1..n``."""
    return CoalitionStructure.from_rgs(unrank_rgs(n, rng.randrange(bell(n))))


# -- monotonicity ------------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityCase:
    graph: FriendGraph
    i: int
    j: int
    gamma: CoalitionStructure
    delta: CoalitionStructure
    kind: str  # "I" or "II"

    def validate(self) -> None:
        g, i, j = self.graph, self.i, self.j
        if self.kind not in ("I", "II"):
            raise PreconditionError(f"monotonicity type must be I or II, not {self.kind!r}")
        if i == j or g.are_friends(i, j):
            raise PreconditionError(f"player {j} is not an enemy of player {i}")
        in_g = j in self.gamma.coalition_of(i)
        in_d = j in self.delta.coalition_of(i)
        if self.kind == "I" and not (in_g and in_d):
            raise PreconditionError(f"type I needs {j} in the coalition of {i} in both structures")
        if self.kind == "II" and not (in_g and not in_d):
            raise PreconditionError(f"type II needs {j} with {i} in the first structure only")
        if values(g, self.gamma)[j - 1] < values(g, self.delta)[j - 1]:
            raise PreconditionError(f"player {j} values the second structure more")


def monotonicity_outcome(case: MonotonicityCase, model: Model) -> tuple[Preference, Preference]:
    """Player ``i``'s ranking of gamma against delta before and after the new friendship."""
    case.validate()
    after = add_friendship(case.graph, case.i, case.j)
    return (
        compare(case.graph, case.i, case.gamma, case.delta, model),
        compare(after, case.i, case.gamma, case.delta, model),
    )


def check_monotonicity(case: MonotonicityCase, model: Model) -> bool:
    """Whether the definitional implication holds for this case.

    Raises :class:`PreconditionError` when the case does not qualify.
    """
    before, after = monotonicity_outcome(case, model)
    if before is Preference.FIRST_PREFERRED:
        return after is Preference.FIRST_PREFERRED
    if before is Preference.INDIFFERENT:
        return after is not Preference.SECOND_PREFERRED
    return True


@dataclass
class SampleReport:
    check: str
    model: Model
    samples: int
    seed: int | None
    premise_hits: int = 0
    rejected: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "model": self.model.value,
            "samples": self.samples,
            "seed": self.seed,
            "premise_hits": self.premise_hits,
            "rejected_draws": self.rejected,
            "violations": len(self.violations),
            "examples": self.violations[:5],
        }


def _draw_case(rng: random.Random, kind: str, graph: FriendGraph | None, max_n: int) -> MonotonicityCase | None:
    g = graph if graph is not None else _random_graph(rng, max_n)
    i = rng.randint(1, g.n)
    foes = members(g.enemy_mask(i))
    if not foes:
        return None
    j = rng.choice(foes)
    gamma, delta = random_structure(g.n, rng), random_structure(g.n, rng)
    gamma = _with_j(gamma, i, j, True)
    delta = _with_j(delta, i, j, kind == "I", rng)
    return MonotonicityCase(g, i, j, gamma, delta, kind)


def _with_j(gamma: CoalitionStructure, i: int, j: int, together: bool, rng: random.Random | None = None):
    home = gamma.block_mask(i)
    if together:
        return gamma if home >> (j - 1) & 1 else _move(gamma, j, home)
    if not home >> (j - 1) & 1:
        return gamma
    options = [b for b in gamma.blocks if b != home] + [0]
    return _move(gamma, j, rng.choice(options))


def _random_graph(rng: random.Random, max_n: int) -> FriendGraph:
    n = rng.randint(2, max_n)
    p = rng.random()
    return FriendGraph.from_edges(n, [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p])


def sample_monotonicity(
    model: Model, kind: str, samples: int, seed: int | None = 0,
    graph: FriendGraph | None = None, max_n: int = 8, max_redraws: int = 1000,
) -> SampleReport:
    """Check ``samples`` valid cases; draws that miss the preconditions are redrawn.

    ``graph=None`` draws a fresh random graph with at most ``max_n`` players
    for every case.
    """
    rng = random.Random(seed)
    report = SampleReport({"I": "mono1", "II": "mono2"}[kind], model, samples, seed)
    for _ in range(samples):
        for _attempt in range(max_redraws):
            case = _draw_case(rng, kind, graph, max_n)
            if case is None:
                report.rejected += 1
                continue
            try:
                before, after = monotonicity_outcome(case, model)
            except PreconditionError:
                report.rejected += 1
                continue
            break
        else:
            raise PreconditionError(f"no valid type-{kind} case after {max_redraws} draws")
        if before is Preference.SECOND_PREFERRED:
            continue
        report.premise_hits += 1
        if not check_monotonicity(case, model):
            report.violations.append({
                "edges": case.graph.edges(), "i": case.i, "j": case.j,
                "gamma": str(case.gamma), "delta": str(case.delta),
                "before": before.name, "after": after.name,
            })
    return report


# -- unanimity ---------------------------------------------------------------


def unanimity_premise(g: FriendGraph, i: int, gamma: CoalitionStructure, delta: CoalitionStructure) -> bool:
    """Every member of ``F_i`` and ``i`` itself values ``gamma`` strictly above ``delta``."""
    vg, vd = values(g, gamma), values(g, delta)
    return all(vg[a - 1] > vd[a - 1] for a in members(g.adj[i - 1] | 1 << (i - 1)))


def check_unanimity_sample(
    g: FriendGraph | None, model: Model, trials: int, seed: int | None = 0, max_n: int = 8
) -> SampleReport:
    """Sample ``(i, gamma, delta)`` and test unanimity whenever its premise holds.

    Pairs are oriented so the premise is tried both ways round.
    """
    rng = random.Random(seed)
    report = SampleReport("unanimity", model, trials, seed)
    for _ in range(trials):
        game = g if g is not None else _random_graph(rng, max_n)
        i = rng.randint(1, game.n)
        a, b = random_structure(game.n, rng), random_structure(game.n, rng)
        if not unanimity_premise(game, i, a, b):
            a, b = b, a
            if not unanimity_premise(game, i, a, b):
                continue
        report.premise_hits += 1
        if compare(game, i, a, b, model) is not Preference.FIRST_PREFERRED:
            report.violations.append({"edges": game.edges(), "i": i, "gamma": str(a), "delta": str(b)})
    return report


# -- sovereignty -------------------------------------------------------------


def sovereignty_construct(n: int, i: int, gamma: CoalitionStructure) -> FriendGraph:
    """Friends exactly within ``gamma(i)``; there ``gamma`` is a best structure for ``i``."""
    if gamma.n != n:
        raise ContractViolation(f"structure covers {gamma.n} players, expected {n}")
    home = members(gamma.block_mask(i))
    return FriendGraph.from_edges(n, [(a, b) for x, a in enumerate(home) for b in home[x + 1 :]])


def sovereignty_counterexample(
    n: int, i: int, gamma: CoalitionStructure, models: Iterable[Model] = ALL_MODELS
) -> tuple[Model, CoalitionStructure] | None:
    """Exhaustively look for a structure that ``i`` strictly prefers to ``gamma``."""
    g = sovereignty_construct(n, i, gamma)
    labels0 = np.array([gamma.rgs()], dtype=np.int16)
    for model in models:
        k0 = key_matrix(g, labels0, model)[0, i - 1]
        for off, labels in _sweep.label_chunks(n, 0, bell(n)):
            col = key_matrix(g, labels, model)[:, i - 1]
            if (col > k0).any():
                r = int(np.argmax(col > k0))
                return model, CoalitionStructure.from_rgs(labels[r].tolist())
    return None


def check_sovereignty(n: int, i: int, gamma: CoalitionStructure, models: Iterable[Model] = ALL_MODELS) -> bool:
    return sovereignty_counterexample(n, i, gamma, models) is None


def check_sovereignty_all(n: int, models: Iterable[Model] = ALL_MODELS) -> bool:
    """Every player and every structure on ``n`` players."""
    models = tuple(models)
    for gamma in enumerate_partitions(n):
        for home in gamma.blocks:
            # members of one block play symmetric roles in the constructed graph
            if not check_sovereignty(n, members(home)[0], gamma, models):
                return False
    return True

