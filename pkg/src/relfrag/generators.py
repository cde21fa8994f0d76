"""Reproducible global-example generators and small fixed fixtures.

Two random digraph models with contrasting effective sample sizes at matched
pairwise edge probability: independent directed edges (pair-level randomness,
variance of the size-2 edge statistic decays roughly quadratically in the
node count) and broadcaster nodes that either emit edges to everyone or to
no one (node-level randomness, roughly linear decay).  Generation is a pure
function of (parameters, seed): the random draws are consumed in the
canonical ordered-pair order over the sorted constant list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import GroundAtom, RelationalExample, atom
from .sampling import SeededRng

EDGE = "edge"


@dataclass(frozen=True)
class GeneratorSpec:
    """Config-file form of a generator invocation."""

    kind: str  # erdos-renyi-directed | broadcaster | smokers-fixture | two-smokers-fixture
    nodes: int = 0
    probability: float = 0.0
    seed: int = 0

    def build(self) -> RelationalExample:
        if self.kind == "erdos-renyi-directed":
            return erdos_renyi_directed(self.nodes, self.probability, self.seed)
        if self.kind == "broadcaster":
            return broadcaster(self.nodes, self.probability, self.seed)
        if self.kind == "smokers-fixture":
            return smokers_fixture()
        if self.kind == "two-smokers-fixture":
            return two_smokers_fixture()
        raise ValueError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        return cls(
            kind=d["kind"],
            nodes=int(d.get("nodes", 0)),
            probability=float(d.get("probability", d.get("p", d.get("q", 0.0)))),
            seed=int(d.get("seed", 0)),
        )


def _node_names(count: int) -> list[str]:
    if count < 1:
        raise ValueError(f"node count must be at least 1, got {count!r}")
    return sorted(f"v{i}" for i in range(count))


def _check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    return float(p)


def erdos_renyi_directed(nodes: int, p: float, seed: int) -> RelationalExample:
    """Each ordered pair of distinct nodes carries an edge independently."""
    p = _check_probability(p)
    names = _node_names(nodes)
    pairs = [(u, v) for u in names for v in names if u != v]
    draws = SeededRng(seed).generator.random(len(pairs))
    atoms = tuple(
        GroundAtom(EDGE, pair) for pair, draw in zip(pairs, draws) if draw < p
    )
    return RelationalExample(atoms, tuple(names))


def broadcaster(nodes: int, q: float, seed: int) -> RelationalExample:
    """Each node independently either emits edges to all others or to none."""
    q = _check_probability(q)
    names = _node_names(nodes)
    draws = SeededRng(seed).generator.random(len(names))
    atoms = []
    for u, draw in zip(names, draws):
        if draw < q:
            atoms.extend(GroundAtom(EDGE, (u, v)) for v in names if v != u)
    return RelationalExample(tuple(atoms), tuple(names))


def smokers_fixture() -> RelationalExample:
    """Three people, mutual friendships alice-bob and bob-eve, one smoker."""
    return RelationalExample(
        (
            atom("fr", "alice", "bob"),
            atom("fr", "bob", "alice"),
            atom("fr", "bob", "eve"),
            atom("fr", "eve", "bob"),
            atom("sm", "alice"),
        ),
        ("alice", "bob", "eve"),
    )


def two_smokers_fixture() -> RelationalExample:
    """Three people, one directed friendship, two smokers."""
    return RelationalExample(
        (
            atom("fr", "alice", "bob"),
            atom("sm", "alice"),
            atom("sm", "eve"),
        ),
        ("alice", "bob", "eve"),
    )
