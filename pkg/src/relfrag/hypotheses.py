"""Hypothesis classes of {0,1}-valued functions on size-k relational examples.

A hypothesis is any total function from fragments to {0,1}; a theory induces
one via satisfaction.  Classes come in two flavours: explicit finite lists,
and integer-statistic threshold families, which are infinite as written but
collapse to finitely many distinct behaviours once a global example is fixed.
Equivalence of hypotheses with respect to a global example is captured by
signatures (bit vectors over the canonical enumeration of size-k constant
subsets), and the VC dimension is computed by exhaustive shattering search
with behaviour-based pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapExceededError
from .logic import (
    Formula,
    RelationalExample,
    check_closed,
    evaluate,
    format_formula,
    iter_fragments,
)

DEFAULT_SIGNATURE_CAP = 10**6
DEFAULT_UNIVERSE_CAP = 64
DEFAULT_MEMBER_CAP = 4096
_SEARCH_BUDGET = 2_000_000  # candidate-set checks before degrading to a lower bound


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A labelled total {0,1}-valued function on relational examples."""

    label: str
    fn: Callable[[RelationalExample], object]
    k: int | None = None  # intended fragment size, informational

    def __call__(self, fragment: RelationalExample) -> int:
        return 1 if self.fn(fragment) else 0


def from_theory(phi: Sequence[Formula], k: int) -> Hypothesis:
    """The hypothesis that is 1 exactly on fragments satisfying every formula.

    The empty theory is the constant-1 hypothesis.  ``k`` records the
    intended fragment size; evaluation itself works on any example.
    """
    formulas = tuple(phi)
    for f in formulas:
        check_closed(f)
    if formulas:
        label = " & ".join(
            format_formula(f) if len(formulas) == 1 else f"({format_formula(f)})"
            for f in formulas
        )
    else:
        label = "true"
    return Hypothesis(label, lambda ex: all(evaluate(f, ex) for f in formulas), k)


def constant_hypothesis(value: int) -> Hypothesis:
    v = 1 if value else 0
    return Hypothesis("true" if v else "false", lambda ex: v)


class HypothesisClass:
    """Base class; concrete classes expose a finite member list per point set."""

    label: str = "class"

    def effective_hypotheses(
        self, points: Sequence[RelationalExample]
    ) -> list[Hypothesis]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class ExplicitClass(HypothesisClass):
    members: tuple[Hypothesis, ...]
    label: str = "explicit"

    def effective_hypotheses(self, points):
        return list(self.members)


@dataclass(frozen=True, eq=False)
class ThresholdClass(HypothesisClass):
    """The family { fragment -> 1 iff statistic(fragment) >= t : t integer }.

    On a fixed point set the family has one behaviour per distinct observed
    statistic value, plus the all-zero behaviour; thresholds are enumerated
    at exactly those values (sentinel above the maximum), which is exact
    because the statistic is integer-valued.
    """

    statistic: Callable[[RelationalExample], int]
    label: str = "threshold"

    def effective_hypotheses(self, points):
        values = set()
        for p in points:
            v = self.statistic(p)
            if not isinstance(v, int):
                raise TypeError(
                    f"threshold statistics must be integer-valued, got {v!r}"
                )
            values.add(v)
        if not values:
            return [constant_hypothesis(1)]
        thresholds = sorted(values) + [max(values) + 1]
        return [self._member(t) for t in thresholds]

    def _member(self, t: int) -> Hypothesis:
        stat = self.statistic
        return Hypothesis(f"{self.label}>={t}", lambda ex, t=t: stat(ex) >= t)


def threshold_class(
    statistic: Callable[[RelationalExample], int],
    direction: str = ">=",
    label: str = "threshold",
) -> ThresholdClass:
    if direction != ">=":
        raise ValueError(f"only the '>=' direction is supported, got {direction!r}")
    return ThresholdClass(statistic, label)


def atom_count_statistic(example: RelationalExample) -> int:
    return len(example.atoms)


def predicate_count_statistic(predicate: str) -> Callable[[RelationalExample], int]:
    def count(example: RelationalExample) -> int:
        return sum(1 for a in example.atoms if a.predicate == predicate)

    return count


#: Named statistics available to class description files and the CLI.
BUILTIN_STATISTICS: dict[str, Callable[[RelationalExample], int]] = {
    "atom-count": atom_count_statistic,
    "edge-count": predicate_count_statistic("edge"),
}


# ---------------------------------------------------------------------------
# Signatures and equivalence


@dataclass(frozen=True)
class Signature:
    """Hypothesis behaviour over the canonical size-k subsets of a global domain.

    Two hypotheses are k-equivalent w.r.t. that global example iff their
    signatures are equal.
    """

    bits: bytes

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    @property
    def popcount(self) -> int:
        return sum(self.bits)


def _effective(
    cls: HypothesisClass | Iterable[Hypothesis], points: Sequence[RelationalExample]
) -> list[Hypothesis]:
    if isinstance(cls, HypothesisClass):
        return cls.effective_hypotheses(points)
    return list(cls)


def reduce_by_equivalence(
    cls: HypothesisClass | Iterable[Hypothesis],
    aleph: RelationalExample,
    k: int,
    *,
    max_subsets: int = DEFAULT_SIGNATURE_CAP,
) -> list[tuple[Hypothesis, Signature]]:
    """One representative per distinct behaviour on the global example.

    Returns (hypothesis, signature) pairs in first-seen order; signatures are
    pairwise distinct and indexed by the canonical colex enumeration of
    size-k subsets of the global domain.
    """
    if not (isinstance(k, int) and 1 <= k <= len(aleph.domain)):
        raise ValueError(f"need 1 <= k <= |domain|, got k={k!r}")
    n_subsets = comb(len(aleph.domain), k)
    if n_subsets > max_subsets:
        raise CapExceededError(
            f"{n_subsets} size-{k} subsets exceed the cap of {max_subsets}", n_subsets
        )
    fragments = [frag for _, frag in iter_fragments(aleph, k)]
    seen: dict[bytes, tuple[Hypothesis, Signature]] = {}
    for hyp in _effective(cls, fragments):
        bits = bytes(1 if hyp(frag) else 0 for frag in fragments)
        if bits not in seen:
            seen[bits] = (hyp, Signature(bits))
    return list(seen.values())


# ---------------------------------------------------------------------------
# VC dimension by exhaustive shattering search


@dataclass(frozen=True)
class ShatterSearchResult:
    """Outcome of a shattering search.

    ``exact`` is False when a cap or the work budget forced the search to
    stop early; the dimension is then a certified lower bound, never an
    exact value.  ``witness`` is the lexicographically smallest shattered
    point set found at that dimension (as universe indices).
    """

    dimension: int
    exact: bool
    witness: tuple[int, ...]


def _behaviour_masks(
    hypotheses: Sequence[Hypothesis], points: Sequence[RelationalExample]
) -> list[int]:
    masks = []
    seen = set()
    for hyp in hypotheses:
        mask = 0
        for i, p in enumerate(points):
            if hyp(p):
                mask |= 1 << i
        if mask not in seen:
            seen.add(mask)
            masks.append(mask)
    return masks


def _is_shattered(masks: Sequence[int], candidate: tuple[int, ...]) -> bool:
    want = 1 << len(candidate)
    patterns = set()
    for mask in masks:
        pattern = 0
        for j, i in enumerate(candidate):
            if mask >> i & 1:
                pattern |= 1 << j
        patterns.add(pattern)
        if len(patterns) == want:
            return True
    return False


def vc_dimension(
    cls: HypothesisClass | Iterable[Hypothesis],
    universe: Iterable[RelationalExample],
    *,
    max_points: int = DEFAULT_UNIVERSE_CAP,
    max_members: int = DEFAULT_MEMBER_CAP,
    seed: int = 0,
    lower_bound_tries: int = 20_000,
) -> ShatterSearchResult:
    """Largest d such that some size-d subset of the universe is shattered.

    The search walks candidate sizes upward, stopping at the first size with
    no shattered set, and prunes with behaviour signatures (a class with b
    distinct behaviours cannot shatter more than log2(b) points).  Above the
    universe/member caps, or if the exhaustive search exceeds its work
    budget, a seeded randomized search reports a flagged lower bound.
    """
    points = list(universe)
    over_cap = len(points) > max_points
    hypotheses = _effective(cls, points)
    over_cap = over_cap or len(hypotheses) > max_members
    masks = _behaviour_masks(hypotheses, points)
    if not points or len(masks) <= 1:
        return ShatterSearchResult(0, True, ())

    d_cap = min(len(points), (len(masks)).bit_length() - 1)
    if over_cap:
        return _randomized_lower_bound(masks, len(points), d_cap, seed, lower_bound_tries)

    best, best_witness = 0, ()
    budget = _SEARCH_BUDGET
    for d in range(1, d_cap + 1):
        found = None
        for candidate in combinations(range(len(points)), d):
            budget -= 1
            if budget <= 0:
                # degrade instead of hanging; result is only a lower bound
                return ShatterSearchResult(best, False, best_witness)
            if _is_shattered(masks, candidate):
                found = candidate
                break
        if found is None:
            return ShatterSearchResult(best, True, best_witness)
        best, best_witness = d, found
    return ShatterSearchResult(best, True, best_witness)


def _randomized_lower_bound(masks, n_points, d_cap, seed, tries):
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    best, best_witness = 0, ()
    d = 1
    while d <= d_cap:
        found = None
        for _ in range(max(1, tries // max(1, d_cap))):
            candidate = tuple(sorted(rng.choice(n_points, size=d, replace=False)))
            if _is_shattered(masks, candidate):
                found = candidate
                break
        if found is None:
            break
        best, best_witness = d, tuple(int(i) for i in found)
        d += 1
    return ShatterSearchResult(best, False, best_witness)


# ---------------------------------------------------------------------------
# Class description files


def load_class_description(
    description: dict, vocabulary, k: int
) -> HypothesisClass:
    """Build a class from its file form (parsed JSON object).

    Two shapes are accepted: ``{"formulas": ["...", ...]}`` (one hypothesis
    per formula string) and ``{"threshold": "edge-count"}`` or
    ``{"threshold": {"statistic": "edge-count"}}`` (a named built-in
    statistic; see BUILTIN_STATISTICS).
    """
    from .logic import parse_formula

    if "formulas" in description:
        members = tuple(
            from_theory([parse_formula(text, vocabulary)], k)
            for text in description["formulas"]
        )
        if not members:
            raise ValueError("a formula class needs at least one formula")
        return ExplicitClass(members)
    if "threshold" in description:
        spec = description["threshold"]
        name = spec["statistic"] if isinstance(spec, dict) else spec
        if name not in BUILTIN_STATISTICS:
            raise ValueError(
                f"unknown statistic {name!r}; available: {sorted(BUILTIN_STATISTICS)}"
            )
        return ThresholdClass(BUILTIN_STATISTICS[name], label=name)
    raise ValueError("class description needs a 'formulas' or 'threshold' key")
