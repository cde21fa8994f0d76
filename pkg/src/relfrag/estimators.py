"""Fragment-satisfaction statistics: exact, Monte Carlo, and block estimators.

The exact statistic of a hypothesis f on an example with domain C is the
mean of f over all size-k subsets of C — a U-statistic of the structure,
computed here in exact rational arithmetic over the canonical colex subset
order.  The Monte Carlo variant averages f over uniformly drawn subsets; the
block estimator averages f over the blocks of sampled block vectors.  The
sup-deviation of a hypothesis class between a global example and one of its
induced sub-examples is evaluated through equivalence representatives, whose
signatures determine both statistics exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import CapExceededError
from .hypotheses import Hypothesis, HypothesisClass, reduce_by_equivalence
from .logic import RelationalExample, fragment, iter_size_k_subsets
from .sampling import BlockVector, SeededRng

DEFAULT_EXACT_CAP = 10**7
DEFAULT_OUTER_CAP = 10**5

Evaluator = Callable[[RelationalExample], object]


@dataclass(frozen=True)
class QValue:
    """A fragment-satisfaction probability with its evidence counts.

    ``value`` is an exact Fraction in exact mode (denominator the number of
    size-k subsets, before reduction) and a float in Monte Carlo mode;
    ``satisfied``/``total`` are the raw counts either way.
    """

    value: Fraction | float
    mode: str  # "exact" | "monte-carlo"
    satisfied: int
    total: int

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise ValueError(f"statistic outside [0, 1]: {self.value!r}")

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        if self.mode == "exact":
            return f"{self.satisfied}/{self.total}"
        return repr(float(self.value))


def _validate_k(example: RelationalExample, k: int) -> None:
    if not (isinstance(k, int) and k >= 1):
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k > len(example.domain):
        raise ValueError(f"k={k} exceeds the domain size {len(example.domain)}")


def satisfaction_fraction(
    example: RelationalExample,
    f: Evaluator,
    subsets: Iterable[Sequence[str]],
) -> Fraction:
    """Fraction of the given constant subsets whose fragment satisfies f.

    This is the counting core shared by the exact and Monte Carlo paths:
    feeding it every size-k subset exactly once reproduces the exact
    statistic.
    """
    satisfied = 0
    total = 0
    for subset in subsets:
        total += 1
        if f(fragment(example, subset)):
            satisfied += 1
    if total == 0:
        raise ValueError("no subsets supplied")
    return Fraction(satisfied, total)


def exact_q(
    example: RelationalExample,
    k: int,
    f: Evaluator,
    *,
    max_subsets: int = DEFAULT_EXACT_CAP,
) -> QValue:
    """Exact mean of f over all size-k fragments, as a rational number."""
    _validate_k(example, k)
    total = comb(len(example.domain), k)
    if total > max_subsets:
        raise CapExceededError(
            f"{total} subsets exceed the cap of {max_subsets}", total
        )
    satisfied = 0
    for subset in iter_size_k_subsets(example.domain, k):
        if f(fragment(example, subset)):
            satisfied += 1
    return QValue(Fraction(satisfied, total), "exact", satisfied, total)


def mc_q(
    example: RelationalExample,
    k: int,
    f: Evaluator,
    trials: int,
    rng: SeededRng,
) -> QValue:
    """Monte Carlo mean of f over uniformly drawn size-k fragments."""
    _validate_k(example, k)
    if not (isinstance(trials, int) and trials >= 1):
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    satisfied = 0
    for _ in range(trials):
        subset = rng.sample_subset(example.domain, k)
        if f(fragment(example, subset)):
            satisfied += 1
    return QValue(satisfied / trials, "monte-carlo", satisfied, trials)


@dataclass(frozen=True)
class BlockEstimate:
    """Average of a hypothesis over all blocks of q sampled block vectors."""

    value: float
    q: int
    n: int
    k: int
    satisfied: int
    evaluations: int

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise ValueError(f"estimate outside [0, 1]: {self.value!r}")


def block_estimate(
    aleph: RelationalExample,
    c_upsilon: Iterable[str],
    vectors: Sequence[BlockVector],
    f: Evaluator,
) -> BlockEstimate:
    """Evaluate f on every block's induced fragment and average.

    Blocks must lie inside the training domain ``c_upsilon``; since that
    domain is a subset of the global one, the fragment induced from the
    training example equals the fragment induced from the global example.
    """
    c_ups = frozenset(c_upsilon)
    if not c_ups <= aleph.domain_set:
        raise ValueError("the training domain is not a subset of the global domain")
    if not vectors:
        raise ValueError("no block vectors supplied")
    m = len(vectors[0])
    k = vectors[0].block_size
    cache: dict[frozenset[str], int] = {}
    satisfied = 0
    evaluations = 0
    for vector in vectors:
        if len(vector) != m or vector.block_size != k:
            raise ValueError("block vectors have inconsistent shapes")
        for block in vector.blocks:
            if not block <= c_ups:
                raise ValueError(
                    f"block {sorted(block)} is not inside the training domain"
                )
            value = cache.get(block)
            if value is None:
                value = 1 if f(fragment(aleph, block)) else 0
                cache[block] = value
            satisfied += value
            evaluations += 1
    return BlockEstimate(
        satisfied / evaluations, len(vectors), len(c_ups), k, satisfied, evaluations
    )


class SupDeviation(NamedTuple):
    value: Fraction
    witness: Hypothesis


def sup_deviation(
    aleph: RelationalExample,
    upsilon: RelationalExample,
    k: int,
    cls: HypothesisClass | Iterable[Hypothesis],
    *,
    max_subsets: int = 10**6,
) -> SupDeviation:
    """Largest |Q_global - Q_sub| over the class, with an achieving hypothesis.

    ``upsilon`` must be the fragment of ``aleph`` induced by its own domain;
    equivalence representatives on ``aleph`` then determine both statistics,
    so the supremum over the (possibly infinite) class equals the maximum
    over representatives.
    """
    _validate_k(upsilon, k)
    if not upsilon.domain_set <= aleph.domain_set:
        raise ValueError("the sub-example's domain is not inside the global domain")
    if upsilon != fragment(aleph, upsilon.domain):
        raise ValueError("the sub-example is not the induced fragment of the global example")
    reps = reduce_by_equivalence(cls, aleph, k, max_subsets=max_subsets)
    subsets = list(iter_size_k_subsets(aleph.domain, k))
    index = {s: i for i, s in enumerate(subsets)}
    sub_indices = [index[s] for s in iter_size_k_subsets(upsilon.domain, k)]
    n_all = len(subsets)
    n_sub = len(sub_indices)
    best: Fraction | None = None
    best_hyp: Hypothesis | None = None
    for hyp, sig in reps:
        q_aleph = Fraction(sig.popcount, n_all)
        q_upsilon = Fraction(sum(sig.bits[i] for i in sub_indices), n_sub)
        dev = abs(q_aleph - q_upsilon)
        if best is None or dev > best:
            best, best_hyp = dev, hyp
    if best is None:
        raise ValueError("the hypothesis class is empty")
    return SupDeviation(best, best_hyp)


def expectation_identity_check(
    aleph: RelationalExample,
    n: int,
    k: int,
    f: Evaluator,
    *,
    max_outer: int = DEFAULT_OUTER_CAP,
) -> tuple[Fraction, Fraction]:
    """Both sides of the identity: global statistic vs expected sub-statistic.

    Left: the exact statistic on the global example.  Right: the exact
    average, over all size-n sub-domains, of the statistic on the induced
    sub-example.  Both are exact rationals and must coincide.
    """
    if not (isinstance(n, int) and isinstance(k, int) and 1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k!r}, n={n!r}")
    if n > len(aleph.domain):
        raise ValueError(f"n={n} exceeds the domain size {len(aleph.domain)}")
    outer = comb(len(aleph.domain), n)
    if outer > max_outer:
        raise CapExceededError(
            f"{outer} outer subsets exceed the cap of {max_outer}", outer
        )
    lhs = exact_q(aleph, k, f).value
    total = Fraction(0)
    for subset in iter_size_k_subsets(aleph.domain, n):
        total += exact_q(fragment(aleph, subset), k, f).value
    rhs = total / outer
    return lhs, rhs
