"""Random processes over relational examples, and their exact distributions.

Three samplers: a uniform size-n domain subset (training-domain draw), the
block process that turns one such draw into vectors of size-k constant
subsets distributed like i.i.d. uniform size-k subsets of the global domain,
and the i.i.d. reference process itself.  Both process distributions can also
be enumerated exactly in rational arithmetic on tiny instances, so the claim
that the two coincide is checkable as exact equality rather than within a
tolerance.

Streams are Philox counter-based: identical (seed, stream) reproduce the
same draws on any platform; distinct stream ids are independent.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, perm
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError
from .logic import RelationalExample

_MAX_SEED = 2**64


@dataclass(eq=False)
class SeededRng:
    """A reproducible random stream identified by (seed, stream)."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < _MAX_SEED):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.stream < 0:
            raise ValueError(f"stream id must be non-negative, got {self.stream!r}")
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        self._generator = np.random.Generator(np.random.Philox(seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def spawn(self, stream: int) -> "SeededRng":
        """A fresh, independent stream under the same seed."""
        return SeededRng(self.seed, stream)

    def random(self) -> float:
        return float(self._generator.random())

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)."""
        return int(self._generator.integers(low, high))

    def sample_subset(self, items: Sequence, k: int) -> tuple:
        """Uniform size-k subset via a partial Fisher-Yates draw, sorted."""
        arr = list(items)
        n = len(arr)
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} items from {n}")
        for i in range(k):
            j = int(self._generator.integers(i, n))
            arr[i], arr[j] = arr[j], arr[i]
        return tuple(sorted(arr[:k]))

    def shuffled(self, items: Sequence) -> list:
        order = self._generator.permutation(len(items))
        return [items[i] for i in order]


@dataclass(frozen=True)
class BlockVector:
    """An ordered vector of equally sized constant subsets (blocks overlap freely)."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise ValueError("a block vector needs at least one block")
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ValueError(f"blocks have mixed sizes: {sorted(sizes)}")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])


def sample_domain_subset(
    example: RelationalExample, n: int, rng: SeededRng
) -> frozenset[str]:
    """A uniformly distributed size-n subset of the example's domain."""
    if not 0 <= n <= len(example.domain):
        raise ValueError(
            f"cannot sample {n} constants from a domain of {len(example.domain)}"
        )
    return frozenset(rng.sample_subset(example.domain, n))


def _validate_block_params(aleph: RelationalExample, n: int, k: int) -> int:
    if not (isinstance(k, int) and isinstance(n, int) and 1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k!r}, n={n!r}")
    if n > len(aleph.domain):
        raise ValueError(
            f"n={n} exceeds the global domain size {len(aleph.domain)}"
        )
    return n // k


def sample_block_vectors(
    aleph: RelationalExample, n: int, k: int, q: int, rng: SeededRng
) -> tuple[frozenset[str], tuple[BlockVector, ...]]:
    """Run the block process once: draw the training domain, then q vectors.

    The training domain C is a uniform size-n subset of the global domain.
    Each vector is built by drawing floor(n/k) independent uniform size-k
    index subsets of {1..N} (N the global domain size), then a uniform
    injection g from their union into C; the blocks are the g-images.
    """
    t = _validate_block_params(aleph, n, k)
    if q < 1:
        raise ValueError(f"q must be at least 1, got {q!r}")
    n_global = len(aleph.domain)
    c_upsilon = sorted(rng.sample_subset(aleph.domain, n))
    index_pool = range(1, n_global + 1)
    vectors = []
    for _ in range(q):
        index_subsets = [frozenset(rng.sample_subset(index_pool, k)) for _ in range(t)]
        union = sorted(frozenset().union(*index_subsets))
        assert len(union) <= t * k <= n  # the injection into C always exists
        pictured = rng.shuffled(c_upsilon)
        g = dict(zip(union, pictured))
        vectors.append(
            BlockVector(tuple(frozenset(g[i] for i in subset) for subset in index_subsets))
        )
    return frozenset(c_upsilon), tuple(vectors)


def sample_iid_vector(
    aleph: RelationalExample, n: int, k: int, rng: SeededRng
) -> BlockVector:
    """floor(n/k) independent uniform size-k subsets of the global domain."""
    t = _validate_block_params(aleph, n, k)
    return BlockVector(
        tuple(frozenset(rng.sample_subset(aleph.domain, k)) for _ in range(t))
    )


# ---------------------------------------------------------------------------
# Exact process distributions (tiny instances, rational arithmetic)

VectorKey = tuple[tuple[int, ...], ...]

_DEFAULT_OUTCOME_CAP = 5_000_000


def _as_key(blocks: Iterable[Iterable[int]]) -> VectorKey:
    return tuple(tuple(sorted(b)) for b in blocks)


def iid_randomness_size(domain_size: int, n: int, k: int) -> int:
    return comb(domain_size, k) ** (n // k)


def block_randomness_bound(domain_size: int, n: int, k: int) -> int:
    t = n // k
    return comb(domain_size, n) * comb(domain_size, k) ** t * perm(n, min(t * k, n))


def enumerate_process_distribution(
    domain_size: int,
    n: int,
    k: int,
    which: str,
    *,
    max_outcomes: int = _DEFAULT_OUTCOME_CAP,
    corrupt_injection: bool = False,
) -> dict[VectorKey, Fraction]:
    """Exact distribution of one vector under the chosen process.

    The domain is canonically {0, ..., domain_size-1}.  Keys are vectors of
    sorted index tuples; probabilities are Fractions summing to exactly 1.
    ``corrupt_injection`` replaces the uniform injection of the block process
    with a deterministic order-preserving one — an ablation that must change
    the distribution, used to check that the equality test has teeth.
    """
    if which not in ("block", "iid"):
        raise ValueError(f"which must be 'block' or 'iid', got {which!r}")
    if not 1 <= k <= n <= domain_size:
        raise ValueError(f"need 1 <= k <= n <= domain size, got {k}, {n}, {domain_size}")
    t = n // k
    if which == "iid":
        size = iid_randomness_size(domain_size, n, k)
        if size > max_outcomes:
            raise CapExceededError(
                f"i.i.d. randomness space has {size} outcomes, above {max_outcomes}", size
            )
        p = Fraction(1, comb(domain_size, k)) ** t
        return {
            _as_key(blocks): p
            for blocks in product(combinations(range(domain_size), k), repeat=t)
        }

    bound = block_randomness_bound(domain_size, n, k)
    if bound > max_outcomes:
        raise CapExceededError(
            f"block randomness space has up to {bound} outcomes, above {max_outcomes}",
            bound,
        )
    dist: dict[VectorKey, Fraction] = defaultdict(lambda: Fraction(0))
    outer = Fraction(1, comb(domain_size, n))
    for c_upsilon in combinations(range(domain_size), n):
        _accumulate_conditional_block(
            dist, c_upsilon, domain_size, k, t, outer, corrupt_injection
        )
    return dict(dist)


def enumerate_conditional_block_distribution(
    domain_size: int,
    c_upsilon: Sequence[int],
    k: int,
    *,
    max_outcomes: int = _DEFAULT_OUTCOME_CAP,
    corrupt_injection: bool = False,
) -> dict[VectorKey, Fraction]:
    """Exact distribution of one block vector given a fixed training domain.

    This is the per-vector part of the block process with the outer domain
    draw removed; blocks always land inside ``c_upsilon``.  The vector length
    is floor(|c_upsilon| / k).
    """
    n = len(c_upsilon)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= |c_upsilon|, got k={k}, |c_upsilon|={n}")
    if not set(c_upsilon) <= set(range(domain_size)):
        raise ValueError("c_upsilon must consist of canonical domain indices")
    t = n // k
    bound = comb(domain_size, k) ** t * perm(n, min(t * k, n))
    if bound > max_outcomes:
        raise CapExceededError(
            f"conditional randomness space has up to {bound} outcomes, above {max_outcomes}",
            bound,
        )
    dist: dict[VectorKey, Fraction] = defaultdict(lambda: Fraction(0))
    _accumulate_conditional_block(
        dist, tuple(sorted(c_upsilon)), domain_size, k, t, Fraction(1), corrupt_injection
    )
    return dict(dist)


def _accumulate_conditional_block(dist, c_upsilon, domain_size, k, t, weight, corrupt):
    n = len(c_upsilon)
    subsets_k = list(combinations(range(1, domain_size + 1), k))
    p_indices = weight * Fraction(1, len(subsets_k)) ** t
    for index_tuple in product(subsets_k, repeat=t):
        union = sorted(frozenset().union(*map(frozenset, index_tuple)))
        r = len(union)
        if corrupt:
            images = [tuple(c_upsilon[:r])]  # deterministic order-preserving map
        else:
            images = permutations(c_upsilon, r)
        share = p_indices if corrupt else p_indices / perm(n, r)
        for image in images:
            g = dict(zip(union, image))
            key = _as_key([g[i] for i in subset] for subset in index_tuple)
            dist[key] += share


def total_variation(
    a: dict[VectorKey, Fraction], b: dict[VectorKey, Fraction]
) -> Fraction:
    """Exact total-variation distance: half the L1 distance."""
    keys = set(a) | set(b)
    zero = Fraction(0)
    return sum((abs(a.get(key, zero) - b.get(key, zero)) for key in keys), zero) / 2
