"""Experiment harness: seeded runs, statistical validation, reproducible reports.

Every runner returns a RunReport whose config echo and seed fully determine
the numeric fields: rerunning with the same inputs reproduces the report
bit-for-bit apart from the wall clock.  Verdicts are recomputable from the
report's own raw numbers, and a verifier never reports a bare pass on a
vacuous bound (one that is >= 1 after clamping) without flagging it.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .bounds import (
    expected_error_bound,
    classical_vc_expected,
    classical_vc_tail,
    classical_vc_tail_log10,
    floor_block_count,
    hoeffding_block_bound,
    hoeffding_block_bound_log10,
    mgf_bound,
    tail_bound,
    tail_bound_log10,
    tail_bound_simplified,
    tail_bound_simplified_log10,
)
from .estimators import exact_q, mc_q
from .generators import broadcaster, erdos_renyi_directed
from .hypotheses import (
    Hypothesis,
    HypothesisClass,
    from_theory,
    reduce_by_equivalence,
    vc_dimension,
)
from .logic import (
    RelationalExample,
    Vocabulary,
    fragment,
    iter_fragments,
    iter_size_k_subsets,
    parse_formula,
)
from .sampling import (
    SeededRng,
    enumerate_process_distribution,
    sample_block_vectors,
    sample_domain_subset,
    total_variation,
)

#: 0.05-step epsilon grid over (0, 1].
DEFAULT_EPSILON_GRID: tuple[Fraction, ...] = tuple(
    Fraction(i, 20) for i in range(1, 21)
)
#: 0.01-step grid used by the bound self-consistency checks.
FINE_EPSILON_GRID: tuple[Fraction, ...] = tuple(
    Fraction(i, 100) for i in range(1, 101)
)


def rational(value: Fraction) -> dict:
    """Report form of an exact rational: num/den text plus a decimal rendering."""
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "decimal": float(value),
    }


def as_epsilons(values: Iterable) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        f = v if isinstance(v, Fraction) else Fraction(str(v))
        if not 0 <= f <= 1:
            raise ValueError(f"epsilon {v!r} outside [0, 1]")
        out.append(f)
    if not out:
        raise ValueError("empty epsilon grid")
    return tuple(out)


@dataclass
class RunReport:
    """A fully reproducible experiment record."""

    experiment: str
    config: dict
    results: dict
    verdicts: list[dict]
    seed: int | None
    wall_clock_seconds: float
    plot_x: str | None = None
    plot_y: str | None = None

    @property
    def passed(self) -> bool:
        return all(v["passed"] for v in self.verdicts)

    def first_failure(self) -> dict | None:
        for v in self.verdicts:
            if not v["passed"]:
                return v
        return None

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "config": self.config,
            "seed": self.seed,
            "results": self.results,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "wall_clock_seconds": self.wall_clock_seconds,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def grid_rows(self) -> tuple[list[str], list[dict]]:
        """CSV view: the grid rows when present, else flattened key/value pairs."""
        grid = self.results.get("grid")
        if isinstance(grid, list) and grid and isinstance(grid[0], dict):
            names: list[str] = []
            for row in grid:
                for key in row:
                    if key not in names:
                        names.append(key)
            return names, grid
        rows = [
            {"key": key, "value": json.dumps(value, sort_keys=True)}
            for key, value in sorted(self.results.items())
        ]
        return ["key", "value"], rows

    def plot_points(self) -> list[tuple[float, float]]:
        if not (self.plot_x and self.plot_y):
            raise ValueError(f"experiment {self.experiment} has no plot series")
        _, rows = self.grid_rows()
        return [(float(r[self.plot_x]), float(r[self.plot_y])) for r in rows]


def _finish(experiment, config, results, verdicts, seed, started, **plot) -> RunReport:
    return RunReport(
        experiment=experiment,
        config=config,
        results=results,
        verdicts=verdicts,
        seed=seed,
        wall_clock_seconds=time.perf_counter() - started,
        **plot,
    )


# ---------------------------------------------------------------------------
# Distribution equality of the block and i.i.d. processes


def run_distribution_equality(
    domain_size: int,
    n: int,
    k: int,
    *,
    corrupt_injection: bool = False,
    max_outcomes: int = 5_000_000,
) -> RunReport:
    """Exact total-variation distance between the two process distributions.

    Passes iff the distance is exactly zero in rational arithmetic.  The
    ``corrupt_injection`` ablation deliberately breaks the block sampler and
    must make the verdict fail.
    """
    started = time.perf_counter()
    block = enumerate_process_distribution(
        domain_size, n, k, "block",
        max_outcomes=max_outcomes, corrupt_injection=corrupt_injection,
    )
    iid = enumerate_process_distribution(
        domain_size, n, k, "iid", max_outcomes=max_outcomes
    )
    tv = total_variation(block, iid)
    t = n // k
    uniform_p = Fraction(1, comb(domain_size, k) ** t)
    results = {
        "outcomes_block": len(block),
        "outcomes_iid": len(iid),
        "total_variation": rational(tv),
        "block_mass_total": rational(sum(block.values(), Fraction(0))),
        "iid_uniform_probability": rational(uniform_p),
        "block_matches_closed_form": all(p == uniform_p for p in block.values()),
    }
    verdicts = [
        {
            "name": "distributions-identical",
            "passed": tv == 0,
            "total_variation": rational(tv),
        }
    ]
    config = {
        "domain_size": domain_size,
        "n": n,
        "k": k,
        "corrupt_injection": corrupt_injection,
    }
    return _finish("distribution-equality", config, results, verdicts, None, started)


# ---------------------------------------------------------------------------
# Expectation identity


def run_expectation_identity(
    example: RelationalExample,
    n: int,
    k: int,
    hypothesis: Hypothesis,
    *,
    max_outer: int = 10**5,
) -> RunReport:
    from .estimators import expectation_identity_check

    started = time.perf_counter()
    lhs, rhs = expectation_identity_check(example, n, k, hypothesis, max_outer=max_outer)
    results = {"global_statistic": rational(lhs), "expected_sub_statistic": rational(rhs)}
    verdicts = [{"name": "expectation-identity", "passed": lhs == rhs}]
    config = {
        "n": n,
        "k": k,
        "hypothesis": hypothesis.label,
        "domain_size": len(example.domain),
    }
    return _finish("expectation-identity", config, results, verdicts, None, started)


# ---------------------------------------------------------------------------
# Sup-deviation collection for the two theorem verifiers


class _DeviationSampler:
    """Per-trial sup-deviation evaluated through equivalence representatives.

    Signatures over the global example determine both the global statistic
    and the statistic of any induced sub-example, so each trial only counts
    signature bits at the sub-domain's subset indices.
    """

    def __init__(self, aleph, k, cls, max_subsets=10**6):
        self.aleph = aleph
        self.k = k
        self.pairs = reduce_by_equivalence(cls, aleph, k, max_subsets=max_subsets)
        subsets = list(iter_size_k_subsets(aleph.domain, k))
        self.total = len(subsets)
        self.index = {s: i for i, s in enumerate(subsets)}
        self.matrix = np.array(
            [np.frombuffer(sig.bits, dtype=np.uint8) for _, sig in self.pairs]
        )
        self.counts_global = [int(c) for c in self.matrix.sum(axis=1)]

    def sup_for(self, c_upsilon_sorted: Sequence[str]) -> tuple[Fraction, int]:
        idxs = [self.index[s] for s in combinations(c_upsilon_sorted, self.k)]
        counts = self.matrix[:, idxs].sum(axis=1)
        n_sub = len(idxs)
        best = Fraction(-1)
        best_i = 0
        for i, (cg, cs) in enumerate(zip(self.counts_global, counts)):
            dev = abs(Fraction(cg, self.total) - Fraction(int(cs), n_sub))
            if dev > best:
                best, best_i = dev, i
        return best, best_i


def _collect_sup_samples(aleph, n, k, sampler, trials, seed):
    base = SeededRng(seed)
    sups = []
    for t in range(trials):
        rng = base.spawn(t)
        c_ups = tuple(sorted(sample_domain_subset(aleph, n, rng)))
        sups.append(sampler.sup_for(c_ups)[0])
    return sups


def _class_dimension(cls, aleph, k, d, max_members):
    """(d_value, exact_flag, bumped_to_one) — the VC dimension used for bounds."""
    if d is not None:
        return d, True, False
    points = [frag for _, frag in iter_fragments(aleph, k)]
    res = vc_dimension(cls, points, max_points=len(points), max_members=max_members)
    bumped = res.dimension == 0
    return (1 if bumped else res.dimension), res.exact, bumped


def run_tail_verify(
    aleph: RelationalExample,
    n: int,
    k: int,
    cls: HypothesisClass | Iterable[Hypothesis],
    *,
    trials: int,
    seed: int,
    epsilons: Iterable = DEFAULT_EPSILON_GRID,
    d: int | None = None,
    max_subsets: int = 10**6,
    max_members: int = 4096,
) -> RunReport:
    """Empirical tail of the sup-deviation against the tail bound, per grid point.

    A grid point passes when the empirical frequency is at most
    min(1, bound) + 3 binomial sigmas; points whose raw bound is >= 1 are
    vacuous and flagged as such.
    """
    started = time.perf_counter()
    epsilons = as_epsilons(epsilons)
    sampler = _DeviationSampler(aleph, k, cls, max_subsets)
    d_used, d_exact, d_bumped = _class_dimension(cls, aleph, k, d, max_members)
    sups = _collect_sup_samples(aleph, n, k, sampler, trials, seed)
    grid = []
    for eps in epsilons:
        count = sum(1 for s in sups if s >= eps)
        freq = Fraction(count, trials)
        raw = tail_bound(d_used, n, k, float(eps))
        raw_simpl = tail_bound_simplified(d_used, n, k, float(eps))
        clamped = min(1.0, raw)
        vacuous = raw >= 1.0
        sigma = math.sqrt(clamped * (1.0 - clamped) / trials)
        grid.append(
            {
                "epsilon": float(eps),
                "empirical": float(freq),
                "empirical_exact": f"{freq.numerator}/{freq.denominator}",
                "bound": raw,
                "bound_clamped": clamped,
                "bound_log10": tail_bound_log10(d_used, n, k, float(eps)),
                "bound_simplified": raw_simpl,
                "bound_simplified_log10": tail_bound_simplified_log10(
                    d_used, n, k, float(eps)
                ),
                "sigma": sigma,
                "vacuous": vacuous,
                "passed": float(freq) <= clamped + 3.0 * sigma,
            }
        )
    vacuous_points = sum(1 for row in grid if row["vacuous"])
    results = {
        "grid": grid,
        "representatives": len(sampler.pairs),
        "d": d_used,
        "d_exact": d_exact,
        "d_bumped_to_one": d_bumped,
        "sup_deviation_max": rational(max(sups)),
        "sup_deviation_mean": rational(sum(sups, Fraction(0)) / trials),
    }
    verdicts = [
        {
            "name": "tail-bound-grid",
            "passed": all(row["passed"] for row in grid),
            "vacuous": vacuous_points == len(grid),
            "vacuous_points": vacuous_points,
            "grid_points": len(grid),
        }
    ]
    config = {
        "n": n,
        "k": k,
        "trials": trials,
        "global_domain_size": len(aleph.domain),
        "epsilons": [float(e) for e in epsilons],
        "d_override": d,
    }
    return _finish(
        "tail-verify", config, results, verdicts, seed, started,
        plot_x="epsilon", plot_y="empirical",
    )


def run_expected_verify(
    aleph: RelationalExample,
    n: int,
    k: int,
    cls: HypothesisClass | Iterable[Hypothesis],
    *,
    trials: int,
    seed: int,
    d: int | None = None,
    max_subsets: int = 10**6,
    max_members: int = 4096,
) -> RunReport:
    """Monte Carlo mean of the sup-deviation against the expected-error bound.

    Passes when mean + 3 standard errors is at most min(1, bound); a raw
    bound >= 1 is vacuous and flagged.
    """
    started = time.perf_counter()
    sampler = _DeviationSampler(aleph, k, cls, max_subsets)
    d_used, d_exact, d_bumped = _class_dimension(cls, aleph, k, d, max_members)
    sups = _collect_sup_samples(aleph, n, k, sampler, trials, seed)
    mean = sum(sups, Fraction(0)) / trials
    variance = sum((s - mean) ** 2 for s in sups) / max(1, trials - 1)
    stderr = math.sqrt(float(variance) / trials)
    ci_upper = float(mean) + 3.0 * stderr
    raw = expected_error_bound(d_used, n, k)
    clamped = min(1.0, raw)
    vacuous = raw >= 1.0
    results = {
        "mean_sup_deviation": rational(mean),
        "stderr": stderr,
        "ci_upper_3se": ci_upper,
        "bound": raw,
        "bound_clamped": clamped,
        "vacuous": vacuous,
        "representatives": len(sampler.pairs),
        "d": d_used,
        "d_exact": d_exact,
        "d_bumped_to_one": d_bumped,
    }
    verdicts = [
        {
            "name": "expected-error-bound",
            "passed": ci_upper <= clamped,
            "vacuous": vacuous,
        }
    ]
    config = {
        "n": n,
        "k": k,
        "trials": trials,
        "global_domain_size": len(aleph.domain),
        "d_override": d,
    }
    return _finish("expected-verify", config, results, verdicts, seed, started)


# ---------------------------------------------------------------------------
# Hoeffding concentration of the q-vector block average


_POP16 = None


def _popcount64(x: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    global _POP16
    if _POP16 is None:
        _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)
    x = x.astype(np.uint64)
    out = _POP16[(x & np.uint64(0xFFFF)).astype(np.int64)].astype(np.int64)
    for shift in (16, 32, 48):
        out += _POP16[((x >> np.uint64(shift)) & np.uint64(0xFFFF)).astype(np.int64)]
    return out


def _fragment_value_table(aleph, c_upsilon_sorted, k, f) -> np.ndarray:
    """f on the fragment of every size-k subset of training-domain positions,
    indexed by the position bitmask."""
    n = len(c_upsilon_sorted)
    if n > 24:
        raise ValueError(f"value table supports training domains up to 24, got {n}")
    table = np.zeros(1 << n, dtype=np.uint8)
    for positions in combinations(range(n), k):
        mask = 0
        for p in positions:
            mask |= 1 << p
        frag = fragment(aleph, [c_upsilon_sorted[p] for p in positions])
        table[mask] = 1 if f(frag) else 0
    return table


def _simulate_block_counts(
    n_global: int,
    n: int,
    k: int,
    q: int,
    repetitions: int,
    value_table: np.ndarray,
    generator: np.random.Generator,
    chunk_size: int = 512,
) -> np.ndarray:
    """Satisfied-block counts (out of q*floor(n/k)) per repetition of the
    conditional block process with the training domain fixed.

    Vectorized for k in {1, 2}; a scalar path covers other k.  Both draw
    uniform size-k index subsets, rank them inside their union, and map the
    ranks through a uniform permutation of training-domain positions — the
    same injection scheme as the scalar sampler.
    """
    m = n // k
    if n_global > 62:
        raise ValueError("vectorized simulation supports global domains up to 62")
    counts = np.empty(repetitions, dtype=np.int64)
    done = 0
    while done < repetitions:
        reps = min(chunk_size, repetitions - done)
        if k == 1:
            idx = generator.integers(0, n_global, size=(reps, q, m, 1), dtype=np.int64)
        elif k == 2:
            first = generator.integers(0, n_global, size=(reps, q, m), dtype=np.int64)
            second = generator.integers(0, n_global - 1, size=(reps, q, m), dtype=np.int64)
            second = second + (second >= first)
            idx = np.stack([first, second], axis=-1)
        else:
            counts[done : done + reps] = _simulate_block_counts_scalar(
                n_global, n, k, q, reps, value_table, generator
            )
            done += reps
            continue
        bits = np.int64(1) << idx
        union = np.bitwise_or.reduce(bits.reshape(reps, q, m * k), axis=2)
        ranks = _popcount64(union[:, :, None, None] & (bits - 1))
        perm = np.argsort(
            generator.random((reps * q, n)), axis=1, kind="stable"
        )
        pos = np.take_along_axis(perm, ranks.reshape(reps * q, m * k), axis=1)
        block_mask = np.bitwise_or.reduce(
            (np.int64(1) << pos).reshape(reps, q, m, k), axis=3
        )
        counts[done : done + reps] = value_table[block_mask].sum(axis=(1, 2), dtype=np.int64)
        done += reps
    return counts


def _simulate_block_counts_scalar(n_global, n, k, q, reps, value_table, generator):
    m = n // k
    out = np.empty(reps, dtype=np.int64)
    pool = list(range(n_global))
    for r in range(reps):
        total = 0
        for _ in range(q):
            subsets = []
            for _ in range(m):
                arr = pool[:]
                for i in range(k):
                    j = int(generator.integers(i, n_global))
                    arr[i], arr[j] = arr[j], arr[i]
                subsets.append(sorted(arr[:k]))
            union = sorted(set().union(*subsets))
            rank = {v: i for i, v in enumerate(union)}
            perm = generator.permutation(n)
            for subset in subsets:
                mask = 0
                for v in subset:
                    mask |= 1 << int(perm[rank[v]])
                total += int(value_table[mask])
        out[r] = total
    return out


def run_hoeffding_blocks(
    aleph: RelationalExample,
    n: int,
    k: int,
    hypothesis: Hypothesis,
    *,
    q: int,
    repetitions: int,
    seed: int,
    epsilons: Iterable = (Fraction(1, 10),),
    chunk_size: int = 512,
) -> RunReport:
    """Tail frequency of the q-vector block average around the exact statistic.

    The training domain is drawn once and fixed; each repetition reruns the
    per-vector part of the block process q times.  Deviations are compared
    in exact integer arithmetic, so grid-point tallies carry no float error.
    """
    started = time.perf_counter()
    epsilons = as_epsilons(epsilons)
    m = floor_block_count(n, k)
    rng = SeededRng(seed)
    c_upsilon = tuple(sorted(sample_domain_subset(aleph, n, rng.spawn(0))))
    upsilon = fragment(aleph, c_upsilon)
    mu = exact_q(upsilon, k, hypothesis).value
    table = _fragment_value_table(aleph, c_upsilon, k, hypothesis)
    counts = _simulate_block_counts(
        len(aleph.domain), n, k, q, repetitions,
        table, rng.spawn(1).generator, chunk_size,
    )
    qm = q * m
    deviation_lhs = np.abs(counts * mu.denominator - mu.numerator * qm)
    grid = []
    for eps in epsilons:
        tally = int(
            (deviation_lhs * eps.denominator >= eps.numerator * qm * mu.denominator).sum()
        )
        freq = Fraction(tally, repetitions)
        bound = hoeffding_block_bound(q, float(eps))
        vacuous = bound >= 1.0
        sigma = math.sqrt(min(1.0, bound) * (1.0 - min(1.0, bound)) / repetitions)
        grid.append(
            {
                "epsilon": float(eps),
                "empirical": float(freq),
                "empirical_exact": f"{freq.numerator}/{freq.denominator}",
                "exceedances": tally,
                "bound": bound,
                "bound_log10": hoeffding_block_bound_log10(q, float(eps)),
                "sigma": sigma,
                "vacuous": vacuous,
                "passed": float(freq) <= bound + 3.0 * sigma,
            }
        )
    vacuous_points = sum(1 for row in grid if row["vacuous"])
    results = {
        "grid": grid,
        "exact_statistic": rational(mu),
        "mean_block_average": float(counts.mean() / qm),
        "training_domain": list(c_upsilon),
        "blocks_per_vector": m,
    }
    verdicts = [
        {
            "name": "hoeffding-block-grid",
            "passed": all(row["passed"] for row in grid),
            "vacuous": vacuous_points == len(grid),
            "vacuous_points": vacuous_points,
            "grid_points": len(grid),
        }
    ]
    config = {
        "n": n,
        "k": k,
        "q": q,
        "repetitions": repetitions,
        "hypothesis": hypothesis.label,
        "global_domain_size": len(aleph.domain),
        "epsilons": [float(e) for e in epsilons],
    }
    return _finish(
        "hoeffding-blocks", config, results, verdicts, seed, started,
        plot_x="epsilon", plot_y="empirical",
    )


# ---------------------------------------------------------------------------
# Effective-sample-size contrast between the two graph models


_EDGE_VOCABULARY = Vocabulary.make({"edge": 2})
_EDGE_FORMULA_TEXT = "exists X : exists Y : edge(X,Y)"


def run_variance_contrast(
    *,
    sizes: Sequence[int],
    probability: float,
    seeds_per_point: int,
    seed: int,
    slope_margin: float = 0.2,
) -> RunReport:
    """Across-seed variance of the size-2 edge statistic at several graph sizes.

    Pair-level randomness (independent edges) should show a steeper log-log
    variance decay than node-level randomness (broadcasters) at matched
    marginal edge probability; the verdict checks
    slope(broadcaster) >= slope(edges) - margin.
    """
    started = time.perf_counter()
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise ValueError("the slope fit needs at least two graph sizes")
    if not 0.0 < probability < 1.0:
        raise ValueError("the contrast needs a non-degenerate probability in (0, 1)")
    hypothesis = from_theory(
        [parse_formula(_EDGE_FORMULA_TEXT, _EDGE_VOCABULARY)], 2
    )
    generators = (
        ("erdos-renyi-directed", erdos_renyi_directed),
        ("broadcaster", broadcaster),
    )
    per_generator: dict[str, dict] = {}
    grid = []
    for g_index, (name, make) in enumerate(generators):
        variances = []
        means = []
        for size in sizes:
            child_seeds = np.random.SeedSequence(
                entropy=[seed, g_index, size]
            ).generate_state(seeds_per_point, dtype=np.uint64)
            values = [
                float(exact_q(make(size, probability, int(s)), 2, hypothesis).value)
                for s in child_seeds
            ]
            variances.append(float(np.var(values, ddof=1)))
            means.append(float(np.mean(values)))
        if any(v <= 0.0 for v in variances):
            raise ValueError(
                f"{name}: zero across-seed variance at some size; cannot fit a slope"
            )
        slope = float(np.polyfit(np.log(sizes), np.log(variances), 1)[0])
        per_generator[name] = {"variances": variances, "means": means, "slope": slope}
        for size, var, mean in zip(sizes, variances, means):
            grid.append(
                {"generator": name, "n": size, "variance": var, "mean_statistic": mean}
            )
    slope_er = per_generator["erdos-renyi-directed"]["slope"]
    slope_br = per_generator["broadcaster"]["slope"]
    results = {
        "grid": grid,
        "slope_erdos_renyi": slope_er,
        "slope_broadcaster": slope_br,
        "slope_margin": slope_margin,
        "expected_marginal": 1.0 - (1.0 - probability) ** 2,
        "per_generator": per_generator,
    }
    verdicts = [
        {
            "name": "variance-decay-contrast",
            "passed": slope_br >= slope_er - slope_margin,
            "slope_erdos_renyi": slope_er,
            "slope_broadcaster": slope_br,
        }
    ]
    config = {
        "sizes": sizes,
        "probability": probability,
        "seeds_per_point": seeds_per_point,
        "slope_margin": slope_margin,
    }
    return _finish(
        "variance-contrast", config, results, verdicts, seed, started,
        plot_x="n", plot_y="variance",
    )


# ---------------------------------------------------------------------------
# Closed-form bound evaluation and thin pass-throughs


def run_bound_eval(
    *,
    d: int,
    n: int,
    k: int,
    epsilons: Iterable = DEFAULT_EPSILON_GRID,
    q: int | None = None,
    mgf_c: float | None = None,
    mgf_b: float | None = None,
    mgf_lambda: float | None = None,
) -> RunReport:
    """Evaluate every closed-form bound at the given inputs (no verdicts)."""
    started = time.perf_counter()
    epsilons = as_epsilons(epsilons)
    m = floor_block_count(n, k)
    expected = expected_error_bound(d, n, k)
    grid = []
    for eps in epsilons:
        e = float(eps)
        row = {
            "epsilon": e,
            "tail": tail_bound(d, n, k, e),
            "tail_clamped": min(1.0, tail_bound(d, n, k, e)),
            "tail_log10": tail_bound_log10(d, n, k, e),
            "tail_simplified": tail_bound_simplified(d, n, k, e),
            "tail_simplified_log10": tail_bound_simplified_log10(d, n, k, e),
            "classical_tail": classical_vc_tail(d, m, e),
            "classical_tail_log10": classical_vc_tail_log10(d, m, e),
        }
        if q is not None:
            row["hoeffding"] = hoeffding_block_bound(q, e)
            row["hoeffding_log10"] = hoeffding_block_bound_log10(q, e)
        grid.append(row)
    results = {
        "grid": grid,
        "m": m,
        "expected_error_bound": expected,
        "expected_error_bound_clamped": min(1.0, expected),
        "classical_vc_expected": classical_vc_expected(d, m),
    }
    if mgf_c is not None and mgf_b is not None and mgf_lambda is not None:
        results["mgf_bound"] = mgf_bound(mgf_c, mgf_b, mgf_lambda)
    config = {
        "d": d, "n": n, "k": k, "q": q,
        "epsilons": [float(e) for e in epsilons],
        "mgf_c": mgf_c, "mgf_b": mgf_b, "mgf_lambda": mgf_lambda,
    }
    return _finish(
        "bound-eval", config, results, [], None, started,
        plot_x="epsilon", plot_y="tail",
    )


def run_q_exact(
    example: RelationalExample, k: int, hypothesis: Hypothesis, *, max_subsets: int = 10**7
) -> RunReport:
    started = time.perf_counter()
    value = exact_q(example, k, hypothesis, max_subsets=max_subsets)
    results = {
        "value": rational(value.value),
        "satisfied": value.satisfied,
        "total": value.total,
    }
    config = {"k": k, "hypothesis": hypothesis.label, "domain_size": len(example.domain)}
    return _finish("q-exact", config, results, [], None, started)


def run_q_mc(
    example: RelationalExample, k: int, hypothesis: Hypothesis, *, trials: int, seed: int
) -> RunReport:
    started = time.perf_counter()
    value = mc_q(example, k, hypothesis, trials, SeededRng(seed))
    results = {
        "value": float(value.value),
        "satisfied": value.satisfied,
        "trials": value.total,
    }
    config = {
        "k": k, "trials": trials,
        "hypothesis": hypothesis.label, "domain_size": len(example.domain),
    }
    return _finish("q-mc", config, results, [], seed, started)


def run_sample_blocks(
    aleph: RelationalExample, n: int, k: int, *, q: int, seed: int
) -> RunReport:
    started = time.perf_counter()
    c_upsilon, vectors = sample_block_vectors(aleph, n, k, q, SeededRng(seed))
    results = {
        "training_domain": sorted(c_upsilon),
        "vectors": [
            [sorted(block) for block in vector.blocks] for vector in vectors
        ],
        "blocks_per_vector": n // k,
    }
    config = {"n": n, "k": k, "q": q, "global_domain_size": len(aleph.domain)}
    return _finish("sample-blocks", config, results, [], seed, started)


def run_vc(
    cls: HypothesisClass | Iterable[Hypothesis],
    universe: Iterable[RelationalExample],
    *,
    max_points: int = 64,
    max_members: int = 4096,
    seed: int = 0,
) -> RunReport:
    started = time.perf_counter()
    points = list(universe)
    result = vc_dimension(
        cls, points, max_points=max_points, max_members=max_members, seed=seed
    )
    results = {
        "dimension": result.dimension,
        "exact": result.exact,
        "witness_indices": list(result.witness),
        "witness": [str(points[i]) for i in result.witness],
        "universe_size": len(points),
    }
    config = {"max_points": max_points, "max_members": max_members}
    return _finish("vc", config, results, [], seed, started)
