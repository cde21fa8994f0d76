"""Closed-form error bounds as pure numeric functions with domain checks.

All logarithms are natural.  Functions return the raw bound value, which may
exceed 1; clamping to min(1, value) is a reporting concern, never done here.
Power terms like (2em/d)^d are composed in log space, so large d or m do
not overflow; when a bound underflows double precision the ``*_log10``
companions still report its magnitude.  Domain violations raise
BoundDomainError rather than producing NaNs.
"""

from __future__ import annotations

import math

__all__ = [
    "BoundDomainError",
    "floor_block_count",
    "expected_error_bound",
    "classical_vc_expected",
    "tail_bound",
    "tail_bound_log10",
    "tail_bound_simplified",
    "tail_bound_simplified_log10",
    "classical_vc_tail",
    "classical_vc_tail_log10",
    "hoeffding_block_bound",
    "hoeffding_block_bound_log10",
    "mgf_bound",
]

_LN10 = math.log(10.0)


class BoundDomainError(ValueError):
    """A bound was evaluated outside its domain of validity."""


def _require_positive_int(name: str, value) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise BoundDomainError(f"{name} must be a positive integer, got {value!r}")
    return value


def floor_block_count(n: int, k: int) -> int:
    """The number of disjoint size-k blocks available in a size-n domain."""
    _require_positive_int("n", n)
    _require_positive_int("k", k)
    m = n // k
    if m < 1:
        raise BoundDomainError(f"floor(n/k) must be at least 1, got n={n}, k={k}")
    return m


def _sum_exp(log_terms) -> float:
    total = 0.0
    for lt in log_terms:
        try:
            total += math.exp(lt)
        except OverflowError:
            return math.inf
    return total


def _log10_sum_exp(log_terms) -> float:
    peak = max(log_terms)
    if peak == -math.inf:
        return -math.inf
    rest = sum(math.exp(lt - peak) for lt in log_terms)
    return (peak + math.log(rest)) / _LN10


def _log_capacity_term(d: int, m: int) -> float:
    # log((2em/d)^d) computed as d*log(2em/d)
    return d * math.log(2.0 * math.e * m / d)


def classical_vc_expected(d: int, m: int) -> float:
    """2*sqrt(2d*log(2em/d)/m): expected uniform deviation of m i.i.d. samples."""
    _require_positive_int("d", d)
    _require_positive_int("m", m)
    ratio = 2.0 * math.e * m / d
    if ratio <= 1.0:
        raise BoundDomainError(
            f"log argument 2em/d = {ratio} must exceed 1 (d={d}, m={m})"
        )
    return 2.0 * math.sqrt(2.0 * d * math.log(ratio) / m)


def expected_error_bound(d: int, n: int, k: int) -> float:
    """Expected sup-deviation bound for a size-n domain sample and size-k fragments.

    Identical to the classical i.i.d. expression with the sample count
    replaced by floor(n/k).
    """
    return classical_vc_expected(d, floor_block_count(n, k))


def _tail_log_terms(d: int, m: int, epsilon: float) -> tuple[float, float]:
    term1 = -m * epsilon * epsilon / 4.0
    term2 = (
        math.log(epsilon)
        + 0.5 * math.log(8.0 * math.pi * m)
        + _log_capacity_term(d, m)
        - m * epsilon * epsilon / 8.0
    )
    return term1, term2


def _validate_tail_epsilon(epsilon: float) -> float:
    if not 0.0 < epsilon <= 1.0:
        raise BoundDomainError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    return float(epsilon)


def tail_bound(d: int, n: int, k: int, epsilon: float) -> float:
    """exp(-m*eps^2/4) + eps*sqrt(8*pi*m)*(2em/d)^d*exp(-m*eps^2/8), m = floor(n/k)."""
    epsilon = _validate_tail_epsilon(epsilon)
    _require_positive_int("d", d)
    m = floor_block_count(n, k)
    return _sum_exp(_tail_log_terms(d, m, epsilon))


def tail_bound_log10(d: int, n: int, k: int, epsilon: float) -> float:
    epsilon = _validate_tail_epsilon(epsilon)
    _require_positive_int("d", d)
    m = floor_block_count(n, k)
    return _log10_sum_exp(_tail_log_terms(d, m, epsilon))


def _tail_simplified_log_terms(d: int, m: int, epsilon: float) -> tuple[float, float]:
    decay = -m * epsilon * epsilon / 8.0
    term2 = 0.5 * math.log(8.0 * math.pi * m) + _log_capacity_term(d, m) + decay
    return decay, term2


def tail_bound_simplified(d: int, n: int, k: int, epsilon: float) -> float:
    """(1 + sqrt(8*pi*m)*(2em/d)^d) * exp(-m*eps^2/8): looser but simpler form."""
    epsilon = _validate_tail_epsilon(epsilon)
    _require_positive_int("d", d)
    m = floor_block_count(n, k)
    return _sum_exp(_tail_simplified_log_terms(d, m, epsilon))


def tail_bound_simplified_log10(d: int, n: int, k: int, epsilon: float) -> float:
    epsilon = _validate_tail_epsilon(epsilon)
    _require_positive_int("d", d)
    m = floor_block_count(n, k)
    return _log10_sum_exp(_tail_simplified_log_terms(d, m, epsilon))


def classical_vc_tail(d: int, m: int, epsilon: float) -> float:
    """4*(2em/d)^d*exp(-m*eps^2/8): tail for m i.i.d. samples."""
    _require_positive_int("d", d)
    _require_positive_int("m", m)
    if epsilon <= 0.0:
        raise BoundDomainError(f"epsilon must be positive, got {epsilon!r}")
    return _sum_exp([_classical_tail_log(d, m, float(epsilon))])


def classical_vc_tail_log10(d: int, m: int, epsilon: float) -> float:
    _require_positive_int("d", d)
    _require_positive_int("m", m)
    if epsilon <= 0.0:
        raise BoundDomainError(f"epsilon must be positive, got {epsilon!r}")
    return _classical_tail_log(d, m, float(epsilon)) / _LN10


def _classical_tail_log(d: int, m: int, epsilon: float) -> float:
    return math.log(4.0) + _log_capacity_term(d, m) - m * epsilon * epsilon / 8.0


def hoeffding_block_bound(q: int, epsilon: float) -> float:
    """2*exp(-2*q*eps^2): deviation of the q-vector block average."""
    _require_positive_int("q", q)
    if epsilon < 0.0:
        raise BoundDomainError(f"epsilon must be non-negative, got {epsilon!r}")
    return _sum_exp([math.log(2.0) - 2.0 * q * epsilon * epsilon])


def hoeffding_block_bound_log10(q: int, epsilon: float) -> float:
    _require_positive_int("q", q)
    if epsilon < 0.0:
        raise BoundDomainError(f"epsilon must be non-negative, got {epsilon!r}")
    return (math.log(2.0) - 2.0 * q * epsilon * epsilon) / _LN10


def mgf_bound(c: float, b: float, lam: float) -> float:
    """1 + lam*c*sqrt(pi*b)*exp(lam^2*b/4).

    Bounds E[exp(lam*X)] for any non-negative X whose tail satisfies
    P[X >= t] <= c*exp(-t^2/b) for all t >= 0; the hypothesis needs c >= e
    and b > 0, and those are enforced, not assumed.
    """
    if c < math.e:
        raise BoundDomainError(f"c must be at least e = {math.e}, got {c!r}")
    if b <= 0.0:
        raise BoundDomainError(f"b must be positive, got {b!r}")
    if lam <= 0.0:
        raise BoundDomainError(f"lambda must be positive, got {lam!r}")
    return 1.0 + lam * c * math.sqrt(math.pi * b) * math.exp(lam * lam * b / 4.0)
