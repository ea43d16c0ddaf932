"""Desk-scale exact boson sampling oracle.

Computes matrix permanents, exact outcome probabilities, full output
distributions, and Haar-random interferometers, then uses them to check the
click-count statistics that the hardness metric is built on.  Everything here
is brute force on purpose: at oracle scale (a handful of photons) enumeration
is exact and easy to trust.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .metric import large_deviation_bound, large_deviation_center, typical_clicks
from .rng import substream

MAX_PERMANENT_SIZE = 20
MAX_ORACLE_PHOTONS = 5
MAX_ORACLE_MODES = 10
DEFAULT_UNITARITY_TOL = 1e-8

FACTORIALS = tuple(math.factorial(k) for k in range(21))


def _permanent_of_rows(rows: Sequence[Sequence[complex]]) -> complex:
    """Gray-code inclusion-exclusion core; rows are pre-extracted complex tuples."""
    n = len(rows)
    if n == 0:
        return 1.0 + 0.0j
    row_sums = [0.0 + 0.0j] * n
    total = 0.0 + 0.0j
    gray = 0
    for k in range(1, 1 << n):
        g = k ^ (k >> 1)
        j = (g ^ gray).bit_length() - 1
        if g & (1 << j):
            for i in range(n):
                row_sums[i] += rows[i][j]
        else:
            for i in range(n):
                row_sums[i] -= rows[i][j]
        gray = g
        prod = 1.0 + 0.0j
        for s in row_sums:
            prod *= s
        if g.bit_count() & 1:
            total -= prod
        else:
            total += prod
    return total if n % 2 == 0 else -total


def permanent(matrix: np.ndarray) -> complex:
    """Permanent of a square matrix via the inclusion-exclusion formula.

    Column subsets are visited in Gray-code order so each step updates the
    row sums with a single column add or subtract; O(2^n n) total.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise ValueError(f"matrix size {n} exceeds the exact-permanent guard {MAX_PERMANENT_SIZE}")
    rows = [tuple(complex(v) for v in a[i]) for i in range(n)]
    return _permanent_of_rows(rows)


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm of U^dagger U - identity."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def haar_random_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed m x m unitary.

    QR of a complex Gaussian matrix, with the triangular factor's diagonal
    phases divided out so the distribution is exactly Haar.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def occupation_vectors(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """All length-m tuples of non-negative counts summing to n."""
    if m == 1:
        yield (n,)
        return
    for k in range(n, -1, -1):
        for rest in occupation_vectors(m - 1, n - k):
            yield (k,) + rest


def expand_modes(occupation: Sequence[int]) -> list[int]:
    """Mode index repeated per photon, e.g. (2, 0, 1) -> [0, 0, 2]."""
    out: list[int] = []
    for mode, count in enumerate(occupation):
        if count < 0:
            raise ValueError("occupation counts must be >= 0")
        out.extend([mode] * count)
    return out


def _check_unitary(u: np.ndarray, tol: float, strict: bool) -> None:
    defect = unitarity_defect(u)
    if defect > tol:
        msg = f"matrix is not unitary within {tol} (max defect {defect:.3e})"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)


def outcome_probability(
    u: np.ndarray,
    input_occ: Sequence[int],
    output_occ: Sequence[int],
    *,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    strict_unitary: bool = True,
) -> float:
    """Probability |Per(U_sub)|^2 / (prod s_i! prod v_j!) of one output pattern.

    The submatrix repeats column i once per input photon in mode i, then row j
    once per output photon in mode j.
    """
    s = tuple(input_occ)
    v = tuple(output_occ)
    n = sum(s)
    if n != sum(v):
        raise ValueError(f"photon number mismatch: input {n}, output {sum(v)}")
    _check_unitary(u, unitarity_tol, strict_unitary)
    sub = u[np.ix_(expand_modes(v), expand_modes(s))]
    denom = 1
    for c in s:
        denom *= FACTORIALS[c]
    for c in v:
        denom *= FACTORIALS[c]
    return abs(permanent(sub)) ** 2 / denom


def output_distribution(
    u: np.ndarray,
    input_occ: Sequence[int],
    *,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    strict_unitary: bool = True,
) -> dict[tuple[int, ...], float]:
    """Exact probability of every output occupation for the given input.

    Enumeration over all C(m+n-1, n) outputs; guarded to n <= 5, m <= 10.
    """
    s = tuple(input_occ)
    n = sum(s)
    m = len(s)
    if n > MAX_ORACLE_PHOTONS or m > MAX_ORACLE_MODES:
        raise ValueError(
            f"enumeration guard: need n <= {MAX_ORACLE_PHOTONS} and m <= {MAX_ORACLE_MODES}, "
            f"got n={n}, m={m}"
        )
    _check_unitary(u, unitarity_tol, strict_unitary)
    # Columns are fixed by the input; only rows change per outcome.
    cols = expand_modes(s)
    u_cols = np.asarray(u)[:, cols]
    row_tuples = [tuple(complex(v) for v in u_cols[i]) for i in range(m)]
    dist: dict[tuple[int, ...], float] = {}
    s_fact = 1
    for c in s:
        s_fact *= FACTORIALS[c]
    for v in occupation_vectors(m, n):
        rows = [row_tuples[i] for i in expand_modes(v)]
        denom = s_fact
        for c in v:
            denom *= FACTORIALS[c]
        dist[v] = abs(_permanent_of_rows(rows)) ** 2 / denom
    return dist


@dataclass(frozen=True)
class ClickStatistics:
    """Click-count statistics accumulated over Haar draws.

    mean_clicks averages the per-unitary expected number of occupied output
    modes; std_clicks is the per-draw spread of the click count under the
    trial-averaged distribution.  tail rows hold (threshold t, mean tail mass,
    standard error, analytic bound).
    """

    n: int
    m: int
    trials: int
    mean_clicks: float
    std_clicks: float
    se_mean: float
    predicted: float
    flat_average_clicks: float
    ld_center: float
    z_score: float
    normalization_max_err: float
    tail: tuple[tuple[float, float, float, float], ...]
    ld_violations: int


def flat_average_clicks(n: int, m: int) -> float:
    """Mean occupied modes when every output multiset is equally likely: m n / (m+n-1)."""
    return m * n / (m + n - 1)


def click_statistics(
    n: int,
    m: int,
    trials: int,
    seed: int,
    t_grid: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5),
) -> ClickStatistics:
    """Empirical click statistics over Haar-random interferometers.

    Per trial: draw a unitary from its own substream, compute the exact output
    distribution for single photons in the first n modes, and record the
    expected click count plus the exact tail mass beyond each deviation
    threshold.  A threshold is violated when the mean tail exceeds the
    analytic bound by more than three standard errors.
    """
    if trials < 2:
        raise ValueError("need at least 2 trials")
    input_occ = (1,) * n + (0,) * (m - n)
    center = large_deviation_center(n, m)
    expected_per_trial: list[float] = []
    tails_per_trial: list[list[float]] = [[] for _ in t_grid]
    click_mass = [0.0] * (n + 1)
    max_norm_err = 0.0
    for trial in range(trials):
        u = haar_random_unitary(m, substream(seed, trial))
        dist = output_distribution(u, input_occ)
        norm = math.fsum(dist.values())
        max_norm_err = max(max_norm_err, abs(norm - 1.0))
        expected = 0.0
        tail_acc = [0.0] * len(t_grid)
        for v, p in dist.items():
            clicks = sum(1 for c in v if c)
            expected += p * clicks
            click_mass[clicks] += p
            dev = abs(clicks - center)
            for i, t in enumerate(t_grid):
                if dev >= t * n:
                    tail_acc[i] += p
        expected_per_trial.append(expected)
        for i, mass in enumerate(tail_acc):
            tails_per_trial[i].append(mass)

    mean_clicks = math.fsum(expected_per_trial) / trials
    var_between = math.fsum((x - mean_clicks) ** 2 for x in expected_per_trial) / (trials - 1)
    se_mean = math.sqrt(var_between / trials)

    total_mass = math.fsum(click_mass)
    probs = [x / total_mass for x in click_mass]
    mu = math.fsum(c * p for c, p in enumerate(probs))
    var = math.fsum((c - mu) ** 2 * p for c, p in enumerate(probs))
    std_clicks = math.sqrt(var)

    predicted = typical_clicks(n, m)
    z_score = (mean_clicks - predicted) / se_mean if se_mean > 0 else math.inf

    tail_rows = []
    violations = 0
    for i, t in enumerate(t_grid):
        mean_tail = math.fsum(tails_per_trial[i]) / trials
        tail_var = math.fsum((x - mean_tail) ** 2 for x in tails_per_trial[i]) / (trials - 1)
        tail_se = math.sqrt(tail_var / trials)
        bound = large_deviation_bound(n, m, t)
        if mean_tail > bound + 3.0 * tail_se:
            violations += 1
        tail_rows.append((t, mean_tail, tail_se, bound))

    return ClickStatistics(
        n=n,
        m=m,
        trials=trials,
        mean_clicks=mean_clicks,
        std_clicks=std_clicks,
        se_mean=se_mean,
        predicted=predicted,
        flat_average_clicks=flat_average_clicks(n, m),
        ld_center=center,
        z_score=z_score,
        normalization_max_err=max_norm_err,
        tail=tuple(tail_rows),
        ld_violations=violations,
    )
