"""Fully transferable stability: optimal assignment, blocking chains,
and dual cuts.

With pooled rewards, a matching is stable exactly when no chain of
couples can rotate partners for a positive total gain, which in turn is
exactly when the matching maximizes total reward.  The supporting cut
vector comes from shortest-path potentials over the chain graph and
certifies stability: matched pairs split their reward exactly, and no
other pair's reward exceeds the sum of its two cuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from .cycles import find_positive_cycle, shortest_potentials
from .errors import (
    DimensionMismatchError,
    NotCyclicallyMonotoneError,
    PreconditionError,
)
from .instances import CutVector, Matching, Matrix, _coerce_matrix
from .tolerance import DEFAULT_EPS


@dataclass(frozen=True)
class ChainWitness:
    """A violating partner-rotation cycle over couple indices.

    Falsy on purpose: ``is_cyclically_monotone`` returns True or a
    witness, so truth-testing the result reads as "is it monotone".
    """

    cycle: tuple[int, ...]
    gain: float

    def __bool__(self) -> bool:
        return False


def _as_square(theta, name: str = "theta") -> Matrix:
    rows = list(theta)
    return _coerce_matrix(rows, len(rows), name)


def _chain_weights(theta: Matrix, matching: Matching) -> list[list[float]]:
    """weights[a][b]: gain for couple a's man taking couple b's woman."""
    n = len(theta)
    assignment = matching.assignment
    out = []
    for a in range(n):
        row = theta[a]
        own = row[assignment[a]]
        out.append([row[assignment[b]] - own for b in range(n)])
    return out


def optimal_assignment(
    theta: Sequence[Sequence[float]], *, eps: float = DEFAULT_EPS
) -> tuple[Matching, float]:
    """Exact maximum-total-reward matching and its value.

    Solved by the O(n^3) assignment algorithm; among tied optima the
    lexicographically smallest assignment is returned, pinned down by
    fixing rows greedily and re-solving the remainder.
    """
    mat = _as_square(theta)
    n = len(mat)
    arr = np.asarray(mat, dtype=float)
    tol = max(n, 1) * eps

    def best_over(rows: list[int], cols: list[int]) -> float:
        if not rows:
            return 0.0
        sub = arr[np.ix_(rows, cols)]
        ri, ci = linear_sum_assignment(sub, maximize=True)
        return float(sub[ri, ci].sum())

    total_best = best_over(list(range(n)), list(range(n)))
    available = list(range(n))
    chosen: list[int] = []
    fixed_value = 0.0
    for i in range(n):
        rest_rows = list(range(i + 1, n))
        for j in available:
            rest_cols = [c for c in available if c != j]
            attempt = fixed_value + arr[i, j] + best_over(rest_rows, rest_cols)
            if attempt >= total_best - tol:
                chosen.append(j)
                available.remove(j)
                fixed_value += float(arr[i, j])
                break
        else:  # pragma: no cover - greedy fixing always extends an optimum
            raise AssertionError("no extension preserved the optimal value")
    matching = Matching(tuple(chosen))
    value = sum(mat[i][chosen[i]] for i in range(n))
    return matching, value


def is_cyclically_monotone(
    theta: Sequence[Sequence[float]], matching: Matching, *, eps: float = DEFAULT_EPS
) -> Union[bool, ChainWitness]:
    """True when no couple cycle gains from rotating partners.

    Otherwise returns a ChainWitness (which is falsy) carrying one
    violating cycle and its gain.
    """
    mat = _as_square(theta)
    _check_sizes(mat, matching)
    found = find_positive_cycle(_chain_weights(mat, matching), eps)
    if found is None:
        return True
    cycle, gain = found
    return ChainWitness(cycle=cycle, gain=gain)


def chain_potentials(theta: Sequence[Sequence[float]], matching: Matching) -> list[float]:
    """Raw per-man potentials u0 before gauge normalization.

    -u0[i] is the cheapest chain of couples ending at couple i: every
    node starts at potential zero, and the hop from couple s to couple
    t hands s's woman over to t's man, costing theta[s][woman of s] -
    theta[t][woman of s].  These hop costs have the same cycle sums as
    the blocking-chain gains, so absence of blocking chains keeps every
    value finite; the resulting potentials dominate every pair's reward
    split, which the departure-oriented hop costs would not.
    """
    mat = _as_square(theta)
    _check_sizes(mat, matching)
    n = len(mat)
    assignment = matching.assignment
    cost = []
    for s in range(n):
        ws = assignment[s]
        own = mat[s][ws]
        cost.append([own - mat[t][ws] for t in range(n)])
    dist = shortest_potentials(cost)
    if dist is None:
        raise NotCyclicallyMonotoneError("chain potentials diverge: a blocking chain exists")
    return [-d for d in dist]


def dual_cuts(
    theta: Sequence[Sequence[float]], matching: Matching, *, eps: float = DEFAULT_EPS
) -> CutVector:
    """Supporting cuts for a chain-free matching.

    u comes from chain potentials, gauged so min(u) = 0; v completes
    each matched pair to an exact split of its reward.  The result
    satisfies u[i] + v[j] >= theta[i][j] for every pair, with equality
    on matched pairs.
    """
    mat = _as_square(theta)
    _check_sizes(mat, matching)
    witness = is_cyclically_monotone(mat, matching, eps=eps)
    if witness is not True:
        raise NotCyclicallyMonotoneError(
            f"matching admits blocking chain {witness.cycle} with gain {witness.gain}"
        )
    u_raw = chain_potentials(mat, matching)
    anchor = min(u_raw)
    u = [x - anchor for x in u_raw]
    n = len(mat)
    v = [0.0] * n
    for i in range(n):
        woman = matching.assignment[i]
        v[woman] = mat[i][woman] - u[i]
    return CutVector(tuple(u), tuple(v))


def verify_ft_core(
    theta: Sequence[Sequence[float]],
    matching: Matching,
    cuts: CutVector,
    *,
    eps: float = DEFAULT_EPS,
) -> bool:
    """Exact split on matched pairs, no pair underpaid anywhere else."""
    mat = _as_square(theta)
    _check_sizes(mat, matching)
    if cuts.n != len(mat):
        raise DimensionMismatchError(f"cut vector size {cuts.n} does not fit n={len(mat)}")
    n = len(mat)
    u, v = cuts.u, cuts.v
    for i in range(n):
        wi = matching.assignment[i]
        if abs(u[i] + v[wi] - mat[i][wi]) > eps:
            return False
    for i in range(n):
        ui = u[i]
        row = mat[i]
        for j in range(n):
            if ui + v[j] < row[j] - eps:
                return False
    return True


def check_optimality_of_cuts(
    theta: Sequence[Sequence[float]],
    matching: Matching,
    cuts: CutVector,
    *,
    eps: float = DEFAULT_EPS,
) -> bool:
    """Do these cuts achieve the minimal total over the feasible set?

    Precondition: the cuts are feasible, i.e. u[i] + v[j] covers every
    pair's reward (the matched-equality part of verify_ft_core is not
    required: feasible-but-loose cuts are legal input and yield False).
    The minimal feasible total equals the optimal assignment value, so
    the check compares against that within n*eps.
    """
    mat = _as_square(theta)
    _check_sizes(mat, matching)
    if cuts.n != len(mat):
        raise DimensionMismatchError(f"cut vector size {cuts.n} does not fit n={len(mat)}")
    n = len(mat)
    u, v = cuts.u, cuts.v
    for i in range(n):
        ui = u[i]
        row = mat[i]
        for j in range(n):
            if ui + v[j] < row[j] - eps:
                raise PreconditionError(
                    f"cuts are infeasible: u[{i}]+v[{j}] = {ui + v[j]} < theta = {row[j]}"
                )
    _, best = optimal_assignment(mat, eps=eps)
    return abs(cuts.total() - best) <= max(n, 1) * eps


def bruteforce_max_matching(theta: Sequence[Sequence[float]]) -> tuple[Matching, float]:
    """Oracle: maximum over all n! assignments by direct enumeration."""
    mat = _as_square(theta)
    n = len(mat)
    best_perm = None
    best_value = -float("inf")
    for perm in permutations(range(n)):
        value = sum(mat[i][perm[i]] for i in range(n))
        if value > best_value:
            best_value = value
            best_perm = perm
    return Matching(best_perm), best_value


def _check_sizes(mat: Matrix, matching: Matching) -> None:
    if matching.n != len(mat):
        raise DimensionMismatchError(
            f"matching size {matching.n} does not fit matrix size {len(mat)}"
        )
