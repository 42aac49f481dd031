"""Problem instances, matchings, derived quantities, and serialization.

An instance is a pair of n-by-n reward tables: ``theta_m[i][j]`` is the
reward to man i from marrying woman j, ``theta_w[i][j]`` the reward to
woman j from marrying man i.  A matching assigns each man a distinct
woman.  All types are immutable after construction and safe to share
across workers.

Indexing is 0-based throughout the library; human-facing CLI output is
1-based with primes on the women's side.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import (
    DimensionMismatchError,
    DomainError,
    InvalidMatchingError,
    MalformedInputError,
    NonFiniteEntryError,
)
from .rng import Distribution, SplitMix64, Uniform01

Matrix = tuple[tuple[float, ...], ...]


def _coerce_matrix(rows, n: int, name: str) -> Matrix:
    """Validate an n-by-n matrix of finite numbers; return it frozen."""
    try:
        row_list = list(rows)
    except TypeError:
        raise MalformedInputError(f"{name} must be a list of rows") from None
    if len(row_list) != n:
        raise DimensionMismatchError(f"{name} must have {n} rows, got {len(row_list)}")
    out = []
    for r, row in enumerate(row_list):
        try:
            entries = list(row)
        except TypeError:
            raise MalformedInputError(f"{name} row {r} must be a list") from None
        if len(entries) != n:
            raise DimensionMismatchError(
                f"{name} row {r} must have {n} entries, got {len(entries)}"
            )
        vals = []
        for c, x in enumerate(entries):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MalformedInputError(f"{name}[{r}][{c}] is not a number")
            x = float(x)
            if not math.isfinite(x):
                raise NonFiniteEntryError(f"{name}[{r}][{c}] is not finite")
            vals.append(x)
        out.append(tuple(vals))
    return tuple(out)


@dataclass(frozen=True)
class Instance:
    """A two-sided market: n men, n women, and their reward tables.

    ``beta`` is an optional n-by-n table of transfer retention factors,
    carried along for the taxed-transfer bargaining model; its range is
    validated where the model is built, not here.
    """

    n: int
    theta_m: Matrix
    theta_w: Matrix
    beta: Matrix | None = None

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise MalformedInputError("n must be an integer")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "theta_m", _coerce_matrix(self.theta_m, self.n, "theta_m"))
        object.__setattr__(self, "theta_w", _coerce_matrix(self.theta_w, self.n, "theta_w"))
        if self.beta is not None:
            object.__setattr__(self, "beta", _coerce_matrix(self.beta, self.n, "beta"))

    def mirrored(self) -> "Instance":
        """Swap the sides: women become the proposing side.

        Rewards transpose so that the new men's table is the old women's
        table read from the woman's viewpoint, and vice versa.
        """
        n = self.n
        tm = tuple(tuple(self.theta_w[j][i] for j in range(n)) for i in range(n))
        tw = tuple(tuple(self.theta_m[j][i] for j in range(n)) for i in range(n))
        return Instance(n, tm, tw)


@dataclass(frozen=True)
class Matching:
    """A bijection from men to women: assignment[i] is man i's woman."""

    assignment: tuple[int, ...]
    _inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        try:
            assignment = tuple(self.assignment)
        except TypeError:
            raise MalformedInputError("assignment must be a sequence of integers") from None
        n = len(assignment)
        if n == 0:
            raise InvalidMatchingError("assignment must not be empty")
        inverse = [-1] * n
        for i, j in enumerate(assignment):
            if isinstance(j, bool) or not isinstance(j, int):
                raise MalformedInputError(f"assignment[{i}] is not an integer")
            if not 0 <= j < n:
                raise InvalidMatchingError(f"assignment[{i}]={j} out of range 0..{n - 1}")
            if inverse[j] != -1:
                raise InvalidMatchingError(f"woman {j} assigned twice")
            inverse[j] = i
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "_inverse", tuple(inverse))

    @property
    def n(self) -> int:
        return len(self.assignment)

    def woman_of(self, man: int) -> int:
        return self.assignment[man]

    def man_of(self, woman: int) -> int:
        return self._inverse[woman]

    @property
    def inverse(self) -> tuple[int, ...]:
        """inverse[j] = the man matched to woman j."""
        return self._inverse


@dataclass(frozen=True)
class PQParams:
    """Sharing levels: p between pairs, q inside a pair, both in [0, 1]."""

    p: float
    q: float

    def __post_init__(self):
        for name, value in (("p", self.p), ("q", self.q)):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise MalformedInputError(f"{name} must be a number")
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))


@dataclass(frozen=True)
class CutVector:
    """Per-person payoffs: u[i] for man i, v[j] for woman j."""

    u: tuple[float, ...]
    v: tuple[float, ...]

    def __post_init__(self):
        u = tuple(float(x) for x in self.u)
        v = tuple(float(x) for x in self.v)
        if len(u) != len(v):
            raise DimensionMismatchError(f"cut vectors differ in length: {len(u)} vs {len(v)}")
        if len(u) == 0:
            raise DimensionMismatchError("cut vectors must not be empty")
        for name, vec in (("u", u), ("v", v)):
            for k, x in enumerate(vec):
                if not math.isfinite(x):
                    raise NonFiniteEntryError(f"{name}[{k}] is not finite")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return len(self.u)

    def total(self) -> float:
        return sum(self.u) + sum(self.v)


@dataclass(frozen=True)
class PreferenceProfile:
    """Derived ordinal preferences, ties broken by ascending index.

    ``men[i]`` lists women in strictly decreasing reward order for man i,
    ``women[j]`` lists men likewise for woman j.  ``has_ties`` reports
    whether any two rewards inside one list were exactly equal, in which
    case the tie-broken order is a convention rather than a preference.
    """

    men: tuple[tuple[int, ...], ...]
    women: tuple[tuple[int, ...], ...]
    has_ties: bool


def combined_rewards(inst: Instance) -> Matrix:
    """Pooled reward table: entrywise sum of the two sides' tables."""
    return tuple(
        tuple(tm + tw for tm, tw in zip(row_m, row_w))
        for row_m, row_w in zip(inst.theta_m, inst.theta_w)
    )


def preference_orders(inst: Instance) -> PreferenceProfile:
    """Rank each side's partners by decreasing reward.

    Equal rewards tie; ties are broken by ascending index and flagged.
    """
    n = inst.n
    has_ties = False
    men = []
    for i in range(n):
        row = inst.theta_m[i]
        order = sorted(range(n), key=lambda j: (-row[j], j))
        if len(set(row)) != n:
            has_ties = True
        men.append(tuple(order))
    women = []
    for j in range(n):
        col = tuple(inst.theta_w[i][j] for i in range(n))
        order = sorted(range(n), key=lambda i: (-col[i], i))
        if len(set(col)) != n:
            has_ties = True
        women.append(tuple(order))
    return PreferenceProfile(tuple(men), tuple(women), has_ties)


def random_instance(n: int, seed: int, dist: Distribution = Uniform01()) -> Instance:
    """Seeded random instance; identical bits for identical arguments."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise MalformedInputError("n must be an integer")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = SplitMix64(seed)
    theta_m = tuple(tuple(dist.sample(rng) for _ in range(n)) for _ in range(n))
    theta_w = tuple(tuple(dist.sample(rng) for _ in range(n)) for _ in range(n))
    return Instance(n, theta_m, theta_w)


def parse_instance(text: str) -> Instance:
    """Read an instance from its JSON form.

    Expected shape: ``{"n": int, "theta_m": [[...]], "theta_w": [[...]],
    "beta": [[...]]}`` with ``beta`` optional.  Malformed JSON, shape
    mismatches, and non-finite entries raise distinct errors.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise MalformedInputError("instance JSON must be an object")
    missing = [key for key in ("n", "theta_m", "theta_w") if key not in data]
    if missing:
        raise MalformedInputError(f"instance JSON missing keys: {', '.join(missing)}")
    return Instance(
        n=data["n"],
        theta_m=data["theta_m"],
        theta_w=data["theta_w"],
        beta=data.get("beta"),
    )


def serialize_instance(inst: Instance) -> str:
    """Inverse of parse_instance, up to whitespace and number formatting."""
    payload = {
        "n": inst.n,
        "theta_m": [list(row) for row in inst.theta_m],
        "theta_w": [list(row) for row in inst.theta_w],
    }
    if inst.beta is not None:
        payload["beta"] = [list(row) for row in inst.beta]
    return json.dumps(payload, indent=2)


def parse_matching(text: str) -> Matching:
    """Read a matching from ``{"assignment": [ints]}`` (0-based)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "assignment" not in data:
        raise MalformedInputError('matching JSON must be an object with key "assignment"')
    assignment = data["assignment"]
    if not isinstance(assignment, list):
        raise MalformedInputError("assignment must be a list of integers")
    return Matching(tuple(assignment))


def serialize_matching(matching: Matching) -> str:
    return json.dumps({"assignment": list(matching.assignment)})
