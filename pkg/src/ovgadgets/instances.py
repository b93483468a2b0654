"""Boolean-vector instances, brute-force decision oracles, and seeded generators.

An instance holds two sets A, B of n boolean vectors of dimension d.  The two
decision problems on top of it:

* orthogonal pair: is there a in A, b in B with empty coordinate-wise AND?
* hitting vector: is there a in A sharing a 1-coordinate with *every* b in B?

All-zero rows are rejected at construction; with such a row the orthogonal-pair
question is trivially answered, so downstream graph constructions assume every
vector has at least one 1-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np


class InstanceError(ValueError):
    """Raised for malformed or degenerate instances."""


@dataclass(frozen=True)
class OVInstance:
    """Two n x d boolean matrices, immutable after construction.

    ``a`` and ``b`` are uint8 arrays with flags cleared so they cannot be
    mutated through the references we hand out.
    """

    a: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def d(self) -> int:
        return self.a.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OVInstance):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    def __hash__(self):
        return hash((self.a.tobytes(), self.b.tobytes(), self.a.shape))

    def permuted(self, a_order: Sequence[int], b_order: Sequence[int]) -> "OVInstance":
        """Reorder the rows of A and B (decision answers are unaffected)."""
        return make_instance(self.a[list(a_order)], self.b[list(b_order)])


@dataclass(frozen=True)
class OraclePairResult:
    found: bool
    witness: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.found != (self.witness is not None):
            raise ValueError("witness must be present iff found")


def make_instance(a_rows, b_rows) -> OVInstance:
    """Validate and freeze an instance from two 0/1 row matrices."""
    a = np.asarray(a_rows, dtype=np.uint8)
    b = np.asarray(b_rows, dtype=np.uint8)
    if a.ndim != 2 or b.ndim != 2 or a.size == 0 or b.size == 0:
        raise InstanceError("both matrices must be nonempty and two-dimensional")
    if a.shape != b.shape:
        raise InstanceError(f"shape mismatch: A is {a.shape}, B is {b.shape}")
    if not (np.isin(a, (0, 1)).all() and np.isin(b, (0, 1)).all()):
        raise InstanceError("entries must be 0 or 1")
    for name, m in (("A", a), ("B", b)):
        zero = np.flatnonzero(m.sum(axis=1) == 0)
        if zero.size:
            raise InstanceError(f"all-zero row {int(zero[0])} in {name}")
    a.setflags(write=False)
    b.setflags(write=False)
    return OVInstance(a, b)


def is_orthogonal(a, b) -> bool:
    """True iff no coordinate is 1 in both vectors."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise InstanceError(f"length mismatch: {a.shape} vs {b.shape}")
    return not bool((a & b).any())


def find_orthogonal_pair(inst: OVInstance) -> OraclePairResult:
    """Exhaustive scan; first witness in row-major (i, then j) order."""
    # n^2 d work, done as one integer matmul; exact for these sizes.
    prod = inst.a.astype(np.int64) @ inst.b.astype(np.int64).T
    hits = np.argwhere(prod == 0)
    if hits.size == 0:
        return OraclePairResult(False)
    i, j = hits[0]
    return OraclePairResult(True, (int(i), int(j)))


def find_hitting_vectors(inst: OVInstance) -> set[int]:
    """Indices i such that a_i shares a 1-coordinate with every b in B."""
    prod = inst.a.astype(np.int64) @ inst.b.astype(np.int64).T
    return {int(i) for i in np.flatnonzero((prod > 0).all(axis=1))}


def has_hitting_vector(inst: OVInstance) -> bool:
    return bool(find_hitting_vectors(inst))


# ---------------------------------------------------------------------------
# Generators.  Pure functions of (parameters, seed).


def _random_nonzero_rows(rng: np.random.Generator, n: int, d: int, density: float) -> np.ndarray:
    rows = (rng.random((n, d)) < density).astype(np.uint8)
    while True:
        zero = np.flatnonzero(rows.sum(axis=1) == 0)
        if zero.size == 0:
            return rows
        rows[zero] = (rng.random((zero.size, d)) < density).astype(np.uint8)


def gen_random(n: int, d: int, density: float = 0.5, seed: int = 0) -> OVInstance:
    """Each bit set independently with the given density, rows resampled until nonzero."""
    if not (0.0 < density <= 1.0):
        raise InstanceError("density must be in (0, 1]")
    if n < 1 or d < 1:
        raise InstanceError("n and d must be at least 1")
    rng = np.random.default_rng(seed)
    a = _random_nonzero_rows(rng, n, d, density)
    b = _random_nonzero_rows(rng, n, d, density)
    return make_instance(a, b)


def gen_planted_orthogonal(n: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    """Random instance with one orthogonal pair planted at random positions.

    The planted a-row lives on a random proper support S, the planted b-row on
    the complement, so the pair is orthogonal whatever the other rows are.
    """
    if d < 2:
        raise InstanceError("planting disjoint supports needs d >= 2")
    rng = np.random.default_rng(seed)
    a = _random_nonzero_rows(rng, n, d, density)
    b = _random_nonzero_rows(rng, n, d, density)
    i = int(rng.integers(n))
    j = int(rng.integers(n))
    cut = int(rng.integers(1, d))  # coords < cut may serve A, >= cut serve B
    perm = rng.permutation(d)
    a_row = np.zeros(d, np.uint8)
    b_row = np.zeros(d, np.uint8)
    a_sup = perm[:cut]
    b_sup = perm[cut:]
    a_row[rng.choice(a_sup, size=int(rng.integers(1, cut + 1)), replace=False)] = 1
    b_row[rng.choice(b_sup, size=int(rng.integers(1, d - cut + 1)), replace=False)] = 1
    a = a.copy()
    b = b.copy()
    a[i] = a_row
    b[j] = b_row
    return make_instance(a, b)


def gen_orthogonal_free(n: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    """No orthogonal pair: coordinate 0 is 1 in every vector on both sides."""
    if n < 1 or d < 1:
        raise InstanceError("n and d must be at least 1")
    rng = np.random.default_rng(seed)
    a = (rng.random((n, d)) < density).astype(np.uint8)
    b = (rng.random((n, d)) < density).astype(np.uint8)
    a[:, 0] = 1
    b[:, 0] = 1
    return make_instance(a, b)


def gen_planted_hitting(n: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    """One designated a-row is all-ones, so it hits every (nonzero) b."""
    if d < 2:
        raise InstanceError("d >= 2 required")
    rng = np.random.default_rng(seed)
    a = _random_nonzero_rows(rng, n, d, density)
    b = _random_nonzero_rows(rng, n, d, density)
    a = a.copy()
    a[int(rng.integers(n))] = 1
    return make_instance(a, b)


def gen_hitting_free(n: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    """No hitting vector: for every a_i some b-row lives inside a_i's zero set."""
    if d < 2:
        raise InstanceError("d >= 2 required")
    rng = np.random.default_rng(seed)
    a = np.zeros((n, d), np.uint8)
    for i in range(n):
        # at least one 1 and at least one 0 per a-row
        while True:
            row = (rng.random(d) < density).astype(np.uint8)
            s = int(row.sum())
            if 0 < s < d:
                a[i] = row
                break
    b = _random_nonzero_rows(rng, n, d, density)
    # overwrite row i of B with a nonzero subset of a_i's zero coordinates
    for i in range(n):
        zeros = np.flatnonzero(a[i] == 0)
        k = int(rng.integers(1, zeros.size + 1))
        row = np.zeros(d, np.uint8)
        row[rng.choice(zeros, size=k, replace=False)] = 1
        b[i] = row
    return make_instance(a, b)


def drop_unused_coordinates(inst: OVInstance) -> OVInstance:
    """Remove coordinates with no 1-bit on either side.

    Such coordinates cannot witness non-orthogonality, so both decision
    problems keep their answers; the gadget constructions require every
    remaining coordinate to be used (connectivity).
    """
    used = (inst.a.sum(axis=0) + inst.b.sum(axis=0)) > 0
    if used.all():
        return inst
    return make_instance(inst.a[:, used], inst.b[:, used])


def gen_two_sided_orthogonal(n: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    """Orthogonal pair at rows (0, 0) with every coordinate used on both sides.

    Needs n >= 2 so the repair bits can avoid the planted rows (a single-row
    side cannot be both orthogonal and share every coordinate).
    """
    if n < 2 or d < 2:
        raise InstanceError("two-sided planting needs n >= 2 and d >= 2")
    rng = np.random.default_rng(seed)
    a = _random_nonzero_rows(rng, n, d, density)
    b = _random_nonzero_rows(rng, n, d, density)
    cut = int(rng.integers(1, d))
    perm = rng.permutation(d)
    a_sup, b_sup = perm[:cut], perm[cut:]
    a[0] = 0
    b[0] = 0
    a[0, rng.choice(a_sup, size=int(rng.integers(1, cut + 1)), replace=False)] = 1
    b[0, rng.choice(b_sup, size=int(rng.integers(1, d - cut + 1)), replace=False)] = 1
    return make_two_sided(make_instance(a, b), seed=seed, protect_a=0, protect_b=0)


def make_two_sided(inst: OVInstance, seed: int = 0,
                   protect_a: Optional[int] = None,
                   protect_b: Optional[int] = None) -> OVInstance:
    """Set a 1-bit on the missing side of every single-sided coordinate.

    The per-coordinate eccentricity bounds on the diameter gadget assume each
    coordinate has 1-bits on *both* sides (otherwise nodes of that
    coordinate's tree must detour through another coordinate, adding up to 2p
    to their eccentricity).  Repairing adds 1-bits only, so it can never
    create a new orthogonal pair; rows ``protect_a`` / ``protect_b`` are left
    untouched so a planted orthogonal pair survives (needs n >= 2).
    """
    rng = np.random.default_rng(seed)
    a = inst.a.copy()
    b = inst.b.copy()
    for m, protect in ((a, protect_a), (b, protect_b)):
        rows = [i for i in range(inst.n) if i != protect]
        if not rows:
            raise InstanceError("cannot repair: every row is protected")
        for j in np.flatnonzero(m.sum(axis=0) == 0):
            m[rows[int(rng.integers(len(rows)))], j] = 1
    return make_instance(a, b)


GENERATORS = {
    "random": gen_random,
    "planted-orthogonal": gen_planted_orthogonal,
    "two-sided-orthogonal": gen_two_sided_orthogonal,
    "orthogonal-free": gen_orthogonal_free,
    "planted-hitting": gen_planted_hitting,
    "hitting-free": gen_hitting_free,
}


# ---------------------------------------------------------------------------
# Text format: line 1 "n d", then n rows of A, then n rows of B as 0/1 strings.


def dumps_instance(inst: OVInstance) -> str:
    lines = [f"{inst.n} {inst.d}"]
    for m in (inst.a, inst.b):
        lines.extend("".join("1" if x else "0" for x in row) for row in m)
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> OVInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InstanceError("empty instance file")
    try:
        n, d = map(int, lines[0].split())
    except ValueError as exc:
        raise InstanceError(f"bad header line {lines[0]!r}") from exc
    if len(lines) != 1 + 2 * n:
        raise InstanceError(f"expected {2 * n} vector lines, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        if len(ln) != d or set(ln) - {"0", "1"}:
            raise InstanceError(f"bad vector line {ln!r}")
        rows.append([int(ch) for ch in ln])
    return make_instance(rows[:n], rows[n:])


def write_instance(inst: OVInstance, path) -> None:
    Path(path).write_text(dumps_instance(inst))


def read_instance(path) -> OVInstance:
    return loads_instance(Path(path).read_text())
