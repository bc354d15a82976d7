"""Hypercube Hamiltonian paths and canonical circuit forms.

A Hamiltonian path H = (a_0, ..., a_{2^n-1}) over the width-n strings
induces the gate set Delta_H = {M_0, ..., M_{2^n-2}}, where M_i is the
unique full-width gate exchanging a_i and a_{i+1}. A circuit is in
canonical form when it is a sequence of blocks of consecutive Delta_H
gates whose start indices strictly decrease left to right. Every
reversible function has exactly one such form, built here directly from
its permutation.

The path is a parameter everywhere; the binary reflected Gray code is
the default. Forms built over different paths are incomparable, so each
form records its path identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import BitString, Circuit, Gate, Permutation, decode, encode

GRAY_PATH_NAME = "gray"


@dataclass(frozen=True)
class HamiltonianPath:
    """An ordering of all width-n strings with Hamming-adjacent neighbors."""

    width: int
    nodes: tuple[BitString, ...]
    name: str = GRAY_PATH_NAME

    def __post_init__(self) -> None:
        size = 1 << self.width
        if len(self.nodes) != size:
            raise ValueError(f"expected {size} nodes, got {len(self.nodes)}")
        codes = [encode(s) for s in self.nodes]
        if len(set(codes)) != size:
            raise ValueError("nodes must enumerate every string exactly once")
        for a, b in zip(codes, codes[1:]):
            x = a ^ b
            if x == 0 or x & (x - 1):
                raise ValueError("consecutive nodes must differ in exactly one bit")
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(codes)})

    def index_of(self, s: BitString) -> int:
        """Position of a string along the path."""
        return self._index[encode(s)]  # type: ignore[attr-defined]

    def index_of_code(self, code: int) -> int:
        return self._index[code]  # type: ignore[attr-defined]


def gray_path(n: int) -> HamiltonianPath:
    """The binary reflected Gray code path of width n."""
    if n < 1:
        raise ValueError("width must be at least 1")
    nodes = tuple(decode(k ^ (k >> 1), n) for k in range(1 << n))
    return HamiltonianPath(n, nodes, GRAY_PATH_NAME)


@dataclass(frozen=True)
class DeltaGateSet:
    """The gates M_0 .. M_{2^n-2} induced by a Hamiltonian path."""

    path: HamiltonianPath
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.gates)})

    @property
    def width(self) -> int:
        return self.path.width

    def gate_index(self, g: Gate) -> int | None:
        """Index i with g == M_i, or None for gates outside the set."""
        return self._index.get(g)  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.gates)


def exchange_gate(a: BitString, b: BitString) -> Gate:
    """The unique full-width gate exchanging two Hamming-adjacent strings.

    Its target is the bit where the strings differ; every other line is
    a control whose polarity equals the shared bit value.
    """
    if a.width != b.width:
        raise ValueError("width mismatch")
    n = a.width
    diff = [j for j in range(1, n + 1) if a[j] != b[j]]
    if len(diff) != 1:
        raise ValueError("strings are not Hamming-adjacent")
    target = diff[0]
    positives = tuple(j for j in range(1, n + 1) if j != target and a[j] == 1)
    negatives = tuple(j for j in range(1, n + 1) if j != target and a[j] == 0)
    return Gate(positives, negatives, target)


def delta_gates(path: HamiltonianPath) -> DeltaGateSet:
    """Build Delta_H: M_i is the full-width gate exchanging a_i, a_{i+1}."""
    gates = tuple(
        exchange_gate(path.nodes[i], path.nodes[i + 1])
        for i in range(len(path.nodes) - 1)
    )
    return DeltaGateSet(path, gates)


def block_permutation_row(start: int, length: int, row: list) -> list:
    """Cyclic shift describing what a run M_start .. M_{start+length-1}
    prepended to a circuit does to that circuit's path-indexed row:
    position ``start`` receives row[start+length], positions
    start+1 .. start+length shift up from start .. start+length-1.
    """
    if length < 0 or start < 0 or start + length > len(row) - 1:
        raise ValueError("block out of range")
    if length == 0:
        return list(row)
    out = list(row)
    out[start] = row[start + length]
    out[start + 1 : start + length + 1] = row[start : start + length]
    return out


@dataclass(frozen=True)
class CanonicalRejection:
    """A named reason a circuit is not in canonical form."""

    clause: str
    reason: str


@dataclass(frozen=True)
class CanonicalForm:
    """Blocks of consecutive Delta_H gates, stored in execution order
    (leftmost block first), as (start index, gate count) pairs."""

    width: int
    path_name: str
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        limit = (1 << self.width) - 1
        prev = None
        for start, length in self.blocks:
            if length < 1:
                raise ValueError("blocks must be nonempty")
            if not 0 <= start <= start + length - 1 <= limit - 1:
                raise ValueError(f"block ({start},{length}) out of range")
            if prev is not None and start >= prev:
                raise ValueError("block starts must strictly decrease left to right")
            prev = start
        if len(self.blocks) > limit:
            raise ValueError("too many blocks")

    def gate_count(self) -> int:
        return sum(length for _, length in self.blocks)

    def to_circuit(self, delta: DeltaGateSet) -> Circuit:
        if delta.width != self.width:
            raise ValueError("width mismatch")
        gates: list[Gate] = []
        for start, length in self.blocks:
            gates.extend(delta.gates[start : start + length])
        return Circuit(self.width, tuple(gates))

    def serialize(self) -> str:
        body = ", ".join(f"({x},{k})" for x, k in self.blocks)
        return f"canon n={self.width} path={self.path_name} blocks=[{body}]"


def constructive_canonicalize(p: Permutation, path: HamiltonianPath) -> CanonicalForm:
    """Build the unique canonical form computing ``p``.

    Walks the path positions in order, prepending for each position i a
    run that brings the required row entry into place, exactly as the
    row bookkeeping of :func:`block_permutation_row` dictates.
    """
    if p.width != path.width:
        raise ValueError("width mismatch")
    size = 1 << p.width
    # Target row entry at position i is the path index of p(a_i).
    target = [path.index_of(p(path.nodes[i])) for i in range(size)]
    row = list(range(size))
    pos_of = {v: i for i, v in enumerate(row)}
    blocks: list[tuple[int, int]] = []
    for i in range(size):
        l = pos_of[target[i]]
        if l < i:
            raise AssertionError("row prefix invariant violated")
        if l == i:
            continue
        length = l - i
        shifted = block_permutation_row(i, length, row)
        for k in range(i, l + 1):
            row[k] = shifted[k]
            pos_of[row[k]] = k
        blocks.append((i, length))
    blocks.reverse()
    return CanonicalForm(p.width, path.name, tuple(blocks))


def validate_canonical(
    c: Circuit, path: HamiltonianPath
) -> CanonicalForm | CanonicalRejection:
    """Parse a circuit into canonical blocks, or name the violated clause.

    Checks: every gate lies in Delta_H, blocks are runs of consecutive
    gates, start indices strictly decrease left to right, the block count
    and per-gate occurrence bounds hold. The empty circuit is the
    canonical form of the identity.
    """
    if c.width != path.width:
        return CanonicalRejection("width", "circuit and path widths differ")
    delta = delta_gates(path)
    indices = []
    for g in c.gates:
        idx = delta.gate_index(g)
        if idx is None:
            return CanonicalRejection("membership", f"gate {g} is not in the path gate set")
        indices.append(idx)
    blocks: list[tuple[int, int]] = []
    for idx in indices:
        if blocks and idx == blocks[-1][0] + blocks[-1][1]:
            blocks[-1] = (blocks[-1][0], blocks[-1][1] + 1)
        else:
            blocks.append((idx, 1))
    starts = [x for x, _ in blocks]
    for left, right in zip(starts, starts[1:]):
        if left <= right:
            return CanonicalRejection(
                "block order", f"start {right} does not decrease after {left}"
            )
    limit = (1 << c.width) - 1
    if len(blocks) > limit:
        return CanonicalRejection("block count", f"{len(blocks)} blocks exceed {limit}")
    occur: dict[int, int] = {}
    for idx in indices:
        occur[idx] = occur.get(idx, 0) + 1
        if occur[idx] > idx + 1:
            return CanonicalRejection(
                "occurrence bound", f"gate M_{idx} occurs more than {idx + 1} times"
            )
    return CanonicalForm(c.width, path.name, tuple(blocks))


def enumerate_canonical_forms(
    n: int, path: HamiltonianPath | None = None
) -> list[CanonicalForm]:
    """Every canonical form of width n, by block structure. Exhaustive
    only at desk scale; widths above 3 are refused."""
    if n > 3:
        raise ValueError("enumeration is limited to widths 1..3")
    if path is None:
        path = gray_path(n)
    max_start = (1 << n) - 2
    forms: list[CanonicalForm] = []
    starts_all = range(max_start + 1)
    # Each start is either absent or carries a block length; starts are
    # assembled in decreasing order to satisfy the block ordering clause.
    choices = []
    for x in starts_all:
        choices.append([None] + list(range(1, (1 << n) - 1 - x + 1)))
    for picks in product(*choices):
        blocks = [
            (x, picks[x]) for x in sorted(starts_all, reverse=True) if picks[x]
        ]
        forms.append(CanonicalForm(n, path.name, tuple(blocks)))
    return forms
