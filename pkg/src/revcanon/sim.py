"""Exhaustive truth-table simulation.

The ground-truth oracle for the whole package: every rule application,
canonical form, and equivalence claim is checked against it in the test
suite. Simulation is exhaustive over all 2^n inputs and is therefore
capped at a configurable width (default 16, i.e. 65,536 table entries).
"""

from __future__ import annotations

from .core import (
    BitString,
    Circuit,
    Gate,
    Permutation,
    WidthCapError,
    decode,
    encode,
)

MAX_SIM_WIDTH = 16


def gate_masks(gate: Gate, width: int) -> tuple[int, int, int]:
    """(positive mask, negative mask, target mask) on integer encodings."""
    pmask = 0
    for p in gate.positives:
        pmask |= 1 << (width - p)
    nmask = 0
    for p in gate.negatives:
        nmask |= 1 << (width - p)
    tmask = 1 << (width - gate.target)
    return pmask, nmask, tmask


def simulate_ints(c: Circuit) -> list[int]:
    """Image table of the circuit on integer-encoded inputs."""
    width = c.width
    masks = [gate_masks(g, width) for g in c.gates]
    table = []
    for x in range(1 << width):
        for pmask, nmask, tmask in masks:
            if (x & pmask) == pmask and (x & nmask) == 0:
                x ^= tmask
        table.append(x)
    return table


def apply_circuit(c: Circuit, s: BitString) -> BitString:
    """Run a single input through the circuit, gate by gate."""
    if s.width != c.width:
        raise ValueError("input width mismatch")
    x = encode(s)
    for g in c.gates:
        pmask, nmask, tmask = gate_masks(g, c.width)
        if (x & pmask) == pmask and (x & nmask) == 0:
            x ^= tmask
    return decode(x, c.width)


def simulate(c: Circuit, max_width: int = MAX_SIM_WIDTH) -> Permutation:
    """The permutation computed by the circuit.

    Raises WidthCapError when the circuit is wider than ``max_width``.
    """
    if c.width > max_width:
        raise WidthCapError(
            f"simulation width {c.width} exceeds cap {max_width}"
        )
    return Permutation.from_ints(c.width, simulate_ints(c))


def equivalent_by_sim(a: Circuit, b: Circuit, max_width: int = MAX_SIM_WIDTH) -> bool:
    """True iff both circuits compute the same reversible function."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    if a.width > max_width:
        raise WidthCapError(
            f"simulation width {a.width} exceeds cap {max_width}"
        )
    return simulate_ints(a) == simulate_ints(b)


def permutation_of_exchange(a: BitString, b: BitString) -> Permutation:
    """The transposition of two strings; identity elsewhere."""
    if a.width != b.width:
        raise ValueError("width mismatch")
    if a == b:
        raise ValueError("cannot exchange a string with itself")
    ia, ib = encode(a), encode(b)
    images = list(range(1 << a.width))
    images[ia], images[ib] = ib, ia
    return Permutation.from_ints(a.width, images)
