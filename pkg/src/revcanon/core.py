"""Width-checked intermediate representation for reversible circuits.

Bit strings, mixed-polarity multiple-control Toffoli (MPMCT) gates,
circuits, and permutations. All values are immutable and validated on
construction; every operation here is pure.

Conventions:
    - Bit lines are 1-based: q_1 .. q_n.
    - The integer encoding of a bit string puts q_1 as the most
      significant bit, so the printed string reads left to right as
      q_1 .. q_n.
    - The leftmost gate of a circuit executes first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class WidthCapError(ValueError):
    """A configurable width limit was exceeded."""


@dataclass(frozen=True)
class BitString:
    """An assignment of 0/1 values to the lines q_1 .. q_n."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.bits, tuple):
            object.__setattr__(self, "bits", tuple(self.bits))
        if len(self.bits) == 0:
            raise ValueError("bit string must have positive width")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits!r}")

    @property
    def width(self) -> int:
        return len(self.bits)

    def __getitem__(self, line: int) -> int:
        """Value of line ``q_line`` (1-based)."""
        if not 1 <= line <= len(self.bits):
            raise IndexError(f"line {line} out of range 1..{len(self.bits)}")
        return self.bits[line - 1]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def flip(self, line: int) -> "BitString":
        """Return a copy with line ``q_line`` flipped."""
        if not 1 <= line <= len(self.bits):
            raise IndexError(f"line {line} out of range 1..{len(self.bits)}")
        new = list(self.bits)
        new[line - 1] ^= 1
        return BitString(tuple(new))

    @staticmethod
    def from_text(text: str) -> "BitString":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return BitString(tuple(int(ch) for ch in text))


def encode(s: BitString) -> int:
    """Integer encoding of a bit string, q_1 most significant."""
    value = 0
    for b in s.bits:
        value = (value << 1) | b
    return value


def decode(value: int, width: int) -> BitString:
    """Inverse of :func:`encode` for the given width."""
    if width < 1:
        raise ValueError("width must be positive")
    if not 0 <= value < (1 << width):
        raise ValueError(f"value {value} out of range for width {width}")
    return BitString(tuple((value >> (width - j)) & 1 for j in range(1, width + 1)))


@dataclass(frozen=True)
class Gate:
    """An MPMCT gate: flips ``target`` iff all positive controls read 1
    and all negative controls read 0."""

    positives: tuple[int, ...]
    negatives: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        pos = tuple(sorted(self.positives))
        neg = tuple(sorted(self.negatives))
        object.__setattr__(self, "positives", pos)
        object.__setattr__(self, "negatives", neg)
        if len(set(pos)) != len(pos) or len(set(neg)) != len(neg):
            raise ValueError("duplicate control line")
        if set(pos) & set(neg):
            raise ValueError(f"line in both control sets: {set(pos) & set(neg)}")
        if self.target in pos or self.target in neg:
            raise ValueError(f"target {self.target} also used as a control")
        if any(line < 1 for line in pos + neg + (self.target,)):
            raise ValueError("line indices are 1-based and must be >= 1")

    @property
    def support(self) -> frozenset[int]:
        """All lines the gate touches (controls plus target)."""
        return frozenset(self.positives) | frozenset(self.negatives) | {self.target}

    @property
    def controls(self) -> frozenset[int]:
        return frozenset(self.positives) | frozenset(self.negatives)

    def max_line(self) -> int:
        return max(self.support)

    def polarity(self, line: int) -> int | None:
        """1 / 0 for a positive / negative control, None otherwise."""
        if line in self.positives:
            return 1
        if line in self.negatives:
            return 0
        return None

    def with_flipped_control(self, line: int) -> "Gate":
        """Return the gate with the polarity of one control inverted."""
        if line in self.positives:
            pos = tuple(p for p in self.positives if p != line)
            return Gate(pos, self.negatives + (line,), self.target)
        if line in self.negatives:
            neg = tuple(p for p in self.negatives if p != line)
            return Gate(self.positives + (line,), neg, self.target)
        raise ValueError(f"line {line} is not a control of {self}")

    def __str__(self) -> str:
        parts = [f"+{p}" for p in self.positives] + [f"-{p}" for p in self.negatives]
        body = " ".join(parts + [str(self.target)])
        return f"G[{body}]"


def x_gate(target: int) -> Gate:
    return Gate((), (), target)


def cnot_gate(control: int, target: int) -> Gate:
    return Gate((control,), (), target)


def toffoli_gate(c1: int, c2: int, target: int) -> Gate:
    return Gate((c1, c2), (), target)


def gate_fires(gate: Gate, s: BitString) -> bool:
    """True iff the control condition of ``gate`` holds on ``s``."""
    if gate.max_line() > s.width:
        raise IndexError(f"gate {gate} exceeds width {s.width}")
    bits = s.bits
    return all(bits[p - 1] == 1 for p in gate.positives) and all(
        bits[p - 1] == 0 for p in gate.negatives
    )


def apply_gate(gate: Gate, s: BitString) -> BitString:
    """Apply one gate to a bit string. Self-inverse."""
    if gate_fires(gate, s):
        return s.flip(gate.target)
    return s


def gate_exchanges(gate: Gate, width: int) -> tuple[BitString, BitString] | None:
    """The unique string pair a full-width gate swaps, or None.

    A gate is full-width for ``width`` when its controls plus target
    cover every line; such a gate exchanges exactly the two strings that
    satisfy its controls, which differ only in the target bit.
    """
    if gate.max_line() > width:
        raise IndexError(f"gate {gate} exceeds width {width}")
    if gate.support != frozenset(range(1, width + 1)):
        return None
    bits = [0] * width
    for p in gate.positives:
        bits[p - 1] = 1
    a = BitString(tuple(bits))
    return a, a.flip(gate.target)


@dataclass(frozen=True)
class Circuit:
    """A width-annotated gate sequence; the leftmost gate executes first."""

    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise ValueError("circuit width must be positive")
        for g in self.gates:
            if g.max_line() > self.width:
                raise ValueError(f"gate {g} does not fit width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __getitem__(self, idx: int) -> Gate:
        return self.gates[idx]

    def concat(self, other: "Circuit") -> "Circuit":
        if self.width != other.width:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.width, self.gates + other.gates)


def empty_circuit(width: int) -> Circuit:
    return Circuit(width, ())


def inverse(c: Circuit) -> Circuit:
    """Reverse the gate order; every MPMCT gate is self-inverse, so this
    computes the inverse permutation."""
    return Circuit(c.width, tuple(reversed(c.gates)))


def control_extend(c: Circuit, q: int) -> Circuit:
    """Add ``q`` as a positive control to every gate.

    The result acts as ``c`` on inputs where q reads 1 and as the
    identity where q reads 0. ``q`` must not occur in any gate.
    """
    if not 1 <= q <= c.width:
        raise ValueError(f"line {q} out of range 1..{c.width}")
    for g in c.gates:
        if q in g.support:
            raise ValueError(f"line {q} already occurs in gate {g}")
    return Circuit(
        c.width, tuple(Gate(g.positives + (q,), g.negatives, g.target) for g in c.gates)
    )


@dataclass(frozen=True)
class Permutation:
    """A bijection on the width-n bit strings, indexed by input encoding."""

    width: int
    images: tuple[BitString, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.images, tuple):
            object.__setattr__(self, "images", tuple(self.images))
        size = 1 << self.width
        if len(self.images) != size:
            raise ValueError(f"expected {size} images, got {len(self.images)}")
        seen = set()
        for img in self.images:
            if img.width != self.width:
                raise ValueError("image width mismatch")
            seen.add(encode(img))
        if len(seen) != size:
            raise ValueError("images do not form a bijection")

    def __call__(self, s: BitString) -> BitString:
        if s.width != self.width:
            raise ValueError("input width mismatch")
        return self.images[encode(s)]

    def as_ints(self) -> tuple[int, ...]:
        return tuple(encode(img) for img in self.images)

    def is_identity(self) -> bool:
        return all(encode(img) == i for i, img in enumerate(self.images))

    def inverse(self) -> "Permutation":
        size = 1 << self.width
        inv: list[BitString | None] = [None] * size
        for i, img in enumerate(self.images):
            inv[encode(img)] = decode(i, self.width)
        return Permutation(self.width, tuple(inv))  # type: ignore[arg-type]

    @staticmethod
    def identity(width: int) -> "Permutation":
        return Permutation(width, tuple(decode(i, width) for i in range(1 << width)))

    @staticmethod
    def from_ints(width: int, values: Iterable[int]) -> "Permutation":
        return Permutation(width, tuple(decode(v, width) for v in values))
