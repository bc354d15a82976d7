"""Transformational canonicalization.

Rewrites an arbitrary circuit into its canonical form using rule
applications only, emitting a replayable trace: widen every gate to full
width, expand each full-width gate into a palindrome over the path gate
set, then sort the resulting word block by block. The inverse direction
(collapsing a palindrome back to one gate) runs on coordinate-sequence
bookkeeping.

The procedures here never invent semantic facts: every step goes through
the structural rule matchers, so a logic error surfaces as a failed
match, not as a wrong circuit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canon import (
    CanonicalForm,
    DeltaGateSet,
    HamiltonianPath,
    delta_gates,
    exchange_gate,
    gray_path,
)
from .core import (
    BitString,
    Circuit,
    Gate,
    WidthCapError,
    decode,
    encode,
    gate_exchanges,
    x_gate,
)
from .rules import (
    BACKWARD,
    FORWARD,
    MACRO,
    R1,
    R3,
    R5,
    R6,
    R7,
    R9,
    R10,
    RewriteStep,
    RewriteTrace,
    invert_trace,
    match_segment,
)
from .sim import simulate_ints

MAX_CANON_WIDTH = 8


class NormalizeError(ValueError):
    """A normalization procedure was applied outside its preconditions."""


class DeltaReductionError(NormalizeError):
    """No reduction case applied to a double-occurrence span."""


# ---------------------------------------------------------------------------
# Coordinate sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateSequence:
    """A walk on the hypercube given as the list of flipped lines."""

    width: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if self.width < 1:
            raise ValueError("width must be positive")
        for m in self.entries:
            if not 1 <= m <= self.width:
                raise ValueError(f"entry {m} out of range 1..{self.width}")


def generate(omega: CoordinateSequence, b0: BitString) -> BitString:
    """Fold the bit flips of ``omega`` over the start string."""
    if b0.width != omega.width:
        raise ValueError("width mismatch")
    s = b0
    for m in omega.entries:
        s = s.flip(m)
    return s


def _next_reduction_action(entries: list[int]) -> tuple | None:
    """The next edit toward an all-distinct sequence.

    Either ('delete', t) removing the leftmost adjacent identical pair,
    or ('pair', g, h) naming the repeated value just left of the maximal
    duplicate-free suffix together with its first occurrence inside that
    suffix. None once every value occurs at most once.
    """
    for t in range(len(entries) - 1):
        if entries[t] == entries[t + 1]:
            return ("delete", t)
    seen: set[int] = set()
    start = len(entries)
    for s in range(len(entries) - 1, -1, -1):
        if entries[s] in seen:
            break
        seen.add(entries[s])
        start = s
    if start == 0:
        return None
    g = start - 1
    h = next(s for s in range(start, len(entries)) if entries[s] == entries[g])
    return ("pair", g, h)


def reduce_coordinates(
    omega: CoordinateSequence,
) -> tuple[CoordinateSequence, list[tuple[str, int]]]:
    """Reduce a coordinate sequence until every value occurs at most once.

    Uses only two primitive edits, each preserving the generated string:
    ('swap', t) exchanging neighbors t, t+1 and ('delete', t) removing an
    adjacent identical pair. Returns the reduced sequence and the edit
    script in application order.
    """
    entries = list(omega.entries)
    script: list[tuple[str, int]] = []
    while True:
        action = _next_reduction_action(entries)
        if action is None:
            break
        if action[0] == "delete":
            t = action[1]
            script.append(("delete", t))
            del entries[t : t + 2]
            continue
        _, g, h = action
        for s in range(h - 1, g, -1):
            script.append(("swap", s))
            entries[s], entries[s + 1] = entries[s + 1], entries[s]
        script.append(("delete", g))
        del entries[g : g + 2]
    return CoordinateSequence(omega.width, tuple(entries)), script


def apply_coordinate_edit(entries: list[int], edit: tuple[str, int]) -> None:
    """Apply one script edit in place (used to audit the script)."""
    kind, t = edit
    if kind == "swap":
        entries[t], entries[t + 1] = entries[t + 1], entries[t]
    elif kind == "delete":
        if entries[t] != entries[t + 1]:
            raise ValueError("delete edit on a non-identical pair")
        del entries[t : t + 2]
    else:
        raise ValueError(f"unknown edit {kind!r}")


# ---------------------------------------------------------------------------
# Structural commutation and the step builder
# ---------------------------------------------------------------------------


def commutes_structurally(a: Gate, b: Gate) -> bool:
    """True iff some line is a positive control of one gate and a
    negative control of the other (the swap rule's condition)."""
    return bool(set(a.positives) & set(b.negatives)) or bool(
        set(b.positives) & set(a.negatives)
    )


class _Builder:
    """Mutable gate list that only changes through verified rule steps."""

    def __init__(self, circuit: Circuit):
        self.width = circuit.width
        self.gates: list[Gate] = list(circuit.gates)
        self.steps: list[RewriteStep] = []

    def circuit(self) -> Circuit:
        return Circuit(self.width, tuple(self.gates))

    def apply(self, rule: str, pos: int, direction: str = FORWARD, bindings=None):
        res = match_segment(self.gates, self.width, rule, pos, direction, bindings)
        if res is None:
            raise NormalizeError(
                f"{rule} {direction} does not match at position {pos}"
            )
        removed, inserted, binds = res
        self.gates[pos : pos + removed] = list(inserted)
        self.steps.append(RewriteStep(rule, direction, pos, removed, inserted, binds))

    def macro(self, pos: int, removed: int, inserted: tuple[Gate, ...]):
        self.gates[pos : pos + removed] = list(inserted)
        self.steps.append(RewriteStep(MACRO, FORWARD, pos, removed, inserted, {}))

    def commute(self, pos: int) -> None:
        a, b = self.gates[pos], self.gates[pos + 1]
        if commutes_structurally(a, b):
            self.apply(R3, pos)
        elif a.target == b.target:
            self.apply(R7, pos)
        else:
            raise NormalizeError(f"gates at {pos} do not commute structurally")

    # -- X conjugation ---------------------------------------------------

    def pass_x_right(self, xpos: int) -> int:
        """Move an X gate one slot right across its neighbor, flipping
        that neighbor's control on the X line if it has one."""
        line = self.gates[xpos].target
        g = self.gates[xpos + 1]
        if g.target == line:
            self.apply(R7, xpos)
        elif line in g.positives:
            self.apply(R9, xpos, FORWARD)
        elif line in g.negatives:
            # The swap rule only states the positive-to-negative passage;
            # the other polarity is reached through a cancelling X pair.
            self.apply(R1, xpos + 2, BACKWARD, {"gate": x_gate(line)})
            self.apply(R9, xpos + 1, BACKWARD)
            self.apply(R1, xpos, FORWARD)
        else:
            raise NormalizeError("X gate cannot cross a gate off its line")
        return xpos + 1

    def conjugate(self, lo: int, hi: int, line: int) -> tuple[int, int]:
        """Wrap gates[lo..hi] in X[line] gates, flipping every control on
        that line inside. Returns the new bounds of the inner segment."""
        self.apply(R1, lo, BACKWARD, {"gate": x_gate(line)})
        xpos = lo + 1
        for _ in range(hi - lo + 1):
            xpos = self.pass_x_right(xpos)
        return lo + 1, hi + 1

    def unconjugate(self, lo: int, hi: int, line: int) -> None:
        """Inverse of :meth:`conjugate`; expects the X pair at lo-1, hi+1."""
        xpos = lo - 1
        for _ in range(hi - lo + 1):
            xpos = self.pass_x_right(xpos)
        self.apply(R1, hi, FORWARD)

    # -- the ABA <-> BAB step --------------------------------------------

    def braid(self, pos: int) -> None:
        """Rewrite the segment A B A at ``pos`` into B A B."""
        a, b = self.gates[pos], self.gates[pos + 1]
        if self.gates[pos + 2] != a:
            raise NormalizeError("segment is not of the form A B A")
        if a == b:
            return
        if a.support != b.support:
            raise NormalizeError("gates do not cover the same lines")
        for line in a.controls & b.controls:
            if (line in a.positives) != (line in b.positives):
                raise NormalizeError(f"common control {line} disagrees in polarity")
        flip = sorted(set(a.negatives) | set(b.negatives))
        lo, hi = pos, pos + 2
        for line in flip:
            lo, hi = self.conjugate(lo, hi, line)
        self.apply(R10, lo, FORWARD)
        for line in reversed(flip):
            self.unconjugate(lo, hi, line)
            lo, hi = lo - 1, hi - 1


def aba_to_bab(c: Circuit, position: int) -> RewriteTrace:
    """Turn a 3-gate segment A B A into B A B.

    The gates must cover the same lines and agree on the polarity of
    every common control; negative controls are cleared by X conjugation
    before the all-positive braid step and restored afterwards.
    """
    if position < 0 or position + 3 > len(c.gates):
        raise NormalizeError("position does not address a 3-gate segment")
    b = _Builder(c)
    b.braid(position)
    return RewriteTrace(c, b.steps)


def _reverse_palindrome_steps(b: _Builder, pos: int, m: int) -> None:
    """Reverse the (2m-1)-gate palindrome at ``pos`` in place: braid the
    center triple, commute the braided-out gates to the ends, recurse."""
    if m <= 1:
        return
    b.braid(pos + m - 2)
    for q in range(pos + m - 2, pos, -1):
        b.commute(q - 1)
    for q in range(pos + m, pos + 2 * m - 2):
        b.commute(q)
    _reverse_palindrome_steps(b, pos + 1, m - 1)


def palindrome_reverse(c: Circuit, position: int, m: int) -> RewriteTrace:
    """Reverse a (2m-1)-gate palindrome A_1..A_m..A_1 into A_m..A_1..A_m.

    Requires adjacent gates to agree on common-control polarities (for
    the braids) and far pairs to commute structurally (for the moves);
    violations surface as match failures.
    """
    if m < 1 or position < 0 or position + 2 * m - 1 > len(c.gates):
        raise NormalizeError("segment out of range")
    for k in range(m - 1):
        if c.gates[position + k] != c.gates[position + 2 * m - 2 - k]:
            raise NormalizeError("segment is not a palindrome")
    b = _Builder(c)
    _reverse_palindrome_steps(b, position, m)
    return RewriteTrace(c, b.steps)


# ---------------------------------------------------------------------------
# Double-occurrence reduction over the path gate set
# ---------------------------------------------------------------------------


def _far(i: int, j: int) -> bool:
    return abs(i - j) >= 2


def _reduce_pair(b: _Builder, delta: DeltaGateSet, left: int, right: int) -> int:
    """Drive the span between two occurrences of one path gate until at
    most one occurrence remains; returns the remaining count.

    Case order per scan: delete an adjacent identical pair, commute a
    far gate out of the span, braid a triple whose middle gate can then
    escape, or commute a twin inward to build such a triple. The span
    shrinks at every round, which bounds the loop.
    """
    if b.gates[left] != b.gates[right]:
        raise NormalizeError("span endpoints differ")
    i = delta.gate_index(b.gates[left])
    if i is None:
        raise NormalizeError("span endpoint is outside the path gate set")
    while True:
        if right - left - 1 == 0:
            b.apply(R1, left)
            return 0
        idxs = []
        for g in b.gates[left + 1 : right]:
            idx = delta.gate_index(g)
            if idx is None:
                raise NormalizeError("span contains a gate outside the path gate set")
            if idx == i:
                raise NormalizeError("span contains another occurrence of the gate")
            idxs.append(idx)
        span = len(idxs)

        # Case 1: adjacent identical pair inside the span.
        done = False
        for p in range(span - 1):
            if idxs[p] == idxs[p + 1]:
                b.apply(R1, left + 1 + p)
                right -= 2
                done = True
                break
        if done:
            continue

        # Case 2: a gate far from everything on one side commutes out.
        for p in range(span):
            if _far(idxs[p], i) and all(_far(idxs[p], idxs[k]) for k in range(p)):
                for q in range(left + 1 + p, left, -1):
                    b.commute(q - 1)
                left += 1
                done = True
                break
        if done:
            continue
        for p in range(span - 1, -1, -1):
            if _far(idxs[p], i) and all(
                _far(idxs[p], idxs[k]) for k in range(p + 1, span)
            ):
                for q in range(left + 1 + p, right):
                    b.commute(q)
                right -= 1
                done = True
                break
        if done:
            continue

        # Case 3: braid a triple x y x, then commute the leading or
        # trailing y out of the span.
        for p in range(span - 2):
            if idxs[p] != idxs[p + 2] or abs(idxs[p] - idxs[p + 1]) != 1:
                continue
            y = idxs[p + 1]
            esc_left = _far(y, i) and all(_far(y, idxs[k]) for k in range(p))
            esc_right = _far(y, i) and all(
                _far(y, idxs[k]) for k in range(p + 3, span)
            )
            if not (esc_left or esc_right):
                continue
            b.braid(left + 1 + p)
            if esc_left:
                for q in range(left + 1 + p, left, -1):
                    b.commute(q - 1)
                left += 1
            else:
                for q in range(left + 3 + p, right):
                    b.commute(q)
                right -= 1
            done = True
            break
        if done:
            continue

        # Case 4: commute a far twin next to its braid partner so that
        # Case 3 applies, checking the whole compound before committing.
        for p in range(span - 1):
            if abs(idxs[p] - idxs[p + 1]) != 1:
                continue
            y = idxs[p + 1]
            for l in range(p + 3, span):
                if idxs[l] != idxs[p]:
                    continue
                if not all(_far(idxs[l], idxs[k]) for k in range(p + 2, l)):
                    continue
                moved = idxs[: p + 2] + [idxs[l]] + idxs[p + 2 : l] + idxs[l + 1 :]
                esc_left = _far(y, i) and all(_far(y, moved[k]) for k in range(p))
                esc_right = _far(y, i) and all(
                    _far(y, moved[k]) for k in range(p + 3, span)
                )
                if not (esc_left or esc_right):
                    continue
                for q in range(left + 1 + l, left + 3 + p, -1):
                    b.commute(q - 1)
                b.braid(left + 1 + p)
                if esc_left:
                    for q in range(left + 1 + p, left, -1):
                        b.commute(q - 1)
                    left += 1
                else:
                    for q in range(left + 3 + p, right):
                        b.commute(q)
                    right -= 1
                done = True
                break
            if done:
                break
        if done:
            continue

        # Terminal: a single neighbor-index gate between the occurrences.
        if span == 1 and abs(idxs[0] - i) == 1:
            b.braid(left)
            return 1
        raise DeltaReductionError(
            f"no case applies to the span between positions {left} and {right}"
        )


def reduce_double_occurrence(
    c: Circuit, delta: DeltaGateSet, i: int
) -> tuple[Circuit, RewriteTrace]:
    """Merge or eliminate a pair of occurrences of path gate M_i.

    Scans consecutive occurrence pairs left to right and reduces the
    first one the case machinery can handle; raises DeltaReductionError
    when no pair reduces (not observed for the spans produced by the
    canonicalization loop, where the gates between the pair all have
    larger indices).
    """
    if not 0 <= i < len(delta.gates):
        raise ValueError(f"no path gate with index {i}")
    for g in c.gates:
        if delta.gate_index(g) is None:
            raise NormalizeError(f"gate {g} is outside the path gate set")
    gate_i = delta.gates[i]
    occ = [k for k, g in enumerate(c.gates) if g == gate_i]
    if len(occ) < 2:
        raise NormalizeError(f"fewer than two occurrences of M_{i}")
    failure: DeltaReductionError | None = None
    for which in range(len(occ) - 1):
        b = _Builder(c)
        try:
            _reduce_pair(b, delta, occ[which], occ[which + 1])
        except DeltaReductionError as exc:
            failure = exc
            continue
        return b.circuit(), RewriteTrace(c, b.steps)
    raise DeltaReductionError(
        f"no occurrence pair of M_{i} could be reduced: {failure}"
    )


# ---------------------------------------------------------------------------
# Block formation and the full Delta-word canonicalization
# ---------------------------------------------------------------------------


def _form_block_steps(
    b: _Builder, delta: DeltaGateSet, i: int, pos: int, end: int
) -> tuple[int, int]:
    """Within gates[pos:end], where gates[pos] is M_i and everything else
    has a larger index, push M_i right until a consecutive run
    M_i M_{i+1} .. M_{i+k} forms at the end. Returns (run start, run length)."""
    succ = delta.gates[i + 1] if i + 1 < len(delta.gates) else None
    if succ is not None:
        while True:
            occ = [k for k in range(pos + 1, end) if b.gates[k] == succ]
            if len(occ) < 2:
                break
            before = len(b.gates)
            _reduce_pair(b, delta, occ[0], occ[1])
            end += len(b.gates) - before
    occ = (
        [k for k in range(pos + 1, end) if b.gates[k] == succ]
        if succ is not None
        else []
    )
    if not occ:
        for q in range(pos, end - 1):
            b.commute(q)
        return end - 1, 1
    t = occ[0]
    for q in range(pos, t - 1):
        b.commute(q)
    inner_start, inner_len = _form_block_steps(b, delta, i + 1, t, end)
    for q in range(t - 1, inner_start - 1):
        b.commute(q)
    return inner_start - 1, inner_len + 1


def form_block(c: Circuit, delta: DeltaGateSet, i: int) -> tuple[Circuit, RewriteTrace]:
    """Turn M_i D (gates of D all of larger index, one M_i total) into
    D' M_i M_{i+1} .. M_{i+k} with D' free of M_i."""
    if not c.gates or c.gates[0] != delta.gates[i]:
        raise NormalizeError(f"circuit does not start with M_{i}")
    for g in c.gates[1:]:
        idx = delta.gate_index(g)
        if idx is None or idx <= i:
            raise NormalizeError("remaining gates must have strictly larger indices")
    b = _Builder(c)
    _form_block_steps(b, delta, i, 0, len(b.gates))
    return b.circuit(), RewriteTrace(c, b.steps)


def canonicalize_delta(
    c: Circuit, delta: DeltaGateSet
) -> tuple[CanonicalForm, RewriteTrace]:
    """Sort a word over the path gate set into its canonical block form.

    Ascending over gate indices: reduce repeated occurrences of the
    least index to at most one, form its block at the right end of the
    working region, then recurse on the prefix.
    """
    for g in c.gates:
        if delta.gate_index(g) is None:
            raise NormalizeError(f"gate {g} is outside the path gate set")
    b = _Builder(c)
    end = len(b.gates)
    blocks: list[tuple[int, int]] = []
    while end > 0:
        j = min(delta.gate_index(g) for g in b.gates[:end])  # type: ignore[type-var]
        gate_j = delta.gates[j]
        while True:
            occ = [k for k in range(end) if b.gates[k] == gate_j]
            if len(occ) < 2:
                break
            before = len(b.gates)
            _reduce_pair(b, delta, occ[0], occ[1])
            end += len(b.gates) - before
        occ = [k for k in range(end) if b.gates[k] == gate_j]
        if not occ:
            continue
        run_start, run_len = _form_block_steps(b, delta, j, occ[0], end)
        blocks.insert(0, (j, run_len))
        end = run_start
    form = CanonicalForm(c.width, delta.path.name, tuple(blocks))
    return form, RewriteTrace(c, b.steps)


# ---------------------------------------------------------------------------
# Widening and palindrome decomposition
# ---------------------------------------------------------------------------


def widen_gates(c: Circuit) -> tuple[Circuit, RewriteTrace]:
    """Expand every gate over its free lines so that controls plus target
    cover the whole width. One expansion step per gate; a gate with f
    free lines becomes 2^f gates, one per polarity assignment."""
    b = _Builder(c)
    full = frozenset(range(1, c.width + 1))
    pos = 0
    while pos < len(b.gates):
        free = sorted(full - b.gates[pos].support)
        if free:
            b.apply(R6, pos, FORWARD, {"Q": tuple(free)})
            pos += 1 << len(free)
        else:
            pos += 1
    return b.circuit(), RewriteTrace(c, b.steps)


def _palindrome_over(delta: DeltaGateSet, i: int, j: int) -> tuple[Gate, ...]:
    run = delta.gates[i:j]
    return run + tuple(reversed(run[:-1]))


def decompose_to_delta(gate: Gate, delta: DeltaGateSet) -> tuple[Circuit, RewriteTrace]:
    """Replace a full-width gate by an equivalent palindrome over the
    path gate set.

    A member of the gate set is returned unchanged. Otherwise the gate
    exchanging (a_i, a_j) becomes M_i .. M_{j-1} .. M_i, recorded as one
    simulation-checked macro step; the gate-by-gate derivation is the
    reverse of :func:`reduce_palindrome_to_gate`.
    """
    n = delta.width
    initial = Circuit(n, (gate,))
    ex = gate_exchanges(gate, n)
    if ex is None:
        raise NormalizeError("gate is not full-width")
    i = delta.path.index_of(ex[0])
    j = delta.path.index_of(ex[1])
    if i > j:
        i, j = j, i
    if j == i + 1:
        if gate != delta.gates[i]:
            raise AssertionError("adjacent exchange gate differs from path gate")
        return initial, RewriteTrace(initial, [])
    palindrome = _palindrome_over(delta, i, j)
    b = _Builder(initial)
    b.macro(0, 1, palindrome)
    return b.circuit(), RewriteTrace(initial, b.steps)


def reduce_palindrome_to_gate(
    c: Circuit, delta: DeltaGateSet
) -> tuple[Gate, RewriteTrace]:
    """Collapse a palindrome M_i .. M_{j-1} .. M_i over the path gate set
    to the single gate exchanging (a_i, a_j), by rule steps only.

    Mirrors the coordinate-sequence reduction: each round removes one
    repeated flip line from the walk, realized on the circuit as two
    palindrome reversals, a mirrored block commutation, the ladder
    collapse (with X conjugation where the walk's bit values require it,
    flipping the dropped line's polarity in the surviving gates), and a
    final reversal that restores walk order.
    """
    n = delta.width
    length = len(c.gates)
    if length == 0 or length % 2 == 0:
        raise NormalizeError("not an odd-length palindrome")
    half = (length + 1) // 2
    first = delta.gate_index(c.gates[0])
    if first is None:
        raise NormalizeError("leading gate is outside the path gate set")
    if first + half - 1 >= len(delta.gates):
        raise NormalizeError("palindrome runs past the end of the path")
    for t in range(half):
        if c.gates[t] != delta.gates[first + t]:
            raise NormalizeError("left half is not a consecutive ascending run")
    for t in range(half - 1):
        if c.gates[length - 1 - t] != c.gates[t]:
            raise NormalizeError("circuit is not a palindrome")

    i0, j0 = first, first + half
    expected = exchange_gate(delta.path.nodes[i0], delta.path.nodes[j0])
    b = _Builder(c)
    listing: list[Gate] = [c.gates[t] for t in range(half)]
    omega: list[int] = [g.target for g in listing]
    w0 = encode(delta.path.nodes[i0])

    while True:
        K = len(listing)
        if K == 1:
            break
        action = _next_reduction_action(omega)
        if action is None:
            raise NormalizeError("palindrome does not collapse to a single gate")
        if action[0] == "delete":
            t = action[1]
            if listing[t] != listing[t + 1]:
                raise AssertionError("equal walk entries with unequal gates")
            if t + 1 == K - 1:
                # The pair straddles the circuit's center, where the doubled
                # gate has three adjacent copies; one cancellation removes
                # two of them and the walk keeps a single flip of that line.
                b.apply(R1, t)
                listing.pop()
                omega.pop()
            else:
                b.apply(R1, t)
                b.apply(R1, 2 * K - 5 - t)
                del listing[t : t + 2]
                del omega[t : t + 2]
            continue

        _, g, h = action
        v = omega[g]
        walk = [w0]
        for m in omega:
            walk.append(walk[-1] ^ (1 << (n - m)))

        # Reverse the suffix palindrome so the two v-gates approach.
        _reverse_palindrome_steps(b, h, K - h)
        # Mirrored block commutation: walk segment [g..h-1] crosses the
        # reversed tail, on both halves of the palindrome.
        bsize = K - 1 - h
        if bsize:
            for a in range(h - 1, g - 1, -1):
                for s in range(a, a + bsize):
                    b.commute(s)
                    b.commute(2 * K - 3 - s)
        # Bring the twin pair together at the front of the core.
        _reverse_palindrome_steps(b, K - h + g, h - g)

        # Ladder collapse. Lines whose walk bit reads 1 must be cleared
        # by X conjugation for the collapse pattern, and restored after;
        # the dropped line v keeps the net polarity flip.
        p4 = K - 1 - h + g
        lo, hi = p4, 2 * K - 2 - p4
        flip_lines = sorted(
            ln
            for ln in {v, *omega[g + 1 : h]}
            if (walk[g] >> (n - ln)) & 1
        )
        for ln in flip_lines:
            lo, hi = b.conjugate(lo, hi, ln)
        b.apply(R5, lo, FORWARD)
        hi -= 4
        for ln in reversed(flip_lines):
            b.unconjugate(lo, hi, ln)
            lo, hi = lo - 1, hi - 1

        # Restore walk order across the whole remaining core.
        _reverse_palindrome_steps(b, g, (K - 2) - g)

        flipped = [listing[s].with_flipped_control(v) for s in range(g + 1, h)]
        listing = listing[:g] + flipped + listing[h + 1 :]
        omega = omega[:g] + omega[g + 1 : h] + omega[h + 1 :]
        predicted = listing[:-1] + [listing[-1]] + listing[-2::-1]
        if b.gates != predicted:
            raise AssertionError("palindrome bookkeeping out of sync")

    if b.gates != [expected]:
        raise AssertionError("palindrome collapsed to an unexpected gate")
    return b.gates[0], RewriteTrace(c, b.steps)


# ---------------------------------------------------------------------------
# The full pipeline
# ---------------------------------------------------------------------------


def canonicalize(
    c: Circuit,
    path: HamiltonianPath | None = None,
    max_canon_width: int = MAX_CANON_WIDTH,
) -> tuple[CanonicalForm, RewriteTrace]:
    """Transform any circuit into its canonical form with a full trace.

    Pipeline: widen every gate to full width, decompose each widened
    gate into a palindrome over the path gate set (macro steps), then
    canonicalize the resulting word. The output equals the form built
    directly from the circuit's permutation.
    """
    if path is None:
        path = gray_path(c.width)
    if path.width != c.width:
        raise ValueError("path width differs from circuit width")
    if c.width > max_canon_width:
        raise WidthCapError(
            f"canonicalization width {c.width} exceeds cap {max_canon_width}"
        )
    delta = delta_gates(path)
    widened, widen_trace = widen_gates(c)

    b = _Builder(widened)
    pos = 0
    while pos < len(b.gates):
        gate = b.gates[pos]
        if delta.gate_index(gate) is not None:
            pos += 1
            continue
        ex = gate_exchanges(gate, c.width)
        if ex is None:
            raise AssertionError("widened circuit contains a non-full-width gate")
        i = delta.path.index_of(ex[0])
        j = delta.path.index_of(ex[1])
        if i > j:
            i, j = j, i
        palindrome = _palindrome_over(delta, i, j)
        b.macro(pos, 1, palindrome)
        pos += len(palindrome)

    form, delta_trace = canonicalize_delta(b.circuit(), delta)
    return form, RewriteTrace(c, widen_trace.steps + b.steps + delta_trace.steps)


@dataclass
class EquivalenceResult:
    """Outcome of a canonical-form equivalence check."""

    equivalent: bool
    form_a: CanonicalForm
    form_b: CanonicalForm
    certificate: RewriteTrace | None = None
    witness: BitString | None = None


def equivalent(
    a: Circuit,
    b: Circuit,
    path: HamiltonianPath | None = None,
    max_canon_width: int = MAX_CANON_WIDTH,
) -> EquivalenceResult:
    """Decide equivalence through the canonical form.

    Equal forms come with a replayable certificate from ``a`` to ``b``
    (a's trace followed by b's trace inverted); unequal forms come with
    a distinguishing input found by simulation.
    """
    if a.width != b.width:
        raise ValueError("circuits must have equal widths")
    if path is None:
        path = gray_path(a.width)
    form_a, trace_a = canonicalize(a, path, max_canon_width)
    form_b, trace_b = canonicalize(b, path, max_canon_width)
    if form_a == form_b:
        back = invert_trace(trace_b)
        certificate = RewriteTrace(a, trace_a.steps + back.steps)
        return EquivalenceResult(True, form_a, form_b, certificate, None)
    table_a = simulate_ints(a)
    table_b = simulate_ints(b)
    x = next(k for k in range(len(table_a)) if table_a[k] != table_b[k])
    return EquivalenceResult(False, form_a, form_b, None, decode(x, a.width))
