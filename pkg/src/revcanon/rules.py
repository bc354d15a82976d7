"""The rewrite-rule catalog.

Ten transformation rules on MPMCT circuits: five basic ones (R1-R5) and
five derived ones (R6-R10) implemented as first-class rewrites. Every
rule can be matched and applied in both directions; applications produce
:class:`RewriteStep` records that an independent replayer can verify
structurally. Matching is purely structural, never semantic.

Forward direction rewrites the left side of a rule into its right side;
backward rewrites right into left. Some backward matches have a free
parameter the circuit does not determine (the split line for R2, the
dropped line for R5, the expansion lines for forward R6); those must be
supplied through instance bindings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .core import Circuit, Gate, x_gate
from .sim import equivalent_by_sim

R1 = "R1"
R2 = "R2"
R3 = "R3"
R4 = "R4"
R5 = "R5"
R6 = "R6"
R7 = "R7"
R8 = "R8"
R9 = "R9"
R10 = "R10"

BASIC_RULES = (R1, R2, R3, R4, R5)
DERIVED_RULES = (R6, R7, R8, R9, R10)
ALL_RULES = BASIC_RULES + DERIVED_RULES

MACRO = "macro"

FORWARD = "forward"
BACKWARD = "backward"


class RuleMatchError(ValueError):
    """A rule instance could not be applied to the given circuit."""


class TraceReplayError(ValueError):
    """A trace failed verification; carries the failing step index."""

    def __init__(self, step_index: int, reason: str):
        super().__init__(f"step {step_index}: {reason}")
        self.step_index = step_index
        self.reason = reason


@dataclass(frozen=True)
class RuleInstance:
    """A rule matched at a position, with all schema parameters bound."""

    rule: str
    position: int
    direction: str
    bindings: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class RewriteStep:
    """One rewrite: delete ``removed_count`` gates at ``position`` and
    insert ``inserted`` there. ``rule`` is a rule id, or ``"macro"`` for
    compound steps that are verified by simulation instead of structure."""

    rule: str
    direction: str
    position: int
    removed_count: int
    inserted: tuple[Gate, ...]
    bindings: dict[str, Any] = field(default_factory=dict)

    @property
    def is_macro(self) -> bool:
        return self.rule == MACRO


@dataclass
class RewriteTrace:
    """A replayable certificate for a circuit-to-circuit transformation."""

    initial: Circuit
    steps: list[RewriteStep] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Matchers. Each takes the raw gate sequence and returns
# (removed_count, inserted gates, bindings) or None on a non-match.
# ---------------------------------------------------------------------------

MatchResult = "tuple[int, tuple[Gate, ...], dict[str, Any]] | None"


def _match_r1(gates, width, pos, direction, bindings) -> MatchResult:
    if direction == FORWARD:
        if pos + 1 >= len(gates):
            return None
        if gates[pos] != gates[pos + 1]:
            return None
        return 2, (), {"gate": gates[pos]}
    # Backward inserts a fresh cancelling pair; the gate is a free parameter.
    gate = (bindings or {}).get("gate")
    if gate is None or not isinstance(gate, Gate) or gate.max_line() > width:
        return None
    return 0, (gate, gate), {"gate": gate}


def _split_pair(a0: Gate, a1: Gate) -> tuple[int, Gate] | None:
    """If (a0, a1) differ only in one control line p that is negative in
    a0 and positive in a1, return (p, merged gate)."""
    if a0.target != a1.target:
        return None
    extra_pos = set(a1.positives) - set(a0.positives)
    extra_neg = set(a0.negatives) - set(a1.negatives)
    if len(extra_pos) != 1 or extra_pos != extra_neg:
        return None
    if set(a0.positives) - set(a1.positives) or set(a1.negatives) - set(a0.negatives):
        return None
    (p,) = extra_pos
    return p, Gate(a0.positives, a1.negatives, a0.target)


def _match_r2(gates, width, pos, direction, bindings) -> MatchResult:
    if direction == FORWARD:
        if pos + 1 >= len(gates):
            return None
        split = _split_pair(gates[pos], gates[pos + 1])
        if split is None:
            return None
        p, merged = split
        return 2, (merged,), {"p": p}
    if pos >= len(gates):
        return None
    p = (bindings or {}).get("p")
    if p is None:
        return None
    a = gates[pos]
    if not 1 <= p <= width or p in a.support:
        return None
    a0 = Gate(a.positives, a.negatives + (p,), a.target)
    a1 = Gate(a.positives + (p,), a.negatives, a.target)
    return 1, (a0, a1), {"p": p}


def _r3_condition(a: Gate, b: Gate) -> bool:
    return bool(set(a.positives) & set(b.negatives)) or bool(
        set(b.positives) & set(a.negatives)
    )


def _match_r3(gates, width, pos, direction, bindings) -> MatchResult:
    # The commutation condition is symmetric, so both directions swap.
    if pos + 1 >= len(gates):
        return None
    a, b = gates[pos], gates[pos + 1]
    if not _r3_condition(a, b):
        return None
    return 2, (b, a), {}


def _as_cnot(g: Gate) -> tuple[int, int] | None:
    if len(g.positives) == 1 and not g.negatives:
        return g.positives[0], g.target
    return None


def _match_r4(gates, width, pos, direction, bindings) -> MatchResult:
    if pos + 3 >= len(gates):
        return None
    if direction == FORWARD:
        a, b, a2, c1 = gates[pos : pos + 4]
    else:
        c2, a, b, a2 = gates[pos : pos + 4]
    if a != a2:
        return None
    pa = _as_cnot(a)
    pb = _as_cnot(b)
    if pa is None or pb is None:
        return None
    p, q = pa
    if pb != (q, p):
        return None
    if direction == FORWARD:
        if c1.target != p:
            return None
        if q in c1.positives:
            shared_p = tuple(x for x in c1.positives if x != q)
            if p in shared_p or p in c1.negatives:
                return None
            c2 = Gate(shared_p + (p,), c1.negatives, q)
            variant = "positive"
        elif q in c1.negatives:
            shared_n = tuple(x for x in c1.negatives if x != q)
            if p in shared_n or p in c1.positives:
                return None
            c2 = Gate(c1.positives, shared_n + (p,), q)
            variant = "negative"
        else:
            return None
        return 4, (c2, a, b, a2), {"p": p, "q": q, "variant": variant}
    if c2.target != q:
        return None
    if p in c2.positives:
        shared_p = tuple(x for x in c2.positives if x != p)
        if q in shared_p or q in c2.negatives:
            return None
        c1 = Gate(shared_p + (q,), c2.negatives, p)
        variant = "positive"
    elif p in c2.negatives:
        shared_n = tuple(x for x in c2.negatives if x != p)
        if q in shared_n or q in c2.positives:
            return None
        c1 = Gate(c2.positives, shared_n + (q,), p)
        variant = "negative"
    else:
        return None
    return 4, (a, b, a2, c1), {"p": p, "q": q, "variant": variant}


def _r5_left_side(
    p_set: tuple[int, ...], n_set: tuple[int, ...], q: int, q_seq: tuple[int, ...]
) -> tuple[Gate, ...]:
    """The 2m+3 gate sequence A0 A1 B1..Bm..B1 A1 A0."""
    m = len(q_seq)
    a0 = Gate(p_set, n_set + q_seq, q)
    a1 = Gate(p_set + q_seq, n_set, q)
    bs = []
    for i in range(1, m + 1):
        later = q_seq[i:]
        earlier = q_seq[: i - 1]
        bs.append(Gate(p_set + (q,) + later, n_set + earlier, q_seq[i - 1]))
    return (a0, a1) + tuple(bs) + tuple(reversed(bs[:-1])) + (a1, a0)


def _r5_right_side(
    p_set: tuple[int, ...], n_set: tuple[int, ...], q: int, q_seq: tuple[int, ...]
) -> tuple[Gate, ...]:
    """The 2m-1 gate sequence B1'..Bm'..B1' (target line moved to the
    negative side of every inner gate)."""
    m = len(q_seq)
    bs = []
    for i in range(1, m + 1):
        later = q_seq[i:]
        earlier = q_seq[: i - 1]
        bs.append(Gate(p_set + later, n_set + (q,) + earlier, q_seq[i - 1]))
    return tuple(bs) + tuple(reversed(bs[:-1]))


def _match_r5(gates, width, pos, direction, bindings) -> MatchResult:
    if direction == FORWARD:
        if pos + 1 >= len(gates):
            return None
        a0, a1 = gates[pos], gates[pos + 1]
        if a0.target != a1.target:
            return None
        q = a0.target
        q_extra = set(a1.positives) - set(a0.positives)
        n_extra = set(a0.negatives) - set(a1.negatives)
        if not q_extra or q_extra != n_extra:
            return None
        if set(a0.positives) - set(a1.positives):
            return None
        if set(a1.negatives) - set(a0.negatives):
            return None
        m = len(q_extra)
        if pos + 2 * m + 3 > len(gates):
            return None
        # The order of Q is fixed by the targets of the inner gates.
        q_seq = tuple(gates[pos + 1 + i].target for i in range(1, m + 1))
        if set(q_seq) != q_extra or len(set(q_seq)) != m:
            return None
        p_set = a0.positives
        n_set = a1.negatives
        left = _r5_left_side(p_set, n_set, q, q_seq)
        if tuple(gates[pos : pos + 2 * m + 3]) != left:
            return None
        binds = {"q": q, "Q": q_seq, "P": p_set, "N": n_set}
        return 2 * m + 3, _r5_right_side(p_set, n_set, q, q_seq), binds
    # Backward: q is a free parameter; Q may be pinned through bindings,
    # otherwise the largest structurally valid m is used.
    binds = bindings or {}
    q = binds.get("q")
    if q is None or pos >= len(gates):
        return None
    if binds.get("Q") is not None:
        candidates = [tuple(binds["Q"])]
    else:
        max_m = (len(gates) - pos + 1) // 2
        candidates = []
        for m in range(max_m, 0, -1):
            if pos + 2 * m - 1 <= len(gates):
                candidates.append(
                    tuple(gates[pos + i].target for i in range(m))
                )
    for q_seq in candidates:
        m = len(q_seq)
        if m == 0 or len(set(q_seq)) != m or q in q_seq:
            continue
        if pos + 2 * m - 1 > len(gates):
            continue
        b1 = gates[pos]
        if q not in b1.negatives:
            continue
        bm = gates[pos + m - 1]
        p_set = tuple(x for x in bm.positives)
        n_set = tuple(x for x in b1.negatives if x != q)
        try:
            right = _r5_right_side(p_set, n_set, q, q_seq)
        except ValueError:
            continue
        if tuple(gates[pos : pos + 2 * m - 1]) != right:
            continue
        left = _r5_left_side(p_set, n_set, q, q_seq)
        return 2 * m - 1, left, {"q": q, "Q": q_seq, "P": p_set, "N": n_set}
    return None


def _r6_family(gate: Gate, q_seq: tuple[int, ...]) -> tuple[Gate, ...]:
    """All 2^m polarity assignments of Q over the base gate, in binary
    counting order with the first line of Q most significant."""
    m = len(q_seq)
    out = []
    for i in range(1 << m):
        chosen = tuple(q_seq[j] for j in range(m) if (i >> (m - 1 - j)) & 1)
        rest = tuple(q for q in q_seq if q not in chosen)
        out.append(Gate(gate.positives + chosen, gate.negatives + rest, gate.target))
    return tuple(out)


def _match_r6(gates, width, pos, direction, bindings) -> MatchResult:
    if direction == FORWARD:
        if pos >= len(gates):
            return None
        q_lines = (bindings or {}).get("Q")
        if not q_lines:
            return None
        q_seq = tuple(sorted(set(q_lines)))
        a = gates[pos]
        if any(not 1 <= q <= width or q in a.support for q in q_seq):
            return None
        return 1, _r6_family(a, q_seq), {"Q": q_seq}
    if pos >= len(gates):
        return None
    first = gates[pos]
    target = first.target
    support = first.support
    run = 1
    while (
        pos + run < len(gates)
        and gates[pos + run].target == target
        and gates[pos + run].support == support
    ):
        run += 1
    m = 1
    while (1 << (m + 1)) <= run:
        m += 1
    for mm in range(m, 0, -1):
        count = 1 << mm
        segment = tuple(gates[pos : pos + count])
        common_pos = set(segment[0].positives)
        common_neg = set(segment[0].negatives)
        for g in segment[1:]:
            common_pos &= set(g.positives)
            common_neg &= set(g.negatives)
        q_seq = tuple(
            sorted((support - {target}) - common_pos - common_neg)
        )
        if len(q_seq) != mm:
            continue
        base = Gate(tuple(sorted(common_pos)), tuple(sorted(common_neg)), target)
        if _r6_family(base, q_seq) != segment:
            continue
        return count, (base,), {"Q": q_seq}
    return None


def _match_r7(gates, width, pos, direction, bindings) -> MatchResult:
    if pos + 1 >= len(gates):
        return None
    a, b = gates[pos], gates[pos + 1]
    if a.target != b.target:
        return None
    return 2, (b, a), {}


def _match_r8(gates, width, pos, direction, bindings) -> MatchResult:
    if direction == FORWARD:
        if pos >= len(gates):
            return None
        a = gates[pos]
        if not a.negatives:
            return None
        lines = a.negatives
        wrap = tuple(x_gate(q) for q in lines)
        b = Gate(a.positives + lines, (), a.target)
        return 1, wrap + (b,) + wrap, {"lines": lines}
    # Backward: longest X-wrap at pos whose core has those lines positive.
    k = 0
    seen: list[int] = []
    while pos + k < len(gates):
        g = gates[pos + k]
        if g.controls or g.target in seen:
            break
        seen.append(g.target)
        k += 1
    for m in range(k, 0, -1):
        lines = tuple(gates[pos + i].target for i in range(m))
        if pos + 2 * m + 1 > len(gates):
            continue
        core = gates[pos + m]
        if core.negatives or not set(lines) <= set(core.positives):
            continue
        if tuple(gates[pos + m + 1 : pos + 2 * m + 1]) != tuple(
            gates[pos : pos + m]
        ):
            continue
        merged = Gate(
            tuple(x for x in core.positives if x not in lines), lines, core.target
        )
        return 2 * m + 1, (merged,), {"lines": tuple(sorted(lines))}
    return None


def _match_r9(gates, width, pos, direction, bindings) -> MatchResult:
    if pos + 1 >= len(gates):
        return None
    if direction == FORWARD:
        a, b1 = gates[pos], gates[pos + 1]
        p = a.target
        if p not in b1.positives:
            return None
        p2 = tuple(x for x in b1.positives if x != p)
        if not set(a.positives) <= set(p2) or not set(a.negatives) <= set(
            b1.negatives
        ):
            return None
        b2 = Gate(p2, b1.negatives + (p,), b1.target)
        return 2, (b2, a), {"p": p, "q": b1.target}
    b2, a = gates[pos], gates[pos + 1]
    p = a.target
    if p not in b2.negatives:
        return None
    n2 = tuple(x for x in b2.negatives if x != p)
    if not set(a.positives) <= set(b2.positives) or not set(a.negatives) <= set(n2):
        return None
    b1 = Gate(b2.positives + (p,), n2, b2.target)
    return 2, (a, b1), {"p": p, "q": b2.target}


def _match_r10(gates, width, pos, direction, bindings) -> MatchResult:
    # The schema is symmetric in (A, B): applying it twice at the same
    # position restores the segment, so both directions match alike.
    if pos + 2 >= len(gates):
        return None
    a, b, a2 = gates[pos : pos + 3]
    if a != a2 or a.negatives or b.negatives:
        return None
    p, q = b.target, a.target
    if p == q or p not in a.positives or q not in b.positives:
        return None
    shared = set(a.positives) - {p}
    if set(b.positives) - {q} != shared:
        return None
    return 3, (b, a, b), {"p": p, "q": q}


_MATCHERS: dict[str, Callable] = {
    R1: _match_r1,
    R2: _match_r2,
    R3: _match_r3,
    R4: _match_r4,
    R5: _match_r5,
    R6: _match_r6,
    R7: _match_r7,
    R8: _match_r8,
    R9: _match_r9,
    R10: _match_r10,
}


def match_segment(
    gates: Sequence[Gate],
    width: int,
    rule: str,
    pos: int,
    direction: str,
    bindings: dict[str, Any] | None = None,
):
    """Low-level matcher on a raw gate sequence. Returns
    (removed_count, inserted, bindings) or None."""
    if rule not in _MATCHERS:
        raise ValueError(f"unknown rule {rule!r}")
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"unknown direction {direction!r}")
    if not 0 <= pos <= len(gates):
        return None
    return _MATCHERS[rule](gates, width, pos, direction, bindings)


def match_rule(
    c: Circuit,
    rule: str,
    position: int,
    direction: str = FORWARD,
    bindings: dict[str, Any] | None = None,
) -> RuleInstance | None:
    """Match one rule at one position; None when the segment does not
    have the rule's shape."""
    res = match_segment(c.gates, c.width, rule, position, direction, bindings)
    if res is None:
        return None
    _, _, binds = res
    return RuleInstance(rule, position, direction, binds)


def apply_rule(c: Circuit, inst: RuleInstance) -> tuple[Circuit, RewriteStep]:
    """Apply a matched instance; raises RuleMatchError if it is stale."""
    res = match_segment(
        c.gates, c.width, inst.rule, inst.position, inst.direction, inst.bindings
    )
    if res is None:
        raise RuleMatchError(
            f"{inst.rule} {inst.direction} does not match at {inst.position}"
        )
    removed, inserted, binds = res
    gates = c.gates[: inst.position] + inserted + c.gates[inst.position + removed :]
    step = RewriteStep(
        inst.rule, inst.direction, inst.position, removed, inserted, binds
    )
    return Circuit(c.width, gates), step


def apply_step(c: Circuit, step: RewriteStep) -> Circuit:
    """Splice a step into a circuit without verification."""
    gates = (
        c.gates[: step.position]
        + step.inserted
        + c.gates[step.position + step.removed_count :]
    )
    return Circuit(c.width, gates)


def verify_step(pre: Circuit, step: RewriteStep) -> bool:
    """Check a step against the circuit it claims to rewrite.

    Rule steps are re-matched structurally; macro steps fall back to
    exhaustive simulation of the removed segment against the inserted one.
    """
    if step.position < 0 or step.position + step.removed_count > len(pre.gates):
        return False
    if step.is_macro:
        removed = Circuit(pre.width, pre.gates[step.position : step.position + step.removed_count])
        try:
            inserted = Circuit(pre.width, step.inserted)
            return equivalent_by_sim(removed, inserted)
        except ValueError:
            return False
    try:
        res = match_segment(
            pre.gates, pre.width, step.rule, step.position, step.direction, step.bindings
        )
    except ValueError:
        return False
    if res is None:
        return False
    removed_count, inserted, _ = res
    return removed_count == step.removed_count and inserted == step.inserted


def replay(trace: RewriteTrace) -> Circuit:
    """Re-run a trace from its initial circuit, verifying every step.

    Raises TraceReplayError naming the first invalid step.
    """
    c = trace.initial
    for k, step in enumerate(trace.steps):
        if not verify_step(c, step):
            raise TraceReplayError(k, f"{step.rule} {step.direction} at {step.position} failed verification")
        c = apply_step(c, step)
    return c


def invert_step(pre: Circuit, step: RewriteStep) -> RewriteStep:
    """The step undoing ``step``, valid on the post-circuit."""
    removed = pre.gates[step.position : step.position + step.removed_count]
    if step.is_macro:
        direction = FORWARD
    else:
        direction = BACKWARD if step.direction == FORWARD else FORWARD
    return RewriteStep(
        step.rule,
        direction,
        step.position,
        len(step.inserted),
        tuple(removed),
        dict(step.bindings),
    )


def invert_trace(trace: RewriteTrace) -> RewriteTrace:
    """The reverse certificate: replays from the trace's final circuit
    back to its initial one."""
    c = trace.initial
    inverted: list[RewriteStep] = []
    for step in trace.steps:
        inverted.append(invert_step(c, step))
        c = apply_step(c, step)
    inverted.reverse()
    return RewriteTrace(c, inverted)


def enumerate_matches(
    c: Circuit, rules: Iterable[str] | None = None
) -> list[RuleInstance]:
    """All instances over all positions, in (position, rule, direction)
    order.

    Backward matches with a free parameter are enumerated over every
    legal parameter value (split lines for R2, dropped lines for R5,
    single expansion lines for forward R6). Backward R1, which could
    insert any gate anywhere, is left out.
    """
    wanted = tuple(rules) if rules is not None else ALL_RULES
    out: list[RuleInstance] = []
    lines = range(1, c.width + 1)
    for pos in range(len(c.gates)):
        for rule in ALL_RULES:
            if rule not in wanted:
                continue
            for direction in (FORWARD, BACKWARD):
                if rule == R1 and direction == BACKWARD:
                    continue
                if (rule, direction) in ((R3, BACKWARD), (R7, BACKWARD), (R10, BACKWARD)):
                    continue  # same rewrite as forward; skip the duplicate
                if rule == R2 and direction == BACKWARD:
                    for p in lines:
                        inst = match_rule(c, rule, pos, direction, {"p": p})
                        if inst:
                            out.append(inst)
                    continue
                if rule == R5 and direction == BACKWARD:
                    for q in lines:
                        inst = match_rule(c, rule, pos, direction, {"q": q})
                        if inst:
                            out.append(inst)
                    continue
                if rule == R6 and direction == FORWARD:
                    for q in lines:
                        inst = match_rule(c, rule, pos, direction, {"Q": (q,)})
                        if inst:
                            out.append(inst)
                    continue
                inst = match_rule(c, rule, pos, direction)
                if inst:
                    out.append(inst)
    return out


def optimize(c: Circuit, budget: int = 200) -> tuple[Circuit, RewriteTrace]:
    """Greedy gate-count reduction.

    Applies any available R1/R2 reduction; otherwise searches for a short
    sequence of commutation moves (R3/R7) that exposes one, spending at
    most ``budget`` moves in total. Never increases the gate count; the
    result carries a verified trace. Best effort, not optimal.
    """
    trace = RewriteTrace(c)
    moves_left = budget

    def direct_reduction(circ: Circuit) -> RuleInstance | None:
        for pos in range(len(circ.gates)):
            for rule in (R1, R2):
                inst = match_rule(circ, rule, pos, FORWARD)
                if inst:
                    return inst
        return None

    while True:
        inst = direct_reduction(c)
        if inst is not None:
            c, step = apply_rule(c, inst)
            trace.steps.append(step)
            continue
        # Bubble each gate toward a reduction partner, one swap at a time.
        committed = False
        for start in range(len(c.gates)):
            if committed:
                break
            for delta in (-1, 1):
                trial = c
                pending: list[RewriteStep] = []
                pos = start
                while len(pending) < moves_left:
                    swap_at = pos if delta > 0 else pos - 1
                    if not 0 <= swap_at <= len(trial.gates) - 2:
                        break
                    swap = match_rule(trial, R3, swap_at) or match_rule(
                        trial, R7, swap_at
                    )
                    if swap is None:
                        break
                    trial, step = apply_rule(trial, swap)
                    pending.append(step)
                    pos += delta
                    red = direct_reduction(trial)
                    if red is not None:
                        trial, red_step = apply_rule(trial, red)
                        trace.steps.extend(pending)
                        trace.steps.append(red_step)
                        moves_left -= len(pending)
                        c = trial
                        committed = True
                        break
                if committed:
                    break
        if not committed:
            break
    return c, trace


RULE_DOCS: dict[str, str] = {
    R1: "AA -> (empty): two adjacent identical gates cancel.",
    R2: "A0 A1 -> A: adjacent gates equal except one control line p, negative"
    " in the first and positive in the second, merge into one gate without p."
    " Backward introduces a fresh split line p (supplied in bindings).",
    R3: "AB -> BA: gates commute when some line is a positive control of one"
    " and a negative control of the other.",
    R4: "ABA C1 -> C2 ABA: a 3-CNOT swap of lines p,q passes through a gate"
    " targeting p with q among its controls; target and control swap roles.",
    R5: "A0 A1 B1..Bm..B1 A1 A0 -> B1'..Bm'..B1': a conjugated ladder over Q"
    " collapses, moving the shared target line q from positive to negative"
    " in every inner gate.",
    R6: "A -> A_Q0 A_Q1 ... : one gate expands into all 2^m polarity"
    " assignments over a set Q of fresh lines (Q supplied in bindings).",
    R7: "AB -> BA: gates sharing a target commute.",
    R8: "A -> X.. B X..: negative controls become positive by conjugating"
    " with X gates on those lines.",
    R9: "A B1 -> B2 A: a gate targeting line p passes through a gate that has"
    " p as a positive control, flipping that control to negative (controls of"
    " A must be a subset of the controls of B).",
    R10: "ABA -> BAB: all-positive gates over the same lines whose targets"
    " are controls of each other braid.",
}
