"""Text formats: circuit files, trace files, ASCII rendering.

Circuit grammar (line oriented, ``#`` starts a comment, blank lines
ignored, optional ``# format: rc-v1`` first line)::

    .width <n>
    x <t>                 single-line inversion
    cnot <c> <t>          one positive control
    t <c1> <c2> <t>       two positive controls
    g [+|-]<c> ... <t>    general gate; +/- mark control polarity,
                          a bare control index is positive, the last
                          bare index is the target
    .end                  optional terminator

Gates execute top to bottom. Printing normalizes to sorted controls and
round-trips exactly through the parser.

Trace grammar, one step per line::

    <rule> <direction> <position> <removed_count> [key=value ...] | <gate> ; <gate> ...

where gates use the circuit gate-line syntax, integer-tuple values are
comma separated (with a trailing comma for singletons), and the rule
token is ``r1`` .. ``r10`` or ``macro``.

A read-only import shim for the common ``.real`` benchmark header/gate
syntax maps ``t<k>`` lines onto MCT gates.
"""

from __future__ import annotations

from .core import BitString, Circuit, Gate
from .rules import ALL_RULES, BACKWARD, FORWARD, MACRO, RewriteStep


class ParseError(ValueError):
    """Malformed circuit or trace text; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def _parse_index(token: str, width: int, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line_no, f"expected a line index, got {token!r}") from None
    if not 1 <= value <= width:
        raise ParseError(line_no, f"index {value} out of 1..{width}")
    return value


def parse_gate_line(line: str, width: int, line_no: int = 0) -> Gate:
    """Parse one gate line of the circuit grammar."""
    tokens = line.split()
    if not tokens:
        raise ParseError(line_no, "empty gate line")
    mnemonic, args = tokens[0].lower(), tokens[1:]
    if mnemonic == "x":
        if len(args) != 1:
            raise ParseError(line_no, "x takes one index")
        return Gate((), (), _parse_index(args[0], width, line_no))
    if mnemonic == "cnot":
        if len(args) != 2:
            raise ParseError(line_no, "cnot takes two indices")
        c, t = (_parse_index(a, width, line_no) for a in args)
        return _build_gate((c,), (), t, line_no)
    if mnemonic == "t":
        if len(args) != 3:
            raise ParseError(line_no, "t takes three indices")
        c1, c2, t = (_parse_index(a, width, line_no) for a in args)
        return _build_gate((c1, c2), (), t, line_no)
    if mnemonic == "g":
        if not args:
            raise ParseError(line_no, "g takes at least a target")
        if args[-1][0] in "+-":
            raise ParseError(line_no, "last index of a g line is the bare target")
        target = _parse_index(args[-1], width, line_no)
        pos: list[int] = []
        neg: list[int] = []
        for tok in args[:-1]:
            if tok.startswith("+"):
                pos.append(_parse_index(tok[1:], width, line_no))
            elif tok.startswith("-"):
                neg.append(_parse_index(tok[1:], width, line_no))
            else:
                pos.append(_parse_index(tok, width, line_no))
        return _build_gate(tuple(pos), tuple(neg), target, line_no)
    raise ParseError(line_no, f"unknown gate mnemonic {tokens[0]!r}")


def _build_gate(pos, neg, target, line_no) -> Gate:
    try:
        return Gate(pos, neg, target)
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from None


def parse_circuit(text: str) -> Circuit:
    """Parse the circuit grammar into a width-checked circuit."""
    width = None
    gates: list[Gate] = []
    ended = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if ended:
            raise ParseError(line_no, "content after .end")
        if line.startswith(".width"):
            if width is not None:
                raise ParseError(line_no, "duplicate .width header")
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(line_no, ".width takes one integer")
            try:
                width = int(parts[1])
            except ValueError:
                raise ParseError(line_no, f"bad width {parts[1]!r}") from None
            if width < 1:
                raise ParseError(line_no, "width must be positive")
            continue
        if line == ".end":
            ended = True
            continue
        if line.startswith("."):
            raise ParseError(line_no, f"unknown directive {line.split()[0]!r}")
        if width is None:
            raise ParseError(line_no, "gate line before .width header")
        gates.append(parse_gate_line(line, width, line_no))
    if width is None:
        raise ParseError(0, "missing .width header")
    return Circuit(width, tuple(gates))


def format_gate(g: Gate, prefer_short_mnemonics: bool = True) -> str:
    """One gate line; short mnemonics for X / CNOT / Toffoli when enabled."""
    if prefer_short_mnemonics and not g.negatives:
        if not g.positives:
            return f"x {g.target}"
        if len(g.positives) == 1:
            return f"cnot {g.positives[0]} {g.target}"
        if len(g.positives) == 2:
            return f"t {g.positives[0]} {g.positives[1]} {g.target}"
    controls = [f"+{p}" for p in g.positives] + [f"-{p}" for p in g.negatives]
    controls.sort(key=lambda tok: int(tok[1:]))
    return " ".join(["g"] + controls + [str(g.target)])


def print_circuit(c: Circuit, prefer_short_mnemonics: bool = True) -> str:
    """Emit the circuit grammar; parse(print(c)) == c."""
    lines = [f".width {c.width}"]
    lines.extend(format_gate(g, prefer_short_mnemonics) for g in c.gates)
    return "\n".join(lines) + "\n"


_SYMBOLS = {"pos": "●", "neg": "○", "target": "⊕", "wire": "─", "link": "│"}
_ASCII_SYMBOLS = {"pos": "*", "neg": "o", "target": "+", "wire": "-", "link": "|"}


def render_ascii(c: Circuit, ascii_only: bool = False) -> str:
    """One text row per line, one column per gate; box-drawing symbols by
    default with a plain-ASCII fallback."""
    if c.width > 64:
        raise ValueError("rendering is limited to widths up to 64")
    sym = _ASCII_SYMBOLS if ascii_only else _SYMBOLS
    rows = []
    for line in range(1, c.width + 1):
        cells = [sym["wire"]]
        for g in c.gates:
            lo, hi = min(g.support), max(g.support)
            if line == g.target:
                cells.append(sym["target"])
            elif line in g.positives:
                cells.append(sym["pos"])
            elif line in g.negatives:
                cells.append(sym["neg"])
            elif lo < line < hi:
                cells.append(sym["link"])
            else:
                cells.append(sym["wire"])
            cells.append(sym["wire"])
        rows.append("".join(cells))
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Trace serialization
# ---------------------------------------------------------------------------

TRACE_HEADER = "# format: trace-v1"


def _format_binding_value(value) -> str | None:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, tuple) and all(isinstance(v, int) for v in value):
        if not value:
            return None
        text = ",".join(str(v) for v in value)
        return text + "," if len(value) == 1 else text
    return None


def format_step(step: RewriteStep) -> str:
    parts = [
        step.rule.lower(),
        step.direction,
        str(step.position),
        str(step.removed_count),
    ]
    for key in sorted(step.bindings):
        text = _format_binding_value(step.bindings[key])
        if text is not None:
            parts.append(f"{key}={text}")
    gates = " ; ".join(format_gate(g) for g in step.inserted)
    return " ".join(parts) + " | " + gates if gates else " ".join(parts) + " |"


def format_trace(steps: list[RewriteStep]) -> str:
    return "\n".join([TRACE_HEADER] + [format_step(s) for s in steps]) + "\n"


def _parse_binding_value(text: str):
    if "," in text:
        return tuple(int(part) for part in text.split(",") if part)
    if text.lstrip("-").isdigit():
        return int(text)
    return text


def parse_trace(text: str, width: int) -> list[RewriteStep]:
    """Parse a trace file into steps; gates are checked against ``width``."""
    steps: list[RewriteStep] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if "|" not in line:
            raise ParseError(line_no, "missing | separator")
        head, _, tail = line.partition("|")
        tokens = head.split()
        if len(tokens) < 4:
            raise ParseError(line_no, "expected rule, direction, position, count")
        rule = tokens[0].upper() if tokens[0].lower() != MACRO else MACRO
        if rule != MACRO and rule not in ALL_RULES:
            raise ParseError(line_no, f"unknown rule {tokens[0]!r}")
        direction = tokens[1]
        if direction not in (FORWARD, BACKWARD):
            raise ParseError(line_no, f"unknown direction {direction!r}")
        try:
            position = int(tokens[2])
            removed = int(tokens[3])
        except ValueError:
            raise ParseError(line_no, "position and count must be integers") from None
        bindings = {}
        for tok in tokens[4:]:
            if "=" not in tok:
                raise ParseError(line_no, f"bad binding {tok!r}")
            key, _, value = tok.partition("=")
            bindings[key] = _parse_binding_value(value)
        gate_texts = [part.strip() for part in tail.split(";") if part.strip()]
        inserted = tuple(parse_gate_line(g, width, line_no) for g in gate_texts)
        if rule == "R1" and direction == BACKWARD and inserted:
            bindings.setdefault("gate", inserted[0])
        steps.append(RewriteStep(rule, direction, position, removed, inserted, bindings))
    return steps


# ---------------------------------------------------------------------------
# .real import shim (read-only)
# ---------------------------------------------------------------------------


def parse_real(text: str) -> Circuit:
    """Import the common benchmark header/gate syntax: ``.numvars`` and
    ``.variables`` headers, then ``t<k>`` lines naming k-1 positive
    controls and a target. Other gate kinds are rejected."""
    width = None
    names: dict[str, int] = {}
    gates: list[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        lower = line.lower()
        if lower.startswith(".numvars"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(line_no, ".numvars takes one integer")
            width = int(parts[1])
            continue
        if lower.startswith(".variables"):
            for i, name in enumerate(line.split()[1:], start=1):
                names[name] = i
            continue
        if lower.startswith("."):
            continue  # other headers (.inputs, .constants, ...) are ignored
        if width is None:
            raise ParseError(line_no, "gate line before .numvars")
        tokens = line.split()
        kind = tokens[0].lower()
        if not (kind.startswith("t") and kind[1:].isdigit()):
            raise ParseError(line_no, f"unsupported gate {tokens[0]!r}")
        arity = int(kind[1:])
        if len(tokens) != arity + 1:
            raise ParseError(line_no, f"{tokens[0]} takes {arity} operands")
        indices = []
        for tok in tokens[1:]:
            if tok in names:
                indices.append(names[tok])
            elif tok.isdigit():
                indices.append(_parse_index(tok, width, line_no))
            else:
                raise ParseError(line_no, f"unknown variable {tok!r}")
        gates.append(_build_gate(tuple(indices[:-1]), (), indices[-1], line_no))
    if width is None:
        raise ParseError(0, "missing .numvars header")
    return Circuit(width, tuple(gates))


def format_permutation_table(images: list[BitString], width: int) -> str:
    """Two-column truth table of a simulated permutation."""
    from .core import decode

    rows = []
    for i, img in enumerate(images):
        rows.append(f"{decode(i, width)} {img}")
    return "\n".join(rows) + "\n"
