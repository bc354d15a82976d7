"""Reversible-circuit rewriting: sound rules, replayable traces, and a
Hamiltonian-path canonical form for equivalence checking."""

__version__ = "0.1.0"

from .core import (
    BitString,
    Circuit,
    Gate,
    Permutation,
    WidthCapError,
    apply_gate,
    cnot_gate,
    control_extend,
    decode,
    empty_circuit,
    encode,
    gate_exchanges,
    gate_fires,
    inverse,
    toffoli_gate,
    x_gate,
)
from .sim import equivalent_by_sim, permutation_of_exchange, simulate
from .rules import (
    ALL_RULES,
    BASIC_RULES,
    DERIVED_RULES,
    RewriteStep,
    RewriteTrace,
    RuleInstance,
    TraceReplayError,
    apply_rule,
    enumerate_matches,
    match_rule,
    optimize,
    replay,
    verify_step,
)
from .canon import (
    CanonicalForm,
    CanonicalRejection,
    DeltaGateSet,
    HamiltonianPath,
    constructive_canonicalize,
    block_permutation_row,
    delta_gates,
    enumerate_canonical_forms,
    exchange_gate,
    gray_path,
    validate_canonical,
)
from .normalize import (
    CoordinateSequence,
    EquivalenceResult,
    NormalizeError,
    aba_to_bab,
    canonicalize,
    canonicalize_delta,
    commutes_structurally,
    decompose_to_delta,
    equivalent,
    form_block,
    generate,
    palindrome_reverse,
    reduce_coordinates,
    reduce_double_occurrence,
    reduce_palindrome_to_gate,
    widen_gates,
)
from .fmt import ParseError, parse_circuit, parse_real, print_circuit, render_ascii
