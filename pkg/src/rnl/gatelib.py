"""Built-in reversible gate library.

Each gate is a bijection on bit-vectors together with a declared quantum
cost and a decomposition into elementary quantum primitives.  Quantum cost
follows the standard unit-cost convention: every one-line or two-line
quantum gate counts 1.  The decompositions can be verified by composing
the primitives' unitaries and comparing with the gate's permutation matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

#: Tolerance for unitary / permutation-matrix comparisons.  Products of at
#: most five small complex matrices stay far below this in double precision.
UNITARY_ATOL = 1e-9

# Elementary 2x2 matrices.  V is a square root of NOT: V @ V == X.
X_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)
V_MATRIX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
V_DAG_MATRIX = V_MATRIX.conj().T


class PrimitiveKind(Enum):
    """Kinds of elementary quantum primitives, each of unit cost.

    CTRL_V_FLIP is a single two-line gate: controlled-V on the target
    followed by NOT on the control line.  Fusing the NOT keeps the pair on
    two lines, so it still counts as one primitive; it is what lets a
    Peres gate with complemented first output stay at cost 4.
    """

    NOT = "NOT"
    CNOT = "CNOT"
    CTRL_V = "CTRL_V"
    CTRL_V_DAG = "CTRL_V_DAG"
    CTRL_V_FLIP = "CTRL_V_FLIP"


_CONTROLLED_KINDS = {
    PrimitiveKind.CNOT: X_MATRIX,
    PrimitiveKind.CTRL_V: V_MATRIX,
    PrimitiveKind.CTRL_V_DAG: V_DAG_MATRIX,
    PrimitiveKind.CTRL_V_FLIP: V_MATRIX,
}


@dataclass(frozen=True)
class QuantumPrimitive:
    """One elementary gate: NOT on a line, or a controlled 2x2 operation.

    Attributes:
        kind: which primitive this is.
        target: line index the 2x2 operation acts on.
        control: controlling line index; None only for NOT.
    """

    kind: PrimitiveKind
    target: int
    control: int | None = None

    def __post_init__(self):
        if self.kind is PrimitiveKind.NOT:
            if self.control is not None:
                raise ValueError("NOT takes no control line")
        else:
            if self.control is None:
                raise ValueError(f"{self.kind.value} requires a control line")
            if self.control == self.target:
                raise ValueError("control and target must differ")


Bits = tuple[int, ...]


@dataclass(frozen=True)
class GateDef:
    """A named reversible gate on `arity` lines.

    Attributes:
        name: identifier, also used in the netlist file format.
        arity: number of lines (1..3).
        permutation: output pattern for every input pattern, indexed with
            the first line as the most significant bit.
        quantum_cost: declared cost; equals len(decomposition).
        decomposition: primitive sequence realizing the permutation.
    """

    name: str
    arity: int
    permutation: tuple[Bits, ...]
    quantum_cost: int
    decomposition: tuple[QuantumPrimitive, ...]

    def apply(self, bits: Sequence[int]) -> Bits:
        """Map an input bit-vector through the gate."""
        if len(bits) != self.arity:
            raise ValueError(
                f"{self.name} takes {self.arity} bits, got {len(bits)}"
            )
        return self.permutation[pattern_index(bits)]

    def inverse_apply(self, bits: Sequence[int]) -> Bits:
        """Map an output bit-vector back through the gate."""
        if len(bits) != self.arity:
            raise ValueError(
                f"{self.name} takes {self.arity} bits, got {len(bits)}"
            )
        target = tuple(bits)
        for i, out in enumerate(self.permutation):
            if out == target:
                return index_pattern(i, self.arity)
        raise ValueError(f"{target} is not an output of {self.name}")

    def permutation_matrix(self) -> np.ndarray:
        """The gate as a 2^arity x 2^arity 0/1 matrix."""
        n = 1 << self.arity
        m = np.zeros((n, n), dtype=complex)
        for i in range(n):
            m[pattern_index(self.permutation[i]), i] = 1.0
        return m


def pattern_index(bits: Sequence[int]) -> int:
    """Bit-vector to basis index, first line most significant."""
    k = len(bits)
    return sum((b & 1) << (k - 1 - i) for i, b in enumerate(bits))


def index_pattern(index: int, width: int) -> Bits:
    """Basis index back to a bit-vector of the given width."""
    return tuple((index >> (width - 1 - i)) & 1 for i in range(width))


def _perm_from_fn(arity: int, fn: Callable[[Bits], Bits]) -> tuple[Bits, ...]:
    return tuple(fn(index_pattern(i, arity)) for i in range(1 << arity))


def primitive_unitary(prim: QuantumPrimitive, arity: int) -> np.ndarray:
    """Expand one primitive to the full 2^arity space."""
    n = 1 << arity
    m = np.zeros((n, n), dtype=complex)
    if prim.kind is PrimitiveKind.NOT:
        for i in range(n):
            bits = list(index_pattern(i, arity))
            bits[prim.target] ^= 1
            m[pattern_index(bits), i] = 1.0
        return m

    u = _CONTROLLED_KINDS[prim.kind]
    flip = prim.kind is PrimitiveKind.CTRL_V_FLIP
    for i in range(n):
        bits = list(index_pattern(i, arity))
        if bits[prim.control] == 0:
            out = bits.copy()
            if flip:
                out[prim.control] ^= 1
            m[pattern_index(out), i] += 1.0
        else:
            for newbit in (0, 1):
                amp = u[newbit, bits[prim.target]]
                if amp != 0:
                    out = bits.copy()
                    out[prim.target] = newbit
                    if flip:
                        out[prim.control] ^= 1
                    m[pattern_index(out), i] += amp
    return m


def decomposition_unitary(gate: GateDef) -> np.ndarray:
    """Compose the gate's primitives, applied in sequence, into one unitary."""
    n = 1 << gate.arity
    u = np.eye(n, dtype=complex)
    for prim in gate.decomposition:
        u = primitive_unitary(prim, gate.arity) @ u
    return u


def apply_gate(gate: GateDef, bits: Sequence[int]) -> Bits:
    """Functional form of GateDef.apply."""
    return gate.apply(bits)


def _p(kind: PrimitiveKind, target: int, control: int | None = None) -> QuantumPrimitive:
    return QuantumPrimitive(kind, target, control)


NOT_GATE = GateDef(
    name="NOT",
    arity=1,
    permutation=_perm_from_fn(1, lambda b: (b[0] ^ 1,)),
    quantum_cost=1,
    decomposition=(_p(PrimitiveKind.NOT, 0),),
)

# Feynman gate: (A, B) -> (A, A xor B).  The controlled-NOT.
FG = GateDef(
    name="FG",
    arity=2,
    permutation=_perm_from_fn(2, lambda b: (b[0], b[0] ^ b[1])),
    quantum_cost=1,
    decomposition=(_p(PrimitiveKind.CNOT, 1, 0),),
)

# Double Feynman gate: (A, B, C) -> (A, A xor B, A xor C).  Two copies of A.
DFG = GateDef(
    name="DFG",
    arity=3,
    permutation=_perm_from_fn(3, lambda b: (b[0], b[0] ^ b[1], b[0] ^ b[2])),
    quantum_cost=2,
    decomposition=(
        _p(PrimitiveKind.CNOT, 1, 0),
        _p(PrimitiveKind.CNOT, 2, 0),
    ),
)

# Peres gate: (A, B, C) -> (A, A xor B, AB xor C).
PG = GateDef(
    name="PG",
    arity=3,
    permutation=_perm_from_fn(3, lambda b: (b[0], b[0] ^ b[1], (b[0] & b[1]) ^ b[2])),
    quantum_cost=4,
    decomposition=(
        _p(PrimitiveKind.CTRL_V, 2, 1),
        _p(PrimitiveKind.CNOT, 1, 0),
        _p(PrimitiveKind.CTRL_V_DAG, 2, 1),
        _p(PrimitiveKind.CTRL_V, 2, 0),
    ),
)

# Modified Peres gate: Peres with complemented first output,
# (A, B, C) -> (not A, A xor B, AB xor C).  Supplies an inverted clock at
# no extra cost; the final control-flip primitive keeps the length at 4.
MPG = GateDef(
    name="MPG",
    arity=3,
    permutation=_perm_from_fn(
        3, lambda b: (b[0] ^ 1, b[0] ^ b[1], (b[0] & b[1]) ^ b[2])
    ),
    quantum_cost=4,
    decomposition=(
        _p(PrimitiveKind.CTRL_V, 2, 1),
        _p(PrimitiveKind.CNOT, 1, 0),
        _p(PrimitiveKind.CTRL_V_DAG, 2, 1),
        _p(PrimitiveKind.CTRL_V_FLIP, 2, 0),
    ),
)

# Toffoli gate: (A, B, C) -> (A, B, AB xor C).  Controlled-controlled-NOT.
TG = GateDef(
    name="TG",
    arity=3,
    permutation=_perm_from_fn(3, lambda b: (b[0], b[1], (b[0] & b[1]) ^ b[2])),
    quantum_cost=5,
    decomposition=(
        _p(PrimitiveKind.CTRL_V, 2, 1),
        _p(PrimitiveKind.CNOT, 1, 0),
        _p(PrimitiveKind.CTRL_V_DAG, 2, 1),
        _p(PrimitiveKind.CNOT, 1, 0),
        _p(PrimitiveKind.CTRL_V, 2, 0),
    ),
)

#: Gate registry keyed by the exact uppercase names used in netlist files.
GATES: dict[str, GateDef] = {
    g.name: g for g in (NOT_GATE, FG, DFG, PG, MPG, TG)
}


def builtin_gates() -> frozenset[GateDef]:
    """All built-in gates: NOT, FG, DFG, PG, MPG, TG."""
    return frozenset(GATES.values())
