"""Register-to-qubit layouts for the four bosonic encodings.

U1Q/B1Q use one register per particle holding its mode index (one-hot vs
base-2); U2Q/B2Q use one register per mode holding its occupation (one-hot
vs base-2, local dimension d, default N+1).  Registers are laid out
sequentially: qubit = register * register_width + offset.  In binary
registers offset 0 is the least significant bit of the stored index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KINDS = ("U1Q", "B1Q", "U2Q", "B2Q")
FIRST_QUANTIZED = ("U1Q", "B1Q")
SECOND_QUANTIZED = ("U2Q", "B2Q")


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class EncodingLayout:
    """One of the four mappings together with its system size.

    N: particle count, M: mode/site count, d: local dimension for the
    second-quantized kinds (defaults to N+1 so the full N-particle sector
    fits).
    """

    kind: str
    N: int
    M: int
    d: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown encoding kind {self.kind!r}")
        if self.N < 1 or self.M < 1:
            raise ValueError("need N >= 1 and M >= 1")
        if self.is_second_quantized:
            d = self.d if self.d is not None else self.N + 1
            if d < 2:
                raise ValueError("local dimension must be >= 2")
            object.__setattr__(self, "d", d)
        else:
            object.__setattr__(self, "d", None)

    @property
    def is_first_quantized(self) -> bool:
        return self.kind in FIRST_QUANTIZED

    @property
    def is_second_quantized(self) -> bool:
        return self.kind in SECOND_QUANTIZED

    @property
    def is_unary(self) -> bool:
        return self.kind in ("U1Q", "U2Q")

    @property
    def register_width(self) -> int:
        if self.kind == "U1Q":
            return self.M
        if self.kind == "B1Q":
            return ceil_log2(self.M) if self.M > 1 else 0
        if self.kind == "U2Q":
            return self.d
        return ceil_log2(self.d)

    @property
    def n_registers(self) -> int:
        return self.N if self.is_first_quantized else self.M

    @property
    def n_qubits(self) -> int:
        return self.n_registers * self.register_width

    @property
    def local_levels(self) -> int:
        """Number of states a register can hold (M for 1Q, d for 2Q)."""
        return self.M if self.is_first_quantized else self.d

    def qubit(self, register: int, offset: int) -> int:
        if not 0 <= register < self.n_registers:
            raise IndexError(f"register {register} out of range")
        if not 0 <= offset < self.register_width:
            raise IndexError(f"offset {offset} out of range")
        return register * self.register_width + offset


def qubit_count(kind: str, N: int, M: int, d: int | None = None) -> int:
    """Total qubits for a mapping without building operators."""
    return EncodingLayout(kind, N, M, d).n_qubits
