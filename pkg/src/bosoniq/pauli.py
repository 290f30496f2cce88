"""Exact algebra over weighted sums of Pauli strings.

Single strings use arbitrary-precision ints for the symplectic (x, z) parts
plus a discrete phase ``i**phase_pow``.  Sums hold their terms bit-packed in
uint64 word rows (see :mod:`bosoniq._accel`) with the phase of every string
folded into its complex coefficient, so no two stored strings differ only by
phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _accel
from ._accel import WORD_BITS, n_words, pack_int, popcounts, unpack_int

DEFAULT_TOL = 1e-12

_PHASE_VALUES = (1, 1j, -1, -1j)
_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class DimensionError(ValueError):
    """Raised when operands act on different qubit counts."""


def _check_same_qubits(a, b) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"qubit counts differ: {a.n_qubits} != {b.n_qubits}"
        )


@dataclass(frozen=True)
class PauliString:
    """A phased tensor product of I/X/Y/Z factors.

    The operator is ``i**phase_pow`` times the literal letter product; the
    letter on qubit q is X if only the x-bit is set, Z if only the z-bit,
    Y if both.
    """

    n_qubits: int
    x: int = 0
    z: int = 0
    phase_pow: int = 0

    def __post_init__(self):
        limit = 1 << self.n_qubits
        if self.x >= limit or self.z >= limit or self.x < 0 or self.z < 0:
            raise DimensionError("x/z bits exceed qubit count")
        object.__setattr__(self, "phase_pow", self.phase_pow & 3)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse 'X0 Y3' style token lists ('I' alone is the identity)."""
        x = z = 0
        n = 0
        for token in label.split():
            if token == "I":
                continue
            letter, qubit = token[0], int(token[1:])
            xb, zb = _LETTER_BITS[letter]
            x |= xb << qubit
            z |= zb << qubit
            n = max(n, qubit + 1)
        return cls(n, x, z)

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    @property
    def phase(self) -> complex:
        return _PHASE_VALUES[self.phase_pow]

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        bits = self.x | self.z
        return tuple(q for q in range(self.n_qubits) if (bits >> q) & 1)

    def multiply(self, other: "PauliString") -> "PauliString":
        """Product with exact phase: multiply(a, a) is the +1 identity."""
        _check_same_qubits(self, other)
        x3 = self.x ^ other.x
        z3 = self.z ^ other.z
        g = (
            (self.x & self.z).bit_count()
            + (other.x & other.z).bit_count()
            + 2 * (self.z & other.x).bit_count()
            - (x3 & z3).bit_count()
        )
        return PauliString(
            self.n_qubits, x3, z3, (self.phase_pow + other.phase_pow + g) & 3
        )

    def __mul__(self, other: "PauliString") -> "PauliString":
        return self.multiply(other)

    def qubitwise_commutes(self, other: "PauliString") -> bool:
        """True iff on every qubit the factors agree or one is identity."""
        _check_same_qubits(self, other)
        return ((self.x & other.z) ^ (self.z & other.x)) == 0

    def commutes(self, other: "PauliString") -> bool:
        """Full commutation via the symplectic inner product."""
        _check_same_qubits(self, other)
        return ((self.x & other.z) ^ (self.z & other.x)).bit_count() % 2 == 0

    def label(self) -> str:
        if self.x == 0 and self.z == 0:
            return "I"
        return " ".join(f"{self.letter(q)}{q}" for q in self.support)

    def __repr__(self) -> str:
        prefix = {0: "", 1: "i*", 2: "-", 3: "-i*"}[self.phase_pow]
        return f"{prefix}{self.label()}"


def multiply(a: PauliString, b: PauliString) -> PauliString:
    return a.multiply(b)


def qubitwise_commutes(a: PauliString, b: PauliString) -> bool:
    return a.qubitwise_commutes(b)


class PauliSum:
    """A collected map from phase-normalised Pauli strings to coefficients.

    Terms live in parallel arrays ``xs``/``zs`` (T, W) uint64 and ``coeffs``
    (T,) complex128.  Instances are treated as immutable; every operation
    returns a new sum.  Construction via :func:`collect` guarantees unique
    strings, pruned coefficients and canonical term order.
    """

    __slots__ = ("n_qubits", "xs", "zs", "coeffs")

    def __init__(self, n_qubits: int, xs: np.ndarray, zs: np.ndarray, coeffs: np.ndarray):
        self.n_qubits = n_qubits
        self.xs = xs
        self.zs = zs
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        W = n_words(n_qubits)
        return cls(
            n_qubits,
            np.zeros((0, W), dtype=np.uint64),
            np.zeros((0, W), dtype=np.uint64),
            np.zeros(0, dtype=np.complex128),
        )

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        W = n_words(n_qubits)
        return cls(
            n_qubits,
            np.zeros((1, W), dtype=np.uint64),
            np.zeros((1, W), dtype=np.uint64),
            np.array([coeff], dtype=np.complex128),
        )

    @classmethod
    def from_terms(
        cls,
        n_qubits: int,
        terms: Iterable[tuple[complex, PauliString]],
        tolerance: float = DEFAULT_TOL,
    ) -> "PauliSum":
        W = n_words(n_qubits)
        rows_x, rows_z, coeffs = [], [], []
        for coeff, string in terms:
            if string.n_qubits != n_qubits:
                raise DimensionError(
                    f"string on {string.n_qubits} qubits in a {n_qubits}-qubit sum"
                )
            rows_x.append(pack_int(string.x, W))
            rows_z.append(pack_int(string.z, W))
            coeffs.append(coeff * string.phase)
        if not rows_x:
            return cls.zero(n_qubits)
        raw = cls(
            n_qubits,
            np.array(rows_x, dtype=np.uint64),
            np.array(rows_z, dtype=np.uint64),
            np.array(coeffs, dtype=np.complex128),
        )
        return raw.collect(tolerance)

    @classmethod
    def from_int_terms(
        cls, n_qubits: int, terms: Sequence[tuple[complex, int, int]]
    ) -> "PauliSum":
        """Uncollected sum from (coeff, x_int, z_int) rows."""
        W = n_words(n_qubits)
        xs = np.zeros((len(terms), W), dtype=np.uint64)
        zs = np.zeros((len(terms), W), dtype=np.uint64)
        coeffs = np.zeros(len(terms), dtype=np.complex128)
        for t, (c, x, z) in enumerate(terms):
            xs[t] = pack_int(x, W)
            zs[t] = pack_int(z, W)
            coeffs[t] = c
        return cls(n_qubits, xs, zs, coeffs)

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return self.xs.shape[0]

    @property
    def n_terms(self) -> int:
        return self.xs.shape[0]

    def weights(self) -> np.ndarray:
        return popcounts(self.xs | self.zs)

    def strings(self) -> Iterator[tuple[complex, PauliString]]:
        for t in range(len(self)):
            yield complex(self.coeffs[t]), PauliString(
                self.n_qubits, unpack_int(self.xs[t]), unpack_int(self.zs[t])
            )

    def coefficient(self, string: PauliString) -> complex:
        """Coefficient of a string (0 if absent); folds the query's phase."""
        W = self.xs.shape[1]
        xrow = pack_int(string.x, W)
        zrow = pack_int(string.z, W)
        hit = ((self.xs == xrow) & (self.zs == zrow)).all(axis=1)
        idx = np.flatnonzero(hit)
        if idx.size == 0:
            return 0.0
        return complex(self.coeffs[idx[0]]) / string.phase

    def is_hermitian(self, tolerance: float = DEFAULT_TOL) -> bool:
        """Hermitian iff every folded coefficient is real."""
        return bool(np.all(np.abs(self.coeffs.imag) <= tolerance))

    # -- algebra -------------------------------------------------------------

    def collect(self, tolerance: float = DEFAULT_TOL, canonical: bool = True) -> "PauliSum":
        """Merge equal strings, prune |coeff| <= tolerance, canonical order.

        canonical=False skips the deterministic reordering; used for
        intermediate merges where only uniqueness matters.
        """
        if len(self) == 0:
            return PauliSum.zero(self.n_qubits)
        key = np.concatenate([self.xs, self.zs], axis=1)
        order = np.lexsort(key.T[::-1])
        key = key[order]
        coeffs = self.coeffs[order]
        boundaries = np.empty(key.shape[0], dtype=bool)
        boundaries[0] = True
        boundaries[1:] = (key[1:] != key[:-1]).any(axis=1)
        starts = np.flatnonzero(boundaries)
        summed = np.add.reduceat(coeffs, starts)
        keep = np.abs(summed) > tolerance
        key = key[starts[keep]]
        summed = summed[keep]
        W = self.xs.shape[1]
        out = PauliSum(self.n_qubits, key[:, :W].copy(), key[:, W:].copy(), summed)
        return out._canonical_order() if canonical else out

    def _canonical_order(self) -> "PauliSum":
        """Sort terms by (weight, support qubits, letters), ascending."""
        T = len(self)
        if T <= 1:
            return self
        n = self.n_qubits
        codes = np.zeros((T, n), dtype=np.uint8)
        for q in range(n):
            w, b = divmod(q, WORD_BITS)
            xb = ((self.xs[:, w] >> np.uint64(b)) & np.uint64(1)).astype(np.uint8)
            zb = ((self.zs[:, w] >> np.uint64(b)) & np.uint64(1)).astype(np.uint8)
            # identity sorts after any letter so lower supports come first
            codes[:, q] = np.where(
                (xb | zb) == 0, 4, np.where(xb & zb == 1, 2, np.where(xb == 1, 1, 3))
            )
        weights = self.weights().astype(np.uint16)
        blob = np.empty((T, 2 + n), dtype=np.uint8)
        blob[:, 0] = weights >> 8
        blob[:, 1] = weights & 0xFF
        blob[:, 2:] = codes
        # letter codes are nonzero, so fixed-width byte keys never carry a
        # trailing NUL and S-dtype comparison is plain lexicographic order
        key = np.frombuffer(np.ascontiguousarray(blob).tobytes(), dtype=f"S{2 + n}")
        order = np.argsort(key, kind="stable")
        return PauliSum(
            self.n_qubits, self.xs[order], self.zs[order], self.coeffs[order]
        )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        _check_same_qubits(self, other)
        return PauliSum(
            self.n_qubits,
            np.concatenate([self.xs, other.xs]),
            np.concatenate([self.zs, other.zs]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def scale(self, factor: complex) -> "PauliSum":
        return PauliSum(self.n_qubits, self.xs, self.zs, self.coeffs * factor)

    def dagger(self) -> "PauliSum":
        """Hermitian conjugate: strings are self-adjoint, so conjugate coeffs."""
        return PauliSum(self.n_qubits, self.xs, self.zs, self.coeffs.conj())

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        return self.product(other)

    def product_raw(self, other: "PauliSum") -> "PauliSum":
        """All-pairs product without collection (callers collect once)."""
        _check_same_qubits(self, other)
        if len(self) == 0 or len(other) == 0:
            return PauliSum.zero(self.n_qubits)
        x3, z3, c3 = _accel.pair_products(
            np.ascontiguousarray(self.xs),
            np.ascontiguousarray(self.zs),
            np.ascontiguousarray(self.coeffs),
            other.xs,
            other.zs,
            other.coeffs,
        )
        return PauliSum(self.n_qubits, x3, z3, c3)

    def product(
        self,
        other: "PauliSum",
        tolerance: float = DEFAULT_TOL,
        chunk_rows: int = 1 << 21,
    ) -> "PauliSum":
        """Operator product, chunked so A*B expansions stay in memory."""
        _check_same_qubits(self, other)
        A, B = len(self), len(other)
        if A == 0 or B == 0:
            return PauliSum.zero(self.n_qubits)
        rows_per_chunk = max(1, chunk_rows // max(B, 1))
        pieces = []
        for start in range(0, A, rows_per_chunk):
            stop = min(A, start + rows_per_chunk)
            x3, z3, c3 = _accel.pair_products(
                np.ascontiguousarray(self.xs[start:stop]),
                np.ascontiguousarray(self.zs[start:stop]),
                np.ascontiguousarray(self.coeffs[start:stop]),
                other.xs,
                other.zs,
                other.coeffs,
            )
            pieces.append(PauliSum(self.n_qubits, x3, z3, c3).collect(tolerance))
        if len(pieces) == 1:
            return pieces[0]
        return concatenate(pieces).collect(tolerance)

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        """One canonical '(coeff) X0 Y3' line per term."""
        lines = []
        for coeff, string in self.strings():
            lines.append(f"{coeff} {string.label()}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"PauliSum(n_qubits={self.n_qubits}, n_terms={len(self)})"


def concatenate(sums: Sequence[PauliSum]) -> PauliSum:
    """Stack term lists without collecting."""
    if not sums:
        raise ValueError("need at least one sum")
    n = sums[0].n_qubits
    for s in sums:
        if s.n_qubits != n:
            raise DimensionError("qubit counts differ")
    return PauliSum(
        n,
        np.concatenate([s.xs for s in sums]),
        np.concatenate([s.zs for s in sums]),
        np.concatenate([s.coeffs for s in sums]),
    )


def collect(
    terms: Iterable[tuple[complex, PauliString]],
    tolerance: float = DEFAULT_TOL,
    n_qubits: int | None = None,
) -> PauliSum:
    """Collect (coeff, string) pairs into a canonical PauliSum."""
    terms = list(terms)
    if n_qubits is None:
        if not terms:
            raise ValueError("n_qubits required for an empty term list")
        n_qubits = terms[0][1].n_qubits
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    return PauliSum.from_terms(n_qubits, terms, tolerance)


def sums_close(a: PauliSum, b: PauliSum, tolerance: float = 1e-10) -> bool:
    """Equality up to coefficient tolerance (both collected)."""
    a = a.collect(0.0)
    b = b.collect(0.0)
    if a.n_qubits != b.n_qubits or len(a) != len(b):
        return False
    return (
        np.array_equal(a.xs, b.xs)
        and np.array_equal(a.zs, b.zs)
        and np.allclose(a.coeffs, b.coeffs, atol=tolerance, rtol=0.0)
    )
