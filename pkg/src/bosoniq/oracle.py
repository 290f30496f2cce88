"""Brute-force ground truth for every encoding.

Enumerates the physical basis (occupation vectors for second quantization,
distinguishable register tuples for first quantization), builds exact
operator matrices from ladder algebra, embeds physical states into the
2^n computational space, and compares against compiled Pauli sums column by
column -- no 2^n x 2^n matrix is ever materialised for verification.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .encode import encode_operator
from .layout import EncodingLayout, ceil_log2
from .ops import (
    DensityCorrelation,
    LadderTerm,
    LocalOperator,
    NumberPower,
    OperatorSpec,
)
from .pauli import PauliSum

MAX_BASIS = 1 << 20
MAX_DENSE_QUBITS = 10
MAX_MATRIX_QUBITS = 20


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


@dataclass(frozen=True)
class FockBasis:
    """Ordered physical basis: 'second' holds occupation vectors, 'first'
    holds mode-index tuples of the distinguishable register space."""

    kind: str  # "second" | "first"
    N: int
    M: int
    d: int | None
    states: tuple[tuple[int, ...], ...]

    @classmethod
    def second_quantized(cls, M: int, d: int, total: int | None = None) -> "FockBasis":
        if d**M > MAX_BASIS:
            raise ValueError(f"basis of size {d}^{M} exceeds the {MAX_BASIS} guard")
        states = tuple(
            s
            for s in itertools.product(range(d), repeat=M)
            if total is None or sum(s) == total
        )
        return cls("second", total if total is not None else -1, M, d, states)

    @classmethod
    def first_quantized(cls, N: int, M: int) -> "FockBasis":
        if M**N > MAX_BASIS:
            raise ValueError(f"basis of size {M}^{N} exceeds the {MAX_BASIS} guard")
        states = tuple(itertools.product(range(M), repeat=N))
        return cls("first", N, M, None, states)

    @classmethod
    def for_layout(cls, layout: EncodingLayout) -> "FockBasis":
        if layout.is_second_quantized:
            return cls.second_quantized(layout.M, layout.d)
        return cls.first_quantized(layout.N, layout.M)

    def __len__(self) -> int:
        return len(self.states)

    def index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.states)}


@dataclass(frozen=True)
class EmbeddingMap:
    """Injective map from basis labels to computational-basis integers."""

    basis: FockBasis
    layout: EncodingLayout
    codes: np.ndarray  # (len(basis),) uint64

    @classmethod
    def build(cls, basis: FockBasis, layout: EncodingLayout) -> "EmbeddingMap":
        if layout.n_qubits > 64:
            raise ValueError("embedding verification supports up to 64 qubits")
        width = layout.register_width
        codes = np.zeros(len(basis), dtype=np.uint64)
        for i, state in enumerate(basis.states):
            code = 0
            for register, value in enumerate(state):
                if layout.is_unary:
                    code |= 1 << (register * width + value)
                else:
                    code |= value << (register * width)
            codes[i] = code
        if len(np.unique(codes)) != len(codes):
            raise AssertionError("embedding is not injective")
        return cls(basis, layout, codes)


# ---------------------------------------------------------------------------
# exact matrices
# ---------------------------------------------------------------------------


def _ladder_matrix_second(
    creates: Sequence[int], annihilates: Sequence[int], basis: FockBasis
) -> np.ndarray:
    D = len(basis)
    index = basis.index()
    mat = np.zeros((D, D), dtype=np.complex128)
    d = basis.d
    for col, state in enumerate(basis.states):
        occ = list(state)
        amp = 1.0
        dead = False
        for m in reversed(annihilates):
            if occ[m] == 0:
                dead = True
                break
            amp *= math.sqrt(occ[m])
            occ[m] -= 1
        if dead:
            continue
        for l in reversed(creates):
            occ[l] += 1
            if occ[l] > d - 1:
                dead = True
                break
            amp *= math.sqrt(occ[l])
        if dead:
            continue
        mat[index[tuple(occ)], col] += amp
    return mat


def _one_body_matrix_first(l: int, m: int, basis: FockBasis) -> np.ndarray:
    D = len(basis)
    index = basis.index()
    mat = np.zeros((D, D), dtype=np.complex128)
    for col, state in enumerate(basis.states):
        for alpha, value in enumerate(state):
            if value == m:
                target = state[:alpha] + (l,) + state[alpha + 1 :]
                mat[index[target], col] += 1.0
    return mat


def _ladder_matrix_first(
    creates: Sequence[int], annihilates: Sequence[int], basis: FockBasis
) -> np.ndarray:
    k = len(creates)
    if k > basis.N:
        # a normal-ordered k-body term annihilates every state of fewer
        # than k particles
        return np.zeros((len(basis), len(basis)), dtype=np.complex128)
    pairs = [(creates[j], annihilates[k - 1 - j]) for j in range(k)]
    all_indices = tuple(creates) + tuple(annihilates)
    if len(set(all_indices)) == len(all_indices):
        mat = _one_body_matrix_first(*pairs[0], basis)
        for l, m in pairs[1:]:
            mat = mat @ _one_body_matrix_first(l, m, basis)
        return mat
    D = len(basis)
    index = basis.index()
    mat = np.zeros((D, D), dtype=np.complex128)
    for col, state in enumerate(basis.states):
        for regs in itertools.permutations(range(basis.N), k):
            if all(state[regs[j]] == pairs[j][1] for j in range(k)):
                target = list(state)
                for j in range(k):
                    target[regs[j]] = pairs[j][0]
                mat[index[tuple(target)], col] += 1.0
    return mat


def _monomial_matrix(mono, basis: FockBasis) -> np.ndarray:
    D = len(basis)
    if isinstance(mono, LadderTerm):
        if basis.kind == "second":
            return _ladder_matrix_second(mono.creates, mono.annihilates, basis)
        return _ladder_matrix_first(mono.creates, mono.annihilates, basis)
    if isinstance(mono, NumberPower):
        diag = np.zeros(D, dtype=np.complex128)
        for i, state in enumerate(basis.states):
            if basis.kind == "second":
                diag[i] = state[mono.site] ** mono.power
            else:
                count = sum(1 for v in state if v == mono.site)
                diag[i] = _falling(count, mono.power)
        return np.diag(diag)
    if isinstance(mono, DensityCorrelation):
        diag = np.zeros(D, dtype=np.complex128)
        for i, state in enumerate(basis.states):
            value = 1
            for site in mono.sites:
                if basis.kind == "second":
                    value *= state[site]
                else:
                    value *= sum(1 for v in state if v == site)
            diag[i] = value
        return np.diag(diag)
    if isinstance(mono, LocalOperator):
        if basis.kind != "second":
            raise ValueError("bare ladder powers are second-quantized only")
        creates = (mono.site,) * mono.power if mono.which == "create" else ()
        annihilates = (mono.site,) * mono.power if mono.which == "annihilate" else ()
        return _ladder_matrix_second(creates, annihilates, basis)
    raise TypeError(f"unknown monomial {mono!r}")


def exact_matrix(spec: OperatorSpec, basis: FockBasis) -> np.ndarray:
    """Exact operator matrix on the physical basis (ladder algebra truth)."""
    if len(basis) > MAX_BASIS:
        raise ValueError("basis too large")
    total = np.zeros((len(basis), len(basis)), dtype=np.complex128)
    for coeff, mono in spec.terms:
        mat = _monomial_matrix(mono, basis)
        total += coeff * mat
        if isinstance(mono, LadderTerm) and mono.symmetric:
            total += complex(coeff).conjugate() * mat.conj().T
    return total


# ---------------------------------------------------------------------------
# Pauli-side matrices
# ---------------------------------------------------------------------------


def pauli_matrix(s: PauliSum, dense: bool | None = None):
    """2^n matrix of a PauliSum (dense ndarray, or CSR beyond 2^10)."""
    n = s.n_qubits
    if n > MAX_MATRIX_QUBITS:
        raise ValueError(f"refusing to build a 2^{n} matrix")
    if dense is None:
        dense = n <= MAX_DENSE_QUBITS
    dim = 1 << n
    cols = np.arange(dim, dtype=np.uint64)
    if len(s) == 0:
        if dense:
            return np.zeros((dim, dim), dtype=np.complex128)
        from scipy.sparse import csr_matrix

        return csr_matrix((dim, dim), dtype=np.complex128)
    targets, amps = _accel.apply_to_codes(
        s.xs[:, 0].copy(), s.zs[:, 0].copy(), s.coeffs, cols
    )
    rows = targets.ravel().astype(np.int64)
    col_idx = np.tile(cols.astype(np.int64), len(s))
    vals = amps.ravel()
    if dense:
        mat = np.zeros((dim, dim), dtype=np.complex128)
        np.add.at(mat, (rows, col_idx), vals)
        return mat
    from scipy.sparse import coo_matrix

    return coo_matrix((vals, (rows, col_idx)), shape=(dim, dim)).tocsr()


def restricted_matrix(
    s: PauliSum, embedding: EmbeddingMap
) -> tuple[np.ndarray, float]:
    """Compiled operator restricted to embedded states, plus max leakage
    amplitude into non-embedded computational states."""
    codes = embedding.codes
    D = len(codes)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    if len(s) == 0:
        return np.zeros((D, D), dtype=np.complex128), 0.0
    targets, amps = _accel.apply_to_codes(
        s.xs[:, 0].copy(), s.zs[:, 0].copy(), s.coeffs, codes
    )
    flat_targets = targets.ravel()
    flat_amps = amps.ravel()
    cols = np.tile(np.arange(D, dtype=np.int64), len(s))
    pos = np.searchsorted(sorted_codes, flat_targets)
    pos_clipped = np.minimum(pos, D - 1)
    found = sorted_codes[pos_clipped] == flat_targets
    mat = np.zeros((D, D), dtype=np.complex128)
    np.add.at(mat, (order[pos_clipped[found]], cols[found]), flat_amps[found])
    # amplitudes that leave the code space must themselves cancel, so group
    # them by (target, column) before measuring the leakage
    leak_amps = flat_amps[~found]
    leakage = 0.0
    if leak_amps.size:
        leak_targets = flat_targets[~found]
        leak_cols = cols[~found]
        sort_idx = np.lexsort((leak_cols, leak_targets))
        leak_targets = leak_targets[sort_idx]
        leak_cols = leak_cols[sort_idx]
        grouped = leak_amps[sort_idx]
        new_group = np.concatenate(
            (
                [True],
                (leak_targets[1:] != leak_targets[:-1])
                | (leak_cols[1:] != leak_cols[:-1]),
            )
        )
        sums = np.add.reduceat(grouped, np.flatnonzero(new_group))
        leakage = float(np.abs(sums).max())
    return mat, leakage


@dataclass
class VerifyReport:
    label: str
    kind: str
    N: int
    M: int
    d: int | None
    n_qubits: int
    n_strings: int
    max_abs_error: float
    leakage: float
    swap_error: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "spec": self.label,
            "layout": {"kind": self.kind, "N": self.N, "M": self.M, "d": self.d},
            "n_qubits": self.n_qubits,
            "n_strings": self.n_strings,
            "max_abs_error": self.max_abs_error,
            "leakage": self.leakage,
            "swap_error": self.swap_error,
            "pass": self.passed,
        }


def verify(
    spec: OperatorSpec,
    layout: EncodingLayout,
    tolerance: float = 1e-10,
    corrupt: bool = False,
) -> VerifyReport:
    """Compare the compiled PauliSum against the exact physical matrix.

    Checks entrywise agreement on the embedded subspace, that the compiled
    operator does not couple code states to non-code states (for particle
    conserving specs), and register-exchange symmetry for first-quantized
    layouts.  ``corrupt`` scales one coefficient to provide a negative
    control.
    """
    basis = FockBasis.for_layout(layout)
    embedding = EmbeddingMap.build(basis, layout)
    compiled = encode_operator(spec, layout)
    if corrupt and len(compiled):
        coeffs = compiled.coeffs.copy()
        coeffs[0] *= 1.01
        compiled = PauliSum(compiled.n_qubits, compiled.xs, compiled.zs, coeffs)
    exact = exact_matrix(spec, basis)
    restricted, leakage = restricted_matrix(compiled, embedding)
    max_err = float(np.abs(restricted - exact).max()) if len(basis) else 0.0

    swap_error = 0.0
    if layout.is_first_quantized and layout.N > 1:
        index = basis.index()
        for alpha in range(layout.N - 1):
            perm = np.array(
                [
                    index[
                        s[:alpha] + (s[alpha + 1], s[alpha]) + s[alpha + 2 :]
                    ]
                    for s in basis.states
                ],
                dtype=np.int64,
            )
            swapped = restricted[np.ix_(perm, perm)]
            swap_error = max(swap_error, float(np.abs(swapped - restricted).max()))

    passed = max_err <= tolerance and swap_error <= tolerance
    if spec.conserves_particles:
        passed = passed and leakage <= tolerance
    return VerifyReport(
        label=spec.label or "operator",
        kind=layout.kind,
        N=layout.N,
        M=layout.M,
        d=layout.d,
        n_qubits=layout.n_qubits,
        n_strings=len(compiled),
        max_abs_error=max_err,
        leakage=leakage,
        swap_error=swap_error,
        tolerance=tolerance,
        passed=passed,
    )


def small_case_suite(
    n_max: int = 3, m_max: int = 4, d_max: int = 4
) -> list[tuple[OperatorSpec, EncodingLayout]]:
    """The full small-instance verification grid used by `verify --all-small`.

    Covers transition terms (orders 1 and 2, symmetric and not, repeated
    indices), density powers up to cubic, density correlations, the
    Bose-Hubbard chain and the trapped-interacting model, across all four
    mappings and N <= 3, M <= 4, d <= 4.
    """
    from .models import BhmParams, HoParams, build_bhm, build_ho

    cases: list[tuple[OperatorSpec, EncodingLayout]] = []
    for N in range(1, n_max + 1):
        for M in range(2, m_max + 1):
            specs: list[OperatorSpec] = []

            def add(spec, name):
                spec = OperatorSpec(spec.terms, name)
                specs.append(spec)

            add(OperatorSpec.rdm_term([0], [1]), "rdm1(0;1)")
            add(OperatorSpec.rdm_term([0], [1], symmetric=True), "rdm1_sym(0;1)")
            add(OperatorSpec.rdm_term([0], [0]), "rdm1_diag(0;0)")
            if N >= 2:
                if M >= 4:
                    add(OperatorSpec.rdm_term([0, 2], [1, 3]), "rdm2(02;13)")
                    add(
                        OperatorSpec.rdm_term([0, 2], [1, 3], symmetric=True),
                        "rdm2_sym(02;13)",
                    )
                add(OperatorSpec.rdm_term([0, 0], [1, 1], True), "rdm2_sym(00;11)")
                add(OperatorSpec.rdm_term([0, 0], [0, 0]), "rdm2_diag(00;00)")
                if M >= 3:
                    add(OperatorSpec.rdm_term([0, 1], [1, 2]), "rdm2(01;12)")
            for power in (1, 2, 3):
                add(OperatorSpec.number_power(0, power), f"number_power(0,{power})")
            add(OperatorSpec.density_correlation([0, 1]), "density_corr(0,1)")
            if M >= 3:
                add(OperatorSpec.density_correlation([0, 1, 2]), "density_corr(0,1,2)")
            add(build_bhm(BhmParams(M=M, N=N, J=1.0, U=2.0)), f"bhm(M={M},N={N})")
            if M <= 3:
                add(build_ho(HoParams(M=M, N=N)), f"ho(M={M},N={N})")

            for kind in ("U1Q", "B1Q", "U2Q", "B2Q"):
                layout = EncodingLayout(kind, N=N, M=M)
                if layout.is_second_quantized and layout.d > d_max:
                    continue
                for spec in specs:
                    if layout.is_first_quantized and len(spec.terms) == 1:
                        mono = spec.terms[0][1]
                        if isinstance(mono, LadderTerm) and mono.order > N:
                            # bare k-body elements need k particles; inside
                            # Hamiltonians they compile to the empty sum
                            continue
                    cases.append((spec, layout))

    # truncated local dimensions (d < N+1) exercise the d override
    for d in (2, 3):
        for kind in ("U2Q", "B2Q"):
            layout = EncodingLayout(kind, N=3, M=2, d=d)
            sym = OperatorSpec.rdm_term([0], [1], symmetric=True)
            cases.append((OperatorSpec(sym.terms, f"rdm1_sym(0;1)[d={d}]"), layout))
            npow = OperatorSpec.number_power(0, 2)
            cases.append((OperatorSpec(npow.terms, f"number_power(0,2)[d={d}]"), layout))
    return cases
