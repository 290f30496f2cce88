"""Hamiltonian constructors: Bose-Hubbard chains, harmonically trapped bosons
with contact interactions, and generic one-/two-body tensors from files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ops import LadderTerm, OperatorSpec, SpecSchemaError

TENSOR_TOL = 1e-10
TERM_PRUNE_TOL = 1e-12


@dataclass(frozen=True)
class BhmParams:
    """Bose-Hubbard chain: hopping J, on-site interaction U."""

    M: int
    N: int
    J: float = 1.0
    U: float = 1.0
    boundary: str = "periodic"

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("need at least two sites")
        if self.N < 1:
            raise ValueError("need at least one particle")
        if self.boundary not in ("open", "periodic"):
            raise ValueError("boundary must be 'open' or 'periodic'")


@dataclass(frozen=True)
class HoParams:
    """Bosons in a harmonic trap (hbar = omega = mass = 1 units by default)
    interacting by contact coupling g, expanded over the lowest M trap
    eigenstates."""

    M: int
    N: int
    omega: float = 1.0
    g: float = 1.0

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("need M >= 1 and N >= 1")


def build_bhm(p: BhmParams) -> OperatorSpec:
    """-J sum_j (adag_j a_{j+1} + H.C.) + U/2 sum_j adag adag a a.

    Periodic boundaries add the wrap edge only for M > 2 (for two sites it
    would duplicate the existing bond).  The on-site term is the diagonal
    occupancy product n(n-1), kept as a ladder monomial so each mapping uses
    its local form.
    """
    terms: list[tuple[complex, LadderTerm]] = []
    edges = [(j, j + 1) for j in range(p.M - 1)]
    if p.boundary == "periodic" and p.M > 2:
        edges.append((p.M - 1, 0))
    if p.J != 0.0:
        for a, b in edges:
            terms.append((complex(-p.J), LadderTerm((a,), (b,), symmetric=True)))
    if p.U != 0.0:
        for j in range(p.M):
            terms.append((complex(p.U / 2), LadderTerm((j, j), (j, j))))
    return OperatorSpec(tuple(terms), label=f"bhm(M={p.M},N={p.N},{p.boundary})")


# ---------------------------------------------------------------------------
# harmonic trap with contact interactions
# ---------------------------------------------------------------------------


def _hermite_function_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """Normalised Hermite functions without the Gaussian: values[n, q]."""
    values = np.zeros((n_max + 1, x.size))
    values[0] = math.pi ** -0.25
    if n_max >= 1:
        values[1] = math.sqrt(2.0) * x * values[0]
    for n in range(1, n_max):
        values[n + 1] = x * math.sqrt(2.0 / (n + 1)) * values[n] - math.sqrt(
            n / (n + 1)
        ) * values[n - 1]
    return values


def v_klmn(k: int, l: int, m: int, n: int, g: float = 1.0) -> float:
    """Contact-interaction matrix element g * integral of four trap modes.

    Gauss-Hermite quadrature after y = sqrt(2) x, with enough nodes to be
    exact for the polynomial degree k+l+m+n; odd total parity vanishes
    identically.
    """
    if min(k, l, m, n) < 0:
        raise ValueError("mode indices must be non-negative")
    degree = k + l + m + n
    if degree % 2 == 1:
        return 0.0
    nodes = max(2, degree // 2 + 1)
    y, w = np.polynomial.hermite.hermgauss(nodes)
    table = _hermite_function_table(max(k, l, m, n), y / math.sqrt(2.0))
    integrand = table[k] * table[l] * table[m] * table[n]
    return float(g / math.sqrt(2.0) * np.dot(w, integrand))


def ho_interaction_tensor(M: int, g: float = 1.0) -> np.ndarray:
    """All V_klmn for modes below M, from one shared 2M-node quadrature."""
    y, w = np.polynomial.hermite.hermgauss(max(2, 2 * M))
    table = _hermite_function_table(M - 1, y / math.sqrt(2.0))
    V = np.einsum("kq,lq,mq,nq,q->klmn", table, table, table, table, w)
    V *= g / math.sqrt(2.0)
    # parity selection: odd k+l+m+n vanishes exactly
    idx = np.indices((M, M, M, M)).sum(axis=0)
    V[idx % 2 == 1] = 0.0
    return V


def build_ho(p: HoParams) -> OperatorSpec:
    """sum_l omega(l+1/2) n_l + (1/2) sum_klmn V_klmn adag_k adag_l a_m a_n,
    dropping interaction elements below the pruning floor."""
    terms: list[tuple[complex, LadderTerm]] = []
    for l in range(p.M):
        terms.append((complex(p.omega * (l + 0.5)), LadderTerm((l,), (l,))))
    V = ho_interaction_tensor(p.M, p.g)
    for k in range(p.M):
        for l in range(p.M):
            for m in range(p.M):
                for n in range(p.M):
                    v = V[k, l, m, n]
                    if abs(v) > TERM_PRUNE_TOL:
                        terms.append(
                            (complex(0.5 * v), LadderTerm((k, l), (m, n)))
                        )
    return OperatorSpec(tuple(terms), label=f"ho(M={p.M},N={p.N})")


# ---------------------------------------------------------------------------
# generic tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericTensors:
    """One-body matrix h and two-body tensor V defining
    sum h_kl adag_k a_l + 1/2 sum V_klmn adag_k adag_l a_m a_n."""

    h: np.ndarray
    V: np.ndarray

    @property
    def M(self) -> int:
        return self.h.shape[0]

    def validate(self, tolerance: float = TENSOR_TOL) -> None:
        if self.h.ndim != 2 or self.h.shape[0] != self.h.shape[1]:
            raise SpecSchemaError("h must be square")
        M = self.h.shape[0]
        if self.V.shape != (M, M, M, M):
            raise SpecSchemaError("V must be M^4")
        if np.abs(self.h - self.h.conj().T).max() > tolerance:
            raise SpecSchemaError("h is not Hermitian")
        if np.abs(self.V - self.V.transpose(1, 0, 3, 2)).max() > tolerance:
            raise SpecSchemaError("V lacks the exchange symmetry V_klmn = V_lknm")
        if np.abs(self.V - self.V.transpose(3, 2, 1, 0).conj()).max() > tolerance:
            raise SpecSchemaError("V is not Hermitian (V_nmlk != conj(V_klmn))")


def build_generic(t: GenericTensors) -> OperatorSpec:
    """Assemble the generic two-body Hamiltonian spec from validated tensors."""
    t.validate()
    M = t.M
    terms: list[tuple[complex, LadderTerm]] = []
    for k in range(M):
        if abs(t.h[k, k]) > TERM_PRUNE_TOL:
            terms.append((complex(t.h[k, k].real), LadderTerm((k,), (k,))))
    for k in range(M):
        for l in range(k + 1, M):
            c = complex(t.h[k, l])
            if abs(c) > TERM_PRUNE_TOL:
                terms.append((c, LadderTerm((k,), (l,), symmetric=True)))
    for quad in np.ndindex(M, M, M, M):
        k, l, m, n = quad
        v = complex(t.V[quad])
        if abs(v) <= TERM_PRUNE_TOL:
            continue
        partner = (n, m, l, k)
        if partner == quad:
            terms.append((v / 2, LadderTerm((k, l), (m, n))))
        elif quad < partner:
            terms.append((v / 2, LadderTerm((k, l), (m, n), symmetric=True)))
    return OperatorSpec(tuple(terms), label="generic")


def bhm_tensors(p: BhmParams) -> GenericTensors:
    """The Bose-Hubbard chain expressed as generic (h, V) tensors."""
    h = np.zeros((p.M, p.M), dtype=complex)
    V = np.zeros((p.M, p.M, p.M, p.M), dtype=complex)
    edges = [(j, j + 1) for j in range(p.M - 1)]
    if p.boundary == "periodic" and p.M > 2:
        edges.append((p.M - 1, 0))
    for a, b in edges:
        h[a, b] += -p.J
        h[b, a] += -p.J
    for j in range(p.M):
        V[j, j, j, j] = p.U
    return GenericTensors(h, V)


def write_tensors(t: GenericTensors, path: str | Path) -> None:
    doc = {
        "M": t.M,
        "h": [[[z.real, z.imag] for z in row] for row in t.h],
        "V": [
            [int(k), int(l), int(m), int(n), t.V[k, l, m, n].real, t.V[k, l, m, n].imag]
            for (k, l, m, n) in np.argwhere(np.abs(t.V) > 0)
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=1))


def ingest_tensors(path: str | Path) -> GenericTensors:
    """Parse and validate a tensor file ({M, h, V} JSON schema)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecSchemaError(f"invalid tensor JSON: {exc}") from exc
    try:
        M = int(doc["M"])
        h_rows = doc["h"]
        v_entries = doc.get("V", [])
    except (KeyError, TypeError) as exc:
        raise SpecSchemaError(f"tensor file missing field: {exc}") from exc
    if len(h_rows) != M or any(len(row) != M for row in h_rows):
        raise SpecSchemaError("h must be an MxM array of [re, im] pairs")
    h = np.array(
        [[complex(entry[0], entry[1]) for entry in row] for row in h_rows]
    )
    V = np.zeros((M, M, M, M), dtype=complex)
    for entry in v_entries:
        if len(entry) != 6:
            raise SpecSchemaError("V entries must be [k, l, m, n, re, im]")
        k, l, m, n = (int(v) for v in entry[:4])
        if not all(0 <= i < M for i in (k, l, m, n)):
            raise SpecSchemaError(f"V index out of range in {entry}")
        V[k, l, m, n] = complex(entry[4], entry[5])
    tensors = GenericTensors(h, V)
    tensors.validate()
    return tensors


def model_spec_from_json(doc: dict) -> OperatorSpec:
    kind = doc.get("kind")
    try:
        if kind == "bhm":
            return build_bhm(
                BhmParams(
                    M=int(doc["M"]),
                    N=int(doc.get("N", 1)),
                    J=float(doc.get("J", 1.0)),
                    U=float(doc.get("U", 1.0)),
                    boundary=doc.get("boundary", "periodic"),
                )
            )
        if kind == "ho":
            return build_ho(
                HoParams(
                    M=int(doc["M"]),
                    N=int(doc.get("N", 1)),
                    omega=float(doc.get("omega", 1.0)),
                    g=float(doc.get("g", 1.0)),
                )
            )
    except (KeyError, ValueError) as exc:
        raise SpecSchemaError(f"bad model document: {exc}") from exc
    raise SpecSchemaError(f"unknown model kind {kind!r}")
