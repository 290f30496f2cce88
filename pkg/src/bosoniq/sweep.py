"""Grid sweeps over (mapping, N, M) emitting deterministic CSV artifacts.

One row per grid point with the full resource report plus the closed-form
columns where they exist.  Metadata rides in '#'-prefixed header lines;
rows are sorted on a fixed key so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

from . import __version__
from .encode import encode_operator
from .layout import EncodingLayout, ceil_log2
from .models import BhmParams, HoParams, build_bhm, build_ho
from .ops import OperatorSpec
from .resources import analytic_counts, gate_counts

CSV_COLUMNS = [
    "family",
    "mapping",
    "index_policy",
    "N",
    "M",
    "k",
    "d",
    "n_qubits",
    "n_strings",
    "n_rz",
    "n_cnot",
    "n_bwcp_groups",
    "n_rz_analytic",
    "n_cnot_analytic",
    "status",
]

FAMILIES = ("rdm1", "rdm2", "bhm", "ho")


@dataclass
class SweepConfig:
    family: str
    mappings: list[str] = field(default_factory=lambda: ["U1Q", "B1Q", "U2Q", "B2Q"])
    N_list: list[int] = field(default_factory=lambda: [3])
    M_list: list[int] = field(default_factory=lambda: [4, 8, 16, 32])
    b1q_policies: list[str] = field(
        default_factory=lambda: ["min_hamming", "max_hamming"]
    )
    symmetric: bool = True
    d: int | None = None  # None: d = N+1
    J: float = 1.0
    U: float = 1.0
    omega: float = 1.0
    g: float = 1.0
    boundary: str = "periodic"
    output: str = "sweep.csv"
    jobs: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not self.mappings or not self.N_list or not self.M_list:
            raise ValueError("mappings, N_list and M_list must be non-empty")
        for mapping in self.mappings:
            if mapping not in ("U1Q", "B1Q", "U2Q", "B2Q"):
                raise ValueError(f"unknown mapping {mapping!r}")
        for policy in self.b1q_policies:
            if policy not in ("min_hamming", "max_hamming"):
                raise ValueError(f"unknown index policy {policy!r}")

    @classmethod
    def from_json(cls, doc: dict | str) -> "SweepConfig":
        if isinstance(doc, str):
            doc = json.loads(doc)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**doc)

    def to_json(self) -> dict:
        return asdict(self)


def max_hamming_index(M: int, reference: int = 0) -> int:
    """Valid index (< M) farthest from the reference in Hamming distance;
    ties resolve to the smallest index."""
    best, best_distance = None, -1
    for idx in range(M):
        if idx == reference:
            continue
        distance = bin(idx ^ reference).count("1")
        if distance > best_distance:
            best, best_distance = idx, distance
    return best


def rdm_indices(
    family: str, mapping: str, policy: str, M: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Mode indices for the swept transition element.

    Non-binary-register mappings use (0;1) and (0,2;1,3).  For B1Q the
    min-Hamming variant keeps nearest-index pairs while max-Hamming pairs
    each transition with the farthest valid index (slot pairing l_j with
    m_{k+1-j}).  Returns None when M cannot host distinct indices.
    """
    k = 1 if family == "rdm1" else 2
    if M < 2 * k:
        return None
    if mapping != "B1Q" or policy == "":
        return ((0,), (1,)) if k == 1 else ((0, 2), (1, 3))
    if k == 1:
        if policy == "min_hamming":
            return ((0,), (1,))
        return ((0,), (max_hamming_index(M),))
    if policy == "min_hamming":
        # slot pairs (0,1) and (3,2): Hamming distance 1 each
        return ((0, 3), (2, 1))
    first = max_hamming_index(M)
    remaining = [i for i in range(M) if i not in (0, first)]
    best = None
    best_distance = -1
    for c2 in remaining:
        for a1 in remaining:
            if a1 == c2:
                continue
            distance = bin(c2 ^ a1).count("1")
            if distance > best_distance:
                best, best_distance = (c2, a1), distance
    c2, a1 = best
    return ((0, c2), (a1, first))


def _grid_point_row(cfg: SweepConfig, mapping: str, policy: str, N: int, M: int):
    family = cfg.family
    k = {"rdm1": 1, "rdm2": 2}.get(family, 0)
    row = {
        "family": family,
        "mapping": mapping,
        "index_policy": policy,
        "N": N,
        "M": M,
        "k": k,
        "status": "ok",
    }
    try:
        layout = EncodingLayout(mapping, N=N, M=M, d=cfg.d)
        row["d"] = layout.d if layout.is_second_quantized else ""
        row["n_qubits"] = layout.n_qubits
        if family in ("rdm1", "rdm2"):
            indices = rdm_indices(family, mapping, policy, M)
            if indices is None:
                return None
            if layout.is_first_quantized and k > N:
                return None
            spec = OperatorSpec.rdm_term(indices[0], indices[1], cfg.symmetric)
        elif family == "bhm":
            spec = build_bhm(
                BhmParams(M=M, N=N, J=cfg.J, U=cfg.U, boundary=cfg.boundary)
            )
        else:
            spec = build_ho(HoParams(M=M, N=N, omega=cfg.omega, g=cfg.g))
        compiled = encode_operator(spec, layout)
        report = gate_counts(compiled)
        row["n_strings"] = report.n_strings
        row["n_rz"] = report.n_rz
        row["n_cnot"] = report.n_cnot
        row["n_bwcp_groups"] = report.n_bwcp_groups

        row["n_rz_analytic"] = ""
        row["n_cnot_analytic"] = ""
        if mapping in ("U1Q", "U2Q"):
            if family in ("rdm1", "rdm2"):
                closed = analytic_counts(
                    "kRDM_ODT", mapping, N=N, M=M, k=k, d=cfg.d, symmetric=cfg.symmetric
                )
                row["n_rz_analytic"] = closed["n_rz"]
                row["n_cnot_analytic"] = closed["n_cnot"]
            elif family == "bhm" and cfg.boundary == "periodic":
                closed = analytic_counts("BHM_PBC", mapping, N=N, M=M)
                row["n_rz_analytic"] = closed["n_rz"]
                row["n_cnot_analytic"] = closed["n_cnot"]
    except Exception as exc:  # per-point failures never abort the sweep
        row["status"] = f"error:{type(exc).__name__}:{exc}"
        for column in CSV_COLUMNS:
            row.setdefault(column, "")
    return row


def _worker(args):
    cfg_doc, mapping, policy, N, M = args
    return _grid_point_row(SweepConfig.from_json(cfg_doc), mapping, policy, N, M)


def run_sweep(cfg: SweepConfig) -> list[dict]:
    """All grid rows in deterministic order (invalid combinations omitted)."""
    points = []
    for mapping in cfg.mappings:
        policies = (
            cfg.b1q_policies
            if (mapping == "B1Q" and cfg.family in ("rdm1", "rdm2"))
            else [""]
        )
        for policy in policies:
            for N in cfg.N_list:
                for M in cfg.M_list:
                    points.append((mapping, policy, N, M))
    if cfg.jobs > 1:
        cfg_doc = cfg.to_json()
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(
                pool.map(_worker, [(cfg_doc, *point) for point in points])
            )
    else:
        rows = [_grid_point_row(cfg, *point) for point in points]
    rows = [r for r in rows if r is not None]
    rows.sort(
        key=lambda r: (r["family"], r["mapping"], r["index_policy"], r["N"], r["M"])
    )
    return rows


def sweep_metadata(cfg: SweepConfig) -> list[str]:
    lines = [
        f"# bosoniq_version: {__version__}",
        f"# family: {cfg.family}",
        f"# mappings: {','.join(cfg.mappings)}",
        f"# symmetric: {cfg.symmetric}",
        f"# d_policy: {'N+1' if cfg.d is None else cfg.d}",
        "# b1q_max_policy: farthest valid index from 0 (ties to smallest)",
    ]
    if cfg.family == "bhm":
        lines.append(f"# boundary: {cfg.boundary}")
        lines.append(f"# J: {cfg.J}")
        lines.append(f"# U: {cfg.U}")
    if cfg.family == "ho":
        lines.append(f"# omega: {cfg.omega}")
        lines.append(f"# g: {cfg.g}")
    return lines


def write_csv(cfg: SweepConfig, rows: list[dict], path: str | Path) -> None:
    lines = sweep_metadata(cfg)
    lines.append(",".join(CSV_COLUMNS))
    for row in rows:
        lines.append(",".join(str(row.get(col, "")) for col in CSV_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def run_and_write(cfg: SweepConfig, path: str | Path | None = None) -> Path:
    out = Path(path if path is not None else cfg.output)
    rows = run_sweep(cfg)
    write_csv(cfg, rows, out)
    return out
