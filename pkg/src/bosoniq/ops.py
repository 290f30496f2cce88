"""Symbolic bosonic operators: the compilation source.

A monomial is one of

* :class:`LadderTerm` -- prod_j adag_{l_j} prod_j a_{m_j} (a k-body density
  matrix element when |l| == |m| == k), optionally symmetrised with its
  Hermitian conjugate,
* :class:`NumberPower` -- a power of the local density on one site,
* :class:`DensityCorrelation` -- a product of densities on distinct sites,

and an :class:`OperatorSpec` is a weighted sum of monomials.  Specs are
constructible from JSON documents (see ``from_json``); the schema is
documented in the README.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Union


@dataclass(frozen=True)
class LadderTerm:
    creates: tuple[int, ...]
    annihilates: tuple[int, ...]
    symmetric: bool = False

    def __post_init__(self):
        object.__setattr__(self, "creates", tuple(int(i) for i in self.creates))
        object.__setattr__(self, "annihilates", tuple(int(i) for i in self.annihilates))
        if min(self.creates + self.annihilates, default=0) < 0:
            raise ValueError("mode indices must be non-negative")

    @property
    def order(self) -> int:
        return len(self.creates)

    @property
    def is_self_adjoint(self) -> bool:
        return sorted(self.creates) == sorted(self.annihilates)

    def conjugate(self) -> "LadderTerm":
        return LadderTerm(
            tuple(reversed(self.annihilates)), tuple(reversed(self.creates)), False
        )

    @property
    def all_distinct(self) -> bool:
        idx = self.creates + self.annihilates
        return len(set(idx)) == len(idx)


@dataclass(frozen=True)
class NumberPower:
    site: int
    power: int

    def __post_init__(self):
        if self.site < 0 or self.power < 1:
            raise ValueError("need site >= 0 and power >= 1")


@dataclass(frozen=True)
class DensityCorrelation:
    sites: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("density correlation sites must be distinct")
        if min(self.sites, default=0) < 0:
            raise ValueError("sites must be non-negative")


@dataclass(frozen=True)
class LocalOperator:
    """Single-register ladder power (creation/annihilation), 2Q kinds only."""

    site: int
    which: str  # "create" | "annihilate"
    power: int = 1

    def __post_init__(self):
        if self.which not in ("create", "annihilate"):
            raise ValueError("which must be 'create' or 'annihilate'")
        if self.site < 0 or self.power < 1:
            raise ValueError("need site >= 0 and power >= 1")


Monomial = Union[LadderTerm, NumberPower, DensityCorrelation, LocalOperator]


@dataclass(frozen=True)
class OperatorSpec:
    """A weighted sum of monomials; a single operator is a one-term sum.

    For a symmetric LadderTerm the weight c contributes c*T + conj(c)*T'
    where T' is the Hermitian conjugate.
    """

    terms: tuple[tuple[complex, Monomial], ...]
    label: str = ""

    @classmethod
    def single(cls, mono: Monomial, coeff: complex = 1.0, label: str = "") -> "OperatorSpec":
        return cls(((complex(coeff), mono),), label)

    @classmethod
    def rdm_term(cls, creates, annihilates, symmetric=False) -> "OperatorSpec":
        return cls.single(LadderTerm(tuple(creates), tuple(annihilates), symmetric))

    @classmethod
    def number_power(cls, site: int, power: int) -> "OperatorSpec":
        return cls.single(NumberPower(site, power))

    @classmethod
    def density_correlation(cls, sites) -> "OperatorSpec":
        return cls.single(DensityCorrelation(tuple(sites)))

    def max_mode(self) -> int:
        top = 0
        for _, mono in self.terms:
            if isinstance(mono, LadderTerm):
                top = max(top, max(mono.creates + mono.annihilates, default=0))
            elif isinstance(mono, NumberPower):
                top = max(top, mono.site)
            elif isinstance(mono, DensityCorrelation):
                top = max(top, max(mono.sites, default=0))
            elif isinstance(mono, LocalOperator):
                top = max(top, mono.site)
        return top

    @property
    def conserves_particles(self) -> bool:
        return all(
            not isinstance(m, LocalOperator)
            and (not isinstance(m, LadderTerm) or len(m.creates) == len(m.annihilates))
            for _, m in self.terms
        )

    def canonical(self) -> "OperatorSpec":
        """Normalise term order and symmetric-term orientation for equality."""
        normalised = []
        for coeff, mono in self.terms:
            if isinstance(mono, LadderTerm):
                creates = tuple(sorted(mono.creates))
                annihilates = tuple(sorted(mono.annihilates))
                if mono.symmetric:
                    flipped = (annihilates, creates) < (creates, annihilates)
                    if flipped:
                        creates, annihilates = annihilates, creates
                        coeff = complex(coeff).conjugate()
                mono = LadderTerm(creates, annihilates, mono.symmetric)
            normalised.append((complex(coeff), mono))
        normalised.sort(key=lambda item: (repr(item[1]), item[0].real, item[0].imag))
        return OperatorSpec(tuple(normalised), self.label)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


class SpecSchemaError(ValueError):
    """Raised for malformed operator documents."""


def _coeff_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(value[0], value[1])
    raise SpecSchemaError(f"bad coefficient {value!r}")


def _monomial_from_json(doc: dict) -> tuple[Monomial, bool]:
    kind = doc.get("kind")
    if kind in ("rdm_term", "rdm_term_symmetric"):
        try:
            creates = tuple(doc["creates"])
            annihilates = tuple(doc["annihilates"])
        except KeyError as exc:
            raise SpecSchemaError(f"rdm_term missing field {exc}") from exc
        if len(creates) != len(annihilates) or not creates:
            raise SpecSchemaError("rdm_term needs equal-length non-empty index lists")
        symmetric = bool(doc.get("symmetric", kind == "rdm_term_symmetric"))
        return LadderTerm(creates, annihilates, symmetric), symmetric
    if kind == "number_power":
        try:
            return NumberPower(int(doc["site"]), int(doc.get("power", 1))), False
        except KeyError as exc:
            raise SpecSchemaError(f"number_power missing field {exc}") from exc
    if kind == "density_correlation":
        try:
            return DensityCorrelation(tuple(doc["sites"])), False
        except KeyError as exc:
            raise SpecSchemaError(f"density_correlation missing field {exc}") from exc
    if kind == "local":
        try:
            return (
                LocalOperator(int(doc["site"]), doc["which"], int(doc.get("power", 1))),
                False,
            )
        except KeyError as exc:
            raise SpecSchemaError(f"local missing field {exc}") from exc
    raise SpecSchemaError(f"unknown operator kind {kind!r}")


def spec_from_json(doc: dict | str) -> OperatorSpec:
    """Build an OperatorSpec from a JSON document (dict or string).

    Model kinds ('bhm', 'ho') are expanded by :mod:`bosoniq.models` and
    dispatched from here to keep one entry point.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecSchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecSchemaError("operator document must be a JSON object")
    kind = doc.get("kind")
    if kind == "hamiltonian":
        terms = []
        for entry in doc.get("terms", []):
            coeff = _coeff_from_json(entry.get("coeff", 1.0))
            mono, _ = _monomial_from_json(entry.get("term", {}))
            terms.append((coeff, mono))
        if not terms:
            raise SpecSchemaError("hamiltonian needs a non-empty term list")
        return OperatorSpec(tuple(terms), doc.get("label", "hamiltonian"))
    if kind in ("bhm", "ho"):
        from . import models

        return models.model_spec_from_json(doc)
    try:
        mono, _ = _monomial_from_json(doc)
    except ValueError as exc:
        raise SpecSchemaError(str(exc)) from exc
    return OperatorSpec.single(mono, label=kind or "")


def spec_to_json(spec: OperatorSpec) -> dict:
    def mono_doc(mono: Monomial) -> dict:
        if isinstance(mono, LadderTerm):
            return {
                "kind": "rdm_term",
                "creates": list(mono.creates),
                "annihilates": list(mono.annihilates),
                "symmetric": mono.symmetric,
            }
        if isinstance(mono, NumberPower):
            return {"kind": "number_power", "site": mono.site, "power": mono.power}
        if isinstance(mono, DensityCorrelation):
            return {"kind": "density_correlation", "sites": list(mono.sites)}
        return {"kind": "local", "site": mono.site, "which": mono.which, "power": mono.power}

    if len(spec.terms) == 1 and spec.terms[0][0] == 1.0:
        return mono_doc(spec.terms[0][1])
    return {
        "kind": "hamiltonian",
        "label": spec.label,
        "terms": [
            {"coeff": [c.real, c.imag], "term": mono_doc(m)} for c, m in spec.terms
        ],
    }
