"""Compile bosonic operators into Pauli sums under the four encodings.

Register-local building block: the generic transition |l><m| on one register,
mapped one-hot via raising/lowering pairs or base-2 via per-bit factors.  In
the bit-set-is-occupied convention the raising operator is S+ = (X - iY)/2
(matrix |1><0|) and S- = (X + iY)/2.

Local simplifications applied before expansion:

* powers of site-local ladder operators compose into a single transition sum
  over d-k terms instead of a k-fold product,
* density powers stay diagonal (d projector terms in 2Q; ordered products of
  register projectors in 1Q, i.e. n(n-1)...(n-k+1) on physical states),
* a k-body transition term with all-distinct mode indices factorises in 1Q
  into a product of one-body register sums; the register-collision terms it
  introduces annihilate every physical state, so the compiled matrix is
  unchanged on the code space while the string count stays at the product
  value.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import Iterable, Sequence

from .layout import EncodingLayout
from .ops import (
    DensityCorrelation,
    LadderTerm,
    LocalOperator,
    Monomial,
    NumberPower,
    OperatorSpec,
)
from .pauli import DEFAULT_TOL, PauliSum, concatenate

LocalTerms = list[tuple[complex, int, int]]  # (coeff, x bits, z bits) on one register

PENDING_ROWS = 1 << 22  # rows buffered before an intermediate collection


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _local_product(a: LocalTerms, b: LocalTerms) -> LocalTerms:
    """Product of register-local expansions with disjoint supports."""
    return [(ca * cb, xa | xb, za | zb) for ca, xa, za in a for cb, xb, zb in b]


def _unary_transition_local(l: int, m: int) -> LocalTerms:
    if l == m:
        return [(0.5, 0, 0), (-0.5, 0, 1 << l)]
    raising = [(0.5, 1 << l, 0), (-0.5j, 1 << l, 1 << l)]
    lowering = [(0.5, 1 << m, 0), (0.5j, 1 << m, 1 << m)]
    return _local_product(raising, lowering)


def _binary_transition_local(l: int, m: int, width: int) -> LocalTerms:
    terms: LocalTerms = [(1.0, 0, 0)]
    for b in range(width):
        lb = (l >> b) & 1
        mb = (m >> b) & 1
        if lb == mb:
            sign = -1.0 if lb else 1.0
            factor = [(0.5, 0, 0), (0.5 * sign, 0, 1 << b)]
        elif lb == 1:
            factor = [(0.5, 1 << b, 0), (-0.5j, 1 << b, 1 << b)]
        else:
            factor = [(0.5, 1 << b, 0), (0.5j, 1 << b, 1 << b)]
        terms = _local_product(terms, factor)
    return terms


def _transition_local(l: int, m: int, layout: EncodingLayout) -> LocalTerms:
    levels = layout.local_levels
    if not (0 <= l < levels and 0 <= m < levels):
        raise IndexError(f"transition indices ({l}, {m}) out of range for {levels} levels")
    if layout.is_unary:
        return _unary_transition_local(l, m)
    return _binary_transition_local(l, m, layout.register_width)


def _place(
    layout: EncodingLayout,
    register: int,
    local_terms: LocalTerms,
    tolerance: float = DEFAULT_TOL,
) -> PauliSum:
    """Shift register-local terms to their global qubit positions."""
    if not 0 <= register < layout.n_registers:
        raise IndexError(f"register {register} out of range")
    shift = register * layout.register_width
    rows = [(c, x << shift, z << shift) for c, x, z in local_terms]
    return PauliSum.from_int_terms(layout.n_qubits, rows).collect(tolerance)


def _placed_sum(
    layout: EncodingLayout,
    pieces: Iterable[tuple[int, LocalTerms]],
    tolerance: float = DEFAULT_TOL,
) -> PauliSum:
    rows = []
    for register, local_terms in pieces:
        shift = register * layout.register_width
        rows.extend((c, x << shift, z << shift) for c, x, z in local_terms)
    return PauliSum.from_int_terms(layout.n_qubits, rows).collect(tolerance)


# ---------------------------------------------------------------------------
# spec-level operations
# ---------------------------------------------------------------------------


def encode_transition_unary(
    l: int, m: int, register: int, layout: EncodingLayout
) -> PauliSum:
    """|l><m| on one register of a unary layout: S+_l S-_m, or the projector."""
    if not layout.is_unary:
        raise ValueError("encode_transition_unary needs a unary layout")
    return _place(layout, register, _unary_transition_local_checked(l, m, layout))


def _unary_transition_local_checked(l, m, layout) -> LocalTerms:
    levels = layout.local_levels
    if not (0 <= l < levels and 0 <= m < levels):
        raise IndexError(f"indices ({l}, {m}) out of range")
    return _unary_transition_local(l, m)


def encode_transition_binary(
    l: int, m: int, register: int, layout: EncodingLayout
) -> PauliSum:
    """|l><m| on one register of a binary layout, 2^width strings collected."""
    if layout.is_unary:
        raise ValueError("encode_transition_binary needs a binary layout")
    levels = layout.local_levels
    if not (0 <= l < levels and 0 <= m < levels):
        raise IndexError(f"indices ({l}, {m}) out of range")
    return _place(
        layout, register, _binary_transition_local(l, m, layout.register_width)
    )


def register_transition(
    l: int, m: int, register: int, layout: EncodingLayout
) -> PauliSum:
    return _place(layout, register, _transition_local(l, m, layout))


def _local_ladder_terms(
    create_power: int, annihilate_power: int, layout: EncodingLayout
) -> LocalTerms:
    """(adag)^p (a)^q on one 2Q register as a single transition sum."""
    d = layout.d
    p, q = create_power, annihilate_power
    terms: LocalTerms = []
    for n in range(q, d):
        target = n - q + p
        if target >= d:
            continue
        coeff = math.sqrt(_falling(n, q) * _falling(target, p))
        for c, x, z in _transition_local(target, n, layout):
            terms.append((coeff * c, x, z))
    return terms


@functools.lru_cache(maxsize=8192)
def _placed_ladder(layout: EncodingLayout, site: int, p: int, q: int) -> PauliSum:
    return _place(layout, site, _local_ladder_terms(p, q, layout))


@functools.lru_cache(maxsize=8192)
def _placed_transition(
    layout: EncodingLayout, register: int, l: int, m: int
) -> PauliSum:
    return _place(layout, register, _transition_local(l, m, layout))


@functools.lru_cache(maxsize=8192)
def _one_body(layout: EncodingLayout, l: int, m: int) -> PauliSum:
    local = _transition_local(l, m, layout)
    return _placed_sum(layout, ((alpha, local) for alpha in range(layout.N)))


def u2q_local(j: int, which: str, layout: EncodingLayout) -> PauliSum:
    """Site-local creation/annihilation/number operator on register j."""
    if not layout.is_second_quantized:
        raise ValueError("site-local ladder operators need a second-quantized layout")
    if not 0 <= j < layout.M:
        raise IndexError(f"site {j} out of range")
    if which == "create":
        return _place(layout, j, _local_ladder_terms(1, 0, layout))
    if which == "annihilate":
        return _place(layout, j, _local_ladder_terms(0, 1, layout))
    if which == "number":
        terms: LocalTerms = []
        for n in range(1, layout.d):
            for c, x, z in _transition_local(n, n, layout):
                terms.append((n * c, x, z))
        return _place(layout, j, terms)
    raise ValueError(f"unknown local operator {which!r}")


def u2q_operator_power(
    j: int, which: str, power: int, layout: EncodingLayout
) -> PauliSum:
    """(a_j)^k or (adag_j)^k as one sum over d-k transitions (empty if k >= d)."""
    if not layout.is_second_quantized:
        raise ValueError("operator powers need a second-quantized layout")
    if not 0 <= j < layout.M:
        raise IndexError(f"site {j} out of range")
    if power < 1:
        raise ValueError("power must be >= 1")
    if power >= layout.d:
        return PauliSum.zero(layout.n_qubits)
    if which == "create":
        return _place(layout, j, _local_ladder_terms(power, 0, layout))
    if which == "annihilate":
        return _place(layout, j, _local_ladder_terms(0, power, layout))
    raise ValueError(f"unknown ladder kind {which!r}")


def _register_projector_local(level: int, layout: EncodingLayout) -> LocalTerms:
    return _transition_local(level, level, layout)


def number_operator(site: int, layout: EncodingLayout) -> PauliSum:
    """Density on one site: d projector terms in 2Q, one per register in 1Q."""
    if layout.is_second_quantized:
        return u2q_local(site, "number", layout)
    if not 0 <= site < layout.M:
        raise IndexError(f"site {site} out of range")
    local = _register_projector_local(site, layout)
    return _placed_sum(layout, ((alpha, local) for alpha in range(layout.N)))


def number_power(site: int, power: int, layout: EncodingLayout) -> PauliSum:
    """Local density power.

    2Q kinds: sum_n n^k |n><n| on the site register.  1Q kinds: k! times the
    sum over strictly decreasing register tuples of projector products, the
    ordered-occupancy form equal to n(n-1)...(n-k+1) on physical states;
    empty when k exceeds the particle count.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    if layout.is_second_quantized:
        if not 0 <= site < layout.M:
            raise IndexError(f"site {site} out of range")
        terms: LocalTerms = []
        for n in range(1, layout.d):
            for c, x, z in _transition_local(n, n, layout):
                terms.append(((n**power) * c, x, z))
        return _place(layout, site, terms)
    if not 0 <= site < layout.M:
        raise IndexError(f"site {site} out of range")
    if power > layout.N:
        return PauliSum.zero(layout.n_qubits)
    projectors = [
        _placed_transition(layout, alpha, site, site) for alpha in range(layout.N)
    ]
    pieces = []
    for combo in itertools.combinations(range(layout.N), power):
        piece = projectors[combo[0]]
        for alpha in combo[1:]:
            piece = piece.product_raw(projectors[alpha])
        pieces.append(piece)
    return concatenate(pieces).scale(math.factorial(power)).collect()


def density_correlation(sites: Sequence[int], layout: EncodingLayout) -> PauliSum:
    """Product of single-site densities on distinct sites (all Z-type)."""
    sites = tuple(sites)
    if len(set(sites)) != len(sites):
        raise ValueError("density correlation needs distinct sites; use number_power")
    result = number_operator(sites[0], layout)
    for site in sites[1:]:
        result = result.product_raw(number_operator(site, layout))
    return result.collect()


def _ladder_sum(
    creates: tuple[int, ...], annihilates: tuple[int, ...], layout: EncodingLayout
) -> PauliSum:
    """Collected (non-canonical) sum for one ladder monomial."""
    k = len(creates)
    levels = layout.M
    for idx in creates + annihilates:
        if not 0 <= idx < levels:
            raise IndexError(f"mode index {idx} out of range")
    pairs = [(creates[j], annihilates[k - 1 - j]) for j in range(k)]

    if layout.is_second_quantized:
        powers: dict[int, list[int]] = {}
        for site in creates:
            powers.setdefault(site, [0, 0])[0] += 1
        for site in annihilates:
            powers.setdefault(site, [0, 0])[1] += 1
        result = None
        for site in sorted(powers):
            p, q = powers[site]
            piece = _placed_ladder(layout, site, p, q)
            # registers are distinct, so the tensor expansion has no
            # duplicates until the final collection
            result = piece if result is None else result.product_raw(piece)
        return result.collect(canonical=False)

    if k > layout.N:
        raise ValueError(f"a {k}-body term needs at least {k} particles")
    all_indices = creates + annihilates
    if len(set(all_indices)) == len(all_indices):
        # off-diagonal element: register collisions vanish on the code
        # space, so the one-body factorisation is exact there
        result = _one_body(layout, *pairs[0])
        for l, m in pairs[1:]:
            result = result.product_raw(_one_body(layout, l, m))
        return result.collect(canonical=False)
    pieces = []
    for regs in itertools.permutations(range(layout.N), k):
        piece = _placed_transition(layout, regs[0], *pairs[0])
        for slot in range(1, k):
            piece = piece.product_raw(
                _placed_transition(layout, regs[slot], *pairs[slot])
            )
        pieces.append(piece)
    return concatenate(pieces).collect(canonical=False)


def encode_rdm_term(
    creates: Sequence[int],
    annihilates: Sequence[int],
    symmetric: bool,
    layout: EncodingLayout,
) -> PauliSum:
    """k-body density-matrix element prod adag_{l_j} prod a_{m_j}.

    Pairing of slots follows the two-body pattern |a,l1>|b,l2><b,m1|<a,m2|:
    slot j carries the transition |l_j><m_{k+1-j}|.
    """
    creates = tuple(creates)
    annihilates = tuple(annihilates)
    if len(creates) != len(annihilates) or not creates:
        raise ValueError("need equal-length non-empty index lists")
    result = _ladder_sum(creates, annihilates, layout)
    if symmetric:
        result = result + result.dagger()
    return result.collect()


def encode_local_operator(op: LocalOperator, layout: EncodingLayout) -> PauliSum:
    return u2q_operator_power(op.site, op.which, op.power, layout)


def encode_monomial(mono: Monomial, layout: EncodingLayout) -> PauliSum:
    if isinstance(mono, LadderTerm):
        if layout.is_first_quantized and mono.order > layout.N:
            # normal-ordered k-body terms vanish on fewer than k particles
            return PauliSum.zero(layout.n_qubits)
        return _ladder_sum(mono.creates, mono.annihilates, layout)
    if isinstance(mono, NumberPower):
        return number_power(mono.site, mono.power, layout)
    if isinstance(mono, DensityCorrelation):
        return density_correlation(mono.sites, layout)
    if isinstance(mono, LocalOperator):
        return encode_local_operator(mono, layout)
    raise TypeError(f"unknown monomial {mono!r}")


def encode_operator(
    spec: OperatorSpec, layout: EncodingLayout, tolerance: float = DEFAULT_TOL
) -> PauliSum:
    """Compile a full operator spec; symmetric terms add folded conjugates.

    Terms are buffered and merged in bounded chunks so large Hamiltonians
    (dense two-body tensors) never hold the full uncollected expansion.
    """
    if spec.max_mode() >= layout.M:
        raise IndexError(
            f"spec uses mode {spec.max_mode()} but layout has M={layout.M}"
        )
    accumulated: PauliSum | None = None
    pending: list[PauliSum] = []
    pending_rows = 0
    for coeff, mono in spec.terms:
        enc = encode_monomial(mono, layout)
        pending.append(enc.scale(coeff))
        pending_rows += len(enc)
        if isinstance(mono, LadderTerm) and mono.symmetric:
            pending.append(enc.dagger().scale(complex(coeff).conjugate()))
            pending_rows += len(enc)
        if pending_rows >= PENDING_ROWS:
            block = concatenate(pending).collect(tolerance, canonical=False)
            accumulated = (
                block
                if accumulated is None
                else concatenate([accumulated, block]).collect(
                    tolerance, canonical=False
                )
            )
            pending = []
            pending_rows = 0
    if pending:
        block = concatenate(pending)
        accumulated = block if accumulated is None else concatenate([accumulated, block])
    if accumulated is None:
        return PauliSum.zero(layout.n_qubits)
    return accumulated.collect(tolerance)
