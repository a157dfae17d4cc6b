"""Structural classification of gates: proper subgroups and universality.

A set of gates (together with the shift) fails to generate everything
exactly when it sits inside one of a few recognizable proper subgroups:
wire permutations, shift-plus-constant maps, linear/affine maps, the
one-sided groups where information can travel only left or only right,
and the coset-preserving groups attached to a shift-invariant span of a
vector.  This module implements those membership tests on canonical
tables and uses them to classify

* word swaps: the swap of patterns u, v (with the flip and the shift)
  is universal iff u and v differ in exactly one position which is not
  at either end of the patterns;
* one-cell cellular-automaton updates: among the 256 rules exactly 16
  are bijective and exactly two (57 and 99) are singleton universal
  gates; the universal verdicts carry a machine-checked certificate, a
  50-step program over shifted copies of the rule that composes to the
  flip.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bitcore import check_word, diff_set, gf2_divides
from .gates import (
    GateExpr,
    GroupElement,
    InertGate,
    NotInvertibleError,
    evaluate_expr,
    make_eca,
    make_named,
    make_word_swap,
)

# The flip as a 50-step program over {gate one cell left, gate in place,
# gate one cell right} copies of the rule-57 update; discovered by ball
# search, re-verified here every time it is used as a certificate.
RULE57_FLIP_PROGRAM = "abcabcbababacbabababcbcabacbabcbcbcbcabcbcbabacbcb"

# Letter -> (generator name, cell) for the program above.
FLIP_PROGRAM_LETTERS = {"a": ("e", -1), "b": ("e", 0), "c": ("e", 1)}


# -- linear structure ----------------------------------------------------


def _difference_map(g: InertGate) -> np.ndarray:
    # L(u) = table(u) xor table(0); linear part candidate
    return g.table ^ int(g.table[0])


def is_affine(g: InertGate) -> bool:
    """Is the gate a linear map plus a constant (over GF(2))?

    Checked by superposition on the canonical window: the difference
    table(u) xor table(0) must be the bitwise XOR of its values on the
    basis vectors.
    """
    if g.is_identity:
        return True
    width = g.width
    size = 1 << width
    lin = _difference_map(g)
    idx = np.arange(size, dtype=np.int64)
    predicted = np.zeros(size, dtype=np.int64)
    for p in range(width):
        basis_value = int(lin[1 << p])
        predicted ^= np.where((idx >> p) & 1 == 1, basis_value, 0)
    return bool(np.array_equal(predicted, lin))


def is_linear(g: InertGate) -> bool:
    """Affine with zero constant term."""
    if g.is_identity:
        return True
    return int(g.table[0]) == 0 and is_affine(g)


# -- wire structure ------------------------------------------------------


def is_wire_permutation(f: GroupElement) -> bool:
    """Does f only rearrange cells (a finite permutation plus a shift)?"""
    g = f.inert
    if g.is_identity:
        return True
    width = g.width
    idx = np.arange(1 << width, dtype=np.int64)
    sources = []
    for p_out in range(width):
        out_bits = (g.table >> p_out) & 1
        source = None
        for p_in in range(width):
            if np.array_equal(out_bits, (idx >> p_in) & 1):
                source = p_in
                break
        if source is None:
            return False
        sources.append(source)
    return len(set(sources)) == width


def is_lamplighter(f: GroupElement) -> bool:
    """Is f a shift followed by flipping a fixed finite set of cells?"""
    g = f.inert
    if g.is_identity:
        return True
    idx = np.arange(1 << g.width, dtype=np.int64)
    return bool(np.array_equal(g.table, idx ^ int(g.table[0])))


# -- one-sided information flow ------------------------------------------


def _depends_on(g: InertGate, p_out: int, p_in: int) -> bool:
    # does output bit p_out ever change when input bit p_in flips?
    idx = np.arange(1 << g.width, dtype=np.int64)
    diff = (g.table[idx ^ (1 << p_in)] ^ g.table) >> p_out & 1
    return bool(diff.any())


def in_GR(g: InertGate) -> bool:
    """Membership in the right-flow subgroup.

    Every output cell may depend only on cells at or to its left, so a
    change can only propagate rightward.  Window cell at bit p depends
    only on bits >= p (bit 0 is the rightmost cell).
    """
    if g.is_identity:
        return True
    for p_out in range(g.width):
        for p_in in range(p_out):
            if _depends_on(g, p_out, p_in):
                return False
    return True


def in_GL(g: InertGate) -> bool:
    """Mirror of in_GR: changes can only propagate leftward."""
    if g.is_identity:
        return True
    for p_out in range(g.width):
        for p_in in range(p_out + 1, g.width):
            if _depends_on(g, p_out, p_in):
                return False
    return True


def in_GV(g: InertGate, w: str) -> bool:
    """Does g preserve cosets of the shift-span of w up to a translation?

    With v0 the displacement of the all-zeros window word, every window
    word u must satisfy: table(u) xor u xor v0 lies in the span of all
    shifts of w, i.e. its polynomial is divisible by w's.
    """
    check_word(w)
    if "1" not in w:
        raise ValueError("w must be a nonzero vector")
    if g.is_identity:
        return True
    width = g.width
    idx = np.arange(1 << width, dtype=np.int64)
    rel = g.table ^ idx ^ int(g.table[0])
    poly_w = int(w[::-1], 2)
    for value in np.unique(rel):
        value = int(value)
        if value == 0:
            continue
        # window bit p is the cell at hi - p; cell order vs exponent
        # order is a reversal, harmless for divisibility as long as both
        # operands use the same reading
        if not gf2_divides(
            _poly_from_int(poly_w), _poly_from_int(_reverse_bits(value, width))
        ):
            return False
    return True


def _reverse_bits(value: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def _poly_from_int(mask: int):
    from .bitcore import Gf2Poly

    return Gf2Poly.normalize(mask)


# -- word-swap classification ---------------------------------------------


class SwapVerdict(enum.Enum):
    UNIVERSAL = "universal"
    TRIVIAL = "trivial"
    RIGHT_ONE_SIDED = "right-one-sided"
    LEFT_ONE_SIDED = "left-one-sided"
    COSET_PRESERVING = "coset-preserving"


@dataclass(frozen=True)
class SwapClass:
    """Verdict for the gate swapping two equal-length patterns.

    For non-universal verdicts, ``subgroup`` names the proper subgroup
    containing {flip, swap gate, shift} and ``witness`` carries the
    generating vector of the preserved span when applicable.  When
    verification ran, ``verified`` records that the claimed memberships
    actually hold.
    """

    verdict: SwapVerdict
    subgroup: str | None = None
    witness: str | None = None
    verified: bool | None = None


def classify_swap(u: str, v: str, verify: bool = True) -> SwapClass:
    """Classify the pattern swap by the positions where u and v differ.

    Universal iff they differ in exactly one position which is interior
    (so the difference word matches 0*0100*).  Non-universal verdicts
    name a containing proper subgroup; with verify=True the membership
    of all three generators' inert parts is checked, not assumed.
    """
    d = diff_set(u, v)
    ones = [i for i, ch in enumerate(d) if ch == "1"]
    n = len(d)
    gates = None
    if verify:
        gates = [
            make_named("c0").inert,
            make_word_swap(u, v).inert,
            make_named("sigma").inert,
        ]
    if not ones:
        verified = make_word_swap(u, v).is_identity if verify else None
        return SwapClass(SwapVerdict.TRIVIAL, "trivial group", None, verified)
    if len(ones) == 1:
        i = ones[0]
        if i == n - 1:
            verified = all(in_GR(g) for g in gates) if verify else None
            return SwapClass(
                SwapVerdict.RIGHT_ONE_SIDED, "right-flow subgroup", None, verified
            )
        if i == 0:
            verified = all(in_GL(g) for g in gates) if verify else None
            return SwapClass(
                SwapVerdict.LEFT_ONE_SIDED, "left-flow subgroup", None, verified
            )
        return SwapClass(SwapVerdict.UNIVERSAL, None, None, None)
    verified = all(in_GV(g, d) for g in gates) if verify else None
    return SwapClass(
        SwapVerdict.COSET_PRESERVING, "coset-preserving subgroup", d, verified
    )


# -- one-cell CA update classification ------------------------------------


class EcaVerdict(enum.Enum):
    NOT_BIJECTIVE = "not-bijective"
    UNIVERSAL = "universal"
    NON_UNIVERSAL = "non-universal"


@dataclass(frozen=True)
class EcaClass:
    rule: int
    verdict: EcaVerdict
    reason: str | None = None
    context: tuple[int, int] | None = None
    certificate: dict | None = None


def flip_certificate(rule: int) -> dict:
    """Evaluate the flip program for rule 57 (or its mirror 99).

    Returns a record with the program, the letter placement used and
    whether the composition equals the flip; raises for other rules.
    """
    if rule == 57:
        letters = {k: ("e", cell) for k, (_, cell) in FLIP_PROGRAM_LETTERS.items()}
        gen = make_eca(57)
    elif rule == 99:
        # conjugating the whole identity by tape reversal mirrors cells
        letters = {k: ("e", -cell) for k, (_, cell) in FLIP_PROGRAM_LETTERS.items()}
        gen = make_eca(99)
    else:
        raise ValueError("certificates exist for rules 57 and 99 only")
    expr = GateExpr.from_letters(RULE57_FLIP_PROGRAM, letters)
    value = evaluate_expr(expr, {"e": gen})
    return {
        "rule": rule,
        "program": RULE57_FLIP_PROGRAM,
        "letter_cells": {k: cell for k, (_, cell) in letters.items()},
        "flip_reached": value == make_named("c0"),
    }


def flip_program_report() -> dict:
    """Evaluate the flip program under all four reading conventions.

    Two letter placements (as defined, and mirrored) times two reading
    orders (first letter applied last, or first).  Because every
    generator involved is an involution the two orders always agree;
    the report records what actually validates rather than assuming.
    """
    gen = {"e": make_eca(57)}
    c0 = make_named("c0")
    out = {}
    for placement in ("standard", "mirrored"):
        sign = 1 if placement == "standard" else -1
        letters = {
            k: ("e", sign * cell) for k, (_, cell) in FLIP_PROGRAM_LETTERS.items()
        }
        expr = GateExpr.from_letters(RULE57_FLIP_PROGRAM, letters)
        for order, leftmost_first in (("first-acts-last", False), ("first-acts-first", True)):
            value = evaluate_expr(expr, gen, leftmost_first=leftmost_first)
            out[f"{placement}/{order}"] = value == c0
    return out


def classify_eca(rule: int) -> EcaClass:
    """Classify the one-cell update of an elementary CA rule.

    Bijective rules that are not universal get the most specific reason
    that applies: identity-like, equals-c0, affine, one-sided, or
    fixes-uniform-point.  Universal verdicts (rules 57 and 99) carry an
    evaluated flip certificate rather than a bare claim.
    """
    if not 0 <= rule <= 255:
        raise ValueError("rule number must be in [0, 255]")
    try:
        gate = make_eca(rule)
    except NotInvertibleError as exc:
        return EcaClass(rule, EcaVerdict.NOT_BIJECTIVE, context=exc.context)
    g = gate.inert
    if gate.is_identity:
        return EcaClass(rule, EcaVerdict.NON_UNIVERSAL, reason="identity-like")
    if gate == make_named("c0"):
        return EcaClass(rule, EcaVerdict.NON_UNIVERSAL, reason="equals-c0")
    if is_affine(g):
        return EcaClass(rule, EcaVerdict.NON_UNIVERSAL, reason="affine")
    if in_GL(g) or in_GR(g):
        return EcaClass(rule, EcaVerdict.NON_UNIVERSAL, reason="one-sided")
    fixes_zero = (rule >> 0) & 1 == 0   # all-zero neighbourhood stays 0
    fixes_one = (rule >> 7) & 1 == 1    # all-one neighbourhood stays 1
    if fixes_zero or fixes_one:
        return EcaClass(rule, EcaVerdict.NON_UNIVERSAL, reason="fixes-uniform-point")
    certificate = flip_certificate(rule)
    if not certificate["flip_reached"]:
        raise AssertionError(f"certificate for rule {rule} failed to evaluate")
    return EcaClass(rule, EcaVerdict.UNIVERSAL, certificate=certificate)
