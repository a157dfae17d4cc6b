"""Straight-line programs for the standard gates from a universal swap.

Given a pattern swap that is universal together with the flip and the
shift, this module emits explicit programs over the two generators

    c0   the flip,
    f    the given pattern swap, anchored at cell 0,

each atom carrying the cell it is applied at (gate@k), that evaluate to
the four standard gates c1, rc1 (its mirror), s (the cell swap) and c2
(the doubly controlled flip).  The construction is the obvious one:
conjugate one pattern to all-zeros by flips, then repeatedly strip a
zero border bit off the difference pattern,

    strip left :  shift(-1) of  c0@0 f' c0@0 f'
    strip right:  c0@(n-1) f' c0@(n-1) f'

until only the two- or three-cell core remains, and finally dress the
core with flips and swaps.  Shift conjugations are flattened into the
per-atom cells, so emitted programs contain no bare shift atoms.

No program is returned unverified: every expression is evaluated and
compared against the canonical target gate before it leaves this
module.  Programs are deterministic functions of the input pair; the
only cleanup is cancelling adjacent duplicate atoms, which is sound
because both generators are involutions.
"""

from __future__ import annotations

from .bitcore import check_word, diff_set
from .gates import (
    GateExpr,
    GroupElement,
    compose_many,
    evaluate_expr,
    make_named,
    make_word_swap,
    shift_conjugate,
)
from .analysis import SwapClass, SwapVerdict, classify_swap


class NotUniversalError(ValueError):
    def __init__(self, u: str, v: str, verdict: SwapClass):
        super().__init__(
            f"swap of {u!r} and {v!r} is not universal: {verdict.verdict.value}"
        )
        self.verdict = verdict


def peephole(expr: GateExpr) -> GateExpr:
    """Cancel adjacent equal atoms (valid for involution generators)."""
    stack: list[tuple[str, int]] = []
    for atom in expr.atoms:
        if stack and stack[-1] == atom:
            stack.pop()
        else:
            stack.append(atom)
    return GateExpr(tuple(stack))


def _strip_left(expr: GateExpr) -> GateExpr:
    # f_{0^n, 0v}  ->  f_{0^(n-1), v}, pattern kept anchored at cell 0
    body = GateExpr((("c0", 0),)) + expr + GateExpr((("c0", 0),)) + expr
    return body.shifted(-1)


def _strip_right(expr: GateExpr, n: int) -> GateExpr:
    # f_{0^n, v0}  ->  f_{0^(n-1), v}
    flip = GateExpr((("c0", n - 1),))
    return flip + expr + flip + expr


def eliminate_bit(v: str, side: str) -> GateExpr:
    """Program reducing the swap (all-zeros, v) by one border cell.

    side='left' requires v to start with 0 and yields a program over
    {c0, f} (f meaning the swap of 0^n and v) equal to the swap of
    0^(n-1) and v[1:]; side='right' strips a trailing 0 instead.  The
    emitted program is verified by evaluation before being returned.
    """
    check_word(v)
    n = len(v)
    if n < 2:
        raise ValueError("pattern too short: nothing left after eliminating")
    if side == "left":
        if v[0] != "0":
            raise ValueError("left border bit is not 0, cannot eliminate")
        expr = _strip_left(GateExpr((("f", 0),)))
        reduced = v[1:]
    elif side == "right":
        if v[-1] != "0":
            raise ValueError("right border bit is not 0, cannot eliminate")
        expr = _strip_right(GateExpr((("f", 0),)), n)
        reduced = v[:-1]
    else:
        raise ValueError("side must be 'left' or 'right'")
    expr = peephole(expr)
    gens = {"c0": make_named("c0"), "f": make_word_swap("0" * n, v)}
    target = make_word_swap("0" * (n - 1), reduced)
    if evaluate_expr(expr, gens) != target:
        raise AssertionError("elimination program failed verification")
    return expr


def _core_program(u: str, v: str, keep: str) -> tuple[GateExpr, str]:
    """Program over {c0, fuv} for the swap (0^m, core) around the 1.

    keep selects which neighbourhood of the single difference bit
    survives: '01', '10' or '010'.  Returns (program, core pattern).
    """
    d = diff_set(u, v)
    n = len(d)
    i = d.index("1")
    # conjugate (u, v) to (all zeros, d) by flipping the cells where u is 1
    flips = GateExpr(tuple(("c0", j) for j, ch in enumerate(u) if ch == "1"))
    expr = flips + GateExpr((("fuv", 0),)) + flips
    pattern = d
    left_strips = i - (1 if keep in ("01", "010") else 0)
    right_strips = (n - 1 - i) - (1 if keep in ("10", "010") else 0)
    for _ in range(left_strips):
        expr = _strip_left(expr)
        pattern = pattern[1:]
    for _ in range(right_strips):
        expr = _strip_right(expr, len(pattern))
        pattern = pattern[:-1]
    return peephole(expr), pattern


def synthesize_nct(u: str, v: str) -> dict[str, GateExpr]:
    """Verified programs for c1, rc1, s and c2 over {c0, fuv}.

    fuv is the swap of the given patterns at cells [0, n-1].  Raises
    NotUniversalError (carrying the classification) unless the pair is
    universal.  Every returned program has been evaluated and matched
    against the canonical gate it names; all four land at cell 0.
    """
    verdict = classify_swap(u, v, verify=False)
    if verdict.verdict is not SwapVerdict.UNIVERSAL:
        raise NotUniversalError(u, v, classify_swap(u, v))

    gens = {"c0": make_named("c0"), "fuv": make_word_swap(u, v)}

    # f_{00,10} conjugated by a flip at cell 1 is the controlled flip
    prog_10, _ = _core_program(u, v, "10")
    flip1 = GateExpr((("c0", 1),))
    c1 = peephole(flip1 + prog_10 + flip1)

    # f_{00,01} conjugated by a flip at cell 0 sits one cell right of rc1
    prog_01, _ = _core_program(u, v, "01")
    flip0 = GateExpr((("c0", 0),))
    rc1_at_1 = peephole(flip0 + prog_01 + flip0)
    rc1 = rc1_at_1.shifted(-1)

    # the classic three-gate identity: s = c1 . (rc1 one cell right) . c1
    s = peephole(c1 + rc1_at_1 + c1)

    # conjugate f_{000,010} by (swap cells 0,1 then flips at 1, 2)
    prog_010, _ = _core_program(u, v, "010")
    wrap = GateExpr((("c0", 1), ("c0", 2))) + s
    c2 = peephole(wrap + prog_010 + wrap.reversed())

    programs = {"c1": c1, "rc1": rc1, "s": s, "c2": c2}
    for name, expr in programs.items():
        if evaluate_expr(expr, gens) != make_named({"s": "swap"}.get(name, name)):
            raise AssertionError(f"synthesized program for {name} failed verification")
    return programs


def standard_generating_checks() -> list[dict]:
    """Re-derive the identities behind the standard generating sets.

    Verifies that the swap is three controlled flips, that the doubly
    controlled flip is a pattern swap, and that the swap is an
    involution.  Returns one record per identity.
    """
    sigma = make_named("sigma")
    c1 = make_named("c1")
    rc1 = make_named("rc1")
    s = make_named("swap")
    checks = []
    lhs = compose_many([c1, compose_many([sigma.inverse(), rc1, sigma]), c1])
    checks.append(
        {
            "name": "swap from three controlled flips",
            "passed": lhs == s,
        }
    )
    checks.append(
        {
            "name": "doubly controlled flip is the swap of 011 and 111",
            "passed": make_named("c2") == make_word_swap("011", "111"),
        }
    )
    checks.append(
        {
            "name": "cell swap is an involution",
            "passed": s.compose(s).is_identity,
        }
    )
    checks.append(
        {
            "name": "mirrored controlled flip is rc1",
            "passed": shift_conjugate(rc1, 1) == make_word_swap("10", "11"),
        }
    )
    return checks
