import math

import numpy as np
import pytest

from gatecalc import gates as G
from gatecalc.bitcore import int_to_word

RNG = np.random.default_rng(99)


def random_rule(width, lo=-2):
    return lo, lo + width - 1, RNG.permutation(1 << width)


def raw_apply(lo, hi, table, x, anchor):
    # independent evaluator for a raw window rule on a finite word
    bits = [int(ch) for ch in x]
    u = 0
    for c in range(lo, hi + 1):
        u = (u << 1) | bits[c - anchor]
    out = int(table[u])
    for c in range(lo, hi + 1):
        bits[c - anchor] = (out >> (hi - c)) & 1
    return "".join(map(str, bits))


# -- canonicalization ------------------------------------------------------


def test_canonicalize_identity_window():
    g = G.canonicalize(-3, 3, np.arange(128))
    assert g.is_identity


def test_canonicalize_flip_padded():
    # flip cell 0, given on a [-2, 2] window
    words = np.arange(32, dtype=np.int64)
    table = words ^ (1 << 2)
    g = G.canonicalize(-2, 2, table)
    assert g.window == (0, 0)
    assert list(g.table) == [1, 0]


def test_canonicalize_recovers_tight_window():
    # the rule-57 gate padded out to [-5, 5] canonicalizes back to [-1, 1]
    e57 = G.make_eca(57).inert
    words = np.arange(1 << 11, dtype=np.int64)
    s = 5 - e57.hi
    mask = (1 << e57.width) - 1
    padded = (words & ~(mask << s)) | (e57.table[(words >> s) & mask] << s)
    assert G.canonicalize(-5, 5, padded) == e57


def test_canonicalize_rejects_non_permutation():
    with pytest.raises(ValueError, match="not a permutation"):
        G.canonicalize(0, 1, [0, 0, 1, 2])
    with pytest.raises(ValueError, match="not a permutation"):
        G.canonicalize(0, 0, [0, 7])


def test_canonicalize_idempotent_and_semantics_preserved():
    widths = [int(RNG.integers(1, 7)) for _ in range(40)] + [7, 7, 8, 8]
    for width in widths:
        lo, hi, table = random_rule(width, lo=int(RNG.integers(-3, 3)))
        g = G.canonicalize(lo, hi, table)
        if not g.is_identity:
            again = G.canonicalize(g.lo, g.hi, g.table)
            assert again == g
        # compare against the raw rule on every word with 2 cells of margin
        ctx_lo, ctx_hi = lo - 2, hi + 2
        L = ctx_hi - ctx_lo + 1
        f = G.GroupElement(0, g)
        for k in range(1 << L):
            x = int_to_word(k, L)
            assert G.apply(f, x, ctx_lo) == raw_apply(lo, hi, table, x, ctx_lo)


# -- group structure -------------------------------------------------------


def sample_elements():
    e57 = G.make_eca(57)
    return [
        G.make_named("sigma"),
        G.make_named("c0").shift_conjugate(2),
        e57,
        e57.shift_conjugate(-1),
        G.make_named("swap"),
        G.GroupElement(-2, G.make_named("c2").inert),
        G.make_word_swap("01", "10"),
    ]


def test_group_laws():
    elems = sample_elements()
    for f in elems:
        assert f.compose(f.inverse()).is_identity
        assert f.inverse().compose(f).is_identity
    for i in range(len(elems) - 2):
        f, g, h = elems[i], elems[i + 1], elems[i + 2]
        assert f.compose(g).compose(h) == f.compose(g.compose(h))


def test_shift_power_is_a_homomorphism():
    elems = sample_elements()
    for f in elems:
        for g in elems:
            assert f.compose(g).shift == f.shift + g.shift


def test_sigma_compose():
    sigma = G.make_named("sigma")
    assert sigma.compose(sigma.inverse()).is_identity
    assert sigma.inverse() == G.GroupElement(-1, G.identity_gate())


def test_inert_gates_have_finite_order():
    for _ in range(20):
        width = int(RNG.integers(1, 4))
        g = G.canonicalize(*random_rule(width))
        assert g.order() >= 1
        assert math.factorial(1 << width) % g.order() == 0


def test_window_cap_enforced():
    old = G.WINDOW_CAP
    G.WINDOW_CAP = 6
    try:
        a = G.make_named("c0")
        b = G.make_named("c0").shift_conjugate(10)
        with pytest.raises(G.WindowCapError) as err:
            a.compose(b)
        assert err.value.required_width == 11
    finally:
        G.WINDOW_CAP = old


# -- conjugations ----------------------------------------------------------


def test_shift_conjugate_moves_window():
    e57 = G.make_eca(57)
    assert e57.shift_conjugate(0) == e57
    assert e57.shift_conjugate(3).inert.window == (2, 4)
    c0 = G.make_named("c0")
    assert c0.shift_conjugate(3).inert.window == (3, 3)


def test_shift_conjugate_matches_explicit_composition():
    sigma = G.make_named("sigma")
    for f in sample_elements():
        for k in (-2, 1, 5):
            explicit = G.compose_many(
                [G.GroupElement(-k, G.identity_gate()), f, G.GroupElement(k, G.identity_gate())]
            )
            assert f.shift_conjugate(k) == explicit
    # the gate one cell to the left of the rule-57 update
    e57 = G.make_eca(57)
    a = G.compose_many([sigma, e57, sigma.inverse()])
    assert a == e57.shift_conjugate(-1)
    assert a.inert.window == (-2, 0)


def test_reverse_conjugate():
    c0 = G.make_named("c0")
    assert c0.reverse_conjugate() == c0
    e57 = G.make_eca(57)
    assert e57.reverse_conjugate() == G.make_eca(99)
    for f in sample_elements():
        assert f.reverse_conjugate().reverse_conjugate() == f


def test_reverse_conjugate_is_an_automorphism():
    elems = sample_elements()
    for f in elems:
        assert f.reverse_conjugate().inverse() == f.inverse().reverse_conjugate()
        for g in elems:
            assert (
                f.compose(g).reverse_conjugate()
                == f.reverse_conjugate().compose(g.reverse_conjugate())
            )


# -- named gates ------------------------------------------------------------


def test_named_gates():
    assert G.make_named("ck", 1) == G.make_named("c1")
    assert G.make_named("c2") == G.make_word_swap("011", "111")
    assert G.make_named("identity").is_identity
    with pytest.raises(ValueError):
        G.make_named("nope")
    with pytest.raises(ValueError):
        G.make_named("ck")


def test_swap_identity_from_controlled_flips():
    sigma = G.make_named("sigma")
    c1 = G.make_named("c1")
    rc1 = G.make_named("rc1")
    mid = G.compose_many([sigma.inverse(), rc1, sigma])
    assert G.compose_many([c1, mid, c1]) == G.make_named("swap")


def test_bit_elimination_identities():
    # stripping a zero border cell off the difference pattern: the core
    # move behind synthesizing gates from a universal pattern swap
    sigma = G.make_named("sigma")
    c0 = G.make_named("c0")
    for L in range(1, 6):
        for k in range(1 << L):
            v = int_to_word(k, L)
            reduced = G.make_word_swap("0" * L, v)
            f = G.make_word_swap("0" * (L + 1), "0" + v)
            lhs = G.compose_many([sigma, c0, f, c0, f, sigma.inverse()])
            assert lhs == reduced
            f = G.make_word_swap("0" * (L + 1), v + "0")
            flip_end = c0.shift_conjugate(L)
            assert G.compose_many([flip_end, f, flip_end, f]) == reduced


def test_flip_applies_to_window_words():
    c0 = G.make_named("c0")
    for k in range(8):
        x = int_to_word(k, 3)
        out = G.apply(c0, x, -1)
        assert out[0] == x[0] and out[2] == x[2] and out[1] != x[1]


# -- word swaps and CA updates ----------------------------------------------


def test_word_swap_basics():
    assert G.make_word_swap("0110", "0110").is_identity
    f = G.make_word_swap("001", "011")
    assert f.inert.window == (0, 2)
    table = list(f.inert.table)
    assert table[0b001] == 0b011 and table[0b011] == 0b001
    assert all(table[i] == i for i in range(8) if i not in (1, 3))
    with pytest.raises(ValueError, match="unequal lengths"):
        G.make_word_swap("01", "011")


def test_eca_57_table():
    e57 = G.make_eca(57)
    assert e57.inert.window == (-1, 1)
    got = {int_to_word(w, 3): int((e57.inert.table[w] >> 1) & 1) for w in range(8)}
    assert got == {
        "111": 0, "110": 0, "101": 1, "100": 1,
        "011": 1, "010": 0, "001": 0, "000": 1,
    }


def test_eca_51_is_flip_and_204_is_identity():
    assert G.make_eca(51) == G.make_named("c0")
    assert G.make_eca(204).is_identity


def test_eca_decomposes_into_flip_and_swap():
    sigma = G.make_named("sigma")
    rhs = G.compose_many(
        [G.make_named("c0"), sigma, G.make_word_swap("001", "011"), sigma.inverse()]
    )
    assert rhs == G.make_eca(57)


def test_eca_not_invertible():
    with pytest.raises(G.NotInvertibleError) as err:
        G.make_eca(0)
    assert err.value.context in [(a, c) for a in (0, 1) for c in (0, 1)]
    invertible = [r for r in range(256) if _invertible(r)]
    assert len(invertible) == 16


def _invertible(rule):
    try:
        G.make_eca(rule)
        return True
    except G.NotInvertibleError:
        return False


# -- finite application ------------------------------------------------------


def test_apply_examples():
    assert G.apply(G.make_named("c0"), "0101", 0) == "1101"
    e57 = G.make_eca(57)
    assert G.apply(e57, "001", -1) == "001"
    assert G.apply(e57, "000", -1) == "010"


def test_apply_insufficient_context():
    sigma = G.make_named("sigma")
    with pytest.raises(ValueError, match="missing cells \\[4\\]"):
        G.apply(sigma, "0101", 0)
    e57 = G.make_eca(57)
    with pytest.raises(ValueError, match="missing cells"):
        G.apply(e57, "01", 0)  # window [-1, 1] not covered


def test_apply_pure_shift():
    f = G.GroupElement(2, G.identity_gate())
    with pytest.raises(ValueError):
        G.apply(f, "0101", 0)
    # a shifted flip with enough context
    g = G.make_named("c0").shift_conjugate(1)
    assert G.apply(g, "0000", 0) == "0100"


# -- expressions --------------------------------------------------------------


def test_expr_parse_and_format():
    expr = G.GateExpr.parse("e57@1 e57 e57@-1")
    assert expr.atoms == (("e57", 1), ("e57", 0), ("e57", -1))
    assert expr.to_string() == "e57@1 e57 e57@-1"
    assert G.GateExpr.parse("").atoms == ()
    with pytest.raises(ValueError):
        G.GateExpr.parse("c0@@1")


def test_expr_evaluation_order():
    # first atom acts last: c0@0 then sigma reads the flipped cell
    gens = {"c0": G.make_named("c0"), "swap": G.make_named("swap")}
    e1 = G.evaluate_expr(G.GateExpr.parse("c0 swap"), gens)
    e2 = G.evaluate_expr(G.GateExpr.parse("swap c0"), gens)
    assert e1 == gens["c0"].compose(gens["swap"])
    assert e2 == gens["swap"].compose(gens["c0"])
    assert e1 != e2
    assert G.evaluate_expr(G.GateExpr.parse("c0 swap"), gens, leftmost_first=True) == e2


def test_expr_empty_and_cancelling():
    gens = {"e57": G.make_eca(57)}
    assert G.evaluate_expr(G.GateExpr(()), gens).is_identity
    word = G.GateExpr.parse("e57@1 e57 e57 e57@1")
    assert G.evaluate_expr(word, gens).is_identity


def test_expr_unknown_generator():
    with pytest.raises(ValueError, match="unknown generator"):
        G.evaluate_expr(G.GateExpr.parse("mystery"), {})


def test_record_roundtrip():
    for f in sample_elements():
        assert G.GroupElement.from_record(f.to_record()) == f
