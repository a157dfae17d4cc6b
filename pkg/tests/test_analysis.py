import itertools

import numpy as np
import pytest

from gatecalc import analysis as A
from gatecalc import gates as G
from gatecalc.bitcore import int_to_word

RNG = np.random.default_rng(31)


def random_gate(max_width=4):
    width = int(RNG.integers(1, max_width + 1))
    lo = int(RNG.integers(-3, 4))
    return G.canonicalize(lo, lo + width - 1, RNG.permutation(1 << width))


# -- linear / affine ---------------------------------------------------------


def test_linear_affine_examples():
    assert A.is_linear(G.make_named("c1").inert)
    e105 = G.make_eca(105).inert
    assert A.is_affine(e105) and not A.is_linear(e105)
    assert not A.is_affine(G.make_named("c2").inert)
    assert A.is_linear(G.identity_gate())
    assert A.is_affine(G.make_named("c0").inert)
    assert not A.is_linear(G.make_named("c0").inert)


def test_affine_matches_definition_exhaustively():
    # small windows: compare the superposition test with the definition
    for width in (1, 2, 3):
        size = 1 << width
        for _ in range(40):
            table = RNG.permutation(size)
            g = G.canonicalize(0, width - 1, table)
            if g.is_identity:
                continue
            by_def = all(
                table[u ^ v] ^ table[0] == (table[u] ^ table[0]) ^ (table[v] ^ table[0])
                for u in range(size)
                for v in range(size)
            )
            assert A.is_affine(g) == by_def


def test_affine_invariant_under_conjugation():
    for _ in range(30):
        g = random_gate()
        f = G.GroupElement(0, g)
        value = A.is_affine(g)
        assert A.is_affine(f.shift_conjugate(int(RNG.integers(-4, 5))).inert) == value
        assert A.is_affine(f.reverse_conjugate().inert) == value


# -- wires and lamps ----------------------------------------------------------


def test_wire_and_lamplighter_examples():
    s = G.make_named("swap")
    c0 = G.make_named("c0")
    assert A.is_wire_permutation(s) and not A.is_lamplighter(s)
    assert A.is_lamplighter(c0) and not A.is_wire_permutation(c0)
    assert A.is_wire_permutation(G.IDENTITY) and A.is_lamplighter(G.IDENTITY)
    sigma = G.make_named("sigma")
    assert A.is_wire_permutation(sigma) and A.is_lamplighter(sigma)
    assert not A.is_wire_permutation(G.make_named("c1"))
    assert not A.is_lamplighter(G.make_named("c1"))


# -- one-sided flow ------------------------------------------------------------


def test_one_sided_examples():
    for k in range(5):
        ck = G.make_named("ck", k)
        assert A.in_GL(ck.inert)
        assert A.in_GR(ck.reverse_conjugate().inert)
        if k >= 1:
            assert not A.in_GR(ck.inert)
    s = G.make_named("swap").inert
    assert not A.in_GR(s) and not A.in_GL(s)
    assert A.in_GR(G.identity_gate()) and A.in_GL(G.identity_gate())
    # flips are one-cell local, so they flow both ways
    c0 = G.make_named("c0").inert
    assert A.in_GR(c0) and A.in_GL(c0)


def test_both_sided_gates_are_cellwise():
    # exhaustively at width <= 3: in both one-sided groups means every
    # cell depends only on itself, i.e. a fixed pattern of flips
    for width in (1, 2, 3):
        size = 1 << width
        for perm in itertools.permutations(range(size)) if width < 3 else _sampled_perms(size, 300):
            g = G.canonicalize(0, width - 1, np.array(perm))
            if g.is_identity:
                continue
            if A.in_GR(g) and A.in_GL(g):
                f = G.GroupElement(0, g)
                assert A.is_lamplighter(f) or A.is_wire_permutation(f)


def _sampled_perms(size, count):
    for _ in range(count):
        yield tuple(RNG.permutation(size))


# -- coset preservation ---------------------------------------------------------


def test_in_GV_examples():
    f = G.make_word_swap("00", "11").inert
    assert A.in_GV(f, "11")
    c0 = G.make_named("c0").inert
    for w in ("11", "101", "1"):
        assert A.in_GV(c0, w)
    # the controlled flip preserves no proper shift-span cosets
    c1 = G.make_named("c1").inert
    for w in ("11", "101", "110"):
        assert not A.in_GV(c1, w)
    assert A.in_GV(G.identity_gate(), "101")
    with pytest.raises(ValueError):
        A.in_GV(c1, "000")


def test_in_GV_swap_difference_span():
    # a pattern swap preserves cosets of the span of its own difference
    for u, v in [("0011", "0101"), ("110", "011"), ("10010", "11011")]:
        f = G.make_word_swap(u, v).inert
        d = "".join("1" if a != b else "0" for a, b in zip(u, v))
        assert A.in_GV(f, d)


# -- swap classification -----------------------------------------------------------


def test_classify_swap_examples():
    assert A.classify_swap("001", "011").verdict is A.SwapVerdict.UNIVERSAL
    cls = A.classify_swap("011", "111")
    assert cls.verdict is A.SwapVerdict.LEFT_ONE_SIDED and cls.verified
    cls = A.classify_swap("00", "11")
    assert cls.verdict is A.SwapVerdict.COSET_PRESERVING
    assert cls.witness == "11" and cls.verified
    assert A.classify_swap("010", "010").verdict is A.SwapVerdict.TRIVIAL
    cls = A.classify_swap("10", "11")
    assert cls.verdict is A.SwapVerdict.RIGHT_ONE_SIDED and cls.verified


def test_classify_swap_matches_pattern_exhaustively():
    for n in range(1, 6):
        for iu in range(1 << n):
            for iv in range(1 << n):
                u, v = int_to_word(iu, n), int_to_word(iv, n)
                cls = A.classify_swap(u, v, verify=False)
                d = [i for i in range(n) if u[i] != v[i]]
                expect_universal = len(d) == 1 and 0 < d[0] < n - 1
                assert (cls.verdict is A.SwapVerdict.UNIVERSAL) == expect_universal


def test_classify_swap_length_mismatch():
    with pytest.raises(ValueError):
        A.classify_swap("01", "011")


# -- CA rule classification ----------------------------------------------------------


def test_classify_eca_partition():
    verdicts = [A.classify_eca(r) for r in range(256)]
    bijective = [c for c in verdicts if c.verdict is not A.EcaVerdict.NOT_BIJECTIVE]
    universal = [c.rule for c in verdicts if c.verdict is A.EcaVerdict.UNIVERSAL]
    assert len(bijective) == 16
    assert universal == [57, 99]
    assert A.classify_eca(51).reason == "equals-c0"
    assert A.classify_eca(105).reason == "affine"
    assert A.classify_eca(204).reason == "identity-like"
    assert A.classify_eca(0).verdict is A.EcaVerdict.NOT_BIJECTIVE
    assert A.classify_eca(0).context is not None


def test_bijective_rules_match_the_mask_pattern():
    # bijective iff bits come in complementary pairs per neighbour context
    for r in range(256):
        bits = [(r >> i) & 1 for i in range(8)]
        expected = all(bits[w] != bits[w | 0b010] for w in (0, 1, 4, 5))
        actual = A.classify_eca(r).verdict is not A.EcaVerdict.NOT_BIJECTIVE
        assert actual == expected


def test_universal_certificates_verify():
    for rule in (57, 99):
        cert = A.classify_eca(rule).certificate
        assert cert is not None and cert["flip_reached"]
    with pytest.raises(ValueError):
        A.flip_certificate(51)


def test_flip_program_report_all_true():
    # for this particular involution program all four readings validate;
    # the report measures rather than assumes
    report = A.flip_program_report()
    assert report["standard/first-acts-last"]
    assert report["standard/first-acts-last"] == report["standard/first-acts-first"]


def test_flip_program_discriminates_random_words():
    # the machinery is not trivially satisfied: random words fail
    rng = np.random.default_rng(5)
    gens = {"e": G.make_eca(57)}
    c0 = G.make_named("c0")
    letters = {k: ("e", cell) for k, (_, cell) in A.FLIP_PROGRAM_LETTERS.items()}
    hits = 0
    for _ in range(10):
        word = "".join(rng.choice(list("abc")) for _ in range(50))
        expr = G.GateExpr.from_letters(word, letters)
        if G.evaluate_expr(expr, gens) == c0:
            hits += 1
    assert hits == 0
