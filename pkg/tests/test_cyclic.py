import numpy as np
import pytest

from gatecalc import gates as G
from gatecalc import cyclic as C
from gatecalc.bitcore import int_to_word

RNG = np.random.default_rng(7)


def random_gate(max_width=5, lo_range=(-3, 3)):
    width = int(RNG.integers(1, max_width + 1))
    lo = int(RNG.integers(lo_range[0], lo_range[1] + 1))
    return G.canonicalize(lo, lo + width - 1, RNG.permutation(1 << width))


def test_rotation_is_the_projected_shift():
    sigma = G.make_named("sigma")
    p = C.project_formula(sigma, 3)
    for k in range(8):
        w = int_to_word(k, 3)
        expected = w[1:] + w[0]
        assert int_to_word(int(p.perm[k]), 3) == expected


def test_identity_projection():
    assert C.project_formula(G.IDENTITY, 5) == C.CyclicPerm.identity(5)


def test_flip_projection_frozen():
    p = C.project_formula(G.make_named("c0"), 4)
    assert np.array_equal(p.perm, np.arange(16) ^ 0b1000)
    assert C.project_formula(G.make_named("c0"), 4) == C.project_periodic(
        G.make_named("c0"), 4
    )


def test_word_swap_projection_periodic():
    f = G.make_word_swap("01", "10")
    p = C.project_periodic(f, 4)
    # prefix 01 <-> 10, the other two cells untouched
    assert int_to_word(int(p.perm[0b0111]), 4) == "1011"
    assert int_to_word(int(p.perm[0b1011]), 4) == "0111"
    assert int(p.perm[0b0011]) == 0b0011
    assert p == C.project_formula(f, 4)


def test_ring_too_small():
    e57 = G.make_eca(57)
    with pytest.raises(C.RingTooSmallError) as err:
        C.project_formula(e57, 3)
    assert err.value.min_ring == 4
    with pytest.raises(C.RingTooSmallError):
        C.project_periodic(e57, 3)


def test_formula_matches_periodic_exhaustively():
    # includes the wraparound branch via large offsets
    for _ in range(60):
        gate = random_gate()
        f = G.GroupElement(int(RNG.integers(-3, 4)), gate)
        for n in range(C.min_ring(f), 11):
            assert C.project_formula(f, n) == C.project_periodic(f, n), (gate, n)


def test_wraparound_branch_specifically():
    e57 = G.make_eca(57)
    for n in (4, 5, 6):
        for j in (n - 1, n, n + 2):
            f = e57.shift_conjugate(j)  # window [j-1, j+1] crosses the seam
            assert C.project_formula(f, n) == C.project_periodic(f, n)


def test_projection_parity_even():
    for _ in range(40):
        gate = random_gate()
        f = G.GroupElement(0, gate)
        for n in range(C.min_ring(f), 10):
            assert C.project_formula(f, n).is_even()


def test_sign_of_rotations():
    sigma = G.make_named("sigma")
    assert C.sign(C.project_formula(sigma, 2)) == "odd"
    for n in range(3, 17):
        assert C.sign(C.project_formula(sigma, n)) == "even"
    assert C.sign(C.CyclicPerm.identity(6)) == "even"


def test_projection_is_a_homomorphism_on_shifts():
    sigma = G.make_named("sigma")
    p1 = C.project_formula(sigma, 6)
    p3 = C.project_formula(G.GroupElement(3, G.identity_gate()), 6)
    assert p1.compose(p1).compose(p1) == p3


def test_necklace_counts():
    assert C.necklace_count(1) == 2
    assert C.necklace_count(2) == 3
    assert C.necklace_count(3) == 4
    for n in range(1, 17):
        assert C.necklace_count(n) == C.necklace_count_by_orbits(n)
    for n in range(3, 33):
        assert C.necklace_count(n) % 2 == 0


def test_parity_of_counts_matches_rotation_sign():
    sigma = G.make_named("sigma")
    for n in range(2, 15):
        even = ((1 << n) - C.necklace_count(n)) % 2 == 0
        assert (C.sign(C.project_formula(sigma, n)) == "even") == even


def test_conjugation_identity():
    e57 = G.make_eca(57)
    assert C.check_conjugation_identity(e57.inert, 5, 1)
    assert C.check_conjugation_identity(G.identity_gate(), 6, 4)
    assert C.check_conjugation_identity(G.make_word_swap("01", "10").inert, 6, 3)
    for _ in range(50):
        gate = random_gate(max_width=4)
        n = int(RNG.integers(2 * gate.radius + 2, 11))
        m = int(RNG.integers(-8, 9))
        assert C.check_conjugation_identity(gate, n, m)


def test_locality_homomorphism():
    e57 = G.make_eca(57)
    fs = [e57.shift_conjugate(j) for j in range(1, 7)]
    assert C.check_locality_homomorphism(fs, 8, 0) is C.LocalityOutcome.HOLDS
    assert (
        C.check_locality_homomorphism([e57.shift_conjugate(3)], 8, 0)
        is C.LocalityOutcome.HOLDS
    )
    far = [e57.shift_conjugate(1), e57.shift_conjugate(8)]
    assert C.check_locality_homomorphism(far, 12, 0) is C.LocalityOutcome.HOLDS
    # windows poking out of [h, h+n-1]
    assert (
        C.check_locality_homomorphism(fs, 6, 0)
        is C.LocalityOutcome.HYPOTHESIS_NOT_MET
    )
    # shift powers tighten the hypothesis via the total displacement
    shifted = [G.GroupElement(1, e57.shift_conjugate(1).inert)]
    assert (
        C.check_locality_homomorphism(shifted, 8, 0)
        is C.LocalityOutcome.HYPOTHESIS_NOT_MET
    )


def test_cyclic_perm_validation():
    with pytest.raises(ValueError, match="not a permutation"):
        C.CyclicPerm(2, [0, 0, 1, 2])
    with pytest.raises(ValueError, match="not a permutation"):
        C.CyclicPerm(1, [0, 4])
    with pytest.raises(ValueError):
        C.CyclicPerm(0, [0])


def test_cycles_structure():
    p = C.project_formula(G.make_named("sigma"), 3)
    lens = sorted(len(c) for c in p.cycles())
    assert lens == [3, 3]  # two 3-cycles; the uniform words are fixed
