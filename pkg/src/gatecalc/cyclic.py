"""Projection of tape gates onto rings of n binary cells.

A gate whose rule window is narrower than the ring can be applied at
every n-th cell simultaneously; on n-periodic tapes the copies commute,
and reading off one period turns the gate into a permutation of the 2^n
window words.  Two independent implementations are kept side by side:

* project_formula: closed-form splice of the padded rule into the word,
  with a separate wraparound branch when the window crosses the seam;
* project_periodic: literal simulation on a 3n-cell periodic buffer,
  one word at a time.  Slow and boring on purpose; it is the oracle the
  formula is validated against.

The module also carries the parity bookkeeping (projected gates are
always even permutations; the ring rotation is even exactly when the
binary necklace count is, i.e. for n >= 3) and executable forms of the
two locality identities used to transfer tape identities onto rings.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .gates import GroupElement, InertGate

# Rings above this need >1M-entry permutations; raise deliberately.
RING_CAP = 20


class RingTooSmallError(ValueError):
    def __init__(self, n: int, min_ring: int):
        super().__init__(f"ring too small: n={n}, gate needs n >= {min_ring}")
        self.n = n
        self.min_ring = min_ring


class CyclicPerm:
    """A permutation of the binary words of length n (MSB-first codes)."""

    __slots__ = ("n", "perm", "_hash")

    def __init__(self, n: int, perm: np.ndarray):
        if n < 1 or n > RING_CAP:
            raise ValueError(f"ring size must be in [1, {RING_CAP}]")
        perm = np.asarray(perm, dtype=np.int64)
        if perm.shape != (1 << n,):
            raise ValueError(f"permutation must have {1 << n} entries")
        if perm.min() < 0 or perm.max() >= 1 << n:
            raise ValueError("not a permutation: entry out of range")
        if np.bincount(perm, minlength=1 << n).max() != 1:
            raise ValueError("not a permutation")
        perm.setflags(write=False)
        self.n = n
        self.perm = perm
        self._hash = hash((n, perm.tobytes()))

    @classmethod
    def identity(cls, n: int) -> "CyclicPerm":
        return cls(n, np.arange(1 << n, dtype=np.int64))

    @classmethod
    def rotation(cls, n: int, k: int = 1) -> "CyclicPerm":
        """Ring shift: cell i of the image reads cell i+k of the source."""
        k %= n
        if k == 0:
            return cls.identity(n)
        mask = (1 << n) - 1
        w = np.arange(1 << n, dtype=np.int64)
        return cls(n, ((w << k) | (w >> (n - k))) & mask)

    def compose(self, other: "CyclicPerm") -> "CyclicPerm":
        """self after other."""
        if self.n != other.n:
            raise ValueError("ring size mismatch")
        return CyclicPerm(self.n, self.perm[other.perm])

    def __mul__(self, other):
        if not isinstance(other, CyclicPerm):
            return NotImplemented
        return self.compose(other)

    def inverse(self) -> "CyclicPerm":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size, dtype=np.int64)
        return CyclicPerm(self.n, inv)

    def cycle_count(self) -> int:
        seen = np.zeros(self.perm.size, dtype=bool)
        perm = self.perm
        cycles = 0
        for start in range(perm.size):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
        return cycles

    def is_even(self) -> bool:
        return (self.perm.size - self.cycle_count()) % 2 == 0

    def cycles(self) -> list[list[int]]:
        """Nontrivial cycles, each starting at its least element."""
        seen = np.zeros(self.perm.size, dtype=bool)
        out = []
        for start in range(self.perm.size):
            if seen[start] or self.perm[start] == start:
                seen[start] = True
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = int(self.perm[j])
            out.append(cyc)
        return out

    def __eq__(self, other):
        if not isinstance(other, CyclicPerm):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CyclicPerm(n={self.n})"


def sign(p: CyclicPerm) -> str:
    """Parity of the permutation: 'even' or 'odd' (via cycle count)."""
    return "even" if p.is_even() else "odd"


def min_ring(f: GroupElement) -> int:
    """Smallest admissible ring size for projecting f (2R + 2)."""
    return 2 * f.inert.radius + 2


def _check_ring(f: GroupElement, n: int) -> None:
    need = min_ring(f)
    if n < need:
        raise RingTooSmallError(n, need)
    if n < 1 or n > RING_CAP:
        raise ValueError(f"ring size must be in [1, {RING_CAP}]")


def _splice_perm(start: int, width: int, table: np.ndarray, n: int) -> np.ndarray:
    # apply a width-cell rule at ring cells start .. start+width-1 (mod n)
    mask = (1 << width) - 1
    a = start % n
    w = np.arange(1 << n, dtype=np.int64)
    if a + width <= n:
        # window sits at cells [a, a + width) without wrapping
        s = n - a - width
        return (w & ~(mask << s)) | (table[(w >> s) & mask] << s)
    suffix = n - a          # cells [a, n) hold the head of the window
    prefix = width - suffix  # cells [0, prefix) hold the tail
    smask = (1 << suffix) - 1
    pmask = (1 << prefix) - 1
    mid_mask = ((1 << (n - width)) - 1) << suffix
    u = ((w & smask) << prefix) | (w >> (n - prefix))
    out = table[u]
    return ((out & pmask) << (n - prefix)) | (w & mid_mask) | (out >> prefix)


def project_formula(f: GroupElement, n: int) -> CyclicPerm:
    """Ring permutation induced by f, by direct splicing of the rule.

    The padded rule (width 2R+1, applied at cells offset-R .. offset+R)
    is spliced into each word; when those cells cross the seam of the
    ring the word is rotated into window order first (the wraparound
    branch).  A shift part contributes a ring rotation.
    """
    _check_ring(f, n)
    g = f.inert
    result = CyclicPerm.identity(n)
    if not g.is_identity:
        start, table = g.padded_rule()
        result = CyclicPerm(n, _splice_perm(start, 2 * g.radius + 1, table, n))
    if f.shift % n:
        result = CyclicPerm.rotation(n, f.shift).compose(result)
    return result


def _project_tight(f: GroupElement, n: int) -> CyclicPerm:
    # like project_formula but on the unpadded window; defined whenever
    # the window itself fits on the ring, even if the padded rule would not
    g = f.inert
    if g.width > n:
        raise RingTooSmallError(n, g.width)
    result = CyclicPerm.identity(n)
    if not g.is_identity:
        result = CyclicPerm(n, _splice_perm(g.lo, g.width, g.table, n))
    if f.shift % n:
        result = CyclicPerm.rotation(n, f.shift).compose(result)
    return result


def project_periodic(f: GroupElement, n: int) -> CyclicPerm:
    """Ring permutation via literal periodic simulation (the oracle).

    For each word, lays out three periods on a buffer, applies the rule
    at every admissible cell congruent to the gate offset, reads one
    period back and rotates it by the shift part.
    """
    _check_ring(f, n)
    g = f.inert
    size = 1 << n
    perm = np.empty(size, dtype=np.int64)
    if g.is_identity:
        positions = []
        radius = 0
        table = None
        width = 0
    else:
        start, table = g.padded_rule()
        radius = g.radius
        width = 2 * radius + 1
        q0 = (start + radius) % n
        positions = [
            q
            for q in (q0 - n, q0, q0 + n)
            if -n <= q - radius and q + radius <= 2 * n - 1
        ]
    k = f.shift % n
    for w in range(size):
        buf = [(w >> (n - 1 - (j % n))) & 1 for j in range(-n, 2 * n)]
        for q in positions:
            base = q - radius + n
            u = 0
            for t in range(width):
                u = (u << 1) | buf[base + t]
            out = int(table[u])
            for t in range(width):
                buf[base + t] = (out >> (width - 1 - t)) & 1
        value = 0
        for i in range(n):
            value = (value << 1) | buf[n + ((i + k) % n)]
        perm[w] = value
    return CyclicPerm(n, perm)


# -- necklaces and parity ------------------------------------------------


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def necklace_count(n: int) -> int:
    """Number of binary words of length n up to rotation (formula)."""
    if not 1 <= n <= 64:
        raise ValueError("n must be in [1, 64]")
    total = sum(euler_phi(d) * (1 << (n // d)) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


def necklace_count_by_orbits(n: int) -> int:
    """Same count by enumerating rotation orbits (n <= 26)."""
    if not 1 <= n <= 26:
        raise ValueError("orbit enumeration supported for n in [1, 26]")
    mask = (1 << n) - 1
    w = np.arange(1 << n, dtype=np.int64)
    least = w.copy()
    for r in range(1, n):
        np.minimum(least, ((w << r) | (w >> (n - r))) & mask, out=least)
    return int((least == w).sum())


# -- locality identities -------------------------------------------------


def check_conjugation_identity(g: InertGate, n: int, m: int) -> bool:
    """Projected gate commutes with rotation up to window translation.

    Checks  g_n . rot^m == rot^m . (g shifted by m)_n  on the full ring.
    """
    f = GroupElement(0, g)
    _check_ring(f, n)
    lhs = project_formula(f, n).compose(CyclicPerm.rotation(n, m))
    rhs = CyclicPerm.rotation(n, m).compose(
        project_formula(f.shift_conjugate(m), n)
    )
    return lhs == rhs


class LocalityOutcome(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


def check_locality_homomorphism(
    fs: Sequence[GroupElement], n: int, h: int
) -> LocalityOutcome:
    """Does projection distribute over this composition?

    Hypothesis: with t the sum of absolute shift powers, every factor's
    padded window, widened by t on both sides, must fit inside
    [h, h + n - 1].  When the hypothesis fails the outcome says so
    instead of guessing.  The hypothesis keeps every window (and the
    window of the composed product) inside one ring period, so the
    tight-window projection is used throughout; it coincides with
    project_formula whenever the latter's precondition holds.
    """
    fs = list(fs)
    if not fs:
        return LocalityOutcome.HOLDS
    t = sum(abs(f.shift) for f in fs)
    for f in fs:
        g = f.inert
        if g.is_identity:
            continue
        radius = g.radius
        centre = g.offset
        if not (h <= centre - t - radius and centre + t + radius <= h + n - 1):
            return LocalityOutcome.HYPOTHESIS_NOT_MET
    product = fs[0]
    for f in fs[1:]:
        product = product.compose(f)
    lhs = _project_tight(product, n)
    rhs = CyclicPerm.identity(n)
    for f in reversed(fs):
        rhs = _project_tight(f, n).compose(rhs)
    return LocalityOutcome.HOLDS if lhs == rhs else LocalityOutcome.FAILS
