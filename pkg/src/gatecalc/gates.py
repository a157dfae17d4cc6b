"""Gates on the two-sided infinite binary tape.

A *gate* (inert map) changes only cells inside a finite window and reads
only that window; everything outside passes through untouched.  Together
with the tape shift these maps form a group in which every element has a
unique normal form

    shift^n  followed by  an inert gate,

so deciding equality reduces to comparing an integer with a canonical
finite table.  The canonical table of a gate is kept on the *hull of its
strong support*: a boundary cell is dropped whenever the gate never
changes it and no output depends on it.  That makes table equality exact
group-element equality, which everything else here (identity checking,
classification, search) relies on.

Conventions, fixed once and used everywhere:

* shift(x)[i] = x[i+1]; conjugating a gate by shift^-k moves its window
  k cells to the right, written gate@k in expressions.
* window words are MSB-first: the leftmost cell of a window is the most
  significant bit of its table index.
* in a composition f*g, g is applied first; expression strings list the
  last-applied atom first (function order).
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .bitcore import check_word

# Hard ceiling for table windows; 24 means a 16M-entry table.  Compose
# checks the projected hull against this before allocating anything.
WINDOW_CAP = 24


class WindowCapError(ValueError):
    """Raised when an operation would need a wider window than allowed."""

    def __init__(self, required_width: int, cap: int):
        super().__init__(
            f"window cap exceeded: need width {required_width}, cap is {cap}"
        )
        self.required_width = required_width
        self.cap = cap


class NotInvertibleError(ValueError):
    """Raised for a cell-update rule that is not a bijection of the tape."""

    def __init__(self, rule: int, context: tuple[int, int]):
        super().__init__(
            f"e^{rule} not invertible: with (left, right) neighbours {context} "
            f"the centre cell map is constant"
        )
        self.rule = rule
        self.context = context


@functools.lru_cache(maxsize=None)
def _bit_reverse_map(width: int) -> np.ndarray:
    idx = np.arange(1 << width, dtype=np.int64)
    rev = np.zeros(1 << width, dtype=np.int64)
    for p in range(width):
        rev |= ((idx >> p) & 1) << (width - 1 - p)
    rev.setflags(write=False)
    return rev


class InertGate:
    """A gate in canonical form: window hull plus permutation table.

    ``table[u]`` is the image of the window word with integer code ``u``
    (MSB-first, window cell ``lo`` as the top bit).  The identity is the
    distinguished gate with an empty window rather than a width-0 table.
    Instances are immutable; construct via :func:`canonicalize`,
    :func:`make_word_swap` and friends.
    """

    __slots__ = ("lo", "hi", "table", "_hash")

    def __init__(self, lo: int, hi: int, table: np.ndarray):
        # expects already-canonical data; use canonicalize() to build
        self.lo = lo
        self.hi = hi
        table.setflags(write=False)
        self.table = table
        self._hash = hash((lo, hi, table.tobytes()))

    # -- basic shape ---------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.hi < self.lo

    @property
    def width(self) -> int:
        return 0 if self.is_identity else self.hi - self.lo + 1

    @property
    def window(self) -> tuple[int, int] | None:
        return None if self.is_identity else (self.lo, self.hi)

    @property
    def radius(self) -> int:
        """Least r such that some shifted copy fits in [-r, r]."""
        return self.width // 2

    @property
    def offset(self) -> int:
        """Least m for which the window fits in [m - radius, m + radius]."""
        if self.is_identity:
            return 0
        return self.hi - self.radius

    def padded_rule(self) -> tuple[int, np.ndarray]:
        """Table widened to exactly 2*radius + 1 cells.

        Returns (start, table) where start = offset - radius.  At most one
        pass-through cell is added on the left (even-width hulls only).
        """
        if self.is_identity:
            raise ValueError("identity gate has no rule window")
        full = 2 * self.radius + 1
        pad = full - self.width
        if pad == 0:
            return self.lo, self.table
        size = 1 << full
        idx = np.arange(size, dtype=np.int64)
        mask = (1 << self.width) - 1
        top = idx & ~mask
        out = top | self.table[idx & mask]
        return self.lo - pad, out

    # -- group structure ------------------------------------------------

    def compose(self, other: "InertGate") -> "InertGate":
        """self after other (other is applied first)."""
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        width = hi - lo + 1
        if width > WINDOW_CAP:
            raise WindowCapError(width, WINDOW_CAP)
        words = np.arange(1 << width, dtype=np.int64)
        words = _substitute(words, other, hi)
        words = _substitute(words, self, hi)
        return canonicalize(lo, hi, words)

    def inverse(self) -> "InertGate":
        if self.is_identity:
            return self
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(self.table.size, dtype=np.int64)
        # the strong support of the inverse is the same set of cells
        return InertGate(self.lo, self.hi, inv)

    def shift_by(self, k: int) -> "InertGate":
        """Window translated k cells to the right; same table."""
        if self.is_identity or k == 0:
            return self
        return InertGate(self.lo + k, self.hi + k, self.table)

    def mirror(self) -> "InertGate":
        """Conjugate by the tape reversal x[i] -> x[-i]."""
        if self.is_identity:
            return self
        rev = _bit_reverse_map(self.width)
        return InertGate(-self.hi, -self.lo, rev[self.table[rev]])

    def order(self) -> int:
        """Order as a group element (lcm of table cycle lengths)."""
        if self.is_identity:
            return 1
        seen = np.zeros(self.table.size, dtype=bool)
        result = 1
        table = self.table
        for start in range(table.size):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = int(table[j])
                length += 1
            result = result * length // math.gcd(result, length)
        return result

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, InertGate):
            return NotImplemented
        if self.is_identity or other.is_identity:
            return self.is_identity and other.is_identity
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_identity:
            return "InertGate(identity)"
        return f"InertGate[{self.lo}..{self.hi}]"


_IDENTITY_GATE = InertGate(0, -1, np.zeros(0, dtype=np.int64))


def identity_gate() -> InertGate:
    return _IDENTITY_GATE


def _substitute(words: np.ndarray, g: InertGate, hi: int) -> np.ndarray:
    # rewrite the g-window bits of every word; window of g must sit
    # inside the ambient window whose rightmost cell is hi
    s = hi - g.hi
    mask = (1 << g.width) - 1
    sub = (words >> s) & mask
    return (words & ~(mask << s)) | (g.table[sub] << s)


def canonicalize(lo: int, hi: int, table: Iterable[int] | np.ndarray) -> InertGate:
    """Canonical gate for a permutation table on window [lo, hi].

    Shrinks the window to the hull of the strong support: a cell is
    dropped iff the table never changes it and no other output depends
    on it.  Raises for tables that are not permutations.
    """
    table = np.asarray(table, dtype=np.int64)
    width = hi - lo + 1
    if width < 0:
        raise ValueError("empty window: use identity_gate()")
    if width > WINDOW_CAP:
        raise WindowCapError(width, WINDOW_CAP)
    size = 1 << width
    if table.shape != (size,):
        raise ValueError(f"table must have {size} entries for window [{lo}, {hi}]")
    if table.size and (table.min() < 0 or table.max() >= size):
        raise ValueError("not a permutation: entry out of range")
    if np.bincount(table, minlength=size).max(initial=1) != 1:
        raise ValueError("not a permutation: repeated value")

    idx = np.arange(size, dtype=np.int64)
    changed_mask = int(np.bitwise_or.reduce(table ^ idx, initial=0))
    support = []
    for p in range(width):
        bit = 1 << p
        if changed_mask & bit:
            support.append(p)
            continue
        diff = (table[idx ^ bit] ^ table) & ~bit
        if diff.any():
            support.append(p)
    if not support:
        return _IDENTITY_GATE
    p_min, p_max = support[0], support[-1]
    if p_min == 0 and p_max == width - 1:
        return InertGate(lo, hi, table)
    new_width = p_max - p_min + 1
    mask = (1 << new_width) - 1
    sub = np.arange(1 << new_width, dtype=np.int64)
    new_table = (table[sub << p_min] >> p_min) & mask
    return InertGate(hi - p_max, hi - p_min, new_table)


@dataclass(frozen=True)
class GroupElement:
    """Normal form shift^n * inert; unique, so == is group equality."""

    shift: int
    inert: InertGate

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and self.inert.is_identity

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self after other."""
        inner = self.inert.shift_by(other.shift)
        return GroupElement(self.shift + other.shift, inner.compose(other.inert))

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.compose(other)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.shift, self.inert.inverse().shift_by(-self.shift))

    def shift_conjugate(self, k: int) -> "GroupElement":
        """Conjugate moving the gate k cells to the right (shift part kept)."""
        return GroupElement(self.shift, self.inert.shift_by(k))

    def reverse_conjugate(self) -> "GroupElement":
        return GroupElement(-self.shift, self.inert.mirror())

    def to_record(self) -> dict:
        win = self.inert.window
        return {
            "shift_power": self.shift,
            "window_lo": None if win is None else win[0],
            "window_hi": None if win is None else win[1],
            "table": [int(v) for v in self.inert.table],
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "GroupElement":
        if record["window_lo"] is None:
            inert = identity_gate()
        else:
            inert = canonicalize(
                record["window_lo"], record["window_hi"], record["table"]
            )
        return cls(record["shift_power"], inert)

    def __repr__(self):
        if self.is_identity:
            return "GroupElement(identity)"
        return f"GroupElement(shift={self.shift}, inert={self.inert!r})"


IDENTITY = GroupElement(0, _IDENTITY_GATE)


# -- operations on group elements ----------------------------------------


def compose(f: GroupElement, g: GroupElement) -> GroupElement:
    """Normal form of f after g; shift powers add."""
    return f.compose(g)


def compose_many(gates: Iterable[GroupElement]) -> GroupElement:
    """Compose a sequence, first element applied last (function order)."""
    acc = IDENTITY
    for gate in reversed(list(gates)):
        acc = gate.compose(acc)
    return acc


def inverse(f: GroupElement) -> GroupElement:
    return f.inverse()


def shift_conjugate(f: GroupElement, k: int) -> GroupElement:
    return f.shift_conjugate(k)


def reverse_conjugate(f: GroupElement) -> GroupElement:
    return f.reverse_conjugate()


# -- named generators ---------------------------------------------------


def _controlled_not(k: int) -> InertGate:
    # flip cell 0 iff cells 1..k all hold 1; window [0, k]
    if k == 0:
        return canonicalize(0, 0, np.array([1, 0]))
    size = 1 << (k + 1)
    idx = np.arange(size, dtype=np.int64)
    low = (1 << k) - 1
    table = np.where((idx & low) == low, idx ^ (1 << k), idx)
    return canonicalize(0, k, table)


def make_named(name: str, k: int | None = None) -> GroupElement:
    """Build a generator by name.

    Known names: identity, sigma (the shift), c0 (flip cell 0),
    c1 (flip cell 0 iff cell 1 is 1), c2 (Toffoli), ck (needs k),
    rc1 (mirrored c1: flip cell 0 iff cell -1 is 1), swap (cells 0, 1).
    """
    if name == "identity":
        return IDENTITY
    if name == "sigma":
        return GroupElement(1, identity_gate())
    if name == "c0":
        return GroupElement(0, _controlled_not(0))
    if name == "c1":
        return GroupElement(0, _controlled_not(1))
    if name == "c2":
        return GroupElement(0, _controlled_not(2))
    if name == "ck":
        if k is None or k < 0:
            raise ValueError("ck needs k >= 0")
        return GroupElement(0, _controlled_not(k))
    if name == "rc1":
        return GroupElement(0, _controlled_not(1)).reverse_conjugate()
    if name == "swap":
        return GroupElement(0, canonicalize(0, 1, np.array([0, 2, 1, 3])))
    raise ValueError(f"unknown generator {name!r}")


def make_word_swap(u: str, v: str) -> GroupElement:
    """The involution exchanging the patterns u and v at cells [0, n-1]."""
    check_word(u)
    check_word(v)
    if len(u) != len(v):
        raise ValueError(f"unequal lengths: {len(u)} vs {len(v)}")
    if not u:
        raise ValueError("patterns must be nonempty")
    n = len(u)
    table = np.arange(1 << n, dtype=np.int64)
    iu, iv = int(u, 2), int(v, 2)
    table[iu], table[iv] = iv, iu
    return GroupElement(0, canonicalize(0, n - 1, table))


def make_eca(rule: int) -> GroupElement:
    """One-cell application of the elementary cellular automaton `rule`.

    The centre cell becomes rule bit number (left, centre, right) read as
    a 3-bit number; other cells keep their values.  Raises
    NotInvertibleError unless every (left, right) context induces a
    bijection of the centre cell.
    """
    if not 0 <= rule <= 255:
        raise ValueError("rule number must be in [0, 255]")
    for left in (0, 1):
        for right in (0, 1):
            w0 = (left << 2) | right
            w1 = w0 | 2
            if (rule >> w0) & 1 == (rule >> w1) & 1:
                raise NotInvertibleError(rule, (left, right))
    words = np.arange(8, dtype=np.int64)
    centre = (rule >> words) & 1
    table = (words & 0b101) | (centre << 1)
    return GroupElement(0, canonicalize(-1, 1, table))


def named_or_eca(name: str) -> GroupElement:
    """Resolve 'c0', 'swap', 'ck3', 'e57', ... (CLI-facing)."""
    m = re.fullmatch(r"e(\d+)", name)
    if m:
        return make_eca(int(m.group(1)))
    m = re.fullmatch(r"ck(\d+)", name)
    if m:
        return make_named("ck", int(m.group(1)))
    return make_named(name)


# -- finite application -------------------------------------------------


def apply(f: GroupElement, x: str, anchor: int = 0) -> str:
    """Image of the cells [anchor, anchor + len(x)) under f.

    x supplies the tape contents on that interval only; any cell the
    computation would need outside it is an error, never defaulted.
    """
    check_word(x)
    lo_in, hi_in = anchor, anchor + len(x) - 1
    g, k = f.inert, f.shift
    missing: set[int] = set()
    window_used = False
    for i in range(lo_in, hi_in + 1):
        j = i + k
        if not g.is_identity and g.lo <= j <= g.hi:
            window_used = True
        elif not lo_in <= j <= hi_in:
            missing.add(j)
    if window_used:
        for c in range(g.lo, g.hi + 1):
            if not lo_in <= c <= hi_in:
                missing.add(c)
    if missing:
        raise ValueError(f"insufficient context: missing cells {sorted(missing)}")
    out_win = 0
    if window_used:
        u = int(x[g.lo - anchor : g.hi - anchor + 1], 2)
        out_win = int(g.table[u])
    bits = []
    for i in range(lo_in, hi_in + 1):
        j = i + k
        if window_used and g.lo <= j <= g.hi:
            bits.append(str((out_win >> (g.hi - j)) & 1))
        else:
            bits.append(x[j - lo_in])
    return "".join(bits)


# -- expressions over named generators ----------------------------------


_ATOM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:@(-?\d+))?")


@dataclass(frozen=True)
class GateExpr:
    """A word over named generators with per-atom window shifts.

    Atom (name, k) denotes the generator conjugated to sit k cells to the
    right (gate@k).  The first atom of the tuple is applied *last*; use
    leftmost_first=True in evaluate_expr for the chronological reading.
    """

    atoms: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "GateExpr":
        atoms = []
        for token in text.split():
            m = _ATOM_RE.fullmatch(token)
            if not m:
                raise ValueError(f"bad expression atom {token!r}")
            atoms.append((m.group(1), int(m.group(2) or 0)))
        return cls(tuple(atoms))

    @classmethod
    def from_letters(cls, text: str, letters: Mapping[str, tuple[str, int]]) -> "GateExpr":
        """Compact single-letter form, e.g. 'abcab' with a letter table."""
        try:
            return cls(tuple(letters[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r}") from None

    def to_string(self) -> str:
        return " ".join(n if k == 0 else f"{n}@{k}" for n, k in self.atoms)

    def shifted(self, dk: int) -> "GateExpr":
        return GateExpr(tuple((n, k + dk) for n, k in self.atoms))

    def reversed(self) -> "GateExpr":
        return GateExpr(self.atoms[::-1])

    def __add__(self, other: "GateExpr") -> "GateExpr":
        return GateExpr(self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)


def evaluate_expr(
    expr: GateExpr,
    generators: Mapping[str, GroupElement],
    leftmost_first: bool = False,
) -> GroupElement:
    """Compose the atoms of expr; by default the first atom acts last."""
    cache: dict[tuple[str, int], GroupElement] = {}

    def resolve(atom):
        gate = cache.get(atom)
        if gate is None:
            name, k = atom
            if name not in generators:
                raise ValueError(f"unknown generator {name!r}")
            gate = generators[name].shift_conjugate(k)
            cache[atom] = gate
        return gate

    acc = IDENTITY
    order = expr.atoms if leftmost_first else reversed(expr.atoms)
    for atom in order:
        acc = resolve(atom).compose(acc)
    return acc
