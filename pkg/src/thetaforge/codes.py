"""Binary linear codes on up to 64 coordinates.

Codewords are bitmasks (bit i = coordinate i+1), addition is XOR, and a
code is held as a row-reduced basis.  The built-in catalog carries the
extended Hamming code of length 8, the extended Golay code of length 24
in (I | B) form, and their direct-sum combination of length 16.
"""

from __future__ import annotations

from .errors import DomainError, ParseError
from .perms import Perm

ENUMERATION_CAP = 2 ** 24

HAMMING8_ROWS = [
    "10000111",
    "01001011",
    "00101101",
    "00011110",
]

_GOLAY_B = [
    "110111000101",
    "101110001011",
    "011100010111",
    "111000101101",
    "110001011011",
    "100010110111",
    "000101101111",
    "001011011101",
    "010110111001",
    "101101110001",
    "011011100011",
    "111111111110",
]

GOLAY24_ROWS = [
    ("0" * i + "1" + "0" * (11 - i)) + b for i, b in enumerate(_GOLAY_B)
]


def _mask_from_row(row):
    mask = 0
    for i, ch in enumerate(row):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ParseError("invalid character %r in code row %r" % (ch, row))
    return mask


def mask_to_points(mask):
    """1-based coordinates of a bitmask, ascending."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


class BinaryCode:
    """A binary linear code, stored as a reduced row-echelon basis."""

    __slots__ = ("n", "basis")

    def __init__(self, n, rows):
        if not 1 <= n <= 64:
            raise DomainError("code length %d outside 1..64" % n)
        self.n = n
        basis = []
        for row in rows:
            row = int(row)
            if row >> n:
                raise DomainError("codeword 0x%x exceeds length %d" % (row, n))
            for b in basis:
                low = b & -b
                if row & low:
                    row ^= b
            if row:
                basis.append(row)
        # back-substitute so each pivot appears in one row only
        basis.sort(key=lambda r: r & -r)
        for i, b in enumerate(basis):
            low = b & -b
            for j in range(len(basis)):
                if j != i and basis[j] & low:
                    basis[j] ^= b
        self.basis = tuple(basis)

    # ---------- constructors ----------

    @classmethod
    def from_rows_text(cls, rows):
        rows = [r.strip() for r in rows if r.strip()]
        if not rows:
            raise ParseError("no generator rows given")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ParseError("generator rows have differing lengths")
        return cls(n, [_mask_from_row(r) for r in rows])

    @classmethod
    def from_file(cls, path):
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    rows.append(line)
        if not rows:
            raise ParseError("no generator rows in %s" % path)
        return cls.from_rows_text(rows)

    # ---------- inspection ----------

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, mask):
        for b in self.basis:
            if mask & (b & -b):
                mask ^= b
        return mask == 0

    def codewords(self):
        """All codewords, in a deterministic order."""
        if self.dim > 24:
            raise DomainError(
                "refusing to enumerate 2^%d codewords" % self.dim)
        words = [0]
        for b in self.basis:
            words += [w ^ b for w in words]
        return words

    def weight_enumerator(self):
        """Counts of codewords by Hamming weight, as a dict."""
        we = {}
        for w in self.codewords():
            k = w.bit_count()
            we[k] = we.get(k, 0) + 1
        return we

    def min_weight(self):
        nonzero = [w for w in self.weight_enumerator() if w]
        if not nonzero:
            raise DomainError("the zero code has no minimum weight")
        return min(nonzero)

    def is_self_dual(self):
        if 2 * self.dim != self.n:
            return False
        rows = self.basis
        return all((a & b).bit_count() % 2 == 0 for a in rows for b in rows)

    def is_doubly_even(self):
        return all(w % 4 == 0 for w in self.weight_enumerator())

    def checks(self):
        return {
            "length": self.n,
            "dim": self.dim,
            "min_weight": self.min_weight() if self.dim else None,
            "self_dual": self.is_self_dual(),
            "doubly_even": self.is_doubly_even(),
        }

    # ---------- symmetry ----------

    def is_automorphism(self, perm):
        if perm.n != self.n:
            return False
        return all(self.contains(perm.apply_mask(b)) for b in self.basis)

    def fixed_subcode(self, gens):
        """Subcode of words fixed by every generator.

        Raises if some generator is not an automorphism of the code,
        naming the offender.
        """
        for g in gens:
            if g.n != self.n:
                raise DomainError(
                    "permutation %s acts on %d points, code has length %d"
                    % (g, g.n, self.n))
            if not self.is_automorphism(g):
                raise DomainError(
                    "%s is not an automorphism of the code" % g)
        fixed = [w for w in self.codewords()
                 if all(g.apply_mask(w) == w for g in gens)]
        return BinaryCode(self.n, fixed)

    def direct_sum(self, other):
        rows = list(self.basis) + [r << self.n for r in other.basis]
        return BinaryCode(self.n + other.n, rows)

    def __eq__(self, other):
        return (isinstance(other, BinaryCode)
                and self.n == other.n and self.basis == other.basis)

    def __repr__(self):
        return "BinaryCode(n=%d, dim=%d)" % (self.n, self.dim)


def catalog_code(name):
    """Fetch a built-in code: hamming8, golay24, hamming8+hamming8."""
    if name == "hamming8":
        return BinaryCode.from_rows_text(HAMMING8_ROWS)
    if name == "golay24":
        code = BinaryCode.from_rows_text(GOLAY24_ROWS)
        info = code.checks()
        if (info["dim"], info["min_weight"]) != (12, 8) \
                or not info["self_dual"] or not info["doubly_even"]:
            raise DomainError("built-in Golay rows failed validation: %r" % info)
        return code
    if name == "hamming8+hamming8":
        h = BinaryCode.from_rows_text(HAMMING8_ROWS)
        return h.direct_sum(h)
    raise DomainError("unknown catalog code %r" % name)


def load_code(source):
    """Resolve a code from a catalog name or a file path."""
    try:
        return catalog_code(source)
    except DomainError:
        pass
    try:
        return BinaryCode.from_file(source)
    except OSError as exc:
        raise DomainError(
            "%r is neither a catalog code nor a readable file (%s)"
            % (source, exc)) from None
