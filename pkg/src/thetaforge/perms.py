"""Permutations of coordinates 1..n, their orbits and small groups.

Permutations are stored as tuples of 0-based images.  The text syntax
is disjoint-cycle notation on 1-based points, e.g. "(2,8,4,6)(3,5)",
with "()" for the identity.
"""

from __future__ import annotations

import re
from itertools import permutations as _all_perms
from math import lcm

from .errors import DomainError, ParseError

GROUP_ELEMENT_CAP = 10 ** 6


class Perm:
    """A permutation of {0, ..., n-1}, acting on the left."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        """self * other means: apply other first, then self."""
        if self.n != other.n:
            raise DomainError("permutation degree mismatch: %d vs %d"
                              % (self.n, other.n))
        return Perm(self.images[j] for j in other.images)

    def inverse(self):
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            base = base * base
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles as tuples of 0-based points, each starting
        at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        """Multiset of cycle lengths including fixed points, as a dict."""
        ct = {}
        moved = 0
        for cyc in self.cycles():
            ct[len(cyc)] = ct.get(len(cyc), 0) + 1
            moved += len(cyc)
        fixed = self.n - moved
        if fixed:
            ct[1] = ct.get(1, 0) + fixed
        return ct

    def order(self):
        cycs = self.cycles()
        return lcm(*(len(c) for c in cycs)) if cycs else 1

    def apply_mask(self, mask):
        """Push a coordinate subset (bitmask, bit i = point i) forward."""
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << self.images[low.bit_length() - 1]
            mask ^= low
        return out

    def __str__(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(%s)" % ",".join(str(p + 1) for p in c) for c in cycs)

    def __repr__(self):
        return "Perm(%s)" % str(self)


_TOKEN = re.compile(r"\(|\)|,|\s+|\d+")


def parse_perm(text, n):
    """Parse one permutation in cycle notation on points 1..n."""
    pos = 0
    images = list(range(n))
    touched = set()
    cycle = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected token %r in permutation %r"
                             % (text[pos], text))
        tok = m.group()
        pos = m.end()
        if tok.isspace():
            continue
        if tok == "(":
            if cycle is not None:
                raise ParseError("nested '(' in permutation %r" % text)
            cycle = []
        elif tok == ")":
            if cycle is None:
                raise ParseError("unmatched ')' in permutation %r" % text)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
            cycle = None
        elif tok == ",":
            if cycle is None:
                raise ParseError("',' outside a cycle in permutation %r" % text)
        else:
            if cycle is None:
                raise ParseError("point %s outside a cycle in permutation %r"
                                 % (tok, text))
            p = int(tok) - 1
            if not 0 <= p < n:
                raise ParseError("point %s out of range 1..%d in %r"
                                 % (tok, n, text))
            if p in touched:
                raise ParseError("point %s repeated in permutation %r"
                                 % (tok, text))
            touched.add(p)
            cycle.append(p)
    if cycle is not None:
        raise ParseError("unclosed '(' in permutation %r" % text)
    return Perm(images)


def parse_generators(text, n):
    """Parse a generating set: permutations separated by whitespace,
    commas or semicolons at paren depth zero."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if depth == 0 and ch in ",; \t\n":
            if "".join(cur).strip():
                parts.append("".join(cur).strip())
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unmatched ')' in %r" % text)
        cur.append(ch)
    if depth != 0:
        raise ParseError("unclosed '(' in %r" % text)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    if not parts:
        raise ParseError("no permutations found in %r" % text)
    return [parse_perm(p, n) for p in parts]


def read_group_file(path, n):
    """One generating set per file: one permutation per nonempty line;
    '#' starts a comment."""
    gens = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                gens.append(parse_perm(line, n))
    if not gens:
        raise ParseError("no permutations found in %s" % path)
    return gens


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def orbits(gens, n):
    """Orbits of the group generated by gens on {0..n-1}, as sorted
    tuples sorted by smallest point."""
    uf = _UnionFind(n)
    for g in gens:
        for i, j in enumerate(g.images):
            uf.union(i, j)
    buckets = {}
    for i in range(n):
        buckets.setdefault(uf.find(i), []).append(i)
    return sorted((tuple(sorted(b)) for b in buckets.values()),
                  key=lambda t: t[0])


def orbit_type(gens, n):
    """Multiset of orbit sizes, as a dict size -> count."""
    ot = {}
    for orb in orbits(gens, n):
        ot[len(orb)] = ot.get(len(orb), 0) + 1
    return ot


def type_str(ot):
    """Render an orbit or cycle type dict as e.g. '1^2 2^1 4^1'."""
    return " ".join("%d^%d" % (t, ot[t]) for t in sorted(ot))


def group_elements(gens, cap=GROUP_ELEMENT_CAP):
    """All elements of the generated group, by breadth-first closure."""
    if not gens:
        raise DomainError("empty generating set")
    n = gens[0].n
    ident = Perm.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g * p
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise DomainError(
                            "group closure exceeded %d elements" % cap)
        frontier = nxt
    return sorted(seen, key=lambda p: p.images)


def brute_force_automorphisms(is_member, n, cap_degree=8):
    """All coordinate permutations preserving a predicate on masks.

    is_member(mask) must answer membership for the structure being
    preserved (here: a code's codeword set).  Exhaustive over S_n, so
    refuse degrees past cap_degree.
    """
    if n > cap_degree:
        raise DomainError(
            "brute-force automorphism search is limited to degree %d"
            % cap_degree)
    member_masks = [m for m in range(1 << n) if is_member(m)]
    out = []
    for images in _all_perms(range(n)):
        p = Perm(images)
        if all(is_member(p.apply_mask(m)) for m in member_masks):
            out.append(p)
    return out
