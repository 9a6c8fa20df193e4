"""Finitely generated subgroups of Q + Q*r (r infinitely large) and their divisibility.

Groups are stored as integer lattices after clearing a common denominator,
in Hermite normal form over the coordinates (b, a) of a + b*r.
"""

from fractions import Fraction
from math import lcm

from .errors import LabError
from .valuation import Value

GroupElem = Value


def elem(a, b=0):
    return Value(Fraction(a), Fraction(b))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite(rows, ncols):
    """Row-style Hermite normal form of the integer span of ``rows``."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    for col in range(ncols):
        piv = None
        rest = []
        for r in rows:
            if r[col] == 0:
                rest.append(r)
                continue
            if piv is None:
                piv = r
                continue
            g, s, t = _xgcd(piv[col], r[col])
            u, w = piv[col] // g, r[col] // g
            new_piv = [s * x + t * y for x, y in zip(piv, r)]
            other = [w * x - u * y for x, y in zip(piv, r)]
            piv = new_piv
            if any(other):
                rest.append(other)
        if piv is not None:
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        rows = [r for r in rest if any(r)]
    # reduce entries above pivots
    for i in range(len(out)):
        pc = next(c for c in range(ncols) if out[i][c])
        for j in range(i):
            q = out[j][pc] // out[i][pc]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], out[i])]
    return out


class FGGroup:
    """The subgroup of Q + Q*r generated by ``gens``."""

    def __init__(self, gens):
        self.gens = tuple(Value(g.a, g.b) if isinstance(g, Value) else elem(*g) for g in gens)
        self.denom = lcm(1, *(x.denominator for g in self.gens for x in (g.a, g.b)))
        D = self.denom
        self.basis = hermite([[int(g.b * D), int(g.a * D)] for g in self.gens], 2)

    @property
    def rank(self):
        return len(self.basis)

    def _coords(self, x):
        """Integer coordinates of x against the basis, or None."""
        v = [x.b * self.denom, x.a * self.denom]
        if any(t.denominator != 1 for t in v):
            return None
        v = [int(t) for t in v]
        out = []
        for row in self.basis:
            pc = next(c for c in range(2) if row[c])
            q, r = divmod(v[pc], row[pc])
            if r:
                return None
            out.append(q)
            v = [a - q * b for a, b in zip(v, row)]
        return out if not any(v) else None

    def contains(self, x):
        if x.is_infinite:
            return False
        return self._coords(x) is not None

    def lattice_div(self, x, k):
        """k | x decided by lattice membership of x/k."""
        return self.contains(x * Fraction(1, k))

    def div_query(self, x, k):
        if not self.contains(x):
            raise LabError("NOT_A_MEMBER", f"{x} is not in the group")
        if k < 1:
            raise LabError("BAD_ARGUMENT", "divisor must be positive")
        return self.lattice_div(x, k)

    def covolume(self):
        c = Fraction(1)
        for row in self.basis:
            pc = next(i for i in range(2) if row[i])
            c *= Fraction(row[pc], self.denom)
        return c

    def basis_elems(self):
        D = self.denom
        return [elem(Fraction(a, D), Fraction(b, D)) for b, a in self.basis]

    def __eq__(self, other):
        if not isinstance(other, FGGroup):
            return NotImplemented
        return all(other.contains(g) for g in self.gens) and all(self.contains(g) for g in other.gens)

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.basis)) ^ hash(self.denom)

    def to_json(self):
        return {
            "basis": [g.to_json() for g in self.basis_elems()],
            "gens": [g.to_json() for g in self.gens],
        }

    def __repr__(self):
        inner = ", ".join(_fmt(g) for g in self.gens)
        return f"Z<{inner}>"


def _fmt(g):
    if g.b == 0:
        return str(g.a)
    if g.a == 0:
        return f"{g.b}*r"
    return f"{g.a} + {g.b}*r"


def group_contains(G, x):
    return G.contains(x)


def div_query(G, x, k):
    return G.div_query(x, k)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtendedGroup(FGGroup):
    """H = G<a> with n*a = b in G; divisibility decided from divisibility in G."""

    def __init__(self, parent, b, n):
        if not parent.contains(b):
            raise LabError("NOT_A_MEMBER", f"{b} is not in the group")
        if n < 1:
            raise LabError("BAD_ARGUMENT", "n must be positive")
        # make b indivisible in G by every prime factor of n
        changed = True
        while changed:
            changed = False
            for q in sorted(set(_prime_factors(n))):
                if parent.div_query(b, q):
                    b, n = b * Fraction(1, q), n // q
                    changed = True
                    break
        self.parent = parent
        self.b = b
        self.n = n
        self.a = b * Fraction(1, n)
        super().__init__(list(parent.gens) + [self.a])

    def split(self, x):
        """(m, g) with x = m*a + g, 0 <= m < n, g in G."""
        for m in range(self.n):
            g = x - self.a * m
            if self.parent.contains(g):
                return m, g
        raise LabError("NOT_A_MEMBER", f"{x} is not in the group")

    def _prime_div(self, x, q):
        m, g = self.split(x)
        G, n, b = self.parent, self.n, self.b
        if n % q:
            return G.div_query(b * m + g * n, q)
        if m % q:
            return False
        # x/q = m'a + g' with q m' = m + j n; then q g' = g - j b
        return any(G.div_query(g - b * j, q) for j in range(q))

    def div_query(self, x, k):
        if not self.contains(x):
            raise LabError("NOT_A_MEMBER", f"{x} is not in the group")
        if k < 1:
            raise LabError("BAD_ARGUMENT", "divisor must be positive")
        for q in _prime_factors(k):
            if not self._prime_div(x, q):
                return False
            x = x * Fraction(1, q)
        return True

    def checked_div(self, x, k):
        """div_query cross-checked against lattice membership of x/k."""
        answer = self.div_query(x, k)
        if answer != self.lattice_div(x, k):
            raise AssertionError(f"divisibility routes disagree on {x}, {k}")
        return answer


def extend_div(G, b, n):
    """G<a> with n*a = b, carrying the derived divisibility procedure."""
    if n == 1:
        if not G.contains(b):
            raise LabError("NOT_A_MEMBER", f"{b} is not in the group")
        return G
    return ExtendedGroup(G, b, n)


def least_positive_is_one(G):
    """Is 1 the least positive element of G?"""
    one = elem(1)
    if not G.contains(one):
        raise LabError("MISSING_ONE", "1 is not in the group")
    # the elements with b = 0 form the cyclic group generated by the last pivot in column a
    for row in G.basis:
        if row[0] == 0:
            return Fraction(row[1], G.denom) == 1
    raise AssertionError("1 lies in the group but the b = 0 line is empty")


def subgroup_index(G, H):
    """[H : G] for G a subgroup of H of the same rank."""
    for g in G.gens:
        if not H.contains(g):
            raise LabError("NOT_SUBGROUP", f"{g} is not in the larger group")
    if G.rank != H.rank:
        raise LabError("INFINITE_INDEX", f"ranks differ: {G.rank} vs {H.rank}")
    idx = G.covolume() / H.covolume()
    if idx.denominator != 1:
        raise AssertionError("non-integral index")
    return abs(int(idx))
