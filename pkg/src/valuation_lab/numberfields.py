"""Towers of simple algebraic extensions of Q and their splitting algorithms.

Factoring over Q reduces modulo a good prime, Hensel-lifts the modular
factors and recombines them.  Factoring over a tower level uses the norm
down to the level below (Trager), so every level gets a splitting
algorithm from the one beneath it.
"""

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, isqrt

from .config import DEFAULT
from .errors import LabError
from .exact import (
    QQ,
    ExtensionField,
    Poly,
    PrimeField,
    factor_over_fp,
    poly_gcd,
    squarefree_decomposition,
    xgcd,
)


# ---------------------------------------------------------------------------
# integer polynomial helpers (lists of ints, low degree first)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b, m=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if m is not None:
        out = [c % m for c in out]
    return _trim(out)


def _zsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _zadd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _zdivmod(a, b, m):
    """Division by b modulo m; b's leading coefficient must be a unit mod m."""
    r = [c % m for c in a]
    inv = pow(b[-1], -1, m)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % m
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % m
    return _trim(q), _trim(r[:db])


def _symmetric(a, m):
    h = m // 2
    return _trim([c - m if c > h else c for c in (x % m for x in a)])


def _content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _primitive(a):
    g = _content(a)
    if g == 0:
        return a
    out = [c // g for c in a]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _zdivides(g, f):
    """Exact division test over Z; returns the quotient or None."""
    r = list(f)
    db = len(g) - 1
    if len(r) - 1 < db:
        return None
    q = [0] * (len(r) - db)
    lead = g[-1]
    for k in range(len(r) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lead)
        if rem:
            return None
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * g[j]
    if any(r[:db]):
        return None
    return _trim(q)


def _small_primes():
    n = 2
    while True:
        n += 1
        if all(n % d for d in range(2, isqrt(n) + 1)):
            yield n


def _fp_poly(a, p):
    return Poly(list(a), PrimeField(p))


def _hensel_two(f, g, h, p, k):
    """Lift f = g*h mod p to mod p^k.  h stays monic, g carries lc(f)."""
    F = PrimeField(p)
    gp, hp = _fp_poly(g, p), _fp_poly(h, p)
    d, s, t = xgcd(gp, hp)
    inv = F.one / d.coeffs[0]
    s = [c.v for c in s.scale(inv).coeffs]
    t = [c.v for c in t.scale(inv).coeffs]
    m = p
    for _ in range(1, k):
        e = _zsub(f, _zmul(g, h))
        assert all(c % m == 0 for c in e)
        e = [(c // m) % p for c in e]
        q, r = _zdivmod(_zmul(s, e, p), h, p)
        dg = [c % p for c in _zadd(_zmul(t, e), _zmul(q, g))]
        dg = _trim(dg)
        h = _zadd(h, [m * c for c in r])
        g = _zadd(g, [m * c for c in dg])
        m *= p
        g = [c % m for c in g]
        h = [c % m for c in h]
    return g, h


def _hensel_multi(f, factors, p, k):
    """Lift monic modular factors of f (lc folded into the first) to mod p^k."""
    if len(factors) == 1:
        return factors
    mod = p ** k
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    lc = f[-1] % p
    g = [lc]
    for a in left:
        g = _zmul(g, a, p)
    h = [1]
    for a in right:
        h = _zmul(h, a, p)
    G, H = _hensel_two(f, g, h, p, k)
    inv = pow(f[-1], -1, mod)
    G_monic = [c * inv % mod for c in G]
    return _hensel_multi_monic(G_monic, left, p, k) + _hensel_multi_monic(H, right, p, k)


def _hensel_multi_monic(f, factors, p, k):
    if len(factors) == 1:
        return [f]
    return _hensel_multi(f, factors, p, k)


def _factor_squarefree_z(f):
    """Factor a primitive squarefree integer polynomial with positive lc."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    best = None
    tried = 0
    for p in _small_primes():
        if lc % p == 0:
            continue
        fp = _fp_poly(f, p)
        if fp.degree() != n or poly_gcd(fp, fp.derivative()).degree() > 0:
            continue
        facs = [g for g, _ in factor_over_fp(fp)]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 3:
            break
    p, facs = best
    if len(facs) == 1:
        return [f]
    norm = max(abs(c) for c in f)
    bound = (isqrt(n + 1) + 1) * 2 ** n * norm * abs(lc)
    k = 1
    while p ** k <= 2 * bound * abs(lc):
        k += 1
    mod = p ** k
    lifted = _hensel_multi(f, [[c.v for c in g.coeffs] for g in facs], p, k)
    out = []
    remaining = list(range(len(lifted)))
    s = 1
    cur = f
    while 2 * s <= len(remaining):
        hit = None
        for subset in combinations(remaining, s):
            g = [cur[-1]]
            for i in subset:
                g = _zmul(g, lifted[i], mod)
            g = _primitive(_symmetric(g, mod))
            q = _zdivides(g, cur)
            if q is not None:
                hit = subset, g, q
                break
        if hit is None:
            s += 1
            continue
        subset, g, q = hit
        out.append(g)
        cur = _primitive(q)
        remaining = [i for i in remaining if i not in subset]
    out.append(cur)
    return out


def _to_int_primitive(f):
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    return _primitive(ints)


def _factor_over_q(f):
    out = []
    for g, m in squarefree_decomposition(f):
        for h in _factor_squarefree_z(_to_int_primitive(g)):
            out.append((Poly(h, QQ).monic(), m))
    return out


# ---------------------------------------------------------------------------
# resultants, norms, interpolation


def resultant(a, b):
    """Resultant of two polynomials over a field."""
    field = a.field
    if a.is_zero() or b.is_zero():
        return field.zero
    da, db = a.degree(), b.degree()
    if db == 0:
        return b.coeffs[0] ** da
    if da == 0:
        return a.coeffs[0] ** db
    r = a % b
    if r.is_zero():
        return field.zero
    sign = -1 if (da * db) % 2 else 1
    return sign * b.lc() ** (da - r.degree()) * resultant(b, r)


def element_norm(beta):
    """Norm of beta from its field down to the immediate base."""
    K = beta.field
    return resultant(K.modulus, beta.rep)


def _interpolate(points, field):
    """Newton interpolation through (x_i, y_i) with integer nodes."""
    xs = [field(x) for x, _ in points]
    coef = [y for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = Poly._make(field, [])
    for i in range(n - 1, -1, -1):
        result = result * Poly._make(field, [-xs[i], field.one]) + Poly._make(field, [coef[i]])
    return result


def poly_norm(g):
    """Norm of g in K[x] down to k[x], where K = k(alpha)."""
    K = g.field
    k = K.base
    n = g.degree() * K.degree
    pts = []
    for c in range(n + 1):
        pts.append((c, element_norm(K(g(K(c))))))
    return _interpolate(pts, k)


def _shift(g, s, alpha):
    """g(x - s*alpha)."""
    K = g.field
    return g.compose(Poly._make(K, [K(-s) * alpha, K.one]))


def _trager(g):
    K = g.field
    if g.degree() <= 1:
        return [g.monic()]
    alpha = K.gen()
    for s in _shift_order():
        gs = _shift(g, s, alpha)
        N = poly_norm(gs)
        if poly_gcd(N, N.derivative()).degree() == 0:
            break
    pieces = _factor_any(N)
    if len(pieces) == 1:
        return [g.monic()]
    out = []
    for Ni, _ in pieces:
        h = poly_gcd(gs, Ni.change_field(K))
        out.append(_shift(h, -s, alpha).monic())
    return out


def _shift_order():
    yield 0
    s = 1
    while True:
        yield s
        yield -s
        s += 1


def _factor_any(f):
    field = f.field
    if field == QQ:
        return _factor_over_q(f)
    if field.is_finite:
        return factor_over_fp(f)
    out = []
    for g, m in squarefree_decomposition(f):
        for h in _trager(g):
            out.append((h, m))
    return out


def _sorted(factors):
    return sorted(factors, key=lambda t: (t[0].sort_key(), t[1]))


# ---------------------------------------------------------------------------
# towers


class FieldTower:
    """Q = K_0 < K_1 < ... < K_n with K_i = K_{i-1}[name_i]/(minpoly_i)."""

    def __init__(self, levels=(), verify=True, config=DEFAULT):
        if len(levels) > config.tower_depth:
            raise LabError("TOWER_DEPTH", f"tower depth {len(levels)} exceeds {config.tower_depth}")
        self.config = config
        self.names = []
        self.minpolys = []
        self.fields = [QQ]
        for name, mp in levels:
            base = self.fields[-1]
            if mp.field != base:
                mp = mp.change_field(base)
            if verify:
                if not mp.is_monic():
                    mp = mp.monic()
                facs = factor_over_field(mp, self, check_depth=False)
                if len(facs) != 1 or facs[0][1] != 1:
                    raise LabError("NOT_IRREDUCIBLE", f"minimal polynomial of {name} is reducible")
            self.names.append(name)
            self.minpolys.append(mp.monic())
            self.fields.append(ExtensionField(base, mp.monic(), name))
        if self.degree > config.degree_bound:
            raise LabError("DEGREE_BOUND", f"tower degree {self.degree} exceeds {config.degree_bound}")

    @classmethod
    def rationals(cls):
        return cls(())

    @property
    def depth(self):
        return len(self.names)

    @property
    def top(self):
        return self.fields[-1]

    @property
    def degree(self):
        d = 1
        for mp in self.minpolys:
            d *= mp.degree()
        return d

    def prefix(self, k):
        t = object.__new__(FieldTower)
        t.config = self.config
        t.names = self.names[:k]
        t.minpolys = self.minpolys[:k]
        t.fields = self.fields[: k + 1]
        return t

    def extend(self, name, minpoly, verify=True):
        return FieldTower(list(zip(self.names, self.minpolys)) + [(name, minpoly)], verify=verify, config=self.config)

    def gen(self, i):
        """Generator i (0-based) as an element of the top field."""
        return self.top(self.fields[i + 1].gen())

    def gens(self):
        return [self.gen(i) for i in range(self.depth)]

    def element(self, x):
        return self.top(x)

    def is_prefix_of(self, other):
        return self.depth <= other.depth and self.fields[-1] == other.fields[self.depth]

    def to_json(self):
        return [{"name": n, "minpoly": mp.to_str("x")} for n, mp in zip(self.names, self.minpolys)]

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.fields[-1] == other.fields[-1]

    def __hash__(self):
        return hash(self.fields[-1])

    def __repr__(self):
        inner = ", ".join(f"{n}: {mp.to_str('x')}" for n, mp in zip(self.names, self.minpolys))
        return f"FieldTower([{inner}])"

    @cached_property
    def flat(self):
        return Flattening(self)


def _resolve_field(K):
    if isinstance(K, FieldTower):
        return K.top, K
    return K, None


def factor_over_field(f, K, check_depth=True):
    """Monic irreducible factors of f over the top field of K, with multiplicity."""
    field, tower = _resolve_field(K)
    if tower is not None and check_depth and tower.depth > tower.config.tower_depth:
        raise LabError("TOWER_DEPTH", "tower too deep")
    if f.is_zero():
        raise LabError("ZERO_POLY", "cannot factor the zero polynomial")
    if f.field != field:
        f = f.change_field(field)
    if f.degree() == 0:
        return []
    return _sorted(_factor_any(f))


def is_irreducible_over(f, K):
    facs = factor_over_field(f, K)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# linear algebra over the base of a tower


def coords_over(elem, L, F):
    """Coordinates of elem in L over the subfield F (tower basis order)."""
    if L == F:
        return [F(elem)]
    elem = L(elem)
    out = []
    for c in elem.coordinates():
        out.extend(coords_over(c, L.base, F))
    return out


def _field_chain(L, F):
    chain = []
    cur = L
    while cur != F:
        if not isinstance(cur, ExtensionField):
            raise LabError("TOWER_DEPTH", "target field is not a subfield")
        chain.append(cur)
        cur = cur.base
    return chain


def relative_degree(L, F):
    d = 1
    for f in _field_chain(L, F):
        d *= f.degree
    return d


class _Reducer:
    """Incremental row echelon form for finding the first linear dependency."""

    def __init__(self, field):
        self.field = field
        self.rows = []  # (pivot, vector, combination)

    def add(self, vec, tag_count):
        comb = [self.field.zero] * tag_count + [self.field.one]
        vec = list(vec)
        for pivot, row, rcomb in self.rows:
            c = vec[pivot]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
                rcomb_ext = rcomb + [self.field.zero] * (len(comb) - len(rcomb))
                comb = [a - c * b for a, b in zip(comb, rcomb_ext)]
        for i, c in enumerate(vec):
            if c:
                inv = self.field.one / c
                self.rows.append((i, [a * inv for a in vec], [a * inv for a in comb]))
                return None
        return comb


def minimal_polynomial(a, over=None, L=None):
    """Minimal polynomial of a over the field ``over`` (a tower prefix or field)."""
    if L is None:
        L = a.field if hasattr(a, "field") else QQ
    F = QQ if over is None else _resolve_field(over)[0]
    if isinstance(L, FieldTower):
        L = L.top
    chain = _field_chain(L, F)
    if not chain:
        return Poly._make(F, [-F(a), F.one])
    red = _Reducer(F)
    power = L.one
    for k in range(relative_degree(L, F) + 1):
        comb = red.add(coords_over(power, L, F), k)
        if comb is not None:
            return Poly._make(F, comb).monic()
        power = power * a
    raise AssertionError("no linear dependency found")


def primitive_element(K):
    """(theta, minpoly over Q) with Q(theta) = K; theta = a_1 + c a_2 + c^2 a_3 + ..."""
    tower = K
    if tower.depth == 0:
        raise LabError("TOWER_DEPTH", "Q has no generators")
    D = tower.degree
    gens = tower.gens()
    c = 1
    while True:
        theta = gens[0]
        for i, g in enumerate(gens[1:], start=1):
            theta = theta + g * (c ** i)
        mp = minimal_polynomial(theta, QQ, tower.top)
        if mp.degree() == D:
            return theta, mp
        c += 1


def _solve(matrix_cols, rhs, field):
    """Solve sum x_j col_j = rhs; columns are linearly independent."""
    n = len(rhs)
    m = len(matrix_cols)
    aug = [[matrix_cols[j][i] for j in range(m)] + [rhs[i]] for i in range(n)]
    row = 0
    pivots = []
    for col in range(m):
        piv = next((r for r in range(row, n) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = field.one / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    sol = [field.zero] * m
    for r, col in enumerate(pivots):
        sol[col] = aug[r][m]
    return sol


class Flattening:
    """A tower rewritten as Q(theta): conversions between elements and Q[x] mod M."""

    def __init__(self, tower):
        self.tower = tower
        if tower.depth == 0:
            self.theta = None
            self.minpoly = Poly([0, 1])
            self.degree = 1
            self._basis = None
            return
        self.theta, self.minpoly = primitive_element(tower)
        self.degree = self.minpoly.degree()
        L = tower.top
        power = L.one
        cols = []
        for _ in range(self.degree):
            cols.append(coords_over(power, L, QQ))
            power = power * self.theta
        self._cols = cols

    def poly_of(self, beta):
        """The polynomial g of degree < [K:Q] with beta = g(theta)."""
        if self.tower.depth == 0:
            return Poly([QQ(beta)])
        beta = self.tower.top(beta)
        sol = _solve(self._cols, coords_over(beta, self.tower.top, QQ), QQ)
        return Poly(sol, QQ)

    def elem_of(self, g):
        if self.tower.depth == 0:
            return g(Fraction(0)) if g.degree() <= 0 else None
        return g(self.theta)
