"""Exact coefficient domains, dense univariate polynomials, finite-field factoring.

Rationals are :class:`fractions.Fraction`.  Other domains are small field
objects whose elements support the usual Python operators, so one
:class:`Poly` implementation serves Q, F_p, F_{p^f} and number-field towers.
"""

from contextvars import ContextVar
from fractions import Fraction
import random

from .errors import LabError

Rat = Fraction

# seed of the random splitting in Cantor-Zassenhaus; results never depend on it
factor_seed = ContextVar("factor_seed", default=0)


def _inv_mod(a, m):
    return pow(a, -1, m)


class Field:
    """Base class of coefficient domains."""

    characteristic = 0
    order = None  # number of elements, None when infinite

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def is_finite(self):
        return self.order is not None

    def contains(self, x):
        return False


class RationalField(Field):
    characteristic = 0
    order = None
    tag = "QQ"
    degree = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise LabError("DOMAIN_MISMATCH", f"cannot coerce {x!r} into QQ")

    def contains(self, x):
        return isinstance(x, (int, Fraction))

    def key(self, x):
        return x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def base_chain(self):
        return [self]


QQ = RationalField()


class FpElem:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FpElem) and other.field.p == self.field.p:
            return other
        try:
            return self.field(other)
        except LabError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.field, (self.v + o.v) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.field, (self.v - o.v) % self.field.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.field, (o.v - self.v) % self.field.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.field, (self.v * o.v) % self.field.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(self.field, (-self.v) % self.field.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpElem(self.field, _inv_mod(self.v, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(self.field, pow(self.v, n, self.field.p))

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and o.v == self.v

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField(Field):
    def __init__(self, p):
        self.p = p
        self.characteristic = p
        self.order = p
        self.degree = 1
        self.tag = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, FpElem):
            if x.field.p != self.p:
                raise LabError("DOMAIN_MISMATCH", "different characteristic")
            return x
        if isinstance(x, int):
            return FpElem(self, x % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise LabError("DOMAIN_MISMATCH", f"{x} has a pole at {self.p}")
            return FpElem(self, x.numerator * _inv_mod(x.denominator, self.p) % self.p)
        raise LabError("DOMAIN_MISMATCH", f"cannot coerce {x!r} into GF({self.p})")

    def contains(self, x):
        return isinstance(x, FpElem) and x.field.p == self.p

    def random_element(self, rng):
        return FpElem(self, rng.randrange(self.p))

    def pth_root(self, a):
        return a

    def elements(self):
        return [FpElem(self, i) for i in range(self.p)]

    def key(self, x):
        return x.v

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.tag

    def base_chain(self):
        return [self]


class ExtElem:
    """Element of a simple algebraic extension, stored as a reduced polynomial."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, ExtElem) and other.field == self.field:
            return other
        try:
            return self.field(other)
        except LabError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, o.rep - self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.field, (self.rep * o.rep) % self.field.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ExtElem(self.field, -self.rep)

    def inverse(self):
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of 0")
        g, s, _ = xgcd(self.rep, self.field.modulus)
        # g is a nonzero constant since the modulus is irreducible
        return ExtElem(self.field, s.scale(self.field.base.one / g.coeffs[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and o.rep == self.rep

    def __hash__(self):
        return hash((self.field, self.rep))

    def __bool__(self):
        return not self.rep.is_zero()

    def coordinates(self):
        """Coefficients over the base field, padded to the extension degree."""
        cs = list(self.rep.coeffs)
        return cs + [self.field.base.zero] * (self.field.degree - len(cs))

    def is_base(self):
        return self.rep.degree() <= 0

    def to_base(self):
        if not self.is_base():
            raise LabError("DOMAIN_MISMATCH", "element is not in the base field")
        return self.rep.coeff(0)

    def terms(self):
        """{exponents over the generator chain (innermost first): base coefficient}."""
        out = {}
        for i, c in enumerate(self.rep.coeffs):
            inner = c.terms() if isinstance(c, ExtElem) else {(): c}
            for exps, coef in inner.items():
                if coef:
                    out[exps + (i,)] = coef
        return out

    def to_str(self):
        names = [f.name for f in self.field.base_chain() if isinstance(f, ExtensionField)]
        items = sorted(self.terms().items(), key=lambda t: (-sum(t[0]), tuple(-e for e in reversed(t[0]))))
        if not items:
            return "0"
        out = ""
        for k, (exps, c) in enumerate(items):
            neg, body = _coeff_text(c)
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return self.to_str()


class ExtensionField(Field):
    """base[name] / (modulus); the modulus must be monic irreducible over base."""

    def __init__(self, base, modulus, name="a"):
        if modulus.field != base:
            raise LabError("DOMAIN_MISMATCH", "modulus is not over the base field")
        if modulus.degree() < 1:
            raise LabError("NOT_IRREDUCIBLE", "modulus must have positive degree")
        self.base = base
        self.modulus = modulus.monic()
        self.name = name
        self.degree = modulus.degree()
        self.characteristic = base.characteristic
        self.order = base.order ** self.degree if base.order is not None else None
        self.tag = f"{base.tag}[{name}]/({self.modulus.to_str(name)})"
        self._hash = hash((base, self.modulus.coeffs, name))

    def __call__(self, x):
        if isinstance(x, ExtElem):
            if x.field == self:
                return x
        if isinstance(x, Poly):
            if x.field != self.base:
                raise LabError("DOMAIN_MISMATCH", "polynomial over the wrong field")
            return ExtElem(self, x % self.modulus)
        return ExtElem(self, Poly._make(self.base, [self.base(x)]))

    def contains(self, x):
        return isinstance(x, ExtElem) and x.field == self

    def gen(self):
        return ExtElem(self, Poly._make(self.base, [self.base.zero, self.base.one]) % self.modulus)

    def from_coords(self, coords):
        return ExtElem(self, Poly(list(coords), self.base))

    def random_element(self, rng):
        return ExtElem(self, Poly([self.base.random_element(rng) for _ in range(self.degree)], self.base))

    def pth_root(self, a):
        p = self.characteristic
        return a ** (self.order // p)

    def elements(self):
        out = [[]]
        base_elems = self.base.elements()
        for _ in range(self.degree):
            out = [c + [b] for c in out for b in base_elems]
        return [self.from_coords(c) for c in out]

    def key(self, x):
        return tuple(self.base.key(c) for c in x.coordinates())

    def base_chain(self):
        return self.base.base_chain() + [self]

    def absolute_degree(self):
        d = 1
        f = self
        while isinstance(f, ExtensionField):
            d *= f.degree
            f = f.base
        return d

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, ExtensionField) and self._hash == other._hash
                and self.name == other.name and self.base == other.base
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.tag


def _strip(cs, zero_check=bool):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return cs[:n]


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x^i.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs=(), field=QQ):
        self.field = field
        self.coeffs = tuple(_strip([field(c) for c in coeffs]))

    @classmethod
    def _make(cls, field, cs):
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(_strip(list(cs)))
        return p

    @classmethod
    def x(cls, field=QQ):
        return cls._make(field, [field.zero, field.one])

    @classmethod
    def const(cls, c, field=QQ):
        return cls._make(field, [field(c)])

    @classmethod
    def monomial(cls, n, c=1, field=QQ):
        return cls._make(field, [field.zero] * n + [field(c)])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise LabError("ZERO_POLY", "zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly._make(self.field, [self.field(other)])
        if other.field != self.field:
            raise LabError("DOMAIN_MISMATCH", f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(self.field(other))
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._make(self.field, [])
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._make(self.field, out)

    __rmul__ = __mul__

    def scale(self, c):
        return Poly._make(self.field, [c * x for x in self.coeffs])

    def __pow__(self, n):
        result = Poly._make(self.field, [self.field.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        inv = self.field.one / other.coeffs[-1]
        if len(r) - 1 < db:
            return Poly._make(self.field, []), self
        q = [self.field.zero] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] = r[k + j] - c * bc[j]
        return Poly._make(self.field, q), Poly._make(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise LabError("NOT_DIVISIBLE", "inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.field.one / self.coeffs[-1])

    def derivative(self):
        return Poly._make(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.field.zero
        return acc

    def compose(self, g):
        acc = Poly._make(g.field, [])
        for c in reversed(self.coeffs):
            acc = acc * g + Poly._make(g.field, [g.field(c)])
        return acc

    def map_coeffs(self, fn, field):
        return Poly._make(field, [fn(c) for c in self.coeffs])

    def change_field(self, field):
        return Poly._make(field, [field(c) for c in self.coeffs])

    def powmod(self, n, modulus):
        result = Poly._make(self.field, [self.field.one]) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        return (self.degree(), tuple(self.field.key(c) for c in self.coeffs))

    def to_str(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            neg, body = _coeff_text(c)
            if mono:
                if body == "1":
                    term = mono
                else:
                    term = f"{body}*{mono}"
            else:
                term = body
            parts.append((neg, term))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, term in parts[1:]:
            out += (" - " if neg else " + ") + term
        return out

    def __repr__(self):
        return f"Poly({self.to_str()}, {self.field!r})"


def _coeff_text(c):
    if isinstance(c, Fraction):
        return c < 0, str(abs(c))
    if isinstance(c, FpElem):
        return False, str(c.v)
    if isinstance(c, ExtElem):
        if c.is_base():
            return _coeff_text(c.to_base())
        terms = c.terms()
        if len(terms) == 1:
            text = c.to_str()
            return (True, text[1:]) if text.startswith("-") else (False, text)
        return False, "(" + c.to_str() + ")"
    return False, str(c)


def poly_from_ints(coeffs, field=QQ):
    return Poly(list(coeffs), field)


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g, g not normalised."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly._make(f, [f.one]), Poly._make(f, [])
    t0, t1 = Poly._make(f, []), Poly._make(f, [f.one])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    if a.field != b.field:
        raise LabError("DOMAIN_MISMATCH", f"{a.field!r} vs {b.field!r}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(a):
    if a.is_zero():
        raise LabError("ZERO_POLY", "squarefree part of the zero polynomial")
    if a.field.characteristic:
        return _prod([g for g, _ in squarefree_decomposition(a)], a.field).monic()
    d = a.derivative()
    return (a // poly_gcd(a, d)).monic()


def _prod(polys, field):
    out = Poly._make(field, [field.one])
    for g in polys:
        out = out * g
    return out


def squarefree_decomposition(a):
    """List of (g_i, i) with a = lc * prod g_i^i, each g_i monic squarefree.

    Works in characteristic 0 and over perfect fields of characteristic p.
    """
    if a.is_zero():
        raise LabError("ZERO_POLY", "squarefree decomposition of zero")
    f = a.monic()
    field = a.field
    p = field.characteristic
    if f.degree() == 0:
        return []
    if p == 0:
        return _yun(f)
    out = {}
    _sqf_charp(f, 1, out)
    return sorted(((g, m) for m, g in out.items() if g.degree() > 0), key=lambda t: (t[1], t[0].sort_key()))


def _yun(f):
    out = []
    d = f.derivative()
    a0 = poly_gcd(f, d)
    b = f // a0
    c = d // a0
    dd = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, dd)
        b = b // a
        c = dd // a
        dd = c - b.derivative()
        if a.degree() > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def _sqf_charp(f, mult, out):
    field = f.field
    p = field.characteristic
    i = 1
    w = f
    c = poly_gcd(f, f.derivative())
    w = f // c
    while w.degree() > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree() > 0:
            _acc(out, i * mult, z.monic())
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        cs = c.coeffs
        root = Poly._make(field, [field.pth_root(cs[k]) for k in range(0, len(cs), p)])
        _sqf_charp(root.monic(), mult * p, out)


def _acc(out, m, g):
    if m in out:
        out[m] = out[m] * g
    else:
        out[m] = g


def _require_finite(field):
    if not field.is_finite:
        raise LabError("DOMAIN_MISMATCH", "finite-field factorisation needs a finite field")


def distinct_degree(f):
    """Split a monic squarefree f into (d, product of degree-d irreducibles)."""
    field = f.field
    q = field.order
    x = Poly.x(field)
    h = x
    out = []
    rest = f
    d = 0
    while rest.degree() >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree() > 0:
            out.append((d, g))
            rest = rest // g
            h = h % rest
    if rest.degree() > 0:
        out.append((rest.degree(), rest))
    return out


def equal_degree(f, d, rng):
    """Cantor-Zassenhaus splitting of f, a product of degree-d irreducibles."""
    n = f.degree()
    if n == d:
        return [f.monic()]
    field = f.field
    q = field.order
    p = field.characteristic
    while True:
        a = Poly([field.random_element(rng) for _ in range(n)], field)
        if a.degree() < 1:
            continue
        if p == 2:
            k = (q.bit_length() - 1) * d
            t = a % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q ** d - 1) // 2, f) - Poly.const(field.one, field)
        g = poly_gcd(b, f)
        if 0 < g.degree() < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_over_fp(a, seed=None):
    """Factor a over a finite field into monic irreducibles with multiplicity.

    Output is sorted by degree then coefficients.  Multiplying the factors
    back together gives a / lc(a).
    """
    if a.is_zero():
        raise LabError("ZERO_POLY", "cannot factor the zero polynomial")
    _require_finite(a.field)
    rng = random.Random(factor_seed.get() if seed is None else seed)
    out = []
    for g, m in squarefree_decomposition(a):
        for d, h in distinct_degree(g):
            for piece in equal_degree(h, d, rng):
                out.append((piece, m))
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return out


def is_irreducible(a):
    """Rabin-style check over a finite field: gcd with x^{q^d} - x for d < deg."""
    _require_finite(a.field)
    n = a.degree()
    if n <= 0:
        return False
    f = a.monic()
    if poly_gcd(f, f.derivative()).degree() > 0:
        return False
    q = a.field.order
    x = Poly.x(a.field)
    h = x
    for d in range(1, n // 2 + 1):
        h = h.powmod(q, f)
        if poly_gcd(h - x, f).degree() > 0:
            return False
    return True


def finite_field(p, f=1, name="z", seed=0):
    """F_{p^f} as an extension of F_p by the first irreducible monic of degree f."""
    base = PrimeField(p)
    if f == 1:
        return base
    for n in range(p ** f):
        cs = [(n // p ** i) % p for i in range(f)] + [1]
        cand = Poly(cs, base)
        if is_irreducible(cand):
            return ExtensionField(base, cand, name)
    raise AssertionError("no irreducible polynomial found")


def FqElem(field, coords):
    """Element of F_{p^f} from its coordinates over F_p."""
    return field.from_coords(coords) if isinstance(field, ExtensionField) else field(coords[0])
