"""Values, p-adic valuations on Q, Newton polygons and weak approximation."""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import count
from math import prod

from .errors import LabError


@total_ordering
class Value:
    """a*1 + b*r with r larger than every rational, or the symbol INFINITY.

    Values compare lexicographically on (b, a).
    """

    __slots__ = ("a", "b", "inf")

    def __init__(self, a=0, b=0, inf=False):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.inf = inf

    @property
    def is_infinite(self):
        return self.inf

    def _key(self):
        return (1, 0, 0) if self.inf else (0, self.b, self.a)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Value(other)
        if not isinstance(other, Value):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Value(other)
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Value(other)
        if self.inf or other.inf:
            return INFINITY
        return Value(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        if self.inf:
            raise ValueError("-INFINITY is not a value")
        return Value(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Value(other)
        return self + (-other)

    def __mul__(self, n):
        if self.inf:
            return INFINITY
        return Value(self.a * n, self.b * n)

    __rmul__ = __mul__

    def to_json(self):
        if self.inf:
            return "inf"
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj):
        if obj == "inf":
            return INFINITY
        return cls(Fraction(obj["a"]), Fraction(obj["b"]))

    def __repr__(self):
        if self.inf:
            return "INFINITY"
        if self.b == 0:
            return f"Value({self.a})"
        return f"Value({self.a} + {self.b}*r)"


INFINITY = Value(inf=True)


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def vp_rational(x, p):
    """Exact p-adic valuation of a rational number."""
    if not is_prime(p):
        raise LabError("NOT_PRIME", f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    k = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return Value(k)


class PadicValuation:
    """The p-adic valuation on Q, as a valuation handle."""

    def __init__(self, p):
        if not is_prime(p):
            raise LabError("NOT_PRIME", f"{p} is not prime")
        self.p = p

    def value(self, x):
        if hasattr(x, "field") and not isinstance(x, Fraction):
            x = x.to_base() if hasattr(x, "to_base") else x
        return vp_rational(x, self.p)

    @property
    def e(self):
        return 1

    @property
    def f(self):
        return 1

    def __eq__(self, other):
        return isinstance(other, PadicValuation) and other.p == self.p

    def __hash__(self):
        return hash(("vp", self.p))

    def __repr__(self):
        return f"v_{self.p}"


def as_handle(v):
    return PadicValuation(v) if isinstance(v, int) else v


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull segments (slope, horizontal length), slopes increasing.

    A segment of slope s and length l stands for l roots of value -s.
    """

    segments: tuple
    vertices: tuple = ()

    def root_values(self):
        return [(-s, n) for s, n in self.segments]

    def to_json(self):
        return {
            "segments": [{"slope": str(s), "length": n} for s, n in self.segments],
            "root_values": [{"value": str(-s), "count": n} for s, n in self.segments],
        }


def _hull(points):
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(f, v):
    """Newton polygon of f under the valuation handle v (or a prime)."""
    if f.is_zero():
        raise LabError("ZERO_POLY", "zero polynomial has no Newton polygon")
    v = as_handle(v)
    pts = []
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        val = v.value(c)
        if val.b != 0:
            raise LabError("DOMAIN_MISMATCH", "coefficient values must be rational")
        pts.append((i, val.a))
    hull = _hull(pts)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, 1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), tuple(hull))


@dataclass(frozen=True)
class PadicApprox:
    """unit * p^shift known modulo p^(shift + N)."""

    p: int
    unit: int
    shift: int
    N: int

    @classmethod
    def from_integer(cls, x, p, N):
        """x modulo p^N as an approximation with absolute precision N."""
        x %= p ** N
        if x == 0:
            return cls(p, 0, N, 0)
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        return cls(p, x % p ** (N - k), k, N - k)

    def to_integer(self):
        return self.unit * self.p ** self.shift

    @property
    def modulus(self):
        return self.p ** (self.shift + self.N)

    def to_json(self):
        return {"p": self.p, "shift": self.shift, "unit": self.unit, "N": self.N}


def value_of_element(g, d):
    """Value of g(a) under the extension d of K(a), g a polynomial over K."""
    return d.value_of_poly(g)


def _int_candidates():
    yield 0
    for n in count(1):
        yield n
        yield -n


def weak_approximation(vs, targets, max_height=None):
    """An element a with v_i(a) >= 0 and v_i(a - a_i) > 0 for every i.

    ``vs`` are distinct valuation handles on one field (primes or
    ExtensionDescriptors on a common tower), ``targets`` elements of it.
    """
    if len(vs) != len(targets):
        raise LabError("BAD_ARGUMENT", "one target per valuation")
    if not vs:
        raise LabError("BAD_ARGUMENT", "no valuations given")
    vs = [as_handle(v) for v in vs]
    for v, t in zip(vs, targets):
        if v.value(t) < 0:
            raise LabError("NOT_INTEGRAL", f"target {t} has negative value")
    if len(vs) == 1:
        return targets[0]
    if all(isinstance(v, PadicValuation) for v in vs):
        return _weak_approx_q(vs, targets)
    from .extensions import weak_approximation_tower

    return weak_approximation_tower(vs, targets, max_height)


def _passes(vs, targets, a):
    return all(v.value(a) >= 0 and v.value(a - t) > 0 for v, t in zip(vs, targets))


def _weak_approx_q(vs, targets):
    primes = [v.p for v in vs]
    if len(set(primes)) != len(primes):
        raise LabError("DUPLICATE_VALUATIONS", f"repeated prime in {primes}")
    targets = [Fraction(t) for t in targets]
    bound = prod(primes)
    for a in _int_candidates():
        if abs(a) > bound:
            break
        if _passes(vs, targets, Fraction(a)):
            return Fraction(a)
    raise AssertionError("integer search exhausted; CRT guarantees a solution")
