"""Hensel lifting of p-adic roots and membership in the Hensel irreducibility set."""

from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT
from .errors import LabError
from .exact import FpElem, QQ
from .maclane import vp_frac
from .numberfields import FieldTower, is_irreducible_over
from .valuation import INFINITY, PadicApprox, PadicValuation, Value, is_prime


def _to_residue_int(x, m):
    """Integer congruent to the p-integral rational x modulo m."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def _check_integral(f, p):
    for c in f.coeffs:
        if c and vp_frac(Fraction(c), p) < 0:
            raise LabError("NOT_INTEGRAL", f"coefficient {c} has negative {p}-adic value")


def _v(x, p):
    v = vp_frac(Fraction(x), p)
    return None if v is None else int(v)


def _show(v):
    return "inf" if v is None else v


@dataclass
class LiftTrace:
    """Defects v(f(b_j)) along the iteration, and k = v(f'(seed))."""

    k: int
    defects: list = field(default_factory=list)

    def quadratic(self):
        d = self.defects
        return all(b is None or (a is not None and b >= 2 * a - 2 * self.k) for a, b in zip(d, d[1:]))


def _seed_value(seed):
    if isinstance(seed, PadicApprox):
        return Fraction(seed.to_integer())
    if isinstance(seed, FpElem):
        return Fraction(seed.v)
    return Fraction(seed)


def hensel_lift_traced(f, seed, p, N, config=DEFAULT):
    """(b mod p^N, trace) with f(b) = 0 mod p^N and v(b - seed) > v(f'(seed))."""
    if not is_prime(p):
        raise LabError("NOT_PRIME", f"{p} is not prime")
    if N > config.hensel_precision_cap:
        raise LabError("PRECISION_OVERFLOW", f"precision {N} exceeds cap {config.hensel_precision_cap}")
    if N < 1:
        raise LabError("BAD_ARGUMENT", "precision must be positive")
    f = f.change_field(QQ) if f.field != QQ else f
    _check_integral(f, p)
    a = _seed_value(seed)
    if a and vp_frac(a, p) < 0:
        raise LabError("NOT_INTEGRAL", "seed is not p-integral")
    df = f.derivative()
    k = _v(df(a), p)
    delta = _v(f(a), p)
    if k is None or (delta is not None and delta <= 2 * k):
        raise LabError(
            "HENSEL_PRECONDITION",
            f"need v(f(a)) > 2 v(f'(a)); got v(f(a)) = {_show(delta)}, v(f'(a)) = {_show(k)}",
        )
    trace = LiftTrace(k, [delta])
    target = N + k
    b = a
    if delta is not None:
        b = Fraction(_to_residue_int(a, p ** (target + k + 1)))
        delta = _v(f(b), p)
        trace.defects[0] = delta
    while delta is not None and delta < target:
        # exact step is b - f(b)/f'(b); dropping terms of value > 2 delta - k
        # keeps the next defect at least 2 delta - 2k
        m = p ** (2 * delta - k + 1)
        step = _to_residue_int(f(b) / df(b), m)
        b = Fraction((int(b) - step) % m)
        delta = _v(f(b), p)
        trace.defects.append(delta)
    return PadicApprox.from_integer(_to_residue_int(b, p ** N), p, N), trace


def hensel_lift(f, seed, p, N, config=DEFAULT):
    """The Hensel lift of seed to a root of f modulo p^N."""
    return hensel_lift_traced(f, seed, p, N, config)[0]


def hensel_simple_root(f, abar, p, N, config=DEFAULT):
    """Lift a simple root of f mod p (an element of F_p) to a root modulo p^N."""
    if isinstance(abar, FpElem):
        if abar.field.p != p:
            raise LabError("DOMAIN_MISMATCH", "residue lives in a different prime field")
        a = abar.v
    elif isinstance(abar, (int, Fraction)):
        a = _to_residue_int(abar, p)
    else:
        raise LabError("DOMAIN_MISMATCH", "only residues in F_p are supported")
    f = f.change_field(QQ) if f.field != QQ else f
    _check_integral(f, p)
    if _to_residue_int(f(Fraction(a)), p) != 0 or _to_residue_int(f.derivative()(Fraction(a)), p) == 0:
        raise LabError("NOT_SIMPLE_ROOT", f"{a} is not a simple root of f modulo {p}")
    return hensel_lift(f, a, p, N, config)


@dataclass(frozen=True)
class HenselSetResult:
    member: bool
    reason: str
    non_henselian: bool

    def to_json(self):
        return {"member": self.member, "non_henselian": self.non_henselian, "reason": self.reason}


def _coeff_value(v, c):
    if isinstance(v, int):
        v = PadicValuation(v)
    if not c:
        return INFINITY
    return v.value(c)


def hensel_set_membership(K, v, f):
    """Decide f in H_K: monic, irreducible, v(a_{n-1}) = 0 and v(a_i) > 0 below."""
    if K is None:
        K = FieldTower.rationals()
    if f.field != K.top:
        f = f.change_field(K.top)
    if not f.is_monic():
        raise LabError("NOT_MONIC", "polynomial must be monic")
    n = f.degree()
    if n < 1:
        raise LabError("BAD_ARGUMENT", "polynomial must have positive degree")
    vals = [_coeff_value(v, c) for c in f.coeffs]
    for i, val in enumerate(vals):
        if val < Value(0):
            raise LabError("NOT_INTEGRAL", f"v(a_{i}) = {val} is negative")
    if vals[n - 1] != Value(0):
        return HenselSetResult(False, f"shape: v(a_{n - 1}) > 0", False)
    for i in range(n - 1):
        if vals[i] == Value(0):
            return HenselSetResult(False, f"shape: v(a_{i}) = 0", False)
    if not is_irreducible_over(f, K):
        return HenselSetResult(False, "reducible", False)
    return HenselSetResult(True, "member", n >= 2)
