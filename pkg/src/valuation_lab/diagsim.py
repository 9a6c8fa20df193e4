"""Finite-stage replays of three diagonal constructions on valued fields.

Each simulator returns a report with one {claim, verdict, witness} record per
checked claim.  A finite member set stands in for the halting set.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .config import DEFAULT
from .errors import LabError
from .exact import Poly
from .extensions import absolute_valuations, extensions_of
from .hensel import hensel_simple_root
from .numberfields import FieldTower, factor_over_field
from .valuation import is_prime
from .valuegroup import FGGroup, elem, least_positive_is_one


@dataclass(frozen=True)
class OracleApprox:
    """A finite approximation of a c.e. set; ``budget`` bounds default probing."""

    member_set: frozenset
    budget: int = 3

    def __init__(self, member_set=(), budget=3):
        object.__setattr__(self, "member_set", frozenset(member_set))
        object.__setattr__(self, "budget", budget)
        if any(a < 1 for a in self.member_set):
            raise LabError("BAD_ARGUMENT", "member indices start at 1")


def _primes():
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


def prime_index(i, r):
    """The i-th prime different from r (1-based)."""
    seen = 0
    for p in _primes():
        if p != r:
            seen += 1
            if seen == i:
                return p


def congruent_primes(count, r):
    """The first ``count`` primes congruent to 1 modulo r."""
    out = []
    for p in _primes():
        if len(out) == count:
            return out
        if p % r == 1:
            out.append(p)


def _record(claim, verdict, witness):
    return {"claim": claim, "verdict": verdict, "witness": witness}


def _check_r(r):
    if not is_prime(r) or r == 2:
        raise LabError("NOT_PRIME", f"{r} must be an odd prime")


def build_tower(r, oracle, config=DEFAULT):
    """K = Q((r q_i)^(1/p_{a_i})) over the members a_1 < a_2 < ... ."""
    members = sorted(oracle.member_set)
    qs = congruent_primes(len(members), r)
    levels = []
    degree = 1
    for j, (a, q) in enumerate(zip(members, qs)):
        p = prime_index(a, r)
        degree *= p
        if degree > config.probe_degree_bound:
            raise LabError("DEGREE_BOUND", f"tower degree {degree} exceeds {config.probe_degree_bound}")
        levels.append((f"c{j + 1}", Poly([-r * q] + [0] * (p - 1) + [1])))
    return FieldTower(levels, config=config), list(zip(members, qs))


def sim_no_comp_ext(r, oracle, probes=None, config=DEFAULT):
    """Probe the number of extensions of v_r from K to K(r^(1/p_a))."""
    _check_r(r)
    K, used = build_tower(r, oracle, config)
    probes = sorted(oracle.member_set | {1}) if probes is None else list(probes)
    if not oracle.member_set and not probes:
        return {"claims": [], "members": [], "tower": K.to_json()}
    base = absolute_valuations(K, r)
    if len(base) != 1:
        raise AssertionError("v_r should extend uniquely to K")
    v = base[0]
    claims = []
    for a in probes:
        p = prime_index(a, r)
        if K.degree * p > config.probe_degree_bound:
            raise LabError("DEGREE_BOUND", f"probe degree {K.degree * p} exceeds {config.probe_degree_bound}")
        g = Poly([-r] + [0] * (p - 1) + [1])
        g = factor_over_field(g, K)[0][0]
        rep = extensions_of(K, v, g)
        count = len(rep)
        expected = a in oracle.member_set
        claims.append(
            _record(
                f"a = {a}: more than one extension of v_{r} to K(r^(1/{p})) iff a is a member",
                (count > 1) == expected,
                {
                    "count": count,
                    "certificate": rep.equality_certificate,
                    "degree": rep.degree,
                    "ef": [[d.e, d.f] for d in rep],
                    "member": expected,
                },
            )
        )
    return {
        "claims": claims,
        "members": [{"a": a, "p": prime_index(a, r), "q": q} for a, q in used],
        "tower": K.to_json(),
    }


def sim_henselization(r, oracle, probes=None, precision=8, config=DEFAULT):
    """Positive claims via Hensel lifting, negative ones via the value group of K."""
    _check_r(r)
    members = sorted(oracle.member_set)
    qs = congruent_primes(len(members), r)
    claims = []
    for a, q in zip(members, qs):
        p = prime_index(a, r)
        root = hensel_simple_root(Poly([-q] + [0] * (p - 1) + [1]), 1, r, precision, config)
        claims.append(
            _record(f"{q}^(1/{p}) lies in the Henselization of Q at {r}", True, root.to_json())
        )
    gens = [elem(Fraction(1, prime_index(a, r))) for a in members] + [elem(1)]
    group = FGGroup(gens)
    K_deg = prod(prime_index(a, r) for a in members)
    if members and K_deg <= config.probe_degree_bound:
        K, _ = build_tower(r, oracle, config)
        e = absolute_valuations(K, r)[0].absolute_e
        if e != K_deg:
            raise AssertionError("value group of K does not match its ramification")
    probes = sorted(set(range(1, oracle.budget + 1))) if probes is None else list(probes)
    for a in probes:
        p = prime_index(a, r)
        if a in oracle.member_set:
            claims.append(
                _record(f"{r}^(1/{p}) not in K^h", None, "skipped: in Henselization by construction")
            )
            continue
        inside = group.contains(elem(Fraction(1, p)))
        claims.append(
            _record(
                f"{r}^(1/{p}) not in K^h",
                not inside,
                {"group": group.to_json(), "value": elem(Fraction(1, p)).to_json(), "in_group": inside},
            )
        )
    return {"claims": claims, "members": members}


def sim_padic_adversary(p, q, m, claimed_gamma):
    """Adjoin b with b^q = p^(m+1) t and exhibit q*(v(b) - gamma) = 1."""
    if not is_prime(q) or not is_prime(p):
        raise LabError("NOT_PRIME", "q and p must be prime")
    if not 0 <= m < q:
        raise LabError("BAD_ARGUMENT", f"offset {m} outside 0..{q - 1}")
    gamma = claimed_gamma
    if gamma * q != elem(m, 1):
        raise LabError("TRIGGER_UNMET", f"{q} * {gamma} != v(p^{m} t)")
    vb = elem(Fraction(m + 1, q), Fraction(1, q))
    witness = (vb - gamma) * q
    if witness != elem(1):
        raise AssertionError("witness identity failed")
    target = FGGroup([elem(1), elem(0, 1), gamma, vb])
    least = least_positive_is_one(target)
    return {
        "claims": [
            _record("q * (v(b) - gamma) = 1", True, witness.to_json()),
            _record("target is formally p-adic", least, {"group": target.to_json()}),
        ],
        "contradiction": not least,
        "gamma": gamma.to_json(),
        "m": m,
        "p": p,
        "q": q,
        "v_b": vb.to_json(),
        "witness": witness.to_json(),
    }
