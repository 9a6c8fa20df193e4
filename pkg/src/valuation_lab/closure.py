"""Stages of the p-adic closure construction, tracked through their value groups.

Field elements are monomials in p, t and the adjoined roots b_1, b_2, ...
with unit factors dropped; the value of t exceeds every integer.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import LabError
from .valuation import is_prime
from .valuegroup import FGGroup, elem, extend_div, least_positive_is_one, subgroup_index

_FACTOR = re.compile(r"\s*(p|t|b(\d+))\s*(?:\^\s*(-?\d+))?\s*")


@dataclass(frozen=True)
class MonomialElem:
    """p^e0 * t^e1 * b_1^e2 * ... (times a unit when ``unit`` is set)."""

    exponents: tuple
    unit: bool = True

    @classmethod
    def of(cls, *exponents):
        return cls(tuple(exponents))

    @classmethod
    def parse(cls, src):
        """Parse products like ``t``, ``p^2*t``, ``b1^3*t^-1``; ``1`` is the unit."""
        src = src.strip()
        if src == "1":
            return cls((0, 0))
        exps = {}
        pos = 0
        for i, part in enumerate(src.split("*")):
            m = _FACTOR.fullmatch(part)
            if not m:
                raise LabError("PARSE_ERROR", f"bad monomial factor at offset {pos}: {part.strip()!r}")
            name = m.group(1)
            slot = 0 if name == "p" else 1 if name == "t" else 1 + int(m.group(2))
            if name.startswith("b") and int(m.group(2)) < 1:
                raise LabError("PARSE_ERROR", f"roots are numbered from 1 (offset {pos})")
            exps[slot] = exps.get(slot, 0) + int(m.group(3) or 1)
            pos += len(part) + 1
        top = max(exps) + 1
        return cls(tuple(exps.get(i, 0) for i in range(max(top, 2))))

    def to_str(self):
        names = ["p", "t"] + [f"b{i}" for i in range(1, len(self.exponents) - 1)]
        parts = []
        for n, e in zip(names, self.exponents):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class RootRecord:
    target: MonomialElem
    q: int
    m: int
    value: object
    index: int

    def to_json(self):
        return {
            "index": self.index,
            "m": self.m,
            "q": self.q,
            "target": self.target.to_str(),
            "value": self.value.to_json(),
        }


@dataclass(frozen=True)
class Stage:
    index: int
    group: FGGroup
    roots: tuple
    p: int
    forced: bool = False

    def generator_values(self):
        return [elem(1), elem(0, 1)] + [r.value for r in self.roots]

    def value(self, a):
        gens = self.generator_values()
        if len(a.exponents) > len(gens):
            raise LabError("MALFORMED_STAGE", f"{a.to_str()} uses roots not yet adjoined")
        out = elem(0)
        for e, g in zip(a.exponents, gens):
            out = out + g * e
        return out

    def to_json(self):
        return {
            "flags": formally_padic_check(self),
            "forced": self.forced,
            "group": self.group.to_json(),
            "index": self.index,
            "roots": [r.to_json() for r in self.roots],
        }


def initial_stage(p=2, group=None):
    """Q(t) with v(t) above every integer: value group Z<1, r>."""
    if not is_prime(p):
        raise LabError("NOT_PRIME", f"{p} is not prime")
    return Stage(0, group or FGGroup([elem(1), elem(0, 1)]), (), p)


def formally_padic_check(s):
    """Flags: extends v_p, residue field F_p, v(p) least positive."""
    if not s.group.contains(elem(1)):
        raise LabError("MALFORMED_STAGE", "the value of p is missing from the group")
    for r in s.roots:
        if not s.group.contains(r.value):
            raise LabError("MALFORMED_STAGE", f"root value {r.value} is outside the group")
    # a root adjoined with ramification index q has residue degree 1 by e*f <= q
    residue = all(r.index == r.q for r in s.roots)
    least = least_positive_is_one(s.group)
    return {
        "extends_padic": True,
        "formally_padic": residue and least,
        "least_positive_one": least,
        "residue_is_Fp": residue,
    }


def closure_stage(s, a, q):
    """Ensure q divides one of v(a), v(a)+1, ..., v(a)+q-1, adjoining a q-th root if needed."""
    if not is_prime(q):
        raise LabError("NOT_PRIME", f"{q} is not prime")
    gamma = s.value(a)
    if any(s.group.div_query(gamma + j, q) for j in range(q)):
        return Stage(s.index + 1, s.group, s.roots, s.p, False)
    group = extend_div(s.group, gamma, q)
    idx = subgroup_index(s.group, group)
    root = RootRecord(a, q, 0, gamma * Fraction(1, q), idx)
    out = Stage(s.index + 1, group, s.roots + (root,), s.p, True)
    flags = formally_padic_check(out)
    if not flags["formally_padic"]:
        raise LabError("NOT_FORMALLY_PADIC", f"stage {out.index} fails {flags}")
    return out


def run_closure(s0, schedule):
    """[s0, s1, ...] folding closure_stage over the schedule of (element, prime) pairs."""
    stages = [s0]
    for a, q in schedule:
        stages.append(closure_stage(stages[-1], a, q))
    return stages
