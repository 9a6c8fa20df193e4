from fractions import Fraction

from hypothesis import settings

from valuation_lab import FieldTower, parse_poly
from valuation_lab.exact import Poly, poly_from_ints
from valuation_lab.valuation import vp_rational

settings.register_profile("lab", max_examples=60, deadline=None)
settings.load_profile("lab")


def P(src, field=None):
    return parse_poly(src) if field is None else parse_poly(src, field=field)


def tower(*levels):
    return FieldTower([(name, parse_poly(mp)) for name, mp in levels])


def hensel_problem(rng):
    """(f, seed, p) with v(f(seed)) > 2 v(f'(seed)), f integral."""
    p = rng.choice([2, 3, 5, 7])
    a = rng.randint(-20, 20)
    k = rng.randint(0, 2)
    c1 = p**k * rng.choice([u for u in range(1, 3 * p) if u % p])
    c0 = p ** (2 * k + 1 + rng.randint(0, 2)) * rng.randint(-3, 3)
    g = poly_from_ints([rng.randint(-5, 5) for _ in range(rng.randint(0, 3))] + [1])
    shift = P("x") - a
    f = Poly.const(c0) + shift.scale(Fraction(c1)) + shift * shift * g
    return f, a, p


def shape_ok(cs, p):
    n = len(cs) - 1
    if cs[n - 1] == 0 or vp_rational(cs[n - 1], p) != 0:
        return False
    return all(c == 0 or vp_rational(c, p) > 0 for c in cs[: n - 1])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
