"""Inductive valuations on Q[x] and the enumeration of p-adic branches of a polynomial.

A chain ``[(phi_1, mu_1), ..., (phi_n, mu_n)]`` over the Gauss valuation
defines v_n by

    v_n(f) = min_i ( v_{n-1}(a_i) + i * mu_n ),   f = sum a_i phi_n^i,  deg a_i < deg phi_n.

Keys have strictly increasing degree.  Each level also carries the residue
field k_n in which residual polynomials of level n live, and the class
y_{n-1} generating k_n over k_{n-1}.

Exploring an irreducible G from the Gauss valuation, one branch per
(Newton segment, residual factor), ends in leaves that correspond one to one
with the irreducible factors of G over Q_p, i.e. with the extensions of v_p
to Q[x]/(G).
"""

from fractions import Fraction

from .errors import LabError
from .exact import ExtensionField, Poly, PrimeField, QQ, factor_over_fp

INF = None  # infinite value marker inside this module


def vp_int(n, p):
    if n == 0:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_frac(x, p):
    if x == 0:
        return None
    return Fraction(vp_int(x.numerator, p) - vp_int(x.denominator, p))


def expand(f, phi):
    """phi-adic expansion: coefficients a_i with f = sum a_i phi^i."""
    out = []
    while not f.is_zero():
        f, r = divmod(f, phi)
        out.append(r)
    return out


class Level:
    __slots__ = ("phi", "mu", "e", "E", "k", "y_prev", "psi")

    def __init__(self, phi, mu, e, E, k, y_prev, psi):
        self.phi = phi
        self.mu = mu
        self.e = e
        self.E = E
        self.k = k
        self.y_prev = y_prev
        self.psi = psi


class Chain:
    """Inductive valuation over the p-adic Gauss valuation; immutable."""

    def __init__(self, p, levels=()):
        self.p = p
        self.levels = tuple(levels)
        self.Fp = PrimeField(p)

    def __len__(self):
        return len(self.levels)

    def level(self, i):
        """Level i, 1-based."""
        return self.levels[i - 1]

    def E(self, m=None):
        m = len(self) if m is None else m
        return 1 if m == 0 else self.levels[m - 1].E

    def residue_field(self, m=None):
        m = len(self) if m is None else m
        return self.Fp if m == 0 else self.levels[m - 1].k

    def truncate(self, m):
        return Chain(self.p, self.levels[:m])

    # -- values ---------------------------------------------------------

    def value(self, f, m=None):
        m = len(self) if m is None else m
        if f.is_zero():
            return INF
        if m == 0:
            return min(vp_frac(c, self.p) for c in f.coeffs if c)
        lev = self.levels[m - 1]
        best = INF
        for i, a in enumerate(expand(f, lev.phi)):
            if a.is_zero():
                continue
            v = self.value(a, m - 1) + i * lev.mu
            if best is INF or v < best:
                best = v
        return best

    def pi(self, gamma, m):
        """Exponent vector (p, phi_1, ..., phi_m) of the normalising monomial of value gamma."""
        if m == 0:
            if gamma.denominator != 1:
                raise AssertionError(f"{gamma} is not in the value group")
            return [int(gamma)]
        lev = self.levels[m - 1]
        Eprev = self.E(m - 1)
        for c in range(lev.e):
            if ((gamma - c * lev.mu) * Eprev).denominator == 1:
                return self.pi(gamma - c * lev.mu, m - 1) + [c]
        raise AssertionError(f"{gamma} is not in the value group of level {m}")

    def mono_red(self, exps, m):
        """Reduction of a value-0 monomial p^c0 phi_1^c1 ... phi_m^cm; lands in k_{m+1}."""
        if m == 0:
            if exps[0] != 0:
                raise AssertionError("monomial does not have value 0")
            return self.Fp.one
        lev = self.levels[m - 1]
        c = exps[m]
        if c % lev.e:
            raise AssertionError("monomial does not have value 0")
        k = c // lev.e
        step = self.pi(lev.e * lev.mu, m - 1)
        rest = [a + k * b for a, b in zip(exps[:m], step)]
        y = self.levels[m].y_prev
        low = self.mono_red(rest, m - 1)
        return y.field(low) * y ** k if k else y.field(low)

    def red(self, a, m):
        """(value, normalised reduction in k_{m+1}) of a with deg a < deg phi_{m+1}."""
        if m == 0:
            gamma = min(vp_frac(c, self.p) for c in a.coeffs if c)
            scale = Fraction(self.p) ** (-int(gamma))
            abar = Poly([self.Fp(c * scale) for c in a.coeffs], self.Fp)
            return gamma, abar(self.levels[0].y_prev)
        lev = self.levels[m - 1]
        target = self.levels[m].k
        terms = []
        for i, b in enumerate(expand(a, lev.phi)):
            if b.is_zero():
                continue
            g, r = self.red(b, m - 1)
            terms.append((g + i * lev.mu, i, g, r))
        gamma = min(t[0] for t in terms)
        top = self.pi(gamma, m)
        acc = target.zero
        for total, i, g, r in terms:
            if total != gamma:
                continue
            vec = self.pi(g, m - 1) + [i]
            vec = [x - y for x, y in zip(vec, top)]
            acc = acc + target(r) * target(self.mono_red(vec, m))
        return gamma, acc

    def residual_polynomial(self, f):
        """Residual polynomial of f at the top level, over k_n, normalised at its lowest index."""
        n = len(self)
        if n == 0:
            gamma = self.value(f, 0)
            scale = Fraction(self.p) ** (-int(gamma))
            return Poly([self.Fp(c * scale) for c in f.coeffs], self.Fp)
        lev = self.levels[n - 1]
        k = lev.k
        data = {}
        for i, b in enumerate(expand(f, lev.phi)):
            if b.is_zero():
                continue
            g, r = self.red(b, n - 1)
            data[i] = (g, r)
        gamma = min(g + i * lev.mu for i, (g, _) in data.items())
        touching = sorted(i for i, (g, _) in data.items() if g + i * lev.mu == gamma)
        s = touching[0]
        step = self.pi(lev.e * lev.mu, n - 1)
        base = self.pi(data[s][0], n - 1)
        coeffs = []
        for idx in range(s, touching[-1] + 1, lev.e):
            if idx not in touching:
                coeffs.append(k.zero)
                continue
            j = (idx - s) // lev.e
            g, r = data[idx]
            vec = [a + j * b - c for a, b, c in zip(self.pi(g, n - 1), step, base)]
            coeffs.append(k(r) * k(self.mono_red(vec, n - 1)))
        return Poly(coeffs, k)

    # -- construction -----------------------------------------------------

    def augment(self, phi, mu):
        """Append the level phi -> mu (phi a key polynomial of strictly larger degree)."""
        n = len(self)
        psi = self.residual_polynomial(phi).monic()
        kprev = self.residue_field(n)
        if psi.degree() == 1:
            k = kprev
            y = -psi.coeffs[0]
        else:
            k = ExtensionField(kprev, psi, f"y{n}")
            y = k.gen()
        Eprev = self.E(n)
        e = (Fraction(mu) * Eprev).denominator
        return Chain(self.p, self.levels + (Level(phi, Fraction(mu), e, Eprev * e, k, y, psi),))

    def lift(self, c, gamma, m):
        """Polynomial a, deg a < deg phi_{m+1}, with v_m(a) = gamma and red_m(a) = c."""
        if not c:
            return Poly([], QQ)
        if m == 0:
            k1 = self.levels[0].k
            coords = c.coordinates() if isinstance(k1, ExtensionField) and k1.base == self.Fp else [c]
            scale = Fraction(self.p) ** int(gamma)
            return Poly([Fraction(int(x)) * scale for x in coords], QQ)
        lev = self.levels[m - 1]
        knext = self.levels[m].k
        kcur = lev.k
        c = knext(c)
        if knext == kcur:
            coords = [c]
        else:
            coords = c.coordinates()
        top = self.pi(gamma, m)
        c0 = top[m]
        out = Poly([], QQ)
        for j, cj in enumerate(coords):
            if not cj:
                continue
            idx = c0 + j * lev.e
            gj = gamma - idx * lev.mu
            vec = [a - b for a, b in zip(self.pi(gj, m - 1) + [idx], top)]
            mono = knext(self.mono_red(vec, m))
            y = self.levels[m].y_prev
            want = knext(cj) * (y ** j if j else knext.one) / mono
            if knext != kcur:
                want = want.to_base()
            b = self.lift(want, gj, m - 1)
            out = out + b * lev.phi ** idx
        return out

    def lift_key(self, chi):
        """Key polynomial for the top level whose residual polynomial is a multiple of chi."""
        n = len(self)
        lev = self.levels[n - 1]
        k = lev.k
        d = chi.degree()
        e, mu = lev.e, lev.mu
        step = self.pi(e * mu, n - 1)
        topv = self.pi(d * e * mu, n - 1)

        def mono(kk):
            v = self.pi((d - kk) * e * mu, n - 1)
            return k(self.mono_red([a + kk * b - c for a, b, c in zip(v, step, topv)], n - 1))

        rd = mono(d)
        phi = lev.phi ** (d * e)
        for kk in range(d):
            ck = chi.coeff(kk)
            if not ck:
                continue
            a = self.lift(k(ck) * rd / mono(kk), (d - kk) * e * mu, n - 1)
            phi = phi + a * lev.phi ** (kk * e)
        return phi

    def path(self):
        return [(lev.mu, lev.psi.to_str("y")) for lev in self.levels]


def lower_hull(points):
    """Lower convex hull of (x, y) points sorted by x; returns the vertex list."""
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


def _segments(points):
    """Segments (slope, start, end) of the lower hull."""
    hull = lower_hull(points)
    return [((y2 - y1) / (x2 - x1), x1, x2) for (x1, y1), (x2, y2) in zip(hull, hull[1:])]


class Branch:
    """One irreducible p-adic factor of G, i.e. one extension of v_p to Q[x]/(G).

    The branch is the set of roots theta with v(phi(theta)) > tau under
    ``base``; it has exactly ``deg phi`` roots.
    """

    def __init__(self, G, base, phi, tau, e, f, path, limit):
        self.G = G
        self.p = base.p
        self.base = base
        self.phi = phi
        self.tau = tau
        self.e = e
        self.f = f
        self.path = path
        self.limit = limit

    @property
    def degree(self):
        return self.phi.degree()

    def _segment(self, phi, tau):
        coeffs = expand(self.G, phi)
        if coeffs[0].is_zero():
            return None
        pts = [(i, self.base.value(a)) for i, a in enumerate(coeffs) if not a.is_zero()]
        segs = [s for s in _segments(pts) if -s[0] > tau]
        assert len(segs) == 1 and segs[0][1] == 0 and segs[0][2] == 1, "branch not isolated"
        return -segs[0][0]

    def value(self, g):
        """Exact value of g(theta) under this extension (deg g < deg G, g != 0)."""
        if g.is_zero():
            return INF
        phi, tau = self.phi, self.tau
        while True:
            lam = self._segment(phi, tau)
            coeffs = expand(g, phi)
            vals = [(i, self.base.value(a)) for i, a in enumerate(coeffs) if not a.is_zero()]
            if lam is None:
                if len(coeffs) > 1 and any(not a.is_zero() for a in coeffs[1:]):
                    raise LabError("PRECISION_EXHAUSTED", "element vanishes at the root")
                return self.base.value(coeffs[0])
            v0 = dict(vals).get(0)
            others = [v + i * lam for i, v in vals if i > 0]
            if v0 is not INF and all(v0 < o for o in others):
                return v0
            if lam > self.limit:
                raise LabError("PRECISION_EXHAUSTED", f"value not certified below {self.limit}")
            chain = self.base.augment(phi, lam)
            R = chain.residual_polynomial(self.G)
            assert R.degree() == 1
            phi, tau = chain.lift_key(R.monic()), lam
            if phi.degree() != self.phi.degree():
                raise AssertionError("refinement changed the key degree")

    def refined_key(self, rounds=1):
        phi, tau = self.phi, self.tau
        for _ in range(rounds):
            lam = self._segment(phi, tau)
            if lam is None:
                break
            chain = self.base.augment(phi, lam)
            R = chain.residual_polynomial(self.G)
            phi, tau = chain.lift_key(R.monic()), lam
        return phi


def branches(G, p, limit=8, precision_cap=256):
    """All extensions of v_p to Q[x]/(G) for monic irreducible integral G."""
    if any(c.denominator != 1 for c in G.coeffs) or not G.is_monic():
        raise ValueError("G must be monic with integer coefficients")
    out = []
    Fp = PrimeField(p)
    root = Chain(p)
    Gbar = Poly([Fp(c) for c in G.coeffs], Fp)
    for chi, t in factor_over_fp(Gbar):
        phi = Poly([Fraction(c.v) for c in chi.coeffs], QQ)
        _explore(G, root, phi, Fraction(0), t, out, 0, limit, precision_cap, [(Fraction(0), chi.to_str("y"))])
    total = sum(b.e * b.f for b in out)
    if total != G.degree():
        raise LabError("REFINEMENT_LIMIT", f"sum e*f = {total} != {G.degree()}")
    return out


def _explore(G, base, phi, tau, t, out, depth, limit, cap, path):
    if depth > limit:
        raise LabError("REFINEMENT_LIMIT", f"refinement depth exceeded {limit}")
    coeffs = expand(G, phi)
    if coeffs[0].is_zero():
        # phi divides G; irreducibility forces phi == G
        e = base.E()
        out.append(Branch(G, base, phi, tau, e, phi.degree() // e, path + [(None, "")], cap))
        return
    pts = [(i, base.value(a)) for i, a in enumerate(coeffs) if not a.is_zero()]
    segs = [s for s in _segments(pts) if -s[0] > tau]
    if sum(b - a for _, a, b in segs) != t:
        raise AssertionError("principal polygon length mismatch")
    for slope, start, end in segs:
        lam = -slope
        chain = base.augment(phi, lam)
        R = chain.residual_polynomial(G)
        for chi, u in factor_over_fp(R):
            step = path + [(lam, chi.to_str("y"))]
            newphi = chain.lift_key(chi)
            if u == 1:
                kdeg = _absdeg(chain.residue_field())
                e, f = chain.E(), kdeg * chi.degree()
                assert e * f == newphi.degree()
                nbase = base if newphi.degree() == phi.degree() else chain
                ntau = lam if nbase is base else chain.value(newphi)
                out.append(Branch(G, nbase, newphi, ntau, e, f, step, cap))
            elif newphi.degree() == phi.degree():
                _explore(G, base, newphi, lam, u, out, depth + 1, limit, cap, step)
            else:
                _explore(G, chain, newphi, chain.value(newphi), u, out, depth + 1, limit, cap, step)


def _absdeg(k):
    d = 1
    while isinstance(k, ExtensionField):
        d *= k.degree
        k = k.base
    return d
