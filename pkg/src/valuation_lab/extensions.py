"""Extensions of p-adic valuations across finite extensions of number fields.

Every valuation on a tower L over v_p is pinned down by one branch of the
p-adic factorization of the integralized minimal polynomial of a primitive
element of L.  Relative extensions of a valuation v on a subfield K are the
branches on L whose restriction to K is v; restrictions are identified with
separating elements built from refined key polynomials.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

from .config import DEFAULT
from .errors import LabError
from .exact import QQ, Poly
from .maclane import branches, vp_frac
from .numberfields import FieldTower, factor_over_field, is_irreducible_over, primitive_element
from .valuation import INFINITY, PadicValuation, Value, is_prime, vp_rational


def _as_value(x):
    return INFINITY if x is None else Value(x)


def _scale_var(h, c):
    """h(c*x)."""
    return Poly([a * c ** i for i, a in enumerate(h.coeffs)], QQ)


class LocalSplitting:
    """All extensions of v_p to the tower L, as branches of an integral primitive element."""

    def __init__(self, tower, p, config=DEFAULT):
        if not is_prime(p):
            raise LabError("NOT_PRIME", f"{p} is not prime")
        self.tower = tower
        self.p = p
        self.config = config
        if tower.depth == 0:
            self.scale = 1
            self.minpoly = Poly([0, 1])
            self.branches = []
            self.count = 1
            return
        M = tower.flat.minpoly
        n = M.degree()
        d = lcm(*(c.denominator for c in M.coeffs))
        self.scale = d
        # d^n M(x/d) is monic and integral; its root is d*theta
        self.minpoly = Poly([c * d ** (n - i) for i, c in enumerate(M.coeffs)], QQ)
        self.branches = branches(
            self.minpoly, p, limit=config.refinement_limit, precision_cap=config.value_precision_cap
        )
        self.count = len(self.branches)
        self._separators = None

    def poly_of(self, beta):
        """h with beta = h(d*theta), deg h < [L:Q]."""
        g = self.tower.flat.poly_of(beta)
        return _scale_var(g, Fraction(1, self.scale))

    def elem_of(self, h):
        return self.tower.flat.elem_of(_scale_var(h, self.scale))

    def value_poly(self, i, h):
        if h.is_zero():
            return INFINITY
        if self.tower.depth == 0:
            return Value(_vp(h.coeffs[0], self.p))
        return _as_value(self.branches[i].value(h % self.minpoly))

    def value(self, i, beta):
        if self.tower.depth == 0:
            return vp_rational(QQ(beta), self.p)
        return self.value_poly(i, self.poly_of(beta))

    def separators(self):
        """Per branch k: (phi_k, lam_k, mu_k) with w_k(phi_k) = lam_k > mu_k >= w_l(phi_k), l != k."""
        if self._separators is not None:
            return self._separators
        out = []
        for k, br in enumerate(self.branches):
            if self.count == 1:
                out.append((Poly([1]), Value(0), None))
                continue
            for rounds in range(self.config.refinement_limit + 1):
                phi = br.refined_key(rounds)
                lam = self.value_poly(k, phi)
                mu = max(self.value_poly(j, phi) for j in range(self.count) if j != k)
                if lam > mu:
                    out.append((phi, lam, mu))
                    break
            else:
                raise LabError("DUPLICATE_VALUATIONS", f"branch {k} not separated at p = {self.p}")
        self._separators = out
        return out

    def identify(self, value_fn):
        """Index of the branch whose values on the separators agree with value_fn."""
        if self.count == 1:
            return 0
        hits = [k for k, (phi, lam, _) in enumerate(self.separators()) if value_fn(phi) == lam]
        if len(hits) != 1:
            raise AssertionError(f"restriction not identified: {hits}")
        return hits[0]


def _vp(x, p):
    return vp_frac(Fraction(x), p)


@lru_cache(maxsize=256)
def local_splitting(tower, p):
    return LocalSplitting(tower, p, tower.config)


class ExtensionDescriptor:
    """One extension w of a valuation v on K to L = K(a), a a root of ``minpoly``."""

    def __init__(self, tower, base_tower, base, minpoly, p, index, e, f, path, certified=True):
        self.tower = tower
        self.base_tower = base_tower
        self.base = base
        self.minpoly = minpoly
        self.p = p
        self.index = index
        self.e = e
        self.f = f
        self.path = path
        self.certified = certified

    @property
    def splitting(self):
        return local_splitting(self.tower, self.p)

    @property
    def branch(self):
        return self.splitting.branches[self.index] if self.tower.depth else None

    @property
    def absolute_e(self):
        return self.branch.e if self.tower.depth else 1

    @property
    def absolute_f(self):
        return self.branch.f if self.tower.depth else 1

    def _check(self):
        if not self.certified:
            raise LabError("UNCERTIFIED_DESCRIPTOR", "descriptor is not certified")

    def value(self, beta):
        """w(beta) for beta in L (rationals and subfield elements are coerced)."""
        self._check()
        if isinstance(beta, (int, Fraction)):
            beta = Fraction(beta)
            if beta == 0:
                return INFINITY
            return Value(_vp(beta, self.p))
        return self.splitting.value(self.index, self.tower.top(beta))

    def value_of_poly(self, g):
        """w(g(a)) for g a polynomial over K with deg g < deg minpoly."""
        self._check()
        if g.is_zero():
            return INFINITY
        if g.degree() >= self.minpoly.degree():
            raise LabError("DEGREE_BOUND", "polynomial degree must be below the extension degree")
        L = self.tower.top
        a = L(L.gen()) if self.tower.depth else None
        acc = L.zero
        for c in reversed(g.coeffs):
            acc = acc * a + L(c)
        return self.splitting.value(self.index, acc)

    def restriction_index(self, K):
        """Index, in local_splitting(K, p), of the restriction of w to the prefix tower K."""
        if not K.is_prefix_of(self.tower):
            raise LabError("DOMAIN_MISMATCH", "restriction target is not a subfield of the tower")
        return _restrict(self.splitting, self.index, local_splitting(K, self.p), _prefix_embedding(K, self.tower))

    def key(self):
        return (self.tower, self.p, self.index)

    def __eq__(self, other):
        return isinstance(other, ExtensionDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {
            "e": self.e,
            "f": self.f,
            "path": [
                {"slope": "inf" if s is None else str(s), "residual": r} for s, r in self.path
            ],
        }

    def __repr__(self):
        return f"ExtensionDescriptor(p={self.p}, index={self.index}, e={self.e}, f={self.f})"


@dataclass(frozen=True)
class ExtensionReport:
    extensions: tuple
    degree: int

    @property
    def equality_certificate(self):
        return sum(d.e * d.f for d in self.extensions)

    @property
    def certified(self):
        return self.equality_certificate == self.degree and all(d.certified for d in self.extensions)

    def __len__(self):
        return len(self.extensions)

    def __iter__(self):
        return iter(self.extensions)

    def __getitem__(self, i):
        return self.extensions[i]

    def to_json(self):
        return {
            "certified": self.certified,
            "degree": self.degree,
            "equality_certificate": self.equality_certificate,
            "extensions": [d.to_json() for d in self.extensions],
        }


def _prefix_embedding(K, L):
    """Map from polynomials in K's integral primitive element to elements of L."""
    def embed(h, splitting_K):
        if K.depth == 0:
            return L.top(h.coeffs[0] if h.coeffs else 0)
        return L.top(splitting_K.elem_of(h))

    return embed


def _restrict(sL, index, sK, embed):
    if sK.count == 1:
        return 0

    def value_fn(h):
        return sL.value(index, embed(h, sK))

    return sK.identify(value_fn)


def absolute_valuations(K, p):
    """All extensions of v_p to the tower K, as descriptors relative to Q."""
    s = local_splitting(K, p)
    if K.depth == 0:
        return [PadicValuation(p)]
    out = []
    for i, br in enumerate(s.branches):
        out.append(
            ExtensionDescriptor(
                K, FieldTower.rationals(), PadicValuation(p), s.minpoly, p, i, br.e, br.f, br.path
            )
        )
    return out


def _base_info(K, v):
    """(p, index of v in local_splitting(K, p), absolute e, absolute f)."""
    if isinstance(v, int):
        v = PadicValuation(v)
    if isinstance(v, PadicValuation):
        s = local_splitting(K, v.p)
        if s.count != 1:
            raise LabError("BAD_ARGUMENT", f"v_{v.p} has {s.count} extensions to the base; pick one")
        if K.depth == 0:
            return v.p, 0, 1, 1
        br = s.branches[0]
        return v.p, 0, br.e, br.f
    if not isinstance(v, ExtensionDescriptor):
        raise LabError("BAD_ARGUMENT", "unknown valuation handle")
    if v.tower != K:
        raise LabError("DOMAIN_MISMATCH", "valuation does not live on the base tower")
    v._check()
    return v.p, v.index, v.absolute_e, v.absolute_f


def extensions_of(K, v, g, name=None):
    """Report of all extensions of v (on the tower K) to K[x]/(g)."""
    if g.is_zero() or g.degree() < 1:
        raise LabError("NOT_IRREDUCIBLE", "polynomial must have positive degree")
    g = g.change_field(K.top) if g.field != K.top else g
    if not is_irreducible_over(g, K):
        raise LabError("NOT_IRREDUCIBLE", f"{g.to_str('x')} is reducible over the base")
    g = g.monic()
    p, vi, ve, vf = _base_info(K, v)
    name = name or f"a{K.depth + 1}"
    L = K.extend(name, g, verify=False)
    sL = local_splitting(L, p)
    sK = local_splitting(K, p)
    embed = _prefix_embedding(K, L)
    out = []
    for i, br in enumerate(sL.branches):
        if _restrict(sL, i, sK, embed) != vi:
            continue
        e, r1 = divmod(br.e, ve)
        f, r2 = divmod(br.f, vf)
        if r1 or r2:
            raise AssertionError("absolute invariants not divisible by the base invariants")
        out.append(ExtensionDescriptor(L, K, v, g, p, i, e, f, br.path))
    report = ExtensionReport(tuple(out), g.degree())
    if not report.certified:
        raise LabError("REFINEMENT_LIMIT", f"sum e*f = {report.equality_certificate} != {g.degree()}")
    return report


def restricts_to(w, v):
    """Does the restriction of w to v's field equal v?"""
    w._check()
    if isinstance(v, int):
        v = PadicValuation(v)
    if isinstance(v, PadicValuation):
        return v.p == w.p
    v._check()
    if v.p != w.p:
        return False
    return w.restriction_index(v.tower) == v.index


def is_immediate(d):
    if isinstance(d, PadicValuation):
        return True
    d._check()
    return d.e == 1 and d.f == 1


def _tower_of(u):
    return FieldTower.rationals() if isinstance(u, PadicValuation) else u.tower


def _index_of(u):
    return 0 if isinstance(u, PadicValuation) else u.index


def common_extension_exists(u, w):
    """Is there a valuation on the compositum of the two fields restricting to u and to w?

    When one tower is a prefix of the other the compositum is the larger one.
    Otherwise the second field is embedded by adjoining a root of the first
    irreducible factor (in canonical order) of its primitive element's
    minimal polynomial over the first field.
    """
    u = PadicValuation(u) if isinstance(u, int) else u
    w = PadicValuation(w) if isinstance(w, int) else w
    if u.p != w.p:
        return False
    p = u.p
    K1, K2 = _tower_of(u), _tower_of(w)
    if K2.is_prefix_of(K1):
        K1, K2, u, w = K2, K1, w, u
    if K1.is_prefix_of(K2):
        if isinstance(w, PadicValuation):
            return True
        idx = w.restriction_index(K1) if K1.depth else 0
        return idx == _index_of(u)
    # general position: C = K1(c) with c a root of a factor of K2's primitive minpoly
    s2 = local_splitting(K2, p)
    _, M2 = primitive_element(K2)
    g = factor_over_field(M2, K1)[0][0]
    C = K1.extend("c", g, verify=False)
    sC = local_splitting(C, p)
    sK1 = local_splitting(K1, p)
    c = C.gen(C.depth - 1)
    emb1 = _prefix_embedding(K1, C)

    def emb2(h, _s):
        hs = _scale_var(h, s2.scale)
        acc = C.top.zero
        for a in reversed(hs.coeffs):
            acc = acc * c + C.top(a)
        return acc

    for i in range(sC.count):
        if _restrict(sC, i, sK1, emb1) == _index_of(u) and _restrict(sC, i, s2, emb2) == _index_of(w):
            return True
    return False


def henselization_membership(g, p, which=0):
    """Is the indexed extension of v_p to Q[x]/(g) immediate (root inside Q^h)?"""
    rep = extensions_of(FieldTower.rationals(), p, g)
    if not 0 <= which < len(rep):
        raise LabError("INDEX_OUT_OF_RANGE", f"index {which} outside 0..{len(rep) - 1}")
    return is_immediate(rep[which])


# ---------------------------------------------------------------------------
# weak approximation on towers


def _small_elements(s, height, budget):
    n = s.minpoly.degree()
    rng = range(-height, height + 1)
    seen = 0
    for coeffs in product(rng, repeat=n):
        if seen >= budget:
            return
        seen += 1
        yield Poly([Fraction(c) for c in coeffs], QQ)


def _idempotent_seed(vs, i):
    """z in L with w_i(z) > 0 and w_j(z) < 0 for j != i."""
    L = vs[0].tower
    wi = vs[i]
    s = local_splitting(L, wi.p)
    if s.count > 1:
        phi, lam, mu = s.separators()[wi.index]
        A = 1
        while True:
            B = (mu * A).a.__floor__() + 1
            if Value(B) < lam * A:
                break
            A += 1
        y = L.top(s.elem_of(phi)) ** A / L.top(Fraction(wi.p) ** B)
    else:
        y = L.top(Fraction(wi.p))
    for q in sorted({w.p for w in vs if w.p != wi.p}):
        vals = [w.value(y) for w in vs if w.p == q]
        top = max(vals)
        C = int(top.a.__floor__()) + 1
        y = y / L.top(Fraction(q) ** C)
    return y


def weak_approximation_tower(vs, targets, max_height=None):
    L = vs[0].tower
    for w in vs:
        if not isinstance(w, ExtensionDescriptor):
            raise LabError("DOMAIN_MISMATCH", "mixed valuation handles")
        if w.tower != L:
            raise LabError("DOMAIN_MISMATCH", "valuations live on different towers")
        w._check()
    keys = [(w.p, w.index) for w in vs]
    if len(set(keys)) != len(keys):
        raise LabError("DUPLICATE_VALUATIONS", "two handles denote the same valuation")
    targets = [L.top(t) for t in targets]

    def ok(a):
        return all(w.value(a) >= 0 and w.value(a - t) > 0 for w, t in zip(vs, targets))

    s = local_splitting(L, vs[0].p)
    height = 2 if max_height is None else max_height
    for h in _small_elements(s, height, 729):
        a = L.top(s.elem_of(h))
        if ok(a):
            return a
    a = L.top.zero
    for i, t in enumerate(targets):
        z = _idempotent_seed(vs, i)
        a = a + t / (L.top.one + z)
    if not ok(a):
        raise AssertionError("constructed approximation fails its postcondition")
    return a
