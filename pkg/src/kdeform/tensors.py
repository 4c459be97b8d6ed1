"""Multi-legged tensors over U(iso(g)), antisymmetric wedges, and the
Schouten-bracket machinery for the r-matrix family r_tau = tau _| Omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactla
from .algebra import AlgebraElement, Metric, PoincareAlgebra, VectorTau, _acc_code
from .errors import ContextMismatchError, InvalidVectorError, NonInvertibleError
from .scalars import (
    GR_I,
    GR_MINUS_I,
    GR_ONE,
    GR_ZERO,
    GaussRational,
    HSeries,
    convolve_nz,
)

_F0 = Fraction(0)


class TensorElement:
    """A k-legged tensor: {(monomial, ..., monomial): HSeries}, each leg a PBW
    monomial.  The product acts leg-wise: (a (x) b)(c (x) d) = ac (x) bd."""

    __slots__ = ("algebra", "legs", "terms")

    def __init__(self, algebra: PoincareAlgebra, legs: int, terms: dict):
        self.algebra = algebra
        self.legs = legs
        self.terms = terms

    # -- constructors --------------------------------------------------------

    @classmethod
    def unit(cls, algebra: PoincareAlgebra, legs: int) -> "TensorElement":
        return cls(algebra, legs, {((),) * legs: HSeries.one(algebra.order)})

    @classmethod
    def of(cls, *factors: AlgebraElement) -> "TensorElement":
        """The tensor product a1 (x) a2 (x) ... of algebra elements."""
        alg = factors[0].algebra
        terms = {(): HSeries.one(alg.order)}
        for f in factors:
            if not alg.compatible(f.algebra):
                raise ContextMismatchError("tensor factors from incompatible contexts")
            nxt = {}
            for key, hs in terms.items():
                for m, hs2 in f.terms.items():
                    p = hs * hs2
                    if p:
                        _acc_hs(nxt, key + (m,), p)
            terms = nxt
        return cls(alg, len(factors), {k: v for k, v in terms.items() if v})

    # -- basic structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "TensorElement"):
        if not self.algebra.compatible(other.algebra):
            raise ContextMismatchError("tensors from incompatible contexts")
        if self.legs != other.legs:
            raise ContextMismatchError(
                f"leg-count mismatch: {self.legs} vs {other.legs}"
            )

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (
                self.algebra.compatible(other.algebra)
                and self.legs == other.legs
                and self.terms == other.terms
            )
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, hs in other.terms.items():
            cur = out.get(k)
            s = hs if cur is None else cur + hs
            if s:
                out[k] = s
            elif cur is not None:
                del out[k]
        return TensorElement(self.algebra, self.legs, out)

    def __neg__(self):
        return TensorElement(self.algebra, self.legs, {k: -hs for k, hs in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            alg = self.algebra
            acc = _tensor_mul_rows(self, other)
            return TensorElement(alg, self.legs, _finalize_rows(alg.order, acc))
        if isinstance(other, (int, Fraction, GaussRational, HSeries)):
            out = {}
            for k, hs in self.terms.items():
                p = hs * other
                if p:
                    out[k] = p
            return TensorElement(self.algebra, self.legs, out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational, HSeries)):
            return self.__mul__(other)
        return NotImplemented

    # -- leg surgery ------------------------------------------------------------

    def transpose(self, perm) -> "TensorElement":
        """Permute legs: new leg i carries what old leg perm[i] carried."""
        return TensorElement(
            self.algebra,
            self.legs,
            {tuple(k[p] for p in perm): hs for k, hs in self.terms.items()},
        )

    def flip(self) -> "TensorElement":
        if self.legs != 2:
            raise ContextMismatchError("flip is defined for 2-legged tensors")
        return self.transpose((1, 0))

    def embed(self, placement: str, total: int = 3) -> "TensorElement":
        """Insert a unit leg: a 2-tensor placed at legs '12', '13' or '23' of 3."""
        if self.legs != 2 or total != 3:
            raise ContextMismatchError("embed supports 2-legged tensors into 3 legs")
        slots = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}.get(placement)
        if slots is None:
            raise ValueError(f"invalid placement {placement!r}; expected 12, 13 or 23")
        out = {}
        for (m1, m2), hs in self.terms.items():
            key = [(), (), ()]
            key[slots[0]] = m1
            key[slots[1]] = m2
            out[tuple(key)] = hs
        return TensorElement(self.algebra, 3, out)

    def map_leg(self, i: int, fn) -> "TensorElement":
        """Replace leg i by its image under fn: monomial -> AlgebraElement or
        TensorElement; other legs are carried along, coefficients multiply."""
        alg = self.algebra
        N = alg.order
        acc = {}
        out_legs = None
        for key, hs in self.terms.items():
            v1 = hs.valuation
            if v1 > N:
                continue
            nz1 = hs.nz
            img = fn(key[i])
            is_tensor = isinstance(img, TensorElement)
            if out_legs is None:
                out_legs = self.legs - 1 + (img.legs if is_tensor else 1)
            head, tail = key[:i], key[i + 1 :]
            for ikey, ihs in img.terms.items():
                if v1 + ihs.valuation > N:
                    continue
                pairs = convolve_nz(nz1, ihs.nz, N)
                if not pairs:
                    continue
                mid = ikey if is_tensor else (ikey,)
                fkey = head + mid + tail
                row = acc.get(fkey)
                if row is None:
                    row = acc[fkey] = [GR_ZERO] * (N + 1)
                for k, c in pairs:
                    row[k] = row[k] + c
        if out_legs is None:
            out_legs = self.legs  # zero tensor: leg count is moot
        return TensorElement(alg, out_legs, _finalize_rows(N, acc))

    def contract_counit(self, i: int):
        """Apply the counit to leg i (keep only unit monomials there)."""
        acc = {}
        for key, hs in self.terms.items():
            if key[i]:
                continue
            _acc_hs(acc, key[:i] + key[i + 1 :], hs)
        terms = {k: v for k, v in acc.items() if v}
        if self.legs == 2:
            return AlgebraElement(self.algebra, {k[0]: v for k, v in terms.items()})
        return TensorElement(self.algebra, self.legs - 1, terms)

    def merge_legs(self) -> AlgebraElement:
        """Multiply all legs together left-to-right in U(iso(g))."""
        alg = self.algebra
        N = alg.order
        acc = {}
        for key, hs in self.terms.items():
            if hs.valuation > N:
                continue
            word = {key[0]: GR_ONE}
            for mono in key[1:]:
                nxt = {}
                for m, c in word.items():
                    for m2, c2 in alg.mono_product(m, mono).items():
                        _acc_code(nxt, m2, c * c2)
                word = nxt
            nz = hs.nz
            for m, c in word.items():
                if not c:
                    continue
                row = acc.get(m)
                if row is None:
                    row = acc[m] = [GR_ZERO] * (N + 1)
                if c is GR_ONE:
                    for k, hc in nz:
                        row[k] = row[k] + hc
                else:
                    for k, hc in nz:
                        row[k] = row[k] + hc * c
        return AlgebraElement(alg, _finalize_rows(N, acc))

    # -- coefficient-level views ---------------------------------------------------

    def h_coefficient(self, k: int) -> dict:
        return {key: hs.coeffs[k] for key, hs in self.terms.items() if hs.coeffs[k]}

    def star_legs(self) -> "TensorElement":
        """(a (x) b)* = a* (x) b*: star each leg, no flip."""
        alg = self.algebra
        acc = {}
        for key, hs in self.terms.items():
            combos = [((), hs.conjugate())]
            for mono in key:
                starred = alg.normal_order(tuple(reversed(mono)))
                combos = [
                    (ms + (m,), c * cm)
                    for ms, c in combos
                    for m, cm in starred.items()
                ]
            for k2, c in combos:
                _acc_hs(acc, k2, c)
        return TensorElement(alg, self.legs, {k: v for k, v in acc.items() if v})

    def rescale_h(self, s) -> "TensorElement":
        return TensorElement(
            self.algebra, self.legs, {k: hs.rescale_h(s) for k, hs in self.terms.items()}
        )

    def project_to(self, algebra: PoincareAlgebra) -> "TensorElement":
        out = {}
        for k, hs in self.terms.items():
            t = hs.truncate(algebra.order)
            if t:
                out[k] = t
        return TensorElement(algebra, self.legs, out)

    def __repr__(self):
        from .render import tensor_text

        return tensor_text(self)


def _acc_hs(acc: dict, key, hs):
    cur = acc.get(key)
    acc[key] = hs if cur is None else cur + hs


def _tensor_mul_rows(a: TensorElement, b: TensorElement, acc=None, sign=1) -> dict:
    """Leg-wise product accumulated into mutable coefficient rows
    (key -> list of N+1 GaussRational); fuse several products via acc."""
    alg = a.algebra
    N = alg.order
    if acc is None:
        acc = {}
    legs = a.legs
    mono_product = alg.mono_product
    items_b = [(k, h.valuation, h.nz) for k, h in b.terms.items() if h.valuation <= N]
    negate = sign < 0
    two = legs == 2
    for k1, h1 in a.terms.items():
        v1 = h1.valuation
        if v1 > N:
            continue
        nz1 = h1.nz
        for k2, v2, nz2 in items_b:
            if v1 + v2 > N:
                continue
            pairs = convolve_nz(nz1, nz2, N, negate)
            if not pairs:
                continue
            if two:
                pa = mono_product(k1[0], k2[0])
                pb = mono_product(k1[1], k2[1])
                for ma, ca in pa.items():
                    for mb, cb in pb.items():
                        key = (ma, mb)
                        row = acc.get(key)
                        if row is None:
                            row = acc[key] = [GR_ZERO] * (N + 1)
                        if ca is GR_ONE and cb is GR_ONE:
                            for k, c in pairs:
                                row[k] = row[k] + c
                        else:
                            cc = ca * cb
                            if cc:
                                for k, c in pairs:
                                    row[k] = row[k] + c * cc
            else:
                combos = [((), GR_ONE)]
                for leg in range(legs):
                    prods = mono_product(k1[leg], k2[leg])
                    combos = [
                        (ms + (m,), c * cm)
                        for ms, c in combos
                        for m, cm in prods.items()
                    ]
                for key, cc in combos:
                    if not cc:
                        continue
                    row = acc.get(key)
                    if row is None:
                        row = acc[key] = [GR_ZERO] * (N + 1)
                    if cc is GR_ONE:
                        for k, c in pairs:
                            row[k] = row[k] + c
                    else:
                        for k, c in pairs:
                            row[k] = row[k] + c * cc
    return acc


def _finalize_rows(order: int, acc: dict) -> dict:
    out = {}
    for key, row in acc.items():
        if any(row):
            out[key] = HSeries(order, row)
    return out


def tensor_commutator(a: TensorElement, b: TensorElement) -> TensorElement:
    """a*b - b*a with a single fused accumulation pass."""
    a._check(b)
    acc = _tensor_mul_rows(a, b)
    _tensor_mul_rows(b, a, acc=acc, sign=-1)
    return TensorElement(a.algebra, a.legs, _finalize_rows(a.algebra.order, acc))


def tensor_invert(t: TensorElement) -> TensorElement:
    """(1 + X)^-1 for a tensor with unit leading term and X of positive h-valuation."""
    alg = t.algebra
    unit = TensorElement.unit(alg, t.legs)
    x = t - unit
    if any(hs.valuation == 0 for hs in x.terms.values()):
        raise NonInvertibleError("tensor inversion requires 1 + O(h)")
    out = unit
    term = unit
    for _ in range(alg.order):
        term = term * (-x)
        if term.is_zero:
            break
        out = out + term
    return out


def tensor_exp(t: TensorElement) -> TensorElement:
    """exp of a tensor of positive h-valuation; terminates at the truncation order."""
    if any(hs.valuation == 0 for hs in t.terms.values()):
        raise NonInvertibleError("tensor exponential requires an O(h) argument")
    alg = t.algebra
    out = TensorElement.unit(alg, t.legs)
    term = out
    fact = 1
    for k in range(1, alg.order + 1):
        term = term * t
        if term.is_zero:
            break
        fact *= k
        out = out + term * Fraction(1, fact)
    return out


# -- wedges ---------------------------------------------------------------------


class WedgeElement:
    """A fully antisymmetric degree-2 or -3 tensor over the Lie algebra, stored
    on strictly increasing code tuples with Gaussian-rational coefficients.
    Wedge coefficients carry no h-dependence: r-matrices and Omega are
    classical objects."""

    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra: PoincareAlgebra, degree: int, terms=None):
        if degree not in (2, 3):
            raise ValueError("wedge degree must be 2 or 3")
        self.algebra = algebra
        self.degree = degree
        self.terms = dict(terms) if terms else {}

    def add(self, gens: tuple, coeff: GaussRational):
        """Accumulate coeff * (g1 ^ g2 [^ g3]), canonicalizing with sign."""
        if not coeff:
            return
        sign, key = _sort_parity(gens)
        if sign == 0:
            return
        cur = self.terms.get(key)
        s = coeff * sign if cur is None else cur + coeff * sign
        if s:
            self.terms[key] = s
        elif cur is not None:
            del self.terms[key]

    def coefficient(self, gens: tuple) -> GaussRational:
        """Signed coefficient of an arbitrary (possibly unsorted) key."""
        sign, key = _sort_parity(gens)
        if sign == 0:
            return GaussRational(0)
        c = self.terms.get(key)
        return GaussRational(0) if c is None else c * sign

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, WedgeElement):
            return (
                self.algebra.compatible(other.algebra)
                and self.degree == other.degree
                and self.terms == other.terms
            )
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, WedgeElement) or other.degree != self.degree:
            return NotImplemented
        out = WedgeElement(self.algebra, self.degree, self.terms)
        for k, c in other.terms.items():
            out.add(k, c)
        return out

    def __neg__(self):
        return self * GaussRational(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction, GaussRational)):
            if not scalar:
                return WedgeElement(self.algebra, self.degree)
            return WedgeElement(
                self.algebra, self.degree, {k: c * scalar for k, c in self.terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def to_tensor(self) -> TensorElement:
        """Tensor realization of a degree-2 wedge: x ^ y -> -i (x (x) y - y (x) x).

        The -i normalization is the one under which the classical-limit formula
        h-part of (coproduct - opposite) = [primitive coproduct, r] holds with
        the i-laden structure constants used here; it is pinned by the
        acceptance tests.
        """
        if self.degree != 2:
            raise ValueError("tensor realization implemented for degree 2")
        alg = self.algebra
        one = HSeries.one(alg.order)
        acc = {}
        for (x, y), c in self.terms.items():
            _acc_hs(acc, ((x,), (y,)), one * (c * GR_MINUS_I))
            _acc_hs(acc, ((y,), (x,)), one * (c * GR_I))
        return TensorElement(alg, 2, {k: v for k, v in acc.items() if v})

    def __repr__(self):
        from .render import wedge_text

        return wedge_text(self)


def _sort_parity(gens: tuple):
    """Sort a code tuple, tracking permutation parity; sign 0 on repeats."""
    lst = list(gens)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(lst)):
        if lst[i - 1] == lst[i]:
            return 0, ()
    return sign, tuple(lst)


def r_matrix(algebra: PoincareAlgebra, tau: VectorTau) -> WedgeElement:
    """r_tau = tau^alpha M_{alpha mu} ^ P^mu, indices raised with the exact inverse metric."""
    if tau.is_zero:
        raise InvalidVectorError("the r-matrix requires a nonzero deforming vector")
    d = algebra.dim
    ginv = algebra.metric.inverse
    w = WedgeElement(algebra, 2)
    for alpha, t in enumerate(tau.components):
        if not t:
            continue
        for mu in range(d):
            code, sign = algebra.rotation_code(alpha, mu)
            if not sign:
                continue
            for nu in range(d):
                f = ginv[mu][nu]
                if f:
                    w.add((code, algebra.momentum_code(nu)), GaussRational(t * f * sign))
    return w


def omega(algebra: PoincareAlgebra) -> WedgeElement:
    """Omega = M_{mu nu} ^ P^mu ^ P^nu, the invariant 3-wedge."""
    d = algebra.dim
    ginv = algebra.metric.inverse
    w = WedgeElement(algebra, 3)
    for mu in range(d):
        for nu in range(d):
            if mu == nu:
                continue
            code, sign = algebra.rotation_code(mu, nu)
            for al in range(d):
                f1 = ginv[mu][al]
                if not f1:
                    continue
                for be in range(d):
                    f2 = ginv[nu][be]
                    if f2:
                        w.add(
                            (code, algebra.momentum_code(al), algebra.momentum_code(be)),
                            GaussRational(f1 * f2 * sign),
                        )
    return w


def schouten_square(r: WedgeElement) -> WedgeElement:
    """[[r, r]] for a degree-2 wedge over the Lie algebra, as a degree-3 wedge.

    Expands [r12, r13] + [r12, r23] + [r13, r23] on the tensor realization of r
    and antisymmetrizes back onto wedge coordinates.  The overall normalization
    is anchored so that the time-like r over the Lorentzian metric squares to
    exactly +Omega, matching -g(tau, tau) * Omega across the family.
    """
    if r.degree != 2:
        raise ValueError("the Schouten square takes a degree-2 wedge")
    alg = r.algebra
    # tensor terms (a, b, coeff) of the realization -i * (x (x) y - y (x) x)
    terms = []
    for (x, y), c in r.terms.items():
        terms.append((x, y, c * GR_MINUS_I))
        terms.append((y, x, c * GR_I))
    t3 = {}
    for a1, b1, c1 in terms:
        for a2, b2, c2 in terms:
            c12 = c1 * c2
            for g, cb in alg.bracket_codes(a1, a2).items():
                _acc_code(t3, (g, b1, b2), c12 * cb)
            for g, cb in alg.bracket_codes(b1, a2).items():
                _acc_code(t3, (a1, g, b2), c12 * cb)
            for g, cb in alg.bracket_codes(b1, b2).items():
                _acc_code(t3, (a1, a2, g), c12 * cb)
    sixth = Fraction(1, 6)
    acc = {}
    for key, c in t3.items():
        if not c:
            continue
        sign, skey = _sort_parity(key)
        if sign:
            _acc_code(acc, skey, c * (sign * sixth))
    out = WedgeElement(alg, 3)
    two_i = GaussRational(0, 2)
    for key, c in acc.items():
        out.add(key, c * two_i)
    return out


# -- orbit classification ----------------------------------------------------------


@dataclass(frozen=True)
class OrbitClassification:
    """tau^2 sign, Yang-Baxter type, and the stability-group label of the orbit."""

    tau_sq: Fraction
    yb_type: str  # "MYBE" | "CYBE"
    stability_kind: str  # "SO" | "ISO"
    stability_pq: tuple

    @property
    def tau_sq_sign(self) -> int:
        return (self.tau_sq > 0) - (self.tau_sq < 0)

    @property
    def stability_label(self) -> str:
        p, q = self.stability_pq
        inner = f"{p}" if q == 0 else (f"{q}" if p == 0 else f"{p},{q}")
        return f"{self.stability_kind}({inner})"

    @property
    def suggested_basis(self) -> str:
        return "lightcone" if self.yb_type == "CYBE" else "orthogonal"


def tau_orthogonal_complement(metric: Metric, tau: VectorTau):
    """A rational basis of the g-orthogonal complement of a non-null tau."""
    d = metric.dim
    t2 = tau.tau_sq
    cands = []
    for k in range(d):
        e = [_F0] * d
        e[k] = Fraction(1)
        lam = metric.apply(tau.components, tuple(e)) / t2
        v = tuple(e[i] - lam * tau.components[i] for i in range(d))
        if any(v):
            cands.append(v)
    return exactla.select_independent(cands, d - 1)


def hyperbolic_pair_complement(metric: Metric, tau: VectorTau):
    """(tau_tilde, transverse basis) for a null tau: g(tau, tt) = 1, g(tt, tt) = 0,
    transverse vectors g-orthogonal to both."""
    d = metric.dim
    row = tuple(metric.apply(tau.components, _unit(d, j)) for j in range(d))
    w = exactla.solve_single(row, 1)
    lam = metric.apply(w, w) / 2
    tt = tuple(w[i] - lam * tau.components[i] for i in range(d))
    cands = []
    for k in range(d):
        e = _unit(d, k)
        a = metric.apply(e, tt)  # component along tau
        b = metric.apply(e, tau.components)  # component along tau_tilde
        v = tuple(e[i] - a * tau.components[i] - b * tt[i] for i in range(d))
        if any(v):
            cands.append(v)
    trans = exactla.select_independent(cands, d - 2) if d > 2 else []
    return tt, trans


def _unit(d, k):
    e = [_F0] * d
    e[k] = Fraction(1)
    return tuple(e)


def classify_orbit(metric: Metric, tau: VectorTau) -> OrbitClassification:
    """Orbit data for (g, tau): YB type from tau^2 and the stability group of tau.

    For tau^2 != 0 the stability group is SO of g restricted to the orthogonal
    complement of tau; for tau^2 = 0 it is ISO of the transverse block after
    splitting off the hyperbolic plane spanned by tau and its null partner.
    """
    if tau.is_zero:
        raise InvalidVectorError("cannot classify the orbit of the zero vector")
    t2 = tau.tau_sq
    if t2:
        basis = tau_orthogonal_complement(metric, tau)
        gram = _gram(metric, basis)
        pq = exactla.signature(gram)
        return OrbitClassification(t2, "MYBE", "SO", pq)
    p, q = metric.signature
    if p == 0 or q == 0:
        raise InvalidVectorError(
            "a nonzero null vector cannot exist for a definite metric; inconsistent input"
        )
    tt, trans = hyperbolic_pair_complement(metric, tau)
    if trans:
        gram = _gram(metric, trans)
        pq = exactla.signature(gram)
    else:
        pq = (0, 0)
    return OrbitClassification(t2, "CYBE", "ISO", pq)


def _gram(metric: Metric, basis):
    return tuple(tuple(metric.apply(u, v) for v in basis) for u in basis)
