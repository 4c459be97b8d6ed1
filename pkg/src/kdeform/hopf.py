"""The deformed Hopf structure on U(iso(g))[[h]] in the classical basis.

For a pair (metric g, vector tau) the deformation is carried entirely by the
coproducts and antipodes; the commutation relations stay classical.  The
building blocks are

    Pi_tau = h P_tau + sqrt(1 + h^2 tau^2 C)          (group-like)
    C_tau  = 2 sum_{n>=1} binom(1/2, n) (tau^2)^{n-1} h^{2n-2} C^n

with C the quadratic Casimir.  C_tau is defined by the explicit series with
(tau^2)^{n-1} so the null case tau^2 = 0 is exact and uniform (C_tau = C).

The generator coproducts are

    D(P_mu) = P_mu (x) Pi + 1 (x) P_mu
              - h tau_mu (P^a Pi^-1) (x) P_a
              - h^2/2 tau_mu (C_tau Pi^-1) (x) P_tau
    D(M_mn) = M_mn (x) 1 + 1 (x) M_mn
              + h (P^a Pi^-1) (x) (tau_n M_{a mu} - tau_mu M_{a nu})
              - h^2/2 (C_tau Pi^-1) (x) (tau_mu M_{tau nu} - tau_nu M_{tau mu})

and the antipodes

    S(P_mu) = -(P_mu + h tau_mu (C + h/2 P_tau C_tau)) Pi^-1
    S(M_mn) = -M_mn + h P^a (tau_n M_{a mu} - tau_mu M_{a nu})
              + h^2/2 C_tau (tau_n M_{tau mu} - tau_mu M_{tau nu})

all with summation over the raised index a.  tau = 0 is accepted and yields
the undeformed Hopf algebra.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    Metric,
    PoincareAlgebra,
    VectorTau,
    series_invert,
)
from .errors import InternalConsistencyError
from .reports import VerificationReport
from .scalars import GaussRational, HSeries, binom_half
from .tensors import TensorElement, classify_orbit, r_matrix, tensor_commutator
from .render import gen_text

_HALF = Fraction(1, 2)


class DeformationContext:
    """Everything derived from (g, tau, N): the algebra, the deformation series
    Pi_tau / Pi_tau^-1 / C_tau, coproduct and antipode tables, and the orbit
    classification.  Immutable after construction; caches are fill-once."""

    def __init__(self, metric: Metric, tau, order: int, algebra: PoincareAlgebra | None = None):
        if algebra is not None and (algebra.metric != metric or algebra.order != order):
            raise ValueError("supplied algebra does not match the metric/order")
        self.algebra = algebra if algebra is not None else PoincareAlgebra(metric, order)
        self.metric = metric
        self.order = order
        self.tau = tau if isinstance(tau, VectorTau) else VectorTau(metric, tau)
        alg = self.algebra

        self.p_tau, self.m_tau = alg.contract_tau(self.tau)
        self.casimir = alg.casimir()
        self.orbit = None if self.tau.is_zero else classify_orbit(metric, self.tau)

        self._p_raised = [alg.momentum_raised(a) for a in range(alg.dim)]
        self.pi = self._build_pi()
        self.pi_inv = self._build_pi_inv()
        self.c_tau = self._build_c_tau()

        self._coproducts = {}
        self._antipodes = {}
        self._mono_coproduct = {(): TensorElement.unit(alg, 2)}
        self._mono_primitive = {(): TensorElement.unit(alg, 2)}
        self._mono_antipode = {(): alg.one()}
        # shared tails of the coproduct formulas, independent of the free index
        self._pap = None
        self._cp = None

    # -- deformation series -------------------------------------------------

    def _sqrt_term(self) -> AlgebraElement:
        """sqrt(1 + h^2 tau^2 C) via the binomial series, truncated."""
        alg = self.algebra
        t2 = self.tau.tau_sq
        out = alg.one()
        if not t2:
            return out
        cpow = alg.one()
        for n in range(1, alg.order // 2 + 1):
            cpow = cpow * self.casimir
            coeff = HSeries.h_power(alg.order, 2 * n, GaussRational(binom_half(n) * t2**n))
            out = out + cpow * coeff
        return out

    def _build_pi(self) -> AlgebraElement:
        alg = self.algebra
        return self.p_tau * alg.h() + self._sqrt_term()

    def _build_pi_inv(self) -> AlgebraElement:
        """Pi^-1 two ways: plain series inversion, and the closed form
        (sqrt - h P_tau) / (1 + h^2 (tau^2 C - P_tau^2)) expanded geometrically.
        Disagreement is a defect, not bad input."""
        alg = self.algebra
        route_a = series_invert(self.pi)
        t2 = self.tau.tau_sq
        denom = alg.one() + (self.casimir * t2 - self.p_tau * self.p_tau) * alg.h(2)
        route_b = (self._sqrt_term() - self.p_tau * alg.h()) * series_invert(denom)
        if route_a != route_b:
            raise InternalConsistencyError(
                "series inverse and closed form of Pi_tau^-1 disagree"
            )
        return route_a

    def _build_c_tau(self) -> AlgebraElement:
        alg = self.algebra
        t2 = self.tau.tau_sq
        out = alg.zero()
        cpow = alg.one()
        for n in range(1, alg.order // 2 + 2):
            cpow = cpow * self.casimir
            c = 2 * binom_half(n) * t2 ** (n - 1)
            out = out + cpow * HSeries.h_power(alg.order, 2 * n - 2, GaussRational(c))
        return out

    def lift(self, extra: int = 2) -> "DeformationContext":
        """The same deformation at a higher truncation order (used wherever an
        exact division by h is needed)."""
        return DeformationContext(self.metric, self.tau, self.order + extra)

    # -- structure maps on generators ------------------------------------------

    def _shared_tails(self):
        if self._pap is None:
            alg = self.algebra
            pap = TensorElement(alg, 2, {})
            for a in range(alg.dim):
                pap = pap + TensorElement.of(self._p_raised[a] * self.pi_inv, alg.P(a))
            self._pap = pap
            self._cp = TensorElement.of(self.c_tau * self.pi_inv, self.p_tau)
        return self._pap, self._cp

    def coproduct(self, code: int) -> TensorElement:
        """The deformed coproduct of a basis generator."""
        t = self._coproducts.get(code)
        if t is None:
            t = self._coproduct_uncached(code)
            self._coproducts[code] = t
        return t

    def _coproduct_uncached(self, code: int) -> TensorElement:
        alg = self.algebra
        h1 = alg.h(1)
        h2_half = HSeries.h_power(alg.order, 2, GaussRational(_HALF))
        kind, idx = alg.decode(code)
        gen = AlgebraElement(alg, {(code,): HSeries.one(alg.order)})
        out = TensorElement.of(gen, self.pi if kind == "P" else alg.one())
        out = out + TensorElement.of(alg.one(), gen)
        cov = self.tau.covariant
        if kind == "P":
            mu = idx
            if cov[mu]:
                pap, cp = self._shared_tails()
                out = out - pap * (h1 * GaussRational(cov[mu]))
                out = out - cp * (h2_half * GaussRational(cov[mu]))
        else:
            mu, nu = idx
            if cov[mu] or cov[nu]:
                pap, cp = self._shared_tails()
                second = TensorElement(alg, 2, {})
                for a in range(alg.dim):
                    w = alg.M(a, mu) * GaussRational(cov[nu]) - alg.M(a, nu) * GaussRational(cov[mu])
                    if w:
                        second = second + self._leg2(self._p_raised[a] * self.pi_inv, w)
                out = out + second * h1
                w2 = self.m_tau[nu] * GaussRational(cov[mu]) - self.m_tau[mu] * GaussRational(cov[nu])
                if w2:
                    out = out - self._leg2(self.c_tau * self.pi_inv, w2) * h2_half
        return out

    def _leg2(self, left: AlgebraElement, right: AlgebraElement) -> TensorElement:
        return TensorElement.of(left, right)

    def antipode(self, code: int) -> AlgebraElement:
        a = self._antipodes.get(code)
        if a is None:
            a = self._antipode_uncached(code)
            self._antipodes[code] = a
        return a

    def _antipode_uncached(self, code: int) -> AlgebraElement:
        alg = self.algebra
        h1 = alg.h(1)
        h2_half = HSeries.h_power(alg.order, 2, GaussRational(_HALF))
        kind, idx = alg.decode(code)
        cov = self.tau.covariant
        gen = AlgebraElement(alg, {(code,): HSeries.one(alg.order)})
        if kind == "P":
            mu = idx
            inner = gen
            if cov[mu]:
                extra = self.casimir + self.p_tau * self.c_tau * (h1 * GaussRational(_HALF))
                inner = inner + extra * (h1 * GaussRational(cov[mu]))
            return -(inner * self.pi_inv)
        mu, nu = idx
        out = -gen
        for a in range(alg.dim):
            w = alg.M(a, mu) * GaussRational(cov[nu]) - alg.M(a, nu) * GaussRational(cov[mu])
            if w:
                out = out + self._p_raised[a] * w * h1
        w2 = self.m_tau[mu] * GaussRational(cov[nu]) - self.m_tau[nu] * GaussRational(cov[mu])
        if w2:
            out = out + self.c_tau * w2 * h2_half
        return out

    def counit(self, a: AlgebraElement) -> HSeries:
        return a.counit()

    # -- multiplicative extensions -----------------------------------------------

    def _extend_tensor(self, a: AlgebraElement, cache: dict, gen_map) -> TensorElement:
        alg = self.algebra
        out = TensorElement(alg, 2, {})
        for mono, hs in a.terms.items():
            out = out + self._mono_tensor(mono, cache, gen_map) * hs
        return out

    def _mono_tensor(self, mono: tuple, cache: dict, gen_map) -> TensorElement:
        t = cache.get(mono)
        if t is None:
            t = self._mono_tensor(mono[:-1], cache, gen_map) * gen_map(mono[-1])
            cache[mono] = t
        return t

    def coproduct_of(self, a: AlgebraElement) -> TensorElement:
        """Linear-multiplicative extension of the deformed coproduct."""
        return self._extend_tensor(a, self._mono_coproduct, self.coproduct)

    def primitive_of(self, a: AlgebraElement) -> TensorElement:
        """Extension of the undeformed coproduct D0(x) = x (x) 1 + 1 (x) x."""
        return self._extend_tensor(a, self._mono_primitive, self._primitive_gen)

    def _primitive_gen(self, code: int) -> TensorElement:
        alg = self.algebra
        gen = AlgebraElement(alg, {(code,): HSeries.one(alg.order)})
        return TensorElement.of(gen, alg.one()) + TensorElement.of(alg.one(), gen)

    def antipode_of(self, a: AlgebraElement) -> AlgebraElement:
        """Anti-multiplicative extension of the antipode."""
        alg = self.algebra
        out = alg.zero()
        for mono, hs in a.terms.items():
            out = out + self._mono_antipode_of(mono) * hs
        return out

    def _mono_antipode_of(self, mono: tuple) -> AlgebraElement:
        a = self._mono_antipode.get(mono)
        if a is None:
            a = self.antipode(mono[-1]) * self._mono_antipode_of(mono[:-1])
            self._mono_antipode[mono] = a
        return a

    def star(self, a: AlgebraElement) -> AlgebraElement:
        return a.star()

    # -- convenience -------------------------------------------------------------

    def generator_codes(self):
        return self.algebra.generator_codes()

    def gen_element(self, code: int) -> AlgebraElement:
        return AlgebraElement(self.algebra, {(code,): HSeries.one(self.algebra.order)})

    def gen_name(self, code: int) -> str:
        return gen_text(code, self.algebra.dim)

    def __repr__(self):
        return (
            f"DeformationContext(D={self.algebra.dim}, order={self.order}, "
            f"tau={[str(c) for c in self.tau.components]})"
        )


# -- internal-consistency identities ------------------------------------------------


def pi_identities_report(ctx: DeformationContext) -> VerificationReport:
    """The closed-form identities tying Pi, Pi^-1, C_tau and C together:
    Pi Pi^-1 = 1, the C = C_tau(1 + tau^2 C_tau / 4k^2) inversion, the
    decomposition identity 1 - tau^2/2 h^2 C_tau Pi^-1 - h P_tau Pi^-1 = Pi^-1,
    and the h^2-scaled form of the defining relation for tau^2 C_tau."""
    rep = VerificationReport("pi-identities")
    alg = ctx.algebra
    one = alg.one()
    t2 = ctx.tau.tau_sq
    rep.record("pi-times-pi-inverse-is-one", ctx.pi * ctx.pi_inv - one)
    quarter = HSeries.h_power(alg.order, 2, GaussRational(Fraction(t2, 4)))
    rep.record(
        "casimir-recovered-from-deformed-casimir",
        ctx.c_tau * (one + ctx.c_tau * quarter) - ctx.casimir,
    )
    half_t2 = HSeries.h_power(alg.order, 2, GaussRational(Fraction(t2, 2)))
    rep.record(
        "pi-inverse-decomposition-identity",
        one - ctx.c_tau * ctx.pi_inv * half_t2 - ctx.p_tau * ctx.pi_inv * alg.h()
        - ctx.pi_inv,
    )
    lhs = ctx.c_tau * HSeries.h_power(alg.order, 2, GaussRational(t2))
    rhs = (
        ctx.pi
        + ctx.pi_inv
        - alg.scalar(2)
        + (ctx.casimir * t2 - ctx.p_tau * ctx.p_tau) * ctx.pi_inv * alg.h(2)
    )
    rep.record("deformed-casimir-defining-relation-h2-scaled", lhs - rhs)
    rep.record("antipode-of-pi-is-pi-inverse", ctx.antipode_of(ctx.pi) - ctx.pi_inv)
    rep.record("counit-of-pi-is-one", ctx.pi.counit() - HSeries.one(alg.order))
    return rep


# -- the Hopf verification suite ------------------------------------------------------


HOPF_CHECKS = (
    "coproduct-respects-commutators",
    "coassociativity",
    "counit-axioms",
    "antipode-axiom",
    "antipode-antihomomorphism",
    "antipode-squared-similarity",
    "group-likeness",
    "classical-limit-cobracket",
    "star-compatibility",
    "rescaling-invariance",
)


def verify_hopf(ctx: DeformationContext, checks=None) -> VerificationReport:
    """Run the Hopf-axiom suite; every identity is exact modulo h^(N+1).

    checks: optional iterable of 1-based check numbers or names to run.
    """
    t0 = time.monotonic()
    rep = VerificationReport("hopf")
    selected = _select(checks)
    alg = ctx.algebra
    codes = ctx.generator_codes()

    if "coproduct-respects-commutators" in selected:
        for i, x in enumerate(codes):
            for y in codes[i + 1 :]:
                xe, ye = ctx.gen_element(x), ctx.gen_element(y)
                lhs = ctx.coproduct_of(alg.bracket(xe, ye))
                rhs = tensor_commutator(ctx.coproduct(x), ctx.coproduct(y))
                rep.record(
                    "coproduct-respects-commutators",
                    lhs - rhs,
                    generator=f"[{ctx.gen_name(x)},{ctx.gen_name(y)}]",
                )

    if "coassociativity" in selected:
        for x in codes:
            d = ctx.coproduct(x)
            left = d.map_leg(0, lambda m: mono_coproduct(ctx, m))
            right = d.map_leg(1, lambda m: mono_coproduct(ctx, m))
            rep.record("coassociativity", left - right, generator=ctx.gen_name(x))

    if "counit-axioms" in selected:
        for x in codes:
            d = ctx.coproduct(x)
            xe = ctx.gen_element(x)
            rep.record(
                "counit-axioms",
                d.contract_counit(0) - xe,
                generator=f"(eps (x) id) {ctx.gen_name(x)}",
            )
            rep.record(
                "counit-axioms",
                d.contract_counit(1) - xe,
                generator=f"(id (x) eps) {ctx.gen_name(x)}",
            )

    if "antipode-axiom" in selected:
        for x in codes:
            d = ctx.coproduct(x)
            # both sides must equal eps(x) 1 = 0 for a generator
            rep.record(
                "antipode-axiom",
                d.map_leg(0, lambda m: ctx._mono_antipode_of(m)).merge_legs(),
                generator=f"m(S (x) id)Delta {ctx.gen_name(x)}",
            )
            rep.record(
                "antipode-axiom",
                d.map_leg(1, lambda m: ctx._mono_antipode_of(m)).merge_legs(),
                generator=f"m(id (x) S)Delta {ctx.gen_name(x)}",
            )

    if "antipode-antihomomorphism" in selected:
        for i, x in enumerate(codes):
            for y in codes[i + 1 :]:
                xe, ye = ctx.gen_element(x), ctx.gen_element(y)
                lhs = ctx.antipode_of(alg.bracket(xe, ye))
                sx, sy = ctx.antipode(x), ctx.antipode(y)
                rep.record(
                    "antipode-antihomomorphism",
                    lhs - (sy * sx - sx * sy),
                    generator=f"[{ctx.gen_name(x)},{ctx.gen_name(y)}]",
                )

    if "antipode-squared-similarity" in selected:
        d = alg.dim
        pi_pow = ctx.pi ** (d - 1)
        pi_inv_pow = ctx.pi_inv ** (d - 1)
        for x in codes:
            xe = ctx.gen_element(x)
            lhs = ctx.antipode_of(ctx.antipode(x))
            rep.record(
                "antipode-squared-similarity",
                lhs - pi_pow * xe * pi_inv_pow,
                generator=ctx.gen_name(x),
            )

    if "group-likeness" in selected:
        rep.record(
            "group-likeness",
            ctx.coproduct_of(ctx.pi) - TensorElement.of(ctx.pi, ctx.pi),
            generator="Pi",
        )
        rep.record(
            "group-likeness",
            ctx.coproduct_of(ctx.pi_inv) - TensorElement.of(ctx.pi_inv, ctx.pi_inv),
            generator="Pi^-1",
        )

    if "classical-limit-cobracket" in selected:
        if ctx.tau.is_zero:
            rep.record_bool(
                "classical-limit-cobracket", True, note="tau = 0: no r-matrix, nothing to check"
            )
        else:
            r_t = r_matrix(alg, ctx.tau).to_tensor()
            for x in codes:
                d = ctx.coproduct(x)
                lhs = (d - d.flip()).h_coefficient(1)
                d0 = ctx.primitive_of(ctx.gen_element(x))
                rhs = (d0 * r_t - r_t * d0).h_coefficient(0)
                rep.record(
                    "classical-limit-cobracket",
                    _dict_sub(lhs, rhs),
                    generator=ctx.gen_name(x),
                )

    if "star-compatibility" in selected:
        for x in codes:
            d = ctx.coproduct(x)
            rep.record(
                "star-compatibility", d.star_legs() - d, generator=ctx.gen_name(x)
            )

    if "rescaling-invariance" in selected:
        for s in (Fraction(2), Fraction(-3)):
            scaled = DeformationContext(ctx.metric, ctx.tau.scaled(s), ctx.order)
            for x in codes:
                rep.record(
                    "rescaling-invariance",
                    scaled.coproduct(x).rescale_h(s) - ctx.coproduct(x),
                    generator=f"{ctx.gen_name(x)} (s={s})",
                )

    rep.seconds = time.monotonic() - t0
    return rep


def mono_coproduct(ctx: DeformationContext, mono: tuple) -> TensorElement:
    """The deformed coproduct of a single PBW monomial, through the cache."""
    return ctx._mono_tensor(mono, ctx._mono_coproduct, ctx.coproduct)


def _select(checks):
    if checks is None:
        return set(HOPF_CHECKS)
    out = set()
    for c in checks:
        if isinstance(c, int):
            out.add(HOPF_CHECKS[c - 1])
        else:
            out.add(c)
    return out


def _dict_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        s = -v if cur is None else cur - v
        if s:
            out[k] = s
        elif cur is not None:
            del out[k]
    return out


def primitivity_report(ctx: DeformationContext, stability_codes) -> VerificationReport:
    """Check that the deformed coproduct is primitive exactly on the given
    generators (the stability subalgebra of tau)."""
    rep = VerificationReport("stability-primitivity")
    for code in ctx.generator_codes():
        d = ctx.coproduct(code)
        prim = ctx._primitive_gen(code)
        is_prim = (d - prim).is_zero
        should = code in stability_codes
        rep.record_bool(
            "coproduct-primitive-iff-stability",
            is_prim == should,
            generator=ctx.gen_name(code),
            note="primitive" if is_prim else "deformed",
        )
    return rep
