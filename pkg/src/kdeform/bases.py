"""Adapted bases: the 1+(D-1) orthogonal decomposition with the Majid-Ruegg
generators, and the 2+(D-2) light-cone decomposition for null tau.

A BasisChange carries the new basis vectors as columns A (new in old
components); the metric transforms by congruence g' = A^T g A, the vector by
tau' = A^-1 tau, and generators tensorially, so Lie brackets transform
covariantly.  All arithmetic is exact rational: basis vectors are never
normalized to unit length (no square roots), which the rescaling-invariance
of the coproducts makes harmless.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import exactla
from .algebra import (
    AlgebraElement,
    Metric,
    PoincareAlgebra,
    VectorTau,
    divide_h,
    series_exp,
    series_log_one_plus,
)
from .errors import BasisError, InvalidVectorError
from .hopf import DeformationContext
from .reports import VerificationReport
from .scalars import GaussRational, HSeries
from .tensors import TensorElement, hyperbolic_pair_complement, tau_orthogonal_complement

_F0 = Fraction(0)
_F1 = Fraction(1)


class BasisChange:
    """A rational change of basis on V together with the induced maps."""

    def __init__(self, old_metric: Metric, columns):
        self.old_metric = old_metric
        self.columns = exactla.freeze(columns)  # column j = new e_j in old coords
        self.inverse = exactla.invert(self.columns)
        self.new_metric = old_metric.congruence(self.columns)
        self._gen_images = {}

    def transform_vector(self, v):
        """Components of an old-basis vector in the new basis."""
        return exactla.mat_vec(self.inverse, tuple(v))

    def transform_tau(self, tau: VectorTau) -> VectorTau:
        return VectorTau(self.new_metric, self.transform_vector(tau.components))

    def generator_image(self, code: int, target: PoincareAlgebra) -> AlgebraElement:
        """An old-basis generator as a linear combination of new-basis ones."""
        img = self._gen_images.get(code)
        if img is not None:
            return img
        b = self.inverse
        d = target.dim
        kind, idx = target.decode(code)
        acc = {}
        if kind == "P":
            rho = idx
            for mu in range(d):
                if b[mu][rho]:
                    _merge(acc, target.momentum_code(mu), GaussRational(b[mu][rho]))
        else:
            rho, sig = idx
            for mu in range(d):
                if not b[mu][rho]:
                    continue
                for nu in range(d):
                    if not b[nu][sig]:
                        continue
                    c, sign = target.rotation_code(mu, nu)
                    if sign:
                        _merge(acc, c, GaussRational(b[mu][rho] * b[nu][sig] * sign))
        img = target.from_codes(acc)
        self._gen_images[code] = img
        return img

    def push(self, elem: AlgebraElement, target: PoincareAlgebra) -> AlgebraElement:
        """Multiplicative-linear extension of the generator map to U(iso(g))."""
        out = target.zero()
        for mono, hs in elem.terms.items():
            word = target.one()
            for code in mono:
                word = word * self.generator_image(code, target)
            out = out + word * hs
        return out


def _merge(acc: dict, key, val):
    cur = acc.get(key)
    acc[key] = val if cur is None else cur + val


def orthogonal_decompose(metric: Metric, tau: VectorTau) -> BasisChange:
    """Basis with e_0 = tau and g(e_0, e_i) = 0, by rational Gram-Schmidt
    rejection of the standard basis against tau.  The (D-1)-block need not be
    diagonal.  Requires tau^2 != 0."""
    if tau.is_zero:
        raise InvalidVectorError("cannot adapt a basis to the zero vector")
    if not tau.tau_sq:
        raise BasisError(
            "tau is null (tau^2 = 0): the orthogonal decomposition does not exist; "
            "use lightcone_decompose"
        )
    rest = tau_orthogonal_complement(metric, tau)
    cols = exactla.transpose((tau.components,) + tuple(rest))
    return BasisChange(metric, cols)


@dataclass
class LightconeBasis:
    """The 2+(D-2) splitting for null tau: new index 0 is the tau direction
    ('+'), new index D-1 is the null partner ('-'), the middle indices are the
    transverse block."""

    change: BasisChange
    plus: int
    minus: int
    transverse: tuple

    @property
    def new_metric(self) -> Metric:
        return self.change.new_metric


def lightcone_decompose(metric: Metric, tau: VectorTau) -> LightconeBasis:
    """Basis (tau, e_a ..., tau_tilde) with g(tau,tau) = g(tt,tt) = 0,
    g(tau,tt) = 1 and the transverse block orthogonal to both.

    tau_tilde is pinned by minimal-index pivoting with no components outside
    the pivot direction and tau itself; any valid choice satisfies the same
    Gram conditions."""
    if tau.is_zero:
        raise InvalidVectorError("cannot adapt a basis to the zero vector")
    if tau.tau_sq:
        raise BasisError(
            f"tau^2 = {tau.tau_sq} != 0: the light-cone decomposition requires a "
            "null vector; use orthogonal_decompose"
        )
    p, q = metric.signature
    if p == 0 or q == 0:
        raise InvalidVectorError("definite signature admits no null directions")
    tt, trans = hyperbolic_pair_complement(metric, tau)
    cols = exactla.transpose((tau.components,) + tuple(trans) + (tt,))
    change = BasisChange(metric, cols)
    d = metric.dim
    lc = LightconeBasis(change, 0, d - 1, tuple(range(1, d - 1)))
    g = change.new_metric.rows
    ok = (
        not g[0][0]
        and not g[d - 1][d - 1]
        and g[0][d - 1] == 1
        and all(not g[0][a] and not g[d - 1][a] for a in lc.transverse)
    )
    if not ok:
        raise BasisError("light-cone Gram conditions failed; defective decomposition")
    return lc


def adapted_context(metric: Metric, tau: VectorTau, order: int):
    """(BasisChange-or-LightconeBasis, DeformationContext) in the basis adapted
    to tau: orthogonal for tau^2 != 0, light-cone for tau^2 = 0."""
    if tau.tau_sq:
        change = orthogonal_decompose(metric, tau)
        ctx = DeformationContext(change.new_metric, change.transform_tau(tau), order)
        return change, ctx
    lc = lightcone_decompose(metric, tau)
    ctx = DeformationContext(lc.new_metric, lc.change.transform_tau(tau), order)
    return lc, ctx


def is_orthogonally_adapted(ctx: DeformationContext) -> bool:
    d = ctx.algebra.dim
    g = ctx.metric.rows
    tau_ok = ctx.tau.components == (_F1,) + (_F0,) * (d - 1)
    return tau_ok and all(not g[0][i] for i in range(1, d))


# -- the Majid-Ruegg generators -------------------------------------------------


@dataclass
class MRGenerators:
    """The nonlinear generators of the bicrossproduct presentation:
    p_tilde_tau = kappa ln Pi_tau (primitive), p_tilde[i] = P_i Pi^-1.
    Elements live in the context they were built from; the rotations are the
    unchanged M_{0i} (= M_{tau i}) and M_{ij}."""

    context: DeformationContext
    p_tilde_tau: AlgebraElement
    p_tilde: list

    def p_tilde_raised(self, k: int) -> AlgebraElement:
        """p_tilde^k = g^{kl} p_tilde_l over the spatial block."""
        alg = self.context.algebra
        ginv = self.context.metric.inverse
        out = alg.zero()
        for l in range(1, alg.dim):
            if ginv[k][l]:
                out = out + self.p_tilde[l - 1] * GaussRational(ginv[k][l])
        return out


def mr_generators(ctx: DeformationContext) -> MRGenerators:
    """Build the Majid-Ruegg generators in an orthogonally adapted context.

    The logarithm costs one division by h, so the series are computed in a
    lifted context and truncated back; the returned elements are exact modulo
    h^(N+1)."""
    if not is_orthogonally_adapted(ctx):
        raise BasisError(
            "Majid-Ruegg generators need the adapted basis (e_0 = tau, g_0i = 0); "
            "apply orthogonal_decompose first"
        )
    lifted = ctx.lift(2)
    mr = _mr_in_context(lifted)
    alg = ctx.algebra
    return MRGenerators(
        ctx,
        mr.p_tilde_tau.project_to(alg),
        [p.project_to(alg) for p in mr.p_tilde],
    )


def _mr_in_context(ctx: DeformationContext) -> MRGenerators:
    alg = ctx.algebra
    p_tilde_tau = divide_h(series_log_one_plus(ctx.pi - alg.one()))
    p_tilde = [alg.P(i) * ctx.pi_inv for i in range(1, alg.dim)]
    return MRGenerators(ctx, p_tilde_tau, p_tilde)


def verify_mr(ctx: DeformationContext) -> VerificationReport:
    """The Majid-Ruegg suite: the four bicrossproduct coproducts, the deformed
    commutators including the exp(-2 p_tilde_tau / kappa) term, the reduced
    1+(D-1) coproducts against the universal ones, and the classical limits.
    Residuals are computed in a lifted context and compared modulo h^(N+1)."""
    t0 = time.monotonic()
    rep = VerificationReport("majid-ruegg")
    if ctx.tau.is_zero or not ctx.tau.tau_sq:
        rep.skipped = "Majid-Ruegg basis requires tau^2 != 0"
        return rep
    if not is_orthogonally_adapted(ctx):
        _, ctx = adapted_context(ctx.metric, ctx.tau, ctx.order)
        note = "verified in the orthogonally adapted basis"
    else:
        note = None

    base_alg = ctx.algebra
    d = base_alg.dim
    t2 = ctx.tau.tau_sq
    lifted = ctx.lift(2)
    alg = lifted.algebra
    mr = _mr_in_context(lifted)
    pt, ptil = mr.p_tilde_tau, mr.p_tilde
    pi, pi_inv = lifted.pi, lifted.pi_inv
    one = alg.one()

    def trunc(x):
        return x.project_to(base_alg)

    def trunc_t(t):
        return t.project_to(base_alg)

    rep.record("exp-of-p-tilde-tau-recovers-pi", trunc(series_exp(pt * alg.h()) - pi), note=note)

    # classical limits at h = 0
    q = {m: c for m, c in pt.h_coefficient(0).items()}
    rep.record(
        "p-tilde-tau-classical-limit",
        _dict_sub(q, lifted.p_tau.h_coefficient(0)),
    )
    for i in range(1, d):
        rep.record(
            "p-tilde-classical-limit",
            _dict_sub(ptil[i - 1].h_coefficient(0), alg.P(i).h_coefficient(0)),
            generator=f"P~_{i}",
        )

    # -- bicrossproduct coproducts ------------------------------------------
    prim = TensorElement.of(pt, one) + TensorElement.of(one, pt)
    rep.record("coproduct-p-tilde-tau-primitive", trunc_t(lifted.coproduct_of(pt) - prim))

    for i in range(1, d):
        for j in range(1, d):
            if i >= j:
                continue
            code, _ = alg.rotation_code(i, j)
            dm = lifted.coproduct(code)
            rep.record(
                "coproduct-m-ij-primitive",
                trunc_t(dm - lifted._primitive_gen(code)),
                generator=f"M_{i}{j}",
            )

    for i in range(1, d):
        lhs = lifted.coproduct_of(ptil[i - 1])
        rhs = TensorElement.of(pi_inv, ptil[i - 1]) + TensorElement.of(ptil[i - 1], one)
        rep.record("coproduct-p-tilde-i", trunc_t(lhs - rhs), generator=f"P~_{i}")

    for j in range(1, d):
        code, _ = alg.rotation_code(0, j)
        lhs = lifted.coproduct(code)
        m0j = alg.M(0, j)
        rhs = TensorElement.of(m0j, one) + TensorElement.of(pi_inv, m0j)
        for k in range(1, d):
            ptk = mr.p_tilde_raised(k)
            if ptk:
                rhs = rhs - TensorElement.of(ptk, alg.M(k, j)) * HSeries.h_power(
                    alg.order, 1, GaussRational(t2)
                )
        rep.record("coproduct-m-tau-j-bicrossproduct", trunc_t(lhs - rhs), generator=f"M_0{j}")

    # -- reduced 1+(D-1) coproducts against the universal ones ----------------
    _reduced_coproducts_report(rep, lifted, trunc_t)

    # -- commutators -----------------------------------------------------------
    for i in range(1, d):
        m0i = alg.M(0, i)
        rep.record(
            "bracket-m-tau-i-with-p-tilde-tau",
            trunc(alg.bracket(m0i, pt) + ptil[i - 1] * GaussRational(0, t2)),
            generator=f"[M_0{i}, P~_tau]",
        )
        for j in range(i + 1, d):
            rep.record(
                "bracket-m-ij-with-p-tilde-tau-vanishes",
                trunc(alg.bracket(alg.M(i, j), pt)),
                generator=f"[M_{i}{j}, P~_tau]",
            )

    g = ctx.metric.rows
    for i in range(1, d):
        for j in range(1, d):
            if i >= j:
                continue
            for k in range(1, d):
                lhs = alg.bracket(alg.M(i, j), ptil[k - 1])
                rhs = (
                    ptil[i - 1] * GaussRational(0, g[j][k])
                    - ptil[j - 1] * GaussRational(0, g[i][k])
                )
                rep.record(
                    "bracket-m-ij-with-p-tilde-k-classical",
                    trunc(lhs - rhs),
                    generator=f"[M_{i}{j}, P~_{k}]",
                )

    # [M_{tau i}, P~_j] = i/2 kappa g_ij (1 - exp(-2 P~_tau/kappa) - tau^2/kappa^2 P~_k P~^k)
    #                     + i tau^2/kappa P~_j P~_i
    pp = alg.zero()
    for k in range(1, d):
        pp = pp + ptil[k - 1] * mr.p_tilde_raised(k)
    pi_inv_sq = pi_inv * pi_inv
    inner = one - pi_inv_sq - pp * HSeries.h_power(alg.order, 2, GaussRational(t2))
    half_kappa_part = divide_h(inner) * GaussRational(0, Fraction(1, 2))
    for i in range(1, d):
        m0i = alg.M(0, i)
        for j in range(1, d):
            lhs = alg.bracket(m0i, ptil[j - 1])
            rhs = half_kappa_part * GaussRational(g[i][j]) + ptil[j - 1] * ptil[
                i - 1
            ] * HSeries.h_power(alg.order, 1, GaussRational(0, t2))
            rep.record(
                "bracket-m-tau-i-with-p-tilde-j-deformed",
                trunc(lhs - rhs),
                generator=f"[M_0{i}, P~_{j}]",
            )

    rep.seconds = time.monotonic() - t0
    return rep


def _reduced_coproducts_report(rep, ctx, trunc_t):
    """(DPtau)-(DMtau): the universal coproducts collapse to the quoted reduced
    forms in the adapted basis."""
    alg = ctx.algebra
    d = alg.dim
    t2 = ctx.tau.tau_sq
    one = alg.one()
    pi, pi_inv = ctx.pi, ctx.pi_inv
    h1 = alg.h(1)

    p_up = [None] + [
        sum(
            (alg.P(k) * GaussRational(ctx.metric.inverse[j][k]) for k in range(1, d)),
            alg.zero(),
        )
        for j in range(1, d)
    ]

    lhs = ctx.coproduct_of(ctx.p_tau)
    rhs = TensorElement.of(ctx.p_tau, pi) + TensorElement.of(pi_inv, ctx.p_tau)
    for j in range(1, d):
        rhs = rhs - TensorElement.of(p_up[j] * pi_inv, alg.P(j)) * (h1 * GaussRational(t2))
    rep.record("reduced-coproduct-p-tau", trunc_t(lhs - rhs), generator="P_tau")

    for i in range(1, d):
        lhs = ctx.coproduct(alg.momentum_code(i))
        rhs = TensorElement.of(alg.P(i), pi) + TensorElement.of(one, alg.P(i))
        rep.record("reduced-coproduct-p-i", trunc_t(lhs - rhs), generator=f"P_{i}")

    for i in range(1, d):
        code, _ = alg.rotation_code(0, i)
        lhs = ctx.coproduct(code)
        m0i = alg.M(0, i)
        rhs = TensorElement.of(m0i, one) + TensorElement.of(pi_inv, m0i)
        for j in range(1, d):
            rhs = rhs + TensorElement.of(p_up[j] * pi_inv, alg.M(i, j)) * (
                h1 * GaussRational(t2)
            )
        rep.record("reduced-coproduct-m-tau-i", trunc_t(lhs - rhs), generator=f"M_0{i}")


def pushforward_consistency_report(
    change: BasisChange, source: PoincareAlgebra, target: PoincareAlgebra
) -> VerificationReport:
    """Brackets commute with the basis change: push([x, y]) = [push(x), push(y)]
    for all generator pairs."""
    rep = VerificationReport("pushforward-consistency")
    codes = source.generator_codes()
    for i, x in enumerate(codes):
        for y in codes[i + 1 :]:
            xe = AlgebraElement(source, {(x,): HSeries.one(source.order)})
            ye = AlgebraElement(source, {(y,): HSeries.one(source.order)})
            lhs = change.push(source.bracket(xe, ye), target)
            rhs = target.bracket(change.push(xe, target), change.push(ye, target))
            rep.record(
                "bracket-commutes-with-basis-change",
                lhs - rhs,
                generator=f"codes ({x},{y})",
            )
    return rep


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
