"""Difference-reflection operators on Laurent polynomials and their joint
eigenpolynomials.

All entry points here hard-wire the inverted-parameter convention: callers
pass the plain parameter set and the kappa's and upsilon's are inverted
internally (q stays put).  In that convention the constant polynomial is a
kappa_j^{-1}-eigenvector of every generator image, the generator action is

    T_j . f = kappa_j^{-1} f + kappa_j N_j(t) DD_j(f)

with N_j the quadratic numerator polynomial and DD_j the exact divided
difference, and the translation elements act with eigenvalue 1/gamma_lambda
on the monic polynomial with leading monomial t^lambda.

compute_P assembles the translation-element matrices on a validated monomial
span and intersects the n eigenspaces; genericity of the parameter set keeps
the intersection one-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    GenericityError,
    InternalDefectError,
    LaurentPoly,
    ParamSet,
    _gamma_lambda_raw,
    divided_difference,
    l1_ball,
)
from .weyl import tau_word

_N_CAP = 3
_DEGREE_CAP = 4
_SPAN_CLOSURE_TOL = 1e-10
_KERNEL_GAP = 1e-6


def c_eval(j: int, t, params: ParamSet, inverted: bool = False) -> complex:
    """The deformation factor c_j at the point t; with inverted=True the
    kappa's and upsilon's are replaced by their inverses."""
    n = params.n
    k0, k, kn = params.kappa0, params.kappa, params.kappan
    u0, un = params.upsilon0, params.upsilonn
    if inverted:
        k0, k, kn, u0, un = 1 / k0, 1 / k, 1 / kn, 1 / u0, 1 / un
    qs = params.q_sqrt
    if j == 0:
        den = 1 - qs**2 / t[0] ** 2
        if abs(den) < 1e-12:
            raise GenericityError("pole of c_0 at this point")
        return (
            (1 - qs * k0 * u0 / t[0]) * (1 + qs * k0 / (u0 * t[0])) / (k0 * den)
        )
    if j == n:
        den = 1 - t[-1] ** 2
        if abs(den) < 1e-12:
            raise GenericityError("pole of c_n at this point")
        return (1 - kn * un * t[-1]) * (1 + kn / un * t[-1]) / (kn * den)
    if not 1 <= j < n:
        raise ValueError("index out of range")
    u = t[j - 1] / t[j]
    den = 1 - u
    if abs(den) < 1e-12:
        raise GenericityError("pole of c_j at this point")
    return (1 - k**2 * u) / (k * den)


def _numerator_poly(j: int, params: ParamSet) -> LaurentPoly:
    """N_j: the inverted-parameter numerator of c_j times the denominator of
    the divided difference, as a Laurent polynomial."""
    n = params.n
    q = params.q
    if j == 0:
        k0, u0 = params.kappa0, params.upsilon0
        e1 = tuple([-1] + [0] * (n - 1))
        e2 = tuple([-2] + [0] * (n - 1))
        return LaurentPoly(
            n,
            {
                (0,) * n: 1.0,
                e1: params.q_sqrt / k0 * (u0 - 1 / u0),
                e2: -q / k0**2,
            },
        )
    if j == n:
        kn, un = params.kappan, params.upsilonn
        e1 = tuple([0] * (n - 1) + [1])
        e2 = tuple([0] * (n - 1) + [2])
        return LaurentPoly(
            n,
            {(0,) * n: 1.0, e1: (un - 1 / un) / kn, e2: -1 / kn**2},
        )
    k = params.kappa
    ex = [0] * n
    ex[j - 1] = 1
    ex[j] = -1
    return LaurentPoly(n, {(0,) * n: 1.0, tuple(ex): -1 / k**2})


def noumi_T_apply(j: int, f: LaurentPoly, params: ParamSet) -> LaurentPoly:
    kj = params.kappa_j(j)
    out = f.scale(1 / kj)
    dd = divided_difference(f, j, params)
    return out + (_numerator_poly(j, params) * dd).scale(kj)


def noumi_T_inv_apply(j: int, f: LaurentPoly, params: ParamSet) -> LaurentPoly:
    # quadratic relation in inverted parameters: T^{-1} = T - 1/kappa + kappa
    kj = params.kappa_j(j)
    return noumi_T_apply(j, f, params) + f.scale(kj - 1 / kj)


def noumi_Y_apply(i: int, f: LaurentPoly, params: ParamSet) -> LaurentPoly:
    """The i-th commuting translation element through the basic action."""
    n = params.n
    if not 1 <= i <= n:
        raise ValueError("index out of range")
    letters = tau_word(i, n)
    flags = [k < i - 1 for k in range(len(letters))]
    out = f
    for a, invflag in reversed(list(zip(letters, flags))):
        out = (
            noumi_T_inv_apply(a, out, params)
            if invflag
            else noumi_T_apply(a, out, params)
        )
    return out


@dataclass(frozen=True)
class SpectralPoint:
    gamma: tuple
    lam: tuple

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "gamma": [{"re": g.real, "im": g.imag} for g in self.gamma],
        }


def gamma_lambda(lam, params: ParamSet) -> SpectralPoint:
    lam = tuple(int(v) for v in lam)
    return SpectralPoint(gamma=_gamma_lambda_raw(lam, params), lam=lam)


def _dominated(mu, lam) -> bool:
    """Partial-sum comparison of the decreasing rearrangements of absolute
    values; a superset of the true triangular order, validated at runtime."""
    a = sorted((abs(v) for v in mu), reverse=True)
    b = sorted((abs(v) for v in lam), reverse=True)
    run_a = run_b = 0
    for x, y in zip(a, b):
        run_a += x
        run_b += y
        if run_a > run_b:
            return False
    return True


@dataclass
class MonomialSpan:
    lam: tuple
    basis: tuple
    matrices: dict
    enlarged: bool


_BALL_CACHE: dict = {}


def _ball_matrices(params: ParamSet, radius: int):
    """Matrices of all n translation elements on the full l1 ball (exactly
    stable under every generator image), cached per parameter fingerprint."""
    key = (params.n, radius, params.fingerprint())
    if key in _BALL_CACHE:
        return _BALL_CACHE[key]
    n = params.n
    basis = l1_ball(n, radius)
    index = {mu: a for a, mu in enumerate(basis)}
    size = len(basis)
    mats = {}
    for i in range(1, n + 1):
        mat = np.zeros((size, size), dtype=complex)
        for col, mu in enumerate(basis):
            image = noumi_Y_apply(i, LaurentPoly.monomial(n, mu), params)
            for ex, cf in image.terms.items():
                if ex not in index:
                    raise InternalDefectError(
                        "translation image left the degree ball"
                    )
                mat[index[ex], col] = cf
        mats[i] = mat
    if len(_BALL_CACHE) > 8:
        _BALL_CACHE.pop(next(iter(_BALL_CACHE)))
    _BALL_CACHE[key] = (basis, index, mats)
    return _BALL_CACHE[key]


def build_span(lam, params: ParamSet) -> MonomialSpan:
    """Monomial span for lambda with runtime-validated stability.

    Starts from the partial-sum-dominated subset of the degree ball; if any
    translation matrix leaks outside the subset, the span is enlarged once to
    the full ball (which is stable by construction).
    """
    lam = tuple(int(v) for v in lam)
    n = params.n
    if n != len(lam):
        raise ValueError("lambda length must match n")
    if n > _N_CAP or sum(abs(v) for v in lam) > _DEGREE_CAP:
        raise ValueError("degree cap exceeded (n <= 3, sum|lambda| <= 4)")
    radius = sum(abs(v) for v in lam)
    basis, index, mats = _ball_matrices(params, radius)
    chosen = [mu for mu in basis if _dominated(mu, lam)]
    rows_in = [index[mu] for mu in chosen]
    rows_out = [a for a, mu in enumerate(basis) if not _dominated(mu, lam)]
    enlarged = False
    if rows_out:
        for i in range(1, n + 1):
            block = mats[i][np.ix_(rows_out, rows_in)]
            scale = max(1.0, float(np.abs(mats[i]).max()))
            if np.abs(block).max() > _SPAN_CLOSURE_TOL * scale:
                enlarged = True
                break
    if enlarged:
        chosen = list(basis)
        rows_in = list(range(len(basis)))
    sub = {i: mats[i][np.ix_(rows_in, rows_in)] for i in range(1, n + 1)}
    return MonomialSpan(
        lam=lam, basis=tuple(chosen), matrices=sub, enlarged=enlarged
    )


@dataclass
class PolynomialResult:
    poly: LaurentPoly
    spectral: SpectralPoint
    residual: float
    span_size: int


def compute_P(lam, params: ParamSet) -> LaurentPoly:
    return compute_P_detail(lam, params).poly


def compute_P_detail(lam, params: ParamSet) -> PolynomialResult:
    """Monic joint eigenpolynomial with leading monomial t^lambda.

    Intersects the n translation eigenspaces on the validated span by a
    stacked singular-value decomposition; the kernel must be exactly
    one-dimensional with a clear spectral gap, otherwise the parameter set is
    rejected as non-generic.
    """
    span = build_span(lam, params)
    lam = span.lam
    n = params.n
    sp = gamma_lambda(lam, params)
    size = len(span.basis)
    stack = np.zeros((n * size, size), dtype=complex)
    for i in range(1, n + 1):
        stack[(i - 1) * size : i * size] = span.matrices[i] - (
            1 / sp.gamma[i - 1]
        ) * np.eye(size)
    sv = np.linalg.svd(stack, compute_uv=True)
    sigma, vh = sv[1], sv[2]
    scale = max(sigma[0], 1.0)
    if sigma[-1] > _KERNEL_GAP * scale:
        raise GenericityError(f"no joint eigenvector at lambda={lam}")
    if size > 1 and sigma[-2] < _KERNEL_GAP * scale:
        raise GenericityError(f"non-generic spectrum at lambda={lam}")
    vec = vh[-1].conj()
    lead = vec[span.basis.index(lam)]
    if abs(lead) < 1e-12 * np.abs(vec).max():
        raise InternalDefectError("leading coefficient vanished on the span")
    vec = vec / lead
    cutoff = 1e-13 * np.abs(vec).max()
    terms = {
        mu: complex(c)
        for mu, c in zip(span.basis, vec)
        if abs(c) > cutoff or mu == lam
    }
    # complex division z/z can round below one ulp; the normalization is
    # exact by construction, so pin the leading coefficient
    terms[lam] = 1.0 + 0.0j
    poly = LaurentPoly(n, terms)
    residual = 0.0
    for i in range(1, n + 1):
        diff = noumi_Y_apply(i, poly, params) + poly.scale(-1 / sp.gamma[i - 1])
        residual = max(residual, diff.max_abs() / max(poly.max_abs(), 1.0))
    return PolynomialResult(
        poly=poly, spectral=sp, residual=residual, span_size=size
    )


def stabilizer_eigen_residual(i: int, poly: LaurentPoly, params: ParamSet):
    """(is lambda fixed by s_i, residual of T_i poly = kappa_i^{-1} poly)."""
    diff = noumi_T_apply(i, poly, params) + poly.scale(-1 / params.kappa_j(i))
    return diff.max_abs() / max(poly.max_abs(), 1.0)


def fixed_by_si(i: int, lam) -> bool:
    lam = tuple(lam)
    if i == len(lam):
        return lam[-1] == 0
    return lam[i - 1] == lam[i]
