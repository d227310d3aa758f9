"""Reflection difference equations on the spin chain and their polynomial
solutions.

A vector of Laurent polynomials f = (f_b) solves the reflection difference
system when the translation transport matrices carry f across a q-shift,
C_{tau_i}(t) f(q^{-eps_i} t) = f(t), and f is invariant under the dressed
reflections.  The solution builder pairs the basic-representation action on
one monic joint eigenpolynomial with the principal-series basis of the spin
representation: for each minimal coset representative w the Hecke element
indexed by w (w_0^J)^{-1} is applied letterwise to the polynomial and the
result is weighted by the basis vector v_w.  Existence of a nontrivial
polynomial solution is governed by a single scalar constraint between the
boundary parameters and q^m, checked by check_mcondition; the builder
refuses to assemble anything when the constraint fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .baxter import RepHandle, baxter_j, transport_C_tau
from .koornwinder import compute_P, gamma_lambda, noumi_T_apply
from .numerics import (
    GenericityError,
    InternalDefectError,
    LaurentPoly,
    ParamSet,
    PoleProximityError,
    RefusalError,
    eta,
)
from .spinrep import build_spin_rep, principal_series_basis
from .weyl import WeylElem, act_point, reduced_word, w0_coset_element

_MCOND_TOL = 1e-9
_MAX_RESAMPLE = 40


@dataclass(frozen=True)
class ConditionReport:
    m: int
    lhs: complex
    rhs: complex
    satisfied: bool

    def to_dict(self):
        return {
            "m": self.m,
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "satisfied": self.satisfied,
        }


def check_mcondition(params: ParamSet, m: int) -> ConditionReport:
    """Both sides of the existence constraint psi0 psin q^m = (k0 kn
    kappa^{n-1})^{eta(m)}, with eta(m) = 1 for m > 0 and -1 for m <= 0."""
    lhs = params.psi0 * params.psin * params.q**m
    rhs = (params.kappa0 * params.kappan * params.kappa ** (params.n - 1)) ** eta(m)
    ok = abs(lhs - rhs) < _MCOND_TOL * max(abs(lhs), abs(rhs))
    return ConditionReport(m=int(m), lhs=lhs, rhs=rhs, satisfied=ok)


@dataclass
class KZSolution:
    params: ParamSet
    components: list
    metadata: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.components)

    def eval_at(self, t) -> np.ndarray:
        return np.array([c.eval(t) for c in self.components], dtype=complex)

    def max_coeff(self) -> float:
        return max((c.max_abs() for c in self.components), default=0.0)

    def to_dict(self):
        return {
            "params": self.params.to_dict(),
            "components": [c.to_dict() for c in self.components],
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data) -> "KZSolution":
        params = ParamSet.from_dict(data["params"])
        comps = [LaurentPoly.from_dict(d) for d in data["components"]]
        return cls(params=params, components=comps, metadata=dict(data.get("metadata", {})))


def cm_alpha(phi: LaurentPoly, params: ParamSet, metadata=None) -> KZSolution:
    """Pair the Hecke action on phi with the principal-series basis.

    For each minimal coset representative w the element u = w (w_0^J)^{-1}
    is taken to its reduced word and the generator images act on phi
    letterwise (rightmost letter first, as operators compose); the resulting
    polynomial is added into every spin component with weight (v_w)_b.
    """
    n = params.n
    basis_mat, _zeta, reps, _rep = principal_series_basis(params)
    jset = list(range(1, n))
    w0j_inv = w0_coset_element(jset, n).inverse_finite()
    components = [LaurentPoly.zero(n) for _ in range(2**n)]
    for col, w in enumerate(reps):
        u = w * w0j_inv
        poly = phi
        for a in reversed(reduced_word(u)):
            poly = noumi_T_apply(a, poly, params)
        for b in range(2**n):
            weight = basis_mat[b, col]
            if abs(weight) > 0.0:
                components[b] = components[b] + poly.scale(weight)
    return KZSolution(
        params=params,
        components=components,
        metadata=dict(metadata or {"construction": "cm_alpha"}),
    )


def build_polynomial_solution(params: ParamSet, m: int) -> KZSolution:
    """The polynomial solution at lambda = (m, ..., m).

    Refuses when the existence constraint fails; validates the spectral
    wiring (the longest-coset image of the principal-series point must be
    the translation spectrum of (m, ..., m)) before assembling.
    """
    n = params.n
    report = check_mcondition(params, m)
    if not report.satisfied:
        err = RefusalError(
            "existence constraint unsatisfied: "
            f"lhs={report.lhs:.6g}, rhs={report.rhs:.6g} (m={m})"
        )
        err.report = report
        raise err
    if abs(m) * n > 4:
        raise ValueError("degree cap exceeded (|m| * n <= 4)")
    _basis, zeta, _reps, _rep = principal_series_basis(params)
    jset = list(range(1, n))
    w0j = w0_coset_element(jset, n)
    mapped = act_point(w0j, zeta, params)
    target = gamma_lambda((m,) * n, params).gamma
    gap = max(abs(a - b) for a, b in zip(mapped, target)) / max(
        max(abs(v) for v in target), 1.0
    )
    if gap > 1e-9:
        raise InternalDefectError(f"spectral wiring mismatch ({gap:.2e})")
    lam = (m,) * n
    poly = compute_P(lam, params)
    sol = cm_alpha(
        poly,
        params,
        metadata={
            "construction": "alpha of the monic joint eigenpolynomial",
            "m": int(m),
            "lambda": list(lam),
        },
    )
    if sol.max_coeff() < 1e-9:
        raise InternalDefectError("assembled solution is numerically zero")
    return sol


def _generic_point(rng, n):
    return tuple(
        complex(rng.uniform(0.75, 1.35) * np.exp(2j * np.pi * rng.uniform()))
        for _ in range(n)
    )


def verify_solution(sol: KZSolution, samples: int = 20, seed: int = 8) -> dict:
    """Pointwise residuals of the n transport equations and the n+1
    invariance equations at random generic points; resamples on poles."""
    params = sol.params
    n = params.n
    rep = RepHandle.from_rep(build_spin_rep(params))
    rng = np.random.default_rng(seed)
    out: dict = {}

    def acc(key, val):
        out[key] = max(out.get(key, 0.0), val)

    q = params.q
    done = 0
    attempts = 0
    while done < samples:
        attempts += 1
        if attempts > samples + _MAX_RESAMPLE:
            raise GenericityError(
                "could not find enough pole-free sample points"
            )
        t = _generic_point(rng, n)
        try:
            ft = sol.eval_at(t)
            scale = max(1e-300, float(np.abs(ft).max()))
            for i in range(1, n + 1):
                shifted = tuple(
                    v / q if idx == i - 1 else v for idx, v in enumerate(t)
                )
                lhs = transport_C_tau(rep, i, t) @ sol.eval_at(shifted)
                acc(
                    f"transport equation i={i}",
                    float(np.abs(lhs - ft).max()) / scale,
                )
            for j in range(n + 1):
                if j == 0:
                    mat = baxter_j(rep, 0, params.q_sqrt / t[0])
                elif j == n:
                    mat = baxter_j(rep, n, t[-1])
                else:
                    mat = baxter_j(rep, j, t[j - 1] / t[j])
                sj_t = act_point(WeylElem.generator(j, n), t, params)
                lhs = mat @ sol.eval_at(sj_t)
                acc(
                    f"invariance under s_{j}",
                    float(np.abs(lhs - ft).max()) / scale,
                )
        except PoleProximityError:
            continue
        done += 1
    return out
