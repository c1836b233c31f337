"""The skewed multivariate Birnbaum-Saunders (SMVBS) model.

With a_j the standardizing transform of coordinate j, the joint density
on the positive orthant is

    f(t) = 2 * prod_j phi(a_j) * Phi(lambda * prod_j a_j) * prod_j J_j,

where J_j is the BS Jacobian of margin j. Margins are exactly
BS(alpha_j, beta_j) for every lambda; lambda = 0 recovers the
independent product model, and its sign controls the direction of the
dependence. Only beta is affected by coordinatewise rescaling, which
gives the exact scale and reciprocation closures implemented in
``transform_params``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._rng import as_generator
from .specfun import (
    confluent_u,
    log_std_normal_cdf,
    log_std_normal_pdf,
    owen_t,
    std_normal_cdf,
)
from .univariate import a_transform, _check_positive, _log_jacobian

__all__ = [
    "SmvbsParams",
    "smvbs_pdf",
    "smvbs_log_pdf",
    "conditional_pdf",
    "conditional_cdf",
    "smvbs_sample",
    "transform_params",
    "latent_correlation",
    "product_moment",
    "ProductMoment",
    "ProductMomentSeriesTerms",
]

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class SmvbsParams:
    """Parameters (alpha_1..alpha_p, beta_1..beta_p, lambda), p >= 2."""

    alphas: tuple
    betas: tuple
    lam: float

    def __post_init__(self):
        alphas = tuple(float(a) for a in np.atleast_1d(self.alphas))
        betas = tuple(float(b) for b in np.atleast_1d(self.betas))
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "lam", float(self.lam))
        if len(alphas) != len(betas):
            raise ValueError("alphas and betas must have equal length")
        if len(alphas) < 2:
            raise ValueError("the model needs at least two margins")
        if any(not (np.isfinite(a) and a > 0.0) for a in alphas):
            raise ValueError("all alphas must be positive and finite")
        if any(not (np.isfinite(b) and b > 0.0) for b in betas):
            raise ValueError("all betas must be positive and finite")
        if not np.isfinite(self.lam):
            raise ValueError("lambda must be finite")

    @property
    def p(self) -> int:
        return len(self.alphas)

    def as_vector(self) -> np.ndarray:
        """Flatten to (alpha_1..alpha_p, beta_1..beta_p, lambda)."""
        return np.array(self.alphas + self.betas + (self.lam,))

    @classmethod
    def from_vector(cls, vec) -> "SmvbsParams":
        vec = np.asarray(vec, dtype=float)
        if vec.ndim != 1 or vec.size < 5 or vec.size % 2 == 0:
            raise ValueError("expected a vector (alphas..., betas..., lambda)")
        p = (vec.size - 1) // 2
        return cls(tuple(vec[:p]), tuple(vec[p : 2 * p]), vec[-1])


def _as_rows(x, p: int) -> np.ndarray:
    x = _check_positive(x)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != p:
        raise ValueError(f"expected points with {p} coordinates")
    return x


def smvbs_log_pdf(x, params: SmvbsParams):
    """Joint log density at rows of x (shape (n, p) or a single point)."""
    x = np.asarray(x, dtype=float)
    squeeze = x.ndim == 1
    rows = _as_rows(x, params.p)
    a = np.empty_like(rows)
    log_jac = np.zeros(rows.shape[0])
    for j in range(params.p):
        a[:, j] = a_transform(rows[:, j], params.alphas[j], params.betas[j])
        log_jac += _log_jacobian(rows[:, j], params.alphas[j], params.betas[j])
    out = (
        _LOG2
        + log_std_normal_pdf(a).sum(axis=1)
        + log_std_normal_cdf(params.lam * np.prod(a, axis=1))
        + log_jac
    )
    return float(out[0]) if squeeze else out


def smvbs_pdf(x, params: SmvbsParams):
    out = np.exp(smvbs_log_pdf(x, params))
    return float(out) if np.ndim(out) == 0 else out


def conditional_pdf(t1, t2, params: SmvbsParams):
    """Density of T1 given T2 = t2 for a bivariate model.

    The conditional is a skewed BS law: 2 phi(a_1) Phi(lambda a_2 a_1) J_1.
    """
    if params.p != 2:
        raise ValueError("conditionals are implemented for p = 2")
    t1 = _check_positive(t1)
    t2 = float(np.asarray(t2, dtype=float))
    a1 = a_transform(t1, params.alphas[0], params.betas[0])
    a2 = a_transform(t2, params.alphas[1], params.betas[1])
    out = np.exp(
        _LOG2
        + log_std_normal_pdf(a1)
        + log_std_normal_cdf(params.lam * a2 * a1)
        + _log_jacobian(t1, params.alphas[0], params.betas[0])
    )
    return float(out) if out.ndim == 0 else out


def conditional_cdf(t1, t2, params: SmvbsParams):
    """P(T1 <= t1 | T2 = t2) = Phi(a_1) - 2 T(a_1, lambda a_2)."""
    if params.p != 2:
        raise ValueError("conditionals are implemented for p = 2")
    t1 = _check_positive(t1)
    t2 = float(np.asarray(t2, dtype=float))
    a1 = a_transform(t1, params.alphas[0], params.betas[0])
    a2 = a_transform(t2, params.alphas[1], params.betas[1])
    out = std_normal_cdf(a1) - 2.0 * owen_t(a1, params.lam * a2)
    return float(out) if np.ndim(out) == 0 else np.clip(out, 0.0, 1.0)


def _sample_latent(n: int, p: int, lam: float, rng) -> np.ndarray:
    """Draw the latent normal-scale vectors (Z_1..Z_p) exactly.

    Z_1..Z_{p-1} are iid standard normal. Conditionally on them, Z_p is
    skew-normal with slant c = lambda * prod(Z_1..Z_{p-1}), generated by
    the convolution representation delta |W0| + sqrt(1-delta^2) W1.
    """
    z = np.empty((n, p))
    z[:, : p - 1] = rng.standard_normal((n, p - 1))
    c = lam * np.prod(z[:, : p - 1], axis=1)
    delta = c / np.sqrt(1.0 + c * c)
    w0 = np.abs(rng.standard_normal(n))
    w1 = rng.standard_normal(n)
    z[:, p - 1] = delta * w0 + np.sqrt(1.0 - delta * delta) * w1
    return z


def smvbs_sample(n: int, params: SmvbsParams, rng=None) -> np.ndarray:
    """Draw n exact vectors from the model; returns shape (n, p)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = as_generator(rng)
    z = _sample_latent(n, params.p, params.lam, rng)
    t = np.empty_like(z)
    for j in range(params.p):
        half = 0.5 * params.alphas[j] * z[:, j]
        t[:, j] = params.betas[j] * (half + np.sqrt(half * half + 1.0)) ** 2
    return t


def transform_params(
    params: SmvbsParams,
    scale: Sequence[float] | None = None,
    invert: Sequence[bool] | None = None,
) -> SmvbsParams:
    """Parameters of (k_j * T_j) and/or (1 / T_j) under the closures.

    Inversion is applied first: each inverted coordinate replaces
    beta_j by 1/beta_j and flips the sign of lambda once. Scaling then
    multiplies beta_j by k_j > 0. Both match the distribution of the
    transformed vector exactly.
    """
    alphas = list(params.alphas)
    betas = list(params.betas)
    lam = params.lam
    if invert is not None:
        if len(invert) != params.p:
            raise ValueError("invert must have one flag per margin")
        for j, flag in enumerate(invert):
            if flag:
                betas[j] = 1.0 / betas[j]
                lam = -lam
    if scale is not None:
        if len(scale) != params.p:
            raise ValueError("scale must have one factor per margin")
        for j, k in enumerate(scale):
            k = float(k)
            if not (np.isfinite(k) and k > 0.0):
                raise ValueError("scale factors must be positive")
            betas[j] *= k
    return SmvbsParams(tuple(alphas), tuple(betas), lam)


def latent_correlation(lam: float) -> float:
    """Correlation of the latent normal-scale pair as a function of lambda.

    rho(lambda) = sign(lambda) * U(3/2, 2, 1/(2 lambda^2)) / (2 lambda^2 sqrt(pi)),
    with U the confluent hypergeometric function. Odd in lambda, zero at
    zero, and increasing toward the asymptote 2/pi as lambda -> inf.
    """
    lam = float(lam)
    if not np.isfinite(lam):
        raise ValueError("lambda must be finite")
    if lam == 0.0:
        return 0.0
    z = 1.0 / (2.0 * lam * lam)
    return math.copysign(confluent_u(1.5, 2.0, z) / (2.0 * lam * lam * math.sqrt(math.pi)), lam)


@dataclass(frozen=True)
class ProductMoment:
    """E[T1 T2] with the Monte Carlo standard error of the estimate."""

    value: float
    mc_se: float
    draws: int


def product_moment(
    params: SmvbsParams, mc_draws: int = 10**6, rng=None
) -> ProductMoment:
    """Cross moment E[T1 T2] of a bivariate model.

    lambda = 0 has the closed form beta1 beta2 (1 + alpha1^2/2)(1 + alpha2^2/2);
    otherwise the moment is estimated from exact draws and reported with
    its Monte Carlo standard error.
    """
    if params.p != 2:
        raise ValueError("product_moment is implemented for p = 2")
    if params.lam == 0.0:
        value = (
            params.betas[0]
            * params.betas[1]
            * (1.0 + params.alphas[0] ** 2 / 2.0)
            * (1.0 + params.alphas[1] ** 2 / 2.0)
        )
        return ProductMoment(value, 0.0, 0)
    if mc_draws < 2:
        raise ValueError("mc_draws must be at least 2")
    t = smvbs_sample(int(mc_draws), params, rng)
    prod = t[:, 0] * t[:, 1]
    return ProductMoment(
        float(prod.mean()),
        float(prod.std(ddof=1) / math.sqrt(prod.size)),
        int(mc_draws),
    )


@dataclass(frozen=True)
class ProductMomentSeriesTerms:
    """Leading coefficients of the series expansion of E[T1 T2].

    The expansion organizes the cross moment as a power series in
    lambda whose terms couple the coefficients below with nested
    moment integrals (denoted u_i, v_k and I_00 in derivations). The
    integrals lack closed forms, so the series is recorded for
    documentation and is deliberately not summed; use
    ``product_moment`` for values.
    """

    lam: float
    c1: float
    c2: float
    c3: float

    @classmethod
    def from_lambda(cls, lam: float) -> "ProductMomentSeriesTerms":
        lam = float(lam)
        return cls(
            lam=lam,
            c1=1.0,
            c2=4.0 * lam**2 / math.factorial(3),
            c3=32.0 * lam**4 / math.factorial(5),
        )
