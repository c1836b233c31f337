"""Hypothesis tests and the correlated-BS comparison model.

Contains the likelihood ratio test of lambda = 0, the Vuong test for
non-nested model comparison, marginal goodness-of-fit statistics of the
Cramer-von Mises and Anderson-Darling type, and the bivariate BS model
built from a correlated normal pair (the standard alternative way of
putting dependence into BS margins), which serves as the comparison
model.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .estimation import SampleMatrix, mme
from .specfun import std_normal_cdf
from .univariate import a_transform, bs_cdf, _log_jacobian

__all__ = [
    "TestReport",
    "GofReport",
    "KbjParams",
    "lr_test",
    "vuong_test",
    "gof_marginal",
    "kbj_pdf",
    "kbj_log_pdf",
    "kbj_mle",
    "kbj_loglik",
]


@dataclass(frozen=True)
class TestReport:
    """Outcome of a scalar test statistic."""

    name: str
    statistic: float
    df: int | None
    p_value: float | None
    verdict: str
    level: float


def lr_test(full, restricted, df: int = 1, level: float = 0.05) -> TestReport:
    """Likelihood ratio test from two nested fits.

    ``full`` and ``restricted`` are FitResults on the same data; the
    statistic is 2 (l_full - l_restricted) referred to chi-squared with
    ``df`` degrees of freedom. The restricted likelihood can never
    exceed the full one, so a negative statistic signals a failed fit
    and raises.
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie strictly between 0 and 1")
    omega = 2.0 * (full.loglik - restricted.loglik)
    if omega < -1e-8:
        raise ValueError(
            "full fit has lower likelihood than the restricted fit; "
            "refit before testing"
        )
    omega = max(omega, 0.0)
    p = float(special.chdtrc(df, omega))
    verdict = (
        f"reject the restriction at level {level:g}"
        if p < level
        else f"no evidence against the restriction at level {level:g}"
    )
    return TestReport("lr", float(omega), df, p, verdict, level)


def vuong_test(
    loglik_a,
    loglik_b,
    level: float = 0.05,
    names: tuple = ("A", "B"),
) -> TestReport:
    """Vuong closeness test between two non-nested models.

    Takes the per-observation log densities of each fitted model. The
    statistic is sqrt(n) times the mean log-density difference over its
    sample standard deviation (ddof 1). Values above the upper normal
    quantile favor the first model, below the lower quantile the
    second, and anything in between is statistical equivalence. The
    statistic is invariant to adding a common per-observation constant
    to both models, so shared Jacobian terms may be dropped or kept.
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie strictly between 0 and 1")
    la = np.asarray(loglik_a, dtype=float)
    lb = np.asarray(loglik_b, dtype=float)
    if la.shape != lb.shape or la.ndim != 1 or la.size < 2:
        raise ValueError("need two equal-length vectors of at least 2 entries")
    m = la - lb
    sd = m.std(ddof=1)
    if sd == 0.0:
        raise ValueError("log-density differences are constant; test degenerate")
    stat = math.sqrt(m.size) * m.mean() / sd
    z = special.ndtri(1.0 - level)
    if stat > z:
        verdict = f"favor {names[0]}"
    elif stat < -z:
        verdict = f"favor {names[1]}"
    else:
        verdict = "models statistically equivalent"
    p = float(2.0 * special.ndtr(-abs(stat)))
    return TestReport("vuong", float(stat), None, p, verdict, level)


# Upper-tail critical values for the modified statistics when both
# parameters of the reference normal law are estimated from the data.
_GOF_LEVELS = (0.10, 0.05, 0.025, 0.01)
_W2_CRIT = (0.104, 0.126, 0.148, 0.178)
_A2_CRIT = (0.631, 0.752, 0.873, 1.035)


def _gof_verdict(stat: float, crit: tuple) -> str:
    if stat < crit[0]:
        return "p > 0.10"
    for lo, hi, c in zip(_GOF_LEVELS[1:], _GOF_LEVELS[:-1], crit[1:]):
        if stat < c:
            return f"{lo:g} < p <= {hi:g}"
    return "p <= 0.01"


@dataclass(frozen=True)
class GofReport:
    """Marginal goodness-of-fit report.

    w2_star and a2_star are the modified Cramer-von Mises and
    Anderson-Darling statistics of the normalized transform of the
    data; the verdicts place their p-values against standard critical
    value tables.
    """

    w2_star: float
    a2_star: float
    w2_verdict: str
    a2_verdict: str
    n: int


def gof_marginal(column, alpha: float, beta: float) -> GofReport:
    """Goodness of fit of one margin to BS(alpha, beta).

    The probability integral transform u = F(t) is mapped to normal
    scores, standardized (ddof 1), and mapped back through Phi before
    computing the statistics, so both parameters of the implied normal
    law count as estimated. Standardization absorbs any rescaling of
    the normal scores, which makes the result exactly invariant to
    alpha; only beta matters. Transforms that land on 0 or 1 are
    clipped with a warning.
    """
    t = np.sort(np.asarray(column, dtype=float))
    if t.ndim != 1 or t.size < 4:
        raise ValueError("need a 1-D column with at least 4 observations")
    n = t.size
    u = bs_cdf(t, alpha, beta)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        warnings.warn("probability transforms at 0 or 1 were clipped")
        u = np.clip(u, 1e-12, 1.0 - 1e-12)
    y = special.ndtri(u)
    y = (y - y.mean()) / y.std(ddof=1)
    v = std_normal_cdf(y)
    i = np.arange(1, n + 1)
    w2 = float(np.sum((v - (2.0 * i - 1.0) / (2.0 * n)) ** 2) + 1.0 / (12.0 * n))
    a2 = float(
        -n - np.sum((2.0 * i - 1.0) * (np.log(v) + np.log(1.0 - v[::-1]))) / n
    )
    w2_star = w2 * (1.0 + 0.5 / n)
    a2_star = a2 * (1.0 + 0.75 / n + 2.25 / n**2)
    return GofReport(
        w2_star=w2_star,
        a2_star=a2_star,
        w2_verdict=_gof_verdict(w2_star, _W2_CRIT),
        a2_verdict=_gof_verdict(a2_star, _A2_CRIT),
        n=n,
    )


@dataclass(frozen=True)
class KbjParams:
    """BS margins joined by a correlated standard normal pair."""

    alphas: tuple
    betas: tuple
    rho: float

    def __post_init__(self):
        alphas = tuple(float(a) for a in np.atleast_1d(self.alphas))
        betas = tuple(float(b) for b in np.atleast_1d(self.betas))
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "rho", float(self.rho))
        if len(alphas) != 2 or len(betas) != 2:
            raise ValueError("the comparison model is bivariate")
        if any(v <= 0.0 or not np.isfinite(v) for v in alphas + betas):
            raise ValueError("alphas and betas must be positive and finite")
        if not -1.0 < self.rho < 1.0:
            raise ValueError("rho must lie strictly inside (-1, 1)")


def kbj_log_pdf(x, params: KbjParams):
    """Joint log density: bivariate normal in the a-scores times Jacobians."""
    x = np.asarray(x, dtype=float)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != 2 or np.any(x <= 0.0):
        raise ValueError("expected positive points with 2 coordinates")
    a1 = a_transform(x[:, 0], params.alphas[0], params.betas[0])
    a2 = a_transform(x[:, 1], params.alphas[1], params.betas[1])
    r2 = 1.0 - params.rho**2
    quad = (a1 * a1 - 2.0 * params.rho * a1 * a2 + a2 * a2) / (2.0 * r2)
    out = (
        -math.log(2.0 * math.pi)
        - 0.5 * math.log(r2)
        - quad
        + _log_jacobian(x[:, 0], params.alphas[0], params.betas[0])
        + _log_jacobian(x[:, 1], params.alphas[1], params.betas[1])
    )
    return float(out[0]) if squeeze else out


def kbj_pdf(x, params: KbjParams):
    out = np.exp(kbj_log_pdf(x, params))
    return float(out) if np.ndim(out) == 0 else out


def kbj_loglik(params: KbjParams, sample: SampleMatrix) -> float:
    """Full log likelihood (no constants dropped)."""
    return float(kbj_log_pdf(sample.data, params).sum())


def _kbj_score(params: KbjParams, sample: SampleMatrix) -> np.ndarray:
    X = sample.data
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    rho = params.rho
    r2 = 1.0 - rho * rho
    a = np.stack(
        [a_transform(X[:, j], alphas[j], betas[j]) for j in range(2)], axis=1
    )
    d = np.sqrt((alphas * a) ** 2 + 4.0)
    q = (a - rho * a[:, ::-1]) / r2  # q_j = (a_j - rho a_k) / (1 - rho^2)
    g = np.empty(5)
    for j in range(2):
        g[j] = ((q[:, j] * a[:, j] - 1.0) / alphas[j]).sum()
        g[2 + j] = (
            -sample.n / (2.0 * betas[j])
            + (1.0 / (X[:, j] + betas[j])).sum()
            + (q[:, j] * d[:, j]).sum() / (2.0 * alphas[j] * betas[j])
        )
    quad0 = a[:, 0] ** 2 - 2.0 * rho * a[:, 0] * a[:, 1] + a[:, 1] ** 2
    g[4] = (
        sample.n * rho / r2
        + (a[:, 0] * a[:, 1]).sum() / r2
        - rho * quad0.sum() / r2**2
    )
    return g


def kbj_mle(sample: SampleMatrix, max_iter: int = 500):
    """Fit the comparison model by maximum likelihood.

    Works on (log alpha, log beta, atanh rho) with the analytic
    gradient. Moment estimates seed the margins; the empirical
    correlation of the standardized scores seeds rho. Returns the
    parameters, the full log likelihood and a convergence flag.
    """
    if sample.p != 2:
        raise ValueError("the comparison model is bivariate")
    m = mme(sample)
    a0 = np.stack(
        [
            a_transform(sample.column(j), m.alphas[j], m.betas[j])
            for j in range(2)
        ],
        axis=1,
    )
    rho0 = float(np.clip(np.corrcoef(a0[:, 0], a0[:, 1])[0, 1], -0.95, 0.95))
    eta0 = np.concatenate(
        [np.log(m.alphas), np.log(m.betas), [math.atanh(rho0)]]
    )

    def unpack(eta):
        return KbjParams(
            (math.exp(eta[0]), math.exp(eta[1])),
            (math.exp(eta[2]), math.exp(eta[3])),
            math.tanh(eta[4]),
        )

    def negll_and_grad(eta):
        params = unpack(eta)
        g = _kbj_score(params, sample)
        scale = np.array(
            [
                params.alphas[0],
                params.alphas[1],
                params.betas[0],
                params.betas[1],
                1.0 - params.rho**2,  # d rho / d atanh(rho)
            ]
        )
        return -kbj_loglik(params, sample), -g * scale

    res = optimize.minimize(
        negll_and_grad,
        eta0,
        jac=True,
        method="BFGS",
        options={"gtol": 1e-10, "maxiter": max_iter},
    )
    params = unpack(res.x)
    grad_norm = float(np.abs(_kbj_score(params, sample)).max())
    return KbjFit(
        params=params,
        loglik=kbj_loglik(params, sample),
        converged=bool(res.success or grad_norm <= 1e-6),
        iterations=int(res.nit),
        score_norm=grad_norm,
    )


@dataclass(frozen=True)
class KbjFit:
    params: KbjParams
    loglik: float
    converged: bool
    iterations: int
    score_norm: float
