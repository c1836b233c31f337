"""Moment and likelihood estimation for the skewed multivariate BS model.

Parameter vectors are ordered (alpha_1..alpha_p, beta_1..beta_p, lambda)
throughout. The log likelihood is the constant-free form

    l = -n sum_j [log alpha_j + log(beta_j)/2] + sum_ji log(t_ji + beta_j)
        - sum_ji a_ji^2 / 2 + sum_i log Phi(lambda prod_j a_ji),

which drops the data-only term -(3/2) sum log t and the additive
constants; it differs from the sum of joint log densities by a quantity
that depends on the data alone. Score and Hessian are analytic. The
expected information combines closed-form pieces with a Monte Carlo
evaluation of the bracket moments that lack closed forms; the sampler
averages every bracket over the sign orbit of the latent normal vector,
which zeroes the odd brackets exactly and shrinks the variance of the
even ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, optimize, special

from ._rng import as_generator
from .multivariate import SmvbsParams
from .specfun import k_alpha, log_std_normal_cdf
from .univariate import a_transform

__all__ = [
    "SampleMatrix",
    "MomentEstimates",
    "LikelihoodWorkspace",
    "FitResult",
    "ExpectedInfo",
    "ParamCi",
    "mme",
    "loglik",
    "score",
    "observed_info",
    "profile_loglik",
    "alpha_given_beta",
    "mle",
    "expected_info",
    "confidence_intervals",
    "param_names",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_DEFAULT_MC_SEED = 20120428
_SCORE_TOL = 1e-8
_STEP_TOL = 1e-10


def _wfun(u):
    """Inverse Mills ratio phi(u)/Phi(u), stable in the deep left tail."""
    u = np.asarray(u, dtype=float)
    out = np.exp(-0.5 * u * u - _LOG_SQRT_2PI - special.log_ndtr(u))
    return float(out) if out.ndim == 0 else out


class SampleMatrix:
    """A positive data matrix with its column means and harmonic means.

    s_bar[j] is the arithmetic mean of column j and r_bar[j] the
    harmonic mean; s_bar >= r_bar componentwise by the AM-HM
    inequality, with equality only for constant columns.
    """

    def __init__(self, data):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise ValueError("data must be a 2-D array")
        if data.shape[0] < 2:
            raise ValueError("need at least two observations")
        if data.shape[1] < 2:
            raise ValueError("need at least two columns")
        if np.any(~np.isfinite(data)) or np.any(data <= 0.0):
            raise ValueError("all entries must be positive and finite")
        self.data = data.copy()
        self.data.flags.writeable = False
        self.s_bar = data.mean(axis=0)
        self.r_bar = 1.0 / (1.0 / data).mean(axis=0)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def p(self) -> int:
        return self.data.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j]


@dataclass(frozen=True)
class MomentEstimates:
    """Modified moment estimates of the marginal parameters."""

    alphas: tuple
    betas: tuple


def mme(sample: SampleMatrix) -> MomentEstimates:
    """Modified moment estimators per margin.

    alpha_check = sqrt(2 (sqrt(s_bar / r_bar) - 1)), beta_check =
    sqrt(s_bar r_bar). Degenerate (constant) columns give alpha = 0,
    which is flagged as an error since it leaves the BS family.
    """
    ratio = np.sqrt(sample.s_bar / sample.r_bar) - 1.0
    if np.any(ratio <= 0.0):
        raise ValueError("a column is constant; moment estimates degenerate")
    alphas = np.sqrt(2.0 * ratio)
    betas = np.sqrt(sample.s_bar * sample.r_bar)
    return MomentEstimates(tuple(alphas), tuple(betas))


@dataclass(frozen=True)
class LikelihoodWorkspace:
    """Per-observation quantities shared by the likelihood derivatives.

    a is the matrix of standardized scores, d_ji = sqrt(alpha_j^2
    a_ji^2 + 4) (equal to sqrt(t/beta) + sqrt(beta/t)), prod_a the row
    products, u = lambda * prod_a and w the inverse Mills ratio at u.
    """

    a: np.ndarray
    d: np.ndarray
    prod_a: np.ndarray
    u: np.ndarray
    w: np.ndarray

    @classmethod
    def build(cls, params: SmvbsParams, data: np.ndarray) -> "LikelihoodWorkspace":
        data = np.asarray(data, dtype=float)
        alphas = np.asarray(params.alphas)
        a = (np.sqrt(data / params.betas) - np.sqrt(np.asarray(params.betas) / data)) / alphas
        d = np.sqrt((alphas * a) ** 2 + 4.0)
        prod_a = np.prod(a, axis=1)
        u = params.lam * prod_a
        return cls(a=a, d=d, prod_a=prod_a, u=u, w=_wfun(u))


def _check_shapes(params: SmvbsParams, sample: SampleMatrix):
    if sample.p != params.p:
        raise ValueError("sample and parameter dimensions differ")


def loglik(params: SmvbsParams, sample: SampleMatrix) -> float:
    """Constant-free log likelihood (see module docstring)."""
    _check_shapes(params, sample)
    X = sample.data
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    ws = LikelihoodWorkspace.build(params, X)
    return float(
        -sample.n * (np.log(alphas) + 0.5 * np.log(betas)).sum()
        + np.log(X + betas).sum()
        - 0.5 * (ws.a * ws.a).sum()
        + log_std_normal_cdf(ws.u).sum()
    )


def score(params: SmvbsParams, sample: SampleMatrix) -> np.ndarray:
    """Gradient of the constant-free log likelihood."""
    _check_shapes(params, sample)
    X = sample.data
    p = params.p
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    lam = params.lam
    ws = LikelihoodWorkspace.build(params, X)
    a, d, P, w = ws.a, ws.d, ws.prod_a, ws.w
    g = np.empty(2 * p + 1)
    wP = w * P
    for j in range(p):
        P_j = np.prod(np.delete(a, j, axis=1), axis=1)
        g[j] = ((a[:, j] ** 2 - 1.0).sum() - lam * wP.sum()) / alphas[j]
        g[p + j] = (
            -sample.n / (2.0 * betas[j])
            + (1.0 / (X[:, j] + betas[j])).sum()
            + (a[:, j] * d[:, j]).sum() / (2.0 * alphas[j] * betas[j])
            - lam * (w * d[:, j] * P_j).sum() / (2.0 * alphas[j] * betas[j])
        )
    g[2 * p] = wP.sum()
    return g


def observed_info(params: SmvbsParams, sample: SampleMatrix) -> np.ndarray:
    """Observed information: minus the analytic Hessian of ``loglik``."""
    _check_shapes(params, sample)
    X = sample.data
    p = params.p
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    lam = params.lam
    ws = LikelihoodWorkspace.build(params, X)
    a, d, P, w = ws.a, ws.d, ws.prod_a, ws.w
    s = ws.u * w + w * w  # -d/du of the inverse Mills ratio
    H = np.zeros((2 * p + 1, 2 * p + 1))
    P_excl = [np.prod(np.delete(a, j, axis=1), axis=1) for j in range(p)]
    wP = w * P
    sP2 = s * P * P
    for j in range(p):
        aj, dj, Pj = a[:, j], d[:, j], P_excl[j]
        H[j, j] = (
            (1.0 - 3.0 * aj**2).sum() + 2.0 * lam * wP.sum() - lam**2 * sP2.sum()
        ) / alphas[j] ** 2
        for k in range(j + 1, p):
            H[j, k] = H[k, j] = (
                lam * (wP - lam * sP2).sum() / (alphas[j] * alphas[k])
            )
        # mixed alpha_i beta_j rows: the same skew part for every i,
        # plus a delta term when i == j
        skew = (-(lam**2) * s * dj * Pj * P + lam * w * dj * Pj).sum()
        for i in range(p):
            v = skew / (2.0 * alphas[i] * alphas[j] * betas[j])
            if i == j:
                v -= (aj * dj).sum() / (alphas[j] ** 2 * betas[j])
            H[i, p + j] = H[p + j, i] = v
        H[p + j, p + j] = (
            0.5 * sample.n / betas[j] ** 2
            - (1.0 / (X[:, j] + betas[j]) ** 2).sum()
            - X[:, j].sum() / (alphas[j] ** 2 * betas[j] ** 3)
            - lam**2 * (s * dj**2 * Pj**2).sum() / (4.0 * alphas[j] ** 2 * betas[j] ** 2)
            + lam * wP.sum() / (4.0 * betas[j] ** 2)
            + lam * (w * dj * Pj).sum() / (2.0 * alphas[j] * betas[j] ** 2)
        )
        H[j, 2 * p] = H[2 * p, j] = -(wP - lam * sP2).sum() / alphas[j]
        H[p + j, 2 * p] = H[2 * p, p + j] = (
            -(dj * Pj * (w - lam * P * s)).sum() / (2.0 * alphas[j] * betas[j])
        )
        for k in range(j + 1, p):
            Pjk = np.prod(np.delete(a, [j, k], axis=1), axis=1)
            v = (
                -(lam**2) * (s * dj * d[:, k] * Pj * P_excl[k]).sum()
                + lam * (w * dj * d[:, k] * Pjk).sum()
            ) / (4.0 * alphas[j] * betas[j] * alphas[k] * betas[k])
            H[p + j, p + k] = H[p + k, p + j] = v
    H[2 * p, 2 * p] = -sP2.sum()
    return -H


def alpha_given_beta(betas, sample: SampleMatrix) -> np.ndarray:
    """Profile alpha at fixed beta under the independence restriction.

    alpha_hat_j(beta_j) = sqrt(s_bar_j / beta_j + beta_j / r_bar_j - 2).
    """
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    if betas.size != sample.p or np.any(betas <= 0.0):
        raise ValueError("betas must be positive, one per margin")
    arg = sample.s_bar / betas + betas / sample.r_bar - 2.0
    return np.sqrt(np.maximum(arg, 0.0))


def profile_loglik(betas, sample: SampleMatrix) -> float:
    """Restricted (lambda = 0) log likelihood profiled over alpha."""
    alphas = alpha_given_beta(betas, sample)
    if np.any(alphas <= 0.0):
        raise ValueError("profile alpha degenerate at this beta")
    params = SmvbsParams(tuple(alphas), tuple(np.atleast_1d(betas)), 0.0)
    return loglik(params, sample)


@dataclass(frozen=True)
class FitResult:
    """Outcome of a likelihood fit."""

    params: SmvbsParams
    loglik: float
    converged: bool
    iterations: int
    score_norm: float
    step_norm: float
    fixed_lambda: float | None = None
    starts: tuple = ()


def _pack(theta: np.ndarray, p: int, fix_lam: bool) -> np.ndarray:
    eta = np.concatenate([np.log(theta[: 2 * p]), theta[2 * p :]])
    return eta[: 2 * p] if fix_lam else eta


def _unpack(eta: np.ndarray, p: int, fix_lam: bool, lam_value: float) -> np.ndarray:
    theta = np.empty(2 * p + 1)
    theta[: 2 * p] = np.exp(eta[: 2 * p])
    theta[2 * p] = lam_value if fix_lam else eta[2 * p]
    return theta


def _theta_to_params(theta: np.ndarray, p: int) -> SmvbsParams:
    return SmvbsParams(tuple(theta[:p]), tuple(theta[p : 2 * p]), theta[2 * p])


def _free_scale(theta: np.ndarray, p: int, fix_lam: bool) -> np.ndarray:
    # d theta / d eta for the log-transformed coordinates
    scale = np.concatenate([theta[: 2 * p], [1.0]])
    return scale[: 2 * p] if fix_lam else scale


def _lambda_warm_start(theta0: np.ndarray, sample: SampleMatrix, p: int) -> float:
    """Maximize the likelihood over lambda alone at fixed alpha, beta.

    The conditional log likelihood is strictly concave in lambda
    (its second derivative is -sum P_i^2 s_i with s_i > 0), so a
    safeguarded Newton iteration finds the unique stationary point
    whenever one exists. Without this step, extreme lambda starts can
    drag the joint optimizer into a spurious basin where beta leaves
    the data range and lambda runs away.
    """
    a = np.column_stack(
        [
            a_transform(sample.column(j), theta0[j], theta0[p + j])
            for j in range(p)
        ]
    )
    prod_a = np.prod(a, axis=1)
    lam = float(theta0[-1])
    g = float(np.sum(_wfun(lam * prod_a) * prod_a))
    for _ in range(80):
        if abs(g) <= 1e-10 or abs(lam) > 60.0:
            break
        u = lam * prod_a
        w = _wfun(u)
        s = u * w + w * w
        h = -float(np.sum(prod_a * prod_a * s))
        step = np.clip(-g / h, -5.0, 5.0)
        t = 1.0
        for _ in range(30):
            g_new = float(np.sum(_wfun((lam + t * step) * prod_a) * prod_a))
            if abs(g_new) < abs(g):
                break
            t *= 0.5
        lam += t * step
        g = g_new
    return lam


def _fit_from(theta0, sample: SampleMatrix, fix_lambda, max_iter: int) -> FitResult:
    p = sample.p
    fix_lam = fix_lambda is not None
    lam_value = float(fix_lambda) if fix_lam else 0.0
    nfree = 2 * p if fix_lam else 2 * p + 1
    if not fix_lam:
        theta0 = np.asarray(theta0, dtype=float).copy()
        theta0[-1] = _lambda_warm_start(theta0, sample, p)

    def negll_and_grad(eta):
        theta = _unpack(eta, p, fix_lam, lam_value)
        params = _theta_to_params(theta, p)
        g = score(params, sample)[:nfree] * _free_scale(theta, p, fix_lam)
        return -loglik(params, sample), -g

    res = optimize.minimize(
        negll_and_grad,
        _pack(np.asarray(theta0, dtype=float), p, fix_lam),
        jac=True,
        method="BFGS",
        options={"gtol": 1e-9, "maxiter": max_iter},
    )
    eta = res.x
    iterations = int(res.nit)

    # Newton polish until the original-scale score and the step are
    # both below tolerance; BFGS alone does not certify that.
    step_inf = np.inf
    for _ in range(100):
        theta = _unpack(eta, p, fix_lam, lam_value)
        params = _theta_to_params(theta, p)
        g_theta = score(params, sample)[:nfree]
        score_inf = np.abs(g_theta).max()
        if score_inf <= _SCORE_TOL and step_inf <= _STEP_TOL:
            break
        scale = _free_scale(theta, p, fix_lam)
        g_eta = g_theta * scale
        H_theta = -observed_info(params, sample)[:nfree, :nfree]
        H_eta = H_theta * np.outer(scale, scale)
        idx = np.arange(2 * p)  # chain-rule term for the log coordinates
        H_eta[idx, idx] += g_theta[: 2 * p] * scale[: 2 * p]
        try:
            step = linalg.solve(-H_eta, g_eta, assume_a="sym")
        except linalg.LinAlgError:
            step = g_eta / (1.0 + np.abs(g_eta).max())
        if not np.isfinite(step).all() or g_eta @ step <= 0.0:
            step = g_eta / (1.0 + np.abs(g_eta).max())
        base = loglik(params, sample)
        t = 1.0
        for _ in range(40):
            trial = eta + t * step
            theta_t = _unpack(trial, p, fix_lam, lam_value)
            if np.isfinite(theta_t).all() and theta_t[: 2 * p].min() > 0.0:
                ll = loglik(_theta_to_params(theta_t, p), sample)
                if ll >= base - 1e-13 * max(1.0, abs(base)):
                    break
            t *= 0.5
        new_theta = _unpack(eta + t * step, p, fix_lam, lam_value)
        step_inf = np.abs(new_theta - theta).max()
        eta = eta + t * step
        iterations += 1
        if step_inf == 0.0 and score_inf > _SCORE_TOL:
            break  # stalled

    theta = _unpack(eta, p, fix_lam, lam_value)
    params = _theta_to_params(theta, p)
    g_theta = score(params, sample)[:nfree]
    score_inf = float(np.abs(g_theta).max())
    converged = score_inf <= _SCORE_TOL and step_inf <= _STEP_TOL
    return FitResult(
        params=params,
        loglik=loglik(params, sample),
        converged=bool(converged),
        iterations=iterations,
        score_norm=score_inf,
        step_norm=float(step_inf),
        fixed_lambda=fix_lambda,
    )


_MULTI_START_LAMBDAS = (-5.0, -2.0, 0.0, 3.0, 4.0)


def mle(
    sample: SampleMatrix,
    fix_lambda: float | None = None,
    start: SmvbsParams | None = None,
    multi_start: bool = False,
    max_iter: int = 500,
) -> FitResult:
    """Maximum likelihood fit of the SMVBS model.

    Optimizes over (log alpha, log beta, lambda) with the analytic
    gradient, then takes safeguarded Newton steps until the original
    scale score has sup norm at most 1e-8 and the last step moved no
    parameter by more than 1e-10. Moment estimates seed alpha and beta;
    lambda starts at 0, or at each of {-5, -2, 0, 3, 4} under
    ``multi_start`` (the best fit is returned, all runs attached).
    ``fix_lambda`` pins lambda for restricted fits.
    """
    if multi_start and fix_lambda is not None:
        raise ValueError("multi_start and fix_lambda are mutually exclusive")
    if start is not None:
        theta0 = start.as_vector()
    else:
        m = mme(sample)
        theta0 = np.concatenate([m.alphas, m.betas, [0.0]])
    if not multi_start:
        return _fit_from(theta0, sample, fix_lambda, max_iter)
    runs = []
    for lam0 in _MULTI_START_LAMBDAS:
        t0 = theta0.copy()
        t0[-1] = lam0
        runs.append(_fit_from(t0, sample, None, max_iter))
    best = max(runs, key=lambda r: r.loglik)
    return FitResult(
        params=best.params,
        loglik=best.loglik,
        converged=best.converged,
        iterations=best.iterations,
        score_norm=best.score_norm,
        step_norm=best.step_norm,
        fixed_lambda=None,
        starts=tuple(runs),
    )


@dataclass(frozen=True)
class ExpectedInfo:
    """Expected information matrix with per-element Monte Carlo errors."""

    matrix: np.ndarray
    mc_se: np.ndarray
    draws: int


def _expected_info_lambda_zero(params: SmvbsParams, n: int) -> np.ndarray:
    p = params.p
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    S = np.zeros((2 * p + 1, 2 * p + 1))
    K = k_alpha(alphas)
    S[np.arange(p), np.arange(p)] = 2.0 / alphas**2
    S[np.arange(p, 2 * p), np.arange(p, 2 * p)] = (alphas * K + 1.0) / (
        alphas**2 * betas**2
    )
    S[2 * p, 2 * p] = 2.0 / math.pi
    return n * S


def expected_info(
    params: SmvbsParams,
    n: int,
    mc_draws: int = 200_000,
    rng=None,
) -> ExpectedInfo:
    """Expected (Fisher) information for n observations.

    At lambda = 0 the matrix is exact and diagonal:
    diag(2/alpha_j^2, (alpha_j K(alpha_j) + 1)/(alpha_j beta_j)^2, 2/pi)
    per observation. Otherwise the closed-form pieces are combined with
    Monte Carlo bracket moments computed from ``mc_draws`` latent
    vectors (bivariate case only). Odd brackets vanish identically
    under the sign-orbit average, which makes the alpha-beta and
    beta-lambda blocks exact zeros; mc_se reports the per-element
    standard error of what remains. When rng is None a fixed default
    seed keeps the evaluation deterministic.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = params.p
    dim = 2 * p + 1
    if params.lam == 0.0:
        return ExpectedInfo(
            _expected_info_lambda_zero(params, n), np.zeros((dim, dim)), 0
        )
    if p != 2:
        raise NotImplementedError(
            "Monte Carlo expected information is implemented for p = 2"
        )
    if mc_draws < 1000:
        raise ValueError("mc_draws must be at least 1000")
    rng = as_generator(_DEFAULT_MC_SEED if rng is None else rng)
    alphas = np.asarray(params.alphas)
    betas = np.asarray(params.betas)
    lam = params.lam

    draws = int(mc_draws)
    z1 = rng.standard_normal(draws)
    w0 = np.abs(rng.standard_normal(draws))
    w1 = rng.standard_normal(draws)
    c = lam * z1
    delta = c / np.sqrt(1.0 + c * c)
    z2 = delta * w0 + np.sqrt(1.0 - delta * delta) * w1
    Z = np.stack([z1, z2], axis=1)
    D = np.sqrt((alphas * Z) ** 2 + 4.0)  # invariant under sign flips

    # Orbit-averaged bracket moments. Each per-draw value is the
    # average of the bracket over the four sign patterns of (z1, z2),
    # weighted by the conditional probability Phi(lambda a1 a2)/2 of
    # each pattern; the average is exact in the signs, so only the
    # even-in-sign brackets survive.
    per = {k: np.zeros(draws) for k in ("G", "C1", "C2", "Dd", "E2", "F")}
    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        a1, a2 = s1 * z1, s2 * z2
        P = a1 * a2
        u = lam * P
        wgt = special.ndtr(u) / 2.0
        w = _wfun(u)
        per["G"] += wgt * (w * P) ** 2
        per["C1"] += wgt * (w * D[:, 0] * a2) ** 2
        per["C2"] += wgt * (w * D[:, 1] * a1) ** 2
        per["Dd"] += wgt * w * D[:, 0] * D[:, 1]
        per["E2"] += wgt * w * D[:, 0] * D[:, 1] * P * P
        per["F"] += wgt * w * w * D[:, 0] * D[:, 1] * P

    def mean_se(x):
        return float(x.mean()), float(x.std(ddof=1) / math.sqrt(draws))

    G, se_G = mean_se(per["G"])
    C = [None, None]
    se_C = [None, None]
    C[0], se_C[0] = mean_se(per["C1"])
    C[1], se_C[1] = mean_se(per["C2"])
    cross_draws = (lam**3 * per["E2"] + lam**2 * per["F"] - lam * per["Dd"]) / (
        4.0 * alphas[0] * betas[0] * alphas[1] * betas[1]
    )
    cross, se_cross = mean_se(cross_draws)

    S = np.zeros((dim, dim))
    E = np.zeros((dim, dim))
    for j in range(2):
        k = 1 - j
        S[j, j] = (2.0 + lam**2 * G) / alphas[j] ** 2
        E[j, j] = lam**2 * se_G / alphas[j] ** 2
        S[j, k] = lam**2 * G / (alphas[j] * alphas[k])
        E[j, k] = lam**2 * se_G / (alphas[j] * alphas[k])
        Kj = k_alpha(alphas[j])
        S[2 + j, 2 + j] = (alphas[j] * Kj + 1.0) / (alphas[j] ** 2 * betas[j] ** 2) + (
            lam**2 * C[j] / (4.0 * alphas[j] ** 2 * betas[j] ** 2)
        )
        E[2 + j, 2 + j] = lam**2 * se_C[j] / (4.0 * alphas[j] ** 2 * betas[j] ** 2)
        S[j, 4] = S[4, j] = -lam * G / alphas[j]
        E[j, 4] = E[4, j] = abs(lam) * se_G / alphas[j]
    S[2, 3] = S[3, 2] = cross
    E[2, 3] = E[3, 2] = se_cross
    S[4, 4] = G
    E[4, 4] = se_G
    return ExpectedInfo(n * S, n * E, draws)


def param_names(p: int) -> tuple:
    if p == 2:
        return ("alpha1", "alpha2", "beta1", "beta2", "lambda")
    names = [f"alpha{j + 1}" for j in range(p)]
    names += [f"beta{j + 1}" for j in range(p)]
    return tuple(names + ["lambda"])


@dataclass(frozen=True)
class ParamCi:
    """A Wald confidence interval for one parameter."""

    name: str
    estimate: float
    se: float
    lower: float
    upper: float

    @property
    def half_width(self) -> float:
        return (self.upper - self.lower) / 2.0


def confidence_intervals(
    params: SmvbsParams,
    sample: SampleMatrix | None = None,
    n: int | None = None,
    level: float = 0.95,
    info: str = "expected",
    mc_draws: int = 200_000,
    rng=None,
) -> list:
    """Wald intervals from the observed or expected information.

    ``info`` selects the matrix: "observed" needs the sample,
    "expected" needs n (taken from the sample when present).
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie strictly between 0 and 1")
    if info == "observed":
        if sample is None:
            raise ValueError("observed information needs the sample")
        matrix = observed_info(params, sample)
    elif info == "expected":
        if n is None:
            if sample is None:
                raise ValueError("expected information needs n or the sample")
            n = sample.n
        matrix = expected_info(params, n, mc_draws=mc_draws, rng=rng).matrix
    else:
        raise ValueError("info must be 'observed' or 'expected'")
    cov = linalg.inv(matrix)
    variances = np.diag(cov)
    if np.any(variances <= 0.0):
        raise ValueError("information matrix is not positive definite")
    se = np.sqrt(variances)
    z = special.ndtri(0.5 * (1.0 + level))
    theta = params.as_vector()
    names = param_names(params.p)
    return [
        ParamCi(
            name=names[k],
            estimate=float(theta[k]),
            se=float(se[k]),
            lower=float(theta[k] - z * se[k]),
            upper=float(theta[k] + z * se[k]),
        )
        for k in range(theta.size)
    ]
