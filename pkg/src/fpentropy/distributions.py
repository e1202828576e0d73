"""Probability distributions with the closed forms the entropy engine needs.

Each family provides a numerically stable pdf/cdf/sf triple, differential
entropy and E[log2|X|] in closed form (bits), exact scaling (the law of
s*X), sampling via a numpy Generator, and two pieces of shape metadata the
error-bound machinery relies on: the interior points where the density
changes monotonicity, and the points where it is unbounded.

Densities evaluate to 0.0 on and outside the boundary of their open
support; unbounded endpoints are reported through singular_points() rather
than by evaluating the pdf there.
"""

from __future__ import annotations

import abc
import math
from typing import Sequence

import numpy as np

from .special import beta_fn, beta_inc, digamma, erfc, gamma_p, gamma_q, lgamma

__all__ = [
    "Distribution",
    "Gaussian",
    "Uniform",
    "Laplace",
    "Logistic",
    "Weibull",
    "Lognormal",
    "Pareto",
    "Gamma",
    "ChiSquared",
    "Beta",
    "StudentT",
    "ScaledDistribution",
    "MultivariateGaussian",
    "parse_distribution",
    "FAMILIES",
]

_LOG2E = math.log2(math.e)          # 1.4426950408889634
_EULER = 0.5772156649015329          # Euler-Mascheroni constant
_SQRT2 = math.sqrt(2.0)


def _exp(v: float) -> float:
    # densities near integrable singularities can push exp past the
    # float64 range; saturate instead of raising
    if v > 709.0:
        return math.inf
    return math.exp(v)


def _pow_sat(z: float, k: float) -> float:
    # z**k for z > 0, saturating instead of raising past float64 range
    try:
        return z**k
    except OverflowError:
        return math.inf


class Distribution(abc.ABC):
    """Scalar continuous distribution."""

    name: str = "distribution"

    @abc.abstractmethod
    def pdf(self, x: float) -> float: ...

    @abc.abstractmethod
    def cdf(self, x: float) -> float: ...

    @abc.abstractmethod
    def sf(self, x: float) -> float: ...

    @abc.abstractmethod
    def entropy_bits(self) -> float:
        """Differential entropy in bits."""

    @abc.abstractmethod
    def expected_log2_abs(self) -> float:
        """E[log2 |X|]."""

    @abc.abstractmethod
    def with_scale(self, s: float) -> "Distribution":
        """The law of s * X, s > 0."""

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray: ...

    @abc.abstractmethod
    def params(self) -> dict[str, float]: ...

    @property
    @abc.abstractmethod
    def support(self) -> tuple[float, float]:
        """Open interval carrying all the mass."""

    def pdf_breakpoints(self) -> list[float]:
        """Interior points where the density changes monotonicity."""
        return []

    def singular_points(self) -> list[float]:
        """Points where the density is unbounded."""
        return []

    def interval_mass(self, a: float, b: float) -> float:
        """P(a < X <= b), computed from whichever tail is smaller."""
        if not b > a:
            return 0.0
        fb = self.cdf(b)
        if fb <= 0.5:
            return max(fb - self.cdf(a), 0.0)
        sa = self.sf(a)
        if sa <= 0.5:
            return max(sa - self.sf(b), 0.0)
        return max(fb - self.cdf(a), 0.0)

    def spec_string(self) -> str:
        inner = ",".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.name}:{inner}" if inner else self.name

    def __repr__(self) -> str:
        return self.spec_string()


def _check_positive(**kwargs: float) -> None:
    for k, v in kwargs.items():
        if not (math.isfinite(v) and v > 0.0):
            raise ValueError(f"{k} must be finite and > 0, got {v}")


class Gaussian(Distribution):
    """N(0, sigma^2)."""

    name = "gaussian"

    def __init__(self, sigma: float = 1.0):
        _check_positive(sigma=sigma)
        self.sigma = float(sigma)

    def pdf(self, x: float) -> float:
        z = x / self.sigma
        return _exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))

    def cdf(self, x: float) -> float:
        return 0.5 * erfc(-x / (self.sigma * _SQRT2))

    def sf(self, x: float) -> float:
        return 0.5 * erfc(x / (self.sigma * _SQRT2))

    def entropy_bits(self) -> float:
        return 0.5 * math.log2(2.0 * math.pi * math.e) + math.log2(self.sigma)

    def expected_log2_abs(self) -> float:
        # E[ln |Z|] = -(EULER + ln 2) / 2 for standard normal
        return math.log2(self.sigma) - (_EULER + math.log(2.0)) / (2.0 * math.log(2.0))

    def with_scale(self, s: float) -> "Gaussian":
        _check_positive(s=s)
        return Gaussian(self.sigma * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.normal(0.0, self.sigma, n)

    def params(self) -> dict[str, float]:
        return {"sigma": self.sigma}

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        return [0.0]


class Uniform(Distribution):
    """Uniform(a, b)."""

    name = "uniform"

    def __init__(self, a: float = -1.0, b: float = 1.0):
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"need finite a < b, got a={a}, b={b}")
        self.a = float(a)
        self.b = float(b)

    def pdf(self, x: float) -> float:
        return 1.0 / (self.b - self.a) if self.a < x < self.b else 0.0

    def cdf(self, x: float) -> float:
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        return (x - self.a) / (self.b - self.a)

    def sf(self, x: float) -> float:
        if x <= self.a:
            return 1.0
        if x >= self.b:
            return 0.0
        return (self.b - x) / (self.b - self.a)

    def entropy_bits(self) -> float:
        return math.log2(self.b - self.a)

    def expected_log2_abs(self) -> float:
        # antiderivative of log2|x| is x log2|x| - x log2(e)
        def term(x: float) -> float:
            return 0.0 if x == 0.0 else x * math.log2(abs(x))

        return (term(self.b) - term(self.a)) / (self.b - self.a) - _LOG2E

    def with_scale(self, s: float) -> "Uniform":
        _check_positive(s=s)
        return Uniform(self.a * s, self.b * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.a, self.b, n)

    def params(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b}

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)


class Laplace(Distribution):
    """Laplace(0, b)."""

    name = "laplace"

    def __init__(self, b: float = 1.0):
        _check_positive(b=b)
        self.b = float(b)

    def pdf(self, x: float) -> float:
        return _exp(-abs(x) / self.b) / (2.0 * self.b)

    def cdf(self, x: float) -> float:
        if x < 0.0:
            return 0.5 * _exp(x / self.b)
        return 1.0 - 0.5 * _exp(-x / self.b)

    def sf(self, x: float) -> float:
        if x > 0.0:
            return 0.5 * _exp(-x / self.b)
        return 1.0 - 0.5 * _exp(x / self.b)

    def entropy_bits(self) -> float:
        return 1.0 + math.log2(self.b) + _LOG2E

    def expected_log2_abs(self) -> float:
        # |X|/b is Exponential(1); E[ln Exponential(1)] = -EULER
        return math.log2(self.b) - _EULER * _LOG2E

    def with_scale(self, s: float) -> "Laplace":
        _check_positive(s=s)
        return Laplace(self.b * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.laplace(0.0, self.b, n)

    def params(self) -> dict[str, float]:
        return {"b": self.b}

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        return [0.0]


class Logistic(Distribution):
    """Logistic(0, s)."""

    name = "logistic"

    def __init__(self, s: float = 1.0):
        _check_positive(s=s)
        self.s = float(s)

    def pdf(self, x: float) -> float:
        z = abs(x) / self.s
        e = _exp(-z)
        return e / (self.s * (1.0 + e) ** 2)

    def cdf(self, x: float) -> float:
        if x >= 0.0:
            return 1.0 / (1.0 + _exp(-x / self.s))
        e = _exp(x / self.s)
        return e / (1.0 + e)

    def sf(self, x: float) -> float:
        return self.cdf(-x)

    def entropy_bits(self) -> float:
        return math.log2(self.s) + 2.0 * _LOG2E

    def expected_log2_abs(self) -> float:
        return math.log2(self.s) + (math.log(math.pi / 2.0) - _EULER) * _LOG2E

    def with_scale(self, s: float) -> "Logistic":
        _check_positive(s=s)
        return Logistic(self.s * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.logistic(0.0, self.s, n)

    def params(self) -> dict[str, float]:
        return {"s": self.s}

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        return [0.0]


class Weibull(Distribution):
    """Weibull(k, lam): shape k, scale lam, support (0, inf)."""

    name = "weibull"

    def __init__(self, k: float = 1.0, lam: float = 1.0):
        _check_positive(k=k, lam=lam)
        self.k = float(k)
        self.lam = float(lam)

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        z = x / self.lam
        return _exp(
            math.log(self.k / self.lam)
            + (self.k - 1.0) * math.log(z)
            - _pow_sat(z, self.k)
        )

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return -math.expm1(-_pow_sat(x / self.lam, self.k))

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return _exp(-_pow_sat(x / self.lam, self.k))

    def entropy_bits(self) -> float:
        return (
            (_EULER * (1.0 - 1.0 / self.k) + 1.0) * _LOG2E
            + math.log2(self.lam / self.k)
        )

    def expected_log2_abs(self) -> float:
        return math.log2(self.lam) - _EULER * _LOG2E / self.k

    def with_scale(self, s: float) -> "Weibull":
        _check_positive(s=s)
        return Weibull(self.k, self.lam * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.lam * rng.weibull(self.k, n)

    def params(self) -> dict[str, float]:
        return {"k": self.k, "lam": self.lam}

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        if self.k > 1.0:
            return [self.lam * ((self.k - 1.0) / self.k) ** (1.0 / self.k)]
        return []

    def singular_points(self) -> list[float]:
        return [0.0] if self.k < 1.0 else []


class Lognormal(Distribution):
    """Lognormal(mu, sigma): ln X ~ N(mu, sigma^2)."""

    name = "lognormal"

    def __init__(self, mu: float = 0.0, sigma: float = 1.0):
        _check_positive(sigma=sigma)
        if not math.isfinite(mu):
            raise ValueError(f"mu must be finite, got {mu}")
        self.mu = float(mu)
        self.sigma = float(sigma)

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        z = (math.log(x) - self.mu) / self.sigma
        return _exp(-0.5 * z * z - math.log(x)) / (
            self.sigma * math.sqrt(2.0 * math.pi)
        )

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        z = (math.log(x) - self.mu) / self.sigma
        return 0.5 * erfc(-z / _SQRT2)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        z = (math.log(x) - self.mu) / self.sigma
        return 0.5 * erfc(z / _SQRT2)

    def entropy_bits(self) -> float:
        return self.mu * _LOG2E + math.log2(
            self.sigma * math.sqrt(2.0 * math.pi * math.e)
        )

    def expected_log2_abs(self) -> float:
        return self.mu * _LOG2E

    def with_scale(self, s: float) -> "Lognormal":
        _check_positive(s=s)
        return Lognormal(self.mu + math.log(s), self.sigma)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.lognormal(self.mu, self.sigma, n)

    def params(self) -> dict[str, float]:
        return {"mu": self.mu, "sigma": self.sigma}

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        return [math.exp(self.mu - self.sigma * self.sigma)]


class Pareto(Distribution):
    """Pareto(alpha, xm): P(X > x) = (xm/x)^alpha for x >= xm."""

    name = "pareto"

    def __init__(self, alpha: float = 1.0, xm: float = 1.0):
        _check_positive(alpha=alpha, xm=xm)
        self.alpha = float(alpha)
        self.xm = float(xm)

    def pdf(self, x: float) -> float:
        if x <= self.xm:
            return 0.0
        return _exp(
            math.log(self.alpha)
            + self.alpha * math.log(self.xm)
            - (self.alpha + 1.0) * math.log(x)
        )

    def cdf(self, x: float) -> float:
        if x <= self.xm:
            return 0.0
        return -math.expm1(self.alpha * math.log(self.xm / x))

    def sf(self, x: float) -> float:
        if x <= self.xm:
            return 1.0
        return _exp(self.alpha * math.log(self.xm / x))

    def entropy_bits(self) -> float:
        return math.log2(self.xm / self.alpha) + (1.0 + 1.0 / self.alpha) * _LOG2E

    def expected_log2_abs(self) -> float:
        return math.log2(self.xm) + _LOG2E / self.alpha

    def with_scale(self, s: float) -> "Pareto":
        _check_positive(s=s)
        return Pareto(self.alpha, self.xm * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        # classical Pareto = xm * (1 + Lomax)
        return self.xm * (1.0 + rng.pareto(self.alpha, n))

    def params(self) -> dict[str, float]:
        return {"alpha": self.alpha, "xm": self.xm}

    @property
    def support(self) -> tuple[float, float]:
        return (self.xm, math.inf)


class Gamma(Distribution):
    """Gamma(alpha, theta): shape alpha, scale theta."""

    name = "gamma"

    def __init__(self, alpha: float = 1.0, theta: float = 1.0):
        _check_positive(alpha=alpha, theta=theta)
        self.alpha = float(alpha)
        self.theta = float(theta)

    def pdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return _exp(
            (self.alpha - 1.0) * math.log(x)
            - x / self.theta
            - lgamma(self.alpha)
            - self.alpha * math.log(self.theta)
        )

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return gamma_p(self.alpha, x / self.theta)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return gamma_q(self.alpha, x / self.theta)

    def entropy_bits(self) -> float:
        a = self.alpha
        return (a + lgamma(a) + (1.0 - a) * digamma(a)) * _LOG2E + math.log2(
            self.theta
        )

    def expected_log2_abs(self) -> float:
        return digamma(self.alpha) * _LOG2E + math.log2(self.theta)

    def with_scale(self, s: float) -> "Gamma":
        _check_positive(s=s)
        return Gamma(self.alpha, self.theta * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.gamma(self.alpha, self.theta, n)

    def params(self) -> dict[str, float]:
        return {"alpha": self.alpha, "theta": self.theta}

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        if self.alpha > 1.0:
            return [(self.alpha - 1.0) * self.theta]
        return []

    def singular_points(self) -> list[float]:
        return [0.0] if self.alpha < 1.0 else []


class ChiSquared(Gamma):
    """chi^2 with k degrees of freedom = Gamma(k/2, 2)."""

    name = "chi_squared"

    def __init__(self, k: float = 2.0):
        _check_positive(k=k)
        self.k = float(k)
        super().__init__(alpha=self.k / 2.0, theta=2.0)

    def with_scale(self, s: float) -> Gamma:
        _check_positive(s=s)
        return Gamma(self.alpha, self.theta * s)

    def params(self) -> dict[str, float]:
        return {"k": self.k}


class Beta(Distribution):
    """Beta(alpha, beta) on (0, 1)."""

    name = "beta"

    def __init__(self, alpha: float = 2.0, beta: float = 2.0):
        _check_positive(alpha=alpha, beta=beta)
        self.alpha = float(alpha)
        self.beta = float(beta)

    def pdf(self, x: float) -> float:
        if not 0.0 < x < 1.0:
            return 0.0
        return _exp(
            (self.alpha - 1.0) * math.log(x)
            + (self.beta - 1.0) * math.log1p(-x)
            - math.log(beta_fn(self.alpha, self.beta))
        )

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return beta_inc(self.alpha, self.beta, x)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        if x >= 1.0:
            return 0.0
        return beta_inc(self.beta, self.alpha, 1.0 - x)

    def entropy_bits(self) -> float:
        a, b = self.alpha, self.beta
        return (
            math.log(beta_fn(a, b))
            - (a - 1.0) * digamma(a)
            - (b - 1.0) * digamma(b)
            + (a + b - 2.0) * digamma(a + b)
        ) * _LOG2E

    def expected_log2_abs(self) -> float:
        return (digamma(self.alpha) - digamma(self.alpha + self.beta)) * _LOG2E

    def with_scale(self, s: float) -> Distribution:
        _check_positive(s=s)
        return ScaledDistribution(self, s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.beta(self.alpha, self.beta, n)

    def params(self) -> dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta}

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def pdf_breakpoints(self) -> list[float]:
        a, b = self.alpha, self.beta
        if a > 1.0 and b > 1.0:
            return [(a - 1.0) / (a + b - 2.0)]   # mode
        if a < 1.0 and b < 1.0:
            return [(1.0 - a) / (2.0 - a - b)]   # interior minimum
        return []

    def singular_points(self) -> list[float]:
        pts = []
        if self.alpha < 1.0:
            pts.append(0.0)
        if self.beta < 1.0:
            pts.append(1.0)
        return pts


class StudentT(Distribution):
    """Student t with nu degrees of freedom and scale s, centered at 0."""

    name = "student_t"

    def __init__(self, nu: float = 3.0, s: float = 1.0):
        _check_positive(nu=nu, s=s)
        self.nu = float(nu)
        self.s = float(s)

    def pdf(self, x: float) -> float:
        t = x / self.s
        return _exp(
            lgamma((self.nu + 1.0) / 2.0)
            - lgamma(self.nu / 2.0)
            - 0.5 * math.log(self.nu * math.pi)
            - math.log(self.s)
            - 0.5 * (self.nu + 1.0) * math.log1p(t * t / self.nu)
        )

    def _tail(self, x: float) -> float:
        # P(X > |x|), stable far out
        t = x / self.s
        return 0.5 * beta_inc(self.nu / 2.0, 0.5, self.nu / (self.nu + t * t))

    def cdf(self, x: float) -> float:
        if x >= 0.0:
            return 1.0 - self._tail(x)
        return self._tail(-x)

    def sf(self, x: float) -> float:
        return self.cdf(-x)

    def entropy_bits(self) -> float:
        nu = self.nu
        return (
            math.log(self.s * math.sqrt(nu) * beta_fn(nu / 2.0, 0.5))
            + 0.5 * (nu + 1.0) * (digamma((nu + 1.0) / 2.0) - digamma(nu / 2.0))
        ) * _LOG2E

    def expected_log2_abs(self) -> float:
        # X^2 / s^2 ~ F(1, nu)
        nu = self.nu
        return (
            math.log(self.s)
            + 0.5 * (math.log(nu) + digamma(0.5) - digamma(nu / 2.0))
        ) * _LOG2E

    def with_scale(self, s: float) -> "StudentT":
        _check_positive(s=s)
        return StudentT(self.nu, self.s * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.s * rng.standard_t(self.nu, n)

    def params(self) -> dict[str, float]:
        return {"nu": self.nu, "s": self.s}

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def pdf_breakpoints(self) -> list[float]:
        return [0.0]


class ScaledDistribution(Distribution):
    """The law of s * X for a base distribution without a native scale."""

    def __init__(self, base: Distribution, s: float):
        _check_positive(s=s)
        self.base = base
        self.s = float(s)
        self.name = base.name

    def pdf(self, x: float) -> float:
        return self.base.pdf(x / self.s) / self.s

    def cdf(self, x: float) -> float:
        return self.base.cdf(x / self.s)

    def sf(self, x: float) -> float:
        return self.base.sf(x / self.s)

    def entropy_bits(self) -> float:
        return self.base.entropy_bits() + math.log2(self.s)

    def expected_log2_abs(self) -> float:
        return self.base.expected_log2_abs() + math.log2(self.s)

    def with_scale(self, s: float) -> "ScaledDistribution":
        _check_positive(s=s)
        return ScaledDistribution(self.base, self.s * s)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.s * self.base.sample(rng, n)

    def params(self) -> dict[str, float]:
        return {**self.base.params(), "scale": self.s}

    @property
    def support(self) -> tuple[float, float]:
        lo, hi = self.base.support
        return (lo * self.s, hi * self.s)

    def pdf_breakpoints(self) -> list[float]:
        return [self.s * x for x in self.base.pdf_breakpoints()]

    def singular_points(self) -> list[float]:
        return [self.s * x for x in self.base.singular_points()]

    def spec_string(self) -> str:
        return f"{self.base.spec_string()}*{self.s:g}"


class MultivariateGaussian:
    """Centered d-dimensional Gaussian with covariance Sigma.

    Components are quantized independently, so only the covariance, its
    marginal scales and sampling are needed here; the entropy formulas
    live in the entropy module.
    """

    name = "multivariate_gaussian"

    def __init__(self, cov: Sequence[Sequence[float]] | np.ndarray):
        cov = np.asarray(cov, dtype=np.float64)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValueError(f"covariance must be square, got shape {cov.shape}")
        if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-12):
            raise ValueError("covariance must be symmetric")
        eigvals = np.linalg.eigvalsh(cov)
        if eigvals.min() <= 0.0:
            raise ValueError(
                f"covariance must be positive definite, smallest eigenvalue {eigvals.min()}"
            )
        self.cov = cov
        self.eigenvalues = eigvals

    @property
    def dim(self) -> int:
        return self.cov.shape[0]

    def marginals(self) -> list[Gaussian]:
        return [Gaussian(math.sqrt(v)) for v in np.diag(self.cov)]

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        chol = np.linalg.cholesky(self.cov)
        return rng.standard_normal((n, self.dim)) @ chol.T


# ── parsing ──────────────────────────────────────────────────────────────────

FAMILIES: dict[str, type[Distribution]] = {
    cls.name: cls
    for cls in (
        Gaussian,
        Uniform,
        Laplace,
        Logistic,
        Weibull,
        Lognormal,
        Pareto,
        Gamma,
        ChiSquared,
        Beta,
        StudentT,
    )
}


def parse_distribution(spec: str) -> Distribution:
    """Build a distribution from 'name' or 'name:key=value,key=value'."""
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ValueError(f"unknown distribution {name!r}; known: {known}")
    kwargs: dict[str, float] = {}
    if rest.strip():
        for part in rest.split(","):
            key, eq, val = part.partition("=")
            if not eq:
                raise ValueError(
                    f"malformed parameter {part!r}; expected key=value"
                )
            try:
                kwargs[key.strip()] = float(val)
            except ValueError:
                raise ValueError(f"non-numeric value in {part!r}") from None
    try:
        return FAMILIES[name](**kwargs)
    except TypeError:
        raise ValueError(
            f"invalid parameters {sorted(kwargs)} for {name!r}"
        ) from None
