"""Trigonometric core: sampled periodic functions, Fourier coefficients,
summability means and their kernels.

Conventions used throughout the package:

* a 2*pi-periodic function is held as M uniform samples on the grid
  x_j = -pi + 2*pi*j/M with M a power of two,
* Fourier coefficients are c_k = (1/2pi) int f(x) e^{-ikx} dx, realized
  discretely as c_k = (1/M) sum_j f(x_j) e^{-ik x_j} (exact for
  trigonometric polynomials of degree < M/2),
* a summability method is a rule k -> lambda_{n,k} multiplying the
  coefficients; either an explicit triangular matrix or a generator
  profile evaluated at k/n.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument, NotFound

TWO_PI = 2.0 * np.pi


def _is_power_of_two(m):
    return m >= 1 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class SampledFunction:
    """Uniform samples of a 2*pi-periodic function.

    values : array of length M (power of two, M >= 4), finite entries.
    The sample points are x_j = -pi + 2*pi*j/M.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1:
            raise InvalidArgument("values must be one-dimensional")
        if v.size < 4 or not _is_power_of_two(v.size):
            raise InvalidArgument("grid size must be a power of two >= 4")
        if not np.all(np.isfinite(v)):
            raise InvalidArgument("values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def size(self):
        return self.values.size

    @property
    def grid(self):
        m = self.values.size
        return -np.pi + TWO_PI * np.arange(m) / m

    @classmethod
    def from_callable(cls, f, m):
        x = -np.pi + TWO_PI * np.arange(m) / m
        return cls(np.asarray(f(x)))


@dataclass(frozen=True)
class GridNorm:
    """Selects the grid L_p norm; p may be math.inf for the sup norm."""

    p: float = math.inf

    def __post_init__(self):
        if not self.p > 0:
            raise InvalidArgument("norm exponent must be positive")


class TrigCoefficients:
    """Finitely supported Fourier coefficients c_k, |k| <= degree."""

    def __init__(self, degree, coeffs=None):
        if degree < 0:
            raise InvalidArgument("degree must be nonnegative")
        self.degree = int(degree)
        n = 2 * self.degree + 1
        if coeffs is None:
            self.c = np.zeros(n, dtype=complex)
        else:
            c = np.asarray(coeffs, dtype=complex)
            if c.shape != (n,):
                raise InvalidArgument("coefficient array must have length 2*degree+1")
            self.c = c

    def coeff(self, k):
        """c_k, zero outside the stored band."""
        if abs(k) > self.degree:
            return 0j
        return self.c[k + self.degree]

    def set_coeff(self, k, value):
        if abs(k) > self.degree:
            raise InvalidArgument("index outside band")
        self.c[k + self.degree] = value

    def indices(self):
        return np.arange(-self.degree, self.degree + 1)

    def is_real_valued(self, tol=1e-12):
        return np.allclose(self.c, np.conj(self.c[::-1]), atol=tol)

    def copy(self):
        return TrigCoefficients(self.degree, self.c.copy())

    @classmethod
    def from_dict(cls, entries):
        deg = max((abs(k) for k in entries), default=0)
        out = cls(deg)
        for k, v in entries.items():
            out.set_coeff(k, v)
        return out


def compute_coefficients(f, n):
    """Discrete Fourier coefficients of a SampledFunction up to degree n.

    c_k = (1/M) sum_j f(x_j) e^{-ik x_j}; exact for trigonometric
    polynomials of degree < M/2.
    """
    m = f.size
    if 2 * n + 1 > m:
        raise InvalidArgument(f"degree {n} too large for grid of size {m}")
    hat = np.fft.fft(np.asarray(f.values, dtype=complex)) / m
    k = np.arange(-n, n + 1)
    # grid starts at -pi, hence the alternating phase
    c = ((-1.0) ** k) * hat[np.mod(k, m)]
    return TrigCoefficients(n, c)


def synthesize(c, m):
    """Evaluate the trigonometric polynomial with coefficients c on the M-grid."""
    if 2 * c.degree + 1 > m:
        raise InvalidArgument("grid too coarse for this degree")
    a = np.zeros(m, dtype=complex)
    k = np.arange(-c.degree, c.degree + 1)
    a[np.mod(k, m)] = ((-1.0) ** k) * c.c
    return SampledFunction(np.fft.ifft(a) * m)


def grid_norm(f, norm=GridNorm(math.inf)):
    """Riemann-sum L_p norm ((2pi/M) sum |f|^p)^(1/p), sup norm for p=inf."""
    if isinstance(norm, (int, float)):
        norm = GridNorm(float(norm))
    v = np.abs(np.asarray(f.values if isinstance(f, SampledFunction) else f))
    if math.isinf(norm.p):
        return float(np.max(v))
    p = norm.p
    return float(((TWO_PI / v.size) * np.sum(v ** p)) ** (1.0 / p))


# ---------------------------------------------------------------------------
# summability methods
# ---------------------------------------------------------------------------

MATRIX = "matrix"
GENERATOR = "generator"


@dataclass(frozen=True)
class SummabilityMethod:
    """A multiplier rule lambda_{n,k}.

    kind      : MATRIX (explicit rule, zero for |k|>support*n) or GENERATOR
                (profile phi evaluated at k/n, phi(0)=1 for regular methods).
    weight_fn : for MATRIX, callable (n, |k| array) -> weights.
    profile   : for GENERATOR, callable on |x| >= 0, zero beyond `support`.
    support   : band of the method in units of n (1.0 for classical means,
                2.0 for de la Vallee Poussin, inf for Abel-Poisson).
    """

    name: str
    kind: str
    weight_fn: object = None
    profile: object = None
    support: float = 1.0
    complex_weights: bool = False

    def band(self, n):
        """Largest |k| carrying a (non-negligible) weight at index n."""
        if n == 0:
            return 0
        if math.isinf(self.support):
            # geometric decay cutoff for Abel-Poisson type rules
            r = float(np.abs(self.weight_fn(n, np.array([1.0]))[0]))
            if r <= 0.0:
                return 0
            return max(1, int(math.ceil(math.log(1e-17) / math.log(r))))
        return int(math.ceil(self.support * n))

    def weights(self, n, kmax=None):
        """Array of lambda_{n,k} for k = -kmax..kmax (kmax defaults to band)."""
        if kmax is None:
            kmax = self.band(n)
        k = np.arange(-kmax, kmax + 1)
        absk = np.abs(k).astype(float)
        if n == 0:
            w = np.where(absk == 0, 1.0, 0.0).astype(complex)
        elif self.kind == GENERATOR:
            w = np.asarray(self.profile(absk / n), dtype=complex)
            w[absk > self.support * n] = 0.0
        else:
            w = np.asarray(self.weight_fn(n, k), dtype=complex)
            w[absk > self.band(n)] = 0.0
        return w if self.complex_weights else w.real.astype(complex)


def _cesaro_coeffs(alpha, n):
    """A_j^alpha = binom(j+alpha, j) for j = 0..n, by the stable recursion."""
    a = np.empty(n + 1)
    a[0] = 1.0
    for j in range(1, n + 1):
        a[j] = a[j - 1] * (j + alpha) / j
    return a


def dirichlet():
    return SummabilityMethod("dirichlet", MATRIX,
                             weight_fn=lambda n, k: np.ones_like(k, dtype=float))


def fejer():
    return SummabilityMethod("fejer", MATRIX,
                             weight_fn=lambda n, k: 1.0 - np.abs(k) / (n + 1.0))


def cesaro(alpha):
    def w(n, k):
        a = _cesaro_coeffs(alpha, n)
        idx = n - np.abs(k)
        out = np.zeros(len(k))
        inside = idx >= 0
        out[inside] = a[idx[inside]] / a[n]
        return out

    return SummabilityMethod(f"cesaro({alpha:g})", MATRIX, weight_fn=w)


def abel_poisson(r=None):
    """Abel-Poisson multipliers r^|k|.

    With r=None the radius is linked to the index by r_n = 1 - 1/n, so
    that n = [1/(1-r)]; with explicit r the rule is the same for every n.
    """
    if r is None:
        def w(n, k):
            rn = 1.0 - 1.0 / max(n, 1)
            return rn ** np.abs(k).astype(float)

        return SummabilityMethod("abel-poisson", MATRIX, weight_fn=w,
                                 support=math.inf)
    if not 0 <= r < 1:
        raise InvalidArgument("Abel-Poisson radius must lie in [0,1)")

    def w(n, k):
        return float(r) ** np.abs(k).astype(float)

    return SummabilityMethod(f"abel-poisson({r:g})", MATRIX, weight_fn=w,
                             support=math.inf)


def riesz(alpha, delta):
    def phi(x):
        return np.clip(1.0 - np.abs(x) ** alpha, 0.0, None) ** delta

    return SummabilityMethod(f"riesz({alpha:g},{delta:g})", GENERATOR, profile=phi)


def bochner_riesz(delta):
    m = riesz(2.0, delta)
    return SummabilityMethod(f"bochner-riesz({delta:g})", GENERATOR,
                             profile=m.profile)


def rogosinski():
    # 0.5*(S_n(.+pi/2n) + S_n(.-pi/2n)) as the multiplier cos(k pi / 2n)
    return SummabilityMethod(
        "rogosinski", MATRIX,
        weight_fn=lambda n, k: np.cos(np.abs(k) * np.pi / (2.0 * n)))


def bernstein():
    # 0.5*(S_n(.) + S_n(.+pi/n)); the shift makes the multiplier complex
    return SummabilityMethod(
        "bernstein", MATRIX,
        weight_fn=lambda n, k: 0.5 * (1.0 + np.exp(1j * k * np.pi / n)),
        complex_weights=True)


def vallee_poussin():
    def phi(x):
        ax = np.abs(x)
        return np.clip(np.minimum(1.0, 2.0 - ax), 0.0, 1.0)

    return SummabilityMethod("vallee-poussin", GENERATOR, profile=phi,
                             support=2.0)


def method_catalog():
    """Representatives of every supported summability family."""
    return [
        dirichlet(),
        fejer(),
        cesaro(0.5),
        abel_poisson(0.5),
        riesz(2.0, 1.0),
        bochner_riesz(1.0),
        rogosinski(),
        bernstein(),
        vallee_poussin(),
    ]


_FACTORIES = {
    "dirichlet": (dirichlet, 0),
    "fejer": (fejer, 0),
    "cesaro": (cesaro, 1),
    "abel-poisson": (abel_poisson, -1),   # optional radius
    "riesz": (riesz, 2),
    "bochner-riesz": (bochner_riesz, 1),
    "rogosinski": (rogosinski, 0),
    "bernstein": (bernstein, 0),
    "vallee-poussin": (vallee_poussin, 0),
    "de-la-vallee-poussin": (vallee_poussin, 0),
    "dlvp": (vallee_poussin, 0),
}


def get_method(name):
    """Look up a method by name, e.g. ``"fejer"`` or ``"riesz(2,1)"``."""
    s = name.strip().lower().replace("_", "-").replace(" ", "")
    args = ()
    if "(" in s:
        if not s.endswith(")"):
            raise NotFound(f"malformed method name {name!r}")
        s, argstr = s[:-1].split("(", 1)
        try:
            args = tuple(float(a) for a in argstr.split(",") if a != "")
        except ValueError:
            raise NotFound(f"malformed method arguments in {name!r}")
    if s not in _FACTORIES:
        raise NotFound(f"unknown summability method {name!r}")
    factory, nargs = _FACTORIES[s]
    if nargs >= 0 and len(args) != nargs:
        raise NotFound(f"method {s!r} takes {nargs} parameter(s), got {len(args)}")
    if nargs == -1 and len(args) > 1:
        raise NotFound(f"method {s!r} takes at most one parameter")
    return factory(*args)


def kernel(method, n, m):
    """Kernel K_n(t) = sum_k lambda_{n,k} e^{ikt} sampled on the M-grid.

    K_n(0) equals the weight sum; for Dirichlet this is 2n+1.
    """
    if n < 0:
        raise InvalidArgument("index n must be nonnegative")
    band = method.band(n)
    if m < 2 * (band + 1):
        raise InvalidArgument(f"grid of size {m} too coarse for band {band}")
    w = method.weights(n)
    return synthesize(TrigCoefficients(band, w), m)


def apply_means(method, n, c):
    """Coefficient-wise product lambda_{n,k} * c_k."""
    band = method.band(n)
    deg = min(c.degree, band)
    w = method.weights(n, kmax=deg)
    k = np.arange(-deg, deg + 1)
    vals = w * c.c[k + c.degree]
    return TrigCoefficients(deg, vals)


def approximation_error(method, n, c, m, p=math.inf):
    """Grid norm of f - Lambda_n f for f given by coefficients c."""
    diff = c.copy()
    lam = apply_means(method, n, c)
    k = np.arange(-lam.degree, lam.degree + 1)
    diff.c[k + diff.degree] -= lam.c
    return grid_norm(synthesize(diff, m), GridNorm(p))


def comparison_ratio(method_a, method_b, fset, nmax, m=1024):
    """Worst ratio of approximation errors of two regular methods.

    max over f in fset, 1 <= n <= nmax of ||f - A_n f|| / ||f - B_n f||,
    with 0/0 counted as 1 and x/0 as +inf.
    """
    for method in (method_a, method_b):
        lam0 = method.weights(1, kmax=0)[0]
        if abs(lam0 - 1.0) > 1e-12:
            raise InvalidArgument(f"{method.name} is not regular "
                                  "(weight at k=0 differs from 1)")
    worst = 0.0
    for f in fset:
        c = compute_coefficients(f, m // 2 - 1)
        for n in range(1, nmax + 1):
            ea = approximation_error(method_a, n, c, m)
            eb = approximation_error(method_b, n, c, m)
            if eb == 0.0:
                ratio = 1.0 if ea == 0.0 else math.inf
            else:
                ratio = ea / eb
            worst = max(worst, ratio)
    return worst
