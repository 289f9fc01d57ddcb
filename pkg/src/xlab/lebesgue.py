"""Operator norms (Lebesgue constants) of summability means, worst-case
deviations over the bounded-derivative classes, two-dimensional rhombic and
hyperbolic kernels, and asymptotic-law fitting.

The operator norm of a polynomial mean on continuous periodic functions is
(1/2pi) times the L1 norm of its kernel.  For real kernels that integral is
computed exactly: the kernel is a trigonometric polynomial, its zeros are
located by a dense scan plus vectorized Newton/bisection polishing, and
|K| is integrated piecewise through the closed-form antiderivative."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ConvergenceFailure, InvalidArgument
from .trig import (TWO_PI, TrigCoefficients, compute_coefficients,
                   synthesize)


@dataclass(frozen=True)
class LebesgueSample:
    n: object          # int, or pair for the 2-D kernels
    value: float
    quad_error: float

    def __post_init__(self):
        if self.value < 0 or self.quad_error < 0:
            raise InvalidArgument("norm and error bound must be nonnegative")


@dataclass(frozen=True)
class AsymptoticFit:
    model: str
    params: tuple
    residual: float


# ---------------------------------------------------------------------------
# exact L1 norm of a trigonometric polynomial
# ---------------------------------------------------------------------------

def _eval_trig(coeffs, kmax, t):
    """sum_k c_k e^{ikt} at points t (coeffs indexed -kmax..kmax)."""
    k = np.arange(-kmax, kmax + 1)
    return np.exp(1j * np.outer(t, k)) @ coeffs


def _antiderivative(coeffs, kmax, t):
    """Antiderivative of sum c_k e^{ikt}: c_0 t + sum_{k!=0} c_k e^{ikt}/(ik)."""
    k = np.arange(-kmax, kmax + 1)
    a = np.zeros_like(coeffs)
    nz = k != 0
    a[nz] = coeffs[nz] / (1j * k[nz])
    c0 = coeffs[kmax]
    return np.exp(1j * np.outer(t, k)) @ a + c0 * t


def _refine_zeros(f_df, lo, hi, flo, max_iter=16):
    """Polish bracketed simple zeros by safeguarded Newton iteration.

    f_df(x) must return (f(x), f'(x)) elementwise; sign bookkeeping is done
    via signbit so endpoint values of exactly 0.0 stay on the positive side.
    The best point seen per zero is kept (a converged iterate that lands on
    a bracket endpoint must not be discarded by the safeguard).
    Returns (zeros, residuals, per-zero integration error bounds)."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = np.array(flo, dtype=float)
    x = 0.5 * (lo + hi)
    best_x = x.copy()
    best_f = np.full_like(x, np.inf)
    best_df = np.ones_like(x)
    for _ in range(max_iter):
        fx, dfx = f_df(x)
        better = np.abs(fx) < np.abs(best_f)
        best_x = np.where(better, x, best_x)
        best_f = np.where(better, fx, best_f)
        best_df = np.where(better, dfx, best_df)
        same = np.signbit(fx) == np.signbit(flo)
        lo = np.where(same, x, lo)
        flo = np.where(same, fx, flo)
        hi = np.where(same, hi, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - fx / dfx
        bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi)
        x = np.where(bad, 0.5 * (lo + hi), xn)
    resid = np.abs(best_f)
    # mislocation <= min(bracket width, resid/|f'|); the induced error in
    # the piecewise-sign integral is at most resid times that
    with np.errstate(divide="ignore", invalid="ignore"):
        misloc = np.minimum(hi - lo, resid / np.maximum(np.abs(best_df), 1e-300))
    return best_x, resid, resid * misloc


def _scan_brackets(values, grid):
    """Sign-change brackets of sampled values (open grid, no wraparound)."""
    idx = np.nonzero(np.signbit(values[:-1]) != np.signbit(values[1:]))[0]
    return grid[idx], grid[idx + 1], values[idx]


def trig_poly_l1(coeffs, oversample=16):
    """(L1 norm over one period, certified error bound) for a real-valued
    trigonometric polynomial given by complex coefficients c_{-K}..c_K."""
    coeffs = np.asarray(coeffs, dtype=complex)
    kmax = (coeffs.size - 1) // 2
    m = 1 << max(6, int(math.ceil(math.log2(oversample * 2 * (kmax + 1)))))
    samples = synthesize(TrigCoefficients(kmax, coeffs), m).values.real
    grid = -np.pi + TWO_PI * np.arange(m + 1) / m      # close the period
    vals = np.concatenate([samples, samples[:1]])
    lo, hi, flo = _scan_brackets(vals, grid)

    k = np.arange(-kmax, kmax + 1)

    def f_df(x):
        e = np.exp(1j * np.outer(x, k))
        return (e @ coeffs).real, (e @ (1j * k * coeffs)).real

    zeros, _, err_terms = _refine_zeros(f_df, lo, hi, flo)
    pieces = np.concatenate(([-np.pi], np.sort(zeros), [np.pi]))
    anti = _antiderivative(coeffs, kmax, pieces).real
    value = float(np.sum(np.abs(np.diff(anti))))
    err = float(np.sum(err_terms)) + 1e-15 * np.sum(np.abs(coeffs)) * TWO_PI
    return value, err


def _panel_l1(f, a, b, n_osc, tol, max_refine=14):
    """Adaptive panel Gauss for int_a^b |f|, panels aligned to n_osc
    oscillations; used for complex-valued kernels where |f| is only
    piecewise smooth."""
    g16 = np.polynomial.legendre.leggauss(16)
    g32 = np.polynomial.legendre.leggauss(32)

    def quad(rule, lo, hi):
        x, w = rule
        pts = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        return 0.5 * (hi - lo) * np.dot(w, np.abs(f(pts)))

    edges = np.linspace(a, b, max(8, 2 * (n_osc + 1)) + 1)
    panels = [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    for _ in range(max_refine):
        vals, errs = [], []
        for lo, hi in panels:
            v32 = quad(g32, lo, hi)
            vals.append(v32)
            errs.append(abs(v32 - quad(g16, lo, hi)))
        total_err = sum(errs)
        if total_err <= tol:
            return sum(vals), total_err
        # split the worst quarter of panels
        order = np.argsort(errs)[::-1]
        split = set(order[: max(1, len(panels) // 4)])
        new = []
        for i, (lo, hi) in enumerate(panels):
            if i in split:
                mid = 0.5 * (lo + hi)
                new += [(lo, mid), (mid, hi)]
            else:
                new.append((lo, hi))
        panels = new
    raise ConvergenceFailure("panel budget exhausted", best_estimate=sum(vals),
                             error_estimate=total_err)


def lebesgue_constant(method, n, tol=1e-9):
    """Operator norm of the mean at index n: (1/2pi) int |K_n(t)| dt."""
    if n < 0:
        raise InvalidArgument("index must be nonnegative")
    if not tol > 0:
        raise InvalidArgument("tolerance must be positive")
    w = method.weights(n)
    band = (w.size - 1) // 2
    if method.complex_weights:
        def f(pts):
            return _eval_trig(w, band, pts)

        value, err = _panel_l1(f, -np.pi, np.pi, band + 1, tol * TWO_PI)
        return LebesgueSample(n, value / TWO_PI, err / TWO_PI)
    value, err = trig_poly_l1(w)
    if err / TWO_PI > tol:
        raise ConvergenceFailure("requested tolerance not certified",
                                 best_estimate=value / TWO_PI,
                                 error_estimate=err / TWO_PI)
    return LebesgueSample(n, value / TWO_PI, err / TWO_PI)


# ---------------------------------------------------------------------------
# asymptotic fits
# ---------------------------------------------------------------------------

def fit_log_model(ns, values):
    """Least squares for value = c*ln(n) + d; returns (c, d, rms residual)."""
    ns = np.asarray(ns, dtype=float)
    a = np.column_stack([np.log(ns), np.ones_like(ns)])
    sol, *_ = np.linalg.lstsq(a, np.asarray(values, dtype=float), rcond=None)
    resid = a @ sol - values
    return float(sol[0]), float(sol[1]), float(np.sqrt(np.mean(resid ** 2)))


def fit_power_model(ns, values):
    """Least squares for value = c*n^s in log-log; returns (c, s, rms)."""
    ns = np.asarray(ns, dtype=float)
    a = np.column_stack([np.log(ns), np.ones_like(ns)])
    y = np.log(np.asarray(values, dtype=float))
    sol, *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = a @ sol - y
    return float(np.exp(sol[1])), float(sol[0]), float(np.sqrt(np.mean(resid ** 2)))


def geometric_grid(nmin, nmax):
    out = []
    n = nmin
    while n <= nmax:
        out.append(n)
        n *= 2
    return out


def classical_lebesgue_fit(nmin, nmax, method=None):
    """Fit L_n = c*ln n + d for the partial-sum operator norms over the
    geometric grid nmin, 2nmin, ..., nmax."""
    if not (nmax >= 4 * nmin and 4 * nmin >= 64):
        raise InvalidArgument("need nmax >= 4*nmin >= 64")
    from .trig import dirichlet
    if method is None:
        method = dirichlet()
    ns = geometric_grid(nmin, nmax)
    values = [lebesgue_constant(method, n).value for n in ns]
    c, d, resid = fit_log_model(ns, values)
    return AsymptoticFit("c*ln(n)+d", (c, d), resid), ns, values


# ---------------------------------------------------------------------------
# worst-case deviation over W^r
# ---------------------------------------------------------------------------

def _full_series_poly(r):
    """Polynomial p with p(t) = sum_{k>=1} cos(kt - r*pi/2)/k^r on (0, 2pi).

    Built from S_1(t) = (pi - t)/2 by the integration recursion
    S_{r+1}' = S_r with zero mean over the period."""
    coeffs = [np.pi / 2.0, -0.5]          # ascending powers
    for _ in range(r - 1):
        integ = [0.0] + [c / (j + 1) for j, c in enumerate(coeffs)]
        mean = sum(c * TWO_PI ** j / (j + 1) for j, c in enumerate(integ))
        integ[0] = -mean
        coeffs = integ
    return np.array(coeffs)


def _polyval(coeffs, t):
    out = np.zeros_like(t, dtype=float)
    for c in coeffs[::-1]:
        out = out * t + c
    return out


def tail_kernel(r, n, t):
    """sum_{k>n} cos(kt - r*pi/2)/k^r for t in (0, 2pi), in closed form."""
    t = np.asarray(t, dtype=float)
    full = _polyval(_full_series_poly(r), t)
    if n == 0:
        return full
    k = np.arange(1, n + 1)
    partial = np.cos(np.outer(t, k) - r * np.pi / 2) @ (1.0 / k ** r)
    return full - partial


def tail_kernel_direct(r, n, t, terms=200000):
    """Direct accelerated summation of the tail (test oracle): plain sum of
    `terms` terms followed by one arithmetic-mean (Abel-type) stabilization
    of the sequence of partial sums."""
    t = float(t)
    k = np.arange(n + 1, n + 1 + terms)
    parts = np.cumsum(np.cos(k * t - r * np.pi / 2) / k ** r)
    window = parts[-terms // 4:]
    return float(np.mean(window))


def kolmogorov_deviation(r, n, tol=1e-9):
    """sup over the unit W^r class of ||f - S_n f||_inf, via (1/pi) times
    the L1 norm of the conjugate-tail kernel over a period."""
    if r < 1 or n < 0:
        raise InvalidArgument("need r >= 1 and n >= 0")
    poly = _full_series_poly(r)
    ipoly = np.array([0.0] + [c / (j + 1) for j, c in enumerate(poly)])
    k = np.arange(1, n + 1) if n else np.array([], dtype=float)

    def g(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = _polyval(poly, t)
        if n:
            out = out - np.cos(np.outer(t, k) - r * np.pi / 2) @ (1.0 / k ** r)
        return out

    def anti(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = _polyval(ipoly, t)
        if n:
            out = out - np.sin(np.outer(t, k) - r * np.pi / 2) @ (1.0 / k ** (r + 1))
        return out

    def dg(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = _polyval(np.arange(1, poly.size) * poly[1:], t)
        if n:
            out = out + np.sin(np.outer(t, k) - r * np.pi / 2) @ (1.0 / k ** (r - 1))
        return out

    scan = max(256, 16 * (n + 1))
    eps = 1e-9  # stay inside the open period (jump at 0 for r=1)
    t = np.linspace(eps, TWO_PI - eps, scan + 1)
    lo, hi, flo = _scan_brackets(g(t), t)
    zeros, _, err_terms = _refine_zeros(lambda x: (g(x), dg(x)), lo, hi, flo)
    pieces = np.concatenate(([0.0], np.sort(zeros), [TWO_PI]))
    total = float(np.sum(np.abs(np.diff(anti(pieces)))))
    err = float(np.sum(err_terms)) + 1e-14 * (n + 1)
    if err / np.pi > tol:
        raise ConvergenceFailure("zero polishing failed", best_estimate=total / np.pi,
                                 error_estimate=err / np.pi)
    return total / np.pi


# ---------------------------------------------------------------------------
# two-dimensional kernels
# ---------------------------------------------------------------------------

def _cosine_sum_factor(x, freqs, const):
    out = np.full(x.size, float(const))
    if len(freqs):
        # accumulate in frequency chunks to bound the cos matrix size
        freqs = np.asarray(freqs, dtype=float)
        step = max(1, (1 << 22) // x.size)
        for s in range(0, freqs.size, step):
            out = out + 2.0 * np.cos(np.outer(x, freqs[s:s + step])).sum(axis=1)
    return out


def _grouped_l1_2d(groups, m1, m2):
    """(1/4pi^2) int int |sum_g A_g(x1) B_g(x2)| dx by a uniform Riemann sum
    on an m1 x m2 full-period grid; each factor pair is given as cosine
    frequency lists (a_freqs, a_const, b_freqs, b_const).

    The kernel is even in each variable separately, so only the quarter
    grid [0, pi] x [0, pi] is evaluated, with trapezoidal fold weights."""
    h1, h2 = m1 // 2, m2 // 2
    x1 = np.pi * np.arange(h1 + 1) / h1
    x2 = np.pi * np.arange(h2 + 1) / h2
    amat = np.stack([_cosine_sum_factor(x1, g[0], g[1]) for g in groups], axis=1)
    bmat = np.stack([_cosine_sum_factor(x2, g[2], g[3]) for g in groups], axis=0)
    w1 = np.full(h1 + 1, 2.0)
    w1[0] = w1[-1] = 1.0
    w2 = np.full(h2 + 1, 2.0)
    w2[0] = w2[-1] = 1.0
    total = 0.0
    chunk = max(1, (1 << 25) // (h2 + 1))
    for start in range(0, h1 + 1, chunk):
        block = np.abs(amat[start:start + chunk] @ bmat)
        total += float(w1[start:start + chunk] @ block @ w2)
    return total / (m1 * m2)


def _rhombic_groups(n1, n2):
    """Group the rhombus |k1|/n1 + |k2|/n2 <= 1 by x2-degree."""
    by_deg = {}
    for k1 in range(0, n1 + 1):
        deg = int(math.floor(n2 * (1.0 - k1 / n1) + 1e-12))
        by_deg.setdefault(deg, []).append(k1)
    groups = []
    for deg, k1s in sorted(by_deg.items()):
        pos = [k for k in k1s if k > 0]
        const = 1.0 if 0 in k1s else 0.0
        groups.append((pos, const, list(range(1, deg + 1)), 1.0))
    return groups


def rhombic_lebesgue(n1, n2, tol=1e-3, oversample=8):
    """Operator norm of the rhombic partial sum on the torus, by uniform
    Riemann sums of |kernel| at two resolutions (the difference is the
    reported error estimate)."""
    if n1 < 1 or n2 % n1 != 0:
        raise InvalidArgument("need n2 a positive multiple of n1")
    if n1 > 64:
        raise InvalidArgument("cost guard: n1 <= 64")
    groups = _rhombic_groups(n1, n2)
    m1 = oversample * 2 * (n1 + 1)
    m2 = oversample * 2 * (n2 + 1)
    coarse = _grouped_l1_2d(groups, m1 // 2, m2 // 2)
    fine = _grouped_l1_2d(groups, m1, m2)
    return LebesgueSample((n1, n2), fine, abs(fine - coarse))


def _hyperbolic_groups(alpha, n):
    """Group {k1 >= 1, k2 >= 1, k1^alpha * k2 <= n} by the k2 degree."""
    by_deg = {}
    k1 = 1
    while k1 ** alpha <= n:
        deg = int(math.floor(n / k1 ** alpha + 1e-12))
        if deg >= 1:
            by_deg.setdefault(deg, []).append(k1)
        k1 += 1
    return [(k1s, 0.0, list(range(1, deg + 1)), 0.0)
            for deg, k1s in sorted(by_deg.items())]


def hyperbolic_lattice_size(alpha, n):
    return 4 * sum(int(math.floor(n / k1 ** alpha + 1e-12))
                   for k1 in range(1, int(n ** (1.0 / alpha) + 1e-9) + 1))


def hyperbolic_l1(alpha, n, oversample=None):
    """(L1/(2pi)^2, error estimate) for the hyperbolic-cross kernel
    (both coordinate axes excluded from the index set)."""
    if alpha < 1:
        raise InvalidArgument("need alpha >= 1")
    if hyperbolic_lattice_size(alpha, n) > 10 ** 6:
        raise InvalidArgument("cost guard: kernel support exceeds 1e6 points")
    if oversample is None:
        oversample = 4 if n > 1024 else 8
    groups = _hyperbolic_groups(alpha, n)
    kmax1 = int(n ** (1.0 / alpha) + 1e-9)
    m1 = oversample * 2 * (kmax1 + 1)
    m2 = oversample * 2 * (n + 1)
    coarse = _grouped_l1_2d(groups, m1 // 2, m2 // 2)
    fine = _grouped_l1_2d(groups, m1, m2)
    return fine, abs(fine - coarse)


def hyperbolic_exponent(alpha, nset):
    """Log-log slope fit of the hyperbolic kernel norms over nset."""
    if any(n > 4096 for n in nset):
        raise InvalidArgument("cost guard: n <= 4096")
    values = [hyperbolic_l1(alpha, n)[0] for n in nset]
    c, s, resid = fit_power_model(nset, values)
    return AsymptoticFit("c*n^s", (c, s), resid), list(nset), values


# ---------------------------------------------------------------------------
# discrete (Fourier-Lagrange) coefficients and the Lebesgue function
# ---------------------------------------------------------------------------

def _resample(f, points):
    """Values of the trigonometric interpolant of f at arbitrary points."""
    c = compute_coefficients(f, f.size // 2 - 1)
    k = np.arange(-c.degree, c.degree + 1)
    return np.exp(1j * np.outer(points, k)) @ c.c


def fourier_lagrange_coeffs(f, n):
    """Rectangle-rule coefficients from the 2n+1 equally spaced samples
    x_p = 2*pi*p/(2n+1); equals the integral coefficients exactly for
    trigonometric polynomials of degree <= n."""
    p = np.arange(-n, n + 1)
    xp = TWO_PI * p / (2 * n + 1)
    fp = _resample(f, xp)
    k = np.arange(-n, n + 1)
    c = np.exp(-1j * np.outer(k, xp)) @ fp / (2 * n + 1)
    return TrigCoefficients(n, c)


def lebesgue_function(method, n, x):
    """Norm of the point-evaluation functional of the discrete mean:
    (1/(2n+1)) sum_p |sum_k lambda_{n,k} e^{ik(x-x_p)}|."""
    p = np.arange(-n, n + 1)
    xp = TWO_PI * p / (2 * n + 1)
    w = method.weights(n)
    band = (w.size - 1) // 2
    vals = _eval_trig(w, band, x - xp)
    return float(np.sum(np.abs(vals))) / (2 * n + 1)
