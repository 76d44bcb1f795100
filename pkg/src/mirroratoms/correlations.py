"""Electric-field two-point functions along uniformly accelerated orbits.

The atoms move on the hyperbola t = sinh(a tau)/a, x = -cosh(a tau)/a with
constant transverse coordinates (y, z); the comoving spatial frame vector
e1 points along +x at tau = 0, so the frame is right-handed and the
mixed-component sign conventions match the closed-form spectral tensors.
The vacuum two-point function of the electric field in the comoving frame
is obtained by contracting second derivatives of the scalar photon kernel
with the orbit tetrad; the mirror at y = 0 adds an image kernel with a
reflected polarization matrix.

The regulator enters by evaluating the *second* proper time at
tau' + i*epsilon, which keeps the correlation exactly stationary in
tau - tau' at finite epsilon and puts the light-cone poles on the correct
side of the real axis.

:func:`fourier_oracle` turns these correlations into spectral values by
direct quadrature with an epsilon-sequence extrapolation.  It exists purely
to validate the closed forms in :mod:`mirroratoms.coefficients`; nothing in
the production path calls it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.integrate import quad

FREE = "free"
BOUNDARY = "boundary"
_KINDS = (FREE, BOUNDARY)

_FOUR_PI_SQ = 4.0 * math.pi**2

# polarization matrices of the photon kernel, index order (t, x, y, z):
# eta for the free part, -(eta + 2 n n) for the image part (n = y-normal)
_G_FREE = (1.0, -1.0, -1.0, -1.0)
_G_BND = (-1.0, 1.0, -1.0, 1.0)


@dataclass(frozen=True)
class TrajectoryParams:
    """Uniformly accelerated orbit along x; a = 0 is the inertial line."""

    a: float

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("acceleration must be non-negative")

    def lab_coords(self, tau):
        """Lab (t, x) at proper time tau; tau may be complex."""
        if self.a == 0.0:
            return tau, 0.0 + 0.0j
        return cmath.sinh(self.a * tau) / self.a, -cmath.cosh(self.a * tau) / self.a

    def frame(self, tau):
        """Comoving tetrad (u, e1, e2, e3) as 4-tuples in (t, x, y, z)."""
        if self.a == 0.0:
            return ((1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0),
                    (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0))
        ch = cmath.cosh(self.a * tau)
        sh = cmath.sinh(self.a * tau)
        return ((ch, -sh, 0.0, 0.0), (-sh, ch, 0.0, 0.0),
                (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0))


@dataclass(frozen=True)
class CorrelationKernel:
    """Geometry and regulator of one two-point evaluation.

    kind      "free" or "boundary" (image) part of the photon kernel
    y, y_prime   heights of the two field points above the mirror
    dz        z offset z_1 - z_2 (constant along the orbit)
    dx        static lab x offset; zero for atoms sharing the orbit
    epsilon   positive regulator applied to the second proper time
    """

    kind: str
    y: float
    y_prime: float
    dz: float = 0.0
    dx: float = 0.0
    epsilon: float = 1e-3

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kernel kind must be one of {_KINDS}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def chord(self):
        """Spatial distance between field point 1 and (image of) point 2."""
        wy = self.y - self.y_prime if self.kind == FREE else self.y + self.y_prime
        return math.sqrt(self.dx**2 + wy**2 + self.dz**2)


def _dot4(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3]


def electric_correlation(kernel, m, n, tau, tau_prime, a):
    """<0| E_m(x_1(tau)) E_n(x_2(tau')) |0> for one kernel part.

    m, n are frame axis indices in {1, 2, 3} = (x, y, z).  The value is the
    finite-epsilon regularized Wightman function; it is complex and depends
    on tau, tau' only through tau - tau' for the shared-orbit geometry.
    """
    if m not in (1, 2, 3) or n not in (1, 2, 3):
        raise ValueError("axis indices must be in {1, 2, 3}")
    traj = TrajectoryParams(a)
    tau2 = tau_prime + 1j * kernel.epsilon

    t1, x1 = traj.lab_coords(tau)
    t2, x2 = traj.lab_coords(tau2)
    wt = t1 - t2
    wx = x1 - x2 + kernel.dx
    wz = kernel.dz

    if kernel.kind == FREE:
        wy = kernel.y - kernel.y_prime
        grad2 = (-2.0 * wt, 2.0 * wx, 2.0 * wy, 2.0 * wz)
        myy = 2.0
        gmat = _G_FREE
    else:
        wy = kernel.y + kernel.y_prime
        grad2 = (-2.0 * wt, 2.0 * wx, -2.0 * wy, 2.0 * wz)
        myy = -2.0
        gmat = _G_BND

    grad1 = (2.0 * wt, -2.0 * wx, -2.0 * wy, -2.0 * wz)
    mixed = (-2.0, 2.0, myy, 2.0)
    s = wt * wt - wx * wx - wy * wy - wz * wz
    inv2 = 1.0 / (s * s)
    inv3 = inv2 / s

    frame1 = traj.frame(tau)
    frame2 = traj.frame(tau2)
    u1, u2 = frame1[0], frame2[0]
    em, en = frame1[m], frame2[n]

    def d2(p, q):
        # p^mu q^rho d_mu d'_rho of the scalar kernel 1/(4 pi^2 s)
        mterm = (p[0] * q[0] * mixed[0] + p[1] * q[1] * mixed[1]
                 + p[2] * q[2] * mixed[2] + p[3] * q[3] * mixed[3])
        return (-mterm * inv2
                + 2.0 * _dot4(p, grad1) * _dot4(q, grad2) * inv3) / _FOUR_PI_SQ

    def gpair(p, q):
        return (gmat[0] * p[0] * q[0] + gmat[1] * p[1] * q[1]
                + gmat[2] * p[2] * q[2] + gmat[3] * p[3] * q[3])

    return (gpair(em, en) * d2(u1, u2) - gpair(em, u2) * d2(u1, en)
            - gpair(u1, en) * d2(em, u2) + gpair(u1, u2) * d2(em, en))


def pair_geometry(config, pair):
    """(y, y', dz) of an atom pair for the configured alignment.

    Atom 1 is the nearer one in the vertical case; in the parallel case
    atom 2 sits at z = +L relative to atom 1.
    """
    alpha, beta = pair
    if alpha not in (1, 2) or beta not in (1, 2):
        raise ValueError("atom indices must be 1 or 2")
    if config.alignment == "parallel":
        z = {1: 0.0, 2: config.L}
        return config.y, config.y, z[alpha] - z[beta]
    heights = {1: config.y, 2: config.y + config.L}
    return heights[alpha], heights[beta], 0.0


@dataclass(frozen=True)
class QuadratureSettings:
    """Window, tolerance and epsilon-extrapolation protocol of the oracle."""

    epsilons: tuple = (4e-3, 2e-3, 1e-3)
    window: float | None = None
    quad_rel: float = 1e-9
    quad_abs: float = 1e-13
    limit: int = 2000
    rel_tol: float = 5e-3
    abs_floor: float = 1e-7
    tail_tol: float = 1e-4

    def __post_init__(self):
        if len(self.epsilons) < 2:
            raise ValueError("need at least two epsilons to extrapolate")
        if any(e <= 0 for e in self.epsilons):
            raise ValueError("epsilons must be positive")
        if list(self.epsilons) != sorted(self.epsilons, reverse=True):
            raise ValueError("epsilons must be strictly decreasing")


class OracleConvergenceError(RuntimeError):
    """Raised when the epsilon extrapolation or window truncation fails."""


@dataclass(frozen=True)
class OracleResult:
    value: float
    error: float
    imag: float
    tail: float
    window: float
    epsilons: tuple
    converged: bool
    quad_error: float = 0.0
    message: str = ""

    def require(self):
        """Return the value, raising when the transform did not converge."""
        if not self.converged:
            raise OracleConvergenceError(self.message or "oracle failed")
        return self.value


def default_window(a):
    """Integration half-window: 40/a for accelerated orbits, 40 inertial."""
    return 40.0 / a if a > 0 else 40.0


def _light_cone_time(a, chord):
    """Delta tau at which the orbit crosses the light cone of the chord."""
    if chord == 0.0:
        return 0.0
    if a == 0.0:
        return chord
    return 2.0 / a * math.asinh(0.5 * a * chord)


def _panel_edges(window, peaks, width):
    """Panel boundaries isolating each light-cone peak in a narrow strip."""
    edges = {-window, window}
    for p in peaks:
        for q in (p - width, p, p + width):
            if -window < q < window:
                edges.add(q)
    return sorted(edges)


def _windowed_transform(kernel, m, n, a, omega0, window, settings):
    """integral over [-T, T] of exp(i w u) W(u) du plus error estimates.

    The integrand is huge (but smooth at scale epsilon) where the orbit
    crosses the light cone of the chord, so the interval is cut into panels
    that isolate those crossings; plain adaptive quadrature on each panel is
    then reliable.  Returns (value, quad_error, roundoff_floor, tail, warn);
    the roundoff floor is the cancellation noise of the peak panels, which
    is the realistic accuracy limit there (QUADPACK's own estimate is far
    too pessimistic on cancellation-dominated bumps).
    """
    corr = electric_correlation

    def w_of(u):
        return corr(kernel, m, n, u, 0.0, a)

    ustar = _light_cone_time(a, kernel.chord)
    peaks = sorted({0.0, ustar, -ustar})
    width = max(40.0 * kernel.epsilon, 1e-5)
    edges = _panel_edges(window, peaks, width)

    def integrand_re(u):
        z = w_of(u) * cmath.exp(1j * omega0 * u)
        return z.real

    def integrand_im(u):
        z = w_of(u) * cmath.exp(1j * omega0 * u)
        return z.imag

    total = 0.0 + 0.0j
    err = 0.0
    warn = ""
    for f, unit in ((integrand_re, 1.0), (integrand_im, 1j)):
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, e, *rest = quad(f, lo, hi, limit=settings.limit,
                                 epsrel=settings.quad_rel,
                                 epsabs=settings.quad_abs, full_output=1)
            if len(rest) > 1:
                warn = str(rest[1]).strip().splitlines()[0]
            total += unit * val
            err += e

    peak_mass = sum(abs(w_of(p + 0.3 * kernel.epsilon)) * width
                    for p in peaks if -window < p < window)
    roundoff = 1e-15 * peak_mass

    decay_len = 1.0 / a if a > 0 else window / 3.0
    tail = (abs(w_of(window)) + abs(w_of(-window))) * decay_len
    return total, err, roundoff, tail, warn


def fourier_oracle(kernel_kind, m, n, pair, config, omega0,
                   settings=None):
    """Spectral value of one correlation component by direct quadrature.

    Computes integral d(dtau) exp(i omega0 dtau) <E_m E_n> for the requested
    kernel part and atom pair, for each epsilon in the settings, and
    extrapolates the sequence to epsilon -> 0 (Richardson, quadratic in
    epsilon).  Returns an :class:`OracleResult`; ``converged`` is False when
    the extrapolation disagrees beyond its own error estimate or the window
    tail is too large.
    """
    settings = settings or QuadratureSettings()
    if kernel_kind not in _KINDS:
        raise ValueError(f"kernel kind must be one of {_KINDS}")
    y1, y2, dz = pair_geometry(config, pair)
    window = settings.window or default_window(config.a)

    values = []
    quad_err = 0.0
    roundoff = 0.0
    tail = 0.0
    warn = ""
    for eps in settings.epsilons:
        kernel = CorrelationKernel(kind=kernel_kind, y=y1, y_prime=y2,
                                   dz=dz, epsilon=eps)
        val, qe, ro, tl, w = _windowed_transform(kernel, m, n, config.a,
                                                 omega0, window, settings)
        values.append(val)
        quad_err = max(quad_err, qe)
        roundoff = max(roundoff, ro)
        tail = max(tail, tl)
        if w:
            warn = w

    extrap, extrap_err = _richardson(settings.epsilons, values)
    scale = max(abs(extrap), settings.abs_floor)
    # convergence is judged by the self-consistency of the epsilon sequence
    # (plus cancellation roundoff) and by the window tail, not by QUADPACK's
    # pessimistic per-panel estimates
    err = extrap_err + roundoff
    message = warn
    converged = True
    if err > settings.rel_tol * scale:
        converged = False
        message = "epsilon extrapolation did not converge"
    if tail > settings.tail_tol * scale:
        converged = False
        message = "window truncation tail too large"
    return OracleResult(value=float(extrap.real), error=float(err),
                        imag=float(extrap.imag), tail=float(tail),
                        window=float(window), epsilons=tuple(settings.epsilons),
                        converged=converged, quad_error=float(quad_err),
                        message=message)


def _richardson(epsilons, values):
    """Neville extrapolation of values(epsilon) to epsilon = 0."""
    eps = [float(e) for e in epsilons]
    tab = [complex(v) for v in values]
    n = len(tab)
    prev_last = tab[-1]
    for level in range(1, n):
        new = []
        for i in range(n - level):
            e_lo, e_hi = eps[i + level], eps[i]
            num = e_hi * tab[i + 1] - e_lo * tab[i]
            new.append(num / (e_hi - e_lo))
        tab = new
        last_seq = tab[-1]
        err = abs(last_seq - prev_last)
        prev_last = last_seq
    return tab[0], err
