"""Closed-form dissipator coefficients for two accelerated atoms near a mirror.

Two two-level atoms ride the same uniformly accelerated orbit (acceleration
along x) in front of a perfectly reflecting plane at y = 0 and couple to the
electromagnetic vacuum through their electric dipoles.  The reduced dynamics
is governed by six real rates A1, A2, A3, B1, B2, B3.  Each rate is a dipole
contraction of a 3x3 spectral tensor built from a free-space part and a
boundary (image) part.

Everything is expressed in dimensionless internal units: the atomic
transition frequency is omega = 1 (so ``a`` means a/omega, lengths are
omega*length) and rates are in units of the free-space spontaneous emission
rate Gamma_0.

Axis convention: 1 = x (acceleration), 2 = y (boundary normal),
3 = z.  The atoms are separated along z in the parallel alignment and along
y in the vertical alignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

PARALLEL = "parallel"
VERTICAL = "vertical"
ALIGNMENTS = (PARALLEL, VERTICAL)

_UNIT_TOL = 1e-12


def _as_unit_vector(d, name):
    v = np.asarray(d, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a real 3-vector, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > _UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector (|{name}| = {norm!r})")
    return v


@dataclass(frozen=True)
class PhysicalConfig:
    """Dimensionless physical inputs of a two-atom run.

    a          proper acceleration in units of omega (a >= 0)
    L          interatomic separation in units 1/omega (L > 0)
    y          distance of the (nearer) atom to the boundary, units 1/omega
    alignment  "parallel" or "vertical" with respect to the boundary
    d1, d2     unit dipole orientation vectors of atoms 1 and 2
    gamma0     spontaneous-emission scale; 1 in internal units
    """

    a: float
    L: float
    y: float
    alignment: str
    d1: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    d2: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    gamma0: float = 1.0

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("acceleration must be non-negative")
        if self.L <= 0:
            raise ValueError("separation L must be positive")
        if self.y <= 0:
            raise ValueError("boundary distance y must be positive")
        if self.alignment not in ALIGNMENTS:
            raise ValueError(f"alignment must be one of {ALIGNMENTS}")
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be positive")
        object.__setattr__(self, "d1", _as_unit_vector(self.d1, "d1"))
        object.__setattr__(self, "d2", _as_unit_vector(self.d2, "d2"))

    @classmethod
    def from_ratios(cls, a_over_omega, omega_L, y_over_L, alignment,
                    d1=(1.0, 0.0, 0.0), d2=(1.0, 0.0, 0.0), gamma0=1.0):
        """Build a config from the figure-axis ratios a/omega, omega*L, y/L."""
        L = float(omega_L)
        return cls(a=float(a_over_omega), L=L, y=float(y_over_L) * L,
                   alignment=alignment, d1=np.asarray(d1, dtype=float),
                   d2=np.asarray(d2, dtype=float), gamma0=float(gamma0))

    @property
    def y_over_L(self):
        return self.y / self.L

    def with_(self, **kw):
        return replace(self, **kw)


@dataclass(frozen=True)
class CoefficientSet:
    """The six rates driving the master equation, in units of Gamma_0."""

    A1: float
    A2: float
    A3: float
    B1: float
    B2: float
    B3: float
    provenance: str = "closed_form"

    def as_array(self):
        return np.array([self.A1, self.A2, self.A3, self.B1, self.B2, self.B3])

    def scaled(self, factor):
        return CoefficientSet(self.A1 * factor, self.A2 * factor,
                              self.A3 * factor, self.B1 * factor,
                              self.B2 * factor, self.B3 * factor,
                              provenance=self.provenance)


@dataclass(frozen=True)
class CorrelationTensor:
    """A 3x3 real spectral tensor with a tag saying which block it is."""

    entries: np.ndarray
    kind: str

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (3, 3):
            raise ValueError("tensor entries must be 3x3")
        object.__setattr__(self, "entries", e)


# ---------------------------------------------------------------------------
# scalar building blocks (omega = 1)
# ---------------------------------------------------------------------------

# below this separation argument the closed-form braces cancel to O(s^3)
# and double precision loses too many digits; a Taylor series (truncation
# error below s^8 relative, i.e. ~1e-24 at the threshold) takes over
_SMALL_S = 1e-3


def _phase(a, s):
    """Orbit phase (2/a)*asinh(a*s/2); reduces to s for an inertial atom."""
    if a == 0.0:
        return s
    return 2.0 / a * math.asinh(0.5 * a * s)


def _f11(a, s):
    """Free-space cross tensor, xx component (transverse to separation)."""
    a2 = a * a
    if s < _SMALL_S:
        s2 = s * s
        c2 = a2 * (-0.8 * a2 - 1.0) - 0.2
        c4 = a2 * (a2 * (27.0 / 70.0 * a2 + 21.0 / 40.0) + 0.15) + 3.0 / 280.0
        c6 = (a2 * (a2 * (a2 * (-16.0 / 105.0 * a2 - 41.0 / 189.0)
                          - 13.0 / 180.0) - 1.0 / 126.0) - 1.0 / 3780.0)
        return (1.0 + a2) + s2 * (c2 + s2 * (c4 + s2 * c6))
    p = 4.0 + a2 * s * s
    th = _phase(a, s)
    c, sn = math.cos(th), math.sin(th)
    brace = (2.0 * s * math.sqrt(p) * (1.0 + a2 * s * s) * c
             + (-4.0 - s * s * (2.0 * a2 + a2 * a2 * s * s - 4.0
                                - a2 * s * s)) * sn)
    return 12.0 / (s**3 * p**2.5) * brace


def _f22(a, s):
    """Free-space cross tensor, yy component (transverse to separation)."""
    a2 = a * a
    if s < _SMALL_S:
        s2 = s * s
        c2 = a2 * (-0.3 * a2 - 0.5) - 0.2
        c4 = a2 * (a2 * (3.0 / 35.0 * a2 + 0.15) + 0.075) + 3.0 / 280.0
        c6 = (a2 * (a2 * (a2 * (-a2 / 42.0 - 317.0 / 7560.0) - 1.0 / 45.0)
                    - 11.0 / 2520.0) - 1.0 / 3780.0)
        return (1.0 + a2) + s2 * (c2 + s2 * (c4 + s2 * c6))
    p = 4.0 + a2 * s * s
    th = _phase(a, s)
    c, sn = math.cos(th), math.sin(th)
    brace = (s * math.sqrt(p) * (2.0 + a2 * s * s) * c
             + (-4.0 + s * s * p) * sn)
    return 3.0 / (s**3 * p**1.5) * brace


def _f33(a, s):
    """Free-space cross tensor, zz component (along the separation)."""
    a2 = a * a
    if s < _SMALL_S:
        s2 = s * s
        c2 = a2 * (-0.9 * a2 - 1.0) - 0.1
        c4 = a2 * (a2 * (3.0 / 7.0 * a2 + 0.55) + 0.125) + 1.0 / 280.0
        c6 = (a2 * (a2 * (a2 * (-a2 / 6.0 - 1733.0 / 7560.0) - 49.0 / 720.0)
                    - 1.0 / 180.0) - 1.0 / 15120.0)
        return (1.0 + a2) + s2 * (c2 + s2 * (c4 + s2 * c6))
    p = 4.0 + a2 * s * s
    th = _phase(a, s)
    c, sn = math.cos(th), math.sin(th)
    brace = ((20.0 * a2 * s * s + 32.0 - a2 * s**4 * p) * sn
             - s * math.sqrt(p) * (a2 * a2 * s**4 + 2.0 * a2 * s * s
                                   + 16.0) * c)
    return 3.0 / (s**3 * p**2.5) * brace


def _f13(a, s):
    """Free-space cross tensor, xz component; odd in the separation, ~ a."""
    if a == 0.0:
        return 0.0
    a2 = a * a
    if s < _SMALL_S:
        s2 = s * s
        c1 = -a * (1.0 + a2)
        c3 = a * (a2 * (0.6 * a2 + 0.75) + 0.15)
        c5 = a * (a2 * (a2 * (-9.0 / 35.0 * a2 - 0.35) - 0.1) - 1.0 / 140.0)
        return s * (c1 + s2 * (c3 + s2 * c5))
    p = 4.0 + a2 * s * s
    th = _phase(a, s)
    c, sn = math.cos(th), math.sin(th)
    brace = (s * math.sqrt(p) * (a2 * s * s - 2.0) * c
             + (4.0 + s * s * (4.0 + 4.0 * a2 + a2 * s * s)) * sn)
    return -6.0 * a / (s**2 * p**2.5) * brace


def f_single(a):
    """Single-atom free-space spectral tensor: (1 + a^2) times the identity."""
    if a < 0:
        raise ValueError("acceleration must be non-negative")
    return CorrelationTensor(np.eye(3) * (1.0 + a * a), kind="f_single")


def f_cross(a, L):
    """Free-space two-atom spectral tensor for separation L along z.

    Nonzero components: diagonal plus an antisymmetric xz pair generated by
    the acceleration.
    """
    if L <= 0:
        raise ValueError("separation L must be positive")
    e = np.zeros((3, 3))
    e[0, 0] = _f11(a, L)
    e[1, 1] = _f22(a, L)
    e[2, 2] = _f33(a, L)
    e[0, 2] = _f13(a, L)
    e[2, 0] = -e[0, 2]
    return CorrelationTensor(e, kind="f_cross")


def h_cross_parallel(a, y, L):
    """Boundary (image) two-atom tensor, atoms parallel to the mirror.

    Both atoms sit at height y, separated by L along z; the image pair sits
    at -y, at chord distance R = sqrt(L^2 + 4 y^2).
    """
    if y <= 0:
        raise ValueError("boundary distance y must be positive")
    if L <= 0:
        raise ValueError("separation L must be positive")
    r = math.hypot(L, 2.0 * y)
    p = 4.0 + a * a * r * r
    sq = math.sqrt(p)
    th = _phase(a, r)
    c, sn = math.cos(th), math.sin(th)
    y2, y4, y6 = y * y, y**4, y**6
    L2, L4, L6 = L * L, L**4, L**6
    a2, a4 = a * a, a**4
    r2 = r * r

    h11 = 12.0 / (r**3 * p**2.5) * (
        2.0 * r * sq * (1.0 + a2 * r2) * c
        + (-4.0 - r2 * (2.0 * a2 + a4 * r2 - 4.0 - a2 * r2)) * sn)

    q22 = 4.0 * L2 + a2 * L4 - 16.0 * a2 * y4
    h22 = 3.0 / (r**5 * p**2.5) * (
        -r * sq * ((2.0 + a2 * r2) * q22 - 64.0 * y2) * c
        - (64.0 * (2.0 + a2 * L2) * y2 + 320.0 * a2 * y4
           - 4.0 * L2 * (4.0 + a2 * L2) + r2 * p * q22) * sn)

    h33 = 3.0 / (r**5 * p**2.5) * (
        (20.0 * a2 * L4 + 32.0 * L2 * (1.0 + 2.0 * a2 * y2)
         - 64.0 * y2 * (1.0 + a2 * y2)
         + p * (16.0 * y2 - a2 * L4 + 16.0 * a2 * y4) * r2) * sn
        + r * sq * (-a4 * L6 - 2.0 * L4 * (a2 + 2.0 * a4 * y2)
                    + 16.0 * L2 * (a2 * y2 + a4 * y4 - 1.0)
                    + 32.0 * (y2 + 3.0 * a2 * y4 + 2.0 * a4 * y6)) * c)

    mix = (r * sq * (a2 * r2 - 2.0) * c
           + (4.0 + r2 * (4.0 + 4.0 * a2 + a2 * r2)) * sn)
    h12 = -12.0 * a * y / (r**3 * p**2.5) * mix
    h13 = -6.0 * a * L / (r**3 * p**2.5) * mix

    h23 = 12.0 * L * y / (r**5 * p**2.5) * (
        (2.0 + a2 * r2) * (r2 * p - 12.0) * sn
        + r * sq * (12.0 + 4.0 * a2 * r2 + a4 * r**4) * c)

    e = np.array([[h11, h12, h13],
                  [h12, h22, h23],
                  [-h13, -h23, h33]])
    return CorrelationTensor(e, kind="h_cross")


def h_self(a, y):
    """Boundary (image) tensor of a single atom at height y.

    The atom correlates with its own image at chord distance 2y; the
    reflection maps the free-space cross tensor at separation 2y onto
    permuted axes and flips the normal-normal component.
    """
    if y <= 0:
        raise ValueError("boundary distance y must be positive")
    s = 2.0 * y
    e = np.zeros((3, 3))
    e[0, 0] = _f11(a, s)
    e[1, 1] = -_f33(a, s)
    e[2, 2] = _f22(a, s)
    e[0, 1] = e[1, 0] = _f13(a, s)
    return CorrelationTensor(e, kind="h_self")


def g_cross_vertical(a, L):
    """Free-space two-atom tensor for separation L along y (vertical case).

    Same as :func:`f_cross` with the y and z axes exchanged, so the
    acceleration-induced mixing sits in the xy block.
    """
    if L <= 0:
        raise ValueError("separation L must be positive")
    e = np.zeros((3, 3))
    e[0, 0] = _f11(a, L)
    e[1, 1] = _f33(a, L)
    e[2, 2] = _f22(a, L)
    e[0, 1] = _f13(a, L)
    e[1, 0] = -e[0, 1]
    return CorrelationTensor(e, kind="g_vertical")


def tensors_vertical(a, y, L):
    """All six spectral tensors of the vertical alignment.

    Returns (g_self1, g_self2, g_cross, s_self1, s_self2, s_cross).  The
    nearer atom sits at height y, the farther one at y + L; the cross image
    distance is the mean height y + L/2.
    """
    if y <= 0:
        raise ValueError("boundary distance y must be positive")
    if L <= 0:
        raise ValueError("separation L must be positive")
    g1 = f_single(a)
    g2 = f_single(a)
    gc = g_cross_vertical(a, L)
    s1 = CorrelationTensor(h_self(a, y).entries, kind="s_vertical")
    s2 = CorrelationTensor(h_self(a, y + L).entries, kind="s_vertical")
    sc = CorrelationTensor(h_self(a, y + 0.5 * L).entries, kind="s_vertical")
    return g1, g2, gc, s1, s2, sc


# ---------------------------------------------------------------------------
# thermal factors and assembly
# ---------------------------------------------------------------------------

def coth_pi_over_a(a):
    """coth(pi/a) in omega = 1 units; 1 for an inertial atom."""
    if a == 0.0:
        return 1.0
    return 1.0 / math.tanh(math.pi / a)


def tanh_pi_over_a(a):
    if a == 0.0:
        return 1.0
    return math.tanh(math.pi / a)


def spectral_prefactor(omega0, a):
    """omega^3/(3 pi (1 - exp(-2 pi omega/a))) evaluated stably at +-omega.

    This is the overall scale of the Fourier-transformed field correlation;
    the a = 0 limit is omega^3/(3 pi) for positive frequency and 0 for
    negative frequency (no vacuum excitation of an inertial atom).
    """
    if omega0 == 0.0:
        raise ValueError("omega0 must be nonzero")
    if a == 0.0:
        return omega0**3 / (3.0 * math.pi) if omega0 > 0 else 0.0
    x = 2.0 * math.pi * abs(omega0) / a
    if omega0 > 0:
        return omega0**3 / (3.0 * math.pi * (1.0 - math.exp(-x)))
    return abs(omega0) ** 3 * math.exp(-x) / (3.0 * math.pi * (1.0 - math.exp(-x)))


def pair_tensors(config, include_boundary=True):
    """Spectral tensors (T_self1, T_self2, T_cross) entering the rates.

    Each is the free-space part minus the boundary part for the requested
    alignment; with ``include_boundary=False`` the boundary part is dropped
    (the free-space companion used for dashed-line comparisons).
    """
    a, y, L = config.a, config.y, config.L
    if config.alignment == PARALLEL:
        fs = f_single(a).entries
        if include_boundary:
            hs = h_self(a, y).entries
            hc = h_cross_parallel(a, y, L).entries
        else:
            hs = np.zeros((3, 3))
            hc = np.zeros((3, 3))
        t1 = fs - hs
        t2 = fs - hs
        tc = f_cross(a, L).entries - hc
    else:
        g1, g2, gc, s1, s2, sc = tensors_vertical(a, y, L)
        if not include_boundary:
            z = np.zeros((3, 3))
            s1 = s2 = sc = CorrelationTensor(z, kind="s_vertical")
        t1 = g1.entries - s1.entries
        t2 = g2.entries - s2.entries
        tc = gc.entries - sc.entries
    return t1, t2, tc


def assemble(config, include_boundary=True):
    """Six master-equation rates from the closed-form spectral tensors."""
    t1, t2, tc = pair_tensors(config, include_boundary=include_boundary)
    coth = coth_pi_over_a(config.a)
    th = tanh_pi_over_a(config.a)
    scale = 0.25 * config.gamma0 * coth
    a1 = scale * float(config.d1 @ t1 @ config.d1)
    a2 = scale * float(config.d2 @ t2 @ config.d2)
    a3 = scale * float(config.d1 @ tc @ config.d2)
    return CoefficientSet(a1, a2, a3, a1 * th, a2 * th, a3 * th,
                          provenance="closed_form")


def assemble_free_space(config):
    """Rates with the boundary terms dropped (free-space companion)."""
    cs = assemble(config, include_boundary=False)
    return replace(cs, provenance="closed_form_free_space")


def near_boundary_expansion(config):
    """Leading y/L -> 0 behaviour of the rates, one formula per alignment.

    These are independent power-series results used only to cross-validate
    :func:`assemble` very close to the mirror; they are not a production
    path.
    """
    a, L = config.a, config.L
    g0 = config.gamma0
    coth = coth_pi_over_a(a)
    th = tanh_pi_over_a(a)
    d1, d2 = config.d1, config.d2
    a2, a4 = a * a, a**4
    L2, L3, L4, L6 = L * L, L**3, L**4, L**6

    if config.alignment == PARALLEL:
        a1 = 0.5 * g0 * coth * d1[1] * d1[1] * (a2 + 1.0)
        a2c = 0.5 * g0 * coth * d2[1] * d2[1] * (a2 + 1.0)
        p = 4.0 + a2 * L2
        thp = _phase(a, L)
        c, sn = math.cos(thp), math.sin(thp)
        a3 = (3.0 * g0 * coth / (2.0 * L3 * p**1.5) * d1[1] * d2[1]
              * (L * math.sqrt(p) * (2.0 + a2 * L2) * c
                 + (-4.0 + L2 * p) * sn))
        cs = CoefficientSet(a1, a2c, a3, a1 * th, a2c * th, a3 * th,
                            provenance="near_boundary")
        return cs

    # vertical alignment
    a1 = 0.5 * g0 * coth * d1[1] * d1[1] * (a2 + 1.0)

    q = 1.0 + a2 * L2
    phi = _phase(a, 2.0 * L)  # (2/a) asinh(a L)
    c, sn = math.cos(phi), math.sin(phi)
    dx, dy, dz = d2[0], d2[1], d2[2]
    cos_part = (dx * dx * (1.0 + 4.0 * a2 * L2)
                + dz * dz * (1.0 + 2.0 * a2 * L2) * q
                + dy * dy * (2.0 + a2 * L2 + 2.0 * a4 * L4)
                - 2.0 * dx * dy * a * L * (2.0 * a2 * L2 - 1.0))
    sin_part = (dx * dx * (1.0 + 2.0 * a2 * L2 + 4.0 * a4 * L4
                           - 4.0 * L2 - 4.0 * a2 * L4)
                + dz * dz * (1.0 - 4.0 * L2 - 4.0 * a2 * L4) * q
                + dy * dy * (2.0 + 5.0 * a2 * L2 - 4.0 * a2 * L4
                             - 4.0 * a4 * L6)
                + 2.0 * a * L * dx * dy * (1.0 + 4.0 * a2 * L2
                                           + 4.0 * L2 + 4.0 * a2 * L4))
    a2c = (-3.0 * g0 * coth / (64.0 * L3 * q**2.5)
           * (2.0 * L * math.sqrt(q) * cos_part * c - sin_part * sn)
           + 0.25 * g0 * coth * (a2 + 1.0))

    p = 4.0 + a2 * L2
    thp = _phase(a, L)
    c, sn = math.cos(thp), math.sin(thp)
    cos3 = (d1[1] * d2[1] * (16.0 + 2.0 * a2 * L2 + a4 * L4)
            - 2.0 * a * L * d1[1] * d2[0] * (a2 * L2 - 2.0))
    sin3 = (2.0 * a * L * d1[1] * d2[0] * (4.0 + 4.0 * L2 + 4.0 * a2 * L2
                                           + a2 * L4)
            + d1[1] * d2[1] * (32.0 + 20.0 * a2 * L2 - 4.0 * a2 * L4
                               - a4 * L6))
    a3 = (-3.0 * g0 * coth / (2.0 * L3 * p**2.5)
          * (L * math.sqrt(p) * cos3 * c - sin3 * sn))

    return CoefficientSet(a1, a2c, a3, a1 * th, a2c * th, a3 * th,
                          provenance="near_boundary")


def spectral_tensor(config, pair, part):
    """Closed-form spectral tensor for one atom pair and kernel part.

    pair is (1, 1), (2, 2), (1, 2) or (2, 1); part is "free" or "boundary".
    The Fourier transform of the field correlation along the orbit is
    ``spectral_prefactor(omega0, a) * (free - boundary)``, so the boundary
    kernel alone transforms to minus the returned boundary tensor times the
    prefactor.
    """
    if part not in ("free", "boundary"):
        raise ValueError("part must be 'free' or 'boundary'")
    alpha, beta = pair
    if alpha not in (1, 2) or beta not in (1, 2):
        raise ValueError("atom indices must be 1 or 2")
    a, y, L = config.a, config.y, config.L
    if config.alignment == PARALLEL:
        if alpha == beta:
            t = f_single(a) if part == "free" else h_self(a, y)
        else:
            t = (f_cross(a, L) if part == "free"
                 else h_cross_parallel(a, y, L))
            if (alpha, beta) == (2, 1):
                t = CorrelationTensor(t.entries.T, kind=t.kind)
    else:
        g1, g2, gc, s1, s2, sc = tensors_vertical(a, y, L)
        table = {
            (1, 1): g1 if part == "free" else s1,
            (2, 2): g2 if part == "free" else s2,
            (1, 2): gc if part == "free" else sc,
        }
        if (alpha, beta) == (2, 1):
            t = table[(1, 2)]
            t = CorrelationTensor(t.entries.T, kind=t.kind)
        else:
            t = table[(alpha, beta)]
    return t
