"""Left/right-mover decomposition of Cauchy data and the form at infinity.

theta_pm(x) = (f1(x) +/- integral_{-inf}^x f0) / 2, with the inverse
f0 = d(theta_+ - theta_-), f1 = theta_+ + theta_-.

The antiderivative/derivative used here form an exact discrete inverse pair:
the declared charge multiple of a reference compact kink is split off in
closed form, and the decaying zero-mean remainder is integrated and
differentiated spectrally on the same DFT grid.  This keeps the round trip at
machine precision, which a finite-difference derivative of a cumulative
quadrature cannot do (its half-step ripple is amplified by 1/h).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from .funcspace import (
    Grid,
    TestFunction,
    derivative,
    make_kink,
    pairing,
)
from .symplectic import Space, SymVector


@dataclass(frozen=True)
class ChiralPair:
    theta_plus: TestFunction
    theta_minus: TestFunction
    c_plus: Fraction
    c_minus: Fraction


def _spectral_int(samples: np.ndarray, h: float) -> np.ndarray:
    """Periodic antiderivative of a decaying zero-mean sample set, G(x0) = 0."""
    n = len(samples)
    ft = np.fft.rfft(samples)
    p = 2.0 * np.pi * np.fft.rfftfreq(n, d=h)
    out = np.zeros_like(ft)
    out[1:] = ft[1:] / (1j * p[1:])
    if n % 2 == 0:
        out[-1] = 0.0
    g = np.fft.irfft(out, n=n)
    return g - g[0]


def _spectral_deriv(samples: np.ndarray, h: float) -> np.ndarray:
    n = len(samples)
    ft = np.fft.rfft(samples)
    p = 2.0 * np.pi * np.fft.rfftfreq(n, d=h)
    ft *= 1j * p
    if n % 2 == 0:
        ft[-1] = 0.0
    return np.fft.irfft(ft, n=n)


class _KinkCache(dict):
    def for_grid(self, grid: Grid) -> Tuple[TestFunction, np.ndarray]:
        if grid not in self:
            k_deriv = make_kink(Fraction(0), Fraction(1), True, grid=grid, form="deriv")
            k_step = make_kink(Fraction(0), Fraction(1), True, grid=grid, form="step")
            # unit step from 0 to 1
            self[grid] = (k_deriv, k_step.samples + 0.5)
        return self[grid]


_KINKS = _KinkCache()


def _charge_antiderivative(f0: TestFunction, f_c: Fraction) -> np.ndarray:
    """Antiderivative of f0 with exact limits (0, f_c): kink part in closed
    form, spectral integral of the decaying zero-charge remainder."""
    k_deriv, k_step = _KINKS.for_grid(f0.grid)
    fc = float(f_c)
    g = f0.samples - fc * k_deriv.samples
    return fc * k_step + _spectral_int(g, f0.grid.step)


def dalembert(space: Space, v: SymVector) -> ChiralPair:
    f0, f1 = space.assemble(v)
    ch = space.charges(v)
    cum = _charge_antiderivative(f0, ch.c)
    # d(theta_pm) = (d f1 +/- f0)/2, with d f1 from the atoms' closed forms
    df1 = space.slot1_derivative(v)
    d_p = TestFunction(
        space.grid, (df1.samples + f0.samples) / 2.0, Fraction(0), Fraction(0), None
    )
    d_m = TestFunction(
        space.grid, (df1.samples - f0.samples) / 2.0, Fraction(0), Fraction(0), None
    )
    theta_p = TestFunction(
        space.grid,
        (f1.samples + cum) / 2.0,
        f1.left_limit / 2,
        (f1.right_limit + ch.c) / 2,
        None,
        deriv=d_p,
    )
    theta_m = TestFunction(
        space.grid,
        (f1.samples - cum) / 2.0,
        f1.left_limit / 2,
        (f1.right_limit - ch.c) / 2,
        None,
        deriv=d_m,
    )
    return ChiralPair(theta_p, theta_m, (ch.q + ch.c) / 2, (ch.q - ch.c) / 2)


_INVERSE_COUNTER = itertools.count()


def dalembert_inverse(space: Space, pair: ChiralPair) -> SymVector:
    """Reconstruct the Cauchy pair and register it as a fresh generator."""
    f_c = pair.c_plus - pair.c_minus
    grid = pair.theta_plus.grid
    k_deriv, k_step = _KINKS.for_grid(grid)
    delta = pair.theta_plus.samples - pair.theta_minus.samples
    residue = delta - float(f_c) * k_step
    f0_samples = float(f_c) * k_deriv.samples + _spectral_deriv(residue, grid.step)
    # restore the constant (DC) component the spectral derivative cannot see:
    # the declared charge pins the Simpson integral exactly
    from .funcspace import _simpson_value

    f0_samples = f0_samples + (float(f_c) - _simpson_value(f0_samples, grid)) / float(
        grid.x1 - grid.x0
    )
    f0 = TestFunction(grid, f0_samples, Fraction(0), Fraction(0), f_c)
    f1 = TestFunction(
        grid,
        pair.theta_plus.samples + pair.theta_minus.samples,
        pair.theta_plus.left_limit + pair.theta_minus.left_limit,
        pair.theta_plus.right_limit + pair.theta_minus.right_limit,
        None,
    )
    name = f"__dalembert_inv_{next(_INVERSE_COUNTER)}"
    return space.register_pair(name, f0, f1)


def sigma_chiral(sign: int, theta: TestFunction, phi: TestFunction) -> float:
    """sigma_pm(theta, phi) = +/- integral (phi d(theta) - theta d(phi)) dx."""
    val = pairing(phi, derivative(theta)) - pairing(theta, derivative(phi))
    return sign * val


def sigma_infinity(p: ChiralPair, q: ChiralPair) -> float:
    """Plane form on the right-limit data (theta_+(+inf), theta_-(+inf))."""
    a1, b1 = p.theta_plus.right_limit, p.theta_minus.right_limit
    a2, b2 = q.theta_plus.right_limit, q.theta_minus.right_limit
    return float(a1 * b2 - b1 * a2)


def sigma_decomposed(p: ChiralPair, q: ChiralPair) -> float:
    return (
        sigma_chiral(+1, p.theta_plus, q.theta_plus)
        + sigma_chiral(-1, p.theta_minus, q.theta_minus)
        + sigma_infinity(p, q)
    )


def recenter(theta: TestFunction) -> Tuple[TestFunction, Fraction]:
    """Subtract the mean of the limits so the result has opposite limits."""
    mid = (theta.left_limit + theta.right_limit) / 2
    out = TestFunction(
        theta.grid,
        theta.samples - float(mid),
        theta.left_limit - mid,
        theta.right_limit - mid,
        None,
        deriv=theta.deriv,
    )
    return out, mid


@dataclass(frozen=True)
class ChiralRegularizers:
    s_plus: TestFunction
    s_minus: TestFunction
    c_plus: Fraction
    c_minus: Fraction


def make_regularizers(space: Space, T: SymVector) -> ChiralRegularizers:
    """S_+ from the right mover of T; S_- from the charge-reflected copy.

    For T = (dt, t) with unit charges the right mover recenters to t itself
    and the reflected copy's left mover to -t, so both are taken in that
    closed form: each has integral S dS = 0 by symmetry and a nonzero chiral
    charge (+1 and -1).
    """
    ch = space.charges(T)
    if ch.c == 0 or ch.q == 0:
        from .errors import DegenerateRegularizer

        raise DegenerateRegularizer(f"regularizer charges {ch.c}, {ch.q}")
    _, t_raw = space.assemble(space.slot_part(T, 1))
    dt = space.slot1_derivative(T)
    t_fn = TestFunction(
        space.grid,
        t_raw.samples,
        t_raw.left_limit,
        t_raw.right_limit,
        None,
        deriv=dt,
    )
    s_plus, _ = recenter(t_fn)
    neg_dt = TestFunction(
        space.grid, -dt.samples, Fraction(0), Fraction(0), None
    )
    s_minus = TestFunction(
        space.grid,
        -s_plus.samples,
        -s_plus.left_limit,
        -s_plus.right_limit,
        None,
        deriv=neg_dt,
    )
    return ChiralRegularizers(
        s_plus,
        s_minus,
        s_plus.right_limit - s_plus.left_limit,
        s_minus.right_limit - s_minus.left_limit,
    )
