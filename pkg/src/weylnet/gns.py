"""Non-regular GNS representation of the elementary charge-plane algebra.

Vectors live in l2 over the discrete reals: finitely many charge amplitudes,
with the basis convention |c> = |c, 0> and the folding |c, n> = e^{i c n / 2}
|c, 0>.  Distinct charges are exactly orthogonal, which is what breaks weak
continuity in the charge direction.

The represented action of W(c, n) on |c'> composes the Weyl twist with the
folding back to n = 0 representatives; the composite phase is e^{i n (c/2 +
c')}, validated in the tests against the literal two-step computation.

sector_trace is the unique tracial state of the nondegenerate plane algebra:
the coefficient of the zero key (both coordinates zero).  The GNS-defining
delta state itself (charge zero, any central component) lives in `states` and
is not tracial.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from .errors import InvalidKey
from .symplectic import Space, SymVector
from .weyl import WeylElement


class GnsVector:
    """Finite complex combination of charge basis vectors |c>."""

    __slots__ = ("_amps",)

    def __init__(self, amps: Iterable[Tuple[Fraction, complex]]):
        acc: Dict[Fraction, complex] = {}
        for c, a in amps:
            c = Fraction(c)
            acc[c] = acc.get(c, 0j) + complex(a)
        object.__setattr__(
            self,
            "_amps",
            tuple(sorted((c, a) for c, a in acc.items() if a != 0)),
        )

    def amps(self) -> Tuple[Tuple[Fraction, complex], ...]:
        return self._amps

    def charges(self) -> Tuple[Fraction, ...]:
        return tuple(c for c, _ in self._amps)

    def norm(self) -> float:
        return sum(abs(a) ** 2 for _, a in self._amps) ** 0.5

    def __add__(self, other: "GnsVector") -> "GnsVector":
        return GnsVector(self._amps + other._amps)

    def __sub__(self, other: "GnsVector") -> "GnsVector":
        return self + other.scale(-1)

    def scale(self, z: complex) -> "GnsVector":
        return GnsVector((c, z * a) for c, a in self._amps)

    def __eq__(self, other) -> bool:
        return isinstance(other, GnsVector) and self._amps == other._amps

    def __repr__(self) -> str:
        if not self._amps:
            return "GnsVector(0)"
        return "GnsVector(" + " + ".join(f"({a:.6g})|{c}>" for c, a in self._amps) + ")"


def basis(c) -> GnsVector:
    return GnsVector([(Fraction(c), 1.0)])


VACUUM = basis(0)


def fold_phase(c: Fraction, n: float) -> complex:
    """|c, n> = fold_phase(c, n) |c, 0>."""
    return cmath.exp(0.5j * float(c) * float(n))


def sector_inner(u: GnsVector, v: GnsVector) -> complex:
    amps = dict(u.amps())
    return sum(amps[c].conjugate() * a for c, a in v.amps() if c in amps)


def apply_elementary(c, n, v: GnsVector) -> GnsVector:
    """pi(W(c, n)) on stored |c', 0> representatives.

    Composite phase: Weyl twist e^{i c' n / 2} times refolding e^{i (c + c')
    n / 2}, i.e. e^{i n (c/2 + c')}.
    """
    c = Fraction(c)
    n = float(n)
    return GnsVector(
        (c + cp, a * cmath.exp(1j * n * (float(c) / 2.0 + float(cp))))
        for cp, a in v.amps()
    )


def _plane_coordinates(space: Space, v: SymVector) -> Tuple[Fraction, Fraction]:
    _, f1 = space.assemble(v)
    if np.ptp(f1.samples) or f1.left_limit != f1.right_limit:
        raise InvalidKey("key is not an elementary charge-plane vector")
    ch = space.charges(v)
    return ch.c, ch.inf


def apply_word(space: Space, A: WeylElement, v: GnsVector) -> GnsVector:
    out = GnsVector(())
    for key, coeff in A.terms():
        c, n = _plane_coordinates(space, key)
        out = out + apply_elementary(c, n, v).scale(coeff)
    return out


def sector_trace(space: Space, A: WeylElement) -> complex:
    total = 0j
    for key, coeff in A.terms():
        c, n = _plane_coordinates(space, key)
        if c == 0 and n == 0:
            total += coeff
    return total


def gns_expectation(space: Space, A: WeylElement) -> complex:
    """<0| pi(A) |0>: the (non-tracial) delta state defining the sector."""
    return sector_inner(VACUUM, apply_word(space, A, VACUUM))


def phi_n_apply(v: GnsVector) -> GnsVector:
    """The central generator: Phi_N |c> = c |c>."""
    return GnsVector((c, float(c) * a) for c, a in v.amps())


def phi_n_difference_defect(v: GnsVector, n: float) -> float:
    """|| (pi(W(0, n)) - I) / (i n) v - Phi_N v ||, O(n) as n -> 0."""
    diff = (apply_elementary(0, n, v) - v).scale(1.0 / (1j * n))
    return (diff - phi_n_apply(v)).norm()


def norm_distance(
    l1: Tuple[Fraction, float],
    l2: Tuple[Fraction, float],
    probes: Sequence[Fraction],
) -> float:
    """Operator norm of pi(W(l1)) - pi(W(l2)) compressed to the span of the
    probe charge basis vectors."""
    images = []
    for d in probes:
        images.append(apply_elementary(l1[0], l1[1], basis(d)) - apply_elementary(
            l2[0], l2[1], basis(d)
        ))
    support = sorted({c for img in images for c in img.charges()})
    index = {c: i for i, c in enumerate(support)}
    M = np.zeros((len(support), len(probes)), dtype=complex)
    for j, img in enumerate(images):
        for c, a in img.amps():
            M[index[c], j] = a
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def non_regularity_witness(c: Fraction, lambdas: Sequence[Fraction]) -> dict:
    """<0| pi(W(lambda c, 0)) |0> as a function of lambda: the indicator of
    lambda c = 0, with no continuity at 0."""
    out = {}
    for lam in lambdas:
        val = sector_inner(VACUUM, apply_elementary(Fraction(lam) * Fraction(c), 0.0, VACUUM))
        out[Fraction(lam)] = val
    return out
