"""The Weyl *-algebra over a symplectic space of registered generators.

Elements are finite complex combinations of formal unitaries W(v) keyed by
exact symplectic vectors.  The product twists by e^{-i sigma(v,v')/2}; keys
stay exact, only the phases are floats.

Also provides the two-stage (crossed-product) presentation: an element is a
triple (zeta, h, l) standing for zeta * W(h) * W(l), where h is an observable
vector and l = (c, n) lives on the elementary charge plane spanned by the
regularizer's density A and the central unit e.  The staged product law is
checked against the embedded global product in the tests.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .errors import ElementParseError
from .symplectic import Space, SymVector, ZERO, sigma_plane

COEFF_EPS = 1e-15


class WeylElement:
    """Finite combination sum_k a_k W(v_k), canonically normalized."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Tuple[SymVector, complex]]):
        acc: Dict[SymVector, complex] = {}
        for v, a in terms:
            acc[v] = acc.get(v, 0j) + complex(a)
        object.__setattr__(
            self,
            "_terms",
            tuple(
                sorted(
                    ((v, a) for v, a in acc.items() if abs(a) >= COEFF_EPS),
                    key=lambda t: t[0].items(),
                )
            ),
        )

    def terms(self) -> Tuple[Tuple[SymVector, complex], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple((v, round(a.real, 12), round(a.imag, 12)) for v, a in self._terms))

    def __repr__(self):
        if not self._terms:
            return "WeylElement(0)"
        return "WeylElement(" + " + ".join(f"({a:.6g})W[{v}]" for v, a in self._terms) + ")"


def weyl_word(v: SymVector, coeff: complex = 1.0) -> WeylElement:
    return WeylElement([(v, coeff)])


IDENTITY = weyl_word(ZERO)


def weyl_add(A: WeylElement, B: WeylElement) -> WeylElement:
    return WeylElement(A.terms() + B.terms())


def weyl_scale(A: WeylElement, z: complex) -> WeylElement:
    return WeylElement((v, z * a) for v, a in A.terms())


def weyl_mul(space: Space, A: WeylElement, B: WeylElement) -> WeylElement:
    out = []
    for v, a in A.terms():
        for w, b in B.terms():
            phase = cmath.exp(-0.5j * space.sigma(v, w))
            out.append((v + w, a * b * phase))
    return WeylElement(out)


def weyl_star(A: WeylElement) -> WeylElement:
    return WeylElement(((-v), a.conjugate()) for v, a in A.terms())


def max_coeff_distance(A: WeylElement, B: WeylElement) -> float:
    """Largest coefficient discrepancy between two elements, keywise."""
    coeffs: Dict[SymVector, complex] = {v: a for v, a in A.terms()}
    worst = 0.0
    for v, b in B.terms():
        worst = max(worst, abs(coeffs.pop(v, 0j) - b))
    for a in coeffs.values():
        worst = max(worst, abs(a))
    return worst


def cocycle_defect(space: Space, r: SymVector, s: SymVector, t: SymVector) -> float:
    return abs(
        space.sigma(s, t)
        + space.sigma(r, s + t)
        - space.sigma(r, s)
        - space.sigma(r + s, t)
    )


def cocycle_check(
    space: Space, r: SymVector, s: SymVector, t: SymVector, tol: float = 1e-9
) -> bool:
    return cocycle_defect(space, r, s, t) <= tol


# ---------------------------------------------------------------------------
# staged (crossed-product) presentation


@dataclass(frozen=True)
class Staged:
    zeta: complex
    h: SymVector
    c: Fraction
    n: Fraction


class CrossedProduct:
    """Two-stage presentation relative to a regularizer's charge plane."""

    def __init__(self, space: Space, T: SymVector):
        self.space = space
        self.A = space.slot_part(T, 0)
        self.e = space.unit_vector()

    def plane_vector(self, c: Fraction, n: Fraction) -> SymVector:
        return self.A.scale(c) + self.e.scale(n)

    def alpha(self, h: SymVector, c: Fraction, n: Fraction) -> float:
        return self.space.sigma(h, self.plane_vector(c, n))

    def product(self, x: Staged, y: Staged) -> Staged:
        # zeta W(h) W(l) * zeta' W(h') W(l'): moving W(l) past W(h') costs
        # e^{+i sigma(h', l)}, then both stages fuse with their own half-phases
        phase = (
            cmath.exp(1j * self.alpha(y.h, x.c, x.n))
            * cmath.exp(-0.5j * self.space.sigma(x.h, y.h))
            * cmath.exp(-0.5j * sigma_plane((x.c, x.n), (y.c, y.n)))
        )
        return Staged(x.zeta * y.zeta * phase, x.h + y.h, x.c + y.c, x.n + y.n)

    def inverse(self, x: Staged) -> Staged:
        zeta = cmath.exp(1j * self.alpha(x.h, x.c, x.n)) / x.zeta
        return Staged(zeta, -x.h, -x.c, -x.n)

    def embed(self, x: Staged) -> WeylElement:
        l_vec = self.plane_vector(x.c, x.n)
        phase = cmath.exp(-0.5j * self.space.sigma(x.h, l_vec))
        return weyl_word(x.h + l_vec, x.zeta * phase)

    def conjugate(self, s: Staged, m: Staged) -> Staged:
        return self.product(self.product(s, m), self.inverse(s))


# ---------------------------------------------------------------------------
# element literals:  2.0+0.0i * W[gen1 + 3/2 gen4] - W[0] + 1i * W[q0]

def _parse_coeff(text: str) -> complex:
    t = text.strip()
    if not t:
        raise ElementParseError("empty coefficient")
    try:
        return complex(t.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise ElementParseError(f"bad coefficient {text!r}") from None


def _parse_combo(space: Space, body: str) -> SymVector:
    body = body.strip()
    if body == "0" or not body:
        return ZERO
    # split into signed summands
    parts = re.findall(r"[+-]?[^+-]+", body)
    v = ZERO
    for part in parts:
        part = part.strip()
        sign = Fraction(1)
        if part.startswith("-"):
            sign = Fraction(-1)
            part = part[1:].strip()
        elif part.startswith("+"):
            part = part[1:].strip()
        m = re.match(r"^(?:(\d+(?:/\d+)?)\s+)?([A-Za-z_]\w*)$", part)
        if not m:
            raise ElementParseError(f"bad generator term {part!r}")
        coeff = sign * (Fraction(m.group(1)) if m.group(1) else Fraction(1))
        v = v + space.generator(m.group(2)).scale(coeff)
    return v


def parse_element(space: Space, text: str) -> WeylElement:
    """Parse `coeff * W[combo] +/- ...` into a WeylElement."""
    terms = []
    pos = 0
    pending_sign = 1.0
    s = text.strip()
    if not s:
        raise ElementParseError("empty element literal")
    while pos < len(s):
        bracket = s.find("W[", pos)
        if bracket < 0:
            raise ElementParseError(f"expected W[...] near {s[pos:]!r}")
        close = s.find("]", bracket)
        if close < 0:
            raise ElementParseError("unterminated W[")
        head = s[pos:bracket].strip()
        coeff = complex(1.0)
        if head.endswith("*"):
            coeff = _parse_coeff(head[:-1])
        elif head == "-":
            coeff = complex(-1.0)
        elif head and head != "+":
            raise ElementParseError(f"unexpected text before W[: {head!r}")
        v = _parse_combo(space, s[bracket + 2 : close])
        terms.append((v, pending_sign * coeff))
        pos = close + 1
        rest = s[pos:].lstrip()
        if not rest:
            break
        if rest[0] == "+":
            pending_sign = 1.0
        elif rest[0] == "-":
            pending_sign = -1.0
        else:
            raise ElementParseError(f"expected + or - near {rest!r}")
        pos = len(s) - len(rest) + 1
    return WeylElement(terms)
