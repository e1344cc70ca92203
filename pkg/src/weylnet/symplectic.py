"""Symplectic space of Cauchy-data pairs over a registered generator set.

A generator is a pair (f0, f1) of test functions; internally every pair is
split into slot atoms and a vector is a finite rational combination of atoms.
This keeps vector identity, charges, and the regularized decomposition exact:
only the symplectic form itself and the T-relative moments are quadrature
values.

The symplectic form is sigma(F, G) = integral (f0*g1 - g0*f1) dx, so atoms in
the same slot pair to zero and cross-slot pairs reduce to a cached integral
Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np

from .errors import DegenerateRegularizer, NotInDomain, UnknownGenerator
from .funcspace import (
    EMPTY,
    Grid,
    Interval,
    TestFunction,
    constant_function,
    fock_norm_sq,
    localization,
    pairing,
    resample,
)


@dataclass(frozen=True)
class Charges:
    """Exact charges: c = slot-0 integral, q = slot-1 limit jump, inf = mean limit."""

    c: Fraction
    q: Fraction
    inf: Fraction


class SymVector:
    """Immutable rational combination of registered atoms."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[Tuple[int, Fraction]]):
        acc: Dict[int, Fraction] = {}
        for aid, coeff in items:
            acc[aid] = acc.get(aid, Fraction(0)) + Fraction(coeff)
        object.__setattr__(
            self,
            "_items",
            tuple(sorted((a, c) for a, c in acc.items() if c != 0)),
        )

    def items(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._items

    def is_zero(self) -> bool:
        return not self._items

    def __add__(self, other: "SymVector") -> "SymVector":
        return SymVector(self._items + other._items)

    def __sub__(self, other: "SymVector") -> "SymVector":
        return self + (-other)

    def __neg__(self) -> "SymVector":
        return SymVector((a, -c) for a, c in self._items)

    def scale(self, k) -> "SymVector":
        k = Fraction(k)
        return SymVector((a, k * c) for a, c in self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymVector) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        if not self._items:
            return "SymVector(0)"
        return "SymVector(" + " + ".join(f"{c}*a{a}" for a, c in self._items) + ")"


ZERO = SymVector(())


@dataclass(frozen=True)
class Atom:
    name: str
    slot: int
    fn: TestFunction


@dataclass(frozen=True)
class PsiImage:
    """Result of the regularized splitting: decaying part plus two planes."""

    tangent: SymVector
    l_part: Tuple[Fraction, float]  # (F_c, F_n)
    m_part: Tuple[float, Fraction]  # (F_r, F_q)


def sigma_plane(a: Tuple, b: Tuple) -> float:
    """Standard form on a coordinate plane: (x, y), (x', y') -> x y' - x' y."""
    return float(a[0]) * float(b[1]) - float(b[0]) * float(a[1])


SPACE_LABELS = ("Va", "Vb", "Vc", "Vq", "Ve", "Vf")


class Space:
    def __init__(self, grid: Grid):
        self.grid = grid
        self.atoms: list[Atom] = []
        self._generators: Dict[str, SymVector] = {}
        self._gram: Dict[Tuple[int, int], float] = {}
        self._unit_atom: Optional[int] = None

    # -- registration ------------------------------------------------------

    def _add_atom(self, name: str, slot: int, fn: TestFunction) -> int:
        fn = resample(fn, self.grid)
        if slot == 0:
            if fn.integral is None:
                raise NotInDomain(f"slot-0 function {name!r} needs a declared integral")
            if fn.left_limit != 0 or fn.right_limit != 0:
                raise NotInDomain(f"slot-0 function {name!r} must have zero limits")
        self.atoms.append(Atom(name, slot, fn))
        return len(self.atoms) - 1

    def register_pair(
        self,
        name: str,
        f0: Optional[TestFunction],
        f1: Optional[TestFunction],
    ) -> SymVector:
        if name in self._generators:
            raise ValueError(f"generator {name!r} already registered")
        parts = []
        if f0 is not None and not f0.is_zero():
            parts.append((self._add_atom(f"{name}.0", 0, f0), Fraction(1)))
        if f1 is not None and not f1.is_zero():
            parts.append((self._add_atom(f"{name}.1", 1, f1), Fraction(1)))
        v = SymVector(parts)
        self._generators[name] = v
        return v

    def generator(self, name: str) -> SymVector:
        try:
            return self._generators[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def generator_names(self) -> Tuple[str, ...]:
        return tuple(self._generators)

    def vector(self, combo: Dict[str, Fraction]) -> SymVector:
        out = ZERO
        for name, coeff in combo.items():
            out = out + self.generator(name).scale(coeff)
        return out

    def slot_part(self, v: SymVector, slot: int) -> SymVector:
        return SymVector(
            (a, c) for a, c in v.items() if self.atoms[a].slot == slot
        )

    def unit_vector(self) -> SymVector:
        """The constant-one slot-1 atom (the central direction)."""
        if self._unit_atom is None:
            for i, atom in enumerate(self.atoms):
                if (
                    atom.slot == 1
                    and atom.fn.left_limit == 1
                    and atom.fn.right_limit == 1
                    and not np.ptp(atom.fn.samples)
                ):
                    self._unit_atom = i
                    break
            else:
                self._unit_atom = self._add_atom(
                    "__unit__", 1, constant_function(Fraction(1), self.grid)
                )
        return SymVector([(self._unit_atom, Fraction(1))])

    # -- symplectic form ----------------------------------------------------

    def _gram_entry(self, i: int, j: int) -> float:
        ai, aj = self.atoms[i], self.atoms[j]
        if ai.slot == aj.slot:
            return 0.0
        if ai.slot == 1:
            return -self._gram_entry(j, i)
        key = (i, j)
        if key not in self._gram:
            self._gram[key] = pairing(ai.fn, aj.fn)
        return self._gram[key]

    def sigma(self, v: SymVector, w: SymVector) -> float:
        total = 0.0
        for a, ca in v.items():
            for b, cb in w.items():
                if self.atoms[a].slot != self.atoms[b].slot:
                    total += float(ca) * float(cb) * self._gram_entry(a, b)
        return total

    # -- charges and membership ----------------------------------------------

    def charges(self, v: SymVector) -> Charges:
        c = Fraction(0)
        plus = Fraction(0)
        minus = Fraction(0)
        for a, coeff in v.items():
            atom = self.atoms[a]
            if atom.slot == 0:
                c += coeff * atom.fn.integral
            else:
                plus += coeff * atom.fn.right_limit
                minus += coeff * atom.fn.left_limit
        return Charges(c, plus - minus, (plus + minus) / 2)

    def in_space(self, v: SymVector, label: str) -> bool:
        ch = self.charges(v)
        if label == "Va":
            return ch.c == 0 and ch.q == 0 and ch.inf == 0
        if label == "Vb":
            return ch.c == 0 and ch.q == 0
        if label == "Vc":
            return ch.q == 0
        if label == "Vq":
            return ch.c == 0 and ch.inf == 0
        if label == "Ve":
            return ch.c == 0
        if label == "Vf":
            return True
        raise ValueError(f"unknown space label {label!r}")

    def is_central(self, v: SymVector) -> bool:
        """True when v lies on the constant slot-1 line (zero slot 0)."""
        f0, f1 = self.assemble(v)
        return f0.is_zero() and not np.ptp(f1.samples) and f1.left_limit == f1.right_limit

    def split_off_center(self, v: SymVector) -> Tuple[SymVector, Fraction]:
        ch = self.charges(v)
        return v - self.unit_vector().scale(ch.inf), ch.inf

    # -- assembly ------------------------------------------------------------

    def assemble(self, v: SymVector) -> Tuple[TestFunction, TestFunction]:
        s0 = np.zeros(self.grid.n)
        s1 = np.zeros(self.grid.n)
        integ0 = Fraction(0)
        left = Fraction(0)
        right = Fraction(0)
        for a, coeff in v.items():
            atom = self.atoms[a]
            if atom.slot == 0:
                s0 += float(coeff) * atom.fn.samples
                integ0 += coeff * atom.fn.integral
            else:
                s1 += float(coeff) * atom.fn.samples
                left += coeff * atom.fn.left_limit
                right += coeff * atom.fn.right_limit
        f0 = TestFunction(self.grid, s0, Fraction(0), Fraction(0), integ0)
        f1 = TestFunction(self.grid, s1, left, right, None)
        return f0, f1

    def slot1_derivative(self, v: SymVector) -> TestFunction:
        """Derivative of the slot-1 component, using the atoms' closed forms."""
        from .funcspace import derivative

        s = np.zeros(self.grid.n)
        jump = Fraction(0)
        for a, coeff in v.items():
            atom = self.atoms[a]
            if atom.slot == 1:
                s += float(coeff) * derivative(atom.fn).samples
                jump += coeff * (atom.fn.right_limit - atom.fn.left_limit)
        return TestFunction(self.grid, s, Fraction(0), Fraction(0), jump)

    def localization(self, v: SymVector) -> Union[Interval, type(EMPTY)]:
        f0, f1 = self.assemble(v)
        return localization(f0, f1)

    def fock_norm_sq(self, v: SymVector) -> float:
        f0, f1 = self.assemble(v)
        return fock_norm_sq(f0, f1)

    # -- T-relative moments and the regularized splitting ----------------------

    def rel_charge_n(self, v: SymVector, T: SymVector) -> float:
        """F_n = integral f1 * (slot-0 part of T) dx."""
        t0, _ = self.assemble(self.slot_part(T, 0))
        _, f1 = self.assemble(v)
        return pairing(f1, t0)

    def rel_charge_r(self, v: SymVector, T: SymVector) -> float:
        """F_r = integral f0 * (slot-1 part of T) dx."""
        _, t1 = self.assemble(self.slot_part(T, 1))
        f0, _ = self.assemble(v)
        return pairing(f0, t1)

    def psi_T(self, v: SymVector, T: SymVector) -> PsiImage:
        """Split v into a fully decaying part and two symplectic planes.

        The decaying part subtracts rational multiples of T's slots and of the
        central constant, chosen so all three charges of the remainder vanish
        exactly.  The plane coordinates are (F_c, F_n) and (F_r, F_q); the
        total symplectic form is the sum of the three pieces when T's slots
        have unit charges and pair to zero against each other.
        """
        tch = self.charges(T)
        if tch.c == 0 or tch.q == 0:
            raise DegenerateRegularizer(f"regularizer charges {tch.c}, {tch.q}")
        ch = self.charges(v)
        a = ch.c / tch.c
        b = ch.q / tch.q
        gamma = ch.inf - b * tch.inf
        tangent = (
            v
            - self.slot_part(T, 0).scale(a)
            - self.slot_part(T, 1).scale(b)
            - self.unit_vector().scale(gamma)
        )
        return PsiImage(
            tangent=tangent,
            l_part=(ch.c, self.rel_charge_n(v, T)),
            m_part=(self.rel_charge_r(v, T), ch.q),
        )
