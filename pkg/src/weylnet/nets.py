"""Interval-indexed nets, locality, sector and gauge automorphisms.

Nets are finite generator sets: a registered generator belongs to kind(I)
when its exact charges match the kind's membership filter and its
localization (support of f0 union support of df1) is contained in I.
Constants have empty localization and belong to every interval.

For disjoint intervals the symplectic form between localized elements reduces
to the asymptotic closed form G_minus F_c - F_plus G_c (left element F): each
slot-0 density sees exactly the other's slot-1 limit on its side.  Kinds A,
B, C are local (the closed form vanishes); kinds Q, E, F fail locality by
exactly that phase.

Sector automorphisms act by e^{i sigma_f(F, G)} per key; gauge elements by
the character e^{-i (n F_c + r F_q)}.  Fixed-point projections are exact
charge filters: averaging a character over the compact dual group is a
Kronecker delta on the charge, so no group integration is needed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import (
    BadIntervals,
    MissingCharacterValue,
    NotInDomain,
    RegularizerNotContained,
)
from .funcspace import EMPTY, Interval, tol_quad
from .symplectic import Space, SymVector
from .weyl import WeylElement

NET_LABEL = {"A": "Va", "B": "Vb", "C": "Vc", "Q": "Vq", "E": "Ve", "F": "Vf"}


def net_generators(space: Space, kind: str, I: Interval) -> Tuple[SymVector, ...]:
    label = NET_LABEL[kind]
    out = []
    for name in space.generator_names():
        if name.startswith("__"):
            continue
        v = space.generator(name)
        # pure-central elements enter only through the designated kinds below
        if space.is_central(v):
            continue
        if space.in_space(v, label) and I.contains(space.localization(v)):
            out.append(v)
    if kind in ("B", "E"):
        unit = space.unit_vector()
        if unit not in out:
            out.append(unit)
    return tuple(out)


def asymptotics(space: Space, v: SymVector) -> Tuple[Fraction, Fraction]:
    """Exact slot-1 limits (F_minus, F_plus)."""
    ch = space.charges(v)
    return ch.inf - ch.q / 2, ch.inf + ch.q / 2


def disjoint_sigma(space: Space, F: SymVector, G: SymVector, f_left: bool) -> float:
    """Closed form of sigma_f(F, G) for disjointly localized F, G."""
    fm, fp = asymptotics(space, F)
    gm, gp = asymptotics(space, G)
    fc, gc = space.charges(F).c, space.charges(G).c
    if f_left:
        return float(gm * fc - fp * gc)
    return float(gp * fc - fm * gc)


def locality_report(space: Space, kind: str, I1: Interval, I2: Interval) -> dict:
    if not I1.disjoint(I2):
        raise BadIntervals(f"{I1} and {I2} are not disjoint")
    gens1 = net_generators(space, kind, I1)
    gens2 = net_generators(space, kind, I2)
    f_left = I1.left_of(I2)
    sigma = [[space.sigma(F, G) for G in gens2] for F in gens1]
    if kind in ("A", "B", "C"):
        worst = max((abs(s) for row in sigma for s in row), default=0.0)
        return {
            "kind": kind,
            "max_sigma": worst,
            "passed": worst < tol_quad(),
        }
    expected = [
        [disjoint_sigma(space, F, G, f_left) for G in gens2] for F in gens1
    ]
    defect = max(
        (abs(s - e) for row_s, row_e in zip(sigma, expected) for s, e in zip(row_s, row_e)),
        default=0.0,
    )
    return {
        "kind": kind,
        "phase_matrix": sigma,
        "expected_matrix": expected,
        "max_defect": defect,
        "passed": defect < tol_quad(),
    }


@dataclass(frozen=True)
class SectorAutomorphism:
    F: SymVector
    I: Interval


def make_sector(space: Space, F: SymVector, I: Interval) -> SectorAutomorphism:
    if not I.contains(space.localization(F)):
        raise NotInDomain(f"element is not localized in {I}")
    return SectorAutomorphism(F, I)


def sector_apply(space: Space, rho: SectorAutomorphism, A: WeylElement) -> WeylElement:
    return WeylElement(
        (G, a * cmath.exp(1j * space.sigma(rho.F, G))) for G, a in A.terms()
    )


@dataclass(frozen=True)
class GaugeElement:
    n: float = 0.0
    r: float = 0.0
    table: Optional[Tuple[Tuple[Tuple[Fraction, Fraction], complex], ...]] = None


def character_gauge(table: Dict[Tuple[Fraction, Fraction], complex]) -> GaugeElement:
    return GaugeElement(table=tuple(sorted(table.items())))


def gauge_apply(space: Space, g: GaugeElement, A: WeylElement) -> WeylElement:
    lookup = dict(g.table) if g.table is not None else None
    out = []
    for F, a in A.terms():
        ch = space.charges(F)
        if lookup is not None:
            key = (ch.c, ch.q)
            if key not in lookup:
                raise MissingCharacterValue(f"no character value for charge {key}")
            phase = lookup[key]
        else:
            phase = cmath.exp(-1j * (g.n * float(ch.c) + g.r * float(ch.q)))
        out.append((F, a * phase))
    return WeylElement(out)


def fixed_point_project(space: Space, A: WeylElement, subgroup: str) -> WeylElement:
    if subgroup not in ("G_c", "G_q", "G_full"):
        raise ValueError(f"unknown gauge subgroup {subgroup!r}")
    out = []
    for F, a in A.terms():
        ch = space.charges(F)
        if subgroup in ("G_c", "G_full") and ch.c != 0:
            continue
        if subgroup in ("G_q", "G_full") and ch.q != 0:
            continue
        out.append((F, a))
    return WeylElement(out)


def diagram_check(space: Space, T: SymVector, I: Interval) -> dict:
    if not I.contains(space.localization(T)):
        raise RegularizerNotContained(f"loc T not contained in {I}")
    tol = tol_quad()
    report = {}

    # psi_T kills the C and N plane coordinates of charge-q generators
    worst_n = 0.0
    ok = True
    for g in net_generators(space, "Q", I):
        img = space.psi_T(g, T)
        f_c, f_n = img.l_part
        ok = ok and f_c == 0
        worst_n = max(worst_n, abs(f_n))
    report["q_into_zero_c"] = {"passed": ok and worst_n < tol, "max_f_n": worst_n}

    # psi_T kills the Q coordinate of charge-c generators
    ok = all(
        space.psi_T(g, T).m_part[1] == 0 for g in net_generators(space, "C", I)
    )
    report["c_into_zero_q"] = {"passed": ok}

    # fully decaying generators away from loc T are fixed: image (F, 0, 0)
    worst = 0.0
    fixed = True
    for name in space.generator_names():
        if name.startswith("__"):
            continue
        g = space.generator(name)
        loc = space.localization(g)
        if not space.in_space(g, "Va") or getattr(loc, "is_empty", False):
            continue
        if not loc.disjoint(I):
            continue
        img = space.psi_T(g, T)
        fixed = fixed and img.tangent == g
        worst = max(worst, abs(img.l_part[1]), abs(img.m_part[0]))
    report["va_disjoint_fixed"] = {"passed": fixed and worst < tol, "max_moment": worst}

    # fixed-point nets: the charge filter on F(I) generators is exactly the
    # sub-net membership filter
    f_gens = net_generators(space, "F", I)
    for sub, kind in (("G_q", "C"), ("G_c", "E"), ("G_full", "B")):
        ok = True
        for g in f_gens:
            ch = space.charges(g)
            if sub == "G_q":
                invariant = ch.q == 0
            elif sub == "G_c":
                invariant = ch.c == 0
            else:
                invariant = ch.c == 0 and ch.q == 0
            ok = ok and invariant == space.in_space(g, NET_LABEL[kind])
        report[f"fixed_points_{sub}"] = {"passed": ok, "net": kind}

    report["passed"] = all(
        clause["passed"] for clause in report.values() if isinstance(clause, dict)
    )
    return report
