"""Published action of Gamma(E23) and Gamma(E32) on multiplet states.

Transcribed as data so computed expansions can be compared against them.
Each rule maps a source multiplet and its (m1, m2) to a list of
``(target multiplet, coefficient)``; the target labels are fixed by the
generator: E32 sends (m1, m2) to (m1 - 1/2, m2 - 1/2) one level up, E23 sends
it to (m1 + 1/2, m2 + 1/2) one level down.

Terms whose target multiplet does not exist, or whose coefficient has a
vanishing denominator there, are dropped.  Target labels are not range
checked here; the comparator decides what an out-of-range label means.
Lines of the printed tables that were not transcribed return None.
"""

from __future__ import annotations

from gmpy2 import mpq

from glrep.multiplets import (
    L0, L1_MM, L1_MP, L1_PM, L1_PP, L2_0M, L2_0P, L2_I, L2_II, L2_M0, L2_P0,
    L3_MM, L3_MP, L3_PM, L3_PP, L4, MultipletId, exists,
)
from glrep.realization import ModuleParams

H = mpq(1, 2)


def _e32_l0(J1, J2, m1, m2, q):
    d = (2 * J1 + 1) * (2 * J2 + 1)
    return [
        (L1_MM, lambda: -(q + J1 - J2) * (J1 - m1) * (J2 - m2) / d),
        (L1_PM, lambda: -(q - J1 - J2 - 1) * (J2 - m2) / d),
        (L1_PP, lambda: -(q - J1 + J2) / d),
        (L1_MP, lambda: (q + J1 + J2 + 1) * (J1 - m1) / d),
    ]


def _e23_l1(src):
    def rule(J1, J2, m1, m2, q):
        c = {
            L1_MM: lambda: mpq(-1),
            L1_PM: lambda: -(J1 + m1 + 3 * H),
            L1_PP: lambda: -(J1 + m1 + 3 * H) * (J2 + m2 + 3 * H),
            L1_MP: lambda: -(J2 + m2 + 3 * H),
        }[src]
        return [(L0, c)]
    return rule


def _e32_l1(src):
    def rule(J1, J2, m1, m2, q):
        if src == L1_MM:
            return [
                (L2_0M, lambda: -(J2 - m2 - 3 * H) / (2 * J2) * (q - J1 - J2 - 1)),
                (L2_I, lambda: (q - J1 + J2 - 1) / (2 * J2)),
                (L2_II, lambda: -(q - J1 + J2 + 1) / (2 * J2)),
                (L2_M0, lambda: (J1 - m1 - 3 * H) / (2 * J1) * (q + J1 + J2 + 1)),
            ]
        if src == L1_PM:
            return [
                (L2_0M, lambda: (J1 - m1 - H) * (J2 - m2 - 3 * H) / (2 * J2) * (q + J1 - J2)),
                (L2_I, lambda: -(J1 - m1 - H) / (2 * J2) * (q + J1 + J2)),
                (L2_II, lambda: -(J1 - m1 - H) / (2 * (J1 + 1)) * (q + J1 + J2 + 2)),
                (L2_P0, lambda: (q - J1 + J2) / (2 * (J1 + 1))),
            ]
        if src == L1_PP:
            return [
                (L2_I, lambda: -(J1 - m1 - H) * (J2 - m2 - H) / (2 * (J2 + 1)) * (q + J1 - J2 - 1)),
                (L2_II, lambda: (J1 - m1 - H) * (J2 - m2 - H) / (2 * (J1 + 1)) * (q + J1 - J2 + 1)),
                (L2_P0, lambda: -(J2 - m2 - H) / (2 * (J1 + 1)) * (q - J1 - J2 - 1)),
                (L2_0P, lambda: (J1 - m1 - H) / (2 * (J2 + 1)) * (q + J1 + J2 + 1)),
            ]
        return [
            (L2_I, lambda: -(J2 - m2 - H) / (2 * (J2 + 1)) * (q - J1 - J2 - 2)),
            (L2_II, lambda: -(J2 - m2 - H) / (2 * J1) * (q - J1 - J2)),
            (L2_M0, lambda: (J1 - m1 - 3 * H) * (J2 - m2 - H) / (2 * J1) * (q + J1 - J2)),
            (L2_0P, lambda: (q - J1 + J2) / (2 * (J2 + 1))),
        ]
    return rule


def _e23_l2(src):
    def rule(J1, J2, m1, m2, q):
        a, b = 2 * J1 + 1, 2 * J2 + 1
        if src == L2_0M:
            return [(L1_MM, lambda: -(J1 + m1 + 2) / a), (L1_PM, lambda: 1 / a)]
        if src == L2_M0:
            return [(L1_MM, lambda: (J2 + m2 + 2) / b), (L1_MP, lambda: 1 / a)]
        if src == L2_P0:
            return [
                (L1_PM, lambda: (J1 + m1 + 3) * (J2 + m2 + 2) / b),
                (L1_PP, lambda: -(J1 + m1 + 3) / b),
            ]
        if src == L2_0P:
            return [
                (L1_PP, lambda: (J2 + m2 + 3) / a),
                (L1_MP, lambda: (J1 + m1 + 2) * (J2 + m2 + 3) / a),
            ]
        d = a * b
        if src == L2_I:
            return [
                (L1_MM, lambda: (J2 + 1) * (J1 + m1 + 2) * (J2 + m2 + 2) / d),
                (L1_PM, lambda: -(J2 + 1) * (J2 + m2 + 2) / d),
                (L1_PP, lambda: -J2 / d),
                (L1_MP, lambda: -J2 * (J1 + m1 + 2) / d),
            ]
        return [
            (L1_MM, lambda: -(J1 + 1) * (J1 + m1 + 2) * (J2 + m2 + 2) / d),
            (L1_PM, lambda: -J1 * (J2 + m2 + 2) / d),
            (L1_PP, lambda: J1 / d),
            (L1_MP, lambda: -(J1 + 1) * (J1 + m1 + 2) / d),
        ]
    return rule


def _e32_l2(src):
    def rule(J1, J2, m1, m2, q):
        a, b = 2 * J1 + 1, 2 * J2 + 1
        if src == L2_0M:
            return [
                (L3_MM, lambda: (J1 - m1 - 2) / a * (q + J1 + J2 + 1)),
                (L3_PM, lambda: -(q - J1 + J2) / a),
            ]
        if src == L2_M0:
            return [
                (L3_MM, lambda: (J2 - m2 - 2) / b * (q - J1 - J2 - 1)),
                (L3_MP, lambda: -(q - J1 + J2) / b),
            ]
        if src == L2_P0:
            return [
                (L3_PM, lambda: (J1 - m1 - 1) * (J2 - m2 - 2) / b * (q + J1 - J2)),
                (L3_PP, lambda: -(J1 - m1 - 1) / b * (q + J1 + J2 + 1)),
            ]
        if src == L2_0P:
            return [
                (L3_MP, lambda: (J1 - m1 - 2) * (J2 - m2 - 1) / a * (q + J1 - J2)),
                (L3_PP, lambda: -(J2 - m2 - 1) / a * (q - J1 - J2 - 1)),
            ]
        d = a * b
        if src == L2_I:
            return [
                (L3_MM, lambda: (J2 + 1) * (J1 - m1 - 2) * (J2 - m2 - 2) * (q + J1 - J2 + 1) / d),
                (L3_PM, lambda: -(J2 + 1) * (J2 - m2 - 2) * (q - J1 - J2) / d),
                (L3_MP, lambda: J2 * (J1 - m1 - 2) * (q + J1 + J2 + 2) / d),
                (L3_PP, lambda: -J2 * (q - J1 + J2 + 1) / d),
            ]
        return [
            (L3_MM, lambda: (J1 + 1) * (J1 - m1 - 2) * (J2 - m2 - 2) * (q + J1 - J2 - 1) / d),
            (L3_PM, lambda: J1 * (J2 - m2 - 2) * (q - J1 - J2 - 2) / d),
            (L3_MP, lambda: -(J1 + 1) * (J1 - m1 - 2) * (q + J1 + J2) / d),
            (L3_PP, lambda: -J1 * (q - J1 + J2 - 1) / d),
        ]
    return rule


def _e23_l3(src):
    def rule(J1, J2, m1, m2, q):
        if src == L3_MM:
            return [
                (L2_0M, lambda: (J2 + m2 + 5 * H) / (2 * J2)),
                (L2_I, lambda: 1 / (2 * J2)),
                (L2_II, lambda: 1 / (2 * J1)),
                (L2_M0, lambda: (J1 + m1 + 5 * H) / (2 * J1)),
            ]
        if src == L3_PM:
            return [
                (L2_0M, lambda: -(J1 + m1 + 7 * H) * (J2 + m2 + 5 * H) / (2 * J2)),
                (L2_I, lambda: -(J1 + m1 + 7 * H) / (2 * J2)),
                (L2_II, lambda: (J1 + m1 + 7 * H) / (2 * (J1 + 1))),
                (L2_P0, lambda: 1 / (2 * (J1 + 1))),
            ]
        if src == L3_MP:
            return [
                (L2_I, lambda: (J2 + m2 + 7 * H) / (2 * (J2 + 1))),
                (L2_II, lambda: -(J2 + m2 + 7 * H) / (2 * J1)),
                (L2_M0, lambda: -(J1 + m1 + 5 * H) * (J2 + m2 + 7 * H) / (2 * J1)),
                (L2_0P, lambda: 1 / (2 * (J2 + 1))),
            ]
        return [
            (L2_I, lambda: -(J1 + m1 + 7 * H) * (J2 + m2 + 7 * H) / (2 * (J2 + 1))),
            (L2_II, lambda: -(J1 + m1 + 7 * H) * (J2 + m2 + 7 * H) / (2 * (J1 + 1))),
            (L2_P0, lambda: -(J2 + m2 + 7 * H) / (2 * (J1 + 1))),
            (L2_0P, lambda: -(J1 + m1 + 7 * H) / (2 * (J2 + 1))),
        ]
    return rule


def _e32_l3(src):
    def rule(J1, J2, m1, m2, q):
        c = {
            L3_MM: lambda: q - J1 + J2,
            L3_PM: lambda: (q + J1 + J2 + 1) * (J1 - m1 - 5 * H),
            L3_MP: lambda: (q - J1 - J2 - 1) * (J2 - m2 - 5 * H),
            L3_PP: lambda: (q + J1 - J2) * (J1 - m1 - 5 * H) * (J2 - m2 - 5 * H),
        }[src]
        return [(L4, c)]
    return rule


def _e23_l4(J1, J2, m1, m2, q):
    d = (2 * J1 + 1) * (2 * J2 + 1)
    return [
        (L3_MM, lambda: (J1 + m1 + 4) * (J2 + m2 + 4) / d),
        (L3_PM, lambda: (J2 + m2 + 4) / d),
        (L3_MP, lambda: (J1 + m1 + 4) / d),
        (L3_PP, lambda: 1 / d),
    ]


def _nothing(*_):
    return []


RULES = {
    ("E23", L0): _nothing,
    ("E32", L0): _e32_l0,
    ("E32", L4): _nothing,
    ("E23", L4): _e23_l4,
}
for _m in (L1_MM, L1_PM, L1_PP, L1_MP):
    RULES[("E23", _m)] = _e23_l1(_m)
    RULES[("E32", _m)] = _e32_l1(_m)
for _m in (L2_0M, L2_M0, L2_P0, L2_0P, L2_I, L2_II):
    RULES[("E23", _m)] = _e23_l2(_m)
    RULES[("E32", _m)] = _e32_l2(_m)
for _m in (L3_MM, L3_PM, L3_MP, L3_PP):
    RULES[("E23", _m)] = _e23_l3(_m)
    RULES[("E32", _m)] = _e32_l3(_m)


def reference_terms(generator: str, source: MultipletId, params: ModuleParams):
    """Printed expansion as {target MultipletId: coefficient}, or None."""
    rule = RULES.get((generator, source.multiplet))
    if rule is None:
        return None
    J1, J2, q = params.j1, params.j2, params.q
    m1, m2 = source.m1, source.m2
    step = -H if generator == "E32" else H
    out = {}
    for target, coef in rule(J1, J2, m1, m2, q):
        if not exists(target, params):
            continue
        try:
            c = mpq(coef())
        except ZeroDivisionError:
            continue
        if not c:
            continue
        out[MultipletId.of(target, m1 + step, m2 + step)] = c
    return out
