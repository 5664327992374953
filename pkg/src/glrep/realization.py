"""Boson-fermion realization of gl(2|2) on the super-Fock space.

``gamma`` returns formal operator expressions.  Simple and Cartan generators
are transcribed term by term; the six non-simple generators are always built
as supercommutators of simple ones.  ``GeneratorAction`` is the fast path used
for relation probes and module assembly: it caches the action of every
generator on individual basis states.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

from glrep.exact import ONE, ZERO, Scalar, HalfInt, scalar, scalar_str
from glrep.fock import (
    FockState,
    FockVector,
    ElementaryOp,
    annihilate,
    apply_elementary,
    create,
    number,
    states_up_to,
)

INDICES = (1, 2, 3, 4)
GENERATORS: tuple[tuple[int, int], ...] = tuple(itertools.product(INDICES, INDICES))
CARTAN = ("H1", "H2", "I", "N")
SIMPLE = ((1, 2), (3, 4), (2, 3), (2, 1), (4, 3), (3, 2))

# non-simple generator -> the pair whose supercommutator defines it
DERIVED = {
    (1, 3): ((1, 2), (2, 3)),
    (2, 4): ((2, 3), (3, 4)),
    (1, 4): ((1, 2), (2, 4)),
    (3, 1): ((3, 2), (2, 1)),
    (4, 2): ((4, 3), (3, 2)),
    (4, 1): ((4, 2), (2, 1)),
}

# E_ii = combination of (H1, H2, I, N), with N = E11 + E22 - E33 - E44
_HALF, _QUARTER = mpq(1, 2), mpq(1, 4)
DIAGONAL = {
    (1, 1): {"I": _QUARTER, "N": _QUARTER, "H1": _HALF},
    (2, 2): {"I": _QUARTER, "N": _QUARTER, "H1": -_HALF},
    (3, 3): {"I": _QUARTER, "N": -_QUARTER, "H2": _HALF},
    (4, 4): {"I": _QUARTER, "N": -_QUARTER, "H2": -_HALF},
}

GeneratorId = Union[tuple, str]


class MixedParity(ValueError):
    """Linear combination of operators with different Z2 parity."""


def index_parity(i: int) -> int:
    return 0 if i in (1, 2) else 1


def grading(g: GeneratorId) -> int:
    g = generator_id(g)
    if isinstance(g, str):
        return 0
    i, j = g
    return (index_parity(i) + index_parity(j)) % 2


def generator_id(g) -> GeneratorId:
    """Normalize ``"E23"``, ``(2, 3)``, ``"23"`` or a Cartan name."""
    if isinstance(g, str):
        if g in CARTAN:
            return g
        digits = g[1:] if g.startswith("E") else g
        if len(digits) == 2 and digits.isdigit():
            g = (int(digits[0]), int(digits[1]))
        else:
            raise ValueError(f"unknown generator {g!r}")
    g = tuple(g)
    if g not in GENERATORS:
        raise ValueError(f"unknown generator {g!r}")
    return g


def generator_name(g: GeneratorId) -> str:
    g = generator_id(g)
    return g if isinstance(g, str) else f"E{g[0]}{g[1]}"


@dataclass(frozen=True)
class ModuleParams:
    """Highest weight (J1, J2, q, p); spins are given doubled."""

    two_j1: int
    two_j2: int
    q: Scalar
    p: Scalar

    def __post_init__(self):
        if self.two_j1 < 0 or self.two_j2 < 0:
            raise ValueError("spins must be nonnegative")
        object.__setattr__(self, "two_j1", int(self.two_j1))
        object.__setattr__(self, "two_j2", int(self.two_j2))
        object.__setattr__(self, "q", scalar(self.q))
        object.__setattr__(self, "p", scalar(self.p))

    @classmethod
    def of(cls, j1, j2, q, p) -> "ModuleParams":
        return cls(HalfInt.of(j1).doubled, HalfInt.of(j2).doubled, q, p)

    @property
    def j1(self) -> Scalar:
        return mpq(self.two_j1, 2)

    @property
    def j2(self) -> Scalar:
        return mpq(self.two_j2, 2)

    def with_q(self, q) -> "ModuleParams":
        return ModuleParams(self.two_j1, self.two_j2, q, self.p)

    def to_json(self) -> dict:
        return {
            "two_j1": self.two_j1,
            "two_j2": self.two_j2,
            "J1": scalar_str(self.j1),
            "J2": scalar_str(self.j2),
            "q": scalar_str(self.q),
            "p": scalar_str(self.p),
        }

    def __str__(self):
        return f"(J1={scalar_str(self.j1)}, J2={scalar_str(self.j2)}, q={scalar_str(self.q)}, p={scalar_str(self.p)})"


Monomial = tuple  # tuple[ElementaryOp, ...], applied right to left


def monomial_parity(mono: Monomial) -> int:
    return sum(op.is_fermionic for op in mono) % 2


class OperatorExpr:
    """Formal linear combination of monomials in elementary operators."""

    __slots__ = ("terms", "parity")

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Scalar, Monomial]] = (), parity: int | None = None):
        merged: dict[Monomial, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m, c) for c, m in terms)
        for mono, c in items:
            mono = tuple(mono)
            c = scalar(c)
            merged[mono] = merged.get(mono, ZERO) + c
        self.terms = {m: c for m, c in merged.items() if c}
        parities = {monomial_parity(m) for m in self.terms}
        if len(parities) > 1:
            raise MixedParity("monomials of different parity in one expression")
        if parities:
            found = parities.pop()
            if parity is not None and parity != found:
                raise MixedParity(f"declared parity {parity}, monomials have {found}")
            parity = found
        self.parity = 0 if parity is None else parity

    @classmethod
    def constant(cls, c) -> "OperatorExpr":
        return cls({(): c})

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls.constant(1)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return self.terms == other.terms and (self.parity == other.parity or not self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        return lincomb([(ONE, self), (ONE, other)])

    def __sub__(self, other):
        return lincomb([(ONE, self), (-ONE, other)])

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return compose(self, other)
        return lincomb([(scalar(other), self)])

    def __rmul__(self, c):
        return lincomb([(scalar(c), self)])

    def __call__(self, v: FockVector) -> FockVector:
        return apply_op(self, v)

    def __repr__(self):
        if not self.terms:
            return "OperatorExpr(0)"
        parts = []
        for mono, c in self.terms.items():
            word = " ".join(str(op) for op in mono) or "1"
            parts.append(f"({scalar_str(c)}) {word}")
        return "OperatorExpr(" + " + ".join(parts) + ")"


def compose(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Formal product a*b (b acts first)."""
    terms: dict[Monomial, Scalar] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = ma + mb
            terms[m] = terms.get(m, ZERO) + ca * cb
    return OperatorExpr(terms, parity=(a.parity + b.parity) % 2)


def lincomb(items: Sequence[tuple[Scalar, OperatorExpr]]) -> OperatorExpr:
    parities = {e.parity for _, e in items if not e.is_zero()}
    if len(parities) > 1:
        raise MixedParity("cannot add even and odd operators")
    terms: dict[Monomial, Scalar] = {}
    for c, e in items:
        c = scalar(c)
        for m, x in e.terms.items():
            terms[m] = terms.get(m, ZERO) + c * x
    parity = parities.pop() if parities else (items[0][1].parity if items else 0)
    return OperatorExpr(terms, parity=parity)


def supercommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """ab - (-1)^(|a||b|) ba."""
    sign = -1 if a.parity and b.parity else 1
    return lincomb([(ONE, compose(a, b)), (mpq(-sign), compose(b, a))])


def apply_monomial(mono: Monomial, s: FockState) -> tuple[int, FockState] | None:
    coeff = 1
    for op in reversed(mono):
        r = apply_elementary(op, s)
        if r is None:
            return None
        c, s = r
        coeff *= c
    return coeff, s


def apply_op(e: OperatorExpr, v: FockVector) -> FockVector:
    out: dict[FockState, Scalar] = {}
    for s, x in v.items():
        for mono, c in e.terms.items():
            r = apply_monomial(mono, s)
            if r is None:
                continue
            k, t = r
            out[t] = out.get(t, ZERO) + x * c * k
    return FockVector({t: c for t, c in out.items() if c})


# --- the realization ------------------------------------------------------------

_A12, _A34 = "b12", "b34"
_F23, _F13, _F24, _F14 = "f23", "f13", "f24", "f14"


def _w(*ops: ElementaryOp) -> Monomial:
    return tuple(ops)


def _ad(m):
    return create(m)


def _an(m):
    return annihilate(m)


def _n(m):
    return number(m)


@dataclass(frozen=True)
class Realization:
    """Which transcription of the lowering generators to use.

    ``e43_mode`` is the fermion creator placed where the printed Gamma(E43)
    has the symbol alpha_12^+ (no such mode exists).  ``f13`` is the repair
    that makes every relation hold; any other choice reproduces a literal,
    failing reading of the printed formula.
    """

    e43_mode: str = _F13
    label: str = "corrected"

    @classmethod
    def printed(cls, mode: str) -> "Realization":
        return cls(e43_mode=mode, label=f"printed[alpha12+ := {mode}]")


CORRECTED = Realization()


def _simple_terms(g, params: ModuleParams, real: Realization) -> list[tuple[Scalar, Monomial]]:
    h = mpq(1, 2)
    j1, j2, q, p = params.j1, params.j2, params.q, params.p
    if g == "H1":
        return [(2 * j1, ()), (-2, _w(_n(_A12))), (1, _w(_n(_F23))), (-1, _w(_n(_F13))),
                (1, _w(_n(_F24))), (-1, _w(_n(_F14)))]
    if g == "H2":
        return [(2 * j2, ()), (-2, _w(_n(_A34))), (1, _w(_n(_F23))), (1, _w(_n(_F13))),
                (-1, _w(_n(_F24))), (-1, _w(_n(_F14)))]
    if g == "I":
        return [(2 * q, ())]
    if g == "N":
        return [(2 * p, ())] + [(-2, _w(_n(m))) for m in (_F23, _F13, _F24, _F14)]
    if g == (1, 2):
        return [(1, _w(_an(_A12))),
                (-h, _w(_ad(_F23), _an(_F13))),
                (h / 6, _w(_ad(_A34), _ad(_F23), _an(_F14))),
                (-h, _w(_ad(_F24), _an(_F14)))]
    if g == (3, 4):
        return [(1, _w(_an(_A34))),
                (h, _w(_ad(_F23), _an(_F24))),
                (h / 6, _w(_ad(_A12), _ad(_F23), _an(_F14))),
                (h, _w(_ad(_F13), _an(_F14)))]
    if g == (2, 3):
        return [(1, _w(_an(_F23))),
                (h, _w(_ad(_A12), _an(_F13))),
                (-h, _w(_ad(_A34), _an(_F24))),
                (-h / 3, _w(_ad(_A34), _ad(_A12), _an(_F14)))]
    if g == (2, 1):
        a = _ad(_A12)
        return [(2 * j1, _w(a)), (-1, _w(a, _n(_A12))),
                (h, _w(a, _n(_F23))), (-h, _w(a, _n(_F13))), (h, _w(a, _n(_F24))), (-h, _w(a, _n(_F14))),
                (-1, _w(_ad(_F13), _an(_F23))),
                (-1, _w(_ad(_F14), _an(_F24))),
                (mpq(-1, 4), _w(a, a, _ad(_F23), _an(_F13))),
                (mpq(1, 12), _w(a, _ad(_A34), _ad(_F23), _an(_F24))),
                (mpq(-1, 4), _w(a, a, _ad(_F24), _an(_F14))),
                (mpq(-1, 12), _w(a, _ad(_A34), _ad(_F13), _an(_F14)))]
    if g == (4, 3):
        a = _ad(_A34)
        return [(2 * j2, _w(a)), (-1, _w(a, _n(_A34))),
                (h, _w(a, _n(_F23))), (h, _w(a, _n(_F13))), (-h, _w(a, _n(_F24))), (-h, _w(a, _n(_F14))),
                (1, _w(_ad(_F24), _an(_F23))),
                (1, _w(_ad(_F14), _an(_F13))),
                (mpq(1, 4), _w(a, a, _ad(_F23), _an(_F24))),
                (mpq(-1, 12), _w(_ad(_A12), a, _ad(_F23), _an(_F13))),
                (mpq(1, 4), _w(a, _ad(real.e43_mode), a, _an(_F14))),
                (mpq(1, 12), _w(_ad(_A12), _ad(_F24), a, _an(_F14)))]
    if g == (3, 2):
        f = _ad(_F23)
        return [(q - j1 + j2, _w(f)),
                (h, _w(f, _n(_A12))), (-h, _w(f, _n(_A34))), (h, _w(f, _n(_F13))), (-h, _w(f, _n(_F24))),
                (1, _w(_ad(_F13), _an(_A12))),
                (1, _w(_ad(_F24), _an(_A34))),
                (mpq(1, 6), _w(f, _ad(_A12), _ad(_F24), _an(_F14))),
                (mpq(1, 6), _w(f, _ad(_A34), _ad(_F13), _an(_F14)))]
    raise KeyError(g)


@lru_cache(maxsize=4096)
def gamma(g, params: ModuleParams, realization: Realization = CORRECTED) -> OperatorExpr:
    """Operator expression realizing generator ``g`` at the given weight."""
    g = generator_id(g)
    if g in CARTAN or g in SIMPLE:
        return OperatorExpr(_simple_terms(g, params, realization), parity=grading(g))
    if g in DIAGONAL:
        return lincomb([(c, gamma(h, params, realization)) for h, c in DIAGONAL[g].items()])
    a, b = DERIVED[g]
    return supercommutator(gamma(a, params, realization), gamma(b, params, realization))


def structure_constants(a: tuple, b: tuple) -> list[tuple[int, tuple]]:
    """[E_ij, E_kl] = d_jk E_il - (-1)^(|E_ij||E_kl|) d_il E_kj, as (coeff, E) pairs."""
    (i, j), (k, l) = a, b
    sign = -1 if grading(a) and grading(b) else 1
    out = []
    if j == k:
        out.append((1, (i, l)))
    if i == l:
        out.append((-sign, (k, j)))
    return out


# --- cached action on basis states ---------------------------------------------

Column = dict  # FockState -> Scalar


class GeneratorAction:
    """Per-state cache of the action of all 16 generators (and the Cartan
    elements) at fixed parameters.

    Columns of non-simple generators are computed through their defining
    supercommutators, which is the same operator as applying the formal
    expression returned by ``gamma`` but far cheaper.
    """

    def __init__(self, params: ModuleParams, realization: Realization = CORRECTED):
        self.params = params
        self.realization = realization
        self._exprs = {g: gamma(g, params, realization) for g in SIMPLE + CARTAN}
        self._cache: dict = {}

    def column(self, g, s: FockState) -> Column:
        key = (g, s)
        col = self._cache.get(key)
        if col is not None:
            return col
        if g in self._exprs:
            col = {}
            for mono, c in self._exprs[g].terms.items():
                r = apply_monomial(mono, s)
                if r is not None:
                    k, t = r
                    col[t] = col.get(t, ZERO) + c * k
            col = {t: x for t, x in col.items() if x}
        elif g in DIAGONAL:
            col = {}
            for h, c in DIAGONAL[g].items():
                for t, x in self.column(h, s).items():
                    col[t] = col.get(t, ZERO) + c * x
            col = {t: x for t, x in col.items() if x}
        else:
            a, b = DERIVED[g]
            sign = -1 if grading(a) and grading(b) else 1
            col = _sub(self.act(a, self.column(b, s)), self.act(b, self.column(a, s)), sign)
        self._cache[key] = col
        return col

    def act(self, g, vec: Mapping[FockState, Scalar]) -> Column:
        out: dict = {}
        get = out.get
        column = self.column
        for s, x in vec.items():
            for t, c in column(g, s).items():
                out[t] = get(t, ZERO) + x * c
        return {t: c for t, c in out.items() if c}

    def apply(self, g, v: FockVector) -> FockVector:
        return FockVector._raw(self.act(generator_id(g), v.terms))

    def supercommutator_column(self, a, b, s: FockState) -> Column:
        sign = -1 if grading(a) and grading(b) else 1
        return _sub(self.act(a, self.column(b, s)), self.act(b, self.column(a, s)), sign)


def _sub(u: Column, v: Column, c) -> Column:
    """u - c*v"""
    out = dict(u)
    for t, x in v.items():
        y = out.get(t, ZERO) - c * x
        if y:
            out[t] = y
        else:
            out.pop(t, None)
    return out


# --- relation probe -------------------------------------------------------------


@dataclass
class RelationFailure:
    pair: tuple[tuple[int, int], tuple[int, int]]
    state: FockState
    residual: FockVector

    def to_json(self) -> dict:
        (i, j), (k, l) = self.pair
        return {"pair": [f"{i}{j}", f"{k}{l}"], "state": self.state.to_json(), "residual": self.residual.to_json()}


@dataclass
class RelationReport:
    params: ModuleParams
    probe_degree: int
    realization: str
    n_states: int
    n_pairs: int
    failures: list[RelationFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failing_pairs(self) -> list[tuple]:
        seen = []
        for f in self.failures:
            if f.pair not in seen:
                seen.append(f.pair)
        return seen

    def to_json(self) -> list:
        return [f.to_json() for f in self.failures]

    def summary(self) -> dict:
        return {
            "params": self.params.to_json(),
            "probe_degree": self.probe_degree,
            "realization": self.realization,
            "states": self.n_states,
            "pairs": self.n_pairs,
            "failures": len(self.failures),
            "failing_pairs": len(self.failing_pairs()),
        }


def probe_relations(
    params: ModuleParams,
    probe_degree: int = 6,
    realization: Realization = CORRECTED,
    pairs: Iterable[tuple] | None = None,
    max_failures_per_pair: int | None = None,
) -> RelationReport:
    """Check every graded commutation relation on all states with
    n12 + n34 <= probe_degree.  Nonzero residuals become report entries."""
    if probe_degree < 0:
        raise ValueError("probe_degree must be >= 0")
    action = GeneratorAction(params, realization)
    states = states_up_to(probe_degree)
    pairs = list(GENERATORS_PAIRS if pairs is None else pairs)
    report = RelationReport(params, probe_degree, realization.label, len(states), len(pairs))
    wanted = set(pairs)
    done: dict[tuple, list[RelationFailure]] = {}
    for a, b in pairs:
        sign = -1 if grading(a) and grading(b) else 1
        if (b, a) in done:
            # both sides are graded antisymmetric: residual(b, a) = -sign * residual(a, b)
            mirrored = [RelationFailure((a, b), f.state, -sign * f.residual) for f in done[(b, a)]]
            report.failures.extend(mirrored)
            continue
        rhs = structure_constants(a, b)
        found = []
        for s in states:
            r = _sub(action.act(a, action.column(b, s)), action.act(b, action.column(a, s)), sign)
            for c, g in rhs:
                r = _sub(r, action.column(g, s), c)
            if r:
                found.append(RelationFailure((a, b), s, FockVector._raw(r)))
                if max_failures_per_pair is not None and len(found) >= max_failures_per_pair:
                    break
        report.failures.extend(found)
        if (b, a) in wanted:
            done[(a, b)] = found
    return report


GENERATORS_PAIRS = tuple(itertools.product(GENERATORS, GENERATORS))


def load_corrections() -> dict:
    """The shipped record of repairs applied to transcribed formulas."""
    text = resources.files("glrep").joinpath("data/corrections.json").read_text()
    return json.loads(text)
