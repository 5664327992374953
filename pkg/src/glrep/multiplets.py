"""The 16 gl(2)+gl(2) multiplets inside the super-Fock space.

A multiplet is identified by its level (number of fermion creators), the
shift of its even-subalgebra highest weight relative to (J1, J2) and, for
the two level-2 copies with unshifted weight, a copy tag.  States carry the
printed m labels; the physical H1/H2 weights are 2(m + level).

State formulas are transcribed term by term: a term is
``coef(J1, J2, m1, m2) * fermion creators * (a12+)^(J1-m1+o1) (a34+)^(J2-m2+o2)``
with the fermion word applied right to left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from gmpy2 import mpq

from glrep.exact import ZERO, HalfInt, Scalar, exact_exponent, scalar_str
from glrep.fock import FockState, FockVector, SpanSolver, create, create_monomial, NotInSpan
from glrep.realization import GeneratorAction, ModuleParams

HALF = mpq(1, 2)


class InvalidMultiplet(ValueError):
    """The multiplet does not exist for these spins."""


class OutOfRange(ValueError):
    """m labels outside the printed range of the multiplet."""


class DependentStates(ArithmeticError):
    """Multiplet states that should be independent are not."""


@dataclass(frozen=True, order=True)
class Multiplet:
    """One of the 16 multiplet families (m labels not fixed)."""

    level: int
    two_d1: int
    two_d2: int
    tag: str | None = None

    @property
    def d1(self) -> Scalar:
        return mpq(self.two_d1, 2)

    @property
    def d2(self) -> Scalar:
        return mpq(self.two_d2, 2)

    @property
    def name(self) -> str:
        return _NAMES.get(self) or f"L2(0,0){self.tag}"

    def highest_weight(self, params: ModuleParams) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        """(J1', J2', q, p') of the even-subalgebra irrep."""
        return (params.j1 + self.d1, params.j2 + self.d2, params.q, params.p - self.level)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "level": self.level,
            "shift": [scalar_str(self.d1), scalar_str(self.d2)],
            "copy": self.tag,
        }

    def __str__(self):
        return self.name


def _mk(level, d1, d2, tag=None):
    return Multiplet(level, d1, d2, tag)


L0 = _mk(0, 0, 0)
L1_MM = _mk(1, -1, -1)
L1_PM = _mk(1, 1, -1)
L1_PP = _mk(1, 1, 1)
L1_MP = _mk(1, -1, 1)
L2_0M = _mk(2, 0, -2)
L2_M0 = _mk(2, -2, 0)
L2_P0 = _mk(2, 2, 0)
L2_0P = _mk(2, 0, 2)
L2_I = _mk(2, 0, 0, "I")
L2_II = _mk(2, 0, 0, "II")
L3_MM = _mk(3, -1, -1)
L3_PM = _mk(3, 1, -1)
L3_MP = _mk(3, -1, 1)
L3_PP = _mk(3, 1, 1)
L4 = _mk(4, 0, 0)

# printing order; basis ordering follows it
ALL_MULTIPLETS = (
    L0,
    L1_MM, L1_PM, L1_PP, L1_MP,
    L2_0M, L2_M0, L2_P0, L2_0P, L2_I, L2_II,
    L3_MM, L3_PM, L3_MP, L3_PP,
    L4,
)

_NAMES = {
    L0: "L0",
    L1_MM: "L1(-1/2,-1/2)", L1_PM: "L1(+1/2,-1/2)", L1_PP: "L1(+1/2,+1/2)", L1_MP: "L1(-1/2,+1/2)",
    L2_0M: "L2(0,-1)", L2_M0: "L2(-1,0)", L2_P0: "L2(+1,0)", L2_0P: "L2(0,+1)",
    L2_I: "L2(0,0)I", L2_II: "L2(0,0)II",
    L3_MM: "L3(-1/2,-1/2)", L3_PM: "L3(+1/2,-1/2)", L3_MP: "L3(-1/2,+1/2)", L3_PP: "L3(+1/2,+1/2)",
    L4: "L4",
}
BY_NAME = {v: k for k, v in _NAMES.items()}

# combinations of copies I and II used by the atypical modules
COPY_TAGS = ("sym1", "asym1", "sym1'", "asym1'", "sym2", "asym2", "sym3", "asym3", "sym4", "asym4")


def copy_combination(tag: str) -> Multiplet:
    if tag not in COPY_TAGS:
        raise ValueError(f"unknown copy tag {tag!r}")
    return Multiplet(2, 0, 0, tag)


def multiplet(name: str) -> Multiplet:
    return BY_NAME[name]


@dataclass(frozen=True, order=True)
class MultipletId:
    """A single state: a multiplet family together with its (m1, m2) labels."""

    multiplet: Multiplet
    two_m1: int
    two_m2: int

    @classmethod
    def of(cls, mult: Multiplet, m1, m2) -> "MultipletId":
        return cls(mult, HalfInt.of(m1).doubled, HalfInt.of(m2).doubled)

    @property
    def m1(self) -> Scalar:
        return mpq(self.two_m1, 2)

    @property
    def m2(self) -> Scalar:
        return mpq(self.two_m2, 2)

    @property
    def level(self) -> int:
        return self.multiplet.level

    def physical(self) -> tuple[Scalar, Scalar]:
        """Eigenvalues of H1/2 and H2/2 on the state."""
        return (self.m1 + self.level, self.m2 + self.level)

    def shifted(self, dm) -> "MultipletId":
        d = HalfInt.of(dm).doubled
        return MultipletId(self.multiplet, self.two_m1 + d, self.two_m2 + d)

    def retagged(self, mult: Multiplet) -> "MultipletId":
        return MultipletId(mult, self.two_m1, self.two_m2)

    def to_json(self) -> dict:
        d = self.multiplet.to_json()
        m1p, m2p = self.physical()
        d.update(m1=scalar_str(self.m1), m2=scalar_str(self.m2),
                 m1_physical=scalar_str(m1p), m2_physical=scalar_str(m2p))
        return d

    def __str__(self):
        return f"{self.multiplet.name}[{scalar_str(self.m1)},{scalar_str(self.m2)}]"


# --- transcribed state formulas ----------------------------------------------------
#
# term = (coefficient, fermion word, doubled boson offset for a12, for a34)

Term = tuple[Scalar, tuple[str, ...], int, int]
Formula = Callable[[Scalar, Scalar, Scalar, Scalar], list[Term]]


def _level0(J1, J2, m1, m2):
    return [(mpq(1), (), 0, 0)]


def _level4(J1, J2, m1, m2):
    return [(mpq(1), ("f23", "f13", "f24", "f14"), -8, -8)]


def _l1_mm(J1, J2, m1, m2):
    return [
        (mpq(1), ("f14",), -3, -3),
        (HALF, ("f24",), -1, -3),
        (-HALF, ("f13",), -3, -1),
        (mpq(-1, 3), ("f23",), -1, -1),
    ]


def _l1_pm(J1, J2, m1, m2):
    a = J1 - m1 - HALF
    return [
        (HALF * (3 * J1 + m1 + mpq(5, 2)), ("f24",), -1, -3),
        (mpq(-1, 3) * (2 * J1 + m1 + 2), ("f23",), -1, -1),
        (-a, ("f14",), -3, -3),
        (HALF * a, ("f13",), -3, -1),
    ]


def _l1_pp(J1, J2, m1, m2):
    A = 3 * J1 + m1 + mpq(5, 2)
    B = 3 * J2 + m2 + mpq(5, 2)
    a = J1 - m1 - HALF
    b = J2 - m2 - HALF
    return [
        (mpq(-1, 4) * (A * B + a * b / 3), ("f23",), -1, -1),
        (HALF * a * B, ("f13",), -3, -1),
        (-HALF * A * b, ("f24",), -1, -3),
        (a * b, ("f14",), -3, -3),
    ]


def _l1_mp(J1, J2, m1, m2, literal=False):
    B = 3 * J2 + m2 + mpq(5, 2)
    b = J2 - m2 - HALF
    # printed sign of the a12+ f24+ term is -1/2; +1/2 closes the ladder
    s = -HALF if literal else HALF
    return [
        (HALF * B, ("f13",), -3, -1),
        (mpq(1, 3) * (2 * J2 + m2 + 2), ("f23",), -1, -1),
        (b, ("f14",), -3, -3),
        (s * b, ("f24",), -1, -3),
    ]


def _l2_0m(J1, J2, m1, m2):
    return [
        (mpq(1), ("f24", "f14"), -4, -6),
        (-HALF, ("f23", "f14"), -4, -4),
        (mpq(1, 12), ("f23", "f24"), -2, -4),
        (HALF, ("f13", "f24"), -4, -4),
        (mpq(1, 4), ("f23", "f13"), -4, -2),
    ]


def _l2_m0(J1, J2, m1, m2):
    return [
        (mpq(1), ("f13", "f14"), -6, -4),
        (HALF, ("f23", "f14"), -4, -4),
        (mpq(1, 12), ("f23", "f13"), -4, -2),
        (HALF, ("f13", "f24"), -4, -4),
        (mpq(1, 4), ("f23", "f24"), -2, -4),
    ]


def _l2_p0(J1, J2, m1, m2, literal=False):
    a = J1 - m1 - 1
    c = 3 * J1 + m1 + 4
    # printed prefactor 1/2; the mirror image L2(0,+1) and the ladder need 1/4
    lead = HALF if literal else mpq(1, 4)
    return [
        (lead * (a + (3 * J1 + m1 + 3) * (3 * J1 + m1 + 5)), ("f23", "f24"), -2, -4),
        (a * (a - 1), ("f13", "f14"), -6, -4),
        (a * (a - 1) / 12, ("f23", "f13"), -4, -2),
        (-HALF * a * c, ("f13", "f24"), -4, -4),
        (-HALF * a * c, ("f23", "f14"), -4, -4),
    ]


def _l2_0p(J1, J2, m1, m2):
    b = J2 - m2 - 1
    c = 3 * J2 + m2 + 4
    return [
        (mpq(1, 4) * (b + (3 * J2 + m2 + 3) * (3 * J2 + m2 + 5)), ("f23", "f13"), -4, -2),
        (HALF * b * c, ("f23", "f14"), -4, -4),
        (-HALF * b * c, ("f13", "f24"), -4, -4),
        (b * (b - 1), ("f24", "f14"), -4, -6),
        (b * (b - 1) / 12, ("f23", "f24"), -2, -4),
    ]


def _l2_i(J1, J2, m1, m2):
    return [
        (J2 - m2 - 2, ("f24", "f14"), -4, -6),
        (HALF * (J2 + m2 + 2), ("f23", "f14"), -4, -4),
        (-HALF * (J2 + m2 + 2), ("f13", "f24"), -4, -4),
        ((J2 - m2 - 2) / 12, ("f23", "f24"), -2, -4),
        (mpq(-1, 4) * (3 * J2 + m2 + 2), ("f23", "f13"), -4, -2),
    ]


def _l2_ii(J1, J2, m1, m2):
    return [
        (J1 - m1 - 2, ("f13", "f14"), -6, -4),
        (-HALF * (J1 + m1 + 2), ("f13", "f24"), -4, -4),
        (-HALF * (J1 + m1 + 2), ("f23", "f14"), -4, -4),
        ((J1 - m1 - 2) / 12, ("f23", "f13"), -4, -2),
        (mpq(-1, 4) * (3 * J1 + m1 + 2), ("f23", "f24"), -2, -4),
    ]


def _l3_mm(J1, J2, m1, m2):
    return [
        (mpq(1), ("f13", "f24", "f14"), -7, -7),
        (HALF, ("f23", "f24", "f14"), -5, -7),
        (HALF, ("f23", "f13", "f14"), -7, -5),
        (mpq(1, 6), ("f23", "f13", "f24"), -5, -5),
    ]


def _l3_pm(J1, J2, m1, m2):
    A = 3 * J1 + m1 + mpq(9, 2)
    c = J1 - m1 - mpq(5, 2)
    return [
        (-HALF * A, ("f23", "f24", "f14"), -5, -7),
        (-c, ("f24", "f13", "f14"), -7, -7),
        (HALF * c, ("f23", "f13", "f14"), -7, -5),
        (mpq(-1, 6) * (5 * J1 + m1 + mpq(11, 2)), ("f23", "f13", "f24"), -5, -5),
    ]


def _l3_mp(J1, J2, m1, m2):
    B = 3 * J2 + m2 + mpq(9, 2)
    d = J2 - m2 - mpq(5, 2)
    return [
        (-HALF * B, ("f23", "f13", "f14"), -7, -5),
        (d, ("f13", "f24", "f14"), -7, -7),
        (HALF * d, ("f23", "f24", "f14"), -5, -7),
        (mpq(-1, 6) * (5 * J2 + m2 + mpq(11, 2)), ("f23", "f13", "f24"), -5, -5),
    ]


def _l3_pp(J1, J2, m1, m2):
    A = 3 * J1 + m1 + mpq(9, 2)
    B = 3 * J2 + m2 + mpq(9, 2)
    c = J1 - m1 - mpq(5, 2)
    d = J2 - m2 - mpq(5, 2)
    return [
        (mpq(1, 4) * (A * B - c * d / 3), ("f23", "f13", "f24"), -5, -5),
        (-HALF * c * B, ("f23", "f13", "f14"), -7, -5),
        (-HALF * A * d, ("f23", "f24", "f14"), -5, -7),
        (c * d, ("f13", "f24", "f14"), -7, -7),
    ]


@dataclass(frozen=True)
class _Entry:
    formula: Callable
    # doubled offsets: m ranges from J + top down to -J + bottom
    m1_range: tuple[int, int]
    m2_range: tuple[int, int]
    needs_two_j1: int = 0
    needs_two_j2: int = 0
    literal_differs: bool = False


_ENTRIES: dict[Multiplet, _Entry] = {
    L0: _Entry(_level0, (0, 0), (0, 0)),
    L1_MM: _Entry(_l1_mm, (-3, -1), (-3, -1), 1, 1),
    L1_PM: _Entry(_l1_pm, (-1, -3), (-3, -1), 0, 1),
    L1_PP: _Entry(_l1_pp, (-1, -3), (-1, -3)),
    L1_MP: _Entry(_l1_mp, (-3, -1), (-1, -3), 1, 0, literal_differs=True),
    L2_0M: _Entry(_l2_0m, (-4, -4), (-6, -2), 0, 2),
    L2_M0: _Entry(_l2_m0, (-6, -2), (-4, -4), 2, 0),
    L2_P0: _Entry(_l2_p0, (-2, -6), (-4, -4), literal_differs=True),
    L2_0P: _Entry(_l2_0p, (-4, -4), (-2, -6)),
    # printed m2 range starts at J2-1, one step above the multiplet's top
    L2_I: _Entry(_l2_i, (-4, -4), (-4, -4), 0, 1),
    L2_II: _Entry(_l2_ii, (-4, -4), (-4, -4), 1, 0),
    L3_MM: _Entry(_l3_mm, (-7, -5), (-7, -5), 1, 1),
    L3_PM: _Entry(_l3_pm, (-5, -7), (-7, -5), 0, 1),
    L3_MP: _Entry(_l3_mp, (-7, -5), (-5, -7), 1, 0),
    L3_PP: _Entry(_l3_pp, (-5, -7), (-5, -7)),
    L4: _Entry(_level4, (-8, -8), (-8, -8)),
}
# grid of the sym/asym combinations; their states are built in repbuild
_COMBINED = _Entry(None, (-4, -4), (-4, -4))


def _entry(mult: Multiplet) -> _Entry:
    if mult.tag in COPY_TAGS:
        return _COMBINED
    return _ENTRIES[mult]


def exists(mult: Multiplet, params: ModuleParams) -> bool:
    entry = _entry(mult)
    return params.two_j1 >= entry.needs_two_j1 and params.two_j2 >= entry.needs_two_j2


def m_range(mult: Multiplet, params: ModuleParams) -> tuple[list[Scalar], list[Scalar]]:
    """(m1 values, m2 values), each descending from the top of the range."""
    entry = _entry(mult)
    out = []
    for two_j, (top, bot) in ((params.two_j1, entry.m1_range), (params.two_j2, entry.m2_range)):
        hi = two_j + top
        lo = -two_j + bot
        out.append([mpq(x, 2) for x in range(hi, lo - 1, -2)])
    return out[0], out[1]


def dimension(mult: Multiplet, params: ModuleParams) -> int:
    if not exists(mult, params):
        return 0
    m1s, m2s = m_range(mult, params)
    return len(m1s) * len(m2s)


def state_ids(mult: Multiplet, params: ModuleParams) -> list[MultipletId]:
    """Member labels in basis order: m1 descending, then m2 descending."""
    if not exists(mult, params):
        return []
    m1s, m2s = m_range(mult, params)
    return [MultipletId.of(mult, a, b) for a in m1s for b in m2s]


def _check_id(sid: MultipletId, params: ModuleParams) -> None:
    if not exists(sid.multiplet, params):
        raise InvalidMultiplet(f"{sid.multiplet} does not exist at {params}")
    m1s, m2s = m_range(sid.multiplet, params)
    if sid.m1 not in m1s or sid.m2 not in m2s:
        raise OutOfRange(f"{sid} outside m range of {sid.multiplet} at {params}")


def copy_coefficients(tag: str, params: ModuleParams) -> tuple[Scalar, Scalar]:
    """Weights (c_I, c_II) of a sym/asym combination, J=0 fallbacks included."""
    J1, J2 = params.j1, params.j2
    if not J1 and not J2:
        return ZERO, ZERO
    one, zero = mpq(1), ZERO
    if tag in ("sym1'", "asym1'"):
        return one, (one if tag == "sym1'" else -one)
    generic = {
        "sym1": (J1, J2), "asym1": (J1, -J2),
        "sym2": (J1 + 1, J2 + 1), "asym2": (J1 + 1, -(J2 + 1)),
        "sym3": (J1, J2 + 1), "asym3": (J1, -(J2 + 1)),
        "sym4": (J1 + 1, J2), "asym4": (J1 + 1, -J2),
    }
    if tag not in generic:
        raise ValueError(f"unknown copy tag {tag!r}")
    if J1 and J2:
        return generic[tag]
    only_i, only_ii, nothing = (one, zero), (zero, one), (zero, zero)
    fallback = {
        # tag: (value at J1 = 0, value at J2 = 0)
        "sym1": (nothing, nothing), "asym1": (only_i, only_ii),
        "sym2": (only_i, only_ii), "asym2": (nothing, nothing),
        "sym3": (only_i, nothing), "asym3": (nothing, only_ii),
        "sym4": (nothing, only_ii), "asym4": (only_i, nothing),
    }[tag]
    return fallback[0] if not J1 else fallback[1]


def combine_copies(tag: str, params: ModuleParams, m1, m2) -> FockVector:
    """The sym/asym combination of the two level-2 copies at (m1, m2)."""
    ci, cii = copy_coefficients(tag, params)
    out = FockVector()
    for c, mult in ((ci, L2_I), (cii, L2_II)):
        if c and exists(mult, params):
            out = out + c * evaluate(mult, params, m1, m2)
    return out


def terms(mult: Multiplet, params: ModuleParams, m1, m2, literal: bool = False) -> list[Term]:
    entry = _ENTRIES[mult]
    args = (params.j1, params.j2, mpq(m1), mpq(m2))
    if entry.literal_differs:
        return entry.formula(*args, literal=literal)
    return entry.formula(*args)


def evaluate(mult: Multiplet, params: ModuleParams, m1, m2, literal: bool = False) -> FockVector:
    """Evaluate a state formula without range checks.

    Terms with zero coefficient are dropped before their boson exponents are
    looked at, so a formally negative power is harmless there; a negative
    power with a nonzero coefficient is an error.
    """
    if mult.tag in COPY_TAGS:
        return combine_copies(mult.tag, params, mpq(m1), mpq(m2))
    j1, j2 = params.j1, params.j2
    out = FockVector()
    for coef, ferm, o1, o2 in terms(mult, params, m1, m2, literal):
        if not coef:
            continue
        e1 = exact_exponent(j1 - m1 + mpq(o1, 2))
        e2 = exact_exponent(j2 - m2 + mpq(o2, 2))
        if e1 < 0 or e2 < 0:
            raise ValueError(f"negative boson power in {mult} at m=({m1},{m2})")
        v = create_monomial([create(f) for f in ferm], FockState(e1, e2, 0))
        out = out + coef * v
    return out


def build_state(sid: MultipletId, params: ModuleParams, literal: bool = False) -> FockVector:
    """Exact Fock-space vector of one multiplet member."""
    _check_id(sid, params)
    return evaluate(sid.multiplet, params, sid.m1, sid.m2, literal)


# --- tables -------------------------------------------------------------------


@dataclass
class MultipletTable:
    params: ModuleParams
    entries: list[tuple[MultipletId, FockVector]]
    dims: dict[Multiplet, int]
    vanishing: list[Multiplet] = field(default_factory=list)

    @property
    def total_dimension(self) -> int:
        return len(self.entries)

    def multiplets(self) -> list[Multiplet]:
        return [m for m in ALL_MULTIPLETS if self.dims.get(m)]

    def ids(self, mult: Multiplet | None = None) -> list[MultipletId]:
        return [i for i, _ in self.entries if mult is None or i.multiplet == mult]

    def vector(self, sid: MultipletId) -> FockVector:
        return self._index()[sid]

    def _index(self):
        idx = getattr(self, "_idx", None)
        if idx is None:
            idx = dict(self.entries)
            self._idx = idx
        return idx

    def level(self, x: int) -> list[tuple[MultipletId, FockVector]]:
        return [(i, v) for i, v in self.entries if i.level == x]


def build_table(params: ModuleParams, literal: bool = False, check_independence: bool = True) -> MultipletTable:
    """All nonvanishing multiplets over their full m grids."""
    entries = []
    dims = {}
    vanishing = []
    for mult in ALL_MULTIPLETS:
        ids = state_ids(mult, params)
        if not ids:
            continue
        vecs = [(i, build_state(i, params, literal)) for i in ids]
        if all(not v for _, v in vecs):
            vanishing.append(mult)
            continue
        if any(not v for _, v in vecs):
            raise DependentStates(f"{mult} has vanishing members at {params}")
        entries.extend(vecs)
        dims[mult] = len(vecs)
    table = MultipletTable(params, entries, dims, vanishing)
    if check_independence:
        try:
            SpanSolver([v for _, v in entries])
        except ValueError as exc:
            raise DependentStates(str(exc)) from exc
    return table


# --- gl(2)+gl(2) verification ----------------------------------------------------


@dataclass
class CheckResult:
    check: str
    state: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "state": self.state, "ok": self.ok, "detail": self.detail}


@dataclass
class VerificationReport:
    multiplet: Multiplet
    params: ModuleParams
    results: list[CheckResult] = field(default_factory=list)
    vanishing: bool = False

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "multiplet": self.multiplet.to_json(),
            "vanishing": self.vanishing,
            "ok": self.ok,
            "checks": len(self.results),
            "failures": [r.to_json() for r in self.failures()],
        }


def _proportional(u: FockVector, v: FockVector):
    """c with u == c*v, or None."""
    if not u:
        return ZERO
    if not v:
        return None
    s = next(iter(u))
    if v[s] == 0:
        return None
    c = u[s] / v[s]
    return c if u == c * v else None


def verify_multiplet(mult: Multiplet, params: ModuleParams, action: GeneratorAction | None = None,
                     literal: bool = False) -> VerificationReport:
    """Weights, raising/lowering closure and string endpoints of one multiplet."""
    report = VerificationReport(mult, params)
    if not exists(mult, params):
        report.results.append(CheckResult("exists", mult.name, False, "multiplet does not exist"))
        return report
    action = action or GeneratorAction(params)
    ids = state_ids(mult, params)
    states = {(i.two_m1, i.two_m2): evaluate(mult, params, i.m1, i.m2, literal) for i in ids}
    if all(not v for v in states.values()):
        report.vanishing = True
        report.results.append(CheckResult("vanishing", mult.name, True, "multiplet vanishes identically"))
        return report
    x = mult.level
    for sid in ids:
        v = states[(sid.two_m1, sid.two_m2)]
        label = str(sid)
        if not v:
            report.results.append(CheckResult("nonzero", label, False, "member vanishes"))
            continue
        expected = {"H1": 2 * (sid.m1 + x), "H2": 2 * (sid.m2 + x), "I": 2 * params.q, "N": 2 * (params.p - x)}
        for g, ev in expected.items():
            w = action.apply(g, v)
            ok = w == ev * v
            report.results.append(CheckResult(f"weight {g}", label, ok, "" if ok else f"expected {scalar_str(ev)}"))
        for g, axis, step in (((1, 2), 0, 2), ((2, 1), 0, -2), ((3, 4), 1, 2), ((4, 3), 1, -2)):
            w = action.apply(g, v)
            key = (sid.two_m1 + step, sid.two_m2) if axis == 0 else (sid.two_m1, sid.two_m2 + step)
            gname = f"E{g[0]}{g[1]}"
            if key in states:
                c = _proportional(w, states[key])
                ok = c is not None
                report.results.append(CheckResult(f"ladder {gname}", label, ok, "" if ok else "image leaves the multiplet"))
            else:
                ok = not w
                report.results.append(CheckResult(f"endpoint {gname}", label, ok, "" if ok else "string does not terminate"))
    return report


# --- odd generator actions ----------------------------------------------------------


@dataclass
class ActionExpansion:
    generator: str
    source: MultipletId
    terms: list[tuple[MultipletId, Scalar]]
    paper_match: bool | str = "not-transcribed"
    discrepancies: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict[MultipletId, Scalar]:
        return dict(self.terms)

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "source": self.source.to_json(),
            "terms": [{"target": t.to_json(), "coeff": scalar_str(c)} for t, c in self.terms],
            "paper_match": self.paper_match,
            "discrepancies": self.discrepancies,
        }


class OddActionComputer:
    """Expands Gamma(E23)/Gamma(E32) images of multiplet states in the
    multiplet basis of the adjacent level."""

    def __init__(self, params: ModuleParams, table: MultipletTable | None = None,
                 action: GeneratorAction | None = None):
        self.params = params
        self.table = table or build_table(params)
        self.action = action or GeneratorAction(params)
        self._solvers: dict[int, tuple[list[MultipletId], SpanSolver]] = {}

    def _solver(self, level: int):
        if level not in self._solvers:
            entries = self.table.level(level)
            ids = [i for i, _ in entries]
            self._solvers[level] = (ids, SpanSolver([v for _, v in entries]))
        return self._solvers[level]

    def expand(self, g: str, sid: MultipletId) -> ActionExpansion:
        g = g.upper().lstrip("E")
        if g not in ("23", "32"):
            raise ValueError("odd_action is defined for E23 and E32")
        gen = (int(g[0]), int(g[1]))
        target_level = sid.level - 1 if gen == (2, 3) else sid.level + 1
        v = self.table.vector(sid) if sid in self.table._index() else build_state(sid, self.params)
        image = self.action.apply(gen, v)
        terms: list[tuple[MultipletId, Scalar]] = []
        if image:
            if not 0 <= target_level <= 4:
                raise NotInSpan(f"E{g} image of {sid} is nonzero outside levels 0..4")
            ids, solver = self._solver(target_level)
            coeffs = solver.expand(image)
            terms = [(ids[k], c) for k, c in sorted(coeffs.items())]
        exp = ActionExpansion(f"E{g}", sid, terms)
        compare_with_reference(exp, self.params)
        return exp

    def expand_multiplet(self, g: str, mult: Multiplet) -> list[ActionExpansion]:
        return [self.expand(g, sid) for sid in self.table.ids(mult)]


def odd_action(g: str, sid: MultipletId, params: ModuleParams) -> ActionExpansion:
    return OddActionComputer(params).expand(g, sid)


def compare_with_reference(exp: ActionExpansion, params: ModuleParams) -> None:
    """Fill in ``paper_match`` and discrepancies from the transcribed tables."""
    from glrep.reference_actions import reference_terms

    ref = reference_terms(exp.generator, exp.source, params)
    if ref is None:
        exp.paper_match = "not-transcribed"
        return
    computed = exp.as_dict()
    for t in list(ref):
        if t not in computed and not _label_state(t, params):
            # printed coefficient on a label whose state is zero or absent
            del ref[t]
    diffs = []
    for t in sorted(set(ref) | set(computed)):
        a = computed.get(t, ZERO)
        b = ref.get(t, ZERO)
        if a != b:
            diffs.append({"target": str(t), "computed": scalar_str(a), "printed": scalar_str(b)})
    exp.discrepancies = diffs
    exp.paper_match = not diffs


def _label_state(sid: MultipletId, params: ModuleParams) -> FockVector:
    try:
        return evaluate(sid.multiplet, params, sid.m1, sid.m2)
    except ValueError:
        return FockVector()


def iter_sources(table: MultipletTable) -> Iterator[MultipletId]:
    for sid, _ in table.entries:
        yield sid
