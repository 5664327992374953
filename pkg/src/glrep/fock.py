"""Super-Fock space on two boson modes and four fermion modes.

Basis states are unnormalized monomials ``(a12+)^n12 (a34+)^n34 f...+ |0>``
with the fermion creators written in canonical order (f23, f13, f24, f14),
leftmost first.  Creating or destroying fermion mode k picks up a factor
(-1)^(number of occupied modes before k in that order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from gmpy2 import mpq

from glrep.exact import ONE, ZERO, RowEchelon, Scalar, scalar, scalar_str

BOSON_MODES = ("b12", "b34")
FERMION_MODES = ("f23", "f13", "f24", "f14")
MODES = BOSON_MODES + FERMION_MODES
FERMION_INDEX = {m: k for k, m in enumerate(FERMION_MODES)}

BOSON_CREATE = "BosonCreate"
BOSON_ANNIHILATE = "BosonAnnihilate"
BOSON_NUMBER = "BosonNumber"
FERMION_CREATE = "FermionCreate"
FERMION_ANNIHILATE = "FermionAnnihilate"
FERMION_NUMBER = "FermionNumber"

BOSON_KINDS = (BOSON_CREATE, BOSON_ANNIHILATE, BOSON_NUMBER)
FERMION_KINDS = (FERMION_CREATE, FERMION_ANNIHILATE, FERMION_NUMBER)

_SHORT = {
    BOSON_CREATE: "a+",
    BOSON_ANNIHILATE: "a",
    BOSON_NUMBER: "Na",
    FERMION_CREATE: "f+",
    FERMION_ANNIHILATE: "f",
    FERMION_NUMBER: "Nf",
}


class FockState(NamedTuple):
    n12: int
    n34: int
    ferm: int  # bit k set <=> FERMION_MODES[k] occupied

    @classmethod
    def from_modes(cls, n12: int = 0, n34: int = 0, ferm: Iterable[str] = ()) -> "FockState":
        bits = 0
        for m in ferm:
            bits |= 1 << FERMION_INDEX[m]
        return cls(n12, n34, bits)

    @property
    def occupied(self) -> list[str]:
        return [m for k, m in enumerate(FERMION_MODES) if self.ferm >> k & 1]

    @property
    def n_fermions(self) -> int:
        return bin(self.ferm).count("1")

    @property
    def boson_degree(self) -> int:
        return self.n12 + self.n34

    def key(self) -> int:
        """Bit-packed total order: n12, then n34, then fermion bits."""
        return (self.n12 << 40) | (self.n34 << 4) | self.ferm

    def weight(self) -> tuple[int, int, int]:
        """Shift of (H1, H2, N/2) eigenvalues away from the vacuum, negated.

        Two basis states lie in the same weight space iff these agree.
        """
        f = [self.ferm >> k & 1 for k in range(4)]
        d1 = 2 * self.n12 - f[0] + f[1] - f[2] + f[3]
        d2 = 2 * self.n34 - f[0] - f[1] + f[2] + f[3]
        return (d1, d2, sum(f))

    def to_json(self) -> dict:
        return {"n12": self.n12, "n34": self.n34, "ferm": self.occupied}

    @classmethod
    def from_json(cls, d: Mapping) -> "FockState":
        return cls.from_modes(d["n12"], d["n34"], d["ferm"])

    def __str__(self):
        parts = []
        if self.n12:
            parts.append(f"b12^{self.n12}")
        if self.n34:
            parts.append(f"b34^{self.n34}")
        parts.extend(self.occupied)
        return "|" + " ".join(parts) + ">" if parts else "|0>"


VACUUM = FockState(0, 0, 0)


@dataclass(frozen=True, slots=True)
class ElementaryOp:
    kind: str
    mode: str

    def __post_init__(self):
        if self.mode in BOSON_MODES:
            ok = self.kind in BOSON_KINDS
        elif self.mode in FERMION_MODES:
            ok = self.kind in FERMION_KINDS
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not ok:
            raise ValueError(f"{self.kind} cannot act on mode {self.mode}")

    @property
    def is_fermionic(self) -> bool:
        return self.kind in (FERMION_CREATE, FERMION_ANNIHILATE)

    def __str__(self):
        return f"{_SHORT[self.kind]}{self.mode[1:]}"


def create(mode: str) -> ElementaryOp:
    return ElementaryOp(BOSON_CREATE if mode in BOSON_MODES else FERMION_CREATE, mode)


def annihilate(mode: str) -> ElementaryOp:
    return ElementaryOp(BOSON_ANNIHILATE if mode in BOSON_MODES else FERMION_ANNIHILATE, mode)


def number(mode: str) -> ElementaryOp:
    return ElementaryOp(BOSON_NUMBER if mode in BOSON_MODES else FERMION_NUMBER, mode)


def apply_elementary(op: ElementaryOp, s: FockState) -> tuple[int, FockState] | None:
    """Act with one ladder/number operator on a basis state.

    Returns ``(coefficient, state)`` or None when the result is zero.
    """
    kind = op.kind
    if kind in BOSON_KINDS:
        n = s.n12 if op.mode == "b12" else s.n34
        if kind == BOSON_CREATE:
            c, n2 = 1, n + 1
        elif kind == BOSON_ANNIHILATE:
            if n == 0:
                return None
            c, n2 = n, n - 1
        else:
            return (n, s) if n else None
        if op.mode == "b12":
            return c, FockState(n2, s.n34, s.ferm)
        return c, FockState(s.n12, n2, s.ferm)

    bit = 1 << FERMION_INDEX[op.mode]
    occupied = s.ferm & bit
    if kind == FERMION_NUMBER:
        return (1, s) if occupied else None
    if kind == FERMION_CREATE:
        if occupied:
            return None
        new = s.ferm | bit
    else:
        if not occupied:
            return None
        new = s.ferm & ~bit
    sign = -1 if bin(s.ferm & (bit - 1)).count("1") & 1 else 1
    return sign, FockState(s.n12, s.n34, new)


class FockVector:
    """Finite linear combination of FockStates with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FockState, Scalar] | None = None):
        self.terms: dict[FockState, Scalar] = {}
        if terms:
            for s, c in terms.items():
                c = scalar(c)
                if c:
                    self.terms[s] = c

    @classmethod
    def basis(cls, s: FockState, coeff=1) -> "FockVector":
        return cls({s: coeff})

    @classmethod
    def _raw(cls, terms: dict) -> "FockVector":
        v = cls.__new__(cls)
        v.terms = terms
        return v

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[FockState]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __getitem__(self, s: FockState) -> Scalar:
        return self.terms.get(s, ZERO)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        return add(self, other)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, c) -> "FockVector":
        return scale(c, self)

    def sorted_items(self) -> list[tuple[FockState, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].key())

    def to_json(self) -> list:
        return [[s.to_json(), scalar_str(c)] for s, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data) -> "FockVector":
        return cls({FockState.from_json(s): scalar(c) for s, c in data})

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        body = " + ".join(f"({scalar_str(c)}){s}" for s, c in self.sorted_items())
        return f"FockVector({body})"


def add(v: FockVector, w: FockVector) -> FockVector:
    out = dict(v.terms)
    for s, c in w.terms.items():
        x = out.get(s, ZERO) + c
        if x:
            out[s] = x
        else:
            out.pop(s, None)
    return FockVector._raw(out)


def scale(c, v: FockVector) -> FockVector:
    c = scalar(c)
    if not c:
        return FockVector()
    return FockVector._raw({s: c * x for s, x in v.terms.items()})


def norm_squared(s: FockState) -> int:
    """Pairing <s|s> of an unnormalized monomial: n12! n34!."""
    return math.factorial(s.n12) * math.factorial(s.n34)


def inner(v: FockVector, w: FockVector) -> Scalar:
    """Pairing in which distinct basis states are orthogonal and
    (a+)^n|0> has squared norm n!."""
    total = ZERO
    small, big = (v, w) if len(v) <= len(w) else (w, v)
    for s, c in small.terms.items():
        d = big.terms.get(s)
        if d is not None:
            total += c * d * norm_squared(s)
    return total


def create_monomial(ops: Iterable[ElementaryOp], s: FockState = VACUUM) -> FockVector:
    """Apply a word of elementary ops (rightmost first) to a basis state."""
    coeff = 1
    ops = list(ops)
    for op in reversed(ops):
        r = apply_elementary(op, s)
        if r is None:
            return FockVector()
        c, s = r
        coeff *= c
    return FockVector({s: mpq(coeff)})


def states_up_to(degree: int) -> list[FockState]:
    """All basis states with n12 + n34 <= degree, in key order."""
    out = [FockState(a, d - a, f) for d in range(degree + 1) for a in range(d + 1) for f in range(16)]
    return sorted(out, key=FockState.key)


class NotInSpan(ValueError):
    """Vector is not a combination of the given basis."""


def sector(v: FockVector) -> tuple[int, int, int]:
    """Common weight of a weight-homogeneous vector."""
    it = iter(v.terms)
    w = next(it).weight()
    for s in it:
        if s.weight() != w:
            raise ValueError("vector is not a weight vector")
    return w


class SpanSolver:
    """Coordinates with respect to a list of independent weight vectors.

    Each weight sector is reduced once; ``expand`` then costs one pass over
    the pivots of the sector.
    """

    def __init__(self, vectors: list[FockVector]):
        self.size = len(vectors)
        groups: dict[tuple, list[int]] = {}
        for i, v in enumerate(vectors):
            if not v:
                raise ValueError(f"basis vector {i} is zero")
            groups.setdefault(sector(v), []).append(i)
        self._sectors = {}
        for w, idx in groups.items():
            states = sorted({s for i in idx for s in vectors[i]}, key=FockState.key)
            col = {s: j for j, s in enumerate(states)}
            n = len(states)
            ech = RowEchelon()
            for k, i in enumerate(idx):
                row = {col[s]: c for s, c in vectors[i].items()}
                row[n + k] = ONE
                ech.add(row)
            rref = ech.reduced_rows()
            if any(p >= n for p in rref):
                raise ValueError(f"dependent basis vectors in weight sector {w}")
            # pivot state -> (state part of reduced row, basis coordinates)
            pivots = []
            for p in sorted(rref):
                row = rref[p]
                body = {states[j]: c for j, c in row.items() if j < n}
                coords = {idx[j - n]: c for j, c in row.items() if j >= n}
                pivots.append((states[p], body, coords))
            self._sectors[w] = pivots

    def expand(self, v: FockVector) -> dict[int, Scalar]:
        """Coefficients x with v == sum x[i] * vectors[i]; raises NotInSpan."""
        if not v:
            return {}
        out: dict[int, Scalar] = {}
        rest = dict(v.terms)
        by_sector: dict[tuple, None] = {}
        for s in v.terms:
            by_sector[s.weight()] = None
        for w in by_sector:
            for ps, body, coords in self._sectors.get(w, ()):
                c = rest.get(ps)
                if not c:
                    continue
                for s, x in body.items():
                    y = rest.get(s, ZERO) - c * x
                    if y:
                        rest[s] = y
                    else:
                        rest.pop(s, None)
                for i, x in coords.items():
                    y = out.get(i, ZERO) + c * x
                    if y:
                        out[i] = y
                    else:
                        out.pop(i, None)
        if rest:
            raise NotInSpan(f"{len(rest)} components outside the span")
        return out


__all__ = [
    "NotInSpan",
    "SpanSolver",
    "BOSON_MODES",
    "FERMION_MODES",
    "MODES",
    "FockState",
    "FockVector",
    "ElementaryOp",
    "VACUUM",
    "apply_elementary",
    "add",
    "scale",
    "inner",
    "create",
    "annihilate",
    "number",
    "create_monomial",
    "states_up_to",
    "ONE",
]
