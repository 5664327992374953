"""Exact rational scalars, half-integers and fraction-free linear algebra.

Scalars are ``gmpy2.mpq`` values: always in lowest terms with a positive
denominator.  Matrices are stored row-sparse (one ``{col: value}`` dict per
row) because every matrix in this package is a generator action with only a
handful of nonzeros per column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq, mpz

Scalar = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class Inconsistent(ValueError):
    """A linear system has no solution."""


def scalar(x) -> Scalar:
    """Coerce ints, Fractions, mpq values and ``"a/b"`` strings to a Scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, HalfInt):
        return x.value
    return mpq(x)


def parse_scalar(text: str) -> Scalar:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def scalar_str(x) -> str:
    """Serialize as ``"num/den"``, dropping the denominator when it is 1."""
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An integer or half-integer, stored doubled so it is always exact."""

    doubled: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        v = scalar(x) * 2
        if v.denominator != 1:
            raise ValueError(f"{x} is not a multiple of 1/2")
        return cls(int(v))

    @property
    def value(self) -> Scalar:
        return mpq(self.doubled, 2)

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def to_int(self) -> int:
        if self.doubled % 2:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def __add__(self, other):
        return HalfInt(self.doubled + HalfInt.of(other).doubled)

    def __sub__(self, other):
        return HalfInt(self.doubled - HalfInt.of(other).doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.doubled == other.doubled
        try:
            return self.value == scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.doubled < HalfInt.of(other).doubled

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return scalar_str(self.value)

    def __repr__(self):
        return f"HalfInt({self})"


def exact_exponent(x) -> int:
    """Return ``x`` as an int; a fractional value is a hard error."""
    v = scalar(x)
    if v.denominator != 1:
        raise ValueError(f"non-integer exponent {scalar_str(v)}")
    return int(v)


class ExactMatrix:
    """Row-sparse matrix over the rationals."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, Scalar]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = []
            for r in rows:
                clean = {}
                for j, v in r.items():
                    if not 0 <= j < ncols:
                        raise ValueError(f"column {j} out of range")
                    v = mpq(v)
                    if v:
                        clean[j] = v
                self.rows.append(clean)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence]) -> "ExactMatrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            rows.append({j: scalar(v) for j, v in enumerate(r) if v != 0})
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "ExactMatrix":
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m.rows[i][j] = mpq(v)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def to_dense(self) -> list[list[Scalar]]:
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def _combine(self, other: "ExactMatrix", c) -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                w = r.get(j, ZERO) + c * v
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
            out.append(r)
        m = ExactMatrix(self.nrows, self.ncols)
        m.rows = out
        return m

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def scale(self, c) -> "ExactMatrix":
        c = scalar(c)
        m = ExactMatrix(self.nrows, self.ncols)
        if c:
            m.rows = [{j: c * v for j, v in r.items()} for r in self.rows]
        return m

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        out = []
        for r in self.rows:
            acc: dict[int, Scalar] = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, ZERO) + a * b
            out.append({j: v for j, v in acc.items() if v})
        m = ExactMatrix(self.nrows, other.ncols)
        m.rows = out
        return m

    def apply(self, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
        """Matrix times a sparse column vector ``{index: value}``."""
        out = {}
        for i, r in enumerate(self.rows):
            s = ZERO
            for j, v in r.items():
                x = vec.get(j)
                if x is not None:
                    s += v * x
            if s:
                out[i] = s
        return out

    def transpose(self) -> "ExactMatrix":
        m = ExactMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                m.rows[j][i] = v
        return m

    def scalar_value(self):
        """Return c if the matrix equals c times the identity, else None."""
        if self.nrows != self.ncols:
            return None
        if self.nrows == 0:
            return ZERO
        c = self.rows[0].get(0, ZERO)
        for i, r in enumerate(self.rows):
            if len(r) > 1 or r.get(i, ZERO) != c or (c == 0 and r):
                return None
        return c


# --- fraction-free elimination -------------------------------------------------
#
# Rows are cleared to primitive integer vectors ({col: mpz}, content 1, leading
# entry positive) and eliminated by cross-multiplication, so no rational ever
# appears inside the loop.  Pivots are the first nonzero column of each row.


def _primitive(row: Mapping[int, Scalar]) -> dict[int, mpz]:
    if not row:
        return {}
    den = mpz(1)
    for v in row.values():
        den = gmpy2.lcm(den, mpq(v).denominator)
    ints = {j: mpz(mpq(v) * den) for j, v in row.items() if v}
    return _normalize(ints)


def _normalize(ints: dict[int, mpz]) -> dict[int, mpz]:
    if not ints:
        return ints
    g = mpz(0)
    for v in ints.values():
        g = gmpy2.gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    if g != 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


class RowEchelon:
    """Incrementally maintained fraction-free echelon basis of a row space.

    ``add`` reduces a new row against the stored pivots and keeps it if it is
    independent.  Deterministic: results depend only on the insertion order.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, mpz]] = {}

    def __len__(self):
        return len(self.pivots)

    def add(self, row: Mapping[int, Scalar]) -> bool:
        r = self._reduce_leading(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def _reduce_leading(self, row):
        r = _primitive(row)
        while r:
            lead = min(r)
            p = self.pivots.get(lead)
            if p is None:
                return r
            r = _axpy(r, p[lead], p, -r[lead])
        return r

    def contains(self, row: Mapping[int, Scalar]) -> bool:
        return not self._reduce_leading(row)

    def reduced_rows(self) -> dict[int, dict[int, Scalar]]:
        """Reduced row echelon form, pivot entries scaled to 1."""
        cols = sorted(self.pivots)
        rref = {c: {j: mpq(v) for j, v in self.pivots[c].items()} for c in cols}
        for c in reversed(cols):
            row = rref[c]
            inv = 1 / row[c]
            row = {j: v * inv for j, v in row.items()}
            rref[c] = row
            for c2 in cols:
                if c2 == c:
                    continue
                other = rref[c2]
                f = other.get(c)
                if f:
                    for j, v in row.items():
                        w = other.get(j, ZERO) - f * v
                        if w:
                            other[j] = w
                        else:
                            other.pop(j, None)
        return rref


def _axpy(r: dict[int, mpz], a: mpz, p: dict[int, mpz], b: mpz) -> dict[int, mpz]:
    """Return primitive(a*r + b*p)."""
    out = {j: a * v for j, v in r.items()}
    for j, v in p.items():
        w = out.get(j, 0) + b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _normalize(out)


def _echelon(m: ExactMatrix) -> RowEchelon:
    ech = RowEchelon()
    for r in m.rows:
        if r:
            ech.add(r)
    return ech


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(m))


def reduced_row_echelon(m: ExactMatrix) -> ExactMatrix:
    rref = _echelon(m).reduced_rows()
    return ExactMatrix(len(rref), m.ncols, [rref[c] for c in sorted(rref)])


def nullspace(m: ExactMatrix) -> list[dict[int, Scalar]]:
    """Basis of the right kernel, one sparse vector per free column.

    Each basis vector has a 1 in its free column; the list is empty iff the
    matrix has full column rank.
    """
    rref = _echelon(m).reduced_rows()
    free = [j for j in range(m.ncols) if j not in rref]
    basis = []
    for f in free:
        v = {f: ONE}
        for c, row in rref.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def solve_linear(a: ExactMatrix, b: Mapping[int, Scalar]) -> dict[int, Scalar]:
    """One exact solution x of a x = b (free variables set to 0).

    Raises Inconsistent when b is not in the column space of a.
    """
    # augment with b as an extra column and eliminate rows
    aug = ExactMatrix(a.nrows, a.ncols + 1)
    for i, r in enumerate(a.rows):
        aug.rows[i] = dict(r)
        bi = b.get(i)
        if bi:
            aug.rows[i][a.ncols] = mpq(bi)
    for i in b:
        if not 0 <= i < a.nrows:
            raise ValueError(f"right-hand side index {i} out of range")
    rref = _echelon(aug).reduced_rows()
    if a.ncols in rref:
        raise Inconsistent("right-hand side is not in the column span")
    x = {}
    for c, row in rref.items():
        v = row.get(a.ncols)
        if v:
            x[c] = v
    return x


def dense_vector(vec: Mapping[int, Scalar], n: int) -> list[Scalar]:
    return [mpq(vec.get(i, ZERO)) for i in range(n)]


def sparse_vector(values: Iterable) -> dict[int, Scalar]:
    return {i: scalar(v) for i, v in enumerate(values) if v != 0}
