"""Assembly of complete gl(2|2) modules and their structural checks.

A module is the span of a list of multiplet states inside the Fock space;
generator matrices are obtained by expanding Gamma(g) applied to each basis
vector back in that basis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from gmpy2 import mpq

from glrep.exact import ONE, ZERO, ExactMatrix, RowEchelon, Scalar, nullspace, scalar_str
from glrep.fock import FockVector, NotInSpan, SpanSolver, sector
from glrep.multiplets import (
    ALL_MULTIPLETS, L0, L1_MM, L1_MP, L1_PM, L1_PP, L2_0M, L2_0P, L2_I, L2_II, L2_M0, L2_P0,
    L3_MM, L3_MP, L3_PM, L3_PP, L4, Multiplet, MultipletId, build_state, combine_copies,
    copy_combination, state_ids,
)
from glrep.realization import (
    CARTAN, CORRECTED, GENERATORS, SIMPLE, GeneratorAction, ModuleParams, Realization,
    grading, index_parity, structure_constants,
)

log = logging.getLogger(__name__)

__all__ = [
    "TYPICAL", "ATYP_A", "ATYP_ZERO", "ATYP_B", "ATYP_C", "ATYP_D",
    "IRREDUCIBLE", "KAC", "classify", "atypical_q", "combine_copies", "build_module", "casimir",
    "branching", "invariant_closure", "indecomposability_check", "commutant",
    "relation_check", "expected_dimension",
]

TYPICAL = "Typical"
ATYP_A = "AtypA"
ATYP_ZERO = "AtypZero"
ATYP_B = "AtypB"
ATYP_C = "AtypC"
ATYP_D = "AtypD"
VARIANTS = (TYPICAL, ATYP_A, ATYP_ZERO, ATYP_B, ATYP_C, ATYP_D)

IRREDUCIBLE = "Irreducible"
KAC = "Kac"
KINDS = (IRREDUCIBLE, KAC)


class NotClosed(ArithmeticError):
    """A generator image leaves the span of the basis."""


class WrongLocus(ValueError):
    """Requested module kind does not fit the classification."""


class NotScalar(ArithmeticError):
    """The Casimir matrix is not a multiple of the identity."""


class CommutantTooLarge(RuntimeError):
    """Commutant dimension above the configured bound."""


def classify(params: ModuleParams) -> str:
    J1, J2, q = params.j1, params.j2, params.q
    if J1 == J2 and q == 0:
        return ATYP_ZERO
    if q == J1 - J2:
        return ATYP_A
    if q == J2 - J1:
        return ATYP_B
    if q == J1 + J2 + 1:
        return ATYP_C
    if q == -J1 - J2 - 1:
        return ATYP_D
    return TYPICAL


def atypical_q(params: ModuleParams, variant: str) -> Scalar:
    """The q value of an atypicality locus at the spins of ``params``."""
    J1, J2 = params.j1, params.j2
    return {
        ATYP_A: J1 - J2, ATYP_ZERO: ZERO, ATYP_B: J2 - J1,
        ATYP_C: J1 + J2 + 1, ATYP_D: -J1 - J2 - 1,
    }[variant]


# multiplets surviving in each irreducible atypical module, printing order
SURVIVORS: dict[str, tuple[Multiplet, ...]] = {
    ATYP_A: (L0, L1_MM, L1_PM, L1_MP, L2_M0, L2_0M, copy_combination("sym1"), L3_MM),
    ATYP_ZERO: (L0, L1_PM, L1_MP, copy_combination("sym1'")),
    ATYP_B: (L0, L1_PM, L1_PP, L1_MP, L2_P0, L2_0P, copy_combination("sym2"), L3_PP),
    ATYP_C: (L0, L1_MM, L1_PP, L1_MP, L2_M0, L2_0P, copy_combination("asym3"), L3_MP),
    ATYP_D: (L0, L1_MM, L1_PM, L1_PP, L2_0M, L2_P0, copy_combination("asym4"), L3_PM),
}


def _in_print_order(mults) -> list[Multiplet]:
    # the combination takes the slot of copy I
    def rank(m):
        return ALL_MULTIPLETS.index(L2_I if m.tag not in (None, "I", "II") else m)
    return sorted(mults, key=rank)


def expected_dimension(params: ModuleParams, variant: str, kind: str = IRREDUCIBLE) -> int:
    """Dimension formulas of the module families, as exact integers."""
    a, b = params.j1, params.j2
    if kind == KAC or variant == TYPICAL:
        d = 16 * (2 * a + 1) * (2 * b + 1)
    elif variant == ATYP_A:
        d = 8 * ((2 * a + 1) * b + a * (2 * b + 1))
    elif variant == ATYP_ZERO:
        d = 1 if a == 0 else 4 * ((2 * a + 1) * (2 * b + 1) - mpq(1, 2))
    elif variant == ATYP_B:
        d = 8 * ((a + 1) * (2 * b + 1) + (2 * a + 1) * (b + 1))
    elif variant == ATYP_C:
        d = 8 * ((2 * a + 1) * (b + 1) + a * (2 * b + 1))
    else:
        d = 8 * ((a + 1) * (2 * b + 1) + (2 * a + 1) * b)
    return int(d)


# --- representations -----------------------------------------------------------------


def generator_key(g) -> str:
    return g if isinstance(g, str) else f"E{g[0]}{g[1]}"


@dataclass
class Representation:
    params: ModuleParams
    kind: str
    classification: str
    basis: list[tuple[MultipletId, FockVector]]
    matrices: dict[str, ExactMatrix] = field(default_factory=dict)
    realization: Realization = CORRECTED
    # multiplets the construction asked for, degenerate ones included
    requested: list[Multiplet] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, g) -> ExactMatrix:
        return self.matrices[generator_key(g)]

    def multiplets(self) -> list[Multiplet]:
        seen = []
        for sid, _ in self.basis:
            if sid.multiplet not in seen:
                seen.append(sid.multiplet)
        return seen

    def index_of(self, sid: MultipletId) -> int:
        for k, (i, _) in enumerate(self.basis):
            if i == sid:
                return k
        raise KeyError(sid)

    def highest_weight_index(self) -> int:
        """Top member of the level-0 multiplet."""
        return 0

    def lowest_weight_index(self) -> int:
        """Bottom member of the level-4 multiplet."""
        idx = [k for k, (i, _) in enumerate(self.basis) if i.multiplet == L4]
        if not idx:
            raise ValueError("module has no level-4 multiplet")
        return idx[-1]

    def manifest(self) -> dict:
        cas = casimir(self)
        return {
            "params": self.params.to_json(),
            "kind": self.kind,
            "classification": self.classification,
            "dim": self.dim,
            "realization": self.realization.label,
            "basis": [sid.to_json() for sid, _ in self.basis],
            "casimir": cas.to_json(),
        }


def module_multiplets(params: ModuleParams, kind: str, variant: str) -> list[Multiplet]:
    if kind == KAC:
        if variant == TYPICAL:
            raise WrongLocus(f"Kac module requested at typical point {params}")
        return list(ALL_MULTIPLETS)
    if kind != IRREDUCIBLE:
        raise ValueError(f"unknown module kind {kind!r}")
    if variant == TYPICAL:
        return list(ALL_MULTIPLETS)
    return _in_print_order(SURVIVORS[variant])


def module_basis(params: ModuleParams, mults: list[Multiplet]) -> list[tuple[MultipletId, FockVector]]:
    basis = []
    for mult in mults:
        members = [(sid, build_state(sid, params)) for sid in state_ids(mult, params)]
        if not members or all(not v for _, v in members):
            continue  # degenerate multiplet
        if any(not v for _, v in members):
            raise NotClosed(f"{mult} vanishes only partially at {params}")
        basis.extend(members)
    return basis


def build_module(params: ModuleParams, kind: str = IRREDUCIBLE,
                 realization: Realization = CORRECTED,
                 action: GeneratorAction | None = None) -> Representation:
    """Basis, exact generator matrices and closure check for one module."""
    variant = classify(params)
    mults = module_multiplets(params, kind, variant)
    basis = module_basis(params, mults)
    rep = Representation(params, kind, variant, basis, realization=realization, requested=mults)
    action = action or GeneratorAction(params, realization)
    try:
        solver = SpanSolver([v for _, v in basis])
    except ValueError as exc:
        raise NotClosed(f"basis is not independent: {exc}") from exc
    n = len(basis)
    for g in list(GENERATORS) + list(CARTAN):
        cols = []
        for sid, v in basis:
            try:
                cols.append(solver.expand(action.apply(g, v)))
            except NotInSpan as exc:
                raise NotClosed(f"{generator_key(g)} maps {sid} out of the module") from exc
        rep.matrices[generator_key(g)] = ExactMatrix.from_columns(n, cols)
    return rep


def relation_check(rep: Representation) -> list[tuple[str, str]]:
    """Generator pairs whose matrices violate the graded commutation relations."""
    bad = []
    M = {g: rep.matrix(g) for g in GENERATORS}
    for a in GENERATORS:
        for b in GENERATORS:
            sign = -1 if grading(a) and grading(b) else 1
            lhs = M[a] @ M[b] - (M[b] @ M[a]).scale(sign)
            rhs = ExactMatrix.zeros(rep.dim, rep.dim)
            for c, g in structure_constants(a, b):
                rhs = rhs + M[g].scale(c)
            if lhs != rhs:
                bad.append((generator_key(a), generator_key(b)))
    return bad


# --- Casimir and branching --------------------------------------------------------


def casimir_formula(params: ModuleParams) -> Scalar:
    J1, J2, q, p = params.j1, params.j2, params.q, params.p
    return 2 * ((J1 - J2) * (J1 + J2 + 1) + q * (p - 2))


@dataclass
class CasimirResult:
    matrix_scalar: Scalar
    formula_value: Scalar
    classification: str

    @property
    def agrees(self) -> bool:
        return self.matrix_scalar == self.formula_value

    @property
    def vanishing_claim(self) -> bool | None:
        """Whether the Casimir vanishes, as claimed for atypical modules.

        None on typical modules, where nothing is claimed.
        """
        if self.classification == TYPICAL:
            return None
        return self.matrix_scalar == 0

    def to_json(self) -> dict:
        return {
            "matrix_scalar": scalar_str(self.matrix_scalar),
            "formula_value": scalar_str(self.formula_value),
            "agrees": self.agrees,
            "vanishes_on_atypical": self.vanishing_claim,
        }


def casimir_matrix(rep: Representation) -> ExactMatrix:
    C = ExactMatrix.zeros(rep.dim, rep.dim)
    for a, b in GENERATORS:
        term = rep.matrix((a, b)) @ rep.matrix((b, a))
        C = C + (term.scale(-1) if index_parity(b) else term)
    return C


def casimir(rep: Representation) -> CasimirResult:
    """Scalar value of sum (-1)^[B] E_AB E_BA, next to the closed formula."""
    c = casimir_matrix(rep).scalar_value()
    if c is None:
        raise NotScalar(f"Casimir is not scalar on {rep.kind} module at {rep.params}")
    res = CasimirResult(c, casimir_formula(rep.params), rep.classification)
    if res.vanishing_claim is False:
        log.info("Casimir is %s on an atypical module, not zero", scalar_str(c))
    return res


@dataclass(frozen=True)
class Summand:
    j1: Scalar
    j2: Scalar
    q: Scalar
    p: Scalar
    multiplicity: int
    dim: int

    def to_json(self) -> dict:
        return {
            "highest_weight": [scalar_str(x) for x in (self.j1, self.j2, self.q, self.p)],
            "multiplicity": self.multiplicity,
            "dim": self.dim,
        }


def branching(rep: Representation, include_degenerate: bool = False) -> list[Summand]:
    """gl(2)+gl(2) content of the module, in printing order.

    With ``include_degenerate`` every slot of the branching rule is listed,
    zero-dimensional ones (a spin of -1/2, or a vanishing copy) included.
    """
    present = rep.multiplets()
    mults = rep.requested if include_degenerate else present
    counts: dict[tuple, list[int]] = {}
    for mult in mults:
        hw = mult.highest_weight(rep.params)
        d = sum(1 for sid, _ in rep.basis if sid.multiplet == mult)
        slot = counts.setdefault(hw, [0, d])
        slot[0] += 1
    return [Summand(*hw, mult, d) for hw, (mult, d) in counts.items()]


# --- invariant subspaces ----------------------------------------------------------


def _generating_matrices(rep: Representation) -> list[ExactMatrix]:
    return [rep.matrix(g) for g in GENERATORS]


def _closure(rep: Representation, seeds: list[dict]) -> RowEchelon:
    ech = RowEchelon()
    queue = [s for s in seeds if ech.add(s)]
    mats = _generating_matrices(rep)
    while queue:
        v = queue.pop()
        for M in mats:
            w = M.apply(v)
            if w and ech.add(w):
                queue.append(w)
    return ech


@dataclass
class SubspaceReport:
    ambient_dim: int
    dim: int
    basis_indices: list[int]
    vectors: list[dict[int, Scalar]]
    closed: bool
    complement_exists: bool | None = None
    commutant_dim: int | None = None
    verdict: str | None = None
    singular_dim: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis_indices": self.basis_indices,
            "vectors": [{str(k): scalar_str(v[k]) for k in sorted(v)} for v in self.vectors],
            "closed": self.closed,
            "complement_exists": self.complement_exists,
            "commutant_dim": self.commutant_dim,
            "verdict": self.verdict,
            "singular_dim": self.singular_dim,
            "notes": self.notes,
        }


def _is_invariant(rep: Representation, ech: RowEchelon, vectors) -> bool:
    for M in _generating_matrices(rep):
        for v in vectors:
            w = M.apply(v)
            if w and not ech.contains(w):
                return False
    return True


def invariant_closure(rep: Representation, seeds: list | None = None,
                      complement: bool = True, bound: int = 4) -> SubspaceReport:
    """Smallest invariant subspace containing the seeds.

    Seeds are basis indices or sparse coordinate vectors; by default the
    level-4 lowest-weight vector for Kac modules and the level-0
    highest-weight vector otherwise.
    """
    if seeds is None:
        seeds = [rep.lowest_weight_index() if rep.kind == KAC else rep.highest_weight_index()]
    seeds = [{s: ONE} if isinstance(s, int) else dict(s) for s in seeds]
    ech = _closure(rep, seeds)
    rref = ech.reduced_rows()
    vectors = [rref[c] for c in sorted(rref)]
    rep_ = SubspaceReport(rep.dim, len(vectors), sorted(rref), vectors, _is_invariant(rep, ech, vectors))
    if complement:
        comm = commutant(rep, bound)
        rep_.commutant_dim = len(comm)
        rep_.complement_exists = _complement_exists(rep, comm, ech, len(vectors))
    return rep_


# --- commutant ------------------------------------------------------------------------


def commutant(rep: Representation, bound: int | None = 4) -> list[ExactMatrix]:
    """Basis of the matrices commuting with every generator matrix.

    Such a matrix preserves weight spaces, so only weight-block entries are
    unknowns; commuting with the six simple generators then suffices.
    """
    n = rep.dim
    sectors: dict[tuple, list[int]] = {}
    for k, (_, v) in enumerate(rep.basis):
        sectors.setdefault(sector(v), []).append(k)
    unknown: dict[tuple[int, int], int] = {}
    by_row: dict[int, list[int]] = {}
    by_col: dict[int, list[int]] = {}
    for idx in sectors.values():
        for r in idx:
            for c in idx:
                unknown[(r, c)] = len(unknown)
                by_row.setdefault(r, []).append(c)
                by_col.setdefault(c, []).append(r)
    rows = []
    for g in SIMPLE:
        M = rep.matrix(g)
        Mt = M.transpose()
        eqs: dict[tuple[int, int], dict[int, Scalar]] = {}
        # (X M)[r, c] = sum_k X[r, k] M[k, c]
        for k in range(n):
            for c, m in M.rows[k].items():
                for r in by_col.get(k, ()):
                    e = eqs.setdefault((r, c), {})
                    u = unknown[(r, k)]
                    e[u] = e.get(u, ZERO) + m
        # (M X)[r, c] = sum_k M[r, k] X[k, c]
        for k in range(n):
            for r, m in Mt.rows[k].items():
                for c in by_row.get(k, ()):
                    e = eqs.setdefault((r, c), {})
                    u = unknown[(k, c)]
                    e[u] = e.get(u, ZERO) - m
        for key in sorted(eqs):
            e = {u: x for u, x in eqs[key].items() if x}
            if e:
                rows.append(e)
    system = ExactMatrix(len(rows), len(unknown), rows)
    sol = nullspace(system)
    if bound is not None and len(sol) > bound:
        raise CommutantTooLarge(f"commutant has dimension {len(sol)} > {bound}")
    inverse = {u: rc for rc, u in unknown.items()}
    out = []
    for vec in sol:
        X = ExactMatrix.zeros(n, n)
        for u, x in vec.items():
            r, c = inverse[u]
            X.rows[r][c] = x
        out.append(X)
    return out


def _trace(M: ExactMatrix) -> Scalar:
    return sum((M.rows[i].get(i, ZERO) for i in range(M.nrows)), ZERO)


def _is_nilpotent(M: ExactMatrix) -> bool:
    P = M
    for _ in range(M.nrows):
        if P.is_zero():
            return True
        P = P @ M
    return P.is_zero()


def _span_echelon(mats: list[ExactMatrix]) -> RowEchelon:
    ech = RowEchelon()
    for M in mats:
        ech.add(_flatten(M))
    return ech


def _flatten(M: ExactMatrix) -> dict[int, Scalar]:
    n = M.ncols
    return {r * n + c: x for r, row in enumerate(M.rows) for c, x in row.items()}


def is_local(comm: list[ExactMatrix]) -> bool:
    """True when the commutant is scalars plus a nilpotent ideal.

    Such an algebra has no idempotents besides 0 and 1.
    """
    if not comm:
        return False
    n = comm[0].nrows
    I = ExactMatrix.identity(n)
    shifted = []
    for X in comm:
        Y = X - I.scale(_trace(X) / n)
        if not Y.is_zero():
            if not _is_nilpotent(Y):
                return False
            shifted.append(Y)
    # the nilpotent parts must span a nilpotent subalgebra
    ech = _span_echelon(shifted)
    power = shifted
    for _ in range(n + 1):
        if not power:
            return True
        nxt = []
        for A in power:
            for B in shifted:
                P = A @ B
                if not P.is_zero():
                    if not ech.contains(_flatten(P)):
                        return False
                    nxt.append(P)
        # keep an independent spanning set of the next power
        pe = RowEchelon()
        power = [P for P in nxt if pe.add(_flatten(P))]
    return not power


def _idempotents_dim2(comm: list[ExactMatrix]) -> list[ExactMatrix] | None:
    """Nontrivial idempotents of a two-dimensional commutant span{1, Y}.

    None when they would need an irrational square root.
    """
    import gmpy2

    n = comm[0].nrows
    I = ExactMatrix.identity(n)
    Y = next(X for X in comm if X.scalar_value() is None)
    Y = Y - I.scale(_trace(Y) / n)
    # Y^2 = alpha 1 + beta Y inside the algebra
    Y2 = Y @ Y
    k = next(iter(next(r for r in Y.rows if r)))
    r0 = next(i for i, r in enumerate(Y.rows) if r)
    beta = Y2.rows[r0].get(k, ZERO) / Y.rows[r0][k]
    rest = Y2 - Y.scale(beta)
    alpha = rest.scalar_value()
    if alpha is None:
        raise ArithmeticError("commutant is not closed under products")
    disc = beta * beta + 4 * alpha
    if disc == 0:
        return []
    num, den = disc.numerator, disc.denominator
    if not (gmpy2.is_square(num) and gmpy2.is_square(den)) or disc < 0:
        return None
    root = mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    out = []
    for b in (1 / root, -1 / root):
        a = (1 - b * beta) / 2
        out.append(I.scale(a) + Y.scale(b))
    return out


def _complement_exists(rep: Representation, comm: list[ExactMatrix], ech: RowEchelon,
                       sub_dim: int) -> bool | None:
    if sub_dim in (0, rep.dim):
        return True
    if is_local(comm):
        return False
    if len(comm) != 2:
        return None
    idem = _idempotents_dim2(comm)
    if idem is None:
        return None
    for P in idem:
        # image of P is spanned by its columns
        cols = P.transpose().rows
        pe = RowEchelon()
        for c in cols:
            if c:
                pe.add(c)
        if len(pe) == sub_dim and all(ech.contains(c) for c in cols if c):
            return True
    return False


def singular_vectors(rep: Representation) -> list[dict[int, Scalar]]:
    """Common kernel of the simple raising generators E12, E34, E23."""
    rows = []
    for g in ((1, 2), (3, 4), (2, 3)):
        rows.extend(r for r in rep.matrix(g).rows if r)
    return nullspace(ExactMatrix(len(rows), rep.dim, rows))


def indecomposability_check(rep: Representation, bound: int = 4, seed: int | None = None) -> SubspaceReport:
    """Structure verdict: Irreducible, Indecomposable or Decomposable.

    Irreducible needs a one-dimensional singular space and a highest-weight
    vector that generates everything; a one-dimensional commutant alone
    does not rule out a proper submodule.  The reported subspace is the
    closure of ``seed`` (default: the level-0 highest-weight vector).
    """
    comm = commutant(rep, bound)
    d = len(comm)
    hw = rep.highest_weight_index() if seed is None else seed
    ech = _closure(rep, [{hw: ONE}])
    rref = ech.reduced_rows()
    vectors = [rref[c] for c in sorted(rref)]
    report = SubspaceReport(rep.dim, len(vectors), sorted(rref), vectors,
                            _is_invariant(rep, ech, vectors), commutant_dim=d)
    report.singular_dim = len(singular_vectors(rep))
    local = is_local(comm)
    if local and report.singular_dim == 1 and report.dim == rep.dim:
        report.verdict = IRREDUCIBLE
    elif local:
        report.verdict = "Indecomposable"
    else:
        report.verdict = "Decomposable"
    report.complement_exists = _complement_exists(rep, comm, ech, len(vectors))
    if d == 1 and report.verdict != IRREDUCIBLE:
        report.notes.append("commutant is one-dimensional but the module has a proper submodule")
    return report
