"""Assembly of the spectral-parameter braid matrix on the nested basis.

The matrix is the projector sum with exponential weights exp(m*theta), the
middle projector normalized to coefficient 1.  Mirror-column labels share
their exponent with the straight label; that identification is what makes
the family satisfy the braid relation, and breaking it (possible through
``braid_from_exponents``) breaks the relation, which the tests exercise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .expscalar import ExpScalar
from .linalg import SparseMatrix, kron
from .projectors import ProjLabel, ProjectorBasis, build_nested
from .symbols import LinForm, ParamSet, ParamSymbol

__all__ = [
    "BraidMatrix", "assemble_braid", "braid_from_exponents", "label_exponent",
    "permutation_matrix", "yang_baxter_form", "check_braid_equation", "BraidCheck",
]


def label_exponent(lab: ProjLabel, p: int) -> LinForm:
    """Exponent slope attached to one projector label (middle label: zero)."""
    if lab.kind == "pp":
        return LinForm.ZERO
    if lab.kind == "pi":
        sym = ParamSymbol(p, lab.i, lab.eps)
    elif lab.kind == "ip":
        sym = ParamSymbol(lab.i, p, lab.eps)
    else:
        # 'ij' and 'ijbar' share one symbol: the mirror identification.
        sym = ParamSymbol(lab.i, lab.j, lab.eps)
    return LinForm.symbol(sym)


@dataclass
class BraidMatrix:
    """Symbolic braid matrix; ``at(c0, c1)`` instantiates the argument."""

    N: int
    params: ParamSet
    basis: ProjectorBasis
    exponents: dict[ProjLabel, LinForm]

    def at(self, c0=1, c1=0) -> SparseMatrix:
        """Matrix at argument c0*theta + c1*theta', entries over ExpScalar."""
        acc = SparseMatrix(self.N**2, self.N**2)
        for lab, mat in self.basis.projectors:
            mu = self.exponents[lab].spread_args(c0, c1)
            weight = ExpScalar.exponential(mu)
            acc = acc + mat.map_entries(lambda v, w=weight: w * Fraction(v))
        return acc

    @property
    def matrix(self) -> SparseMatrix:
        return self.at(1, 0)

    def evaluator(self, theta: float, theta_prime: float = 0.0):
        values = self.params.value_map() if not self.params.is_symbolic else None
        return lambda entry: entry.eval(theta, values, theta_prime)

    def numeric(self, theta: float, values: dict[str, float] | None = None) -> np.ndarray:
        vals = values if values is not None else self.params.value_map()
        return self.matrix.to_numpy(lambda e: e.eval(theta, vals))


def assemble_braid(params: ParamSet) -> BraidMatrix:
    """Braid matrix from a parameter set (symbolic or rational-valued)."""
    basis = build_nested(params.N)
    exps = {lab: label_exponent(lab, params.p) for lab, _ in basis.projectors}
    if params.values is not None:
        # Rational slopes become exact constant slopes in the exponent.
        exps = {
            lab: (LinForm.const(params.values[ParamSymbol(*_sym_index(lab, params.p))])
                  if lab.kind != "pp" else LinForm.ZERO)
            for lab in exps
        }
    return BraidMatrix(N=params.N, params=params, basis=basis, exponents=exps)


def _sym_index(lab: ProjLabel, p: int) -> tuple[int, int, int]:
    if lab.kind == "pi":
        return (p, lab.i, lab.eps)
    if lab.kind == "ip":
        return (lab.i, p, lab.eps)
    return (lab.i, lab.j, lab.eps)


def braid_from_exponents(n: int, exponents: dict[ProjLabel, LinForm],
                         params: ParamSet | None = None) -> BraidMatrix:
    """Escape hatch: arbitrary exponent assignment per label (used to study
    what happens when the mirror identification is broken)."""
    basis = build_nested(n)
    params = params or ParamSet.symbolic(n)
    full = {lab: exponents.get(lab, label_exponent(lab, (n + 1) // 2))
            for lab, _ in basis.projectors}
    return BraidMatrix(N=n, params=params, basis=basis, exponents=full)


def permutation_matrix(n: int) -> SparseMatrix:
    """The flip of the two tensor factors, sum of (ij) x (ji)."""
    out = SparseMatrix(n * n, n * n)
    for i in range(n):
        for j in range(n):
            out.rows.setdefault(i * n + j, {})[j * n + i] = Fraction(1)
    return out


def yang_baxter_form(b: BraidMatrix):
    """R = P * braid, the Yang-Baxter matrix (= the order-1 monodromy), with
    two-letter basis words attached."""
    perm = permutation_matrix(b.N).map_entries(lambda v: ExpScalar.rational(v))
    mat = perm @ b.matrix
    from .words import all_words, word_str
    labels = [word_str(w, b.N) for w in all_words(b.N, 2)]
    return mat, labels


@dataclass
class BraidCheck:
    """Result of a braid-relation residual computation."""

    mode: str
    exact: bool | None
    max_terms: int | None
    residual_nnz: int | None
    max_abs: float | None

    def passed(self, tol: float = 1e-10) -> bool:
        if self.mode == "symbolic":
            return bool(self.exact)
        return self.max_abs is not None and self.max_abs < tol


def _lift_id(n: int) -> SparseMatrix:
    return SparseMatrix.identity(n, ExpScalar.one())


def check_braid_equation(b: BraidMatrix, mode: str = "symbolic",
                         theta: float = 0.7, theta_prime: float = 0.3,
                         values: dict[str, float] | None = None) -> BraidCheck:
    """Residual of the defining relation on the triple tensor space.

    Symbolic mode works over two formal spectral arguments and reports the
    term count of the difference (0 means the relation holds identically);
    numeric mode evaluates at a point and reports the max-abs entry.
    """
    n = b.N
    if mode == "symbolic":
        id1 = _lift_id(n)
        r_dd = kron(b.at(1, -1), id1)   # acts on factors 1,2 at theta - theta'
        r_t = kron(id1, b.at(1, 0))     # acts on factors 2,3 at theta
        r_tp = kron(b.at(0, 1), id1)    # factors 1,2 at theta'
        s_tp = kron(id1, b.at(0, 1))
        s_t = kron(b.at(1, 0), id1)
        s_dd = kron(id1, b.at(1, -1))
        lhs = r_dd @ r_t @ r_tp
        rhs = s_tp @ s_t @ s_dd
        diff = lhs - rhs
        max_terms = max((v.term_count for _, _, v in diff.entries()), default=0)
        return BraidCheck(mode="symbolic", exact=diff.is_zero(),
                          max_terms=max_terms, residual_nnz=diff.nnz, max_abs=None)
    vals = values if values is not None else b.params.value_map()

    def num(c0, c1):
        ev = lambda e: e.eval(theta, vals, theta_prime)
        return b.at(c0, c1).to_numpy(ev)

    eye = np.eye(n)
    r_dd = np.kron(num(1, -1), eye)
    r_t = np.kron(eye, num(1, 0))
    r_tp = np.kron(num(0, 1), eye)
    s_tp = np.kron(eye, num(0, 1))
    s_t = np.kron(num(1, 0), eye)
    s_dd = np.kron(eye, num(1, -1))
    diff = r_dd @ r_t @ r_tp - s_tp @ s_t @ s_dd
    return BraidCheck(mode="numeric", exact=None, max_terms=None,
                      residual_nnz=None, max_abs=float(np.abs(diff).max()))
