"""The nested family of N^2 orthogonal projectors and its diagonalizer.

For odd N = 2p-1 the basis is built from elementary matrices (ij) and the
mirror index i" = N-i+1.  Five label kinds appear: the middle rank-one
projector, two one-sided families attached to the middle index, and two
two-sided families indexed by (i, j) and (i, j-mirror).  The generalized
family replaces the 1/2 weights by rational (u, v) parameters per label pair
and degenerates to the nested one at u = v = 1.

All matrices are exact: entries are Fractions, and the involutive
diagonalizer lives in Q(sqrt 2) represented inside a cyclotomic field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cyclotomic import Cyc
from .errors import EvenNError, SingularParameterError, UnsupportedNError, ZeroParameterError
from .linalg import SparseMatrix, kron

__all__ = [
    "ProjLabel", "ProjectorBasis", "BasisReport", "Diagonalizer",
    "elem", "build_nested", "build_generalized", "verify_basis", "diagonalizer",
]

_ONE = Fraction(1)
_HALF = Fraction(1, 2)


def elem(n: int, i: int, j: int) -> SparseMatrix:
    """Elementary matrix with a single 1 on row i, column j (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"elementary index ({i},{j}) out of range for size {n}")
    return SparseMatrix(n, n, {i - 1: {j - 1: _ONE}})


@dataclass(frozen=True, order=True)
class ProjLabel:
    """Label of one projector: kind in {pp, pi, ip, ij, ijbar}, indices, sign."""

    kind: str
    i: int = 0
    j: int = 0
    eps: int = 0

    _KIND_ORDER = {"pp": 0, "pi": 1, "ip": 2, "ij": 3, "ijbar": 4}

    def sort_key(self):
        return (self._KIND_ORDER[self.kind], self.i, self.j, -self.eps)

    def render(self, p: int) -> str:
        s = "+" if self.eps > 0 else "-"
        if self.kind == "pp":
            return "pp"
        if self.kind == "pi":
            return f"p{self.i}{s}"
        if self.kind == "ip":
            return f"{self.i}p{s}"
        if self.kind == "ij":
            return f"{self.i}{self.j}{s}"
        return f"{self.i}{self.j}b{s}"

    def __str__(self) -> str:
        return self.render(0)


def _labels_nested(p: int) -> list[ProjLabel]:
    labels = [ProjLabel("pp")]
    for i in range(1, p):
        for eps in (1, -1):
            labels.append(ProjLabel("pi", i=i, eps=eps))
    for i in range(1, p):
        for eps in (1, -1):
            labels.append(ProjLabel("ip", i=i, eps=eps))
    for i in range(1, p):
        for j in range(1, p):
            for eps in (1, -1):
                labels.append(ProjLabel("ij", i=i, j=j, eps=eps))
    for i in range(1, p):
        for j in range(1, p):
            for eps in (1, -1):
                labels.append(ProjLabel("ijbar", i=i, j=j, eps=eps))
    return labels


@dataclass
class ProjectorBasis:
    """The complete orthogonal family; ``projectors`` preserves label order."""

    N: int
    mode: str  # "nested" | "generalized"
    projectors: list[tuple[ProjLabel, SparseMatrix]]

    @property
    def p(self) -> int:
        return (self.N + 1) // 2

    def __len__(self) -> int:
        return len(self.projectors)

    def matrix(self, label: ProjLabel) -> SparseMatrix:
        for lab, mat in self.projectors:
            if lab == label:
                return mat
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "mode": self.mode,
            "projectors": [
                {
                    "label": lab.render(self.p),
                    "entries": [[i, j, str(v)] for i, j, v in mat.entries()],
                }
                for lab, mat in self.projectors
            ],
        }


def _mixer(n: int, i: int, eps: int) -> SparseMatrix:
    """(ii) + (i"i") + eps*((ii") + (i"i)) on the single-site space."""
    ib = n - i + 1
    m = elem(n, i, i) + elem(n, ib, ib)
    off = (elem(n, i, ib) + elem(n, ib, i)).scaled(Fraction(eps))
    return m + off


def build_nested(n: int) -> ProjectorBasis:
    """The N^2 nested projectors for odd N >= 3."""
    if n < 3 or n % 2 == 0:
        raise EvenNError(f"nested basis needs odd N >= 3, got {n}")
    p = (n + 1) // 2
    pp = elem(n, p, p)
    projs: list[tuple[ProjLabel, SparseMatrix]] = []
    for lab in _labels_nested(p):
        if lab.kind == "pp":
            mat = kron(pp, pp)
        elif lab.kind == "pi":
            mat = kron(pp, _mixer(n, lab.i, lab.eps)).scaled(_HALF)
        elif lab.kind == "ip":
            mat = kron(_mixer(n, lab.i, lab.eps), pp).scaled(_HALF)
        else:
            i, j, eps = lab.i, lab.j, lab.eps
            ib, jb = n - i + 1, n - j + 1
            if lab.kind == "ij":
                mat = (kron(elem(n, i, i), elem(n, j, j))
                       + kron(elem(n, ib, ib), elem(n, jb, jb))
                       + (kron(elem(n, i, ib), elem(n, j, jb))
                          + kron(elem(n, ib, i), elem(n, jb, j))).scaled(Fraction(eps))
                       ).scaled(_HALF)
            else:
                mat = (kron(elem(n, i, i), elem(n, jb, jb))
                       + kron(elem(n, ib, ib), elem(n, j, j))
                       + (kron(elem(n, i, ib), elem(n, jb, j))
                          + kron(elem(n, ib, i), elem(n, j, jb))).scaled(Fraction(eps))
                       ).scaled(_HALF)
        projs.append((lab, mat))
    assert len(projs) == n * n
    return ProjectorBasis(N=n, mode="nested", projectors=projs)


def _uv(params: Mapping[str, object], key: str) -> Fraction:
    val = Fraction(str(params.get(key, 1)))
    if val == 0:
        raise ZeroParameterError(f"parameter {key} must be nonzero")
    return val


def _gen_pair(u: Fraction, v: Fraction, terms):
    """The (+,-) projector pair for one label from its four elementary blocks.

    ``terms`` lists (kron matrix, role) with roles 'uu' (weight u^{+-1}),
    'ui' (u^{-+1}), 'v' and 'vi'.
    """
    den = u + 1 / u
    if den == 0:
        raise SingularParameterError(f"u + 1/u vanishes for u={u}")
    out = []
    for eps in (1, -1):
        acc = None
        for mat, role in terms:
            if role == "uu":
                w = u if eps > 0 else 1 / u
            elif role == "ui":
                w = 1 / u if eps > 0 else u
            elif role == "v":
                w = Fraction(eps) * v
            else:
                w = Fraction(eps) / v
            piece = mat.scaled(w / den)
            acc = piece if acc is None else acc + piece
        out.append(acc)
    return out


def build_generalized(n: int, u: Mapping[str, object] | None = None,
                      v: Mapping[str, object] | None = None) -> ProjectorBasis:
    """(u, v)-weighted family; keys are bare labels like 'p1', '1p', '11', '11b'.

    Missing keys default to 1, so empty maps reproduce the nested family.
    For even size only the 4x4 two-pair family (N=2) is provided.
    """
    u = u or {}
    v = v or {}
    if n == 2:
        return _build_generalized_4x4(u, v)
    if n % 2 == 0:
        raise UnsupportedNError("even generalized mode exists only for N=2")
    if n < 3:
        raise EvenNError(f"need N >= 3, got {n}")
    p = (n + 1) // 2
    pp = elem(n, p, p)
    projs: list[tuple[ProjLabel, SparseMatrix]] = []
    pending: dict[tuple, list[SparseMatrix]] = {}
    for lab in _labels_nested(p):
        if lab.kind == "pp":
            projs.append((lab, kron(pp, pp)))
            continue
        key = (lab.kind, lab.i, lab.j)
        if key not in pending:
            i, j = lab.i, lab.j
            ib = n - i + 1
            if lab.kind == "pi":
                name = f"p{i}"
                terms = [
                    (kron(pp, elem(n, i, i)), "uu"),
                    (kron(pp, elem(n, ib, ib)), "ui"),
                    (kron(pp, elem(n, i, ib)), "v"),
                    (kron(pp, elem(n, ib, i)), "vi"),
                ]
            elif lab.kind == "ip":
                name = f"{i}p"
                terms = [
                    (kron(elem(n, i, i), pp), "uu"),
                    (kron(elem(n, ib, ib), pp), "ui"),
                    (kron(elem(n, i, ib), pp), "v"),
                    (kron(elem(n, ib, i), pp), "vi"),
                ]
            else:
                jb = n - j + 1
                if lab.kind == "ij":
                    name = f"{i}{j}"
                    terms = [
                        (kron(elem(n, i, i), elem(n, j, j)), "uu"),
                        (kron(elem(n, ib, ib), elem(n, jb, jb)), "ui"),
                        (kron(elem(n, i, ib), elem(n, j, jb)), "v"),
                        (kron(elem(n, ib, i), elem(n, jb, j)), "vi"),
                    ]
                else:
                    name = f"{i}{j}b"
                    terms = [
                        (kron(elem(n, i, i), elem(n, jb, jb)), "uu"),
                        (kron(elem(n, ib, ib), elem(n, j, j)), "ui"),
                        (kron(elem(n, i, ib), elem(n, jb, j)), "v"),
                        (kron(elem(n, ib, i), elem(n, j, jb)), "vi"),
                    ]
            pending[key] = _gen_pair(_uv(u, name), _uv(v, name), terms)
        plus, minus = pending[key]
        projs.append((lab, plus if lab.eps > 0 else minus))
    basis = ProjectorBasis(N=n, mode="generalized", projectors=projs)
    report = verify_basis(basis)
    if not report.all_pass:
        raise SingularParameterError(f"generalized basis failed verification: {report}")
    return basis


def _build_generalized_4x4(u: Mapping[str, object], v: Mapping[str, object]) -> ProjectorBasis:
    """Two projector pairs on the 4x4 space (even-size family)."""
    n = 2
    projs: list[tuple[ProjLabel, SparseMatrix]] = []
    outer = _gen_pair(_uv(u, "11"), _uv(v, "11"), [
        (kron(elem(n, 1, 1), elem(n, 1, 1)), "uu"),
        (kron(elem(n, 2, 2), elem(n, 2, 2)), "ui"),
        (kron(elem(n, 1, 2), elem(n, 1, 2)), "v"),
        (kron(elem(n, 2, 1), elem(n, 2, 1)), "vi"),
    ])
    inner = _gen_pair(_uv(u, "11b"), _uv(v, "11b"), [
        (kron(elem(n, 1, 1), elem(n, 2, 2)), "uu"),
        (kron(elem(n, 2, 2), elem(n, 1, 1)), "ui"),
        (kron(elem(n, 1, 2), elem(n, 2, 1)), "v"),
        (kron(elem(n, 2, 1), elem(n, 1, 2)), "vi"),
    ])
    for eps, mat in zip((1, -1), outer):
        projs.append((ProjLabel("ij", 1, 1, eps), mat))
    for eps, mat in zip((1, -1), inner):
        projs.append((ProjLabel("ijbar", 1, 1, eps), mat))
    basis = ProjectorBasis(N=n, mode="generalized", projectors=projs)
    report = verify_basis(basis)
    if not report.all_pass:
        raise SingularParameterError(f"4x4 basis failed verification: {report}")
    return basis


@dataclass
class BasisReport:
    idempotent: bool
    orthogonal: bool
    complete: bool
    violations: list[str]

    @property
    def all_pass(self) -> bool:
        return self.idempotent and self.orthogonal and self.complete

    def __str__(self) -> str:
        if self.all_pass:
            return "projector algebra: all checks pass exactly"
        return "projector algebra violations: " + "; ".join(self.violations)


def verify_basis(basis: ProjectorBasis) -> BasisReport:
    """Exact idempotence / orthogonality / completeness audit."""
    violations: list[str] = []
    idem = ortho = True
    projs = basis.projectors
    for a, (lab_a, pa) in enumerate(projs):
        for b in range(a, len(projs)):
            lab_b, pb = projs[b]
            prod = pa @ pb
            if a == b:
                if prod != pa:
                    idem = False
                    violations.append(f"P[{lab_a.render(basis.p)}] not idempotent")
            elif not prod.is_zero():
                ortho = False
                violations.append(
                    f"P[{lab_a.render(basis.p)}] P[{lab_b.render(basis.p)}] != 0")
    total = SparseMatrix(basis.N**2, basis.N**2)
    for _, mat in projs:
        total = total + mat
    complete = total == SparseMatrix.identity(basis.N**2, _ONE)
    if not complete:
        deficit = SparseMatrix.identity(basis.N**2, _ONE) - total
        violations.append(f"completeness deficit nnz={deficit.nnz}")
    return BasisReport(idem, ortho, complete, violations)


@dataclass
class Diagonalizer:
    """Involutive matrix M (entries 0, +-1/sqrt2, 1) with M P M = diagonal."""

    N: int
    matrix: SparseMatrix  # entries are Cyc over Q(sqrt 2)

    def conjugate(self, mat: SparseMatrix) -> SparseMatrix:
        return self.matrix @ mat @ self.matrix


def diagonalizer(n: int) -> Diagonalizer:
    """The simultaneous diagonalizer of the nested family (equal to its own
    inverse)."""
    if n < 3 or n % 2 == 0:
        raise EvenNError(f"diagonalizer needs odd N >= 3, got {n}")
    p = (n + 1) // 2
    inv_sqrt2 = Cyc.sqrt2().inverse()
    one = Cyc.one()

    def lift(mat: SparseMatrix, scale: Cyc) -> SparseMatrix:
        return mat.map_entries(lambda v: scale * Cyc.rational(v))

    pp = elem(n, p, p)
    acc = lift(kron(pp, pp), one)
    side = SparseMatrix(n, n)
    for i in range(1, p):
        ib = n - i + 1
        side = side + elem(n, i, i) - elem(n, ib, ib) + elem(n, i, ib) + elem(n, ib, i)
    acc = acc + lift(kron(pp, side), inv_sqrt2)
    acc = acc + lift(kron(side, pp), inv_sqrt2)
    for i in range(1, p):
        ib = n - i + 1
        di = elem(n, i, i) - elem(n, ib, ib)
        oi = elem(n, i, ib) + elem(n, ib, i)
        for j in range(1, p):
            jb = n - j + 1
            dj = elem(n, j, j) + elem(n, jb, jb)
            oj = elem(n, j, jb) + elem(n, jb, j)
            acc = acc + lift(kron(di, dj) + kron(oi, oj), inv_sqrt2)
    return Diagonalizer(N=n, matrix=acc)
