"""Spectra of the transfer matrix: invariant sectors, analytic eigenvectors,
numeric block diagonalization, root-of-unity multiplet classification, the
prime-order census, and the free energy.

The state space splits by the multiplicity k of the middle letter, and the
transfer matrix preserves each sector exactly; every numeric eigensolve here
runs per sector.  Eigenvalue trajectories are c * exp(mu * theta) with |c| a
root of unity and mu on the nonnegative exponent lattice, so classification
is a two-sample log fit, a lattice lookup, and a phase snap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .cyclotomic import Cyc
from .errors import (EigensolverFailureError, NonPrimeOrderError,
                     UnresolvedEigenvalueError, UnsupportedNError)
from .expscalar import ExpScalar
from .lattice import LatticeMatcher
from .linalg import SparseMatrix
from .symbols import LinForm, ParamSet, ParamSymbol
from .transfer import TransferMatrix, numeric_transfer
from .words import all_words, middle_count, word_index, word_str

__all__ = [
    "SubspaceIndex", "subspace_decomposition",
    "ladder_eigenvectors", "trace_eigenvectors", "verify_eigenvector",
    "SpectrumSamples", "full_spectrum", "Multiplet", "SpectrumReport",
    "classify_multiplets", "fermat_census", "free_energy",
]


# ---------------------------------------------------------------------------
# invariant sectors
# ---------------------------------------------------------------------------

@dataclass
class SubspaceIndex:
    """Words with exactly k middle letters; dimension (2(p-1))^(r-k) C(r, k)."""

    r: int
    k: int
    member_words: list[tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.member_words)


def subspace_decomposition(n: int, r: int) -> list[SubspaceIndex]:
    p = (n + 1) // 2
    buckets: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(r + 1)}
    for w in all_words(n, r):
        buckets[middle_count(w, n)].append(w)
    out = []
    for k in range(r, -1, -1):
        sub = SubspaceIndex(r=r, k=k, member_words=buckets[k])
        expected = (2 * (p - 1)) ** (r - k) * comb(r, r - k)
        assert sub.dim == expected, (k, sub.dim, expected)
        out.append(sub)
    assert sum(s.dim for s in out) == n**r
    return out


# ---------------------------------------------------------------------------
# analytic eigenvectors (N = 3)
# ---------------------------------------------------------------------------

def _require_n3(n: int, what: str) -> None:
    if n != 3:
        raise UnsupportedNError(f"{what} is only constructed for N=3")


def ladder_eigenvectors(n: int, r: int) -> list[tuple[dict[int, Cyc], ExpScalar]]:
    """Eigenvectors in the one-below-top sector S(r, r-1), as sparse vectors
    over word indices with cyclotomic coefficients, plus exact eigenvalues.

    For r = 1 that sector coincides with the bottom one and the two states
    are the single letters, eigenvalue exp(m11+ * theta).
    """
    _require_n3(n, "ladder eigenvector family")
    mid, up, down = 1, 0, 2  # letter codes: middle, 1, mirror-1
    if r == 1:
        lam = ExpScalar.exponential(LinForm.symbol(ParamSymbol(1, 1, 1)))
        return [({up: Cyc.one()}, lam), ({down: Cyc.one()}, lam)]
    out = []
    base = ExpScalar.exponential(
        LinForm.symbol(ParamSymbol(1, 2, 1)) + LinForm.symbol(ParamSymbol(2, 1, 1)))
    base_minus = ExpScalar.exponential(
        LinForm.symbol(ParamSymbol(1, 2, -1)) + LinForm.symbol(ParamSymbol(2, 1, -1)))
    for eps in (1, -1):
        for j in range(r):
            omega = Cyc.zeta(r, j)
            vec: dict[int, Cyc] = {}
            for s in range(r):
                # s = 0 puts the excited letter on the last site.
                site = r - 1 - s
                coeff = Cyc.zeta(r, (j * s) % r)
                for letter, w in ((up, Cyc.one()), (down, Cyc.rational(eps))):
                    word = tuple(mid if q != site else letter for q in range(r))
                    idx = word_index(word, n)
                    cur = vec.get(idx)
                    add = coeff * w
                    vec[idx] = add if cur is None else cur + add
            scalar = base if eps > 0 else base_minus
            power = Cyc.zeta(r, (j * (r - 1)) % r)
            out.append((vec, scalar * power))
    return out


def trace_eigenvectors(n: int, r: int):
    """(V_even, V_odd, top word): the three trace contributors with their
    exact eigenvalues."""
    _require_n3(n, "trace eigenvector pair")
    mid, up, down = 1, 0, 2
    even: dict[int, Cyc] = {}
    odd: dict[int, Cyc] = {}
    for bits in range(2**r):
        word = tuple(up if (bits >> s) & 1 else down for s in range(r))
        ones = bin(bits).count("1")
        target = even if ones % 2 == 0 else odd
        target[word_index(word, n)] = Cyc.one()
    lam = ExpScalar.exponential(LinForm.symbol(ParamSymbol(1, 1, 1), r))
    top = {word_index((mid,) * r, n): Cyc.one()}
    return (even, lam), (odd, lam), (top, ExpScalar.one())


def verify_eigenvector(tm: TransferMatrix, vec: dict[int, Cyc],
                       eigenvalue: ExpScalar) -> bool:
    """Exact check that the transfer matrix reproduces eigenvalue * vec."""
    lifted = {i: ExpScalar.coeff(c) for i, c in vec.items()}
    image = tm.matrix.apply(lifted)
    expected = {i: eigenvalue * v for i, v in lifted.items()}
    keys = set(image) | set(expected)
    for key in keys:
        a = image.get(key, ExpScalar.zero())
        b = expected.get(key, ExpScalar.zero())
        if not (a - b).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# numeric spectra per sector
# ---------------------------------------------------------------------------

@dataclass
class SpectrumSamples:
    """Eigen data from the block-diagonalized numeric transfer matrices."""

    N: int
    r: int
    params: ParamSet
    thetas: tuple[float, ...]
    # per trajectory: (sector k, eigenvalue at every theta sample, residual)
    trajectories: list[tuple[int, tuple[complex, ...], float]]
    eigenvalues: dict[float, np.ndarray] = field(default_factory=dict)


def _sector_indices(n: int, r: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for idx, w in enumerate(all_words(n, r)):
        out.setdefault(middle_count(w, n), []).append(idx)
    return out


def full_spectrum(params: ParamSet, r: int,
                  thetas: Sequence[float] = (1.0, 1.5, 0.5),
                  check_blocks: bool = True) -> SpectrumSamples:
    """Eigenvalues at each theta sample, solved sector by sector.

    The first two samples drive the trajectory fit; the third validates it.
    Trajectories are tracked through the (shared) eigenvectors of the first
    sample, which is legitimate because the family commutes.
    """
    n = params.N
    if len(thetas) < 2:
        raise ValueError("need at least two theta samples")
    mats = {th: numeric_transfer(params, r, th) for th in thetas}
    sectors = _sector_indices(n, r)
    if check_blocks:
        t0 = mats[thetas[0]].tocoo()
        ks = {}
        for k, idx in sectors.items():
            for i in idx:
                ks[i] = k
        if any(ks[i] != ks[j] for i, j in zip(t0.row, t0.col)):
            raise EigensolverFailureError("sector invariance violated numerically")
    trajectories = []
    eigenvalues = {th: [] for th in thetas}
    th0, th1 = thetas[0], thetas[1]
    for k in sorted(sectors, reverse=True):
        idx = np.array(sectors[k])
        blocks = {th: mats[th][np.ix_(idx, idx)].toarray() for th in thetas}
        try:
            w, v = np.linalg.eig(blocks[th0])
        except np.linalg.LinAlgError as exc:
            raise EigensolverFailureError(f"sector k={k}: {exc}") from exc
        scale = max(1.0, np.abs(blocks[th0]).max())
        for col in range(len(idx)):
            vec = v[:, col]
            lam0 = w[col]
            image = blocks[th1] @ vec
            lam1 = np.vdot(vec, image) / np.vdot(vec, vec)
            resid = float(np.abs(image - lam1 * vec).max())
            trajectories.append((k, complex(lam0), complex(lam1), resid / scale))
        for th in thetas:
            eigenvalues[th].append(np.linalg.eigvals(blocks[th]))
    samples = SpectrumSamples(
        N=n, r=r, params=params, thetas=tuple(thetas),
        trajectories=trajectories,
        eigenvalues={th: np.concatenate(vals) for th, vals in eigenvalues.items()},
    )
    return samples


# ---------------------------------------------------------------------------
# multiplet classification
# ---------------------------------------------------------------------------

@dataclass
class Multiplet:
    """count copies of exp(mu*theta) * (all l-th roots of unity)."""

    mu: LinForm
    order: int
    count: int

    def members(self) -> list[Cyc]:
        return [Cyc.zeta(self.order, j) for j in range(self.order)]

    def zero_sum_exact(self) -> bool:
        if self.order == 1:
            return False
        total = Cyc.zero()
        for m in self.members():
            total = total + m
        return total.is_zero()

    def to_json(self) -> dict:
        return {"mu": self.mu.render(), "order": self.order, "count": self.count}


@dataclass
class SpectrumReport:
    N: int
    r: int
    multiplets: list[Multiplet]
    trace_contributors: list[str]
    trace_check: bool
    eigenvalue_count: int
    zero_sum_exact: bool

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "r": self.r,
            "multiplets": [m.to_json() for m in self.multiplets],
            "trace_contributors": self.trace_contributors,
            "trace_check": self.trace_check,
            "eigenvalue_count": self.eigenvalue_count,
            "zero_sum_exact": self.zero_sum_exact,
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def multiplet_multiset(self) -> set[tuple[str, int, int]]:
        return {(m.mu.render(), m.order, m.count) for m in self.multiplets}


def _divisors_desc(r: int) -> list[int]:
    return [l for l in range(r, 0, -1) if r % l == 0]


def _snap_phase(c: complex, r: int, tol: float) -> Fraction:
    """Express the unit phase as j/l in lowest terms with l dividing r."""
    angle = np.angle(c) / (2 * np.pi)
    for l in _divisors_desc(r)[::-1]:  # prefer the smallest order
        for j in range(l):
            delta = abs((angle - j / l + 0.5) % 1.0 - 0.5)
            if delta * 2 * np.pi < tol:
                return Fraction(j, l) if j else Fraction(0, 1)
    raise UnresolvedEigenvalueError(
        f"phase {angle:.9f} (turns) is not a root of unity of order dividing {r}")


def classify_multiplets(samples: SpectrumSamples, params: ParamSet | None = None,
                        phase_tol: float = 1e-6,
                        trajectory_tol: float = 1e-7,
                        trace_tol: float = 1e-9) -> SpectrumReport:
    """Group eigenvalue trajectories into zero-sum root-of-unity multiplets.

    Raises UnresolvedEigenvalue (or its degenerate-parameters refinement)
    when a trajectory does not land on the lattice; that signals degenerate
    parameter values or a tolerance breach, not a spectrum property.
    """
    params = params or samples.params
    if params.values is None:
        raise UnresolvedEigenvalueError("classification needs numeric parameter values")
    n, r = samples.N, samples.r
    th0, th1 = samples.thetas[0], samples.thetas[1]
    matcher = LatticeMatcher(params.symbols, params.values, r)
    # measured slope per trajectory -> (mu form, phase fraction)
    groups: dict[tuple, dict[Fraction, int]] = {}
    forms: dict[tuple, LinForm] = {}
    for k, lam0, lam1, resid in samples.trajectories:
        if resid > trajectory_tol:
            raise UnresolvedEigenvalueError(
                f"trajectory residual {resid:.2e} exceeds {trajectory_tol:.0e} in sector k={k}")
        mu = (np.log(abs(lam1)) - np.log(abs(lam0))) / (th1 - th0)
        form = matcher.match(mu)
        phase_c = lam0 / np.exp(mu * th0)
        if abs(abs(phase_c) - 1.0) > 1e-7:
            raise UnresolvedEigenvalueError(
                f"eigenvalue modulus is not a pure exponential (|c|={abs(phase_c):.9f})")
        frac = _snap_phase(phase_c, r, phase_tol)
        key = form.items
        forms[key] = form
        groups.setdefault(key, {})
        groups[key][frac] = groups[key].get(frac, 0) + 1
    # extract complete root-of-unity orbits per slope, largest order first
    multiplets: list[Multiplet] = []
    trace_contributors: list[str] = []
    for key, phase_counts in groups.items():
        form = forms[key]
        counts = dict(phase_counts)
        for l in _divisors_desc(r):
            orbit = [Fraction(j, l) for j in range(l)]
            while all(counts.get(ph, 0) >= 1 for ph in orbit) and l > 1:
                for ph in orbit:
                    counts[ph] -= 1
                existing = next((m for m in multiplets
                                 if m.mu == form and m.order == l), None)
                if existing:
                    existing.count += 1
                else:
                    multiplets.append(Multiplet(mu=form, order=l, count=1))
        singles = counts.get(Fraction(0, 1), 0)
        leftover = {ph: c for ph, c in counts.items() if c and ph != Fraction(0, 1)}
        if leftover:
            raise UnresolvedEigenvalueError(
                f"incomplete multiplet at mu={form.render()}: leftover phases {leftover}")
        if singles:
            multiplets.append(Multiplet(mu=form, order=1, count=singles))
            trace_contributors.extend([f"exp(({form.render()})*theta)"] * singles
                                      if not form.is_zero() else ["1"] * singles)
    # reconciliation: spectrum sum against the closed-form trace at each sample
    from .transfer import trace_closed_form

    closed = trace_closed_form(n, r)
    values = params.value_map()
    trace_ok = True
    for th in samples.thetas:
        total = complex(np.sum(samples.eigenvalues[th]))
        want = closed.eval(th, values)
        if abs(total - want) > trace_tol * max(1.0, abs(want)):
            trace_ok = False
    zero_sum = all(m.zero_sum_exact() for m in multiplets if m.order > 1)
    multiplets.sort(key=lambda m: (-m.order, m.mu.items))
    return SpectrumReport(
        N=n, r=r, multiplets=multiplets,
        trace_contributors=sorted(trace_contributors),
        trace_check=trace_ok,
        eigenvalue_count=sum(m.order * m.count for m in multiplets),
        zero_sum_exact=zero_sum,
    )


def spectrum_csv(samples: SpectrumSamples, report: SpectrumReport) -> str:
    """Per-eigenvalue CSV rows: theta, re, im, mu, order, phase_index."""
    lines = ["theta,re,im,mu,order,phase_index"]
    for th in samples.thetas:
        values = samples.params.value_map()
        for m in report.multiplets:
            mod = np.exp(m.mu.slope(values) * th)
            for copy in range(m.count):
                for j in range(m.order):
                    lam = mod * np.exp(2j * np.pi * j / m.order)
                    lines.append(
                        f"{th},{lam.real:.12g},{lam.imag:.12g},"
                        f"{m.mu.render()},{m.order},{j}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# census and free energy
# ---------------------------------------------------------------------------

def _is_prime(r: int) -> bool:
    if r < 2:
        return False
    d = 2
    while d * d <= r:
        if r % d == 0:
            return False
        d += 1
    return True


def fermat_census(n: int, r: int, report: SpectrumReport | None = None) -> dict:
    """M = (N^r - N)/r for prime r; optionally confirmed against a classified
    spectrum (multiplet sizes divisible by r, weighted count = N^r - N)."""
    if not _is_prime(r):
        raise NonPrimeOrderError(f"census needs prime order, got {r}")
    m_count = (n**r - n) // r
    out = {"N": n, "r": r, "M": m_count, "pass": True, "multiplet_count": None,
           "sizes": None}
    if report is not None:
        nontrivial = [m for m in report.multiplets if m.order > 1]
        sizes = sorted({m.order for m in nontrivial})
        weighted = sum(m.order * m.count for m in nontrivial)
        plets = sum(m.count * (m.order // r) for m in nontrivial)
        out["multiplet_count"] = plets
        out["sizes"] = sizes
        out["pass"] = (all(m.order % r == 0 for m in nontrivial)
                       and weighted == n**r - n
                       and plets == m_count)
    return out


def free_energy(params: ParamSet, theta: float) -> float:
    """Negative of the dominant diagonal slope times theta (theta >= 0)."""
    values = params.value_map()
    top = max(float(values[s.name]) for s in params.diagonal_symbols(1))
    return -top * theta
