"""Pair-sum maps on M_n, their Choi-type operators and CP structure.

A map phi(C) = sum_i A_i C B_i is stored by its coefficient pairs. Two
n^2 by n^2 operators represent it:

  choi(phi)              sum_ij e_ij (x) phi(e_ij), the usual Choi matrix;
  dual_choi(phi, rep)    sum_i (1(x)B_i) E (1(x)A_i), the same data carried
                         by the state projection E of a factor
                         representation.

At uniform weights dual_choi(phi) equals choi of the adjoint map divided
by n, and phi can be rebuilt from it block by block. Kraus extraction from
a positive semidefinite dual_choi works at any weights. Vectorization is
row-major throughout: the transfer matrix sum_i kron(A_i, B_i^T) acts on
reshape(C, -1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    InternalDisagreement,
    NotPositive,
    NotTracial,
    RepMismatch,
)
from .factor import (
    FactorRep,
    apply_factor_to_state,
    implementer_from_vector,
    make_factor,
    vector_state,
)
from .linalg import (
    as_complex,
    dagger,
    hermitian_eig,
    hermiticity_defect,
    kron,
    leg_swap,
    opnorm,
)


@dataclass(frozen=True, eq=False)
class PairSumMap:
    """Coefficient pairs (A_i, B_i) of C -> sum_i A_i C B_i on M_n."""

    n: int
    terms: tuple = field(repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n!r}")
        out = []
        for a, b in self.terms:
            a = np.array(a, dtype=np.complex128)
            b = np.array(b, dtype=np.complex128)
            if a.shape != (self.n, self.n) or b.shape != (self.n, self.n):
                raise DimensionMismatch(
                    f"term matrices must be {self.n}x{self.n}, got {a.shape} and {b.shape}"
                )
            a.setflags(write=False)
            b.setflags(write=False)
            out.append((a, b))
        object.__setattr__(self, "terms", tuple(out))

    def __len__(self) -> int:
        return len(self.terms)


def identity_map(n: int) -> PairSumMap:
    eye = np.eye(n)
    return PairSumMap(n, ((eye, eye),))


def transpose_map(n: int) -> PairSumMap:
    terms = []
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=np.complex128)
            unit[i, j] = 1.0
            terms.append((unit, unit))
    return PairSumMap(n, tuple(terms))


def trace_map(n: int) -> PairSumMap:
    """C -> Tr(C) I / n."""
    terms = []
    for i in range(n):
        for j in range(n):
            unit_ij = np.zeros((n, n), dtype=np.complex128)
            unit_ij[i, j] = 1.0
            terms.append((unit_ij / n, unit_ij.T.copy()))
    return PairSumMap(n, tuple(terms))


def conjugation_map(v) -> PairSumMap:
    """C -> V* C V, a single-term completely positive map."""
    v = as_complex(v)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {v.shape}")
    return PairSumMap(v.shape[0], ((dagger(v), v),))


def map_sum(phi: PairSumMap, psi: PairSumMap) -> PairSumMap:
    if phi.n != psi.n:
        raise DimensionMismatch("maps act on different dimensions")
    return PairSumMap(phi.n, phi.terms + psi.terms)


def map_scale(phi: PairSumMap, z: complex) -> PairSumMap:
    return PairSumMap(phi.n, tuple((z * a, b) for a, b in phi.terms))


def apply_map(phi: PairSumMap, c) -> np.ndarray:
    c = as_complex(c)
    if c.shape != (phi.n, phi.n):
        raise DimensionMismatch(f"expected {phi.n}x{phi.n}, got {c.shape}")
    out = np.zeros((phi.n, phi.n), dtype=np.complex128)
    for a, b in phi.terms:
        out += a @ c @ b
    return out


def transfer(phi: PairSumMap) -> np.ndarray:
    """Matrix acting on row-major vec: vec(phi(C)) = transfer(phi) vec(C)."""
    n2 = phi.n * phi.n
    out = np.zeros((n2, n2), dtype=np.complex128)
    for a, b in phi.terms:
        out += kron(a, b.T)
    return out


def adjoint_map(phi: PairSumMap) -> PairSumMap:
    """The trace-pairing adjoint C -> sum_i B_i C A_i,
    so Tr(phi(C) D) = Tr(C adjoint(phi)(D))."""
    return PairSumMap(phi.n, tuple((b, a) for a, b in phi.terms))


def choi(phi: PairSumMap) -> np.ndarray:
    """sum_ij e_ij (x) phi(e_ij)."""
    rep = make_factor(phi.n, "tracial")
    n2 = phi.n * phi.n
    out = np.zeros((n2, n2), dtype=np.complex128)
    for a, b in phi.terms:
        left = apply_factor_to_state(rep, a)
        right = apply_factor_to_state(rep, dagger(b))
        out += np.outer(left, np.conj(right))
    return phi.n * out


def dual_choi(phi: PairSumMap, rep: FactorRep | None = None) -> np.ndarray:
    """sum_i (1(x)B_i) E (1(x)A_i) over the given representation.

    Linear and injective in phi at every weight vector; at uniform weights
    it equals choi(adjoint_map(phi)) / n.
    """
    rep = _resolve_rep(phi, rep)
    n2 = phi.n * phi.n
    out = np.zeros((n2, n2), dtype=np.complex128)
    for a, b in phi.terms:
        left = apply_factor_to_state(rep, b)
        right = apply_factor_to_state(rep, dagger(a))
        out += np.outer(left, np.conj(right))
    return out


def _resolve_rep(phi: PairSumMap, rep: FactorRep | None) -> FactorRep:
    if rep is None:
        return make_factor(phi.n, "tracial")
    if rep.n != phi.n:
        raise RepMismatch(f"map dimension {phi.n} vs representation dimension {rep.n}")
    return rep


def map_from_dual_choi(d, rep: FactorRep) -> np.ndarray:
    """Invert phi -> dual_choi(phi) at uniform weights.

    Returns the transfer matrix of the recovered map: block (i, j) of n*d
    is the adjoint map applied to e_ij, and a leg swap plus transpose turns
    the adjoint's transfer matrix into the map's own.
    """
    if not rep.tracial:
        raise NotTracial("map recovery from the dual Choi operator needs uniform weights")
    d = as_complex(d)
    n = rep.n
    if d.shape != (n * n, n * n):
        raise DimensionMismatch(f"expected {n * n}x{n * n}, got {d.shape}")
    scaled = n * d
    t_adj = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            block = scaled[i * n : (i + 1) * n, j * n : (j + 1) * n]
            t_adj[:, i * n + j] = block.reshape(-1)
    w = leg_swap(n)
    return w @ t_adj.T @ w


@dataclass(frozen=True, eq=False)
class KrausDecomposition:
    """Operators V_j with phi(C) = sum_j V_j* C V_j.

    coefficients holds the eigenvalues c_j of the dual Choi operator the
    V_j = sqrt(c_j) S_j were cut from.
    """

    ops: tuple
    coefficients: tuple

    def __len__(self) -> int:
        return len(self.ops)


def kraus_decompose(
    phi: PairSumMap, rep: FactorRep | None = None, tol: float = 1e-9
) -> KrausDecomposition:
    """Kraus operators from the eigendecomposition of dual_choi(phi).

    Works at any weight vector. Raises NotPositive (carrying the minimum
    eigenvalue of the Hermitian part) when the dual Choi operator is not
    positive semidefinite within tol, which is exactly the non-CP case.
    """
    rep = _resolve_rep(phi, rep)
    d = dual_choi(phi, rep)
    scale = max(1.0, opnorm(d))
    defect = hermiticity_defect(d)
    herm = (d + dagger(d)) / 2.0
    evals, evecs = hermitian_eig(herm, tol=max(tol, 1e-6))
    if defect > tol * scale:
        raise NotPositive(float(evals[-1]), hermiticity_defect=defect,
                          message="dual Choi operator is not Hermitian")
    if evals[-1] < -tol:
        raise NotPositive(float(evals[-1]), hermiticity_defect=defect)

    pieces = []
    for j in range(len(evals)):
        c = float(evals[j])
        if c <= tol:
            continue
        s = implementer_from_vector(rep, evecs[:, j])
        pieces.append((c, np.sqrt(c) * s))
    pieces.sort(
        key=lambda cv: (-cv[0],)
        + tuple(np.concatenate([cv[1].real.reshape(-1), cv[1].imag.reshape(-1)]))
    )
    return KrausDecomposition(
        ops=tuple(v for _, v in pieces), coefficients=tuple(c for c, _ in pieces)
    )


def kraus_apply(kd: KrausDecomposition, c) -> np.ndarray:
    c = as_complex(c)
    out = np.zeros_like(c)
    for v in kd.ops:
        out += dagger(v) @ c @ v
    return out


def _psd_within(m: np.ndarray, tol: float) -> tuple[bool, float]:
    # Hermitian within tol (relative) and min eigenvalue of the Hermitian
    # part >= -tol. Returns (ok, min eigenvalue).
    scale = max(1.0, opnorm(m))
    low = float(np.linalg.eigvalsh((m + dagger(m)) / 2.0)[0])
    if hermiticity_defect(m) > tol * scale:
        return False, low
    return low >= -tol, low


def _random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ dagger(g)
    return m / max(1.0, opnorm(m))


def _amplified_apply(phi: PairSumMap, x: np.ndarray) -> np.ndarray:
    # (identity (x) phi) on an n^2 by n^2 matrix, block by block.
    n = phi.n
    out = np.zeros_like(x)
    for i in range(n):
        for j in range(n):
            out[i * n : (i + 1) * n, j * n : (j + 1) * n] = apply_map(
                phi, x[i * n : (i + 1) * n, j * n : (j + 1) * n]
            )
    return out


@dataclass(frozen=True)
class ExtensionReport:
    """Outcome of probing sum_i (1(x)A_i) X (1(x)B_i) on psd inputs X."""

    positive: bool
    min_eigenvalue: float
    hermiticity_defect: float
    trials: int
    seed: int


def extension_positivity_check(
    phi: PairSumMap,
    trials: int = 64,
    tol: float = 1e-9,
    rep: FactorRep | None = None,
    seed: int = 42,
) -> ExtensionReport:
    """Probe the same pair-sum formula with coefficients lifted to 1 (x) A_i
    acting on all of B(H).

    Inputs are the state projection E plus `trials` random psd matrices of
    size n^2 (unit operator norm). Reports the worst (lowest) output
    eigenvalue and the worst output Hermiticity defect encountered.
    """
    rep = _resolve_rep(phi, rep)
    rng = np.random.default_rng(seed)
    x0 = rep.state_vector
    probes = [np.outer(x0, np.conj(x0))]
    probes += [_random_psd(rng, phi.n * phi.n) for _ in range(trials)]
    lifted = [
        (kron(np.eye(phi.n), a), kron(np.eye(phi.n), b)) for a, b in phi.terms
    ]
    worst_low = np.inf
    worst_defect = 0.0
    for x in probes:
        out = np.zeros_like(x)
        for la, lb in lifted:
            out += la @ x @ lb
        worst_defect = max(worst_defect, hermiticity_defect(out) / max(1.0, opnorm(out)))
        low = float(np.linalg.eigvalsh((out + dagger(out)) / 2.0)[0])
        worst_low = min(worst_low, low)
    ok = worst_low >= -tol and worst_defect <= tol
    return ExtensionReport(
        positive=bool(ok),
        min_eigenvalue=float(worst_low),
        hermiticity_defect=float(worst_defect),
        trials=trials,
        seed=seed,
    )


@dataclass(frozen=True)
class CpReport:
    """Five equivalent complete-positivity checks, which must agree."""

    cp: bool
    amplification_positive: bool
    extension_positive: bool
    kraus_exists: bool
    dual_choi_psd: bool
    choi_psd: bool
    min_eig_dual_choi: float
    min_eig_choi: float
    tol: float
    trials: int
    seed: int


def check_cp(
    phi: PairSumMap,
    tol: float = 1e-9,
    rep: FactorRep | None = None,
    trials: int = 64,
    seed: int = 42,
) -> CpReport:
    """Run all five CP characterizations and assert they agree.

    (1) identity (x) phi preserves positivity on E and random psd inputs;
    (2) the lifted pair-sum formula is positive on B(H) (same probes);
    (3) Kraus extraction from the dual Choi operator succeeds and
        reproduces phi on the matrix-unit basis;
    (4) the dual Choi operator is psd;
    (5) the Choi matrix is psd.

    Raises InternalDisagreement when the verdicts conflict.
    """
    rep = _resolve_rep(phi, rep)
    rng = np.random.default_rng(seed)
    n = phi.n

    x0 = rep.state_vector
    probes = [np.outer(x0, np.conj(x0))]
    probes += [_random_psd(rng, n * n) for _ in range(trials)]
    amp_ok = True
    for x in probes:
        ok, _ = _psd_within(_amplified_apply(phi, x), tol)
        if not ok:
            amp_ok = False
            break

    ext = extension_positivity_check(phi, trials=trials, tol=tol, rep=rep, seed=seed)

    kraus_ok = False
    try:
        kd = kraus_decompose(phi, rep, tol=tol)
    except NotPositive:
        kd = None
    if kd is not None:
        worst = 0.0
        for i in range(n):
            for j in range(n):
                unit = np.zeros((n, n), dtype=np.complex128)
                unit[i, j] = 1.0
                worst = max(
                    worst,
                    float(np.max(np.abs(kraus_apply(kd, unit) - apply_map(phi, unit)))),
                )
        kraus_ok = worst <= 10.0 * max(tol, 1e-12) * max(1.0, opnorm(transfer(phi)))

    dual_ok, dual_low = _psd_within(dual_choi(phi, rep), tol)
    choi_ok, choi_low = _psd_within(choi(phi), tol)

    verdicts = (amp_ok, ext.positive, kraus_ok, dual_ok, choi_ok)
    report = CpReport(
        cp=all(verdicts),
        amplification_positive=amp_ok,
        extension_positive=ext.positive,
        kraus_exists=kraus_ok,
        dual_choi_psd=dual_ok,
        choi_psd=choi_ok,
        min_eig_dual_choi=dual_low,
        min_eig_choi=choi_low,
        tol=tol,
        trials=trials,
        seed=seed,
    )
    if len(set(verdicts)) != 1:
        raise InternalDisagreement(report)
    return report


@dataclass(frozen=True)
class AdjointSymmetryReport:
    """How the adjoint map's Choi matrix relates to the original's."""

    swap_transpose_error: float
    choi_hermitian: bool
    conjugation_error: float | None
    min_eig_choi: float
    min_eig_adjoint_choi: float
    positivity_agree: bool


def adjoint_choi_symmetry(
    phi: PairSumMap, tol: float = 1e-9, rep: FactorRep | None = None
) -> AdjointSymmetryReport:
    """Check the structural identities tying choi(adjoint) to choi.

    (a) choi(adjoint) = W choi(phi)^T W always, with W the leg swap;
    (b) choi(adjoint) = W conj(choi(phi)) W, i.e. conjugation by the
        modular involution, whenever choi(phi) is Hermitian (skipped and
        reported as None otherwise);
    (c) the two Choi matrices are psd together or not at all.

    The modular form of (b) presumes uniform weights; passing an explicit
    non-tracial representation raises NotTracial.
    """
    rep = _resolve_rep(phi, rep)
    if not rep.tracial:
        raise NotTracial("Choi symmetry checks are stated at uniform weights")
    c = choi(phi)
    c_adj = choi(adjoint_map(phi))
    w = leg_swap(phi.n)
    swap_err = float(np.max(np.abs(c_adj - w @ c.T @ w)))
    hermitian = hermiticity_defect(c) <= tol * max(1.0, opnorm(c))
    conj_err = (
        float(np.max(np.abs(c_adj - w @ np.conj(c) @ w))) if hermitian else None
    )
    _, low_c = _psd_within(c, tol)
    _, low_a = _psd_within(c_adj, tol)
    agree = (low_c >= -tol) == (low_a >= -tol) if hermitian else True
    return AdjointSymmetryReport(
        swap_transpose_error=swap_err,
        choi_hermitian=bool(hermitian),
        conjugation_error=conj_err,
        min_eig_choi=float(low_c),
        min_eig_adjoint_choi=float(low_a),
        positivity_agree=bool(agree),
    )
