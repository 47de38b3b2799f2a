"""Truncated invariant-subspace engine: spans, monomial shifts, wandering
subspaces, Wold decompositions, structured invariant subspaces, and Beurling
extraction.

Everything lives in a finite coefficient window [lo, hi].  A subspace is an
orthonormal coefficient matrix; the L2 pairing of Laurent polynomials is the
Euclidean pairing of their coefficient vectors, which keeps all the linear
algebra plain.  Truncation policy: shifting pushes content toward the top of
the window, so claims about invariance, wandering vectors, and Wold tails are
made only on a guarded interior; anything living in the top guard band (or
below an optional bottom guard) is classified as a boundary artifact and
flagged, never silently absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import LaurentPoly
from .modn import ModMatrix, UnimodularTuple, matrix_of

RANK_TOL = 1e-10  # module-wide relative rank threshold
INTERIOR_CUT = 1e-6  # singular-value cutoff for "essentially interior" directions


class WanderingDimensionError(ValueError):
    """Raised when extraction expects a one-dimensional wandering space."""

    def __init__(self, dim: int):
        super().__init__(f"wandering space has dimension {dim}, expected 1")
        self.dim = dim


class TruncatedSubspace:
    """A subspace of Laurent polynomials supported in a degree window, held as
    an L2-orthonormal coefficient basis (columns of Q)."""

    def __init__(self, window, Q: np.ndarray, truncated: bool = False):
        lo, hi = int(window[0]), int(window[1])
        if lo > hi:
            raise ValueError(f"bad window [{lo}, {hi}]")
        Q = np.asarray(Q, dtype=complex)
        if Q.ndim != 2 or Q.shape[0] != hi - lo + 1:
            raise ValueError("basis matrix must have one row per window index")
        self.window = (lo, hi)
        self.Q = Q
        self.truncated = bool(truncated)

    @property
    def dim(self) -> int:
        return self.Q.shape[1]

    @property
    def length(self) -> int:
        return self.window[1] - self.window[0] + 1

    def basis_polys(self) -> list[LaurentPoly]:
        return [
            LaurentPoly.from_vector(self.Q[:, i], self.window) for i in range(self.dim)
        ]

    def vector_of(self, p: LaurentPoly) -> np.ndarray:
        return p.to_vector(self.window)

    def project(self, vec: np.ndarray) -> np.ndarray:
        return self.Q @ (np.conj(self.Q.T) @ vec)

    def residual(self, p: LaurentPoly) -> float:
        """Distance from p to the subspace in L2."""
        vec = self.vector_of(p)
        return float(np.linalg.norm(vec - self.project(vec)))

    def contains(self, p: LaurentPoly, tol: float = 1e-9) -> bool:
        return self.residual(p) <= tol * max(1.0, p.norm2())

    def gram(self) -> np.ndarray:
        return np.conj(self.Q.T) @ self.Q

    def __repr__(self):
        return f"TruncatedSubspace(window={self.window}, dim={self.dim})"


def _orthonormal_columns(mat: np.ndarray, rel_tol: float = RANK_TOL) -> np.ndarray:
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    rank = int(np.sum(s > rel_tol * s[0]))
    return u[:, :rank]


def span(generators: list[LaurentPoly], window) -> TruncatedSubspace:
    """Orthonormal basis of the span of the generators inside the window.

    Rank is decided by the module-wide relative singular-value threshold;
    generators leaving the window raise.
    """
    lo, hi = int(window[0]), int(window[1])
    if not generators:
        return TruncatedSubspace((lo, hi), np.zeros((hi - lo + 1, 0), dtype=complex))
    mat = np.stack([g.to_vector((lo, hi)) for g in generators], axis=1)
    return TruncatedSubspace((lo, hi), _orthonormal_columns(mat))


def shift(M: TruncatedSubspace, n: int) -> TruncatedSubspace:
    """Multiply the subspace by z^n.  Content pushed past the window top is
    dropped and the result is flagged as truncated."""
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    L = M.length
    shifted = np.zeros_like(M.Q)
    if n < L:
        shifted[n:, :] = M.Q[:-n, :]
    exited = float(np.max(np.abs(M.Q[L - n :, :]))) if M.dim else 0.0
    truncated = exited > 1e-13
    return TruncatedSubspace(M.window, _orthonormal_columns(shifted), truncated=truncated)


@dataclass(frozen=True)
class InvarianceReport:
    status: str  # "simply" | "doubly" | "not_invariant"
    flagged: bool  # truncation caveat: content left the hard window
    max_interior_residual: float
    wandering_dim: int
    guard: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "flagged": self.flagged,
            "max_interior_residual": self.max_interior_residual,
            "wandering_dim": self.wandering_dim,
            "guard": self.guard,
        }


def _interior_rows(M: TruncatedSubspace, guard: int, bottom_guard: int = 0) -> slice:
    # rows strictly below the top guard band and at or above the bottom guard
    return slice(bottom_guard, M.length - guard)


def _split_by_interior(Q_cols: np.ndarray, rows: slice, cutoff: float = INTERIOR_CUT):
    """Split an orthonormal set of coefficient columns into directions with
    interior mass and pure boundary-band directions."""
    if Q_cols.shape[1] == 0:
        return Q_cols, Q_cols
    restricted = Q_cols[rows, :]
    u, s, vh = np.linalg.svd(restricted, full_matrices=True)
    s_full = np.zeros(Q_cols.shape[1])
    s_full[: s.size] = s
    v = np.conj(vh).T
    interior = Q_cols @ v[:, s_full > cutoff]
    boundary = Q_cols @ v[:, s_full <= cutoff]
    return interior, boundary


def is_simply_invariant(
    M: TruncatedSubspace, n: int, tol: float = 1e-9, guard: int | None = None
) -> InvarianceReport:
    """Classify the behaviour of M under multiplication by z^n.

    Each shifted basis vector is projected back onto M; only the residual mass
    in the guarded interior counts against containment, since residuals inside
    the top guard band are exactly what truncating an infinite ladder produces.
    If the shift pushes content past the hard window top, simply and doubly
    invariance cannot be told apart from inside the window, and the verdict is
    "doubly" with the truncation flag set.  Otherwise properness is decided by
    whether the wandering complement contains a direction supported in the
    interior.
    """
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if guard is None:
        guard = 2 * n
    if M.dim == 0:
        return InvarianceReport("doubly", False, 0.0, 0, guard)
    L = M.length
    exited = float(np.max(np.abs(M.Q[L - n :, :]))) > 1e-13
    shifted = np.zeros_like(M.Q)
    if n < L:
        shifted[n:, :] = M.Q[:-n, :]
    resid = shifted - M.project(shifted)
    rows = _interior_rows(M, guard)
    max_int = float(np.linalg.norm(resid[rows, :], axis=0).max()) if M.dim else 0.0
    if max_int > tol:
        return InvarianceReport("not_invariant", exited, max_int, 0, guard)
    # wandering complement of the projected shift span, in plain L2
    coords = np.conj(M.Q.T) @ shifted
    u, s, _ = np.linalg.svd(coords, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > RANK_TOL * s[0]))
    wander = M.Q @ u[:, rank:]
    interior, _boundary = _split_by_interior(wander, rows)
    wdim = interior.shape[1]
    if exited:
        return InvarianceReport("doubly", True, max_int, wdim, guard)
    if wdim > 0:
        return InvarianceReport("simply", False, max_int, wdim, guard)
    return InvarianceReport("doubly", False, max_int, 0, guard)


class InnerProductSpace:
    """A truncated subspace together with a Hermitian positive-definite metric
    on its coordinates; the default is the plain L2 metric.

    The pullback constructor equips span{phi z^k} with the norm that declares
    the shifts of phi orthonormal, i.e. ||phi g|| = ||g||_2.
    """

    def __init__(self, carrier: TruncatedSubspace, metric: np.ndarray | None = None):
        m = carrier.dim
        if metric is None:
            metric = np.eye(m, dtype=complex)
        metric = np.asarray(metric, dtype=complex)
        if metric.shape != (m, m):
            raise ValueError("metric shape must match the carrier dimension")
        if float(np.max(np.abs(metric - np.conj(metric.T)))) > 1e-10 * (
            1.0 + float(np.max(np.abs(metric)))
        ):
            raise ValueError("metric must be Hermitian")
        eigs = np.linalg.eigvalsh(metric)
        if eigs[0] <= 1e-10 * max(eigs[-1], 1e-300):
            raise ValueError("metric must be positive definite")
        self.carrier = carrier
        self.metric = metric

    @classmethod
    def l2(cls, carrier: TruncatedSubspace) -> "InnerProductSpace":
        return cls(carrier, None)

    @classmethod
    def pullback(cls, phi: LaurentPoly, count: int, window) -> "InnerProductSpace":
        """Span of {phi z^k : 0 <= k < count} with ||phi g|| := ||g||_2."""
        if phi.is_zero:
            raise ValueError("pullback needs a nonzero generator")
        shifts = [phi.shifted(k) for k in range(int(count))]
        carrier = span(shifts, window)
        if carrier.dim != len(shifts):
            raise ValueError("pullback shifts are not independent in the window")
        V = np.stack([s.to_vector(window) for s in shifts], axis=1)
        C = np.conj(carrier.Q.T) @ V
        G = np.linalg.inv(C @ np.conj(C.T))
        G = 0.5 * (G + np.conj(G.T))
        return cls(carrier, G)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def coords(self, p: LaurentPoly, tol: float = 1e-9) -> np.ndarray:
        vec = self.carrier.vector_of(p)
        c = np.conj(self.carrier.Q.T) @ vec
        resid = float(np.linalg.norm(vec - self.carrier.Q @ c))
        if resid > tol * max(1.0, float(np.linalg.norm(vec))):
            raise ValueError(f"element is not in the space (residual {resid:.3e})")
        return c

    def inner(self, cu: np.ndarray, cv: np.ndarray) -> complex:
        # linear in the first slot, conjugate-linear in the second
        return complex(np.conj(cv) @ (self.metric @ cu))

    def norm(self, cu: np.ndarray) -> float:
        val = self.inner(cu, cu)
        return float(np.sqrt(max(val.real, 0.0)))


def _gram_orthonormalize(cols: np.ndarray, G: np.ndarray, rel_tol: float = RANK_TOL):
    """Orthonormalize coordinate columns against the metric G."""
    if cols.shape[1] == 0:
        return cols
    E = np.conj(cols.T) @ G @ cols
    E = 0.5 * (E + np.conj(E.T))
    vals, vecs = np.linalg.eigh(E)
    keep = vals > rel_tol * max(vals[-1], 1e-300)
    return cols @ (vecs[:, keep] / np.sqrt(vals[keep]))


def _wandering_coords(
    M: InnerProductSpace, n: int, tol: float, guard: int | None
) -> np.ndarray:
    """Metric-orthonormal coordinate basis of M minus the projected z^n shift."""
    carrier = M.carrier
    report = is_simply_invariant(carrier, n, tol=tol, guard=guard)
    if report.status == "not_invariant":
        raise ValueError(
            f"space is not invariant under the shift (interior residual "
            f"{report.max_interior_residual:.3e})"
        )
    L = carrier.length
    shifted = np.zeros_like(carrier.Q)
    if n < L:
        shifted[n:, :] = carrier.Q[:-n, :]
    coords = np.conj(carrier.Q.T) @ shifted
    # complement of the projected shift span with respect to the metric
    C = _orthonormal_columns(coords)
    if C.shape[1] == 0:
        base = np.eye(carrier.dim, dtype=complex)
    else:
        A = np.conj(C.T) @ M.metric
        _, s, vh = np.linalg.svd(A, full_matrices=True)
        rank = int(np.sum(s > RANK_TOL * s[0])) if s.size else 0
        base = np.conj(vh[rank:, :]).T
    return _gram_orthonormalize(base, M.metric)


def wandering_space(
    M: InnerProductSpace, n: int, tol: float = 1e-9, guard: int | None = None
) -> TruncatedSubspace:
    """The complement of the shifted space inside M, in M's metric, returned
    as a plain subspace (re-orthonormalized in L2)."""
    B = _wandering_coords(M, n, tol, guard)
    return TruncatedSubspace(
        M.carrier.window, _orthonormal_columns(M.carrier.Q @ B)
    )


@dataclass(frozen=True)
class WoldReport:
    wandering_dim: int
    wandering_basis: list = field(default_factory=list)
    boundary_dim: int = 0
    tail_dim: int = 0
    reconstruction_error: float = 0.0
    orthogonality_defect: float = 0.0
    caveat: bool = False
    passed: bool = True
    tolerance: float = 0.0

    def to_json(self) -> dict:
        return {
            "wandering_dim": self.wandering_dim,
            "boundary_dim": self.boundary_dim,
            "tail_dim": self.tail_dim,
            "reconstruction_error": self.reconstruction_error,
            "orthogonality_defect": self.orthogonality_defect,
            "caveat": self.caveat,
            "pass": self.passed,
            "tolerance": self.tolerance,
        }


def _subspace_intersection(bases: list[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """Intersection of coordinate subspaces given by orthonormal bases."""
    if not bases:
        return np.zeros((0, 0), dtype=complex)
    current = bases[0]
    for nxt in bases[1:]:
        if current.shape[1] == 0 or nxt.shape[1] == 0:
            return current[:, :0]
        overlap = np.conj(current.T) @ nxt
        u, s, _ = np.linalg.svd(overlap, full_matrices=False)
        keep = s >= 1.0 - tol
        current = current @ u[:, keep]
    return current


def wold_decompose(
    M: InnerProductSpace,
    n: int,
    depth: int,
    tol: float = 1e-9,
    guard: int | None = None,
    bottom_guard: int = 0,
    report_tol: float = 1e-9,
) -> WoldReport:
    """Decompose M into shifted copies of its wandering space and measure how
    well they reconstruct the coverage region.

    The rungs z^(kn) N for k = 0..depth must be pairwise orthogonal in the
    metric; the reconstruction error is the worst metric-relative distance of
    an element of M supported within depth*n of the window bottom from the sum
    of its rung projections.  The tail is the intersection of the shifted
    copies of M restricted to the guarded interior; an empty tail at
    truncation is the finite-window face of the statement that repeated
    division by the shift forces every coefficient to vanish.
    """
    n = int(n)
    depth = int(depth)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    carrier = M.carrier
    lo, hi = carrier.window
    if depth * n > hi - lo:
        raise ValueError("depth * n exceeds the window span")
    if guard is None:
        guard = 2 * n
    inv = is_simply_invariant(carrier, n, tol=tol, guard=guard)
    if inv.status == "not_invariant":
        raise ValueError("space is not invariant under the shift")
    rows = _interior_rows(carrier, guard, bottom_guard)
    if inv.status == "doubly":
        # within the window the shift looks surjective: no wandering content,
        # and the tail is everything that survives the interior restriction
        tails = _tail_dim(carrier, n, depth, rows)
        return WoldReport(
            wandering_dim=0,
            wandering_basis=[],
            boundary_dim=0,
            tail_dim=tails,
            reconstruction_error=0.0,
            orthogonality_defect=0.0,
            caveat=True,
            passed=False,
            tolerance=report_tol,
        )
    B = _wandering_coords(M, n, tol, guard)
    wander_cols = carrier.Q @ B
    interior_cols, boundary_cols = _split_by_interior(wander_cols, rows)
    wdim = interior_cols.shape[1]
    bdim = boundary_cols.shape[1]
    basis_polys = [
        LaurentPoly.from_vector(wander_cols[:, i], carrier.window)
        for i in range(wander_cols.shape[1])
    ]
    # rungs: shift the wandering columns, keep the directions that stay in M
    L = carrier.length
    rungs = []
    for k in range(depth + 1):
        step = k * n
        shifted = np.zeros_like(wander_cols)
        if step == 0:
            shifted = wander_cols.copy()
        elif step < L:
            shifted[step:, :] = wander_cols[:-step, :]
        coords = np.conj(carrier.Q.T) @ shifted
        resid = shifted - carrier.Q @ coords
        live = np.linalg.norm(shifted, axis=0) > 0.5
        ok = (np.linalg.norm(resid, axis=0) <= 10 * tol) & live
        kept = coords[:, ok]
        if kept.shape[1]:
            rungs.append(_gram_orthonormalize(kept, M.metric))
        else:
            rungs.append(kept)
    defect = 0.0
    for a in range(len(rungs)):
        for b in range(a + 1, len(rungs)):
            if rungs[a].shape[1] and rungs[b].shape[1]:
                cross = np.conj(rungs[a].T) @ M.metric @ rungs[b]
                defect = max(defect, float(np.max(np.abs(cross))))
    # coverage region: elements of M supported within depth*n of the bottom
    cover_rows = np.arange(carrier.length) > (depth * n)
    outside = carrier.Q[cover_rows, :]
    if outside.shape[0]:
        _, s, vh = np.linalg.svd(outside, full_matrices=True)
        rank = int(np.sum(s > RANK_TOL * s[0])) if s.size and s[0] > 0 else 0
        cov = np.conj(vh[rank:, :]).T
    else:
        cov = np.eye(carrier.dim, dtype=complex)
    recon = 0.0
    for idx in range(cov.shape[1]):
        x = cov[:, idx]
        total = np.zeros_like(x)
        for D in rungs:
            if D.shape[1]:
                total = total + D @ (np.conj(D.T) @ (M.metric @ x))
        err = M.norm(x - total) / max(M.norm(x), 1e-300)
        recon = max(recon, float(err))
    tails = _tail_dim(carrier, n, depth, rows)
    passed = recon <= report_tol and defect <= report_tol and tails == 0
    return WoldReport(
        wandering_dim=wdim,
        wandering_basis=basis_polys,
        boundary_dim=bdim,
        tail_dim=tails,
        reconstruction_error=recon,
        orthogonality_defect=defect,
        caveat=False,
        passed=passed,
        tolerance=report_tol,
    )


def _tail_dim(carrier: TruncatedSubspace, n: int, depth: int, rows: slice) -> int:
    """Dimension of the guarded-interior intersection of the shifted copies."""
    L = carrier.length
    bases = []
    for k in range(depth + 1):
        step = k * n
        shifted = np.zeros_like(carrier.Q)
        if step == 0:
            shifted = carrier.Q.copy()
        elif step < L:
            shifted[step:, :] = carrier.Q[:-step, :]
        bases.append(_orthonormal_columns(shifted))
    inter = _subspace_intersection(bases)
    if inter.shape[1] == 0:
        return 0
    interior, _ = _split_by_interior(inter, rows)
    return interior.shape[1]


def build_invariant(
    tup: UnimodularTuple,
    kernel_gens: list[LaurentPoly],
    window,
    tol: float = 1e-9,
    top_margin: int | None = None,
) -> TruncatedSubspace:
    """Assemble the structured subspace: nonnegative z^n-shifts of the tuple
    functions plus the supplied kernel generators.

    The ladder stops top_margin indices (default n, one shift) short of the
    window top so that invariance checks are not polluted by hard-window
    exits.  The direct-sum geometry is verified before returning: the ladder
    Gram must be the identity and the kernel generators must be orthogonal to
    the ladder; kernel generators must also pass the row-residual test against
    the tuple's component matrix.
    """
    if tup.polys is None:
        raise ValueError("building needs an exact-backed tuple")
    lo, hi = int(window[0]), int(window[1])
    n = tup.n
    if top_margin is None:
        top_margin = n
    A = matrix_of(tup)
    for g in kernel_gens:
        resid = float(np.max(np.abs(A.row_residuals(g, tup.grid))))
        if resid > 10 * tol:
            raise ValueError(
                f"kernel generator fails the row-residual test ({resid:.3e})"
            )
        if g.is_zero or g.min_index < lo or g.max_index > hi:
            raise ValueError("kernel generator leaves the window")
    ladder = []
    cap = hi - top_margin
    for phi in tup.polys:
        if phi.is_zero:
            raise ValueError("tuple functions must be nonzero")
        k = 0
        while phi.min_index + k * n >= lo and phi.max_index + k * n <= cap:
            ladder.append(phi.shifted(k * n))
            k += 1
        if k == 0:
            raise ValueError("window cannot hold a single shift of the tuple")
    mats = np.stack([p.to_vector((lo, hi)) for p in ladder], axis=1)
    gram = np.conj(mats.T) @ mats
    gdev = float(np.max(np.abs(gram - np.eye(len(ladder)))))
    if gdev > tol:
        raise ValueError(f"ladder Gram deviates from the identity by {gdev:.3e}")
    if kernel_gens:
        kmat = np.stack([g.to_vector((lo, hi)) for g in kernel_gens], axis=1)
        cross = float(np.max(np.abs(np.conj(mats.T) @ kmat)))
        if cross > tol:
            raise ValueError(f"kernel generators are not orthogonal to the ladder ({cross:.3e})")
    return span(ladder + list(kernel_gens), (lo, hi))


@dataclass(frozen=True)
class MembershipDecomposition:
    h: list  # one coefficient poly in z^n per tuple function
    kernel_part: LaurentPoly
    residual: float

    def to_json(self) -> dict:
        return {
            "h_coefficients": [
                [[j, c.real, c.imag] for j, c in sorted(p.coeffs.items())]
                for p in self.h
            ],
            "kernel_norm": self.kernel_part.norm2(),
            "residual": self.residual,
        }


def verify_structure_membership(
    M: TruncatedSubspace,
    tup: UnimodularTuple,
    f: LaurentPoly,
    tol: float = 1e-9,
) -> MembershipDecomposition:
    """Best-fit split of f into tuple shifts plus a kernel component.

    Least squares against the in-window ladder {z^(kn) phi_j} that actually
    lies inside M, with the kernel part as the complement of the ladder within
    M.  The residual quantifies distance from M; members constructed through
    the structured builder round-trip with negligible residual.
    """
    if tup.polys is None:
        raise ValueError("membership needs an exact-backed tuple")
    lo, hi = M.window
    n = tup.n
    ladder: list[LaurentPoly] = []
    owners: list[int] = []
    powers: list[int] = []
    for j, phi in enumerate(tup.polys):
        k = 0
        while phi.min_index + k * n >= lo and phi.max_index + k * n <= hi:
            cand = phi.shifted(k * n)
            if M.contains(cand, tol=tol):
                ladder.append(cand)
                owners.append(j)
                powers.append(k)
            k += 1
    cols = (
        np.stack([p.to_vector((lo, hi)) for p in ladder], axis=1)
        if ladder
        else np.zeros((M.length, 0), dtype=complex)
    )
    ladder_basis = _orthonormal_columns(cols)
    # kernel component: the part of M orthogonal to the ladder
    kern = M.Q - ladder_basis @ (np.conj(ladder_basis.T) @ M.Q)
    kernel_basis = _orthonormal_columns(kern)
    design = np.concatenate([cols, kernel_basis], axis=1)
    target = f.to_vector((lo, hi))
    if design.shape[1]:
        sol, _, _, _ = np.linalg.lstsq(design, target, rcond=RANK_TOL)
        fit = design @ sol
    else:
        sol = np.zeros(0, dtype=complex)
        fit = np.zeros_like(target)
    residual = float(np.linalg.norm(target - fit))
    h_polys = [LaurentPoly.zero() for _ in range(tup.r)]
    for idx in range(len(ladder)):
        c = sol[idx]
        if c != 0:
            h_polys[owners[idx]] = h_polys[owners[idx]] + LaurentPoly.monomial(
                powers[idx] * n, c
            )
    kern_vec = kernel_basis @ sol[len(ladder) :] if kernel_basis.shape[1] else np.zeros_like(target)
    kernel_part = LaurentPoly.from_vector(kern_vec, (lo, hi))
    return MembershipDecomposition(h=h_polys, kernel_part=kernel_part, residual=residual)


def _gauge_fix(p: LaurentPoly, floor: float = 1e-12) -> LaurentPoly:
    """Rotate by a unimodular constant so the lowest-order nonzero coefficient
    is positive real."""
    if p.is_zero:
        return p
    peak = max(abs(c) for c in p.coeffs.values())
    for j in sorted(p.coeffs):
        c = p.coeffs[j]
        if abs(c) > floor * peak:
            return p * (np.conj(c) / abs(c))
    return p


def beurling_extract(
    M: InnerProductSpace,
    tol: float = 1e-9,
    guard: int | None = None,
    extra_fixtures: list[LaurentPoly] | None = None,
    validate_metric: bool = True,
):
    """Extract the single-shift generator of a Hilbert space on which z acts
    isometrically: the unit wandering vector phi, gauge-fixed, together with
    an isometry report checking ||phi g||_M = ||g||_2 on polynomial fixtures
    and the analyticity of phi.

    Raises WanderingDimensionError when the wandering space is not a line.
    """
    carrier = M.carrier
    if validate_metric:
        _check_shift_isometry(M, tol)
    if guard is None:
        spreads = []
        for i in range(carrier.dim):
            nz = np.nonzero(np.abs(carrier.Q[:, i]) > 1e-12)[0]
            if len(nz):
                spreads.append(int(nz.max() - nz.min()))
        guard = 1 + (max(spreads) if spreads else 0)
    B = _wandering_coords(M, 1, tol, guard)
    wander_cols = carrier.Q @ B
    rows = _interior_rows(carrier, guard)
    interior, _ = _split_by_interior(wander_cols, rows)
    wdim = interior.shape[1]
    if wdim != 1:
        raise WanderingDimensionError(wdim)
    # metric-normalized representative, then unimodular gauge
    coords = np.conj(carrier.Q.T) @ interior[:, 0]
    coords = coords / max(M.norm(coords), 1e-300)
    phi = _gauge_fix(LaurentPoly.from_vector(carrier.Q @ coords, carrier.window))
    # fixture polynomials: monomials that keep phi g inside the space
    lo, hi = carrier.window
    fixtures = []
    k = 0
    while not phi.is_zero and phi.max_index + k <= hi:
        fixtures.append(LaurentPoly.monomial(k))
        k += 1
    for extra in extra_fixtures or []:
        fixtures.append(extra)
    entries = []
    worst = 0.0
    for idx, g in enumerate(fixtures):
        prod = phi * g
        try:
            c = M.coords(prod, tol=1e-6)
        except ValueError:
            entries.append({"id": f"g[{idx}]", "pass": False, "error": float("inf"), "tolerance": tol})
            worst = float("inf")
            continue
        lhs = M.norm(c)
        rhs = g.norm2()
        err = abs(lhs - rhs) / max(rhs, 1e-300)
        worst = max(worst, err)
        entries.append(
            {"id": f"g[{idx}]", "pass": err <= tol, "error": float(err), "tolerance": tol}
        )
    analytic = all(j >= 0 for j in phi.coeffs)
    report = {
        "check": "shift-generator-isometry",
        "pass": bool(entries) and all(e["pass"] for e in entries) and analytic,
        "fixtures": entries,
        "worst_relative_error": worst,
        "generator_analytic": analytic,
        "tolerance": tol,
    }
    return phi, report


def _check_shift_isometry(M: InnerProductSpace, tol: float) -> None:
    """Verify <z f, z g>_M = <f, g>_M on the carrier basis pairs whose shifts
    stay inside the space."""
    carrier = M.carrier
    L = carrier.length
    shifted = np.zeros_like(carrier.Q)
    if 1 < L:
        shifted[1:, :] = carrier.Q[:-1, :]
    coords = np.conj(carrier.Q.T) @ shifted
    resid = np.linalg.norm(shifted - carrier.Q @ coords, axis=0)
    stay = resid <= 10 * tol
    if not np.any(stay):
        raise ValueError("no basis shift stays inside the space; cannot validate the metric")
    D = coords[:, stay]
    shifted_gram = np.conj(D.T) @ M.metric @ D
    base_gram = M.metric[np.ix_(stay, stay)]
    dev = float(np.max(np.abs(shifted_gram - base_gram)))
    if dev > 100 * tol * (1.0 + float(np.max(np.abs(M.metric)))):
        raise ValueError(f"the shift is not an isometry for this metric (deviation {dev:.3e})")
