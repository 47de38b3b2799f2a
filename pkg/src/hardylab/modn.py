"""Mod-n direct-sum decompositions, n-unimodular tuples and their component
matrices, and kernel spaces cut out by the conjugated rows.

A function splits uniquely as f = f_1 + z f_2 + ... + z^(n-1) f_n with every
f_i supported on indices in nZ.  Residues of negative indices use the
mathematical mod (result in 0..n-1), so the split covers full Laurent series;
language-level remainder conventions never leak in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import CircleFunction, CircleGrid, LaurentPoly


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict plus the measured deviation backing it."""

    passed: bool
    deviation: float
    tolerance: float
    detail: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ModNDecomposition:
    """Components f_1..f_n of the mod-n split; component i is a function of
    z^n and enters the reconstruction with the prefactor z^(i-1)."""

    n: int
    components: tuple

    def reconstruct(self):
        first = self.components[0]
        if isinstance(first, LaurentPoly):
            total = LaurentPoly.zero()
            for i, comp in enumerate(self.components):
                total = total + comp.shifted(i)
            return total
        grid = first.grid
        acc = np.zeros(grid.size, dtype=complex)
        for i, comp in enumerate(self.components):
            acc += grid.nodes**i * comp.samples
        return CircleFunction(grid, acc)


def _decompose_poly(f: LaurentPoly, n: int) -> ModNDecomposition:
    buckets: list[dict[int, complex]] = [{} for _ in range(n)]
    for j, c in f.coeffs.items():
        res = j % n  # mathematical mod: residue in 0..n-1 for negative j too
        buckets[res][j - res] = c
    return ModNDecomposition(n=n, components=tuple(LaurentPoly(b) for b in buckets))


def _decompose_grid(f: CircleFunction, n: int) -> ModNDecomposition:
    grid = f.grid
    if n >= grid.half:
        raise ValueError(f"n = {n} too large for grid size {grid.size}")
    N = grid.size
    spec = f.spectrum
    j = grid.index_range()
    comps = []
    for res in range(n):
        masked = np.where(j % n == res, spec, 0.0)
        # shift indices down by res; at the nodes z^(j-res) only sees the
        # index mod N, so evaluating through the rolled bins is exact even
        # when j - res dips below -N/2
        bins = np.roll(np.fft.ifftshift(masked), -res)
        samples = np.fft.ifft(bins) * N
        comps.append(CircleFunction(grid, samples))
    return ModNDecomposition(n=n, components=tuple(comps))


def decompose_mod_n(f, n: int) -> ModNDecomposition:
    """Split f into components supported on nZ, collecting the coefficients of
    each residue class: component i holds c(kn + i - 1) at index kn."""
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if isinstance(f, LaurentPoly):
        return _decompose_poly(f, n)
    return _decompose_grid(f, n)


class UnimodularTuple:
    """An r-tuple (r <= n) of bounded circle functions, the raw material for
    an r x n component matrix.

    Band-limited tuples may be backed by exact Laurent polynomials, in which
    case Gram computations run on the exact backend.
    """

    def __init__(self, n: int, functions, grid: CircleGrid | None = None):
        n = int(n)
        if n < 1:
            raise ValueError("need n >= 1")
        functions = list(functions)
        if not 1 <= len(functions) <= n:
            raise ValueError(f"need between 1 and {n} functions, got {len(functions)}")
        self.n = n
        self.r = len(functions)
        if all(isinstance(f, LaurentPoly) for f in functions):
            self.polys = tuple(functions)
            self.grid = grid if grid is not None else CircleGrid()
            self.functions = tuple(p.sample(self.grid) for p in functions)
        elif all(isinstance(f, CircleFunction) for f in functions):
            self.polys = None
            self.grid = functions[0].grid
            for f in functions:
                if f.grid != self.grid:
                    raise ValueError("tuple functions must share one grid")
            self.functions = tuple(functions)
        else:
            raise ValueError("mix of sampled and exact functions is not supported")

    def max_spread(self) -> int | None:
        """Largest index spread over the tuple, when exact polys are available."""
        if self.polys is None:
            return None
        spreads = [p.max_index - p.min_index for p in self.polys if not p.is_zero]
        return max(spreads) if spreads else 0


@dataclass(frozen=True)
class ModMatrix:
    """The r x n matrix of mod-n components; entry (j, i) is the i-th
    component of the j-th tuple function."""

    n: int
    r: int
    entries: tuple  # r rows of n CircleFunction components
    entry_polys: tuple | None = None

    def row_residuals(self, f: LaurentPoly, grid: CircleGrid) -> np.ndarray:
        """Grid samples of sum_i conj(entry_ji) f_i for every row j, stacked
        as an (r, N) array."""
        parts = decompose_mod_n(f, self.n)
        part_samples = [p.sample(grid).samples for p in parts.components]
        out = np.zeros((self.r, grid.size), dtype=complex)
        for j in range(self.r):
            for i in range(self.n):
                out[j] += np.conj(self.entries[j][i].samples) * part_samples[i]
        return out


def matrix_of(tup: UnimodularTuple) -> ModMatrix:
    rows = []
    poly_rows = []
    for j in range(tup.r):
        if tup.polys is not None:
            dec = decompose_mod_n(tup.polys[j], tup.n)
            poly_rows.append(dec.components)
            rows.append(tuple(p.sample(tup.grid) for p in dec.components))
        else:
            dec = decompose_mod_n(tup.functions[j], tup.n)
            rows.append(dec.components)
    return ModMatrix(
        n=tup.n,
        r=tup.r,
        entries=tuple(rows),
        entry_polys=tuple(poly_rows) if poly_rows else None,
    )


def is_n_unimodular(phi, n: int, tol: float = 1e-9, grid: CircleGrid | None = None) -> CheckResult:
    """Whether the mod-n components of phi satisfy sum_i |phi_i|^2 = 1 on the
    grid, up to tol; the certificate records the worst deviation."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if isinstance(phi, LaurentPoly):
        grid = grid if grid is not None else CircleGrid()
        parts = decompose_mod_n(phi, n)
        comp_samples = [p.sample(grid).samples for p in parts.components]
    else:
        grid = phi.grid
        parts = decompose_mod_n(phi, n)
        comp_samples = [p.samples for p in parts.components]
    total = np.zeros(grid.size)
    for s in comp_samples:
        total += np.abs(s) ** 2
    deviation = float(np.max(np.abs(total - 1.0)))
    return CheckResult(
        passed=deviation <= tol,
        deviation=deviation,
        tolerance=tol,
        detail=f"max |sum_i |phi_i|^2 - 1| over {grid.size} nodes",
    )


def check_rows_orthonormal(A: ModMatrix, tol: float = 1e-9) -> CheckResult:
    """Pointwise check that A A* = I on the grid: unit rows and orthogonal
    distinct rows, with the worst entrywise deviation recorded."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    deviation = 0.0
    for j in range(A.r):
        for k in range(j, A.r):
            acc = np.zeros_like(A.entries[0][0].samples)
            for i in range(A.n):
                acc = acc + A.entries[j][i].samples * np.conj(A.entries[k][i].samples)
            target = 1.0 if j == k else 0.0
            deviation = max(deviation, float(np.max(np.abs(acc - target))))
    return CheckResult(
        passed=deviation <= tol,
        deviation=deviation,
        tolerance=tol,
        detail="max entrywise deviation of A A* from the identity",
    )


def check_orthonormal_family(
    tup: UnimodularTuple, K: int, tol: float = 1e-10
) -> CheckResult:
    """Gram check that {z^(kn) phi_j : |k| <= K, 1 <= j <= r} is orthonormal.

    Exact Laurent inner products are used when the tuple is band-limited;
    otherwise the grid quadrature is used and the shifted supports must stay
    inside the Nyquist window.
    """
    K = int(K)
    if K < 0:
        raise ValueError("need K >= 0")
    n = tup.n
    if tup.polys is not None:
        family = [
            p.shifted(k * n) for p in tup.polys for k in range(-K, K + 1)
        ]
        size = len(family)
        gram = np.zeros((size, size), dtype=complex)
        for a in range(size):
            for b in range(size):
                gram[a, b] = family[a].inner(family[b])
    else:
        half = tup.grid.half
        # shifted spectra must stay below Nyquist or the quadrature aliases
        for f in tup.functions:
            spec = np.abs(f.spectrum)
            nz = np.nonzero(spec > 1e-13 * (1.0 + spec.max()))[0]
            if len(nz):
                top = int(nz.max()) - half
                bot = int(nz.min()) - half
                if top + K * n >= half or bot - K * n < -half:
                    raise ValueError(
                        "shifted family leaves the grid's index range; "
                        "use a larger grid or a smaller K"
                    )
        nodes_pow = tup.grid.nodes**n
        family_samples = []
        for f in tup.functions:
            for k in range(-K, K + 1):
                family_samples.append(f.samples * nodes_pow**k)
        stack = np.asarray(family_samples)
        gram = stack @ np.conj(stack.T) / tup.grid.size
    deviation = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    return CheckResult(
        passed=deviation <= tol,
        deviation=deviation,
        tolerance=tol,
        detail=f"max deviation of the {gram.shape[0]}x{gram.shape[0]} Gram matrix from I",
    )


def kernel_space(
    A: ModMatrix,
    M_basis: list[LaurentPoly],
    tol: float = 1e-10,
    grid: CircleGrid | None = None,
) -> list[LaurentPoly]:
    """Orthonormal basis of the candidates whose components annihilate every
    conjugated row of A.

    Stacks the grid samples of the row residuals sum_i conj(phi_ji) f_i for
    each candidate and extracts the null space of that evaluation map with a
    relative singular-value cutoff.
    """
    if not M_basis:
        return []
    grid = grid if grid is not None else A.entries[0][0].grid
    columns = []
    for f in M_basis:
        columns.append(A.row_residuals(f, grid).ravel())
    # quadrature scaling keeps singular values on the L2 scale of the residuals
    R = np.asarray(columns).T / np.sqrt(grid.size)
    u, s, vh = np.linalg.svd(R, full_matrices=True)
    if s.size:
        rank = int(np.sum(s > tol * s[0]))
    else:
        rank = 0
    null_dim = len(M_basis) - rank
    if null_dim == 0:
        return []
    combos = np.conj(vh[rank:, :]).T  # columns span the null space
    # rebuild polys, then orthonormalize in the exact L2 pairing
    lo = min(p.min_index for p in M_basis if not p.is_zero)
    hi = max(p.max_index for p in M_basis if not p.is_zero)
    basis_mat = np.stack([p.to_vector((lo, hi)) for p in M_basis], axis=1)
    vecs = basis_mat @ combos
    q, rr = np.linalg.qr(vecs)
    keep = np.abs(np.diag(rr)) > tol * max(1.0, np.abs(np.diag(rr)).max())
    out = []
    for idx in range(q.shape[1]):
        if keep[idx]:
            out.append(LaurentPoly.from_vector(q[:, idx], (lo, hi)))
    return out


def random_unimodular_tuple(
    rng: np.random.Generator,
    n: int,
    r: int,
    max_power: int = 0,
    grid: CircleGrid | None = None,
) -> UnimodularTuple:
    """Fixture family with a built-in certificate: rows of a constant unitary
    spread over the residues, each column decorated by a monomial in z^n.

    phi_j = sum_i U_ji z^(i-1+n k_i) has component matrix (U_ji z^(n k_i)),
    so A A* = U U* = I exactly.
    """
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, _ = np.linalg.qr(raw)
    powers = rng.integers(0, max_power + 1, size=n)
    polys = []
    for j in range(r):
        coeffs = {}
        for i in range(n):
            coeffs[(i) + n * int(powers[i])] = q[j, i]
        polys.append(LaurentPoly(coeffs))
    return UnimodularTuple(n=n, functions=polys, grid=grid)


def perturb_tuple(tup: UnimodularTuple, eps: float = 1e-3) -> UnimodularTuple:
    """Break unimodularity by injecting a coefficient at a fresh index of the
    first tuple function; the pointwise defect is at least eps^2."""
    if tup.polys is None:
        raise ValueError("can only perturb an exact-backed tuple")
    polys = list(tup.polys)
    fresh = (polys[0].max_index or 0) + tup.n
    polys[0] = polys[0] + LaurentPoly.monomial(fresh, eps)
    return UnimodularTuple(n=tup.n, functions=polys, grid=tup.grid)
