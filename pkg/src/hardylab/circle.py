"""Uniform grids on the unit circle, spectral analysis/synthesis, and exact
Laurent-series arithmetic.

Grid functions are held as N uniform samples at the nodes e^{2 pi i k/N};
spectral coefficients live in the centered index window [-N/2, N/2).
Index aliasing into that window is treated as an error, never as silent
wraparound.  Finite Laurent series (coefficient maps) are the exact oracle
backend: their arithmetic carries no quadrature error.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

DEFAULT_GRID_SIZE = 1024


class CircleGrid:
    """Uniform N-point sampling grid with normalized node weight 1/N.

    N must be a power of two and at least 8 so that quadrature of products of
    band-limited functions stays exact with headroom.
    """

    __slots__ = ("size", "weight", "nodes")

    def __init__(self, size: int = DEFAULT_GRID_SIZE):
        size = int(size)
        if size < 8 or size & (size - 1):
            raise ValueError(f"grid size must be a power of two >= 8, got {size}")
        self.size = size
        self.weight = 1.0 / size
        nodes = np.exp(2j * np.pi * np.arange(size) / size)
        nodes.setflags(write=False)
        self.nodes = nodes

    @property
    def half(self) -> int:
        return self.size // 2

    def index_range(self) -> np.ndarray:
        """Centered coefficient indices -N/2 .. N/2-1."""
        return np.arange(-self.half, self.half)

    def __eq__(self, other):
        return isinstance(other, CircleGrid) and other.size == self.size

    def __hash__(self):
        return hash(("CircleGrid", self.size))

    def __repr__(self):
        return f"CircleGrid({self.size})"


class CircleFunction:
    """A complex function on the circle held as grid samples.

    The centered spectrum (coefficients for j in [-N/2, N/2)) is computed
    lazily and cached; instances are immutable after construction.
    """

    __slots__ = ("grid", "_samples", "_spectrum")

    def __init__(self, grid: CircleGrid, samples, spectrum=None):
        samples = np.asarray(samples, dtype=complex)
        if samples.shape != (grid.size,):
            raise ValueError(
                f"expected {grid.size} samples, got shape {samples.shape}"
            )
        samples = samples.copy()
        samples.setflags(write=False)
        self.grid = grid
        self._samples = samples
        if spectrum is not None:
            spectrum = np.asarray(spectrum, dtype=complex).copy()
            if spectrum.shape != (grid.size,):
                raise ValueError("cached spectrum must cover the full window")
            spectrum.setflags(write=False)
        self._spectrum = spectrum

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    @property
    def spectrum(self) -> np.ndarray:
        """Centered coefficient array; entry i holds the coefficient of z^(i - N/2)."""
        if self._spectrum is None:
            spec = np.fft.fftshift(np.fft.fft(self._samples)) / self.grid.size
            spec.setflags(write=False)
            self._spectrum = spec  # deterministic, so caching is race-free
        return self._spectrum

    def coeff(self, j: int) -> complex:
        half = self.grid.half
        if not -half <= j < half:
            raise ValueError(f"index {j} outside the window [{-half}, {half})")
        return complex(self.spectrum[j + half])

    def modulus(self) -> "CircleFunction":
        """Pointwise |f| as a real-valued circle function."""
        return CircleFunction(self.grid, np.abs(self._samples))

    def _check_grid(self, other: "CircleFunction") -> None:
        if self.grid != other.grid:
            raise ValueError("grid mismatch between circle functions")

    def __add__(self, other):
        if isinstance(other, CircleFunction):
            self._check_grid(other)
            return CircleFunction(self.grid, self._samples + other._samples)
        return CircleFunction(self.grid, self._samples + complex(other))

    def __sub__(self, other):
        if isinstance(other, CircleFunction):
            self._check_grid(other)
            return CircleFunction(self.grid, self._samples - other._samples)
        return CircleFunction(self.grid, self._samples - complex(other))

    def __mul__(self, other):
        if isinstance(other, CircleFunction):
            self._check_grid(other)
            return CircleFunction(self.grid, self._samples * other._samples)
        return CircleFunction(self.grid, self._samples * complex(other))

    __rmul__ = __mul__

    def __neg__(self):
        return CircleFunction(self.grid, -self._samples)

    def __repr__(self):
        return f"CircleFunction(N={self.grid.size})"


def sample_function(fn, grid: CircleGrid) -> CircleFunction:
    """Sample a callable z -> complex at the grid nodes."""
    return CircleFunction(grid, np.asarray([fn(z) for z in grid.nodes]))


def _normalize_window(window, grid: CircleGrid) -> tuple[int, int]:
    if isinstance(window, range):
        if len(window) == 0:
            raise ValueError("empty coefficient window")
        lo, hi = window.start, window.stop - 1
    else:
        lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise ValueError(f"bad window [{lo}, {hi}]")
    half = grid.half
    if lo < -half or hi >= half:
        raise ValueError(
            f"window [{lo}, {hi}] exceeds the grid's index range [{-half}, {half})"
        )
    return lo, hi


def analyze(f: CircleFunction, window) -> dict[int, complex]:
    """Quadrature Fourier coefficients of f for every index in the window.

    The window is an inclusive pair (lo, hi) or a range, and must lie inside
    [-N/2, N/2).  The result is exact (to roundoff) whenever f is a sampled
    Laurent polynomial of degree below N/2.
    """
    lo, hi = _normalize_window(window, f.grid)
    half = f.grid.half
    spec = f.spectrum
    return {j: complex(spec[j + half]) for j in range(lo, hi + 1)}


def synthesize(coeffs: Mapping[int, complex], grid: CircleGrid) -> CircleFunction:
    """Evaluate sum c_j z^j at the grid nodes.

    Every index must lie inside [-N/2, N/2); anything else would alias and is
    rejected.
    """
    half = grid.half
    centered = np.zeros(grid.size, dtype=complex)
    for j, c in coeffs.items():
        j = int(j)
        if not -half <= j < half:
            raise ValueError(f"index {j} outside the window [{-half}, {half})")
        centered[j + half] += complex(c)
    samples = np.fft.ifft(np.fft.ifftshift(centered)) * grid.size
    return CircleFunction(grid, samples, spectrum=centered)


def cesaro_mean(f: CircleFunction, n: int) -> CircleFunction:
    """Average of the partial sums S_0..S_n, i.e. the triangularly weighted
    series sum_{|j|<=n} (1 - |j|/(n+1)) c_j z^j."""
    n = int(n)
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n >= f.grid.half:
        raise ValueError(f"order {n} exceeds the grid's index range")
    j = f.grid.index_range()
    weights = np.where(np.abs(j) <= n, 1.0 - np.abs(j) / (n + 1.0), 0.0)
    centered = f.spectrum * weights
    samples = np.fft.ifft(np.fft.ifftshift(centered)) * f.grid.size
    return CircleFunction(f.grid, samples, spectrum=centered)


def rotate(f: CircleFunction, w: complex) -> CircleFunction:
    """The rotated function z -> f(conj(w) z) for unimodular w.

    Grid rotations (w a grid node) permute the samples and are exact; any
    other unimodular w goes through the spectral multiplier conj(w)^j.
    """
    w = complex(w)
    if abs(abs(w) - 1.0) > 1e-12:
        raise ValueError(f"rotation must be unimodular, got |w| = {abs(w)}")
    N = f.grid.size
    k = int(round(np.angle(w) * N / (2 * np.pi))) % N
    if abs(w - f.grid.nodes[k]) <= 1e-12:
        return CircleFunction(f.grid, np.roll(f.samples, k))
    j = f.grid.index_range()
    centered = f.spectrum * np.conj(w) ** j
    samples = np.fft.ifft(np.fft.ifftshift(centered)) * N
    return CircleFunction(f.grid, samples, spectrum=centered)


def inner_product(f: CircleFunction, g: CircleFunction) -> complex:
    """Quadrature of the L2 pairing: mean of f * conj(g) over the nodes."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch between circle functions")
    return complex(np.mean(f.samples * np.conj(g.samples)))


def negative_tail(f) -> float:
    """Largest coefficient modulus at strictly negative indices."""
    if isinstance(f, LaurentPoly):
        vals = [abs(c) for j, c in f.coeffs.items() if j < 0]
        return max(vals) if vals else 0.0
    spec = f.spectrum
    return float(np.max(np.abs(spec[: f.grid.half])))


def coefficient_peak(f) -> float:
    """Largest coefficient modulus over the whole window."""
    if isinstance(f, LaurentPoly):
        vals = [abs(c) for c in f.coeffs.values()]
        return max(vals) if vals else 0.0
    return float(np.max(np.abs(f.spectrum)))


def is_analytic(f, tol: float) -> bool:
    """True when every negative-index coefficient is below tol, relative to
    1 + the peak coefficient size."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return negative_tail(f) <= tol * (1.0 + coefficient_peak(f))


class LaurentPoly:
    """A finite Laurent series as an index -> coefficient map.

    Canonical form never stores an exact zero; floating coefficients are kept
    as-is so the backend stays an exact oracle for trigonometric-polynomial
    identities.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, complex] | None = None):
        data = {}
        if coeffs:
            for j, c in coeffs.items():
                c = complex(c)
                if c != 0:
                    data[int(j)] = c
        self.coeffs = data

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1.0})

    @classmethod
    def monomial(cls, j: int, c: complex = 1.0) -> "LaurentPoly":
        return cls({j: c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    @property
    def min_index(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def max_index(self):
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, j: int) -> complex:
        return self.coeffs.get(int(j), 0.0 + 0.0j)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, 0.0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({j: -c for j, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict[int, complex] = {}
            for ja, ca in self.coeffs.items():
                for jb, cb in other.coeffs.items():
                    out[ja + jb] = out.get(ja + jb, 0.0) + ca * cb
            return LaurentPoly(out)
        return LaurentPoly({j: c * complex(other) for j, c in self.coeffs.items()})

    __rmul__ = __mul__

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiplication by the monomial z^k."""
        return LaurentPoly({j + k: c for j, c in self.coeffs.items()})

    def conj(self) -> "LaurentPoly":
        """Complex conjugate as a boundary function: index negation plus
        coefficient conjugation (conj(z^j) = z^-j on |z| = 1)."""
        return LaurentPoly({-j: np.conj(c) for j, c in self.coeffs.items()})

    def inner(self, other: "LaurentPoly") -> complex:
        """Exact L2 pairing sum_j a_j conj(b_j)."""
        if len(self.coeffs) > len(other.coeffs):
            return complex(np.conj(other.inner(self)))
        return complex(
            sum(c * np.conj(other.coeffs.get(j, 0.0)) for j, c in self.coeffs.items())
        )

    def norm2(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values())))

    def sample(self, grid: CircleGrid) -> CircleFunction:
        """Exact node values; indices may exceed the window because evaluation
        at the nodes only sees the index mod N."""
        N = grid.size
        folded = np.zeros(N, dtype=complex)
        for j, c in self.coeffs.items():
            folded[j % N] += c
        samples = np.fft.ifft(folded) * N
        return CircleFunction(grid, samples)

    def to_vector(self, window) -> np.ndarray:
        lo, hi = int(window[0]), int(window[1])
        if self.coeffs and (self.min_index < lo or self.max_index > hi):
            raise ValueError(
                f"support {self.support()} leaves the window [{lo}, {hi}]"
            )
        vec = np.zeros(hi - lo + 1, dtype=complex)
        for j, c in self.coeffs.items():
            vec[j - lo] = c
        return vec

    @classmethod
    def from_vector(cls, vec, window) -> "LaurentPoly":
        lo = int(window[0])
        return cls({lo + i: c for i, c in enumerate(np.asarray(vec))})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((j, c) for j, c in self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        terms = ", ".join(f"{j}: {c:.4g}" for j, c in sorted(self.coeffs.items()))
        return f"LaurentPoly({{{terms}}})"


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_conj(a: LaurentPoly) -> LaurentPoly:
    return a.conj()


def laurent_inner(a: LaurentPoly, b: LaurentPoly) -> complex:
    return a.inner(b)


def poly_from_grid(f: CircleFunction, window, drop_below: float = 0.0) -> LaurentPoly:
    """Collect analyzed coefficients of f inside the window into a Laurent poly."""
    coeffs = analyze(f, window)
    if drop_below > 0.0:
        coeffs = {j: c for j, c in coeffs.items() if abs(c) > drop_below}
    return LaurentPoly(coeffs)


def parse_function_literal(obj, default_grid_size: int = DEFAULT_GRID_SIZE):
    """Decode the JSON function literal.

    Band-limited form {"grid": N, "coeffs": [[j, re, im], ...]} returns a
    (CircleFunction, LaurentPoly) pair; sampled form
    {"grid": N, "samples": [[re, im], ...]} returns (CircleFunction, None).
    "grid" may be omitted, in which case default_grid_size is used.
    """
    if not isinstance(obj, Mapping):
        raise ValueError("function literal must be a JSON object")
    if ("coeffs" in obj) == ("samples" in obj):
        raise ValueError("function literal needs exactly one of 'coeffs' or 'samples'")
    grid = CircleGrid(int(obj.get("grid", default_grid_size)))
    if "coeffs" in obj:
        entries = {}
        for triple in obj["coeffs"]:
            j, re, im = triple
            entries[int(j)] = complex(float(re), float(im))
        poly = LaurentPoly(entries)
        return synthesize(entries, grid), poly
    raw = obj["samples"]
    if len(raw) != grid.size:
        raise ValueError(f"expected {grid.size} samples, got {len(raw)}")
    samples = np.asarray([complex(float(re), float(im)) for re, im in raw])
    return CircleFunction(grid, samples), None


def function_literal(f) -> dict:
    """Encode a circle function or Laurent poly as its JSON literal."""
    if isinstance(f, LaurentPoly):
        return {
            "coeffs": [
                [j, float(np.real(c)), float(np.imag(c))]
                for j, c in sorted(f.coeffs.items())
            ]
        }
    return {
        "grid": f.grid.size,
        "samples": [[float(s.real), float(s.imag)] for s in f.samples],
    }
