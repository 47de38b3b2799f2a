"""Harmonic conjugation and outer flattening multipliers.

The conjugate of a sampled real function is computed by the spectral
multiplier -i sign(j); composing u + i*conj(u) gives a discretely analytic
function, and exp(-(u + i*conj(u))) is the outer factor with pointwise modulus
exp(-u).  Exponentials widen the spectrum beyond the band limit, so the
analytic defect of each outer factor is measured from the grid rather than
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import CircleFunction, negative_tail
from .modn import decompose_mod_n


def harmonic_conjugate(g: CircleFunction) -> CircleFunction:
    """Conjugate of a real-valued sampled function.

    Spectral rule: coefficient j maps through -i sign(j); the mean is sent to
    zero (the conjugate is only defined up to an additive constant, and the
    zero-mean representative is the standard choice).
    """
    if float(np.max(np.abs(g.samples.imag))) > 1e-10:
        raise ValueError("harmonic conjugate needs a real-valued input")
    j = g.grid.index_range()
    centered = g.spectrum * (-1j * np.sign(j))
    samples = np.fft.ifft(np.fft.ifftshift(centered)) * g.grid.size
    # Hermitian symmetry of the input makes the output real up to roundoff
    return CircleFunction(g.grid, samples.real)


@dataclass(frozen=True)
class OuterWitness:
    """An outer factor exp(-u - i*conj(u)) for u = |source|, with its measured
    analytic defect (largest negative-index coefficient of the factor)."""

    source: CircleFunction
    conjugate: CircleFunction
    outer: CircleFunction
    analytic_defect: float

    def to_json(self) -> dict:
        return {
            "analytic_defect": self.analytic_defect,
            "sup_outer": float(np.max(np.abs(self.outer.samples))),
            "min_outer": float(np.min(np.abs(self.outer.samples))),
            "sup_source_modulus": float(np.max(np.abs(self.source.samples))),
        }


def outer_exp(g: CircleFunction) -> OuterWitness:
    """Outer factor driven by the modulus of g: exp(-|g| - i*conj(|g|)).

    The factor has modulus exp(-|g|) <= 1 pointwise by construction and never
    vanishes on the grid; its analytic defect is measured and recorded.
    """
    u = np.abs(g.samples)
    u_fn = CircleFunction(g.grid, u)
    conj = harmonic_conjugate(u_fn)
    outer = CircleFunction(g.grid, np.exp(-u - 1j * conj.samples.real))
    defect = negative_tail(outer)
    return OuterWitness(source=g, conjugate=conj, outer=outer, analytic_defect=defect)


def flattening_multiplier(f: CircleFunction, n: int):
    """Bounded outer multiplier for f built from the mod-n split of |f|^(1/2).

    Writes |f|^(1/2) = g_1 + z g_2 + ... + z^(n-1) g_n, takes the outer factor
    k_j for each |g_j|, and returns their product O together with the per-factor
    witnesses.  Pointwise, |O| <= |k_j| for every j, so

        |O| |f|^(1/2) <= sum_j |k_j| |g_j| = sum_j |g_j| exp(-|g_j|) <= n,

    which keeps O |f|^(1/2) bounded by n and O^2 f bounded by n^2.
    """
    n = int(n)
    if n < 1:
        raise ValueError("need n >= 1")
    if float(np.max(np.abs(f.samples))) == 0.0:
        raise ValueError("flattening needs a function that is not identically zero")
    root = CircleFunction(f.grid, np.sqrt(np.abs(f.samples)))
    parts = decompose_mod_n(root, n)
    witnesses = [outer_exp(part) for part in parts.components]
    product = np.ones(f.grid.size, dtype=complex)
    for w in witnesses:
        product = product * w.outer.samples
    flattener = CircleFunction(f.grid, product)
    flat_root = float(np.max(np.abs(product) * np.abs(root.samples)))
    flat_f = float(np.max(np.abs(product) ** 2 * np.abs(f.samples)))
    assert flat_root <= n + 1e-6 * n, f"sup |O| |f|^(1/2) = {flat_root} > {n}"
    assert flat_f <= n * n + 1e-5, f"sup |O|^2 |f| = {flat_f} > {n * n}"
    return flattener, witnesses


def riesz_projection(f: CircleFunction):
    """Split f into its analytic part (indices >= 0) and antianalytic part
    (indices < 0); the two synthesize back to f."""
    half = f.grid.half
    spec = f.spectrum
    ana = np.zeros_like(spec)
    anti = np.zeros_like(spec)
    ana[half:] = spec[half:]
    anti[:half] = spec[:half]
    N = f.grid.size
    analytic = CircleFunction(f.grid, np.fft.ifft(np.fft.ifftshift(ana)) * N, spectrum=ana)
    antianalytic = CircleFunction(
        f.grid, np.fft.ifft(np.fft.ifftshift(anti)) * N, spectrum=anti
    )
    return analytic, antianalytic
