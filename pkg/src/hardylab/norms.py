"""Rotationally symmetric norm functionals on circle functions.

Three families are provided: the p-norms (p >= 1), the essential sup norm,
and Luxemburg-style gauge norms built from a convex increasing function psi.
The sup norm fails the continuity requirement (indicators of shrinking arcs
keep norm 1), so it is flagged non-continuous and probes that rely on
continuity report that refusal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .circle import CircleFunction, rotate

# sampled arguments used to vet a gauge function; 0 must be included
_PSI_SAMPLES = np.concatenate(([0.0], np.geomspace(1e-4, 8.0, 41)))


@dataclass(frozen=True)
class OrliczFunction:
    """A convex increasing gauge psi with psi(0) = 0, vetted on sample points.

    ``superlinear`` records whether psi(x)/x grows over the sampled dyadic
    arguments; it is advisory only, since the power gauge with exponent 1 is a
    legitimate functional (it reproduces the 1-norm) yet is not superlinear.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    descriptor: str
    psi_at_1: float = field(default=0.0)
    overflow_arg: float = 700.0
    superlinear: bool = True

    def __post_init__(self):
        if self.psi_at_1 == 0.0:
            object.__setattr__(self, "psi_at_1", float(self.fn(np.asarray(1.0))))
        if not self.psi_at_1 > 0:
            raise ValueError("psi(1) must be positive")

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def validate(self) -> list[str]:
        """Sampled checks of the gauge axioms; returns a list of violations."""
        problems = []
        vals = self(_PSI_SAMPLES)
        if abs(vals[0]) > 0.0:
            problems.append(f"psi(0) = {vals[0]} != 0")
        if np.any(np.diff(vals) <= 0):
            problems.append("psi is not strictly increasing on sampled points")
        a, m, b = _PSI_SAMPLES[:-2], _PSI_SAMPLES[1:-1], _PSI_SAMPLES[2:]
        # convexity on sampled triples, with the midpoint evaluated exactly
        lam = (b - m) / (b - a)
        chord = lam * self(a) + (1 - lam) * self(b)
        if np.any(self(m) > chord + 1e-12 * (1.0 + np.abs(chord))):
            problems.append("psi fails convexity on sampled triples")
        return problems

    def bracket_constant(self) -> float:
        """psi-dependent constant C >= 2 with psi(C) > psi(1), used to seed the
        lower bisection bracket at ||f||_1 / C."""
        top = float(self(_PSI_SAMPLES[-1]))
        return max(2.0, top / self.psi_at_1)

    @classmethod
    def power(cls, p: float) -> "OrliczFunction":
        p = float(p)
        if p < 1:
            raise ValueError(f"power gauge needs p >= 1, got {p}")
        return cls(
            fn=lambda x: np.power(x, p),
            descriptor=f"power({p:g})",
            overflow_arg=10.0 ** (300.0 / p),
            superlinear=p > 1,
        )

    @classmethod
    def exp_minus_one(cls) -> "OrliczFunction":
        return cls(fn=np.expm1, descriptor="expMinusOne", overflow_arg=700.0)


def p_norm(f: CircleFunction, p: float) -> float:
    """(mean |f|^p)^(1/p) over the grid nodes."""
    p = float(p)
    if p < 1:
        raise ValueError(f"p-norm needs p >= 1, got {p}")
    a = np.abs(f.samples)
    if p == 1.0:
        return float(np.mean(a))
    if p == 2.0:
        return float(np.sqrt(np.mean(a * a)))
    return float(np.mean(a**p) ** (1.0 / p))


def sup_norm(f: CircleFunction) -> float:
    return float(np.max(np.abs(f.samples)))


def _gauge_mean(a: np.ndarray, lam: float, psi: OrliczFunction) -> float:
    # arguments past the overflow threshold certify the mean exceeds 1
    if np.max(a) / lam > psi.overflow_arg:
        return math.inf
    return float(np.mean(psi(a / lam))) / psi.psi_at_1


def orlicz_norm(
    f: CircleFunction,
    psi: OrliczFunction,
    tol: float = 1e-10,
    max_iter: int = 200,
    info: dict | None = None,
) -> float:
    """Luxemburg gauge: the least lambda with mean psi(|f|/lambda) <= psi(1).

    The map lambda -> mean psi(|f|/lambda) is nonincreasing, so the infimum is
    found by bracketed bisection.  The bracket [||f||_1/C, ||f||_inf] provably
    contains the answer (Jensen gives mean psi(C|f|/||f||_1) >= psi(C) > psi(1))
    and is asserted before iterating.  Returns 0 for the zero function.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    problems = psi.validate()
    if problems:
        raise ValueError("invalid gauge function: " + "; ".join(problems))
    a = np.abs(f.samples)
    hi = float(np.max(a))
    if hi == 0.0:
        if info is not None:
            info.update({"lo": 0.0, "hi": 0.0, "iterations": 0, "bracket_constant": None})
        return 0.0
    big_c = psi.bracket_constant()
    lo = max(tol, float(np.mean(a)) / big_c)
    # roundoff guard: the sup is admissible in exact arithmetic
    expansions = 0
    while _gauge_mean(a, hi, psi) > 1.0 and expansions < 8:
        hi *= 2.0
        expansions += 1
    if lo >= hi:
        lo = hi / 2.0
    if not _gauge_mean(a, lo, psi) > 1.0:
        raise AssertionError(
            f"bisection bracket [{lo}, {hi}] lost the gauge norm (C = {big_c})"
        )
    iterations = 0
    for _ in range(max_iter):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if _gauge_mean(a, mid, psi) <= 1.0:
            hi = mid
        else:
            lo = mid
        iterations += 1
    if info is not None:
        info.update(
            {
                "lo": lo,
                "hi": hi,
                "iterations": iterations,
                "bracket_constant": big_c,
            }
        )
    return hi


class NormFunctional:
    """A callable norm evaluator tagged with its kind and continuity flag."""

    def __init__(self, kind, evaluate, continuous, label, descriptor):
        self.kind = kind
        self._evaluate = evaluate
        self.continuous = continuous
        self.label = label
        self.descriptor = descriptor

    def __call__(self, f: CircleFunction) -> float:
        return self._evaluate(f)

    def __repr__(self):
        return f"NormFunctional({self.label})"


def p_functional(p: float) -> NormFunctional:
    p = float(p)
    if p < 1:
        raise ValueError(f"p-norm needs p >= 1, got {p}")
    return NormFunctional(
        kind="p",
        evaluate=lambda f: p_norm(f, p),
        continuous=True,
        label=f"p-norm({p:g})",
        descriptor={"kind": "p", "p": p},
    )


def sup_functional() -> NormFunctional:
    return NormFunctional(
        kind="sup",
        evaluate=sup_norm,
        continuous=False,
        label="sup-norm",
        descriptor={"kind": "sup"},
    )


def orlicz_functional(psi: OrliczFunction, tol: float = 1e-10) -> NormFunctional:
    if psi.descriptor == "expMinusOne":
        descriptor = {"kind": "orlicz", "psi": "expMinusOne"}
    elif psi.descriptor.startswith("power("):
        descriptor = {
            "kind": "orlicz",
            "psi": "power",
            "p": float(psi.descriptor[6:-1]),
        }
    else:
        descriptor = {"kind": "orlicz", "psi": psi.descriptor}
    return NormFunctional(
        kind="orlicz",
        evaluate=lambda f: orlicz_norm(f, psi, tol=tol),
        continuous=True,
        label=f"orlicz({psi.descriptor})",
        descriptor=descriptor,
    )


def functional_from_descriptor(desc: dict) -> NormFunctional:
    """Build a functional from the JSON descriptor format."""
    kind = desc.get("kind")
    if kind == "p":
        return p_functional(float(desc["p"]))
    if kind == "sup":
        return sup_functional()
    if kind == "orlicz":
        psi_name = desc.get("psi")
        if psi_name == "power":
            return orlicz_functional(OrliczFunction.power(float(desc["p"])))
        if psi_name == "expMinusOne":
            return orlicz_functional(OrliczFunction.exp_minus_one())
        raise ValueError(f"unknown gauge descriptor {psi_name!r}")
    raise ValueError(f"unknown norm descriptor kind {kind!r}")


def _check(name: str, passed: bool, values: dict, tolerance: float) -> dict:
    return {
        "check": name,
        "pass": bool(passed),
        "values": values,
        "tolerance": tolerance,
    }


def verify_axioms(
    alpha: NormFunctional,
    fixtures: list[CircleFunction],
    rotations: list[complex],
    tol: float = 1e-9,
) -> dict:
    """Check the defining identities of a rotationally symmetric norm on a
    fixture set: unit normalization, modulus invariance, rotation invariance,
    and the triangle inequality on sampled pairs.

    Failures land in the report; nothing raises.
    """
    if not fixtures:
        raise ValueError("need at least one fixture")
    grid = fixtures[0].grid
    checks = []
    one = CircleFunction(grid, np.ones(grid.size))
    a_one = alpha(one)
    checks.append(
        _check("unit-normalization", abs(a_one - 1.0) <= tol, {"alpha(1)": a_one}, tol)
    )
    for idx, f in enumerate(fixtures):
        af = alpha(f)
        scale = 1.0 + af
        amod = alpha(f.modulus())
        checks.append(
            _check(
                f"modulus-invariance[{idx}]",
                abs(amod - af) <= tol * scale,
                {"alpha(f)": af, "alpha(|f|)": amod},
                tol,
            )
        )
        for w in rotations:
            aw = alpha(rotate(f, w))
            checks.append(
                _check(
                    f"rotation-invariance[{idx}, w={w:.6g}]",
                    abs(aw - af) <= tol * scale,
                    {"alpha(f)": af, "alpha(f_w)": aw},
                    tol,
                )
            )
    for i in range(len(fixtures)):
        for j in range(i + 1, len(fixtures)):
            af, ag = alpha(fixtures[i]), alpha(fixtures[j])
            asum = alpha(fixtures[i] + fixtures[j])
            checks.append(
                _check(
                    f"triangle[{i},{j}]",
                    asum <= af + ag + tol * (1.0 + af + ag),
                    {"alpha(f+g)": asum, "alpha(f)+alpha(g)": af + ag},
                    tol,
                )
            )
    return {
        "check": "norm-axioms",
        "label": alpha.label,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }


def arc_indicator(grid, fraction: float) -> CircleFunction:
    """0/1 indicator of an arc starting at angle 0 covering the given fraction
    of the circle, sampled on the grid."""
    count = int(round(fraction * grid.size))
    samples = np.zeros(grid.size)
    samples[:count] = 1.0
    return CircleFunction(grid, samples)


def continuity_probe(alpha: NormFunctional, grid, arc_fractions) -> dict:
    """Evaluate alpha on indicators of shrinking arcs and report whether the
    values decay.  Functionals flagged non-continuous are refused: the values
    are still reported, but the probe fails with an explanatory note."""
    fractions = [float(h) for h in arc_fractions]
    if any(b >= a for a, b in zip(fractions, fractions[1:])):
        raise ValueError("arc fractions must be strictly decreasing")
    if fractions and fractions[-1] < 1.0 / grid.size:
        raise ValueError("smallest arc falls below the grid resolution")
    values = [alpha(arc_indicator(grid, h)) for h in fractions]
    full = alpha(arc_indicator(grid, 1.0))
    strictly_decreasing = all(b < a for a, b in zip(values, values[1:]))
    decay = values[-1] / full if values and full > 0 else 0.0
    note = ""
    passed = strictly_decreasing
    if not alpha.continuous:
        passed = False
        note = f"{alpha.label} is flagged non-continuous; continuity probes refuse it"
    elif not strictly_decreasing:
        note = "arc norms did not strictly decrease"
    return {
        "check": "continuity",
        "label": alpha.label,
        "pass": passed,
        "values": {
            "fractions": fractions,
            "norms": values,
            "norm_at_full": full,
            "decay_factor": decay,
        },
        "note": note,
    }


def dominance_check(alpha: NormFunctional, f: CircleFunction, tol: float = 1e-9) -> dict:
    """Report whether ||f||_1 <= alpha(f) <= ||f||_inf within tolerance."""
    lower = p_norm(f, 1.0)
    upper = sup_norm(f)
    val = alpha(f)
    return _check(
        "dominance",
        lower - tol <= val <= upper + tol,
        {"l1": lower, "alpha": val, "sup": upper},
        tol,
    )


def module_inequality_check(
    alpha: NormFunctional, f: CircleFunction, g: CircleFunction, tol: float = 1e-9
) -> dict:
    """Report whether alpha(f g) <= ||f||_inf alpha(g) within tolerance."""
    lhs = alpha(f * g)
    rhs = sup_norm(f) * alpha(g)
    return _check(
        "bounded-multiplier", lhs <= rhs + tol, {"alpha(fg)": lhs, "sup(f)*alpha(g)": rhs}, tol
    )
