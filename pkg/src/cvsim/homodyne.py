"""Simulated balanced-homodyne-detection data for nonclassical state families.

Everything here uses the dimensionless quadrature convention in which the
vacuum variance is 1 and Var[X_phi] Var[X_{phi+pi/2}] >= 1.  For each source
model the characteristic function chi(beta), the quadrature density p(x, phi)
and its antiderivative F(x, phi) are closed forms; sampling draws uniform
phases on [-pi, pi) and uniform targets on (0, 1) and inverts F by bisection.

The squeezed-vacuum family is squeezed along x at phi = 0:
Var[X_phi] = e^{-2r} cos^2(phi) + e^{2r} sin^2(phi).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

import csv
import numpy as np
from scipy.integrate import quad
from scipy.special import erf, eval_laguerre

from .errors import InversionError, MalformedInputError

#: default bisection tolerance and half-width of the initial search bracket
DEFAULT_TOL = 1e-12
DEFAULT_BRACKET = 50.0
#: Fock photon-number cap for the Hermite-series closed forms
MAX_FOCK_N = 10


# ---------------------------------------------------------------------------
# source models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fock:
    """Photon-number state |n>, 0 <= n <= 10."""

    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_FOCK_N:
            raise ValueError(f"Fock n must be in 0..{MAX_FOCK_N}, got {self.n}")


@dataclass(frozen=True)
class Spats:
    """Single-photon-added thermal state with mean thermal photon number n_bar."""

    n_bar: float

    def __post_init__(self) -> None:
        if self.n_bar <= 0:
            raise ValueError("SPATS n_bar must be > 0")


@dataclass(frozen=True)
class SqueezedVacuum:
    """Squeezed vacuum with real squeezing parameter r (x squeezed for r > 0)."""

    r: float


@dataclass(frozen=True)
class CatState:
    """Normalized superposition (|alpha> + e^{i theta} |-alpha>) / sqrt(N)."""

    alpha: complex
    theta: float

    def __post_init__(self) -> None:
        if self.normalization() <= 0:
            raise ValueError("cat state normalization must be positive")

    def normalization(self) -> float:
        return 2.0 + 2.0 * np.cos(self.theta) * np.exp(-2.0 * abs(self.alpha) ** 2)


@dataclass(frozen=True)
class Thermal:
    """Thermal state with mean photon number n_bar."""

    n_bar: float

    def __post_init__(self) -> None:
        if self.n_bar < 0:
            raise ValueError("thermal n_bar must be >= 0")


@dataclass(frozen=True)
class Vacuum:
    """The vacuum state."""


SourceModel = Union[Fock, Spats, SqueezedVacuum, CatState, Thermal, Vacuum]


# ---------------------------------------------------------------------------
# characteristic functions
# ---------------------------------------------------------------------------


def characteristic_fn(model: SourceModel, beta: complex) -> complex:
    """Closed-form characteristic function chi(beta); chi(0) = 1 for all models."""
    ab2 = abs(beta) ** 2
    if isinstance(model, Vacuum):
        return complex(np.exp(-ab2 / 2.0))
    if isinstance(model, Fock):
        return complex(np.exp(-ab2 / 2.0) * eval_laguerre(model.n, ab2))
    if isinstance(model, Spats):
        return complex(
            np.exp(-ab2 / 2.0) * (1.0 - (1.0 + model.n_bar) * ab2) * np.exp(-model.n_bar * ab2)
        )
    if isinstance(model, SqueezedVacuum):
        r = model.r
        bc = np.conj(beta)
        return complex(
            np.exp(
                -((beta + bc) ** 2) * np.exp(2.0 * r) / 8.0
                + (beta - bc) ** 2 * np.exp(-2.0 * r) / 8.0
            )
        )
    if isinstance(model, CatState):
        a = model.alpha
        ac = np.conj(a)
        bc = np.conj(beta)
        damp = np.exp(-2.0 * abs(a) ** 2)
        terms = (
            np.exp(beta * ac - bc * a)
            + np.exp(1j * model.theta) * np.exp(beta * ac + bc * a) * damp
            + np.exp(-1j * model.theta) * np.exp(-beta * ac - bc * a) * damp
            + np.exp(-beta * ac + bc * a)
        )
        return complex(np.exp(-ab2 / 2.0) * terms / model.normalization())
    if isinstance(model, Thermal):
        return complex(np.exp(-(model.n_bar + 0.5) * ab2))
    raise TypeError(f"unknown source model {model!r}")


# ---------------------------------------------------------------------------
# probability densities and cumulative distributions
# ---------------------------------------------------------------------------


def _hermite_all(max_order: int, u: np.ndarray) -> list[np.ndarray]:
    """Physicists' Hermite polynomials H_0..H_max_order at u, by the
    three-term recurrence H_{k+1} = 2u H_k - 2k H_{k-1}."""
    values = [np.ones_like(u), 2.0 * u]
    for k in range(1, max_order):
        values.append(2.0 * u * values[k] - 2.0 * k * values[k - 1])
    return values[: max_order + 1]


def _fock_coeffs(n: int) -> list[float]:
    """c_k = n! / (2^k (k!)^2 (n-k)!) for k = 0..n."""
    from math import factorial

    return [
        factorial(n) / (2.0**k * factorial(k) ** 2 * factorial(n - k))
        for k in range(n + 1)
    ]


def _sv_variance(r: float, phi: np.ndarray) -> np.ndarray:
    return np.exp(-2.0 * r) * np.cos(phi) ** 2 + np.exp(2.0 * r) * np.sin(phi) ** 2


def quadrature_pdf(model: SourceModel, x, phi):
    """Closed-form quadrature density p(x, phi); phase-independent for the
    Fock, SPATS, thermal and vacuum models.  Accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if isinstance(model, Vacuum):
        out = np.exp(-(x**2) / 2.0) / np.sqrt(2.0 * np.pi)
    elif isinstance(model, Fock):
        u = x / np.sqrt(2.0)
        herm = _hermite_all(max(2 * model.n, 1), u)
        series = sum(c * herm[2 * k] for k, c in enumerate(_fock_coeffs(model.n)))
        out = series * np.exp(-(x**2) / 2.0) / np.sqrt(2.0 * np.pi)
    elif isinstance(model, Spats):
        nb = model.n_bar
        s = 4.0 * nb + 2.0
        bracket = 1.0 - (1.0 + nb) / (1.0 + 2.0 * nb) * (1.0 - x**2 / (1.0 + 2.0 * nb))
        out = np.exp(-(x**2) / s) / np.sqrt(np.pi * s) * bracket
    elif isinstance(model, SqueezedVacuum):
        v = _sv_variance(model.r, phi)
        out = np.exp(-(x**2) / (2.0 * v)) / np.sqrt(2.0 * np.pi * v)
    elif isinstance(model, CatState):
        g = model.alpha * np.exp(1j * phi)
        a = 2.0 * np.real(g)
        b = 2.0 * np.imag(g)
        damp = np.exp(-2.0 * abs(model.alpha) ** 2)
        cross = (
            np.exp(1j * model.theta) * damp * np.exp(-((x + 1j * b) ** 2) / 2.0)
        ).real * 2.0
        total = np.exp(-((x - a) ** 2) / 2.0) + np.exp(-((x + a) ** 2) / 2.0) + cross
        out = total / (model.normalization() * np.sqrt(2.0 * np.pi))
    elif isinstance(model, Thermal):
        s = 4.0 * model.n_bar + 2.0
        out = np.exp(-(x**2) / s) / np.sqrt(np.pi * s)
    else:
        raise TypeError(f"unknown source model {model!r}")
    out = np.maximum(out, 0.0)  # clip -eps rounding at density zeros
    return float(out) if out.ndim == 0 else out


def quadrature_cdf(model: SourceModel, x, phi):
    """Closed-form cumulative distribution F(x, phi); monotone in x with
    limits 0 and 1.  Accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if isinstance(model, Vacuum):
        out = 0.5 + 0.5 * erf(x / np.sqrt(2.0))
    elif isinstance(model, Fock):
        u = x / np.sqrt(2.0)
        coeffs = _fock_coeffs(model.n)
        herm = _hermite_all(max(2 * model.n, 1), u)
        series = sum(coeffs[k] * herm[2 * k - 1] for k in range(1, model.n + 1))
        out = (
            0.5
            + 0.5 * erf(u)
            - np.exp(-(x**2) / 2.0) / np.sqrt(np.pi) * series
        )
    elif isinstance(model, Spats):
        nb = model.n_bar
        s = 4.0 * nb + 2.0
        out = (
            0.5
            + 0.5 * erf(x / np.sqrt(s))
            - x / np.sqrt(np.pi * s) * (1.0 + nb) / (1.0 + 2.0 * nb) * np.exp(-(x**2) / s)
        )
    elif isinstance(model, SqueezedVacuum):
        v = _sv_variance(model.r, phi)
        out = 0.5 + 0.5 * erf(x / np.sqrt(2.0 * v))
    elif isinstance(model, CatState):
        g = model.alpha * np.exp(1j * phi)
        a = 2.0 * np.real(g)
        b = 2.0 * np.imag(g)
        damp = np.exp(-2.0 * abs(model.alpha) ** 2)
        c1 = np.exp(1j * model.theta) * damp
        c2 = np.exp(-1j * model.theta) * damp
        sqrt2 = np.sqrt(2.0)
        # Sum of the per-term antiderivatives (1 + erf)/2; the two
        # complex-argument terms are conjugates, so the imaginary part cancels.
        total = (
            (1.0 + erf((x - a) / sqrt2))
            + (1.0 + erf((x + a) / sqrt2))
            + c1 * (1.0 + erf((x + 1j * b) / sqrt2))
            + c2 * (1.0 + erf((x - 1j * b) / sqrt2))
        )
        residue = float(np.max(np.abs(np.imag(total))))
        if residue > 1e-10:
            raise MalformedInputError(f"cat CDF imaginary residue {residue:.3e}")
        out = np.real(total) / (2.0 * model.normalization())
    elif isinstance(model, Thermal):
        out = 0.5 + 0.5 * erf(x / np.sqrt(4.0 * model.n_bar + 2.0))
    else:
        raise TypeError(f"unknown source model {model!r}")
    return float(out) if np.ndim(out) == 0 else out


def pdf_numeric_oracle(model: SourceModel, x: float, phi: float) -> float:
    """Quadrature density from the characteristic function,

        p(x, phi) = (1/2pi) Integral chi(i y e^{-i phi}) e^{-i y x} dy,

    by adaptive quadrature over [-Y, Y] with Y chosen so |chi| < 1e-14 at the
    cutoff.  Validation-only: independent of the closed forms above.
    """
    cutoff = None
    for candidate in (8.0, 16.0, 32.0, 64.0, 128.0, 256.0):
        ys = np.linspace(0.75 * candidate, candidate, 32)
        tail = max(
            abs(characteristic_fn(model, 1j * y * np.exp(-1j * phi))) for y in ys
        )
        if tail < 1e-14:
            cutoff = candidate
            break
    if cutoff is None:
        raise InversionError("characteristic function does not decay below 1e-14")

    def integrand(y: float) -> float:
        return (
            characteristic_fn(model, 1j * y * np.exp(-1j * phi)) * np.exp(-1j * y * x)
        ).real

    value, abserr = quad(integrand, -cutoff, cutoff, limit=800, epsabs=1e-12, epsrel=1e-12)
    if abserr > 1e-9:
        raise InversionError(f"oracle quadrature did not converge (err {abserr:.3e})")
    return value / (2.0 * np.pi)


# ---------------------------------------------------------------------------
# inverse-CDF sampling
# ---------------------------------------------------------------------------


def _bisect_cdf(
    model: SourceModel,
    phis: np.ndarray,
    targets: np.ndarray,
    tol: float,
    bracket: float,
) -> np.ndarray:
    """Vectorized bisection solving F(x, phi) = u for every (phi, u) pair."""
    lo = np.full_like(targets, -bracket)
    hi = np.full_like(targets, bracket)
    for _ in range(4):
        bad = (quadrature_cdf(model, lo, phis) >= targets) | (
            quadrature_cdf(model, hi, phis) <= targets
        )
        if not np.any(bad):
            break
        lo[bad] *= 2.0
        hi[bad] *= 2.0
    else:
        bad = (quadrature_cdf(model, lo, phis) >= targets) | (
            quadrature_cdf(model, hi, phis) <= targets
        )
        if np.any(bad):
            idx = int(np.argmax(bad))
            raise InversionError(
                f"could not bracket the quantile for record {idx} "
                f"(u={targets[idx]!r}, phi={phis[idx]!r}) after 4 widenings"
            )
    # fixed iteration budget; also terminates for tolerances below the
    # floating-point resolution of the bracket
    max_iter = int(np.ceil(np.log2(max(float((hi - lo).max()) / max(tol, 1e-300), 2.0)))) + 2
    for _ in range(min(max_iter, 1100)):
        if not np.any(hi - lo > tol):
            break
        mid = 0.5 * (lo + hi)
        below = quadrature_cdf(model, mid, phis) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def invert_cdf(
    model: SourceModel,
    phi: float,
    u: float,
    tol: float = DEFAULT_TOL,
    bracket: float = DEFAULT_BRACKET,
) -> float:
    """Quantile x with F(x, phi) = u, found by bisection to absolute
    tolerance tol.  The bracket is doubled up to 4 times if needed."""
    if not 0.0 < u < 1.0:
        raise ValueError(f"u must lie strictly inside (0, 1), got {u}")
    out = _bisect_cdf(
        model, np.array([float(phi)]), np.array([float(u)]), tol, float(bracket)
    )
    return float(out[0])


@dataclass(frozen=True)
class QuadratureRecord:
    """One simulated homodyne outcome."""

    phase: float
    value: float


@dataclass(frozen=True)
class SampleSet:
    """Reproducible batch of homodyne records for one source model."""

    phases: np.ndarray
    values: np.ndarray
    model: SourceModel | None
    seed: int

    def __post_init__(self) -> None:
        phases = np.asarray(self.phases, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if phases.shape != values.shape or phases.ndim != 1:
            raise MalformedInputError("phases and values must be 1-D arrays of equal length")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.phases.size

    def records(self) -> Iterator[QuadratureRecord]:
        for p, v in zip(self.phases, self.values):
            yield QuadratureRecord(phase=float(p), value=float(v))


def sample(
    model: SourceModel,
    count: int,
    seed: int = 42,
    tol: float = DEFAULT_TOL,
    bracket: float = DEFAULT_BRACKET,
    sort_targets: bool = False,
) -> SampleSet:
    """Draw homodyne records by inverse-CDF sampling.

    Phases are uniform on [-pi, pi) and CDF targets uniform on (0, 1), both
    from a seeded generator, so identical (model, seed, count) calls return
    identical records.  ``sort_targets`` reproduces the variant that sorts
    the targets before inversion; it is off by default because sorting
    correlates the quantile with the draw order.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    phases = 2.0 * np.pi * rng.random(count) - np.pi
    targets = np.maximum(rng.random(count), np.finfo(float).tiny)
    if sort_targets:
        targets = np.sort(targets)
    values = _bisect_cdf(model, phases, targets, tol, bracket)
    return SampleSet(phases=phases, values=values, model=model, seed=seed)


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def theoretical_variance(model: SourceModel, phi: float) -> float:
    """Analytic Var[X_phi] for each model (vacuum variance 1)."""
    if isinstance(model, Vacuum):
        return 1.0
    if isinstance(model, Fock):
        return 2.0 * model.n + 1.0
    if isinstance(model, Spats):
        return 4.0 * model.n_bar + 3.0
    if isinstance(model, SqueezedVacuum):
        r = model.r
        return float(abs(np.exp(1j * phi) * np.cosh(r) - np.exp(-1j * phi) * np.sinh(r)) ** 2)
    if isinstance(model, CatState):
        a = model.alpha
        norm = model.normalization()
        k0 = a * np.exp(1j * phi)
        k1 = 1.0 + (np.exp(-2.0 * abs(a) ** 2) * np.sin(model.theta) / norm) ** 2
        k2 = 4.0 * abs(a) ** 2 / (norm / 2.0)
        return float(np.real((2j * np.imag(k0)) ** 2 * k1 + k2 + 1.0))
    if isinstance(model, Thermal):
        return 2.0 * model.n_bar + 1.0
    raise TypeError(f"unknown source model {model!r}")


@dataclass(frozen=True)
class VarianceReport:
    """Per-phase-bin variance statistics; under-filled bins carry NaN."""

    bin_centers: np.ndarray
    counts: np.ndarray
    estimated_variance: np.ndarray
    theoretical_variance: np.ndarray
    shifted_variance: np.ndarray
    variance_product: np.ndarray
    normally_ordered_variance: np.ndarray


def binned_variance(samples: SampleSet, num_bins: int) -> VarianceReport:
    """Equal-width phase bins over [-pi, pi) with per-bin sample variance.

    The shifted column pairs bin i with bin i + num_bins//4 (cyclically), so
    their product estimates Var[X_phi] Var[X_{phi+pi/2}]; the pairing is an
    exact quarter turn when num_bins is divisible by 4.  The normally ordered
    column subtracts the vacuum variance 1.
    """
    if num_bins < 4:
        raise ValueError("num_bins must be >= 4")
    if len(samples) == 0:
        raise ValueError("sample set is empty")
    edges = np.linspace(-np.pi, np.pi, num_bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    which = np.clip(np.digitize(samples.phases, edges) - 1, 0, num_bins - 1)
    counts = np.bincount(which, minlength=num_bins)
    est = np.full(num_bins, np.nan)
    for i in range(num_bins):
        if counts[i] >= 2:
            est[i] = np.var(samples.values[which == i], ddof=1)
    if samples.model is not None:
        theory = np.array([theoretical_variance(samples.model, c) for c in centers])
    else:
        theory = np.full(num_bins, np.nan)
    shifted = np.roll(est, -(num_bins // 4))
    return VarianceReport(
        bin_centers=centers,
        counts=counts,
        estimated_variance=est,
        theoretical_variance=theory,
        shifted_variance=shifted,
        variance_product=est * shifted,
        normally_ordered_variance=est - 1.0,
    )


def variance_standard_error(report: VarianceReport) -> np.ndarray:
    """Normal-theory standard error of each bin's variance estimate,
    var * sqrt(2 / (count - 1))."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return report.estimated_variance * np.sqrt(
            2.0 / np.maximum(report.counts - 1, 1)
        )


def squeezing_certificate(report: VarianceReport, sigma_level: float = 3.0) -> np.ndarray:
    """Per-bin squeezing verdicts.

    A bin is certified when its normally ordered variance stays negative by
    at least sigma_level standard errors of the variance estimate.
    """
    se = variance_standard_error(report)
    with np.errstate(invalid="ignore"):
        certified = report.normally_ordered_variance + sigma_level * se < 0.0
    return np.where(np.isnan(report.normally_ordered_variance), False, certified)


def heisenberg_violations(report: VarianceReport, sigma_level: float = 3.0) -> np.ndarray:
    """Bins whose variance product undercuts 1 by more than sigma_level
    combined standard errors (expected empty for physical data)."""
    se = variance_standard_error(report)
    se_shift = np.roll(se, -(len(se) // 4))
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.sqrt(
            (se / report.estimated_variance) ** 2
            + (se_shift / report.shifted_variance) ** 2
        )
        se_product = np.abs(report.variance_product) * rel
        violated = report.variance_product + sigma_level * se_product < 1.0
    return np.where(np.isnan(report.variance_product), False, violated)


# ---------------------------------------------------------------------------
# CSV interfaces
# ---------------------------------------------------------------------------


def write_samples_csv(samples: SampleSet, path: str) -> None:
    """Write records as `phase,x` lines with 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["phase", "x"])
        for p, v in zip(samples.phases, samples.values):
            writer.writerow([format(p, ".17g"), format(v, ".17g")])


def read_samples_csv(path: str, model: SourceModel | None = None, seed: int = 0) -> SampleSet:
    """Parse a `phase,x` file; raises on the first malformed line."""
    phases: list[float] = []
    values: list[float] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["phase", "x"]:
            raise MalformedInputError(f"line 1: expected header phase,x, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                p, v = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                raise MalformedInputError(f"line {lineno}: cannot parse {row!r}") from None
            phases.append(p)
            values.append(v)
    if not phases:
        raise MalformedInputError("no data rows in sample file")
    return SampleSet(
        phases=np.array(phases), values=np.array(values), model=model, seed=seed
    )


VARIANCE_CSV_HEADER = [
    "phi",
    "count",
    "var_est",
    "var_theory",
    "var_shifted",
    "product",
    "normally_ordered",
]


def write_variance_csv(report: VarianceReport, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(VARIANCE_CSV_HEADER)
        for i in range(len(report.bin_centers)):
            writer.writerow(
                [
                    format(report.bin_centers[i], ".17g"),
                    int(report.counts[i]),
                    format(report.estimated_variance[i], ".17g"),
                    format(report.theoretical_variance[i], ".17g"),
                    format(report.shifted_variance[i], ".17g"),
                    format(report.variance_product[i], ".17g"),
                    format(report.normally_ordered_variance[i], ".17g"),
                ]
            )


def read_variance_csv(path: str) -> VarianceReport:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != VARIANCE_CSV_HEADER:
            raise MalformedInputError(f"unexpected header {header}")
        rows = list(reader)
    if not rows:
        raise MalformedInputError("no data rows in variance file")
    cols = np.array([[float(v) for v in row] for row in rows])
    return VarianceReport(
        bin_centers=cols[:, 0],
        counts=cols[:, 1].astype(int),
        estimated_variance=cols[:, 2],
        theoretical_variance=cols[:, 3],
        shifted_variance=cols[:, 4],
        variance_product=cols[:, 5],
        normally_ordered_variance=cols[:, 6],
    )
