"""Gaussian-line spectral models: evaluation, synthesis, and ion physics.

A model spectrum is a polynomial baseline (degree <= 1) plus a sum of
Gaussian line components evaluated on a fixed wavelength grid. Fitted line
parameters map to ion properties: the line shift gives line-of-sight
velocity, the width gives temperature, and the integrated intensity gives
radiance in instrument units (counts nm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FlatSpectrumError, ModelDomainError, WidthBelowInstrumentError

SPEED_OF_LIGHT = 299_792_458.0  # m/s
FWHM_OVER_SIGMA = 2.3548  # full width at half maximum per Gaussian sigma
GAUSS_AREA = math.sqrt(2.0 * math.pi)
NOISE_MODELS = ("none", "sqrt_gaussian")


@dataclass(eq=False)
class WavelengthGrid:
    """Strictly increasing, positive wavelength axis in nm; at least 4 pixels."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=float)
        if pixels.ndim != 1 or pixels.size < 4:
            raise ValueError("grid needs at least 4 pixels")
        if not np.all(np.isfinite(pixels)) or pixels[0] <= 0.0:
            raise ValueError("grid values must be finite and positive")
        if not np.all(np.diff(pixels) > 0.0):
            raise ValueError("grid must be strictly increasing")
        self.pixels = pixels

    def __len__(self) -> int:
        return int(self.pixels.size)

    @property
    def span(self) -> float:
        return float(self.pixels[-1] - self.pixels[0])

    @property
    def median_spacing(self) -> float:
        return float(np.median(np.diff(self.pixels)))

    @classmethod
    def linspace(cls, lo: float, hi: float, n_pixels: int) -> "WavelengthGrid":
        return cls(np.linspace(lo, hi, n_pixels))


@dataclass(eq=False)
class Spectrum:
    """Measured (or synthesized) counts with per-pixel uncertainties."""

    grid: WavelengthGrid
    counts: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        n = len(self.grid)
        if counts.shape != (n,) or sigma.shape != (n,):
            raise ValueError("counts, sigma, and grid must have equal length")
        if not np.all(np.isfinite(counts)):
            raise ValueError("counts must be finite")
        if not np.all(np.isfinite(sigma)) or np.any(sigma <= 0.0):
            raise ValueError("sigma must be finite and positive")
        self.counts = counts
        self.sigma = sigma

    def __len__(self) -> int:
        return len(self.grid)


@dataclass(frozen=True)
class GaussianLine:
    """One line component: peak amplitude (counts), center and width (nm)."""

    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        values = (self.amplitude, self.center, self.width)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("line parameters must be finite")
        if self.amplitude < 0.0:
            raise ValueError("amplitude must be non-negative")
        if self.width <= 0.0:
            raise ValueError("width must be positive")


@dataclass(eq=False)
class SpectralModel:
    """Baseline polynomial coefficients (b0 [, b1]) plus Gaussian lines.

    The flat parameter vector orders baseline coefficients first, then
    (amplitude, center, width) for each line in turn.
    """

    baseline: np.ndarray
    lines: tuple[GaussianLine, ...] = ()

    def __post_init__(self):
        baseline = np.atleast_1d(np.asarray(self.baseline, dtype=float))
        if baseline.ndim != 1 or not 1 <= baseline.size <= 2:
            raise ValueError("baseline must have 1 or 2 coefficients")
        if not np.all(np.isfinite(baseline)):
            raise ValueError("baseline coefficients must be finite")
        self.baseline = baseline
        self.lines = tuple(self.lines)

    @property
    def n_parameters(self) -> int:
        return int(self.baseline.size) + 3 * len(self.lines)

    def to_vector(self) -> np.ndarray:
        vec = np.empty(self.n_parameters)
        nb = self.baseline.size
        vec[:nb] = self.baseline
        for k, line in enumerate(self.lines):
            vec[nb + 3 * k : nb + 3 * k + 3] = (line.amplitude, line.center, line.width)
        return vec

    def with_vector(self, vector) -> "SpectralModel":
        """Rebuild a model of this shape from a flat parameter vector."""
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (self.n_parameters,):
            raise ValueError("parameter vector has wrong length")
        nb = self.baseline.size
        lines = tuple(
            GaussianLine(*vector[nb + 3 * k : nb + 3 * k + 3]) for k in range(len(self.lines))
        )
        return SpectralModel(vector[:nb].copy(), lines)


@dataclass(frozen=True)
class LineReference:
    """Rest-frame line data: wavelength (nm), ion rest energy (eV), instrumental width (nm)."""

    lambda0: float
    ion_rest_energy: float
    sigma_instr: float = 0.0

    def __post_init__(self):
        if not (self.lambda0 > 0.0 and math.isfinite(self.lambda0)):
            raise ValueError("lambda0 must be positive and finite")
        if not (self.ion_rest_energy > 0.0 and math.isfinite(self.ion_rest_energy)):
            raise ValueError("ion_rest_energy must be positive and finite")
        if not (self.sigma_instr >= 0.0 and math.isfinite(self.sigma_instr)):
            raise ValueError("sigma_instr must be non-negative and finite")


@dataclass(frozen=True)
class IonProperties:
    """Line-of-sight velocity (m/s), ion temperature (eV), radiance (counts nm)."""

    velocity: float
    temperature: float
    radiance: float


def eval_model(model: SpectralModel, grid: WavelengthGrid) -> np.ndarray:
    """Evaluate a spectral model on every grid pixel.

    Parameters
    ----------
    model : SpectralModel
        Baseline coefficients plus Gaussian components.
    grid : WavelengthGrid
        Wavelength axis, nm.

    Returns
    -------
    counts : ndarray
        Baseline polynomial plus the sum of all Gaussian components, one
        value per pixel.
    """
    params = model.to_vector()
    if not np.all(np.isfinite(params)):
        raise ModelDomainError("model parameters must be finite")
    lam = grid.pixels
    out = np.asarray(np.polynomial.polynomial.polyval(lam, model.baseline), dtype=float)
    for line in model.lines:
        d = lam - line.center
        out = out + line.amplitude * np.exp(-(d * d) / (2.0 * line.width * line.width))
    return out


def synthesize(
    model: SpectralModel,
    grid: WavelengthGrid,
    noise: str = "none",
    seed: int = 0,
) -> Spectrum:
    """Build a synthetic measured spectrum from a model.

    noise="none" returns the clean model with unit uncertainties.
    noise="sqrt_gaussian" adds zero-mean Gaussian noise with per-pixel
    standard deviation sqrt(max(clean_i, 1)) drawn from a generator seeded
    with ``seed``; uncertainties are then sqrt(max(counts_i, 1)). The
    generator is local to the call, so repeated calls with identical
    arguments produce identical spectra.
    """
    if noise not in NOISE_MODELS:
        raise ValueError(f"unknown noise model {noise!r}; expected one of {NOISE_MODELS}")
    clean = eval_model(model, grid)
    if noise == "none":
        return Spectrum(grid, clean.copy(), np.ones_like(clean))
    rng = np.random.default_rng(seed)
    counts = clean + rng.standard_normal(clean.size) * np.sqrt(np.maximum(clean, 1.0))
    sigma = np.sqrt(np.maximum(counts, 1.0))
    return Spectrum(grid, counts, sigma)


def ion_properties(line: GaussianLine, ref: LineReference) -> IonProperties:
    """Convert fitted line parameters to ion properties.

    velocity = c (center - lambda0) / lambda0
    temperature = ion_rest_energy (width^2 - sigma_instr^2) / lambda0^2
    radiance = amplitude * width * sqrt(2 pi)

    Instrumental broadening is removed in quadrature. Raises
    WidthBelowInstrumentError when the fitted width does not exceed the
    instrumental width, i.e. thermal broadening is unresolvable.
    """
    if line.width <= ref.sigma_instr:
        raise WidthBelowInstrumentError(
            f"fitted width {line.width} nm does not exceed instrumental width "
            f"{ref.sigma_instr} nm"
        )
    velocity = SPEED_OF_LIGHT * (line.center - ref.lambda0) / ref.lambda0
    thermal_sq = line.width**2 - ref.sigma_instr**2
    temperature = ref.ion_rest_energy * thermal_sq / ref.lambda0**2
    radiance = line.amplitude * line.width * GAUSS_AREA
    return IonProperties(velocity=velocity, temperature=temperature, radiance=radiance)


def _half_max_crossing(lam, res, peak, half, step):
    """Wavelength where res crosses ``half`` walking from ``peak`` by ``step``."""
    j = peak
    while 0 <= j + step < res.size and res[j + step] > half:
        j += step
    if not 0 <= j + step < res.size:
        return None
    lo, hi = res[j + step], res[j]
    frac = (half - lo) / (hi - lo)
    return lam[j + step] + frac * (lam[j] - lam[j + step])


def initial_guess(spectrum: Spectrum, n_lines: int = 1) -> SpectralModel:
    """Seed a model from the data.

    The constant baseline is the median of the 10% of pixels nearest each
    grid edge. Line centers sit on the ``n_lines`` highest local maxima of
    (counts - baseline), at least 3 pixels apart. Amplitudes are the peak
    residuals clamped to >= 1 count; widths come from the half-maximum
    crossing width divided by 2.3548, clamped to >= half the median pixel
    spacing.

    Raises FlatSpectrumError when fewer than ``n_lines`` local maxima rise
    above the baseline estimate.
    """
    if n_lines < 1:
        raise ValueError("n_lines must be >= 1")
    counts = spectrum.counts
    lam = spectrum.grid.pixels
    n = counts.size
    n_edge = max(1, round(0.1 * n))
    b0 = float(np.median(np.concatenate([counts[:n_edge], counts[-n_edge:]])))
    res = counts - b0

    candidates = [
        i
        for i in range(1, n - 1)
        if res[i] > 0.0 and res[i] >= res[i - 1] and res[i] >= res[i + 1]
    ]
    candidates.sort(key=lambda i: res[i], reverse=True)
    peaks: list[int] = []
    for i in candidates:
        if all(abs(i - j) >= 3 for j in peaks):
            peaks.append(i)
        if len(peaks) == n_lines:
            break
    if len(peaks) < n_lines:
        raise FlatSpectrumError(
            f"found {len(peaks)} local maxima above baseline, need {n_lines}"
        )

    spacing = spectrum.grid.median_spacing
    lines = []
    for i in sorted(peaks):
        amp = max(float(res[i]), 1.0)
        half = res[i] / 2.0
        left = _half_max_crossing(lam, res, i, half, -1)
        right = _half_max_crossing(lam, res, i, half, +1)
        if left is not None and right is not None:
            fwhm = right - left
        elif left is not None:
            fwhm = 2.0 * (lam[i] - left)
        elif right is not None:
            fwhm = 2.0 * (right - lam[i])
        else:
            fwhm = 4.0 * spacing
        width = max(fwhm / FWHM_OVER_SIGMA, 0.5 * spacing)
        lines.append(GaussianLine(amp, float(lam[i]), width))
    return SpectralModel(np.array([b0]), tuple(lines))
