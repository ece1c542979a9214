"""Synthetic functional manifolds and curve-file ingestion.

The generators turn the classical benchmark point clouds into functional data
by using point coordinates as basis coefficients, and build the unevenly
sampled Cauchy density family. All of them are deterministic given ``seed``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np
from scipy import signal

from .basis import BSplineBasis, ClosedFormBasis
from .fdata import BasisDataset, DiscretizedDataset, SamplingGrid, smooth_to_basis
from .io import load_curves_csv

MOONS_BASIS = ("sin(4x)", "x^2+2x-2")
SWISS_ROLL_BASIS = ("sin(4x)", "cos(8x)", "sin(12x)")

#: Class counts of the full 1500-curve phoneme sample.
PHONEME_COUNTS = {"aa": 232, "ao": 358, "dcl": 234, "iy": 387, "sh": 289}


def cauchy_grid(points_per_interval=100):
    """Three uniform blocks on [-10,-5], (-5,5) and [5,10].

    The open middle block has half the point density of the outer ones.
    """
    n = points_per_interval
    left = np.linspace(-10.0, -5.0, n)
    h = 10.0 / (n + 1)
    middle = -5.0 + h * np.arange(1, n + 1)
    right = np.linspace(5.0, 10.0, n)
    return SamplingGrid(np.concatenate([left, middle, right]))


def cauchy_density(t, center, gamma=1.0, amplitude=1.0):
    return amplitude * gamma / (np.pi * ((t - center) ** 2 + gamma ** 2))


def gen_cauchy(n_per_class=25, amplitudes=(1.0, 1.5), gamma=1.0, seed=None,
               points_per_interval=100) -> DiscretizedDataset:
    """Scaled Cauchy densities with centers evenly spread over [-5, 5].

    Each amplitude class holds ``n_per_class`` curves. ``seed`` is accepted
    for interface uniformity; the construction has no randomness.

    Returns
    -------
    DiscretizedDataset
        Labels are the amplitudes.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be at least 1")
    grid = cauchy_grid(points_per_interval)
    centers = np.linspace(-5.0, 5.0, n_per_class)
    rows, labels = [], []
    for amp in amplitudes:
        for c in centers:
            rows.append(cauchy_density(grid.points, c, gamma, amp))
            labels.append(float(amp))
    return DiscretizedDataset(grid, np.array(rows), np.array(labels))


def moons(n=200, noise=0.0, seed=None):
    """Two interleaved half circles, as in the usual clustering benchmark.

    The first ``ceil(n/2)`` points are the upper unit half circle, the rest
    the lower half circle centred at (1, 0.5). Returns ``(points, labels)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    n_out = n - n // 2
    n_in = n // 2
    th_out = np.linspace(0, np.pi, n_out)
    th_in = np.linspace(0, np.pi, n_in)
    pts = np.vstack([
        np.column_stack([np.cos(th_out), np.sin(th_out)]),
        np.column_stack([1 - np.cos(th_in), 0.5 - np.sin(th_in)]),
    ])
    labels = np.concatenate([np.zeros(n_out, int), np.ones(n_in, int)])
    if noise > 0:
        pts = pts + np.random.default_rng(seed).normal(scale=noise, size=pts.shape)
    return pts, labels


def gen_moons_functional(n=200, noise=0.0, seed=None) -> BasisDataset:
    """Moons points used as coefficients of ``sin(4x)`` and ``x^2 + 2x - 2`` on [0, 1]."""
    pts, labels = moons(n, noise, seed)
    return BasisDataset(ClosedFormBasis(MOONS_BASIS, (0.0, 1.0)), pts, labels)


def swiss_roll(n=300, seed=None, height=21.0):
    """Points ``(t cos t, y, t sin t)`` with ``t ~ U[1.5 pi, 4.5 pi]``.

    Returns ``(points, t)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    t = 1.5 * np.pi * (1 + 2 * rng.random(n))
    y = height * rng.random(n)
    return np.column_stack([t * np.cos(t), y, t * np.sin(t)]), t


def gen_swiss_roll_functional(n=300, seed=0, normalize=True) -> BasisDataset:
    """Swiss Roll points as coefficients of ``sin(4x), cos(8x), sin(12x)``.

    With ``normalize`` each coefficient column is standardized to zero mean
    and unit variance. Labels hold the roll parameter ``t``.
    """
    pts, t = swiss_roll(n, seed)
    if normalize:
        pts = (pts - pts.mean(axis=0)) / pts.std(axis=0)
    return BasisDataset(ClosedFormBasis(SWISS_ROLL_BASIS, (0.0, 1.0)), pts, t)


def truncate(ds: DiscretizedDataset, n_points=100) -> DiscretizedDataset:
    """Keep the first ``n_points`` samples of each curve."""
    return ds.truncate(n_points)


def phoneme_basis(domain, n_basis=9, order=3):
    return BSplineBasis(domain, n_basis=n_basis, order=order)


def preprocess_phoneme(ds: DiscretizedDataset, n_points=100, n_basis=9,
                       order=3) -> BasisDataset:
    """Truncate log-periodograms and smooth them onto a B-spline basis."""
    short = truncate(ds, n_points)
    return smooth_to_basis(short, phoneme_basis(short.grid.domain, n_basis, order))


# Formant centre frequencies (Hz) and bandwidths for the surrogate phonemes.
_FORMANTS = {
    "aa": ([730, 1090, 2440, 3400], [90, 110, 160, 250]),
    "ao": ([570, 840, 2410, 3400], [80, 100, 160, 250]),
    "iy": ([270, 2290, 3010, 3700], [60, 100, 150, 250]),
    "dcl": ([180, 900], [120, 300]),
    "sh": ([2600, 4200, 6000], [600, 900, 1200]),
}


def _resonator(freq, bw, fs):
    r = np.exp(-np.pi * bw / fs)
    theta = 2 * np.pi * freq / fs
    return [1.0 - r], [1.0, -2 * r * np.cos(theta), r * r]


def _source_filter(label, rng, fs, frame):
    n = frame + 256
    freqs, bws = _FORMANTS[label]
    freqs = np.asarray(freqs) * rng.uniform(0.85, 1.15, len(freqs))
    bws = np.asarray(bws) * rng.uniform(0.7, 1.6, len(bws))
    if label in ("aa", "ao", "iy", "dcl"):
        f0 = rng.uniform(85, 160)
        period = fs / f0
        src = np.zeros(n)
        src[(np.arange(0, n, period) + rng.uniform(0, period)).astype(int)
            .clip(0, n - 1)] = 1.0
        src = signal.lfilter([1.0], [1.0, -rng.uniform(0.85, 0.98)], src)
        src += rng.uniform(0.01, 0.1) * rng.standard_normal(n)
        level = 0.15 if label == "dcl" else 1.0
    else:
        src = rng.standard_normal(n)
        src = signal.lfilter([1.0, -rng.uniform(0.7, 0.95)], [1.0], src)
        level = 0.6
    out = src
    for f, b in zip(freqs, bws):
        num, den = _resonator(f, b, fs)
        out = signal.lfilter(num, den, out)
    out = out[-frame:]
    # speaker/recording level varies over roughly +-6 dB
    return out / np.std(out) * 100.0 * level * np.exp(rng.normal(0, 0.35))


def _surrogate_frame(label, rng, fs=16000, frame=512, coarticulation=0.3):
    out = _source_filter(label, rng, fs, frame)
    if rng.random() < coarticulation:
        # frame straddles a boundary with a neighbouring phoneme
        other = rng.choice([k for k in _FORMANTS if k != label])
        w = rng.uniform(0.0, 0.45)
        out = (1 - w) * out + w * _source_filter(other, rng, fs, frame)
    out = out + rng.standard_normal(frame)
    spec = np.abs(np.fft.rfft(out * np.hamming(frame))) ** 2 / frame
    return np.log(spec[1:frame // 2 + 1])


def gen_phoneme_surrogate(n_curves=300, seed=2024) -> DiscretizedDataset:
    """Synthetic log-periodograms of length 256 for the five phoneme classes.

    Each curve is the log-periodogram of a 512-sample frame of a source-filter
    signal (pulse train or noise through formant resonators) at 16 kHz,
    sampled on normalized frequency ``k / 256`` for bins ``k = 1..256``. Class
    proportions follow :data:`PHONEME_COUNTS` (stratified by largest
    remainder). This stands in for the speech-derived data, which cannot be
    redistributed here.
    """
    total = sum(PHONEME_COUNTS.values())
    exact = {k: n_curves * v / total for k, v in PHONEME_COUNTS.items()}
    counts = {k: int(np.floor(v)) for k, v in exact.items()}
    short = n_curves - sum(counts.values())
    for k in sorted(exact, key=lambda k: counts[k] - exact[k])[:short]:
        counts[k] += 1
    rng = np.random.default_rng(seed)
    labels = np.concatenate([[k] * c for k, c in counts.items()])
    rng.shuffle(labels)
    values = np.array([_surrogate_frame(lab, rng) for lab in labels])
    # frequency of bin k as a fraction of the Nyquist frequency
    freqs = np.arange(1, 257) / 256.0
    return DiscretizedDataset(SamplingGrid(freqs), values, labels)


def phoneme_extract_path() -> Path:
    return Path(str(resources.files("fdmap") / "data" / "phoneme_surrogate.csv"))


def load_phoneme_extract() -> DiscretizedDataset:
    """The checked-in 300-curve labelled log-periodogram extract."""
    return load_curves_csv(phoneme_extract_path())
