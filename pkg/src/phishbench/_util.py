"""Shared helpers: stable seed derivation, warning categories, formatting."""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


class ToolkitWarning(UserWarning):
    """Base class for all warnings raised by this package."""


class ConvergenceWarning(ToolkitWarning):
    """An iterative fit stopped at its iteration cap before converging."""


class DegenerateMetricWarning(ToolkitWarning):
    """A metric had a 0/0 denominator and was reported as 0."""


class DroppedFeatureWarning(ToolkitWarning):
    """Zero-variance columns were dropped before standardized PCA."""


class DegenerateTrainingWarning(ToolkitWarning):
    """Training data admitted only a constant predictor."""


class HeuristicFeatureWarning(ToolkitWarning):
    """A feature could not be derived from the URL alone and was set to 0."""


class StratificationWarning(ToolkitWarning):
    """A class has fewer members than folds; assignment is best-effort."""


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixer over 64-bit ints."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master: int, *path: int | str) -> int:
    """Derive a child seed from a master seed and a mixing path.

    Stable across runs, platforms and processes: strings are folded in
    through sha256 rather than hash().
    """
    state = splitmix64(master & _MASK64)
    for part in path:
        if isinstance(part, str):
            digest = hashlib.sha256(part.encode("utf-8")).digest()
            part = int.from_bytes(digest[:8], "little")
        state = splitmix64((state ^ (int(part) & _MASK64)) & _MASK64)
    return state


def rng_from(master: int, *path: int | str) -> np.random.Generator:
    """Deterministic generator for a (master seed, path) pair."""
    return np.random.default_rng(derive_seed(master, *path))


def pct(value: float) -> str:
    """Render a fraction as a percentage string with two decimals."""
    return f"{value * 100.0:.2f}%"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
