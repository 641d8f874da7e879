"""Named test functions and sample-file loading."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .qmatrix import Shape
from .triple_core import AlgebraElement

__all__ = [
    "SampleFunction",
    "builtin_function",
    "BUILTIN_NAMES",
    "sample",
    "load_sample_file",
]

BUILTIN_NAMES = ("sin", "cos", "exp", "linear", "const")


@dataclass(frozen=True)
class SampleFunction:
    """A function of the lattice coordinate, optionally with its derivative."""

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray] | None = None


def builtin_function(name: str, k: int = 1) -> SampleFunction:
    """Look up a built-in by name; `k` is the wavenumber of exp(i*k*x)."""
    if name == "sin":
        return SampleFunction("sin", np.sin, np.cos)
    if name == "cos":
        return SampleFunction("cos", np.cos, lambda x: -np.sin(x))
    if name == "exp":
        kk = float(k)
        return SampleFunction(
            f"exp(i*{k}*x)",
            lambda x: np.exp(1j * kk * x),
            lambda x: 1j * kk * np.exp(1j * kk * x),
        )
    if name == "linear":
        return SampleFunction(
            "linear",
            lambda x: x.astype(np.complex128),
            lambda x: np.ones_like(x, dtype=np.complex128),
        )
    if name == "const":
        return SampleFunction(
            "const",
            lambda x: np.ones_like(x, dtype=np.complex128),
            lambda x: np.zeros_like(x, dtype=np.complex128),
        )
    raise ValueError(f"unknown function {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}")


def sample(fn: SampleFunction, shape: Shape, n: int) -> AlgebraElement:
    """Evaluate fn on the lattice points of the given shape and size."""
    return AlgebraElement(fn.f(shape.points(n)))


def load_sample_file(path: str) -> AlgebraElement:
    """Read one complex sample per line, either `re` or `re,im`.

    Blank lines and lines starting with # are skipped.
    """
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            re = float(parts[0])
            im = float(parts[1]) if len(parts) > 1 else 0.0
            values.append(complex(re, im))
    return AlgebraElement(np.array(values, dtype=np.complex128))
