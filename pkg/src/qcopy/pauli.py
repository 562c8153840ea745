"""Pauli strings, ladder operators and Hilbert-Schmidt decomposition.

Single-qubit matrices are written in the (|1>, |0>) basis, so Z|1> = +|1>
and (1 + Z) projects onto the up state (times 2). The ladder operators keep
the unnormalized convention sigma_pm = X +/- iY, i.e. matrix entries 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .operators import Operator, as_operator, qubit_count, tensor_all

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

LETTERS = {"I": I2, "X": X, "Y": Y, "Z": Z}

SIGMA_PLUS = X + 1j * Y
SIGMA_MINUS = X - 1j * Y
UP_PROJECTOR_2 = I2 + Z  # 1 + sigma_z = diag(2, 0)

PRUNE = 1e-13

# (x bit, z bit) -> letter; Y = i X Z
_XZ_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliTerm:
    coefficient: complex
    letters: str

    def __post_init__(self):
        if not self.letters or any(c not in LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli string {self.letters!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.letters)


def pauli_string(letters: str) -> Operator:
    return tensor_all([LETTERS[c] for c in letters])


def materialize(term: PauliTerm) -> Operator:
    return term.coefficient * pauli_string(term.letters)


def recompose(terms: Iterable[PauliTerm]) -> Operator:
    terms = list(terms)
    if not terms:
        raise ValueError("cannot recompose an empty term list")
    out = materialize(terms[0])
    for t in terms[1:]:
        out = out + materialize(t)
    return out


def ladder_string(signs: Sequence[int]) -> Operator:
    """Tensor product of sigma_+ (sign > 0) or sigma_- (sign < 0) factors."""
    return tensor_all([SIGMA_PLUS if s > 0 else SIGMA_MINUS for s in signs])


def _walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """out[z] = sum_c (-1)^popcount(c & z) v[c]."""
    out = v.astype(np.complex128).copy()
    n = out.shape[0]
    h = 1
    while h < n:
        out = out.reshape(-1, 2, h)
        a, b = out[:, 0, :].copy(), out[:, 1, :].copy()
        out[:, 0, :], out[:, 1, :] = a + b, a - b
        out = out.reshape(n)
        h *= 2
    return out


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x >>= 1
    return count


def pauli_coefficients(h: Operator) -> np.ndarray:
    """All 4^k coefficients trace(P^H h) / 2^k, indexed as ``[x_mask, z_mask]``.

    Masks are over array-index bits, with qubit 1 the most significant bit.
    A string with masks (x, z) has nonzero entries only at (r, r ^ x), where
    its value is i^popcount(x & z) * (-1)^popcount((r ^ x) & z). For fixed x
    the sum over r is therefore a Walsh-Hadamard transform of the shifted
    diagonal c -> h[c ^ x, c].
    """
    h = as_operator(h)
    dim = h.shape[0]
    qubit_count(dim)
    cols = np.arange(dim)
    zs = np.arange(dim)
    out = np.empty((dim, dim), dtype=np.complex128)
    for x in range(dim):
        shifted = h[cols ^ x, cols]
        phase = (-1j) ** (_popcount(x & zs) % 4)
        out[x] = phase * _walsh_hadamard(shifted) / dim
    return out


def _letters_from_masks(x: int, z: int, k: int) -> str:
    return "".join(
        _XZ_LETTER[((x >> (k - 1 - j)) & 1, (z >> (k - 1 - j)) & 1)] for j in range(k)
    )


def decompose(h: Operator, prune: float = PRUNE) -> list[PauliTerm]:
    """Expand ``h`` in Pauli strings, dropping terms with ``|c| <= prune``.

    Terms are sorted by letter string (I < X < Y < Z, qubit 1 first).
    """
    h = as_operator(h)
    k = qubit_count(h.shape[0])
    coeffs = pauli_coefficients(h)
    xs, zs = np.nonzero(np.abs(coeffs) > prune)
    terms = [
        PauliTerm(complex(coeffs[x, z]), _letters_from_masks(int(x), int(z), k))
        for x, z in zip(xs, zs)
    ]
    terms.sort(key=lambda t: t.letters)
    return terms


def format_term(term: PauliTerm) -> str:
    """``+0.7853981634 ZX``; a non-negligible imaginary part is appended as ``+...j``."""
    c = complex(term.coefficient)
    text = f"{c.real:+.10f}"
    if abs(c.imag) > PRUNE:
        text += f"{c.imag:+.10f}j"
    return f"{text} {term.letters}"


def format_terms(terms: Iterable[PauliTerm]) -> str:
    return "".join(format_term(t) + "\n" for t in terms)
