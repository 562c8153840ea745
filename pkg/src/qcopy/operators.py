"""Dense complex operators on qubit registers.

Operators are plain ``complex128`` numpy arrays of shape ``(dim, dim)``; kets
are 1-d ``complex128`` arrays. Within each qubit factor index 0 is the "up"
state |1> and index 1 is "down" |0>, and qubit 1 is the most significant
factor, so |11...1> is the first global basis vector and |00...0> the last.

Units: hbar = 1 throughout, so energies are in units of 1/dt.
"""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

Operator = np.ndarray
Ket = np.ndarray
Bits = Union[str, Sequence[int]]

NORM_TOL = 1e-12


class NotHermitian(ValueError):
    def __init__(self, residual: float, tol: float):
        super().__init__(f"operator is not Hermitian: relative residual {residual:.3e} > {tol:.1e}")
        self.residual = residual


class NotUnitary(ValueError):
    def __init__(self, residual: float, tol: float):
        super().__init__(f"operator is not unitary: ||U^H U - I||_F = {residual:.3e} > {tol:.1e}")
        self.residual = residual


class DimMismatch(ValueError):
    pass


class NotNormalized(ValueError):
    pass


def as_operator(a) -> Operator:
    """Coerce ``a`` to a square complex128 array, raising on bad shapes."""
    out = np.asarray(a, dtype=np.complex128)
    if out.ndim != 2 or out.shape[0] != out.shape[1] or out.shape[0] < 1:
        raise DimMismatch(f"expected a non-empty square matrix, got shape {out.shape}")
    return out


def qubit_count(dim: int) -> int:
    k = int(dim).bit_length() - 1
    if dim < 1 or (1 << k) != dim:
        raise DimMismatch(f"dimension {dim} is not a power of two")
    return k


# -- basis states -----------------------------------------------------------

def _bits_tuple(bits: Bits) -> tuple[int, ...]:
    vals = tuple(int(b) for b in bits)
    if not vals or any(b not in (0, 1) for b in vals):
        raise ValueError(f"invalid bitstring {bits!r}")
    return vals


def basis_index(bits: Bits) -> int:
    """Array index of |q1 q2 ... q_m>.

    The quantum numbers q_j are spin labels (1 = up). Because up sits
    at index 0 of each factor, the array index is the bitwise complement of
    the binary number q1 q2 ... q_m read with q1 most significant.
    """
    vals = _bits_tuple(bits)
    m = len(vals)
    label = 0
    for b in vals:
        label = (label << 1) | b
    return (1 << m) - 1 - label


def basis_label(bits: Bits) -> int:
    """The integer sum_j q_j 2^(m-j) with q1 most significant."""
    label = 0
    for b in _bits_tuple(bits):
        label = (label << 1) | b
    return label


def basis_bits(index: int, n_qubits: int) -> str:
    """Inverse of :func:`basis_index`, returned as a string like ``"101"``."""
    if not 0 <= index < (1 << n_qubits):
        raise ValueError(f"index {index} out of range for {n_qubits} qubits")
    label = (1 << n_qubits) - 1 - index
    return format(label, f"0{n_qubits}b")


def basis_ket(bits: Bits) -> Ket:
    vals = _bits_tuple(bits)
    psi = np.zeros(1 << len(vals), dtype=np.complex128)
    psi[basis_index(vals)] = 1.0
    return psi


def copy_source(n: int) -> str:
    """|10...0>: control up, n copy qubits down."""
    return "1" + "0" * n


def copy_image(n: int) -> str:
    """|11...1>."""
    return "1" * (n + 1)


def all_down(n: int) -> str:
    return "0" * (n + 1)


# -- arithmetic -------------------------------------------------------------

def identity(dim: int) -> Operator:
    return np.eye(dim, dtype=np.complex128)


def tensor_product(a: Operator, b: Operator) -> Operator:
    return np.kron(as_operator(a), as_operator(b))


def tensor_all(ops: Sequence[Operator]) -> Operator:
    if not ops:
        raise ValueError("need at least one factor")
    out = as_operator(ops[0])
    for op in ops[1:]:
        out = np.kron(out, as_operator(op))
    return out


def adjoint(a: Operator) -> Operator:
    return as_operator(a).conj().T.copy()


def frobenius_norm(a: Operator) -> float:
    return float(np.linalg.norm(a, "fro"))


def frobenius_distance(a: Operator, b: Operator) -> float:
    a, b = as_operator(a), as_operator(b)
    if a.shape != b.shape:
        raise DimMismatch(f"cannot compare {a.shape} with {b.shape}")
    return frobenius_norm(a - b)


def hermiticity_residual(h: Operator) -> float:
    """||h - h^H||_F / max(1, ||h||_F)."""
    h = as_operator(h)
    return frobenius_norm(h - h.conj().T) / max(1.0, frobenius_norm(h))


def unitarity_residual(u: Operator) -> float:
    u = as_operator(u)
    return frobenius_norm(u.conj().T @ u - np.eye(u.shape[0]))


def check_hermitian(h: Operator, tol: float = 1e-12) -> Operator:
    h = as_operator(h)
    norm = frobenius_norm(h)
    if norm == 0.0:
        return h
    residual = frobenius_norm(h - h.conj().T) / norm
    if residual > tol:
        raise NotHermitian(residual, tol)
    return h


def embed(op: Operator, qubits: Sequence[int], n_qubits: int) -> Operator:
    """Place a k-qubit operator on the given (1-based) qubits of a register.

    ``qubits[i]`` receives the i-th tensor factor of ``op``; every other qubit
    is acted on by the identity.
    """
    op = as_operator(op)
    k = len(qubits)
    if op.shape[0] != 1 << k:
        raise DimMismatch(f"{op.shape[0]}x{op.shape[0]} operator does not act on {k} qubits")
    axes = [q - 1 for q in qubits]
    if len(set(axes)) != k or min(axes) < 0 or max(axes) >= n_qubits:
        raise ValueError(f"bad qubit selection {tuple(qubits)} for {n_qubits} qubits")
    rest = [q for q in range(n_qubits) if q not in axes]
    # full = op (x) I_rest, then permute tensor legs back into register order
    full = np.kron(op, np.eye(1 << len(rest), dtype=np.complex128))
    order = axes + rest
    perm = np.argsort(order)
    t = full.reshape([2] * (2 * n_qubits))
    t = t.transpose(list(perm) + [n_qubits + p for p in perm])
    return t.reshape(1 << n_qubits, 1 << n_qubits).copy()


# -- Hermitian eigensolvers -------------------------------------------------

def jacobi_eigh(h: Operator, tol: float = 1e-14, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Each rotation first removes the phase of the pivot ``h[p, q]`` and then
    applies the real symmetric Jacobi rotation. Sweeps stop once the
    off-diagonal Frobenius mass drops below ``tol * ||h||_F``.

    Returns ascending eigenvalues and a unitary whose columns are the
    eigenvectors.
    """
    a = as_operator(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = frobenius_norm(a)
    if scale == 0.0 or n == 1:
        return np.real(np.diag(a)).copy(), v
    threshold = tol * scale

    def off(m):
        return frobenius_norm(m - np.diag(np.diag(m)))

    for _ in range(max_sweeps):
        if off(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mag = abs(b)
                if mag <= 1e-300:
                    continue
                phase = b / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on columns (p, q)
                j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = a[:, [p, q]] @ j
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = j.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
                vc = v[:, [p, q]] @ j
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]
    else:
        if off(a) > threshold:
            raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order].copy(), v[:, order].copy()


def hermitian_eig(h: Operator, tol: float = 1e-12, method: str = "lapack"):
    """Eigendecomposition h = V diag(w) V^H of a Hermitian operator.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    :func:`jacobi_eigh`. Eigenvalues come back ascending. Raises
    :class:`NotHermitian` if ``||h - h^H||_F > tol ||h||_F``.
    """
    h = check_hermitian(h, tol)
    if method == "jacobi":
        return jacobi_eigh(h)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    # symmetrize so the solver sees exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return w, v


def propagator(h: Operator, dt: float, tol: float = 1e-12, method: str = "lapack") -> Operator:
    """U = exp(-i h dt) via the spectral decomposition of ``h``."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    h = as_operator(h)
    if not np.any(h):
        return identity(h.shape[0])
    w, v = hermitian_eig(h, tol, method)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def check_ket(psi, dim: int | None = None, normalized: bool = True) -> Ket:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 1 or (dim is not None and psi.shape[0] != dim):
        raise DimMismatch(f"ket of shape {psi.shape} does not match dimension {dim}")
    if normalized:
        norm2 = float(np.vdot(psi, psi).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"ket has squared norm {norm2!r}")
    return psi
