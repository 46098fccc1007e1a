"""Dense complex linear algebra for small multi-site quantum systems.

State vectors and operators are plain ``numpy`` arrays of ``complex128``.
The flat index convention is fixed globally: site 0 is the leftmost, most
significant tensor factor, so a digit tuple ``(s0, ..., s_{n-1})`` over
``l`` levels maps to ``flat = sum_k s_k * l**(n-1-k)``.  Everything in the
package inherits this convention.

Validation helpers raise instead of repairing: a state that fails its norm
check is a bug upstream, not something to renormalize silently.
"""

from __future__ import annotations

import math

import numpy as np

# Construction-time invariants are checked at 1e-12, run-time drift (norms
# after long unitary products) at 1e-10.
CONSTRUCTION_TOL = 1e-12
DRIFT_TOL = 1e-10

# Dense simulation is exponential in site count; refuse anything above this.
MAX_DIMENSION = 2**20


class DimensionError(ValueError):
    """Operand dimensions are incompatible or above the dense-size cap."""


# ---------------------------------------------------------------------------
# basis indexing


def digits_to_flat(digits, l: int) -> int:
    """Flat index of the basis label ``(s0, ..., s_{n-1})``, site 0 most
    significant."""
    flat = 0
    for s in digits:
        if not 0 <= s < l:
            raise ValueError(f"digit {s} outside [0, {l})")
        flat = flat * l + s
    return flat


def flat_to_digits(flat: int, n: int, l: int) -> tuple:
    """Digit tuple ``(s0, ..., s_{n-1})`` of a flat basis index."""
    if not 0 <= flat < l**n:
        raise ValueError(f"index {flat} outside [0, {l}**{n})")
    digits = []
    for _ in range(n):
        digits.append(flat % l)
        flat //= l
    return tuple(reversed(digits))


# ---------------------------------------------------------------------------
# constructors and validators


def as_state(amps, *, tol: float = DRIFT_TOL) -> np.ndarray:
    """Validate and return a normalized complex state vector.

    Raises ``ValueError`` on non-finite entries or a norm off 1 by more
    than ``tol``.  The input is copied, never renormalized.
    """
    v = np.array(amps, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValueError("state vector contains non-finite amplitudes")
    nrm = norm(v)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"state vector norm {nrm!r} differs from 1 beyond {tol}")
    return v


def norm(v: np.ndarray) -> float:
    return float(np.sqrt(np.sum(v.real**2 + v.imag**2)))


def basis_state(digits, l: int) -> np.ndarray:
    """Computational basis vector labeled by a digit tuple."""
    digits = tuple(digits)
    v = np.zeros(l ** len(digits), dtype=np.complex128)
    v[digits_to_flat(digits, l)] = 1.0
    return v


def uniform_state(n: int, l: int = 2) -> np.ndarray:
    """Product of single-site uniform superpositions (|+> at each site for
    l = 2)."""
    dim = l**n
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def ketbra(i: int, j: int, dim: int) -> np.ndarray:
    """|i><j| on a ``dim``-dimensional site."""
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[i, j] = 1.0
    return m


def projector(i: int, dim: int) -> np.ndarray:
    return ketbra(i, i, dim)


def check_unitary(u: np.ndarray, tol: float) -> bool:
    """True iff ``max |U^dag U - I| <= tol``."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {u.shape}")
    resid = u.conj().T @ u - np.eye(u.shape[0])
    return float(np.max(np.abs(resid))) <= tol


def check_hermitian(m: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def validate_density(rho: np.ndarray, *, tol: float = DRIFT_TOL) -> np.ndarray:
    """Check hermiticity, unit trace and spectrum of a density matrix.

    Eigenvalues may undershoot zero by rounding noise (down to ``-tol``);
    anything below that is an invariant violation and raises.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if not check_hermitian(rho, CONSTRUCTION_TOL):
        raise ValueError("density matrix is not hermitian within 1e-12")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace {tr!r} differs from 1 beyond {tol}")
    evals = hermitian_eigenvalues(rho)
    if evals[0] < -tol:
        raise ValueError(f"density matrix has eigenvalue {evals[0]!r} < -{tol}")
    return rho


# ---------------------------------------------------------------------------
# operations


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor most significant.

    ``(A (x) B)[ia*dB+ib, ja*dB+jb] = A[ia, ja] * B[ib, jb]``.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"tensor_product needs square operands, got {m.shape}")
    out_dim = a.shape[0] * b.shape[0]
    if out_dim > MAX_DIMENSION:
        raise DimensionError(
            f"tensor product dimension {out_dim} exceeds cap {MAX_DIMENSION}"
        )
    return np.kron(a, b)


def tensor_chain(factors) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of square matrices."""
    factors = list(factors)
    if not factors:
        raise ValueError("tensor_chain needs at least one factor")
    out = np.asarray(factors[0], dtype=np.complex128)
    for f in factors[1:]:
        out = tensor_product(out, f)
    return out


def apply(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Matrix-vector product ``U v`` with a dimension check."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {u.shape}")
    if u.shape[1] != v.shape[0]:
        raise DimensionError(f"operator dim {u.shape[1]} != vector dim {v.shape[0]}")
    return u @ v


def partial_trace_keep_site(state_or_rho: np.ndarray, k: int, n: int, l: int) -> np.ndarray:
    """Reduced l x l density of site ``k``, tracing out all other sites.

    Accepts either a pure-state vector of dimension ``l**n`` or a density
    matrix of that dimension.
    """
    if not 0 <= k < n:
        raise ValueError(f"site index {k} outside [0, {n})")
    dim = l**n
    arr = np.asarray(state_or_rho, dtype=np.complex128)
    before, after = l**k, l ** (n - k - 1)
    if arr.ndim == 1:
        if arr.shape[0] != dim:
            raise DimensionError(f"state dim {arr.shape[0]} != {l}**{n}")
        m = arr.reshape(before, l, after)
        return np.einsum("xay,xby->ab", m, m.conj())
    if arr.shape != (dim, dim):
        raise DimensionError(f"density shape {arr.shape} != ({dim}, {dim})")
    r = arr.reshape(before, l, after, before, l, after)
    return np.einsum("xayxby->ab", r)


def hermitian_eigenvalues(
    m: np.ndarray, *, herm_tol: float = DRIFT_TOL, off_tol: float = 1e-14
) -> np.ndarray:
    """All eigenvalues of a hermitian matrix, ascending.

    Cyclic Jacobi rotations, swept until the off-diagonal Frobenius mass
    drops below ``off_tol``.  Intended for the small matrices this package
    works with (dim <= 64); robustness matters more than speed here.
    """
    a = np.asarray(m, dtype=np.complex128)
    if not check_hermitian(a, herm_tol):
        raise ValueError(f"matrix is not hermitian within {herm_tol}")
    a = a.copy()
    dim = a.shape[0]
    if dim == 1:
        return np.array([a[0, 0].real])

    mask = ~np.eye(dim, dtype=bool)
    for _ in range(60):
        # Summed directly over off-diagonal entries; subtracting the diagonal
        # mass from the total cancels catastrophically near convergence.
        off = math.sqrt(float(np.sum(np.abs(a[mask]) ** 2)))
        if off < off_tol:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                _jacobi_rotate(a, p, q)
    else:
        raise RuntimeError("Jacobi sweep limit reached without convergence")
    return np.sort(np.diag(a).real)


def _jacobi_rotate(a: np.ndarray, p: int, q: int) -> None:
    """Zero out a[p, q] (and a[q, p]) with a unitary plane rotation, in place."""
    apq = a[p, q]
    g = abs(apq)
    if g == 0.0:
        return
    # Phase factor folds the complex pivot into a real rotation problem:
    # the zeroing condition becomes tan(2*theta) = 2g / (alpha - beta).
    u = apq / g
    alpha = a[p, p].real
    beta = a[q, q].real
    phi = (alpha - beta) / (2.0 * g)
    if abs(phi) > 1e150:
        # phi*phi would overflow; asymptotically t -> 1/(2*phi).
        t = 1.0 / (2.0 * phi)
    elif phi >= 0.0:
        t = 1.0 / (phi + math.sqrt(1.0 + phi * phi))
    else:
        t = -1.0 / (-phi + math.sqrt(1.0 + phi * phi))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    su = s * u
    # Columns: A <- A J with J[p,p]=J[q,q]=c, J[q,p]=s*conj(u), J[p,q]=-s*u.
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p + np.conj(su) * col_q
    a[:, q] = -su * col_p + c * col_q
    # Rows: A <- J^dag A.
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p + su * row_q
    a[q, :] = -np.conj(su) * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
