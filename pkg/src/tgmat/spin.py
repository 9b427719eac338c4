"""Spin-j states, their dimension-4 coefficient tensors, and classicality.

A spin-j density matrix (m = 2j) lives in the (m+1)-dimensional Dicke
basis, ordered by l = j, j-1, ..., -j.  Sandwiching Pauli strings with the
isometry onto the symmetric subspace yields an overcomplete operator basis;
the trace coefficients against it form a real, permutation-symmetric tensor
of order m and dimension 4 whose all-zeros entry equals the trace.

The classicality certificate checks that the coefficient tensor has
nonnegative diagonal entries and that its generated 4x4 matrix passes the
H-matrix cascade.  All criteria are sufficient only: an inconclusive
verdict says nothing about nonclassicality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import comb
from typing import Optional

import numpy as np

from . import dominance as dom
from . import tensor as tz
from .errors import (
    BadAngle,
    BadIndex,
    NonHermitian,
    OrderTooLarge,
    TgmatError,
    TraceNotOne,
    WeightMismatch,
)

__all__ = [
    "PAULI",
    "SpinState",
    "ClassicalityVerdict",
    "spin_state",
    "dicke_isometry",
    "s_operator",
    "coefficient_tensor",
    "reconstruct_state",
    "coherent_state",
    "coherent_direction",
    "classical_mixture",
    "certify_classicality",
    "state_from_json",
]

MAX_ORDER = 8

PAULI = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


@dataclass(frozen=True)
class SpinState:
    """Validated spin-j density matrix; ``m`` = 2j, ``rho`` is (m+1)x(m+1)."""

    m: int
    rho: np.ndarray


def spin_state(m: int, rho) -> SpinState:
    """Validate and wrap a density matrix in the Dicke basis."""
    if not 1 <= m <= MAX_ORDER:
        raise OrderTooLarge(f"2j = {m} outside 1..{MAX_ORDER}")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (m + 1, m + 1):
        raise TgmatError(f"rho must be {(m + 1, m + 1)}, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise NonHermitian("rho is not Hermitian to 1e-12")
    if abs(np.trace(rho) - 1.0) > 1e-12:
        raise TraceNotOne(f"trace is {np.trace(rho):.6g}, expected 1")
    out = rho.copy()
    out.flags.writeable = False
    return SpinState(m, out)


@lru_cache(maxsize=None)
def dicke_isometry(m: int) -> np.ndarray:
    """The 2^m x (m+1) isometry whose columns are the Dicke states.

    Column k is the normalized uniform superposition of the weight-k
    bitstrings (k excitations, l = j - k), so column order matches the
    basis |j, l> with l descending from j.
    """
    if not 1 <= m <= MAX_ORDER:
        raise OrderTooLarge(f"2j = {m} outside 1..{MAX_ORDER}")
    V = np.zeros((2 ** m, m + 1), dtype=complex)
    for b in range(2 ** m):
        k = bin(b).count("1")
        V[b, k] = 1.0 / np.sqrt(comb(m, k))
    V.flags.writeable = False
    return V


def s_operator(mus) -> np.ndarray:
    """Pauli string compressed to the symmetric subspace: V^H (sigma_mu1 x ...) V."""
    mus = tuple(int(u) for u in mus)
    if any(not 0 <= u <= 3 for u in mus):
        raise BadIndex(f"Pauli labels must be in 0..3, got {mus}")
    m = len(mus)
    V = dicke_isometry(m)
    K = reduce(np.kron, (PAULI[u] for u in mus))
    return V.conj().T @ K @ V


def _lifted(state: SpinState) -> np.ndarray:
    V = dicke_isometry(state.m)
    return V @ state.rho @ V.conj().T


def coefficient_tensor(state: SpinState) -> tz.DenseTensor:
    """Order-m, dimension-4 tensor of traces against the Pauli string basis.

    The result is checked to be real, permutation symmetric, and to carry
    the state trace at the all-zeros tuple before it is returned.
    """
    m = state.m
    if m < 2:
        raise OrderTooLarge("coefficient tensor needs 2j >= 2")
    T = _lifted(state).reshape((2,) * (2 * m))
    # contract one site at a time: S4[mu, b, a] against (a_k, b_k)
    for p in range(m):
        r = m - p  # sites not yet absorbed
        T = np.tensordot(PAULI, T, axes=([2, 1], [p, p + r]))
    A = np.transpose(T, tuple(range(m - 1, -1, -1)))
    if np.max(np.abs(A.imag)) > 1e-10:
        raise TgmatError("coefficient tensor has a non-real entry; invalid state")
    A = np.ascontiguousarray(A.real)
    if abs(A[(0,) * m] - 1.0) > 1e-10:
        raise TgmatError("coefficient tensor trace entry differs from 1")
    for axis in range(m - 1):
        perm = list(range(m))
        perm[axis], perm[axis + 1] = perm[axis + 1], perm[axis]
        if np.max(np.abs(A - np.transpose(A, perm))) > 1e-10:
            raise TgmatError("coefficient tensor is not permutation symmetric")
    return tz.DenseTensor(A)


def reconstruct_state(coeff: tz.DenseTensor) -> SpinState:
    """Invert the coefficient map: rho = 2^{-m} sum_mu A_mu S_mu."""
    if coeff.dim != 4:
        raise TgmatError("coefficient tensor must have dimension 4")
    m = coeff.order
    T = np.asarray(coeff.entries, dtype=complex)
    for _ in range(m):
        T = np.tensordot(T, PAULI, axes=([0], [0]))
    # axes are now (b1, a1, ..., bm, am); regroup rows and columns
    order = tuple(range(0, 2 * m, 2)) + tuple(range(1, 2 * m, 2))
    K = np.transpose(T, order).reshape(2 ** m, 2 ** m)
    V = dicke_isometry(m)
    rho = V.conj().T @ K @ V / 2 ** m
    return spin_state(m, rho)


def coherent_direction(theta: float, phi: float) -> np.ndarray:
    """The 4-vector (1, n) of a Bloch direction."""
    return np.array([1.0, np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def coherent_state(m: int, theta: float, phi: float) -> SpinState:
    """Pure spin coherent state pointing along (theta, phi).

    Components over |j, l>, l = j..-j:  sqrt(C(2j, j+l)) sin(theta/2)^{j-l}
    (cos(theta/2) e^{-i phi})^{j+l}.
    """
    if not (0.0 <= theta <= np.pi) or not (0.0 <= phi < 2.0 * np.pi):
        raise BadAngle(f"need theta in [0, pi] and phi in [0, 2*pi), got ({theta}, {phi})")
    ks = np.arange(m + 1)  # k = j - l excitations
    amps = (np.sqrt([comb(m, int(k)) for k in ks])
            * np.sin(theta / 2.0) ** ks
            * np.cos(theta / 2.0) ** (m - ks)
            * np.exp(-1j * phi * (m - ks)))
    return spin_state(m, np.outer(amps, amps.conj()))


def classical_mixture(m: int, weights, directions) -> SpinState:
    """Convex mixture of coherent states; weights positive and summing to 1."""
    weights = np.asarray(weights, dtype=float)
    directions = list(directions)
    if len(weights) != len(directions) or len(weights) == 0:
        raise WeightMismatch("weights and directions must have equal nonzero length")
    if np.any(weights <= 0.0):
        raise WeightMismatch("weights must be positive")
    if abs(weights.sum() - 1.0) > 1e-12:
        raise WeightMismatch(f"weights sum to {weights.sum():.6g}, expected 1")
    rho = np.zeros((m + 1, m + 1), dtype=complex)
    for w, (theta, phi) in zip(weights, directions):
        rho += w * coherent_state(m, theta, phi).rho
    return spin_state(m, rho)


@dataclass(frozen=True)
class ClassicalityVerdict:
    """Outcome of the classicality certificate.

    ``verdict`` is 'certified_classical' or 'inconclusive'; ``rule`` is
    'symmetric_H' or 'strongly_symmetric_H' when certified.  Inconclusive
    carries a reason and is never a nonclassicality claim.
    """

    verdict: str
    rule: Optional[str] = None
    reason: Optional[str] = None
    symmetry: Optional[str] = None
    diagonal: Optional[np.ndarray] = None
    generated: Optional[np.ndarray] = None
    certificate: Optional[dom.Certificate] = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified_classical"


def certify_classicality(state: SpinState) -> ClassicalityVerdict:
    """Certify a spin-j state classical through its coefficient tensor.

    Pipeline: require integer j (even m); extract the coefficient tensor;
    require nonnegative diagonal entries; run the H-tensor cascade on the
    generated 4x4 matrix.  When the tensor is additionally strongly
    symmetric with |a_{kk...k}| >= s_kk the stronger rule name is reported.
    """
    if state.m % 2 == 1:
        return ClassicalityVerdict("inconclusive", reason=f"odd order 2j = {state.m} (j is not an integer)")
    coeff = coefficient_tensor(state)
    diag = tz.diagonal(coeff)
    G = tz.generated_matrix(coeff)
    symmetry = tz.classify_symmetry(coeff)
    if np.min(diag) < -1e-12:
        return ClassicalityVerdict(
            "inconclusive",
            reason=f"negative diagonal entry {np.min(diag):.3e}",
            symmetry=symmetry, diagonal=diag, generated=G.data,
        )
    cert = dom.certify_h_tensor(coeff)
    if not cert.certified:
        return ClassicalityVerdict(
            "inconclusive", reason=f"H-tensor cascade inconclusive ({cert.note})",
            symmetry=symmetry, diagonal=diag, generated=G.data, certificate=cert,
        )
    s_diag = np.diag(tz.s_matrix(coeff))
    rule = "symmetric_H"
    if symmetry == "strongly_symmetric" and np.all(np.abs(diag) >= s_diag):
        rule = "strongly_symmetric_H"
    return ClassicalityVerdict(
        "certified_classical", rule=rule, symmetry=symmetry,
        diagonal=diag, generated=G.data, certificate=cert,
    )


def state_from_json(obj: dict) -> SpinState:
    """Parse either state format.

    Density form: {"m": 2j, "rho_re": [[...]], "rho_im": [[...]]} with
    rho_im optional.  Mixture form: {"m": 2j, "components": [{"w": ...,
    "theta": ..., "phi": ...}, ...]}.
    """
    try:
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError):
        raise TgmatError("state file needs an integer 'm'")
    if "components" in obj:
        comps = obj["components"]
        try:
            weights = [float(c["w"]) for c in comps]
            directions = [(float(c["theta"]), float(c["phi"])) for c in comps]
        except (KeyError, TypeError, ValueError):
            raise TgmatError("each component needs numeric 'w', 'theta', 'phi'")
        return classical_mixture(m, weights, directions)
    try:
        re = np.asarray(obj["rho_re"], dtype=float)
    except (KeyError, TypeError, ValueError):
        raise TgmatError("state file needs 'rho_re' (or 'components')")
    im = np.asarray(obj.get("rho_im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise TgmatError("rho_re and rho_im must have the same shape")
    return spin_state(m, re + 1j * im)
