"""One-particle reduced density matrices and local invariants.

Covers: partial-trace RDMs with their spectra, the squared norm of the
momentum map (shifted RDMs), single-mode flattening ranks, Cayley's 2x2x2
hyperdeterminant, spectrum comparison, and an explicit local-unitary witness
for two-particle states with matching singular values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecMismatch
from .systems import (
    DISTINGUISHABLE,
    SystemSpec,
    Tensor,
    as_state,
    flatten,
    full_array,
)


@dataclass
class RdmSet:
    """One-particle reduced density matrices of a state (unit trace each).

    Distinguishable states carry one matrix per factor; bosonic/fermionic
    states a single matrix (all slots agree by symmetry).
    """

    spec: SystemSpec
    rho: list
    spectra: list

    def __iter__(self):
        return iter(self.rho)


def _partial_trace_first(arr):
    """rho on mode 0 of a full unit-norm array."""
    L = arr.ndim
    axes = list(range(1, L))
    rho = np.tensordot(arr, arr.conj(), axes=(axes, axes))
    return (rho + rho.conj().T) / 2.0


def rdm(state):
    """Reduced one-particle density matrices with sorted spectra."""
    state = as_state(state)
    spec = state.spec
    arr = full_array(state.rep)
    arr = arr / np.linalg.norm(arr)
    rhos = []
    if spec.kind == DISTINGUISHABLE:
        for j in range(spec.L):
            moved = np.moveaxis(arr, j, 0)
            rhos.append(_partial_trace_first(moved))
    else:
        rhos.append(_partial_trace_first(arr))
    spectra = [np.sort(np.linalg.eigvalsh(r))[::-1] for r in rhos]
    return RdmSet(spec, rhos, spectra)


def mu_norm_sq(state):
    """Squared norm of the momentum map: (1/4) sum_i tr((rho_i - I/n_i)^2)."""
    rs = rdm(state)
    total = 0.0
    for rho in rs.rho:
        n = rho.shape[0]
        shifted = rho - np.eye(n) / n
        total += float(np.trace(shifted @ shifted).real)
    return total / 4.0


def mlrank(state, tol=1e-8):
    """Vector of single-mode flattening ranks (distinguishable states)."""
    state = as_state(state)
    if state.spec.kind != DISTINGUISHABLE:
        raise SpecMismatch("mlrank is defined for distinguishable states")
    ranks = []
    for j in range(state.spec.L):
        sv = np.linalg.svd(flatten(state.rep, [j]), compute_uv=False)
        ranks.append(int(np.sum(sv > tol * sv[0])))
    return tuple(ranks)


def hyperdet_222(state):
    """Cayley's degree-4 hyperdeterminant of a 2x2x2 coefficient array.

    Evaluated on the entries exactly as given (pass a Tensor to use raw
    coefficients; a ProjectiveState evaluates on its unit-norm
    representative).  Vanishes on the W orbit and the degenerate orbits,
    and is nonzero on the generic (GHZ) orbit.
    """
    t = state.rep if not isinstance(state, Tensor) else state
    if t.spec.kind != DISTINGUISHABLE or t.spec.dims != (2, 2, 2):
        raise SpecMismatch("hyperdet_222 needs a (2,2,2) distinguishable tensor")
    a = np.asarray(t.data)

    def p(i, j, k):
        return a[i, j, k]

    d1 = (
        p(0, 0, 0) ** 2 * p(1, 1, 1) ** 2
        + p(0, 0, 1) ** 2 * p(1, 1, 0) ** 2
        + p(0, 1, 0) ** 2 * p(1, 0, 1) ** 2
        + p(1, 0, 0) ** 2 * p(0, 1, 1) ** 2
    )
    pairs = [
        p(0, 0, 0) * p(1, 1, 1),
        p(0, 1, 1) * p(1, 0, 0),
        p(1, 0, 1) * p(0, 1, 0),
        p(1, 1, 0) * p(0, 0, 1),
    ]
    d2 = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            d2 += pairs[i] * pairs[j]
    d3 = p(0, 0, 0) * p(0, 1, 1) * p(1, 0, 1) * p(1, 1, 0) + p(0, 0, 1) * p(0, 1, 0) * p(1, 0, 0) * p(1, 1, 1)
    return complex(d1 - 2 * d2 + 4 * d3)


def spectra_equal(a, b, tol=1e-10):
    """Whether two RdmSets have componentwise equal sorted spectra."""
    if a.spec != b.spec:
        raise SpecMismatch("spectra comparison needs matching specs")
    if len(a.spectra) != len(b.spectra):
        return False
    return all(
        np.allclose(sa, sb, rtol=0, atol=tol) for sa, sb in zip(a.spectra, b.spectra)
    )


def lu_witness(a, b, tol=1e-8):
    """Local unitaries (U, V) with (U x V) a = b for two-particle states.

    Exists iff the two distinguishable L=2 states share their singular-value
    spectrum; returns None when the spectra differ beyond ``tol``.
    """
    a, b = as_state(a), as_state(b)
    if a.spec != b.spec or a.spec.kind != DISTINGUISHABLE or a.spec.L != 2:
        raise SpecMismatch("lu_witness handles pairs of distinguishable L=2 states")
    Ma = np.asarray(a.rep.data)
    Mb = np.asarray(b.rep.data)
    Ua, sa, Vha = np.linalg.svd(Ma)
    Ub, sb, Vhb = np.linalg.svd(Mb)
    if not np.allclose(sa, sb, rtol=0, atol=tol):
        return None
    U = Ub @ Ua.conj().T
    V = (Vha.conj().T @ Vhb).T
    return U, V
