"""Coherent-state constructors, tangent spaces, and secant-dimension tables.

Coherent states are the points of the unique closed symmetry-group orbit:
simple tensors (Segre variety) for distinguishable particles, L-th powers
(Veronese) for bosons, decomposable wedges (Pluecker image of the
Grassmannian) for fermions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DependentFermionVectors, DimensionMismatch, SpecMismatch
from .systems import (
    BOSONIC,
    DISTINGUISHABLE,
    FERMIONIC,
    SystemSpec,
    Tensor,
    canonical_tuples,
    distinguishable,
    pack_full,
)


def _outer(vectors):
    out = np.asarray(vectors[0], dtype=complex)
    for v in vectors[1:]:
        out = np.multiply.outer(out, np.asarray(v, dtype=complex))
    return out


def coherent_point(spec, local_vectors):
    """The coherent state v1 x ... x vL, v^L, or u1 ^ ... ^ uL.

    Distinguishable specs take L vectors (one per factor), bosonic specs a
    single vector, fermionic specs L linearly independent vectors.
    """
    if spec.kind == DISTINGUISHABLE:
        vs = [np.asarray(v, dtype=complex) for v in local_vectors]
        if len(vs) != spec.L:
            raise DimensionMismatch("need one local vector per factor")
        for v, d in zip(vs, spec.dims):
            if v.shape != (d,):
                raise DimensionMismatch("local vector does not match factor dimension")
        return Tensor(spec, _outer(vs))

    n = spec.n
    if spec.kind == BOSONIC:
        v = np.asarray(local_vectors, dtype=complex)
        if v.ndim == 2 and v.shape[0] == 1:
            v = v[0]
        if v.shape != (n,):
            raise DimensionMismatch("bosonic coherent point takes a single vector")
        tuples = canonical_tuples(BOSONIC, n, spec.L)
        data = np.array([np.prod(v[list(t)]) for t in tuples])
        return Tensor(spec, data)

    vs = [np.asarray(v, dtype=complex) for v in local_vectors]
    if len(vs) != spec.L:
        raise DimensionMismatch("fermionic coherent point takes L vectors")
    A = np.stack(vs, axis=1)  # n x L, columns are the vectors
    if A.shape[0] != n:
        raise DimensionMismatch("local vectors do not match the single-particle dimension")
    tuples = canonical_tuples(FERMIONIC, n, spec.L)
    data = np.array([np.linalg.det(A[list(t), :]) for t in tuples])
    scale = float(np.prod(np.linalg.norm(A, axis=0)))
    if np.max(np.abs(data)) <= 1e-12 * max(scale, 1e-300):
        raise DependentFermionVectors("wedge of dependent vectors is zero")
    return Tensor(spec, data)


def random_coherent(spec, seed=0):
    """Coherent point at standard-Gaussian local vectors (seeded).

    Fermionic draws are repeated until the vector matrix has condition
    number below 1e6.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    def draw(d):
        return rng.standard_normal(d) + 1j * rng.standard_normal(d)

    if spec.kind == DISTINGUISHABLE:
        return coherent_point(spec, [draw(d) for d in spec.dims])
    if spec.kind == BOSONIC:
        return coherent_point(spec, draw(spec.n))
    while True:
        vs = [draw(spec.n) for _ in range(spec.L)]
        if np.linalg.cond(np.stack(vs, axis=1)) < 1e6:
            return coherent_point(spec, vs)


def tangent_space(spec, local_vectors):
    """Spanning set of the affine tangent space at a coherent point.

    Returns the point itself plus all single-slot basis substitutions
    (symmetrized for bosons), with exact duplicates and zero tensors removed.
    At generic points the span has dimension coherent_dim + 1.
    """
    point = coherent_point(spec, local_vectors)
    out = [point]

    def push(t):
        for prev in out:
            if np.array_equal(prev.data, t.data):
                return
        out.append(t)

    if spec.kind == DISTINGUISHABLE:
        vs = [np.asarray(v, dtype=complex) for v in local_vectors]
        for j in range(spec.L):
            for i in range(spec.dims[j]):
                slot = [v.copy() for v in vs]
                slot[j] = np.eye(spec.dims[j])[i].astype(complex)
                arr = _outer(slot)
                if np.any(arr):
                    push(Tensor(spec, arr, _checked=True))
        return out

    n = spec.n
    if spec.kind == BOSONIC:
        v = np.asarray(local_vectors, dtype=complex).reshape(n)
        full_spec = distinguishable(*((n,) * spec.L))
        for i in range(n):
            e = np.eye(n)[i].astype(complex)
            acc = np.zeros((n,) * spec.L, dtype=complex)
            for j in range(spec.L):
                slot = [v] * spec.L
                slot = list(slot)
                slot[j] = e
                acc = acc + _outer(slot)
            acc /= spec.L  # so the substitution by v itself is exactly the point
            if np.any(acc):
                push(pack_full(spec, acc))
        return out

    vs = [np.asarray(v, dtype=complex) for v in local_vectors]
    for j in range(spec.L):
        for i in range(n):
            slot = [v.copy() for v in vs]
            slot[j] = np.eye(n)[i].astype(complex)
            try:
                t = coherent_point(spec, slot)
            except DependentFermionVectors:
                continue
            push(t)
    return out


@dataclass
class SecantProfile:
    """Expected (and, where known, actual) dimension of a secant variety."""

    spec: SystemSpec
    r: int
    expected_dim: int
    ambient_dim_minus_1: int
    known_actual_dim: int | None = None
    defective: bool | None = None

    @property
    def known_defect(self):
        if self.known_actual_dim is None:
            return None
        return self.expected_dim - self.known_actual_dim


AH_SPORADIC = ((3, 4), (4, 4), (5, 4), (5, 3))  # (n, L) with one defective secant


def ah_exceptional(n, L):
    """Whether (n, L) is on the Alexander--Hirschowitz exception list."""
    if n < 2 or L < 2:
        raise SpecMismatch("ah_exceptional is defined for n >= 2, L >= 2")
    return L == 2 or (n, L) in AH_SPORADIC


def expected_generic_rank(spec):
    """ceil(N / (dim X + 1)), the expected typical rank."""
    return -(-spec.ambient_dim // (spec.coherent_dim + 1))


def expected_secant_dim(spec, r):
    """Expected dimension min(r dimX + r - 1, N - 1), with known actual values.

    Known values cover: all-qubit systems (non-defective except the four-qubit
    third secant, of dimension 13); Veronese varieties off the
    Alexander--Hirschowitz exception list; Grassmannians with L >= 3 and
    Lr <= n.  Everything else is left to be measured by secant_dim.
    """
    if r < 1:
        raise SpecMismatch("secant order r must be >= 1")
    N = spec.ambient_dim
    dimX = spec.coherent_dim
    expected = min(r * dimX + r - 1, N - 1)
    prof = SecantProfile(spec, r, expected, N - 1)

    if spec.kind == DISTINGUISHABLE:
        if all(d == 2 for d in spec.dims):
            if (spec.L, r) == (4, 3):
                prof.known_actual_dim, prof.defective = 13, True
            else:
                prof.known_actual_dim, prof.defective = expected, False
        return prof

    if spec.kind == BOSONIC:
        n, L = spec.n, spec.L
        if L == 1 or n == 1:
            prof.known_actual_dim, prof.defective = expected, False
        elif L == 2:
            if r == 1 or r >= n:
                prof.known_actual_dim, prof.defective = expected, False
            else:
                prof.defective = True  # symmetric matrix rank varieties
        elif (n, L) in AH_SPORADIC:
            if r == expected_generic_rank(spec):
                prof.defective = True
            else:
                prof.known_actual_dim, prof.defective = expected, False
        else:
            prof.known_actual_dim, prof.defective = expected, False
        return prof

    n, L = spec.n, spec.L
    if L == 1 or L == n:
        prof.known_actual_dim, prof.defective = expected, False
    elif L == 2:
        rg = n // 2
        if 1 < r < rg:
            prof.defective = True  # antisymmetric matrix rank varieties
        elif r == 1 or r >= rg:
            prof.known_actual_dim, prof.defective = expected, False
    elif L >= 3 and L * r <= n:
        prof.known_actual_dim, prof.defective = expected, False
    return prof


def is_spherical(spec):
    """Whether the symmetry group acts spherically on the state space.

    Distinguishable and bosonic systems: true exactly for L <= 2.  Fermionic
    systems: true exactly for min(L, n - L) <= 2 (the two wedge powers of
    complementary degree carry the same rank behaviour).
    """
    if spec.kind in (DISTINGUISHABLE, BOSONIC):
        return spec.L <= 2
    return min(spec.L, spec.n - spec.L) <= 2
