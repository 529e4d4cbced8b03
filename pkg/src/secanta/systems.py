"""Dense complex tensors for three state-space families.

Three kinds of composite system are supported:

* ``distinguishable`` -- L factors of possibly different dimensions; a state
  is a dense complex array of shape ``dims``.
* ``bosonic`` -- L indistinguishable symmetric particles with a single local
  dimension n; a state is stored packed over weakly increasing index tuples.
* ``fermionic`` -- L antisymmetric particles; packed over strictly increasing
  tuples, with the usual sign convention for permuted indices.

Packed entries carry no multinomial weights: ``expand_full`` replicates the
canonical value into every permuted slot (with signs for fermions), so
pack/expand is an exact bijection and the L-th power of a vector is literally
its L-fold outer power.  Inner products and norms are always those of the
embedding (full) tensor space, which on packed storage means multiplicity
weights L!/prod(m_i!) for bosons and L! for fermions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    AllZero,
    DependentFermionVectors,
    DimensionMismatch,
    EmptyOrFullModeSet,
    IndexOutOfRange,
    RankDeficientInjection,
    RepeatedFermionIndex,
    SpecMismatch,
)

DISTINGUISHABLE = "distinguishable"
BOSONIC = "bosonic"
FERMIONIC = "fermionic"
KINDS = (DISTINGUISHABLE, BOSONIC, FERMIONIC)


@dataclass(frozen=True)
class SystemSpec:
    """Family kind, particle count and local dimension(s).

    ``dims`` has length L for distinguishable systems and length 1 (the
    single-particle dimension n) for bosonic/fermionic ones.
    """

    kind: str
    L: int
    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.kind not in KINDS:
            raise SpecMismatch(f"unknown kind {self.kind!r}")
        if self.L < 1:
            raise SpecMismatch("particle count L must be positive")
        if any(d < 1 for d in self.dims):
            raise SpecMismatch("local dimensions must be positive")
        if self.kind == DISTINGUISHABLE:
            if len(self.dims) != self.L:
                raise SpecMismatch("distinguishable spec needs one dimension per factor")
        else:
            if len(self.dims) != 1:
                raise SpecMismatch("bosonic/fermionic specs carry a single local dimension")
            if self.kind == FERMIONIC and self.L > self.dims[0]:
                raise SpecMismatch("fermionic spec needs L <= n (space is zero otherwise)")

    @property
    def n(self):
        """Single-particle dimension (bosonic/fermionic only)."""
        if self.kind == DISTINGUISHABLE:
            raise SpecMismatch("n is only defined for bosonic/fermionic specs")
        return self.dims[0]

    @property
    def full_dims(self):
        """Shape of the embedding L-fold tensor space."""
        if self.kind == DISTINGUISHABLE:
            return self.dims
        return (self.dims[0],) * self.L

    @property
    def ambient_dim(self):
        """Dimension N of the state space."""
        if self.kind == DISTINGUISHABLE:
            return int(np.prod(self.dims))
        n = self.dims[0]
        if self.kind == BOSONIC:
            return math.comb(self.L + n - 1, self.L)
        return math.comb(n, self.L)

    @property
    def coherent_dim(self):
        """Complex dimension of the variety of coherent states."""
        if self.kind == DISTINGUISHABLE:
            return int(sum(d - 1 for d in self.dims))
        n = self.dims[0]
        if self.kind == BOSONIC:
            return n - 1
        return self.L * (n - self.L)


def distinguishable(*dims):
    return SystemSpec(DISTINGUISHABLE, len(dims), tuple(dims))


def bosonic(n, L):
    return SystemSpec(BOSONIC, L, (n,))


def fermionic(n, L):
    return SystemSpec(FERMIONIC, L, (n,))


@lru_cache(maxsize=None)
def canonical_tuples(kind, n, L):
    """Lexicographically ordered canonical index tuples for packed storage."""
    if kind == BOSONIC:
        return tuple(itertools.combinations_with_replacement(range(n), L))
    if kind == FERMIONIC:
        return tuple(itertools.combinations(range(n), L))
    raise SpecMismatch("canonical tuples exist for bosonic/fermionic kinds only")


@lru_cache(maxsize=None)
def canonical_positions(kind, n, L):
    return {t: i for i, t in enumerate(canonical_tuples(kind, n, L))}


@lru_cache(maxsize=None)
def packed_weights(kind, n, L):
    """Multiplicity of each canonical tuple in the embedding space."""
    tuples = canonical_tuples(kind, n, L)
    if kind == FERMIONIC:
        return np.full(len(tuples), float(math.factorial(L)))
    out = np.empty(len(tuples))
    for i, t in enumerate(tuples):
        m = math.factorial(L)
        for _, grp in itertools.groupby(t):
            m //= math.factorial(sum(1 for _ in grp))
        out[i] = m
    return out


def sort_with_sign(idx):
    """Sort an index tuple, returning (sorted tuple, permutation sign)."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


class Tensor:
    """Immutable dense state tensor tagged with its SystemSpec.

    Distinguishable data has shape ``spec.dims``; bosonic/fermionic data is a
    packed 1-D array over the canonical tuples of :func:`canonical_tuples`.
    """

    __slots__ = ("spec", "data")

    def __init__(self, spec, data, _checked=False):
        data = np.asarray(data, dtype=complex)
        if spec.kind == DISTINGUISHABLE:
            if data.shape != spec.dims:
                raise DimensionMismatch(f"expected shape {spec.dims}, got {data.shape}")
        else:
            if data.shape != (spec.ambient_dim,):
                raise DimensionMismatch(
                    f"expected packed length {spec.ambient_dim}, got {data.shape}")
        if not _checked and not np.any(data):
            raise AllZero("state tensor has no nonzero entry")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @property
    def vector(self):
        """Packed coordinates as a flat vector."""
        return self.data.reshape(-1)

    @property
    def weights(self):
        if self.spec.kind == DISTINGUISHABLE:
            return np.ones(self.vector.size)
        return packed_weights(self.spec.kind, self.spec.n, self.spec.L)

    def inner(self, other):
        """Embedding-space inner product <self, other> (conjugate-linear in self)."""
        if other.spec != self.spec:
            raise SpecMismatch("inner product needs matching specs")
        return complex(np.vdot(self.vector, self.weights * other.vector))

    def norm(self):
        return float(np.sqrt(np.sum(self.weights * np.abs(self.vector) ** 2)))

    def unit(self):
        return Tensor(self.spec, self.data / self.norm(), _checked=True)

    def scaled(self, c):
        return Tensor(self.spec, self.data * c, _checked=True)

    def __add__(self, other):
        if other.spec != self.spec:
            raise SpecMismatch("addition needs matching specs")
        return Tensor(self.spec, self.data + other.data, _checked=True)

    def __sub__(self, other):
        if other.spec != self.spec:
            raise SpecMismatch("subtraction needs matching specs")
        return Tensor(self.spec, self.data - other.data, _checked=True)

    def allclose(self, other, tol=1e-12):
        return self.spec == other.spec and bool(
            np.allclose(self.data, other.data, rtol=0, atol=tol))

    def __repr__(self):
        nz = int(np.count_nonzero(self.data))
        return f"Tensor({self.spec.kind}, L={self.spec.L}, dims={self.spec.dims}, nnz={nz})"


def make_tensor(spec, sparse_entries):
    """Build a packed Tensor from (multi-index, coefficient) pairs.

    Bosonic entries with permuted indices accumulate into the canonical slot;
    fermionic ones accumulate with the permutation sign.  Each listed pair is
    a coefficient of the corresponding (monomial / wedge) basis element, so
    listing all three permutations of a bosonic index triples the slot value.
    """
    entries = list(sparse_entries.items()) if isinstance(sparse_entries, dict) else list(sparse_entries)
    if spec.kind == DISTINGUISHABLE:
        data = np.zeros(spec.dims, dtype=complex)
        for idx, coeff in entries:
            idx = tuple(int(i) for i in idx)
            if len(idx) != spec.L:
                raise DimensionMismatch(f"index {idx} has wrong length")
            if any(not 0 <= i < d for i, d in zip(idx, spec.dims)):
                raise IndexOutOfRange(f"index {idx} outside dims {spec.dims}")
            data[idx] += coeff
        if not np.any(data):
            raise AllZero("all entries cancelled or none given")
        return Tensor(spec, data, _checked=True)

    n = spec.n
    pos = canonical_positions(spec.kind, n, spec.L)
    data = np.zeros(spec.ambient_dim, dtype=complex)
    for idx, coeff in entries:
        idx = tuple(int(i) for i in idx)
        if len(idx) != spec.L:
            raise DimensionMismatch(f"index {idx} has wrong length")
        if any(not 0 <= i < n for i in idx):
            raise IndexOutOfRange(f"index {idx} outside local dimension {n}")
        if spec.kind == FERMIONIC:
            if len(set(idx)) != len(idx):
                raise RepeatedFermionIndex(f"repeated index in fermionic tuple {idx}")
            canon, sign = sort_with_sign(idx)
            data[pos[canon]] += sign * coeff
        else:
            data[pos[tuple(sorted(idx))]] += coeff
    if not np.any(data):
        raise AllZero("all entries cancelled or none given")
    return Tensor(spec, data, _checked=True)


def expand_full(t):
    """Expand a packed bosonic/fermionic tensor into the full L-fold array."""
    if t.spec.kind == DISTINGUISHABLE:
        raise SpecMismatch("expand_full takes a bosonic or fermionic tensor")
    n, L = t.spec.n, t.spec.L
    full = np.zeros((n,) * L, dtype=complex)
    for value, canon in zip(t.data, canonical_tuples(t.spec.kind, n, L)):
        if value == 0:
            continue
        if t.spec.kind == BOSONIC:
            for perm in set(itertools.permutations(canon)):
                full[perm] = value
        else:
            for perm in itertools.permutations(canon):
                _, sign = sort_with_sign(perm)
                full[perm] = sign * value
    return Tensor(distinguishable(*((n,) * L)), full, _checked=True)


def pack_full(spec, full):
    """Read the canonical slots of a full array back into packed form."""
    full = np.asarray(full, dtype=complex)
    if spec.kind == DISTINGUISHABLE:
        return Tensor(spec, full, _checked=True)
    tuples = canonical_tuples(spec.kind, spec.n, spec.L)
    data = np.array([full[t] for t in tuples], dtype=complex)
    return Tensor(spec, data, _checked=True)


def full_array(t):
    """Full L-fold ndarray of any Tensor (expansion for packed kinds)."""
    if t.spec.kind == DISTINGUISHABLE:
        return np.asarray(t.data)
    return np.asarray(expand_full(t).data)


def flatten(t, modes):
    """Matrix flattening of a distinguishable tensor.

    ``modes`` is a nonempty proper subset of the 0-based mode axes; it indexes
    the rows, the complementary modes index the columns, both in ascending
    mode order (lexicographic multi-index order).
    """
    if t.spec.kind != DISTINGUISHABLE:
        raise SpecMismatch("flatten needs a distinguishable tensor; expand first")
    L = t.spec.L
    modes = sorted(set(int(m) for m in modes))
    if not modes or len(modes) >= L:
        raise EmptyOrFullModeSet("modes must be a nonempty proper subset")
    if any(not 0 <= m < L for m in modes):
        raise IndexOutOfRange(f"modes {modes} outside 0..{L - 1}")
    rest = [m for m in range(L) if m not in modes]
    arr = np.transpose(np.asarray(t.data), modes + rest)
    rows = int(np.prod([t.spec.dims[m] for m in modes]))
    return arr.reshape(rows, -1)


class ProjectiveState:
    """A Tensor up to nonzero complex scale.

    The stored representative has unit embedding norm and its first nonzero
    canonical entry (lexicographic order) made real positive.
    """

    __slots__ = ("rep",)

    def __init__(self, tensor):
        if isinstance(tensor, ProjectiveState):
            tensor = tensor.rep
        vec = tensor.vector
        scale = np.max(np.abs(vec))
        if scale == 0:
            raise AllZero("projective state needs a nonzero tensor")
        nz = np.nonzero(np.abs(vec) > 1e-13 * scale)[0]
        pivot = vec[nz[0]]
        phase = pivot / abs(pivot)
        data = tensor.data / (phase * tensor.norm())
        object.__setattr__(self, "rep", Tensor(tensor.spec, data, _checked=True))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveState is immutable")

    @property
    def spec(self):
        return self.rep.spec

    def __repr__(self):
        return f"ProjectiveState({self.rep!r})"


def as_state(x):
    """Coerce a Tensor or ProjectiveState to a ProjectiveState."""
    return x if isinstance(x, ProjectiveState) else ProjectiveState(x)


def proj_distance(a, b):
    """Fubini--Study-compatible distance sqrt(1 - |<a,b>|^2).

    Computed as the norm of the component of ``a`` orthogonal to ``b`` (unit
    representatives), which stays accurate for nearly equal states.
    """
    a, b = as_state(a), as_state(b)
    if a.spec != b.spec:
        raise SpecMismatch("proj_distance needs matching specs")
    w = a.rep.weights
    av, bv = a.rep.vector, b.rep.vector
    ip = np.vdot(bv, w * av)
    resid = av - ip * bv
    return float(np.sqrt(np.sum(w * np.abs(resid) ** 2)))


def _check_injection(mat, n_small, n_big):
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (n_big, n_small):
        raise DimensionMismatch(f"injection must be {n_big}x{n_small}, got {mat.shape}")
    if n_big < n_small:
        raise DimensionMismatch("injection target dimension is too small")
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size < n_small or sv[n_small - 1] <= 1e-10 * sv[0]:
        raise RankDeficientInjection("injection is not full column rank")
    return mat


def apply_local(t, mats):
    """Act on a tensor by local linear maps.

    Distinguishable: ``mats`` is one matrix per factor.  Bosonic/fermionic: a
    single matrix applied in every slot (the induced map on the symmetric or
    exterior power).  Rectangular maps change the local dimensions.
    """
    if t.spec.kind == DISTINGUISHABLE:
        mats = list(mats)
        if len(mats) != t.spec.L:
            raise DimensionMismatch("need one matrix per factor")
        arr = np.asarray(t.data)
        for j, m in enumerate(mats):
            m = np.asarray(m, dtype=complex)
            if m.shape[1] != arr.shape[j]:
                raise DimensionMismatch(f"matrix {j} does not match mode dimension")
            arr = np.moveaxis(np.tensordot(m, arr, axes=(1, j)), 0, j)
        return Tensor(distinguishable(*arr.shape), arr, _checked=True)

    m = np.asarray(mats, dtype=complex)
    if m.ndim != 2 or m.shape[1] != t.spec.n:
        raise DimensionMismatch("single-particle map does not match local dimension")
    target = SystemSpec(t.spec.kind, t.spec.L, (m.shape[0],))
    arr = np.asarray(expand_full(t).data)
    for j in range(t.spec.L):
        arr = np.moveaxis(np.tensordot(m, arr, axes=(1, j)), 0, j)
    return pack_full(target, arr)


def embed(t, target_spec, injections):
    """Embed a tensor into a larger space by full-column-rank local maps.

    ``injections``: one matrix per factor (distinguishable) or a single matrix
    (bosonic/fermionic).  The image is the tensor transported by the induced
    map on the tensor/symmetric/exterior power; ranks are preserved.
    """
    if target_spec.kind != t.spec.kind or target_spec.L != t.spec.L:
        raise SpecMismatch("embedding cannot change kind or particle count")
    if t.spec.kind == DISTINGUISHABLE:
        mats = [
            _check_injection(m, t.spec.dims[j], target_spec.dims[j])
            for j, m in enumerate(injections)
        ]
        return apply_local(t, mats)
    mat = _check_injection(injections, t.spec.n, target_spec.n)
    out = apply_local(t, mat)
    if out.spec != target_spec:
        raise SpecMismatch("injection does not land in the target spec")
    return out
