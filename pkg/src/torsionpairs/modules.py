"""Right modules over an FDAlgebra and the homological toolkit.

A module stores one action matrix per algebra basis element, acting on
coordinate *row* vectors (``m . b = m @ action[b]``).  The same
representation works over algebras presented by a quiver and over
corner algebras eAe, whose natural generators are not arrows.

Submodules are handled as canonical (RREF) row bases inside the ambient
coordinate space; quotients pick the non-pivot coordinates.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import gf
from .algebra import FDAlgebra, corner_algebra, off_corner_basis_indices

DEFAULT_ENUM_CAP = 1 << 16


class EnumerationCapExceeded(RuntimeError):
    """A finite hom/endomorphism/submodule scan would exceed the configured cap."""


class RightModule:
    def __init__(self, algebra: FDAlgebra, actions: np.ndarray):
        self.algebra = algebra
        self.actions = np.asarray(actions, dtype=np.int64) % algebra.p
        if self.actions.shape[0] != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        self.dim = self.actions.shape[1]
        if self.actions.shape != (algebra.dim, self.dim, self.dim):
            raise ValueError("action matrices must be square and equal-sized")
        self._cache = {}

    @property
    def p(self):
        return self.algebra.p

    def action(self, i):
        return self.actions[i]

    @property
    def dim_vector(self):
        if "dimvec" not in self._cache:
            A = self.algebra
            self._cache["dimvec"] = tuple(
                gf.rank(self.actions[A.idem_index[x]], self.p) for x in A.vertices
            )
        return self._cache["dimvec"]

    def vertex_rows(self, x):
        """Canonical row basis of M e_x."""
        return gf.row_space(self.actions[self.algebra.idem_index[x]], self.p)

    def validate(self):
        """Check the module axioms against the structure constants."""
        A = self.algebra
        ident = sum(self.actions[A.idem_index[x]] for x in A.vertices) % self.p
        if not np.array_equal(ident, gf.identity(self.dim)):
            raise ValueError("idempotent actions do not sum to the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = (self.actions[i] @ self.actions[j]) % self.p
                rhs = np.tensordot(A.struct[i, j], self.actions, axes=(0, 0)) % self.p
                if not np.array_equal(lhs, rhs):
                    raise ValueError(
                        f"action violates structure constants at ({A.basis_label(i)}, {A.basis_label(j)})"
                    )
        if sum(self.dim_vector) != self.dim:
            raise ValueError("idempotent images do not decompose the space")
        return True

    def key(self):
        return (self.dim, self.actions.tobytes())

    def __repr__(self):
        return f"RightModule(dim={self.dim}, dimvec={self.dim_vector})"


class ModuleMap:
    """A homomorphism source -> target, as a (source.dim, target.dim) matrix."""

    def __init__(self, source: RightModule, target: RightModule, matrix):
        self.source = source
        self.target = target
        self.matrix = np.asarray(matrix, dtype=np.int64).reshape(source.dim, target.dim) % source.p

    @property
    def p(self):
        return self.source.p

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self followed by other."""
        return ModuleMap(self.source, other.target, (self.matrix @ other.matrix) % self.p)

    def image_rows(self):
        return gf.row_space(self.matrix, self.p)

    def kernel_rows(self):
        return gf.left_nullspace_rows(self.matrix, self.p)

    def is_surjective(self):
        return gf.rank(self.matrix, self.p) == self.target.dim

    def is_injective_map(self):
        return gf.rank(self.matrix, self.p) == self.source.dim

    def validate(self):
        A = self.source.algebra
        for g in A.generator_indices():
            lhs = (self.source.actions[g] @ self.matrix) % self.p
            rhs = (self.matrix @ self.target.actions[g]) % self.p
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"map does not intertwine {A.basis_label(g)}")
        return True


# ---------------------------------------------------------------------------
# constructors


def zero_module(A: FDAlgebra) -> RightModule:
    return RightModule(A, np.zeros((A.dim, 0, 0), dtype=np.int64))


def simple(A: FDAlgebra, x) -> RightModule:
    if x not in A.idem_index:
        raise ValueError(f"unknown vertex {x!r}")
    acts = np.zeros((A.dim, 1, 1), dtype=np.int64)
    acts[A.idem_index[x], 0, 0] = 1
    return RightModule(A, acts)


def projective(A: FDAlgebra, x) -> RightModule:
    """P_x = e_x A with the right-multiplication action."""
    if x not in A.idem_index:
        raise ValueError(f"unknown vertex {x!r}")
    rows = [i for i in range(A.dim) if A.source(i) == x]
    acts = A.struct[np.ix_(rows, range(A.dim), rows)]
    return RightModule(A, np.transpose(acts, (1, 0, 2)))


def injective(A: FDAlgebra, x) -> RightModule:
    """I_x: the dual of the left projective A e_x."""
    if x not in A.idem_index:
        raise ValueError(f"unknown vertex {x!r}")
    cols = [i for i in range(A.dim) if A.target(i) == x]
    acts = np.zeros((A.dim, len(cols), len(cols)), dtype=np.int64)
    for a in range(A.dim):
        acts[a] = A.struct[a][np.ix_(cols, cols)].T
    return RightModule(A, acts)


def regular_module(A: FDAlgebra) -> RightModule:
    """A as a right module over itself."""
    return RightModule(A, np.transpose(A.struct, (1, 0, 2)))


def direct_sum(mods) -> RightModule:
    mods = list(mods)
    if not mods:
        raise ValueError("empty direct sum needs an algebra; use zero_module")
    A = mods[0].algebra
    if any(m.algebra is not A for m in mods):
        raise ValueError("summands live over different algebras")
    d = sum(m.dim for m in mods)
    acts = np.zeros((A.dim, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        acts[:, off : off + m.dim, off : off + m.dim] = m.actions
        off += m.dim
    return RightModule(A, acts)


def module_from_arrow_blocks(A: FDAlgebra, dims: dict, blocks: dict) -> RightModule:
    """Assemble a module from per-arrow matrices of a presented algebra.

    ``dims`` maps vertex -> dimension, ``blocks`` maps arrow label to a
    (dim source, dim target) matrix.  The blocks must already satisfy
    the relations of ``A.spec``.
    """
    if A.spec is None:
        raise ValueError("algebra carries no quiver presentation")
    quiver = A.spec.quiver
    offsets = {}
    off = 0
    for x in A.vertices:
        offsets[x] = off
        off += dims.get(x, 0)
    d = off
    arrow_global = {}
    for lab, s, t in quiver.arrows:
        g = np.zeros((d, d), dtype=np.int64)
        blk = blocks.get(lab)
        if blk is not None and dims.get(s, 0) and dims.get(t, 0):
            g[offsets[s] : offsets[s] + dims[s], offsets[t] : offsets[t] + dims[t]] = blk
        arrow_global[lab] = g
    acts = np.zeros((A.dim, d, d), dtype=np.int64)
    for i, (s, t, word) in enumerate(A.basis):
        if not word:
            m = np.zeros((d, d), dtype=np.int64)
            sl = slice(offsets[s], offsets[s] + dims.get(s, 0))
            m[sl, sl] = np.eye(dims.get(s, 0), dtype=np.int64)
            acts[i] = m
        else:
            m = arrow_global[word[0]]
            for lab in word[1:]:
                m = (m @ arrow_global[lab]) % A.p
            acts[i] = m
    return RightModule(A, acts)


def off_corner_bimodule(A: FDAlgebra, sigma) -> RightModule:
    """M = (1 - e_S) A e_S as a right module over the corner e_S A e_S."""
    sigma = [x for x in A.vertices if x in set(sigma)]
    C = corner_algebra(A, sigma)
    keep = [i for i, (s, t, _) in enumerate(A.basis) if s in set(sigma) and t in set(sigma)]
    rows = off_corner_basis_indices(A, sigma)
    acts = np.zeros((C.dim, len(rows), len(rows)), dtype=np.int64)
    for j, cj in enumerate(keep):
        acts[j] = A.struct[np.ix_(rows, [cj], rows)][:, 0, :]
    M = RightModule(C, acts)
    M.ambient_indices = tuple(rows)
    return M


# ---------------------------------------------------------------------------
# submodules and quotients


def submodule_module(M: RightModule, rows):
    """The submodule spanned by ``rows``, with its inclusion into M.

    ``rows`` must span an action-stable subspace; a non-stable span
    raises.
    """
    rows = gf.row_space(np.asarray(rows, dtype=np.int64).reshape(-1, M.dim), M.p)
    k = rows.shape[0]
    acts = np.zeros((M.algebra.dim, k, k), dtype=np.int64)
    if k:
        for i in range(M.algebra.dim):
            rhs = (rows @ M.actions[i]) % M.p
            sol = gf.solve_linear(rows.T, rhs.T, M.p)
            if sol is None:
                raise ValueError("rows do not span an action-stable subspace")
            acts[i] = sol.T
    U = RightModule(M.algebra, acts)
    return U, ModuleMap(U, M, rows.reshape(k, M.dim))


def quotient_module(M: RightModule, rows):
    """The quotient of M by the submodule spanned by ``rows``, with projection."""
    rows = gf.row_space(np.asarray(rows, dtype=np.int64).reshape(-1, M.dim), M.p)
    R, k, pivots = gf.rref(rows, M.p)
    free = [c for c in range(M.dim) if c not in pivots]
    q = len(free)
    # projection: kill the row-space component, then keep free coordinates
    proj = np.zeros((M.dim, q), dtype=np.int64)
    sel = np.zeros((M.dim, k), dtype=np.int64)
    for i, c in enumerate(pivots):
        sel[c, i] = 1
    full = (np.eye(M.dim, dtype=np.int64) - sel @ R[:k]) % M.p
    proj = full[:, free]
    lift = np.zeros((q, M.dim), dtype=np.int64)
    for j, c in enumerate(free):
        lift[j, c] = 1
    acts = np.zeros((M.algebra.dim, q, q), dtype=np.int64)
    for i in range(M.algebra.dim):
        acts[i] = (lift @ M.actions[i] @ proj) % M.p
    Q = RightModule(M.algebra, acts)
    return Q, ModuleMap(M, Q, proj)


def radical_of_module(M: RightModule):
    """(MJ(A), inclusion)."""
    A = M.algebra
    if not A.radical_indices or M.dim == 0:
        return submodule_module(M, np.zeros((0, M.dim), dtype=np.int64))
    rows = np.vstack([M.actions[r] for r in A.radical_indices])
    return submodule_module(M, gf.row_space(rows, M.p))


def radical_rows(M: RightModule) -> np.ndarray:
    A = M.algebra
    if not A.radical_indices or M.dim == 0:
        return np.zeros((0, M.dim), dtype=np.int64)
    return gf.row_space(np.vstack([M.actions[r] for r in A.radical_indices]), M.p)


def top(M: RightModule):
    """(M / MJ(A), projection)."""
    return quotient_module(M, radical_rows(M))


def socle(M: RightModule):
    """(annihilator of J(A), inclusion)."""
    return submodule_module(M, socle_rows(M))


def socle_rows(M: RightModule) -> np.ndarray:
    A = M.algebra
    if not A.radical_indices or M.dim == 0:
        return gf.identity(M.dim)
    stacked = np.hstack([M.actions[r] for r in A.radical_indices])
    return gf.row_space(gf.left_nullspace_rows(stacked, M.p), M.p)


def radical_series_dim_vectors(M: RightModule):
    """Dimension vectors of M, MJ, MJ^2, ... down to zero."""
    A = M.algebra
    out = []
    rows = gf.identity(M.dim)
    while rows.shape[0]:
        dims = tuple(
            gf.rank((rows @ M.actions[A.idem_index[x]]) % M.p, M.p) for x in A.vertices
        )
        out.append(dims)
        nxt = (
            np.vstack([(rows @ M.actions[r]) % M.p for r in A.radical_indices])
            if A.radical_indices
            else np.zeros((0, M.dim), dtype=np.int64)
        )
        rows = gf.row_space(nxt, M.p)
    return tuple(out)


# ---------------------------------------------------------------------------
# hom spaces


def iso_fingerprint(M: RightModule):
    """Cheap isomorphism invariants: dimension vectors of the radical series and socle."""
    if "fp" not in M._cache:
        A = M.algebra
        soc = socle_rows(M)
        soc_vec = tuple(
            gf.rank((soc @ M.actions[A.idem_index[x]]) % M.p, M.p) for x in A.vertices
        )
        M._cache["fp"] = (M.dim_vector, radical_series_dim_vectors(M), soc_vec)
    return M._cache["fp"]


_HOM_CACHE: dict = {}
_HOM_CACHE_LIMIT = 30_000


def hom_space(M: RightModule, N: RightModule):
    """Basis of Hom_A(M, N) as a list of (M.dim, N.dim) matrices.

    The intertwining system is set up over the algebra's generators
    only; results are memoized on the action matrices.
    """
    if M.algebra is not N.algebra and M.algebra.basis != N.algebra.basis:
        raise ValueError("modules live over different algebras")
    A = M.algebra
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    key = (id(A), M.key(), N.key())
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    rows = []
    eye_m = np.eye(m, dtype=np.int64)
    eye_n = np.eye(n, dtype=np.int64)
    for g in A.generator_indices():
        act_m = M.actions[g]
        act_n_t = N.actions[g].T
        block = (
            act_m[:, None, :, None] * eye_n[None, :, None, :]
            - eye_m[:, None, :, None] * act_n_t[None, :, None, :]
        ) % A.p
        rows.append(block.reshape(m * n, m * n))
    system = np.vstack(rows)
    basis_cols = gf.nullspace_basis(system, A.p)
    out = [basis_cols[:, j].reshape(m, n) for j in range(basis_cols.shape[1])]
    if len(_HOM_CACHE) >= _HOM_CACHE_LIMIT:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = out
    return out


def hom_dim(M: RightModule, N: RightModule) -> int:
    return len(hom_space(M, N))


def _coefficient_grid(p, h, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((len(idx), h), dtype=np.int64)
    for j in range(h):
        digits[:, h - 1 - j] = (idx // (p ** j)) % p
    return digits


def iterate_hom_elements(basis, p, cap=DEFAULT_ENUM_CAP, chunk=4096, skip_zero=True):
    """Yield (coeffs, matrix) for every GF(p)-combination of a hom basis.

    Deterministic base-p order.  Raises EnumerationCapExceeded when the
    scan would exceed ``cap`` elements.
    """
    h = len(basis)
    total = p ** h
    if total > cap:
        raise EnumerationCapExceeded(
            f"enumeration cap exceeded: {p}^{h} > {cap} - undecidable at configured scale"
        )
    stack = np.array(basis, dtype=np.int64)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        coeffs = _coefficient_grid(p, h, start, stop)
        mats = np.tensordot(coeffs, stack, axes=(1, 0)) % p
        for i in range(stop - start):
            if skip_zero and start + i == 0:
                continue
            yield coeffs[i], mats[i]


def endomorphism_basis(M: RightModule):
    return hom_space(M, M)


def is_indecomposable(M: RightModule, cap=DEFAULT_ENUM_CAP) -> bool:
    """No idempotent endomorphism other than 0 and the identity.

    Exhaustive scan of the finite endomorphism set, in deterministic
    order; raises EnumerationCapExceeded past the cap.
    """
    if M.dim == 0:
        return False
    ends = endomorphism_basis(M)
    p = M.p
    h = len(ends)
    total = p ** h
    if total > cap:
        raise EnumerationCapExceeded(
            f"enumeration cap exceeded: {p}^{h} > {cap} - undecidable at configured scale"
        )
    eye = np.eye(M.dim, dtype=np.int64)
    stack = np.array(ends, dtype=np.int64)
    chunk = 4096
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        coeffs = _coefficient_grid(p, h, start, stop)
        mats = np.tensordot(coeffs, stack, axes=(1, 0)) % p
        sq = np.matmul(mats, mats) % p
        idem = np.all(sq == mats, axis=(1, 2))
        nonzero = np.any(mats != 0, axis=(1, 2))
        nonident = np.any(mats != eye, axis=(1, 2))
        if np.any(idem & nonzero & nonident):
            return False
    return True


def _first_nontrivial_idempotent(M: RightModule, cap):
    ends = endomorphism_basis(M)
    eye = np.eye(M.dim, dtype=np.int64)
    for _, E in iterate_hom_elements(ends, M.p, cap=cap):
        if np.array_equal((E @ E) % M.p, E) and np.any(E) and not np.array_equal(E, eye):
            return E
    return None


def decompose(M: RightModule, cap=DEFAULT_ENUM_CAP):
    """Split M into indecomposable summands along idempotent endomorphisms.

    Returns a list of RightModule, canonically ordered by (dimension
    vector, action bytes).
    """
    if M.dim == 0:
        return []
    E = _first_nontrivial_idempotent(M, cap)
    if E is None:
        return [M]
    img = gf.row_space(E, M.p)
    ker = gf.left_nullspace_rows(E, M.p)
    U, _ = submodule_module(M, img)
    V, _ = submodule_module(M, ker)
    parts = decompose(U, cap) + decompose(V, cap)
    return sorted(parts, key=lambda X: (X.dim_vector, X.actions.tobytes()))


def is_iso(M: RightModule, N: RightModule, cap=DEFAULT_ENUM_CAP) -> bool:
    """Equal dimension vectors plus an invertible member of the hom space."""
    if M.dim != N.dim or M.dim_vector != N.dim_vector:
        return False
    if M.dim == 0:
        return True
    homs = hom_space(M, N)
    if not homs:
        return False
    p, h, d = M.p, len(homs), M.dim
    total = p ** h
    if total > cap:
        raise EnumerationCapExceeded(
            f"enumeration cap exceeded: {p}^{h} > {cap} - undecidable at configured scale"
        )
    stack = np.array(homs, dtype=np.int64)
    chunk = 4096
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        coeffs = _coefficient_grid(p, h, start, stop)
        mats = np.tensordot(coeffs, stack, axes=(1, 0)) % p
        if np.any(gf.batch_rank(mats, p) == d):
            return True
    return False


# ---------------------------------------------------------------------------
# covers, syzygies, Ext


def projective_cover(M: RightModule):
    """(P, cover map) with P = direct sum of P_x per top multiplicity."""
    A = M.algebra
    rad = radical_rows(M)
    reps = []
    for x in A.vertices:
        span = rad
        for v in M.vertex_rows(x):
            if not gf.in_row_space(v, span, M.p):
                reps.append((x, v))
                span = gf.row_space(np.vstack([span, v.reshape(1, -1)]), M.p)
    if not reps:
        P = zero_module(A)
        return P, ModuleMap(P, M, np.zeros((0, M.dim), dtype=np.int64))
    summands = [projective(A, x) for x, _ in reps]
    P = direct_sum(summands)
    rows = []
    for x, v in reps:
        for i in range(A.dim):
            if A.source(i) == x:
                rows.append((v @ M.actions[i]) % M.p)
    F = np.array(rows, dtype=np.int64).reshape(P.dim, M.dim)
    cover = ModuleMap(P, M, F)
    if not cover.is_surjective():
        raise AssertionError("projective cover failed to surject")
    return P, cover


def syzygy(M: RightModule) -> RightModule:
    """Kernel of the projective cover."""
    P, cover = projective_cover(M)
    ker = cover.kernel_rows()
    U, _ = submodule_module(P, ker)
    return U


def is_projective(M: RightModule) -> bool:
    _, cover = projective_cover(M)
    return cover.kernel_rows().shape[0] == 0


def pd_up_to(M: RightModule, cap: int = 8):
    """Projective dimension via iterated syzygies; ``">cap"`` past the cap."""
    cur = M
    for k in range(cap + 1):
        P, cover = projective_cover(cur)
        ker = cover.kernel_rows()
        if ker.shape[0] == 0:
            return k
        cur, _ = submodule_module(P, ker)
    return f">{cap}"


def ext1_dim(M: RightModule, N: RightModule) -> int:
    """dim Ext^1(M, N) from the cover presentation of M."""
    P, cover = projective_cover(M)
    ker = cover.kernel_rows()
    if ker.shape[0] == 0:
        return 0
    omega, incl = submodule_module(P, ker)
    hom_omega = hom_space(omega, N)
    if not hom_omega:
        return 0
    hom_p = hom_space(P, N)
    restricted = [(incl.matrix @ G) % M.p for G in hom_p]
    # rank of the restriction image inside Hom(Omega, N)
    if restricted:
        image = np.array([F.reshape(-1) for F in restricted], dtype=np.int64)
        img_rank = gf.rank(image, M.p)
    else:
        img_rank = 0
    return len(hom_omega) - img_rank


def is_injective_module(M: RightModule) -> bool:
    """Ext^1(S_x, M) = 0 for every vertex x."""
    A = M.algebra
    return all(ext1_dim(simple(A, x), M) == 0 for x in A.vertices)


# ---------------------------------------------------------------------------
# trace, generation, splitting


def trace_rows(P: RightModule, X: RightModule) -> np.ndarray:
    homs = hom_space(P, X)
    if not homs:
        return np.zeros((0, X.dim), dtype=np.int64)
    return gf.row_space(np.vstack(homs), X.p)


def trace(P: RightModule, X: RightModule):
    """The trace submodule of P in X, with its inclusion (the minimal right approximation)."""
    return submodule_module(X, trace_rows(P, X))


def is_generated_by(P: RightModule, X: RightModule) -> bool:
    return trace_rows(P, X).shape[0] == X.dim


def inclusion_splits(incl: ModuleMap) -> bool:
    """Whether a retraction r with incl . r = id exists."""
    U, X = incl.source, incl.target
    if U.dim == 0:
        return True
    homs = hom_space(X, U)
    if not homs:
        return False
    cols = np.array([(incl.matrix @ H).reshape(-1) % U.p for H in homs], dtype=np.int64).T
    rhs = np.eye(U.dim, dtype=np.int64).reshape(-1)
    return gf.solve_linear(cols, rhs, U.p) is not None


# ---------------------------------------------------------------------------
# submodule enumeration


def submodules_all(M: RightModule, cap=DEFAULT_ENUM_CAP):
    """All action-stable subspaces, as canonical row bases.

    Closes each vector's cyclic submodule and saturates under sums.
    Deterministic canonical order (dimension, then basis encoding).
    """
    p, d = M.p, M.dim
    if d == 0:
        return [np.zeros((0, 0), dtype=np.int64)]
    if p ** d > cap:
        raise EnumerationCapExceeded(f"enumeration cap exceeded: {p}^{d} > {cap}")
    if p == 2:
        return _submodules_all_gf2(M)
    seen = {}
    zero = np.zeros((0, d), dtype=np.int64)
    seen[zero.tobytes()] = zero
    total = p ** d
    chunk = 2048
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        vecs = _coefficient_grid(p, d, start, stop)
        if start == 0:
            vecs = vecs[1:]
        if not len(vecs):
            continue
        imgs = np.einsum("bd,ndk->bnk", vecs, M.actions) % p
        reduced, ranks = gf.batch_rref(imgs, p)
        for i in range(len(vecs)):
            rows = reduced[i, : ranks[i]]
            key = rows.tobytes()
            if key not in seen:
                seen[key] = rows.copy()
        del imgs, reduced
    # saturate under sums
    worklist = list(seen.values())
    while worklist:
        new = []
        items = list(seen.values())
        for U in worklist:
            for V in items:
                rows = gf.row_space(np.vstack([U, V]), p)
                key = rows.tobytes()
                if key not in seen:
                    seen[key] = rows
                    new.append(rows)
        worklist = new
    return sorted(seen.values(), key=lambda r: (r.shape[0], r.tobytes()))


def _submodules_all_gf2(M: RightModule):
    """GF(2) fast path: subspaces as canonical integer-bitmask bases."""
    d = M.dim
    total = 1 << d
    weights = 1 << np.arange(d, dtype=np.int64)
    seen = {(): True}
    chunk = 4096
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        vecs = _coefficient_grid(2, d, start, stop)
        if start == 0:
            vecs = vecs[1:]
        if not len(vecs):
            continue
        imgs = np.einsum("bd,ndk->bnk", vecs, M.actions) % 2
        packed = imgs @ weights  # (B, n_basis) ints
        for row in packed.tolist():
            key = gf.echelon_ints_gf2(row)
            seen.setdefault(key, True)
    worklist = list(seen)
    while worklist:
        new = []
        items = list(seen)
        for U in worklist:
            for V in items:
                W = gf.merge_echelon_gf2(U, V)
                if W not in seen:
                    seen[W] = True
                    new.append(W)
        worklist = new
    out = []
    for key in sorted(seen, key=lambda k: (len(k), k)):
        out.append(gf.unpack_ints_gf2(list(key), d))
    return out


def quotients_all(M: RightModule, cap=DEFAULT_ENUM_CAP):
    """Every quotient of M, with its projection."""
    return [quotient_module(M, rows) for rows in submodules_all(M, cap)]


def is_hereditary_injective(M: RightModule, cap=DEFAULT_ENUM_CAP):
    """Whether every quotient of M is injective.

    Returns (verdict, witness) where witness is a non-injective quotient
    (as a RightModule) or None.  Quotients are scanned smallest first so
    a failure is witnessed by a minimal-dimension quotient.
    """
    for rows in reversed(submodules_all(M, cap)):
        Q, _ = quotient_module(M, rows)
        if not is_injective_module(Q):
            return False, Q
    return True, None
