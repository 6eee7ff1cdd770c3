"""Brute-force enumeration of indecomposable modules up to a dimension bound.

For every dimension vector, all arrow-matrix assignments over GF(p)
satisfying the relations are generated (one arrow is normalized to a
rank form, or to a nilpotent Jordan form for a loop, which every module
admits in a suitable basis), then filtered down to pairwise
non-isomorphic indecomposables.  Completeness of the resulting catalog
is an assertion made by the caller, never inferred.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import gf
from . import modules as md
from .algebra import FDAlgebra

DEFAULT_SEARCH_BUDGET = 1 << 21


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, dim_vector, size, budget):
        self.dim_vector = tuple(dim_vector)
        super().__init__(
            f"search budget exceeded at dimension vector {self.dim_vector}: "
            f"{size} candidate assignments > budget {budget}"
        )


class IndecompCatalog:
    """Pairwise non-isomorphic indecomposables with the hom-nonzero reachability closure."""

    def __init__(self, algebra, max_dim, entries, hom_dims, reach, complete):
        self.algebra = algebra
        self.max_dim = max_dim
        self.entries = list(entries)
        self.hom_dims = hom_dims
        self.reach = reach
        self.complete = complete
        self._labels = None
        self._projective_entry = None
        self._simple_entry = None
        self._fp_index = None

    def __len__(self):
        return len(self.entries)

    @property
    def simple_entry(self):
        """vertex -> catalog index of S_x."""
        if self._simple_entry is None:
            A = self.algebra
            out = {}
            for x in A.vertices:
                sx = md.simple(A, x)
                for i, e in enumerate(self.entries):
                    if e.dim == 1 and e.dim_vector == sx.dim_vector:
                        out[x] = i
                        break
            self._simple_entry = out
        return self._simple_entry

    @property
    def projective_entry(self):
        """vertex -> catalog index of P_x, or None when P_x exceeds max_dim."""
        if self._projective_entry is None:
            A = self.algebra
            out = {}
            for x in A.vertices:
                px = md.projective(A, x)
                out[x] = self.find(px) if px.dim <= self.max_dim else None
            self._projective_entry = out
        return self._projective_entry

    def find(self, module):
        """Index of the entry isomorphic to ``module``, or None."""
        if self._fp_index is None:
            idx = {}
            for i, e in enumerate(self.entries):
                idx.setdefault(md.iso_fingerprint(e), []).append(i)
            self._fp_index = idx
        for i in self._fp_index.get(md.iso_fingerprint(module), []):
            if md.is_iso(self.entries[i], module):
                return i
        return None

    @property
    def labels(self):
        if self._labels is None:
            A = self.algebra
            names = []
            proj = {v: i for v, i in self.projective_entry.items() if i is not None}
            inj = {}
            for x in A.vertices:
                ix = md.injective(A, x)
                if ix.dim <= self.max_dim:
                    j = self.find(ix)
                    if j is not None:
                        inj[x] = j
            for i, e in enumerate(self.entries):
                name = None
                for x in A.vertices:
                    if proj.get(x) == i:
                        name = f"P_{x}" if e.dim > 1 else f"S_{x}"
                        break
                if name is None:
                    for x in A.vertices:
                        if inj.get(x) == i:
                            name = f"I_{x}" if e.dim > 1 else f"S_{x}"
                            break
                if name is None and e.dim == 1:
                    x = A.vertices[e.dim_vector.index(1)]
                    name = f"S_{x}"
                if name is None:
                    name = "M(" + ",".join(str(d) for d in e.dim_vector) + ")#" + str(i)
                names.append(name)
            self._labels = names
        return self._labels

    def hom_digraph_path(self, start, goal):
        """A chain of hom-nonzero steps from entry ``start`` to ``goal``, as indices."""
        n = len(self.entries)
        prev = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                if u == goal:
                    path = []
                    while u is not None:
                        path.append(u)
                        u = prev[u]
                    return list(reversed(path))
                for v in range(n):
                    if v not in prev and self.hom_dims[u, v] > 0:
                        prev[v] = u
                        nxt.append(v)
            frontier = nxt
        return None


def _partitions(n):
    if n == 0:
        yield ()
        return
    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail
    yield from gen(n, n)


def _jordan_nilpotent(partition):
    d = sum(partition)
    m = np.zeros((d, d), dtype=np.int64)
    off = 0
    for k in partition:
        for i in range(k - 1):
            m[off + i, off + i + 1] = 1
        off += k
    return m


def _support_connected(quiver, dims):
    supp = [v for v, d in dims.items() if d > 0]
    if len(supp) <= 1:
        return True
    adj = {v: set() for v in supp}
    for _, s, t in quiver.arrows:
        if s in adj and t in adj:
            adj[s].add(t)
            adj[t].add(s)
    seen = {supp[0]}
    stack = [supp[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(supp)


def _candidate_blocks(A, dims, budget):
    """Yield dicts arrow label -> matrix, one canonical arrow normalized."""
    quiver = A.spec.quiver
    p = A.p
    active = [(lab, s, t) for lab, s, t in quiver.arrows if dims[s] and dims[t]]
    if not active:
        yield {}
        return
    sizes = [dims[s] * dims[t] for _, s, t in active]
    canon_pos = int(np.argmax(sizes))
    lab0, s0, t0 = active[canon_pos]
    if s0 == t0:
        canon_forms = [_jordan_nilpotent(part) for part in _partitions(dims[s0])]
    else:
        forms = []
        for r in range(min(dims[s0], dims[t0]) + 1):
            m = np.zeros((dims[s0], dims[t0]), dtype=np.int64)
            for i in range(r):
                m[i, i] = 1
            forms.append(m)
        canon_forms = forms
    rest = [a for i, a in enumerate(active) if i != canon_pos]
    rest_entries = sum(dims[s] * dims[t] for _, s, t in rest)
    size = len(canon_forms) * (p ** rest_entries)
    if size > budget:
        raise SearchBudgetExceeded(tuple(dims.values()), size, budget)
    chunk = 4096
    total_rest = p ** rest_entries
    for canon in canon_forms:
        for start in range(0, total_rest, chunk):
            stop = min(start + chunk, total_rest)
            grid = md._coefficient_grid(p, rest_entries, start, stop)
            blocks = {lab0: np.broadcast_to(canon, (stop - start,) + canon.shape)}
            off = 0
            for lab, s, t in rest:
                k = dims[s] * dims[t]
                blocks[lab] = grid[:, off : off + k].reshape(-1, dims[s], dims[t])
                off += k
            yield blocks


def _relation_mask(A, dims, blocks, batch):
    """Boolean mask of candidates satisfying every relation."""
    p = A.p
    quiver = A.spec.quiver
    mask = np.ones(batch, dtype=bool)
    for rel in A.spec.relations:
        total = None
        for coeff, word in rel:
            if any(
                dims[quiver.arrow(lab)[1]] == 0 or dims[quiver.arrow(lab)[2]] == 0
                for lab in word
            ):
                continue  # a zero space along the path kills the term
            s = quiver.arrow(word[0])[1]
            prod = np.broadcast_to(
                np.eye(dims[s], dtype=np.int64), (batch, dims[s], dims[s])
            )
            for lab in word:
                prod = np.matmul(prod, blocks[lab]) % p
            term = (coeff * prod) % p
            total = term if total is None else (total + term) % p
        if total is not None and total.size:
            mask &= ~np.any(total.reshape(batch, -1), axis=1)
    return mask


def _no_simple_summand_mask(A, dims, blocks, batch):
    """Batched test that soc(M) lies inside MJ (no simple direct summand).

    The socle basis per candidate comes from one augmented elimination
    [S | I]: the identity block of the zero rows spans the left kernel
    of the stacked outgoing actions, padded with zero rows that cannot
    change the rank of the final containment test.
    """
    quiver = A.spec.quiver
    p = A.p
    d = sum(dims.values())
    offsets = {}
    off = 0
    for x in A.vertices:
        offsets[x] = off
        off += dims[x]
    active = [(lab, s, t) for lab, s, t in quiver.arrows if dims[s] and dims[t]]
    if not active:
        return np.ones(batch, dtype=bool) if d == 1 else np.zeros(batch, dtype=bool)
    na = len(active)
    glob = np.zeros((batch, na * d, d), dtype=np.int64)
    globs_h = np.zeros((batch, d, na * d), dtype=np.int64)
    for k, (lab, s, t) in enumerate(active):
        g = np.zeros((batch, d, d), dtype=np.int64)
        g[:, offsets[s] : offsets[s] + dims[s], offsets[t] : offsets[t] + dims[t]] = blocks[lab]
        glob[:, k * d : (k + 1) * d, :] = g
        globs_h[:, :, k * d : (k + 1) * d] = g
    rank_j = gf.batch_rank(glob, p)
    # socle bases: zero rows of rref([S | I]) carry the kernel in the I block;
    # the rank of S itself is the number of rows with a nonzero S part
    aug = np.concatenate(
        [globs_h, np.broadcast_to(np.eye(d, dtype=np.int64), (batch, d, d))], axis=2
    )
    red, _ = gf.batch_rref(aug, p)
    rank_s = np.any(red[:, :, : na * d] != 0, axis=2).sum(axis=1)
    ker_mask = np.arange(d)[None, :, None] >= rank_s[:, None, None]
    soc_rows = red[:, :, na * d :] * ker_mask
    stacked = np.concatenate([glob, soc_rows], axis=1)
    return gf.batch_rank(stacked, p) == rank_j


def enumerate_catalog(
    A: FDAlgebra,
    max_dim: int,
    assume_complete: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
    cap: int = md.DEFAULT_ENUM_CAP,
) -> IndecompCatalog:
    """All indecomposables of total dimension <= max_dim, up to isomorphism.

    ``A`` must have been built from a bound quiver spec.  Raises
    SearchBudgetExceeded (carrying the offending dimension vector) when
    a single dimension vector would need more assignments than
    ``budget``.
    """
    if A.spec is None:
        raise ValueError("catalog enumeration needs an algebra built from a bound quiver spec")
    quiver = A.spec.quiver
    p = A.p
    found = []  # (fingerprint, module)
    for total in range(1, max_dim + 1):
        for combo in itertools.product(range(total + 1), repeat=len(A.vertices)):
            if sum(combo) != total:
                continue
            dims = dict(zip(A.vertices, combo))
            if not _support_connected(quiver, dims):
                continue
            active = [(lab, s, t) for lab, s, t in quiver.arrows if dims[s] and dims[t]]
            if not active:
                if total == 1:
                    x = next(v for v, dv in dims.items() if dv)
                    found.append(md.simple(A, x))
                continue
            for blocks in _candidate_blocks(A, dims, budget):
                batch = len(next(iter(blocks.values())))
                mask = _relation_mask(A, dims, blocks, batch)
                if total >= 2:
                    mask &= _no_simple_summand_mask(
                        A, dims, {k: v % p for k, v in blocks.items()}, batch
                    )
                for i in np.nonzero(mask)[0]:
                    mod = md.module_from_arrow_blocks(
                        A, dims, {lab: blocks[lab][i] for lab in blocks}
                    )
                    found.append(mod)
    # deduplicate up to isomorphism, then keep the indecomposables
    groups = {}
    for mod in found:
        soc = md.socle_rows(mod)
        soc_vec = tuple(
            gf.rank((soc @ mod.actions[A.idem_index[x]]) % p, p) for x in A.vertices
        )
        fp = (
            mod.dim_vector,
            md.radical_series_dim_vectors(mod),
            soc_vec,
            len(md.endomorphism_basis(mod)),
        )
        groups.setdefault(fp, []).append(mod)
    entries = []
    for fp in sorted(groups, key=lambda f: (sum(f[0]), f)):
        reps = []
        for mod in groups[fp]:
            if any(md.is_iso(mod, r, cap) for r in reps):
                continue
            reps.append(mod)
        for rep in reps:
            if md.is_indecomposable(rep, cap):
                entries.append(rep)
    entries.sort(key=lambda m: (m.dim, m.dim_vector, m.actions.tobytes()))
    n = len(entries)
    hom = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            hom[i, j] = md.hom_dim(entries[i], entries[j])
    reach = hom > 0
    np.fill_diagonal(reach, True)
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return IndecompCatalog(A, max_dim, entries, hom, reach, assume_complete)


def predecessors_of(catalog: IndecompCatalog, targets) -> frozenset:
    """Indices of every entry with a hom-nonzero chain into the target set."""
    targets = set(targets)
    n = len(catalog.entries)
    return frozenset(i for i in range(n) if any(catalog.reach[i, t] for t in targets))


def is_predecessor_closed(catalog: IndecompCatalog, C):
    """(verdict, witness) where a failing witness is a hom-chain from outside C into C."""
    Cset = set(C)
    n = len(catalog.entries)
    for t in sorted(Cset):
        for i in range(n):
            if i not in Cset and catalog.reach[i, t]:
                return False, catalog.hom_digraph_path(i, t)
    return True, None


def supporting_projective(catalog: IndecompCatalog, C):
    """(vertex set, module P) for the projectives among the entries of C."""
    A = catalog.algebra
    sigma = []
    summands = []
    for x in A.vertices:
        idx = catalog.projective_entry.get(x)
        if idx is not None and idx in set(C):
            sigma.append(x)
            summands.append(md.projective(A, x))
    P = md.direct_sum(summands) if summands else md.zero_module(A)
    return tuple(sigma), P
