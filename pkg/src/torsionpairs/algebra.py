"""Bound quiver algebras over GF(p) and their corner algebras.

An algebra is held by an explicit basis of (reduced) path words together
with a dense structure-constant tensor, so that corner algebras eAe --
whose elements are paths possibly travelling outside the corner -- live
in exactly the same representation as algebras presented by a quiver.

Path words compose left-to-right: the word ``a.b`` means "traverse a,
then b", so it requires target(a) = source(b).  Consequently e_x A e_y
is spanned by the paths from x to y and Hom(e_y A, e_x A) = e_x A e_y.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import gf

DEFAULT_BASIS_CAP = 512


class AlgebraError(ValueError):
    """Raised for ill-formed quiver/relation input."""


class InfiniteDimensionalError(AlgebraError):
    """Raised when the reduced path closure does not terminate under the cap."""


Word = tuple  # tuple of arrow labels; () is a trivial path at a vertex


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (label, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow labels")
        vset = set(self.vertices)
        for lab, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise AlgebraError(f"arrow {lab}: endpoint not a declared vertex")

    def arrow(self, label):
        for a in self.arrows:
            if a[0] == label:
                return a
        raise AlgebraError(f"unknown arrow {label!r}")

    def arrows_from(self, x):
        return [a for a in self.arrows if a[1] == x]

    def arrows_into(self, x):
        return [a for a in self.arrows if a[2] == x]

    def multiplicity(self):
        """Arrow count per ordered vertex pair."""
        out = {}
        for _, s, t in self.arrows:
            out[(s, t)] = out.get((s, t), 0) + 1
        return out

    def is_source(self, x) -> bool:
        if x not in self.vertices:
            raise AlgebraError(f"unknown vertex {x!r}")
        return not any(t == x for _, _, t in self.arrows)

    def is_sink(self, x) -> bool:
        if x not in self.vertices:
            raise AlgebraError(f"unknown vertex {x!r}")
        return not any(s == x for _, s, _ in self.arrows)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for _, s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, _, t in self.arrows:
            indeg[t] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for _, s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        return seen == len(self.vertices)


@dataclass(frozen=True)
class BoundQuiverSpec:
    """A quiver with relations over GF(p).

    Each relation is a list of (coefficient, word) terms; the terms must
    be parallel paths (shared source and target) of length >= 2.
    """

    p: int
    quiver: Quiver
    relations: tuple = ()

    def __post_init__(self):
        gf.check_prime(self.p)
        cleaned = []
        for rel in self.relations:
            terms = []
            src = tgt = None
            for coeff, word in rel:
                coeff = coeff % self.p
                if len(word) < 2:
                    raise AlgebraError(
                        f"non-admissible relations: path {'.'.join(word) or '(trivial)'} has length < 2"
                    )
                s, t = self._word_endpoints(word)
                if src is None:
                    src, tgt = s, t
                elif (s, t) != (src, tgt):
                    raise AlgebraError("relation terms are not parallel paths")
                if coeff:
                    terms.append((coeff, tuple(word)))
            if terms:
                cleaned.append(tuple(terms))
        object.__setattr__(self, "relations", tuple(cleaned))

    def _word_endpoints(self, word):
        prev_target = None
        src = None
        for lab in word:
            _, s, t = self.quiver.arrow(lab)
            if prev_target is not None and s != prev_target:
                raise AlgebraError(f"path {'.'.join(word)} is not composable at {lab!r}")
            if src is None:
                src = s
            prev_target = t
        return src, prev_target


def _word_key(word):
    return (len(word), word)


class _GradedReducers:
    """Row-echelon store of homogeneous ideal elements, keyed by leading word."""

    def __init__(self, p):
        self.p = p
        self.table = {}  # leading word -> {word: coeff}, leading coeff 1

    def reduce(self, vec):
        p = self.p
        vec = {w: c % p for w, c in vec.items() if c % p}
        while True:
            hit = None
            for w in sorted(vec, key=_word_key, reverse=True):
                if w in self.table:
                    hit = w
                    break
            if hit is None:
                return vec
            c = vec.pop(hit)
            for w2, c2 in self.table[hit].items():
                if w2 == hit:
                    continue
                nv = (vec.get(w2, 0) - c * c2) % p
                if nv:
                    vec[w2] = nv
                else:
                    vec.pop(w2, None)

    def insert(self, vec):
        """Reduce and store; returns the new table element or None."""
        vec = self.reduce(vec)
        if not vec:
            return None
        lead = max(vec, key=_word_key)
        inv = pow(vec[lead], -1, self.p)
        vec = {w: (c * inv) % self.p for w, c in vec.items()}
        self.table[lead] = vec
        return vec


class FDAlgebra:
    """Finite-dimensional basic algebra: path-word basis plus structure constants.

    ``struct[i, j]`` holds the coordinate vector of basis[i] * basis[j].
    Vertex idempotents are the empty words; the radical is spanned by the
    nonempty words.
    """

    def __init__(self, p, vertices, basis, struct, spec=None):
        self.p = p
        self.vertices = tuple(vertices)
        self.basis = tuple(basis)  # (source, target, word)
        self.struct = struct
        self.spec = spec
        self.idem_index = {}
        for i, (s, t, w) in enumerate(self.basis):
            if len(w) == 0:
                if s != t:
                    raise AlgebraError("trivial path with mismatched endpoints")
                self.idem_index[s] = i
        if set(self.idem_index) != set(self.vertices):
            raise AlgebraError("missing vertex idempotents in basis")
        self.radical_indices = tuple(i for i, (_, _, w) in enumerate(self.basis) if len(w) > 0)
        self.unit_vec = np.zeros(self.dim, dtype=np.int64)
        for x in self.vertices:
            self.unit_vec[self.idem_index[x]] = 1
        self._gen_indices = None
        self._radical_sq_rows = None

    @property
    def dim(self):
        return len(self.basis)

    def source(self, i):
        return self.basis[i][0]

    def target(self, i):
        return self.basis[i][1]

    def word(self, i):
        return self.basis[i][2]

    def basis_label(self, i):
        s, t, w = self.basis[i]
        return ".".join(w) if w else f"e_{s}"

    def block_indices(self, x, y):
        """Indices of the basis of e_x A e_y."""
        return [i for i, (s, t, _) in enumerate(self.basis) if s == x and t == y]

    def multiply(self, a, b):
        """Coordinate product of two coordinate vectors."""
        return np.einsum("i,j,ijk->k", a % self.p, b % self.p, self.struct) % self.p

    def right_mult_matrix(self, j):
        """Matrix of right multiplication by basis[j] on coordinate row vectors."""
        return self.struct[:, j, :].astype(np.int64)

    def radical_square_rows(self):
        """Canonical row basis of J(A)^2 in coordinates."""
        if self._radical_sq_rows is None:
            rad = self.radical_indices
            if not rad:
                self._radical_sq_rows = np.zeros((0, self.dim), dtype=np.int64)
            else:
                prods = self.struct[np.ix_(rad, rad)].reshape(-1, self.dim)
                self._radical_sq_rows = gf.row_space(prods, self.p)
        return self._radical_sq_rows

    def generator_indices(self):
        """Idempotents plus radical elements lifting a basis of J/J^2.

        This set generates the algebra, so intertwining with it suffices
        for module-map computations.
        """
        if self._gen_indices is None:
            gens = [self.idem_index[x] for x in self.vertices]
            span = self.radical_square_rows()
            for i in self.radical_indices:
                v = np.zeros((1, self.dim), dtype=np.int64)
                v[0, i] = 1
                if not gf.in_row_space(v, span, self.p):
                    gens.append(i)
                    span = np.vstack([span, v])
                    span = gf.row_space(span, self.p)
            self._gen_indices = tuple(gens)
        return self._gen_indices

    def nilpotency_index(self):
        """Smallest N with J(A)^N = 0."""
        rows = np.zeros((0, self.dim), dtype=np.int64)
        layer = np.zeros((len(self.radical_indices), self.dim), dtype=np.int64)
        for k, i in enumerate(self.radical_indices):
            layer[k, i] = 1
        n = 1
        while layer.shape[0] and np.any(layer):
            prods = []
            for row in layer:
                for j in self.radical_indices:
                    prods.append((row @ self.struct[:, j, :]) % self.p)
            layer = gf.row_space(np.array(prods, dtype=np.int64), self.p) if prods else np.zeros((0, self.dim), dtype=np.int64)
            n += 1
            if n > self.dim + 1:
                raise AlgebraError("radical is not nilpotent")
        return n


def build_algebra(spec: BoundQuiverSpec, max_basis: int = DEFAULT_BASIS_CAP) -> FDAlgebra:
    """Construct the bound quiver algebra of ``spec``.

    The basis consists of the path words irreducible under linear
    reduction by the relation ideal, enumerated breadth-first by length
    and lexicographically within each length.  Relations must be
    length-homogeneous (all terms of one relation share a length); this
    keeps the reduction graded per (source, target, length) block.
    """
    p = spec.p
    quiver = spec.quiver
    for rel in spec.relations:
        lengths = {len(word) for _, word in rel}
        if len(lengths) > 1:
            raise AlgebraError("relation terms must be length-homogeneous")

    arrows_by_source = {}
    arrow_src = {}
    arrow_tgt = {}
    for lab, s, t in quiver.arrows:
        arrows_by_source.setdefault(s, []).append((lab, t))
        arrow_src[lab] = s
        arrow_tgt[lab] = t
    for s in arrows_by_source:
        arrows_by_source[s].sort()

    def word_source(w):
        return arrow_src[w[0]]

    def word_target(w):
        return arrow_tgt[w[-1]]

    def extend(word, src):
        """All one-arrow right extensions of a path, with their targets."""
        tgt = word_target(word) if word else src
        return [(word + (lab,), t) for lab, t in arrows_by_source.get(tgt, [])]

    rels_by_len = {}
    for rel in spec.relations:
        rels_by_len.setdefault(len(rel[0][1]), []).append(dict((w, c) for c, w in rel))

    reducers = _GradedReducers(p)
    # irreducible words per length, with sources; 0 = trivial paths
    irreducible = {0: [((), x, x) for x in quiver.vertices]}
    all_words = {0: [((), x, x) for x in quiver.vertices]}
    elements_by_len = {}
    basis_count = len(quiver.vertices)
    length_all_reducible = None
    max_rel_len = max([len(r[0][1]) for r in spec.relations], default=2)

    ell = 0
    while True:
        ell += 1
        # every path of this length, grown from every path one shorter
        prev = all_words.get(ell - 1, [])
        level_words = []
        for word, src, _ in prev:
            for w2, t2 in extend(word if word else (), src):
                level_words.append((w2, src, t2))
        level_words.sort(key=lambda wst: wst[0])
        all_words[ell] = level_words

        # ideal elements of this degree: seeded relations plus arrow products
        new_elts = []
        for vec in rels_by_len.get(ell, []):
            new_elts.append(vec)
        for vec in elements_by_len.get(ell - 1, []):
            for lab, s, t in quiver.arrows:
                left = {(lab,) + w: c for w, c in vec.items() if t == word_source(w)}
                right = {w + (lab,): c for w, c in vec.items() if word_target(w) == s}
                if left:
                    new_elts.append(left)
                if right:
                    new_elts.append(right)
        stored = []
        for vec in new_elts:
            got = reducers.insert(vec)
            if got is not None:
                stored.append(got)
        elements_by_len[ell] = stored

        irr = [wst for wst in level_words if wst[0] not in reducers.table]
        irreducible[ell] = irr
        basis_count += len(irr)
        if basis_count > max_basis:
            raise InfiniteDimensionalError(
                f"irreducible path count exceeded the cap ({max_basis}); algebra may be infinite dimensional"
            )
        if not level_words or not irr:
            length_all_reducible = ell
            break
        if ell > 4 * max_basis:
            raise InfiniteDimensionalError("path closure failed to terminate")

    # keep closing the ideal far enough to rewrite any product of basis words
    top_len = length_all_reducible - 1
    needed = max(2 * top_len, max_rel_len)
    for ell in range(length_all_reducible + 1, needed + 1):
        stored = []
        for vec in elements_by_len.get(ell - 1, []):
            for lab, s, t in quiver.arrows:
                left = {(lab,) + w: c for w, c in vec.items() if t == word_source(w)}
                right = {w + (lab,): c for w, c in vec.items() if word_target(w) == s}
                for vec2 in (left, right):
                    if vec2:
                        got = reducers.insert(vec2)
                        if got is not None:
                            stored.append(got)
        for vec in rels_by_len.get(ell, []):
            got = reducers.insert(vec)
            if got is not None:
                stored.append(got)
        elements_by_len[ell] = stored

    basis = []
    for ell in sorted(irreducible):
        if ell >= length_all_reducible:
            break
        for word, src, tgt in irreducible[ell]:
            basis.append((src, tgt, word))
    index = {w: i for i, (_, _, w) in enumerate(basis)}

    def rewrite(word):
        """Coordinates of a path word in the irreducible basis."""
        out = np.zeros(len(basis), dtype=np.int64)
        stack = [(word, 1)]
        while stack:
            w, coeff = stack.pop()
            if w in index:
                out[index[w]] = (out[index[w]] + coeff) % p
                continue
            red = reducers.table.get(w)
            if red is None:
                # all words of this length are reducible to zero
                continue
            for w2, c2 in red.items():
                if w2 == w:
                    continue
                stack.append((w2, (-coeff * c2) % p))
        return out

    n = len(basis)
    struct = np.zeros((n, n, n), dtype=np.int64)
    for i, (si, ti, wi) in enumerate(basis):
        for j, (sj, tj, wj) in enumerate(basis):
            if ti != sj:
                continue
            word = wi + wj
            if not word:
                struct[i, j, i] = 1  # e_x * e_x
                continue
            struct[i, j] = rewrite(word)
    return FDAlgebra(p, quiver.vertices, basis, struct, spec=spec)


def trivial_algebra(p, vertex="1") -> FDAlgebra:
    """The field itself, as a one-vertex algebra."""
    return build_algebra(BoundQuiverSpec(p, Quiver((vertex,), ())))


def corner_algebra(A: FDAlgebra, sigma) -> FDAlgebra:
    """The corner e_S A e_S for a nonempty vertex subset S.

    Basis elements are those of A with source and target inside S; the
    unit is e_S.  Note the corner of a path algebra need not be a path
    algebra on its arrows alone, so no presentation is attached.
    """
    sigma = [x for x in A.vertices if x in set(sigma)]
    if not sigma:
        raise AlgebraError("empty vertex subset for corner algebra")
    unknown = set(sigma) - set(A.vertices)
    if unknown:
        raise AlgebraError(f"unknown vertices in corner subset: {sorted(unknown)}")
    keep = [i for i, (s, t, _) in enumerate(A.basis) if s in set(sigma) and t in set(sigma)]
    basis = [A.basis[i] for i in keep]
    struct = A.struct[np.ix_(keep, keep, keep)]
    return FDAlgebra(A.p, sigma, basis, struct, spec=None)


def forbidden_corner_dim(A: FDAlgebra, sigma) -> int:
    """dim e_S A (1 - e_S): the number of basis paths leaving S."""
    sset = set(sigma)
    return sum(1 for s, t, _ in A.basis if s in sset and t not in sset)


def off_corner_basis_indices(A: FDAlgebra, sigma):
    """Basis indices of (1 - e_S) A e_S."""
    sset = set(sigma)
    return [i for i, (s, t, _) in enumerate(A.basis) if s not in sset and t in sset]


def ext_quiver(A: FDAlgebra) -> Quiver:
    """The quiver of A: arrow multiplicity x -> y equals dim e_x (J/J^2) e_y.

    When A carries a presentation whose arrow counts match, the original
    arrow labels are reused so that building from a spec round-trips.
    """
    jsq = A.radical_square_rows()
    counts = {}
    for x in A.vertices:
        for y in A.vertices:
            block = A.block_indices(x, y)
            rad_block = [i for i in block if len(A.word(i)) > 0]
            if not rad_block:
                continue
            sub = jsq[:, rad_block]
            m = len(rad_block) - gf.rank(sub, A.p)
            if m > 0:
                counts[(x, y)] = m
    arrows = []
    presented = A.spec.quiver.multiplicity() if A.spec is not None else None
    if presented == counts and A.spec is not None:
        arrows = list(A.spec.quiver.arrows)
    else:
        for (x, y), m in sorted(counts.items()):
            for k in range(m):
                arrows.append((f"{x}->{y}" + (f"#{k + 1}" if m > 1 else ""), x, y))
    return Quiver(A.vertices, tuple(arrows))


def is_connected(A: FDAlgebra) -> bool:
    """Connectivity of the underlying undirected quiver graph."""
    if not A.vertices:
        return True
    adj = {v: set() for v in A.vertices}
    for s, t, w in A.basis:
        if w and s != t:
            adj[s].add(t)
            adj[t].add(s)
    seen = {A.vertices[0]}
    stack = [A.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(A.vertices)


def is_source(quiver: Quiver, x) -> bool:
    return quiver.is_source(x)


def validate_algebra(A: FDAlgebra, seed: int = 0, triple_cap: int = 14):
    """Numerical self-checks on the structure constants.

    Verifies idempotent orthogonality and sum, source/target
    compatibility, radical nilpotency, the Peirce dimension count, and
    associativity (all basis triples when dim <= triple_cap, otherwise a
    seeded random sample).
    """
    p, n = A.p, A.dim
    for x in A.vertices:
        for y in A.vertices:
            ex = np.zeros(n, dtype=np.int64)
            ex[A.idem_index[x]] = 1
            ey = np.zeros(n, dtype=np.int64)
            ey[A.idem_index[y]] = 1
            prod = A.multiply(ex, ey)
            expect = ex if x == y else np.zeros(n, dtype=np.int64)
            if not np.array_equal(prod, expect):
                raise AlgebraError(f"idempotents e_{x}, e_{y} fail orthogonality")
    # e_x * b * e_y picks out the (x, y) block
    for i, (s, t, _) in enumerate(A.basis):
        ei = np.zeros(n, dtype=np.int64)
        ei[i] = 1
        es = np.zeros(n, dtype=np.int64)
        es[A.idem_index[s]] = 1
        et = np.zeros(n, dtype=np.int64)
        et[A.idem_index[t]] = 1
        if not np.array_equal(A.multiply(es, ei), ei) or not np.array_equal(A.multiply(ei, et), ei):
            raise AlgebraError(f"basis element {A.basis_label(i)} violates source/target compatibility")
    if n <= triple_cap:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(500)]
    for i, j, k in triples:
        ei = np.zeros(n, dtype=np.int64)
        ei[i] = 1
        ej = np.zeros(n, dtype=np.int64)
        ej[j] = 1
        ek = np.zeros(n, dtype=np.int64)
        ek[k] = 1
        left = A.multiply(A.multiply(ei, ej), ek)
        rightv = A.multiply(ei, A.multiply(ej, ek))
        if not np.array_equal(left, rightv):
            raise AlgebraError(f"associativity fails on triple ({i}, {j}, {k})")
    A.nilpotency_index()
    peirce = sum(len(A.block_indices(x, y)) for x in A.vertices for y in A.vertices)
    if peirce != n:
        raise AlgebraError("Peirce decomposition does not sum to dim A")
    return True
