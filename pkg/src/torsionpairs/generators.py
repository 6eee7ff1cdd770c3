"""Seeded random bound quiver algebras for the property suite.

Generation is deterministic per seed: acyclic quivers on up to four
vertices with up to five arrows (parallels allowed) and monomial
length-two relations over GF(2) by default.  ``suite_algebras`` filters
the stream down to algebras whose catalog is verifiably settled below
the working dimension bound, probing a couple of dimensions higher.
"""

from __future__ import annotations

import random
import string

from .algebra import BoundQuiverSpec, Quiver, build_algebra
from .catalog import SearchBudgetExceeded, enumerate_catalog


def random_bound_quiver_spec(seed: int, max_vertices: int = 4, max_arrows: int = 5,
                             p: int = 2) -> BoundQuiverSpec:
    """A random acyclic bound quiver spec with monomial length-2 relations."""
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    vertices = tuple(str(i + 1) for i in range(n))
    m = rng.randint(1, max_arrows)
    arrows = []
    for k in range(m):
        i = rng.randrange(n - 1)
        j = rng.randrange(i + 1, n)
        # arrows run from the higher label to the lower, matching the
        # sink-at-1 orientation of the worked fixtures
        arrows.append((string.ascii_lowercase[k], vertices[j], vertices[i]))
    relations = []
    for lab1, s1, t1 in arrows:
        for lab2, s2, t2 in arrows:
            if t1 == s2 and rng.random() < 0.5:
                relations.append(((1, (lab1, lab2)),))
    quiver = Quiver(vertices, tuple(arrows))
    return BoundQuiverSpec(p, quiver, tuple(relations))


def suite_algebras(count: int = 20, start_seed: int = 0, max_dim: int = 4,
                   probe_dim: int = 6, budget: int = 1 << 14,
                   max_entries: int = 24):
    """Yield (seed, algebra, catalog) for suite-qualified random algebras.

    An algebra qualifies when the probe enumeration up to ``probe_dim``
    stays within budget and finds no indecomposable above ``max_dim``,
    which makes the max_dim catalog complete; the returned catalog
    carries that completeness assertion.
    """
    seed = start_seed
    produced = 0
    while produced < count:
        spec = random_bound_quiver_spec(seed)
        try:
            A = build_algebra(spec)
            probe = enumerate_catalog(A, probe_dim, assume_complete=False, budget=budget)
        except SearchBudgetExceeded:
            seed += 1
            continue
        if len(probe) > max_entries or any(e.dim > max_dim for e in probe.entries):
            seed += 1
            continue
        cat = enumerate_catalog(A, max_dim, assume_complete=True, budget=budget)
        yield seed, A, cat
        produced += 1
        seed += 1
