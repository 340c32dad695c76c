"""Assembly of the four leveled graph families.

Every build is a deterministic function of its parameters: a tree top,
bands of stretched trees grafted level by level, cross wiring between
isomorphic path interiors (cliques, matchings, or expander adjacency), and
an expander identified with the leaf level.  The cubic family embeds its
expanders through line graphs with auxiliary vertices so the degree stays
at 3; the cylinder family replaces each edge of a cubic host by a
degree-3 ladder gadget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expanders import ExpanderSpec, make_expander
from .graphs import (
    AUXILIARY,
    LEAF,
    PATH_INTERIOR,
    TREE_NODE,
    UNLEVELED,
    GraphBuilder,
    GraphError,
    LeveledGraph,
    _embed_line_graph_bulk,
    _graft_trees_onto,
    _interconnect_onto,
    assert_regular,
    is_bipartite,
    is_connected,
)

VARIANTS = ("five_regular", "cubic", "no_cutoff", "cylinder")


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters that fully determine a build.

    override_L (default True) permits stretch lengths below the
    gap-derived floor; desk-scale experiments need small L, and the build
    records in its metadata whether the floor was met.
    """
    h: int
    L: int
    variant: str = "five_regular"
    L_prime: int = 0
    m: int = 0
    expander_seeds: tuple = (1, 2)
    min_gap: float = 0.05
    override_L: bool = True

    def validate(self):
        if self.variant not in VARIANTS:
            raise GraphError(f"unknown variant {self.variant!r}")
        if self.L < 1:
            raise GraphError("L must be >= 1")
        if self.variant == "cylinder":
            if self.m < 4:
                raise GraphError("cylinder host size m must be >= 4")
            if self.L % 4 != 1:
                raise GraphError("cylinder length must satisfy L = 1 (mod 4)")
            return
        if self.h < 1:
            raise GraphError("h must be >= 1")
        if self.variant == "no_cutoff":
            if self.L_prime <= self.L:
                raise GraphError("no_cutoff requires L_prime > L")
            if self.h % 2 != 0:
                raise GraphError("no_cutoff requires even h")


def choose_L(gap1: float, gap2: float) -> int:
    """Stretch-length floor derived from the two certified expander gaps:
    ceil of max(2/sqrt(gap1), 16/gap2, 32)."""
    if gap1 <= 0 or gap2 <= 0:
        raise GraphError("spectral gaps must be positive")
    if gap1 > 1 or gap2 > 1:
        raise GraphError("spectral gaps must lie in (0, 1]")
    return math.ceil(max(2.0 / math.sqrt(gap1), 16.0 / gap2, 32.0))


def theoretical_tstar(h: int, L: int) -> float:
    """Leading-order worst-case mixing time of the 5-regular family:
    (5/3) * (5L^2 - 3L + 1) * h."""
    return (5.0 / 3.0) * (5 * L * L - 3 * L + 1) * h


# ---------------------------------------------------------------------------
# shared scaffolding


def _tree_top(b, fanout, branching):
    """Root with `fanout` children, each with `branching` children; returns
    the level-2 vertex list."""
    root = b.add_vertex(0, TREE_NODE)
    u = []
    for _ in range(fanout):
        x = b.add_vertex(1, TREE_NODE)
        b.add_edge(root, x)
        for _ in range(branching):
            y = b.add_vertex(2, TREE_NODE)
            b.add_edge(x, y)
            u.append(y)
    return u


def _block_leaves(blocks):
    out = []
    for blk in blocks:
        out.extend((blk["base"] + blk["leaves"]).tolist())
    return out


def _finalize(b, params, degree, extra_meta):
    g = b.finish(**extra_meta)
    if not assert_regular(g, degree):
        degs = g.degrees()
        bad = int(np.flatnonzero(degs != degree)[0])
        raise GraphError(
            f"build bug: vertex {bad} has degree {int(degs[bad])}, expected {degree}")
    if not is_connected(g):
        raise GraphError("build bug: graph is disconnected")
    return g.with_meta(bipartite=is_bipartite(g))


def _l_floor_meta(params, gap1, gap2):
    floor = choose_L(gap1, gap2)
    if params.L < floor and not params.override_L:
        raise GraphError(
            f"L={params.L} is below the gap-derived floor {floor}; "
            f"pass override_L=True for desk-scale builds")
    return {"L_floor": floor, "meets_L_floor": params.L >= floor}


# ---------------------------------------------------------------------------
# 5-regular family (with the uneven-stretch variant)


def _build_five_regular_family(params: ConstructionParams) -> LeveledGraph:
    h, L = params.h, params.L
    seed1, seed2 = params.expander_seeds
    exp1 = make_expander(ExpanderSpec(3, 20 * 4 ** h, params.min_gap, seed1))
    exp2 = make_expander(ExpanderSpec(4, 20 * 4 ** (3 * h), params.min_gap, seed2))
    floor_meta = _l_floor_meta(params, exp1.gap, exp2.gap)

    uneven = params.variant == "no_cutoff"
    if uneven:
        half = h // 2
        shift = {d: 4 ** (d - half) for d in range(half + 1, h + 1)}

        def length_at(depth, pos):
            # subtrees rooted at odd-indexed depth-h/2 vertices stretch to L'
            if depth > half and (pos // shift[depth]) % 2 == 1:
                return params.L_prime
            return L
    else:
        def length_at(depth, pos):
            return L

    b = GraphBuilder()
    u = _tree_top(b, 5, 4)

    band1 = _graft_trees_onto(b, u, 4, h, length_at, [2] * len(u))
    groups = [list(range(i, i + 4)) for i in range(0, 20, 4)]
    _interconnect_onto(b, band1, groups, "clique")
    set_a = _block_leaves(band1)
    assert len(set_a) == exp1.size

    band2 = _graft_trees_onto(b, set_a, 4, h, lambda d, p: L,
                              [h + 2] * len(set_a))
    h1_groups = [[int(x), int(y)] for x, y in exp1.graph.edge_array()]
    _interconnect_onto(b, band2, h1_groups, "matching")
    set_b = _block_leaves(band2)

    band3 = _graft_trees_onto(b, set_b, 4, h, lambda d, p: 1,
                              [2 * h + 2] * len(set_b), leaf_role=LEAF)
    leaves = np.asarray(_block_leaves(band3), dtype=np.int64)
    assert len(leaves) == exp2.size
    h2_edges = exp2.graph.edge_array()
    b.add_edge_array(leaves[h2_edges[:, 0]], leaves[h2_edges[:, 1]])

    meta = {
        "variant": params.variant,
        "h": h,
        "L": L,
        "L_prime": params.L_prime if uneven else 0,
        "degree": 5,
        "seeds": tuple(params.expander_seeds),
        "gap1": exp1.gap,
        "gap2": exp2.gap,
        "leaf_level": 3 * h + 2,
        "tstar": theoretical_tstar(h, L),
    }
    meta.update(floor_meta)
    return _finalize(b, params, 5, meta)


def build_five_regular(params: ConstructionParams) -> LeveledGraph:
    params.validate()
    if params.variant != "five_regular":
        raise GraphError("params.variant must be 'five_regular'")
    return _build_five_regular_family(params)


def build_no_cutoff(params: ConstructionParams) -> LeveledGraph:
    """5-regular family with the edges of odd depth-h/2 subtrees stretched
    to L_prime > L; trees stay pairwise isomorphic so the cross cliques
    still match, and the hitting time to the leaves becomes bimodal."""
    params.validate()
    if params.variant != "no_cutoff":
        raise GraphError("params.variant must be 'no_cutoff'")
    return _build_five_regular_family(params)


# ---------------------------------------------------------------------------
# cubic family


def build_cubic(params: ConstructionParams) -> LeveledGraph:
    """Binary-tree analogue of the 5-regular family, kept 3-regular by
    wiring the expanders through their line graphs with auxiliary
    vertices."""
    params.validate()
    if params.variant != "cubic":
        raise GraphError("params.variant must be 'cubic'")
    h, L = params.h, params.L
    seed1, seed2 = params.expander_seeds
    # tree-per-edge and leaf-per-edge bijections fix the expander sizes:
    # |E(H1)| = 6*2^h and |E(H2)| = 6*2^{3h} for 3-regular hosts
    exp1 = make_expander(ExpanderSpec(3, 2 ** (h + 2), params.min_gap, seed1))
    exp2 = make_expander(ExpanderSpec(3, 2 ** (3 * h + 2), params.min_gap, seed2))
    floor_meta = _l_floor_meta(params, exp1.gap, exp2.gap)

    b = GraphBuilder()
    u = _tree_top(b, 3, 2)

    band1 = _graft_trees_onto(b, u, 2, h, lambda d, p: L, [2] * 6)
    _interconnect_onto(b, band1, [[0, 1], [2, 3], [4, 5]], "matching")
    set_a = _block_leaves(band1)
    h1_edges = exp1.graph.edge_array()
    assert len(set_a) == len(h1_edges)

    band2 = _graft_trees_onto(b, set_a, 2, h, lambda d, p: L,
                              [h + 2] * len(set_a))
    # every band-2 interior x gets a pendant x'; per interior class the x'
    # are identified with the edges of H1 (tree i <-> edge i) and joined
    # through one auxiliary per H1 vertex
    bases = np.asarray([blk["base"] for blk in band2], dtype=np.int64)
    interiors = band2[0]["interiors"]
    for c in range(len(interiors)):
        xs = bases + int(interiors[c])
        lvl = b._level[int(xs[0])]
        xp0 = b.add_vertex_array(np.full(len(xs), lvl, dtype=np.int64),
                                 np.full(len(xs), AUXILIARY, dtype=np.int64))
        pendants = xp0 + np.arange(len(xs), dtype=np.int64)
        b.add_edge_array(xs, pendants)
        _embed_line_graph_bulk(b, exp1.size, h1_edges, pendants, lvl)
    set_b = _block_leaves(band2)

    band3 = _graft_trees_onto(b, set_b, 2, h, lambda d, p: 1,
                              [2 * h + 2] * len(set_b), leaf_role=LEAF)
    leaves = np.asarray(_block_leaves(band3), dtype=np.int64)
    h2_edges = exp2.graph.edge_array()
    assert len(leaves) == len(h2_edges)
    _embed_line_graph_bulk(b, exp2.size, h2_edges, leaves, 3 * h + 2)

    meta = {
        "variant": "cubic",
        "h": h,
        "L": L,
        "degree": 3,
        "seeds": tuple(params.expander_seeds),
        "gap1": exp1.gap,
        "gap2": exp2.gap,
        "leaf_level": 3 * h + 2,
    }
    meta.update(floor_meta)
    return _finalize(b, params, 3, meta)


# ---------------------------------------------------------------------------
# cylinder family


def _add_cylinder_gadget(b, left, right, k):
    """Degree-3 ladder of length 4k + 1 between two host vertices: singles
    at positions 0, 1 (mod 4) where the rails merge, doubled rail pairs
    with a rung at positions 2, 3 (mod 4); 6k interiors, 9k + 1 edges."""
    prev = [left]
    for p in range(1, 4 * k + 1):
        if p % 4 in (0, 1):
            s = b.add_vertex(UNLEVELED, PATH_INTERIOR)
            for q in prev:
                b.add_edge(q, s)
            prev = [s]
        else:
            x = b.add_vertex(UNLEVELED, PATH_INTERIOR)
            y = b.add_vertex(UNLEVELED, PATH_INTERIOR)
            b.add_edge(x, y)
            if len(prev) == 1:
                b.add_edge(prev[0], x)
                b.add_edge(prev[0], y)
            else:
                b.add_edge(prev[0], x)
                b.add_edge(prev[1], y)
            prev = [x, y]
    b.add_edge(prev[0], right)


def build_cylinder(host, L: int) -> LeveledGraph:
    """Replace every edge of a 3-regular host by the ladder gadget of
    length L (L = 1 mod 4); the result is 3-regular on
    m * (1 + (9/4)(L - 1)) vertices."""
    host_g = getattr(host, "graph", host)
    if not assert_regular(host_g, 3):
        raise GraphError("cylinder host must be 3-regular")
    if L < 1 or L % 4 != 1:
        raise GraphError("cylinder length must satisfy L = 1 (mod 4)")
    m = host_g.vertex_count
    meta = {"variant": "cylinder", "h": 0, "L": L, "m": m, "degree": 3,
            "host_gap": getattr(host, "gap", host_g.meta.get("gap"))}
    if L == 1:
        return host_g.with_meta(**meta)
    k = (L - 1) // 4
    b = GraphBuilder()
    b.add_vertices(m, UNLEVELED, TREE_NODE)
    for u, v in host_g.edge_array():
        _add_cylinder_gadget(b, int(u), int(v), k)
    g = b.finish(**meta)
    if not assert_regular(g, 3):
        raise GraphError("build bug: cylinder graph is not 3-regular")
    return g.with_meta(bipartite=is_bipartite(g))


def cylinder_vertex_count(m: int, num_host_edges: int, L: int) -> int:
    """Closed-form size of a cylinder build: m + |E| * (3/2)(L - 1)."""
    return m + num_host_edges * 3 * (L - 1) // 2


def standalone_cylinder(L: int) -> LeveledGraph:
    """A single gadget with two degree-1 port vertices (ids 0 and 1), as
    consumed by the passage-time oracles."""
    if L % 4 != 1:
        raise GraphError("cylinder length must satisfy L = 1 (mod 4)")
    b = GraphBuilder()
    b.add_vertices(2, UNLEVELED, TREE_NODE)
    if L == 1:
        b.add_edge(0, 1)
    else:
        _add_cylinder_gadget(b, 0, 1, (L - 1) // 4)
    return b.finish(variant="cylinder_gadget", L=L, h=0)


# ---------------------------------------------------------------------------
# dispatch and reporting


def build(params: ConstructionParams) -> LeveledGraph:
    params.validate()
    if params.variant == "five_regular":
        return build_five_regular(params)
    if params.variant == "cubic":
        return build_cubic(params)
    if params.variant == "no_cutoff":
        return build_no_cutoff(params)
    host = make_expander(ExpanderSpec(3, params.m, params.min_gap,
                                      params.expander_seeds[0]))
    return build_cylinder(host, params.L)


def level_census(g: LeveledGraph) -> dict:
    """Vertices per level, counting tree nodes and leaves only (the level
    sets exclude path interiors and auxiliaries)."""
    mask = (g.role == TREE_NODE) | (g.role == LEAF)
    counted = g.level[mask & (g.level != UNLEVELED)]
    levels, counts = np.unique(counted, return_counts=True)
    return {int(l): int(c) for l, c in zip(levels, counts)}


def leaf_level(g: LeveledGraph) -> int:
    if "leaf_level" in g.meta:
        return int(g.meta["leaf_level"])
    leaf_mask = g.role == LEAF
    if leaf_mask.any():
        return int(g.level[leaf_mask].max())
    return int(g.level.max())
