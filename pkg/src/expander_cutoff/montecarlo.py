"""Trajectory sampling: hitting times to the leaf level, one-dimensional
passage oracles, bimodality detection, and the exact descent chain.

The descent chain is the law of the level coordinate of the walk on the
5-regular family.  Cross edges (cliques within a group, expander matchings
across groups) always join isomorphic interiors at the same position, so a
cross move never changes the level coordinate and the level process is a
Markov chain whose rates depend only on the position along the root-leaf
column.  Hitting times to the leaves drawn from this chain follow the same
law as on the full graph, at any h, without materializing the graph.  For
the uneven-stretch variant the chain tracks which stretch regime the walk
descended into; the regime tag is carried through the lower bands, which
is exact up to the rare re-ascents above the branch level that cross
between regimes through expander edges.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from .construction import ConstructionParams
from .graphs import LEAF, GraphError, LeveledGraph

STEP_CAP = 10 ** 9


# ---------------------------------------------------------------------------
# summary statistics

QUANTS = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass
class HittingStats:
    samples: np.ndarray
    mean: float
    stddev: float
    quantiles: dict
    predicted: float | None = None
    cluster_means: tuple | None = None

    def stderr(self) -> float:
        return self.stddev / np.sqrt(len(self.samples))

    def as_dict(self):
        return {
            "count": int(len(self.samples)),
            "mean": self.mean,
            "stddev": self.stddev,
            "quantiles": {str(q): v for q, v in self.quantiles.items()},
            "predicted": self.predicted,
            "cluster_means": list(self.cluster_means) if self.cluster_means else None,
        }


def hitting_stats(samples, predicted=None) -> HittingStats:
    s = np.asarray(samples, dtype=np.int64)
    if len(s) == 0:
        raise GraphError("no samples")
    qs = {q: float(np.quantile(s, q)) for q in QUANTS}
    return HittingStats(samples=s, mean=float(s.mean()),
                        stddev=float(s.std(ddof=1)) if len(s) > 1 else 0.0,
                        quantiles=qs, predicted=predicted)


# ---------------------------------------------------------------------------
# walk simulation on a materialized graph


def sample_hitting_time(g: LeveledGraph, start: int, seed: int,
                        stream_index: int = 0, step_cap: int = STEP_CAP) -> int:
    """Steps of the simple random walk from `start` until the first arrival
    at the leaf level; deterministic in (graph, start, seed)."""
    role = g.role
    if role[start] == LEAF:
        return 0
    indptr, indices = g.indptr, g.indices
    gen = rng.stream(seed, stream_index)
    v = int(start)
    t = 0
    buf = gen.random(1024)
    bi = 0
    while t < step_cap:
        if bi == len(buf):
            buf = gen.random(1024)
            bi = 0
        lo = indptr[v]
        v = int(indices[lo + int(buf[bi] * (indptr[v + 1] - lo))])
        bi += 1
        t += 1
        if role[v] == LEAF:
            return t
    raise GraphError(f"step cap {step_cap} exceeded")


def sample_hitting_times(g, start, num_samples, seed, predicted=None,
                         threads=1) -> HittingStats:
    """num_samples independent trajectories; trajectory i draws from the
    (seed, i) stream, so the result is independent of batching."""
    def run(i):
        return sample_hitting_time(g, start, seed, stream_index=i)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = list(pool.map(run, range(num_samples)))
    else:
        samples = [run(i) for i in range(num_samples)]
    return hitting_stats(samples, predicted=predicted)


# ---------------------------------------------------------------------------
# hitting-time prediction for the 5-regular family


def predicted_tau(alpha: float, h: int, L: int) -> float:
    """Leading-order hitting time to the leaves from relative level
    alpha = s/h: (5/3)[L(5L-3)(1 - alpha/2) + 1] h below alpha = 2 and
    (5/3)(3 - alpha) h above; the branches agree at alpha = 2."""
    if not (0.0 <= alpha <= 3.0):
        raise GraphError("alpha must lie in [0, 3]")
    if alpha <= 2.0:
        return (5.0 / 3.0) * (L * (5 * L - 3) * (1.0 - alpha / 2.0) + 1.0) * h
    return (5.0 / 3.0) * (3.0 - alpha) * h


def stretched_edge_delay(L: int) -> float:
    """Expected level-process delay across one stretched edge:
    (5/2)(L^2 - L) + L = L(5L - 3)/2."""
    if L < 1:
        raise GraphError("L must be >= 1")
    return L * (5 * L - 3) / 2.0


# ---------------------------------------------------------------------------
# one-dimensional oracles


def path_passage_oracle(L, num_samples, seed):
    """Simple random walk from 0 absorbed at +-L: sample means of the
    absorption time and of the visits to 0 (counting the start)."""
    if L < 1:
        raise GraphError("L must be >= 1")
    gen = rng.stream(seed, 0)
    pos = np.zeros(num_samples, dtype=np.int64)
    time = np.zeros(num_samples, dtype=np.int64)
    visits = np.ones(num_samples, dtype=np.int64)
    alive = np.arange(num_samples)
    while alive.size:
        steps = (gen.random(alive.size) < 0.5).astype(np.int64) * 2 - 1
        pos[alive] += steps
        time[alive] += 1
        visits[alive] += pos[alive] == 0
        alive = alive[np.abs(pos[alive]) < L]
    return float(time.mean()), float(visits.mean())


def path_passage_exact(L):
    """Absorbing-chain solve for the same quantities: expected absorption
    time from 0 and expected visits to 0, on states -(L-1)..(L-1)."""
    k = 2 * L - 1
    center = L - 1
    q = np.zeros((k, k))
    for i in range(k):
        if i > 0:
            q[i, i - 1] = 0.5
        if i < k - 1:
            q[i, i + 1] = 0.5
    m = np.eye(k) - q
    times = np.linalg.solve(m, np.ones(k))
    e0 = np.zeros(k)
    e0[center] = 1.0
    visits = np.linalg.solve(m, e0)
    return float(times[center]), float(visits[center])


def stretched_edge_delay_mc(L, num_samples, seed):
    """Monte Carlo mean of the stretched-edge delay: the +-L walk with a
    3/5 laziness at interior positions and none at the origin."""
    gen = rng.stream(seed, 0)
    pos = np.zeros(num_samples, dtype=np.int64)
    time = np.zeros(num_samples, dtype=np.int64)
    alive = np.arange(num_samples)
    while alive.size:
        p = pos[alive]
        move = (p == 0) | (gen.random(alive.size) < 0.4)
        steps = (gen.random(alive.size) < 0.5).astype(np.int64) * 2 - 1
        pos[alive] = p + np.where(move, steps, 0)
        time[alive] += 1
        alive = alive[np.abs(pos[alive]) < L]
    return float(time.mean())


# ---------------------------------------------------------------------------
# general absorbing-chain oracle (small graphs)


def absorbing_mean_hitting(g: LeveledGraph, start: int, targets) -> float:
    """Exact expected hitting time of `targets` from `start` by a dense
    linear solve; intended for oracle-sized graphs."""
    n = g.vertex_count
    target_mask = np.zeros(n, dtype=bool)
    target_mask[np.asarray(list(targets), dtype=np.int64)] = True
    if target_mask[start]:
        return 0.0
    trans = np.flatnonzero(~target_mask)
    pos = -np.ones(n, dtype=np.int64)
    pos[trans] = np.arange(len(trans))
    q = np.zeros((len(trans), len(trans)))
    for i, v in enumerate(trans):
        nbrs = g.neighbors(v)
        w = 1.0 / len(nbrs)
        for u in nbrs:
            if not target_mask[u]:
                q[i, pos[u]] += w
    h = np.linalg.solve(np.eye(len(trans)) - q, np.ones(len(trans)))
    return float(h[pos[start]])


def cylinder_passage_oracle(gadget: LeveledGraph, L, num_samples, seed) -> float:
    """Mean first-passage time between the two ports (vertices 0 and 1) of
    a standalone cylinder gadget."""
    n = gadget.vertex_count
    degs = gadget.degrees()
    table = np.zeros((n, int(degs.max())), dtype=np.int64)
    for v in range(n):
        nb = gadget.neighbors(v)
        table[v, :len(nb)] = nb
    gen = rng.stream(seed, 0)
    pos = np.zeros(num_samples, dtype=np.int64)
    time = np.zeros(num_samples, dtype=np.int64)
    alive = np.arange(num_samples)
    while alive.size:
        p = pos[alive]
        k = (gen.random(alive.size) * degs[p]).astype(np.int64)
        pos[alive] = table[p, k]
        time[alive] += 1
        alive = alive[pos[alive] != 1]
    return float(time.mean())


def cylinder_passage_exact(gadget: LeveledGraph) -> float:
    return absorbing_mean_hitting(gadget, 0, [1])


# ---------------------------------------------------------------------------
# bimodality detection


@dataclass
class BimodalityReport:
    flag: bool
    cluster_means: tuple
    cluster_weights: tuple
    separation: float
    split_value: float

    def as_dict(self):
        return {"flag": self.flag, "cluster_means": list(self.cluster_means),
                "cluster_weights": list(self.cluster_weights),
                "separation": self.separation, "split_value": self.split_value}


_SPLIT_GRID = 200
_SPLIT_WINDOW = (0.2, 0.8)


def bimodality_check(stats: HittingStats) -> BimodalityReport:
    """Two-cluster split at the widest empirical gap, measured on a
    quantile grid restricted to the central 60% of the mass (quantile
    spacing stays informative on integer-valued samples, where raw order
    statistics tie).  Flags bimodal when both cluster weights lie in
    [0.35, 0.65] and the cluster means differ by more than twice the
    pooled within-cluster standard deviation.  On unimodal data the widest
    central spacing sits at the window edge, so the weights criterion
    rejects it."""
    s = np.sort(np.asarray(stats.samples, dtype=np.float64))
    n = len(s)
    if n < 1000:
        raise GraphError("bimodality check needs at least 1000 samples")
    lo, hi = _SPLIT_WINDOW
    js = np.arange(int(np.ceil(lo * _SPLIT_GRID)),
                   int(np.floor(hi * _SPLIT_GRID)) + 1)
    qs = np.quantile(s, js / _SPLIT_GRID)
    k = int(np.argmax(np.diff(qs)))
    split = float((qs[k] + qs[k + 1]) / 2.0)
    left, right = s[s <= split], s[s > split]
    w = (len(left) / n, len(right) / n)
    means = (float(left.mean()), float(right.mean()))
    v_left = float(left.var(ddof=1)) if len(left) > 1 else 0.0
    v_right = float(right.var(ddof=1)) if len(right) > 1 else 0.0
    pooled = np.sqrt(((len(left) - 1) * v_left + (len(right) - 1) * v_right)
                     / max(1, n - 2))
    separation = (means[1] - means[0]) / pooled if pooled > 0 else float("inf")
    flag = (0.35 <= w[0] <= 0.65) and separation > 2.0
    return BimodalityReport(flag=bool(flag), cluster_means=means,
                            cluster_weights=w, separation=float(separation),
                            split_value=split)


def hitting_mixing_ratio(stats: HittingStats) -> float:
    """Quantile ratio Q75/Q25 of the hitting time: a coarse stand-in for
    the mixing-time ratio on builds too large for exact evolution (the
    walk mixes shortly after first reaching the leaf level)."""
    q25 = stats.quantiles[0.25]
    if q25 <= 0:
        return float("inf")
    return stats.quantiles[0.75] / q25


# ---------------------------------------------------------------------------
# exact descent chain of the 5-regular family


class DescentChain:
    """Markov chain of the level coordinate along the root-leaf column.

    States cover the tree-node layers and every interior offset of the
    stretched edges; transitions are up 1/5 / down 4/5 at nodes and
    up 1/5 / down 1/5 / stay 3/5 at interiors (cross moves keep the level).
    """

    def __init__(self, moves, labels, root, leaf, node_at_level):
        size = len(moves)
        self.root = root
        self.leaf = leaf
        self.labels = labels
        self.node_at_level = node_at_level
        self.cum = np.ones((size, 4))
        self.targets = np.zeros((size, 4), dtype=np.int64)
        self._p = np.zeros((size, size))
        for s, mv in enumerate(moves):
            if not mv:
                mv = [(s, 1.0)]
            total = sum(p for _, p in mv)
            if abs(total - 1.0) > 1e-12:
                raise GraphError(f"chain state {s} has mass {total}")
            acc = 0.0
            for col in range(4):
                t, p = mv[col] if col < len(mv) else (mv[-1][0], 0.0)
                acc = min(1.0, acc + p)
                self.cum[s, col] = acc
                self.targets[s, col] = t
            self.cum[s, -1] = 1.0
            for t, p in mv:
                self._p[s, t] += p

    @property
    def size(self):
        return len(self.targets)

    def sample(self, num_samples, seed, start=None) -> np.ndarray:
        """Hitting times of the leaf level for num_samples trajectories."""
        start = self.root if start is None else start
        t = np.zeros(num_samples, dtype=np.int64)
        if start == self.leaf:
            return t
        gen = rng.stream(seed, 0)
        state = np.full(num_samples, start, dtype=np.int64)
        alive = np.arange(num_samples)
        while alive.size:
            u = gen.random(alive.size)
            st = state[alive]
            choice = (u[:, None] >= self.cum[st, :3]).sum(axis=1)
            state[alive] = self.targets[st, choice]
            t[alive] += 1
            alive = alive[state[alive] != self.leaf]
        return t

    def exact_mean(self, start=None) -> float:
        """Expected hitting time of the leaf by a dense linear solve."""
        start = self.root if start is None else start
        if start == self.leaf:
            return 0.0
        keep = np.arange(self.size) != self.leaf
        q = self._p[np.ix_(keep, keep)]
        h = np.linalg.solve(np.eye(q.shape[0]) - q, np.ones(q.shape[0]))
        idx = start - (1 if start > self.leaf else 0)
        return float(h[idx])

    def survival(self, t_max, start=None) -> np.ndarray:
        """Exact P(hitting time > t) for t = 0..t_max."""
        start = self.root if start is None else start
        dist = np.zeros(self.size)
        dist[start] = 1.0
        out = np.empty(t_max + 1)
        for t in range(t_max + 1):
            out[t] = 1.0 - dist[self.leaf]
            dist = dist @ self._p
        return out


def _build_five_family_chain(h, L, L_prime=0):
    if h < 1 or L < 1:
        raise GraphError("h and L must be >= 1")
    split = None
    if L_prime:
        if L_prime <= L:
            raise GraphError("L_prime must exceed L")
        if h % 2 != 0:
            raise GraphError("uneven stretching requires even h")
        split = h // 2
    tags = ("e", "o") if split else ("",)

    moves = []
    labels = []

    def add(label):
        moves.append([])
        labels.append(label)
        return len(moves) - 1

    def connect(top, bottom, length, tag):
        """Edge of the given stretch length; returns the entry states seen
        when stepping down from `top` and up from `bottom`."""
        if length == 1:
            return bottom, top
        sites = [add(("interior", labels[bottom], j)) for j in range(1, length)]
        seq = [top] + sites + [bottom]
        for i, s in enumerate(sites, start=1):
            moves[s] = [(seq[i - 1], 0.2), (seq[i + 1], 0.2), (s, 0.6)]
        return sites[0], sites[-1]

    def band1_len(depth, tag):
        if split and tag == "o" and depth > split:
            return L_prime
        return L

    # node states
    root = add(("node", 0))
    n1 = add(("node", 1))
    u = add(("node", 2))
    node_at_level = {0: root, 1: n1, 2: u}

    def b1_node(depth, tag):
        if depth == 0:
            return u
        if split is None or depth < split:
            return b1_common[depth]
        return b1_tagged[(depth, tag)]

    b1_common = {}
    b1_tagged = {}
    for d in range(1, h + 1):
        if split is None or d < split:
            b1_common[d] = add(("node", 2 + d))
            node_at_level.setdefault(2 + d, b1_common[d])
        else:
            for tag in tags:
                b1_tagged[(d, tag)] = add(("node", 2 + d, tag))
            node_at_level.setdefault(2 + d, b1_tagged[(d, tags[0])])

    b23 = {}
    for band, base in (("b2", h + 2), ("b3", 2 * h + 2)):
        for d in range(1, h + 1):
            if band == "b3" and d == h:
                continue
            for tag in tags:
                b23[(band, d, tag)] = add(("node", base + d, tag))
            node_at_level.setdefault(base + d, b23[(band, d, tags[0])])
    leaf = add(("leaf", 3 * h + 2))
    node_at_level[3 * h + 2] = leaf

    def b2_node(depth, tag):
        if depth == 0:
            return b1_node(h, tag)
        return b23[("b2", depth, tag)]

    def b3_node(depth, tag):
        if depth == 0:
            return b2_node(h, tag)
        if depth == h:
            return leaf
        return b23[("b3", depth, tag)]

    # edges: record (top_node, down_entry, up_entry, share) per node
    down_of = {s: [] for s in range(len(moves))}
    up_of = {}

    def wire(top, bottom, length, share):
        dn, up = connect(top, bottom, length, "")
        down_of[top].append((dn, share))
        up_of[bottom] = up

    wire(root, n1, 1, 1.0)
    wire(n1, u, 1, 1.0)
    for d in range(1, h + 1):
        if split is None or d < split:
            wire(b1_node(d - 1, ""), b1_node(d, ""), L, 1.0)
        elif d == split:
            for tag in tags:
                wire(b1_node(d - 1, ""), b1_node(d, tag), L, 0.5)
        else:
            for tag in tags:
                wire(b1_node(d - 1, tag), b1_node(d, tag),
                     band1_len(d, tag), 1.0)
    for tag in tags:
        for d in range(1, h + 1):
            wire(b2_node(d - 1, tag), b2_node(d, tag), L, 1.0)
        for d in range(1, h + 1):
            wire(b3_node(d - 1, tag), b3_node(d, tag), 1, 1.0)

    # node transition rules: down with probability 4/5 (the root always
    # descends), up 1/5 through the parent edge
    for s in range(len(moves)):
        if moves[s] or s == leaf:
            continue
        downs = down_of[s]
        if s == root:
            moves[s] = [(t, share) for t, share in downs]
            continue
        up = up_of[s]
        moves[s] = [(up, 0.2)] + [(t, 0.8 * share) for t, share in downs]

    return DescentChain(moves, labels, root, leaf, node_at_level)


def descent_chain(params: ConstructionParams) -> DescentChain:
    """Exact level-coordinate chain of a 5-regular family build."""
    params.validate()
    if params.variant == "five_regular":
        return _build_five_family_chain(params.h, params.L)
    if params.variant == "no_cutoff":
        return _build_five_family_chain(params.h, params.L, params.L_prime)
    raise GraphError("descent chains exist for the 5-regular family only")


def chain_hitting_stats(chain: DescentChain, num_samples, seed,
                        start_level=0, predicted=None) -> HittingStats:
    start = chain.node_at_level.get(int(start_level))
    if start is None:
        raise GraphError(f"no node state at level {start_level}")
    samples = chain.sample(num_samples, seed, start=start)
    return hitting_stats(samples, predicted=predicted)
