"""Exact evolution of walk distributions and total-variation diagnostics.

Distributions are plain float64 vectors indexed by vertex.  One step of
the (optionally lazy) simple random walk is a sparse matvec, so full
profiles on builds with a few hundred thousand vertices take seconds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .construction import leaf_level
from .graphs import GraphError, LeveledGraph, PATH_INTERIOR, UNLEVELED

MASS_TOL = 1e-12
RENORM_TOL = 1e-9


def point_mass(n: int, v: int) -> np.ndarray:
    p = np.zeros(n)
    p[v] = 1.0
    return p


def uniform_dist(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def check_dist(p: np.ndarray) -> None:
    if np.any(p < 0):
        raise GraphError("distribution has a negative entry")
    if abs(p.sum() - 1.0) > MASS_TOL:
        raise GraphError(f"distribution mass {p.sum()} is not 1")


def step(g: LeveledGraph, p: np.ndarray, laziness: float = 0.0) -> np.ndarray:
    """One step of the walk: p'(v) = laziness p(v)
    + (1 - laziness) sum_{u ~ v} p(u)/deg(u)."""
    if not (0.0 <= laziness <= 0.5):
        raise GraphError("laziness must lie in [0, 1/2]")
    a = g.adjacency_csr()
    q = a.dot(p / g.degrees())
    if laziness:
        q *= (1.0 - laziness)
        q += laziness * p
    return q


def tv_to_uniform(p: np.ndarray) -> float:
    """Half the L1 distance between p and the uniform distribution."""
    n = len(p)
    return 0.5 * float(np.abs(p - 1.0 / n).sum())


def default_laziness(g: LeveledGraph) -> float:
    """0 when the graph has an odd cycle (the builds certify this at build
    time; deserialized graphs are re-checked), else 1/2."""
    bipartite = g.meta.get("bipartite")
    if bipartite is None:
        from .graphs import is_bipartite

        bipartite = is_bipartite(g)
    return 0.5 if bipartite else 0.0


@dataclass
class TVProfile:
    """Sampled curve t -> ||P_start(X_t in .) - uniform||_TV."""
    start: int
    times: np.ndarray
    tv: np.ndarray
    laziness: float
    stride: int
    renormalizations: int = 0
    meta: dict = field(default_factory=dict)

    def as_rows(self):
        return list(zip(self.times.tolist(), self.tv.tolist()))


def default_stride(t_max: int) -> int:
    return max(1, t_max // 2000)


def tv_profile(g, start, t_max, stride=None, laziness=0.0) -> TVProfile:
    """Evolve the point mass at `start`, recording the TV distance to
    uniform every `stride` steps (and at t_max).  Deterministic."""
    if t_max < 0:
        raise GraphError("t_max must be >= 0")
    stride = default_stride(t_max) if stride is None else max(1, int(stride))
    n = g.vertex_count
    p = point_mass(n, start)
    times = [0]
    tv = [tv_to_uniform(p)]
    renorms = 0
    for t in range(1, t_max + 1):
        p = step(g, p, laziness)
        mass = p.sum()
        if abs(mass - 1.0) > RENORM_TOL:
            p /= mass
            renorms += 1
        if t % stride == 0 or t == t_max:
            times.append(t)
            tv.append(tv_to_uniform(p))
    return TVProfile(start=int(start), times=np.asarray(times, dtype=np.int64),
                     tv=np.asarray(tv), laziness=laziness, stride=stride,
                     renormalizations=renorms,
                     meta={"t_max": t_max, "n": n})


def tv_profile_until(g, start, target, t_cap, stride=None,
                     laziness=0.0) -> TVProfile:
    """Like tv_profile, but stops once the recorded TV drops below `target`
    (checked on the stride grid); errors at t_cap if never reached."""
    stride = default_stride(t_cap) if stride is None else max(1, int(stride))
    n = g.vertex_count
    p = point_mass(n, start)
    times = [0]
    tv = [tv_to_uniform(p)]
    renorms = 0
    t = 0
    while tv[-1] >= target:
        if t >= t_cap:
            raise GraphError(f"not mixed below {target} by t_max={t_cap}")
        for _ in range(stride):
            t += 1
            p = step(g, p, laziness)
        mass = p.sum()
        if abs(mass - 1.0) > RENORM_TOL:
            p /= mass
            renorms += 1
        times.append(t)
        tv.append(tv_to_uniform(p))
    return TVProfile(start=int(start), times=np.asarray(times, dtype=np.int64),
                     tv=np.asarray(tv), laziness=laziness, stride=stride,
                     renormalizations=renorms,
                     meta={"t_cap": t_cap, "n": n})


def mixing_time(profile: TVProfile, eps: float) -> int:
    """Smallest recorded t with tv < eps (stride granularity)."""
    below = np.flatnonzero(profile.tv < eps)
    if len(below) == 0:
        raise GraphError(f"not mixed below {eps} by t_max")
    return int(profile.times[below[0]])


def mixing_time_bracket(profile: TVProfile, eps: float):
    """(previous recorded time, crossing time): the true threshold lies in
    this half-open interval."""
    below = np.flatnonzero(profile.tv < eps)
    if len(below) == 0:
        raise GraphError(f"not mixed below {eps} by t_max")
    i = int(below[0])
    lo = int(profile.times[i - 1]) if i > 0 else 0
    return lo, int(profile.times[i])


@dataclass
class MixingSummary:
    start: int
    tmix: dict
    brackets: dict
    cutoff_ratio: float
    window_estimate: int
    tstar_theory: float | None = None

    def as_dict(self):
        return {
            "start": self.start,
            "tmix": {str(k): v for k, v in self.tmix.items()},
            "brackets": {str(k): list(v) for k, v in self.brackets.items()},
            "cutoff_ratio": self.cutoff_ratio,
            "window_estimate": self.window_estimate,
            "tstar_theory": self.tstar_theory,
        }


def summarize_profile(profile: TVProfile, eps_grid=(0.25, 0.75),
                      tstar=None) -> MixingSummary:
    grid = sorted(set(float(e) for e in eps_grid) | {0.25, 0.75})
    tmix = {}
    brackets = {}
    for eps in grid:
        tmix[eps] = mixing_time(profile, eps)
        brackets[eps] = mixing_time_bracket(profile, eps)
    ratio = tmix[0.25] / tmix[0.75] if tmix[0.75] > 0 else float("inf")
    return MixingSummary(start=profile.start, tmix=tmix, brackets=brackets,
                         cutoff_ratio=ratio,
                         window_estimate=tmix[0.25] - tmix[0.75],
                         tstar_theory=tstar)


def default_starts(g: LeveledGraph) -> list:
    """Representative start set: root, a mid-depth vertex, one vertex on
    each expander-identified level, and a leaf (for leveled builds); vertex
    0 plus a farthest vertex from it otherwise."""
    h = g.meta.get("h", 0)
    if h and (g.level != UNLEVELED).any():
        wanted = [0, (h + 1) // 2, h + 2, 2 * h + 2, leaf_level(g)]
        out = []
        non_interior = g.role != PATH_INTERIOR
        for lvl in wanted:
            hits = np.flatnonzero((g.level == lvl) & non_interior)
            if len(hits):
                out.append(int(hits[0]))
        return sorted(set(out))
    from .graphs import bfs_distances

    far = int(np.argmax(bfs_distances(g, 0)))
    return sorted({0, far})


def cutoff_report(g, starts, eps_grid=(0.25, 0.75), t_max=None,
                  laziness=None, stride=None):
    """Per-start mixing summaries plus the worst start among them.

    t_max defaults to a generous multiple of the theoretical worst-case
    time when the build provides one.
    """
    if not starts:
        raise GraphError("starts must be nonempty")
    if laziness is None:
        laziness = default_laziness(g)
    tstar = g.meta.get("tstar")
    if t_max is None:
        if tstar:
            t_max = int(20 * tstar) + 200
        else:
            t_max = 100 * g.vertex_count.bit_length() ** 2
    min_eps = min(float(e) for e in list(eps_grid) + [0.25])
    summaries = []
    for s in starts:
        prof = tv_profile_until(g, s, target=min_eps * 0.98, t_cap=t_max,
                                stride=stride, laziness=laziness)
        summaries.append(summarize_profile(prof, eps_grid, tstar=tstar))
    worst = max(summaries, key=lambda sm: sm.tmix[0.25])
    return summaries, worst
