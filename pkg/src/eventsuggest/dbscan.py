"""Density-based clustering over sparse term vectors.

Core definition: a point is core iff at least min_samples OTHER points
lie within eps (the point itself is excluded from its neighbor count).
Set core_count_includes_self=True for the inclusive reading used by some
library implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .vectors import TermVector

NOISE = -1


class EmptyInput(ValueError):
    """dbscan requires at least one point."""


@dataclass(frozen=True)
class DbscanParams:
    min_samples: int
    eps: float
    metric: Literal["cosine", "euclidean"] = "cosine"
    core_count_includes_self: bool = False

    def __post_init__(self) -> None:
        if self.min_samples < 1:
            raise ValueError("min_samples must be >= 1")
        if self.eps <= 0:
            raise ValueError("eps must be > 0")


@dataclass(frozen=True)
class ClusterAssignment:
    labels: tuple[int, ...]
    num_clusters: int

    def clusters(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_clusters)]
        for i, label in enumerate(self.labels):
            if label != NOISE:
                out[label].append(i)
        return out

    def noise(self) -> list[int]:
        return [i for i, label in enumerate(self.labels) if label == NOISE]


def _norm(v: TermVector) -> float:
    return math.sqrt(sum(w * w for w in v.values()))


def cosine_distance(p: TermVector, q: TermVector) -> float:
    """1 - cos(p, q); distance 1 when either vector is zero."""
    np_, nq = _norm(p), _norm(q)
    if np_ == 0.0 or nq == 0.0:
        return 1.0
    if len(q) < len(p):
        p, q = q, p
    dot = sum(w * q[t] for t, w in p.items() if t in q)
    return 1.0 - dot / (np_ * nq)


def euclidean_distance(p: TermVector, q: TermVector) -> float:
    total = 0.0
    for t in p.keys() | q.keys():
        d = p.get(t, 0.0) - q.get(t, 0.0)
        total += d * d
    return math.sqrt(total)


def dbscan(points: list[TermVector], params: DbscanParams) -> ClusterAssignment:
    """Cluster points; see ClusterAssignment for the label contract.

    Clusters are connected components of core points under the eps
    neighbor graph. A non-core point joins the cluster of the first core
    point in input order that lies within eps of it, else it is noise.
    Cluster ids follow the input order of each component's first core
    point.
    """
    if not points:
        raise EmptyInput("no points to cluster")
    dist = cosine_distance if params.metric == "cosine" else euclidean_distance
    n = len(points)

    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if dist(points[i], points[j]) <= params.eps:
                neighbors[i].append(j)
                neighbors[j].append(i)

    extra = 1 if params.core_count_includes_self else 0
    core = [len(neighbors[i]) + extra >= params.min_samples for i in range(n)]

    # Connected components over core-core edges.
    component = [-1] * n
    num_components = 0
    for seed in range(n):
        if not core[seed] or component[seed] != -1:
            continue
        component[seed] = num_components
        frontier = [seed]
        while frontier:
            p = frontier.pop()
            for q in neighbors[p]:
                if core[q] and component[q] == -1:
                    component[q] = num_components
                    frontier.append(q)
        num_components += 1

    labels = [NOISE] * n
    for i in range(n):
        if core[i]:
            labels[i] = component[i]
        else:
            # neighbors[i] is ascending by construction, so this is the
            # first core point in input order within eps.
            for j in neighbors[i]:
                if core[j]:
                    labels[i] = component[j]
                    break
    return ClusterAssignment(labels=tuple(labels), num_clusters=num_components)
