"""Ckmeans: k-means univariado ótimo por programação dinâmica, O(k·n²)."""
from dataclasses import dataclass

import numpy as np

from analise_temas.exceptions import ArgumentError


@dataclass(frozen=True)
class ClusterResult:
    k: int
    values: tuple          # ordenados
    assignments: tuple     # grupo 1..k de cada valor
    centers: tuple
    sizes: tuple
    wcss: float

    def members(self, cluster):
        return [v for v, c in zip(self.values, self.assignments) if c == cluster]

    def bounds(self, cluster):
        members = self.members(cluster)
        return members[0], members[-1]


def segment_ssq(values):
    segment = np.asarray(values, dtype=float)
    if segment.size == 0:
        return 0.0
    return float(np.sum((segment - segment.mean()) ** 2))


def ckmeans_1d(scores, k):
    values = np.sort(np.asarray(scores, dtype=float).ravel())
    n = values.size
    if k < 1:
        raise ArgumentError(f"k deve ser >= 1 (recebido {k})")
    if k > n:
        raise ArgumentError(f"k={k} maior do que o número de valores ({n})")
    if not np.all(np.isfinite(values)):
        raise ArgumentError("Valores não finitos na lista de scores")

    # Desloca pela mediana para manter as somas acumuladas pequenas.
    shifted = values - np.median(values)
    s1 = np.concatenate(([0.0], np.cumsum(shifted)))
    s2 = np.concatenate(([0.0], np.cumsum(shifted * shifted)))

    def ssq(starts, end):
        size = end - starts + 1
        total = s1[end + 1] - s1[starts]
        return np.maximum(s2[end + 1] - s2[starts] - total * total / size, 0.0)

    # Valores iguais ficam no mesmo grupo quando há valores distintos suficientes.
    allowed = np.ones(n, dtype=bool)
    allowed[1:] = values[1:] != values[:-1]
    if int(allowed.sum()) < k:
        allowed[:] = True

    cost = np.full((k, n), np.inf)
    start = np.zeros((k, n), dtype=np.int64)
    ends = np.arange(n)
    prefix = s1[ends + 1]
    cost[0] = np.maximum(s2[ends + 1] - prefix * prefix / (ends + 1), 0.0)

    for m in range(1, k):
        for i in range(m, n):
            starts = np.arange(m, i + 1)
            candidates = cost[m - 1, starts - 1] + ssq(starts, i)
            candidates[~allowed[starts]] = np.inf
            best = int(np.argmin(candidates))
            cost[m, i] = candidates[best]
            start[m, i] = starts[best]

    assignments = np.zeros(n, dtype=np.int64)
    end = n - 1
    for m in range(k - 1, -1, -1):
        first = start[m, end] if m > 0 else 0
        assignments[first:end + 1] = m + 1
        end = first - 1

    groups = [values[assignments == c] for c in range(1, k + 1)]
    return ClusterResult(
        k=k,
        values=tuple(float(v) for v in values),
        assignments=tuple(int(a) for a in assignments),
        centers=tuple(float(g.mean()) for g in groups),
        sizes=tuple(int(g.size) for g in groups),
        wcss=float(sum(segment_ssq(g) for g in groups)),
    )
