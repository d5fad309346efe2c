"""Independent brute-force oracles for the metric kernels.

These deliberately avoid the formulations used by the package: B-cubed
is summed per mention membership, MUC counts partition blocks via graph
connected components, LEA enumerates every link pair, and CEAF_e tries
every permutation.  All return exact Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from corefkit.core import Span

Clusters = Sequence[frozenset[Span]]


def b_cubed_direction_oracle(sides: Clusters, others: Clusters) -> tuple[Fraction, Fraction]:
    """Per-mention membership sum (valid for non-overlapping ``sides``)."""
    num = Fraction(0)
    count = 0
    for cluster in sides:
        for mention in cluster:
            count += 1
            for other in others:
                if mention in other:
                    num += Fraction(len(cluster & other), len(cluster))
                    break
    return num, Fraction(count)


def muc_direction_oracle(sides: Clusters, others: Clusters) -> tuple[Fraction, Fraction]:
    """Partition counting via connected components of same-other-cluster
    edges inside each cluster."""
    num = den = 0
    for cluster in sides:
        members = sorted(cluster)
        adjacency = {m: set() for m in members}
        for a, b in combinations(members, 2):
            if any(a in other and b in other for other in others):
                adjacency[a].add(b)
                adjacency[b].add(a)
        seen: set[Span] = set()
        components = 0
        for m in members:
            if m in seen:
                continue
            components += 1
            stack = [m]
            while stack:
                node = stack.pop()
                if node in seen:
                    continue
                seen.add(node)
                stack.extend(adjacency[node] - seen)
        num += len(cluster) - components
        den += len(cluster) - 1
    return Fraction(num), Fraction(den)


def lea_direction_oracle(sides: Clusters, others: Clusters) -> tuple[Fraction, Fraction]:
    """Exhaustive link enumeration with the singleton self-link rule."""
    num = Fraction(0)
    den = 0
    for cluster in sides:
        den += len(cluster)
        if len(cluster) == 1:
            if any(other == cluster for other in others):
                num += 1
            continue
        pairs = list(combinations(sorted(cluster), 2))
        resolved = sum(
            1
            for a, b in pairs
            if any(a in other and b in other for other in others)
        )
        num += Fraction(len(cluster) * resolved, len(pairs))
    return num, Fraction(den)


def ceaf_e_optimum_oracle(key: Clusters, response: Clusters) -> Fraction:
    """Maximum total similarity over every one-to-one entity matching."""
    if not key or not response:
        return Fraction(0)

    def phi(k: frozenset[Span], r: frozenset[Span]) -> Fraction:
        return Fraction(2 * len(k & r), len(k) + len(r))

    small, large = (key, response) if len(key) <= len(response) else (response, key)
    best = Fraction(0)
    for perm in permutations(range(len(large)), len(small)):
        total = sum(
            (phi(small[i], large[j]) for i, j in enumerate(perm)), Fraction(0)
        )
        best = max(best, total)
    return best
