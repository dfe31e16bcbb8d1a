"""Latitude-zone search structure for points on the unit sphere.

Points are sorted by their z coordinate and partitioned into ``q`` strips
("spherical zones") of equal colatitude width delta, q = ceil(pi/delta).
Strip k (1-based) holds the points with colatitude theta = arccos(z) in
[(k-1)*delta, k*delta); the final strip is closed at pi.  A cap query around
a center in strip k only has to examine strips k-i*..k+i* with
i* = ceil(radius/delta), because a point within geodesic distance r of the
center differs from it in colatitude by at most r.  When the query radius
equals the strip width, i* = 1 and exactly three strips are scanned.

Strips are contiguous runs of the z-sorted array (colatitude decreases as z
grows, so strip q comes first and strip 1 last); ``zone_offsets`` stores the
q+1 run boundaries in array order.

Neighborhood radii come from

    delta = arccos(1 - 2*sqrt(k)*m/n),    k = 1, 2, ...

which sizes a cap holding about sqrt(k)*m of n uniformly scattered points.
``nearest_m`` escalates k until the cap holds at least m points, then keeps
the m nearest; the argument of arccos is clamped to [-1, 1], so the radius
saturates at pi (the whole sphere) and the escalation always terminates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .sphere import geodesic_distance


def compute_delta(n: int, m: int, k: int = 1) -> float:
    """Cap radius arccos(1 - 2*sqrt(k)*m/n), clamped into [0, pi]."""
    if n < 1 or m < 1 or k < 1:
        raise ValueError(f"n, m, k must be positive, got n={n}, m={m}, k={k}")
    arg = 1.0 - 2.0 * math.sqrt(k) * m / n
    return float(np.arccos(np.clip(arg, -1.0, 1.0)))


@dataclass(frozen=True)
class NeighborSet:
    """Query result: original point indices and geodesic distances, ascending."""

    ids: np.ndarray
    distances: np.ndarray

    def __len__(self) -> int:
        return self.ids.size


@dataclass(frozen=True)
class ZoneIndex:
    """Immutable z-sorted point set bucketed into latitude strips."""

    points: np.ndarray        # (n, 3), sorted ascending by z
    ids: np.ndarray           # sorted position -> original index
    delta: float              # strip width, radians
    zone_count: int           # q
    zone_offsets: np.ndarray  # q+1 run boundaries; run i is strip q - i

    def strip_slice(self, k: int) -> slice:
        """Rows of `points` in strip k (1-based, by colatitude)."""
        if not 1 <= k <= self.zone_count:
            raise ValueError(f"strip must be in 1..{self.zone_count}, got {k}")
        i = self.zone_count - k
        return slice(int(self.zone_offsets[i]), int(self.zone_offsets[i + 1]))

    def strip_member_ids(self, k: int) -> np.ndarray:
        """Original indices of the points in strip k."""
        return self.ids[self.strip_slice(k)]

    def _strip_of(self, theta: float) -> int:
        return min(int(theta // self.delta) + 1, self.zone_count)

    def query_cap(self, center, radius: float) -> NeighborSet:
        """All points within geodesic `radius` of `center`, nearest first.

        Ties in distance break toward the lower original index.  The result
        matches a brute-force scan exactly: candidate strips are filtered
        with the same clamped-arccos distance the scan would use.
        """
        if not 0.0 < radius <= np.pi:
            raise ValueError(f"radius must be in (0, pi], got {radius}")
        if self.points.shape[0] == 0:
            return NeighborSet(np.empty(0, dtype=int), np.empty(0))
        center = np.asarray(center, dtype=float)
        theta = float(np.arccos(np.clip(center[2], -1.0, 1.0)))
        k = self._strip_of(theta)
        i_star = math.ceil(radius / self.delta)
        k_lo = max(1, k - i_star)
        k_hi = min(self.zone_count, k + i_star)
        lo = int(self.zone_offsets[self.zone_count - k_hi])
        hi = int(self.zone_offsets[self.zone_count - k_lo + 1])
        dists = geodesic_distance(self.points[lo:hi], center)
        inside = dists <= radius
        cand_ids = self.ids[lo:hi][inside]
        cand_dists = dists[inside]
        order = np.lexsort((cand_ids, cand_dists))
        return NeighborSet(cand_ids[order], cand_dists[order])

    def nearest_m(self, center, m: int, n_formula: int | None = None) -> NeighborSet:
        """The m nearest points to `center`, via escalating cap queries."""
        n_pts = self.points.shape[0]
        if m < 1 or m > n_pts:
            raise ValueError(f"m must be in 1..{n_pts}, got {m}")
        if n_formula is None:
            n_formula = n_pts
        k = 1
        while True:
            radius = compute_delta(n_formula, m, k)
            found = self.query_cap(center, radius)
            if len(found) >= m:
                return NeighborSet(found.ids[:m], found.distances[:m])
            if radius >= np.pi:
                raise AssertionError("whole-sphere query returned fewer points than exist")
            k += 1


def build_zones(points, delta: float) -> ZoneIndex:
    """Bucket `points` into latitude strips of width `delta`."""
    if not 0.0 < delta <= np.pi:
        raise ValueError(f"delta must be in (0, pi], got {delta}")
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    q = math.ceil(np.pi / delta)
    order = np.argsort(points[:, 2], kind="stable")
    sorted_pts = points[order]
    theta = np.arccos(np.clip(sorted_pts[:, 2], -1.0, 1.0))
    strip = np.minimum((theta // delta).astype(int) + 1, q)
    counts = np.bincount(q - strip, minlength=q)
    offsets = np.concatenate(([0], np.cumsum(counts)))
    return ZoneIndex(
        points=sorted_pts,
        ids=order,
        delta=float(delta),
        zone_count=q,
        zone_offsets=offsets,
    )


def query_cap(index: ZoneIndex, center, radius: float) -> NeighborSet:
    return index.query_cap(center, radius)


def nearest_m(points, center, m: int, m_formula_n: int | None = None) -> NeighborSet:
    """m nearest of `points` to `center` (builds a one-shot zone index)."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if m_formula_n is None:
        m_formula_n = points.shape[0]
    if m < 1 or m > points.shape[0]:
        raise ValueError(f"m must be in 1..{points.shape[0]}, got {m}")
    index = build_zones(points, compute_delta(m_formula_n, m, 1))
    return index.nearest_m(center, m, n_formula=m_formula_n)
