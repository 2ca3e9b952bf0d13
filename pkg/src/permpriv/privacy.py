"""Permutation distance and rank-window privacy verification.

The permutation distance of a record x against an anonymized table Y is the
smallest d such that some anonymized record sits within d rank positions of
x's nearest anonymized value simultaneously on every attribute.  Privacy of a
record is then verified with two dials: the distance must reach a floor d,
and the values whose ranks fall inside the width-d window around each nearest
value must vary enough (population variance strictly above a per-attribute
floor), so that a small distance cannot be explained away by near-constant
neighborhoods.

Anyone holding a single record x and the anonymized table can recompute this
evidence; no access to the rest of the original data is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidValueError, RankOutOfRangeError, ShapeMismatchError
from .table import DEFAULT_TIE_SEED, MicrodataTable, RankProfile, _as_column

_CHUNK = 512  # query rows per deviation block; bounds peak memory


def _values_by_rank(column: np.ndarray, ranks: np.ndarray) -> np.ndarray:
    """Ascending array v where v[r-1] is the value holding rank r."""
    out = np.empty(column.size, dtype=float)
    out[np.asarray(ranks) - 1] = column
    return out


def _closest_ranks(values_by_rank: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """1-based rank of the value nearest to each query; ties take the smaller rank."""
    n = values_by_rank.size
    pos = np.searchsorted(values_by_rank, xs, side="left")
    left = np.clip(pos - 1, 0, n - 1)
    right = np.clip(pos, 0, n - 1)
    take_right = np.abs(values_by_rank[right] - xs) < np.abs(xs - values_by_rank[left])
    return np.where(take_right, right, left) + 1


def _query_matrix(queries, m: int) -> np.ndarray:
    q = np.asarray(queries, dtype=float)
    if q.ndim == 1:
        q = q.reshape(1, -1)
    if q.ndim != 2 or q.shape[1] != m:
        raise ShapeMismatchError(f"queries have shape {q.shape}, expected (*, {m})")
    if not np.all(np.isfinite(q)):
        raise InvalidValueError("query records contain NaN or infinite values")
    return q


class _DistanceEngine:
    """Shared machinery: nearest ranks and min-max rank deviations vs one table."""

    def __init__(self, anonymized: MicrodataTable, profile: RankProfile):
        if profile.n != anonymized.n or profile.m != anonymized.m:
            raise ShapeMismatchError("rank profile does not match the table shape")
        self.table = anonymized
        self.profile = profile
        self.rank_matrix = profile.ranks  # (n, m)
        self.values_by_rank = [
            _values_by_rank(anonymized.column(j), profile.vector(j))
            for j in range(anonymized.m)
        ]

    def centers(self, queries: np.ndarray) -> np.ndarray:
        """(q, m) nearest-value ranks for a block of query records."""
        return np.column_stack(
            [
                _closest_ranks(self.values_by_rank[j], queries[:, j])
                for j in range(self.table.m)
            ]
        )

    def distances(self, queries: np.ndarray, centers: np.ndarray | None = None) -> np.ndarray:
        """(q,) min-max rank deviation for each query record."""
        if centers is None:
            centers = self.centers(queries)
        out = np.empty(centers.shape[0], dtype=np.int64)
        for lo in range(0, centers.shape[0], _CHUNK):
            hi = min(lo + _CHUNK, centers.shape[0])
            dev = np.abs(
                self.rank_matrix[None, :, :] - centers[lo:hi, None, :]
            ).max(axis=2)
            out[lo:hi] = dev.min(axis=1)
        return out

    def record_result(self, x: np.ndarray, record_index: int | None) -> "RecordDistanceResult":
        centers = self.centers(x.reshape(1, -1))[0]
        dev = np.abs(self.rank_matrix - centers[None, :]).max(axis=1)
        distance = int(dev.min())
        matched = np.nonzero(dev == distance)[0]
        first = matched[0]
        return RecordDistanceResult(
            record_index=record_index,
            closest_values=tuple(
                float(self.values_by_rank[j][centers[j] - 1]) for j in range(self.table.m)
            ),
            closest_ranks=tuple(int(c) for c in centers),
            matched_indices=tuple(int(i) + 1 for i in matched),
            matched_deviations=tuple(
                int(abs(r - c)) for r, c in zip(self.rank_matrix[first], centers)
            ),
            distance=distance,
        )

    def window_variances(self, centers: Sequence[int], d: int) -> tuple[float, ...]:
        n = self.table.n
        out = []
        for j, c in enumerate(centers):
            lo = max(int(c) - int(d), 1)
            hi = min(int(c) + int(d), n)
            out.append(float(self.values_by_rank[j][lo - 1 : hi].var()))
        return tuple(out)


@dataclass(frozen=True)
class RecordDistanceResult:
    """Full distance evidence for one record against an anonymized table.

    Record numbers (`record_index`, `matched_indices`) are 1-based, matching
    the rank convention.  `matched_indices` lists every anonymized record at
    the minimum deviation; `matched_deviations` are the per-attribute rank
    deviations of the first of them.
    """

    record_index: int | None
    closest_values: tuple[float, ...]
    closest_ranks: tuple[int, ...]
    matched_indices: tuple[int, ...]
    matched_deviations: tuple[int, ...]
    distance: int

    report_kind = "record_distance"

    def to_dict(self) -> dict:
        return {
            "record_index": self.record_index,
            "closest_values": list(self.closest_values),
            "closest_ranks": list(self.closest_ranks),
            "matched_indices": list(self.matched_indices),
            "matched_deviations": list(self.matched_deviations),
            "distance": self.distance,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RecordDistanceResult":
        return cls(
            record_index=data["record_index"],
            closest_values=tuple(float(v) for v in data["closest_values"]),
            closest_ranks=tuple(int(v) for v in data["closest_ranks"]),
            matched_indices=tuple(int(v) for v in data["matched_indices"]),
            matched_deviations=tuple(int(v) for v in data["matched_deviations"]),
            distance=int(data["distance"]),
        )


def permutation_distance(
    x,
    anonymized: MicrodataTable,
    ranks: RankProfile | None = None,
    *,
    tie_seed: int = DEFAULT_TIE_SEED,
    record_index: int | None = None,
) -> RecordDistanceResult:
    """Distance evidence for a single record against an anonymized table."""
    profile = ranks if ranks is not None else RankProfile.of(anonymized, tie_seed)
    engine = _DistanceEngine(anonymized, profile)
    q = _query_matrix(x, anonymized.m)
    if q.shape[0] != 1:
        raise ShapeMismatchError("expected a single record; use batch_permutation_distances")
    return engine.record_result(q[0], record_index)


def batch_permutation_distances(
    queries,
    anonymized: MicrodataTable,
    ranks: RankProfile | None = None,
    *,
    tie_seed: int = DEFAULT_TIE_SEED,
) -> np.ndarray:
    """Distances only, vectorized over many query records."""
    profile = ranks if ranks is not None else RankProfile.of(anonymized, tie_seed)
    engine = _DistanceEngine(anonymized, profile)
    q = queries.values if isinstance(queries, MicrodataTable) else queries
    return engine.distances(_query_matrix(q, anonymized.m))


def window_variance(anonymized_column, ranks, center_rank: int, d: int) -> float:
    """Population variance of the values whose rank is within d of center_rank.

    The window [center_rank - d, center_rank + d] is clipped to [1, n], so it
    is never empty and never wraps.
    """
    col = _as_column(anonymized_column)
    rks = np.asarray(ranks)
    if col.shape != rks.shape:
        raise ShapeMismatchError("column and rank vector differ in length")
    n = col.size
    if not 1 <= int(center_rank) <= n:
        raise RankOutOfRangeError(f"center rank {center_rank} outside 1..{n}")
    if int(d) < 0:
        raise RankOutOfRangeError("window radius must be nonnegative")
    vbr = _values_by_rank(col, rks)
    lo = max(int(center_rank) - int(d), 1)
    hi = min(int(center_rank) + int(d), n)
    return float(vbr[lo - 1 : hi].var())


@dataclass(frozen=True)
class RecordVerification:
    """Outcome of checking one record against distance/variance targets.

    The full evidence is carried regardless of the verdict, so a data subject
    holding only their own record and the published table can audit it.
    """

    passed: bool
    result: RecordDistanceResult
    window_variances: tuple[float, ...]
    d_target: int
    v_target: tuple[float, ...]

    report_kind = "record_verification"

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "result": self.result.to_dict(),
            "window_variances": list(self.window_variances),
            "d_target": self.d_target,
            "v_target": list(self.v_target),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RecordVerification":
        return cls(
            passed=bool(data["passed"]),
            result=RecordDistanceResult.from_dict(data["result"]),
            window_variances=tuple(float(v) for v in data["window_variances"]),
            d_target=int(data["d_target"]),
            v_target=tuple(float(v) for v in data["v_target"]),
        )


def verify_record(
    x,
    anonymized: MicrodataTable,
    d_target: int,
    v_target,
    *,
    ranks: RankProfile | None = None,
    tie_seed: int = DEFAULT_TIE_SEED,
) -> RecordVerification:
    """Check distance >= d_target and every window variance > v_target[j].

    The variance clause is strict and evaluated at radius d_target.  Passing
    at (d_target, v_target) implies the distance clause passes at any smaller
    d', but the variance clause must be re-evaluated there.
    """
    if int(d_target) < 0:
        raise RankOutOfRangeError("d_target must be nonnegative")
    v = tuple(float(t) for t in np.asarray(v_target, dtype=float).ravel())
    if len(v) != anonymized.m:
        raise ShapeMismatchError(f"{len(v)} variance targets for {anonymized.m} attributes")
    profile = ranks if ranks is not None else RankProfile.of(anonymized, tie_seed)
    engine = _DistanceEngine(anonymized, profile)
    q = _query_matrix(x, anonymized.m)
    result = engine.record_result(q[0], None)
    variances = engine.window_variances(result.closest_ranks, int(d_target))
    passed = result.distance >= int(d_target) and all(
        var > t for var, t in zip(variances, v)
    )
    return RecordVerification(
        passed=passed,
        result=result,
        window_variances=variances,
        d_target=int(d_target),
        v_target=v,
    )


@dataclass(frozen=True)
class RecordPrivacy:
    """Per-record certificate entry: distance evidence plus both variance views."""

    result: RecordDistanceResult
    variances_at_dataset_distance: tuple[float, ...]
    variances_at_record_distance: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "result": self.result.to_dict(),
            "variances_at_dataset_distance": list(self.variances_at_dataset_distance),
            "variances_at_record_distance": list(self.variances_at_record_distance),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RecordPrivacy":
        return cls(
            result=RecordDistanceResult.from_dict(data["result"]),
            variances_at_dataset_distance=tuple(
                float(v) for v in data["variances_at_dataset_distance"]
            ),
            variances_at_record_distance=tuple(
                float(v) for v in data["variances_at_record_distance"]
            ),
        )


@dataclass(frozen=True)
class PrivacyCertificate:
    """Dataset-level privacy evidence: the protector's published guarantee.

    `dataset_distance` is the minimum record distance; `dataset_variances`
    take, per attribute, the minimum window variance at that radius over all
    records.  The certificate discloses method parameters via `disclosure`
    but never any masking seed.
    """

    per_record: tuple[RecordPrivacy, ...]
    dataset_distance: int
    dataset_variances: tuple[float, ...]
    disclosure: str | None
    tie_seed: int

    report_kind = "privacy_certificate"

    @property
    def record_distances(self) -> tuple[int, ...]:
        return tuple(entry.result.distance for entry in self.per_record)

    def to_dict(self) -> dict:
        return {
            "per_record": [entry.to_dict() for entry in self.per_record],
            "dataset_distance": self.dataset_distance,
            "dataset_variances": list(self.dataset_variances),
            "disclosure": self.disclosure,
            "tie_seed": self.tie_seed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PrivacyCertificate":
        return cls(
            per_record=tuple(RecordPrivacy.from_dict(e) for e in data["per_record"]),
            dataset_distance=int(data["dataset_distance"]),
            dataset_variances=tuple(float(v) for v in data["dataset_variances"]),
            disclosure=data["disclosure"],
            tie_seed=int(data["tie_seed"]),
        )


def certify_dataset(
    original: MicrodataTable,
    anonymized: MicrodataTable,
    *,
    tie_seed: int = DEFAULT_TIE_SEED,
    disclosure: str | None = None,
) -> PrivacyCertificate:
    """Distance and variance evidence for every original record at once."""
    if original.n != anonymized.n or original.m != anonymized.m:
        raise ShapeMismatchError(
            f"table shapes differ: {original.n}x{original.m} vs {anonymized.n}x{anonymized.m}"
        )
    profile = RankProfile.of(anonymized, tie_seed)
    engine = _DistanceEngine(anonymized, profile)
    results = [
        engine.record_result(original.values[i], i + 1) for i in range(original.n)
    ]
    dataset_distance = min(r.distance for r in results)
    per_record = []
    for r in results:
        at_d = engine.window_variances(r.closest_ranks, dataset_distance)
        at_di = engine.window_variances(r.closest_ranks, r.distance)
        per_record.append(
            RecordPrivacy(
                result=r,
                variances_at_dataset_distance=at_d,
                variances_at_record_distance=at_di,
            )
        )
    dataset_variances = tuple(
        min(entry.variances_at_dataset_distance[j] for entry in per_record)
        for j in range(original.m)
    )
    return PrivacyCertificate(
        per_record=tuple(per_record),
        dataset_distance=dataset_distance,
        dataset_variances=dataset_variances,
        disclosure=disclosure,
        tie_seed=int(tie_seed),
    )
