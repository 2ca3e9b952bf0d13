"""Worst-case intruder simulation: link original records to permuted records.

The strongest realistic intruder already holds the original table and the
anonymized release, reverse-maps the release into the permuted table Z, and
then pairs each original record with the Z records at minimum permutation
distance.  Reported matches are sets: when several Z records tie at the
minimum, all of them are listed, because the intruder cannot tell them apart.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidTruthMappingError, ShapeMismatchError
from .privacy import RecordDistanceResult, _DistanceEngine, _query_matrix
from .table import DEFAULT_TIE_SEED, MicrodataTable, RankProfile


@dataclass(frozen=True)
class LinkageResult:
    """Per-record match sets plus aggregate coverage of the permuted table."""

    per_record: tuple[RecordDistanceResult, ...]
    unmatched_targets: tuple[int, ...]  # permuted records in no match set
    multiply_matched_targets: tuple[int, ...]  # permuted records in >1 match set
    tie_seed: int

    report_kind = "linkage"

    @property
    def distances(self) -> tuple[int, ...]:
        return tuple(r.distance for r in self.per_record)

    @property
    def match_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r.matched_indices for r in self.per_record)

    def to_dict(self) -> dict:
        return {
            "per_record": [r.to_dict() for r in self.per_record],
            "unmatched_targets": list(self.unmatched_targets),
            "multiply_matched_targets": list(self.multiply_matched_targets),
            "tie_seed": self.tie_seed,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "LinkageResult":
        return cls(
            per_record=tuple(
                RecordDistanceResult.from_dict(r) for r in data["per_record"]
            ),
            unmatched_targets=tuple(int(v) for v in data["unmatched_targets"]),
            multiply_matched_targets=tuple(
                int(v) for v in data["multiply_matched_targets"]
            ),
            tie_seed=int(data["tie_seed"]),
        )


def link_records(
    original: MicrodataTable,
    permuted: MicrodataTable,
    *,
    tie_seed: int = DEFAULT_TIE_SEED,
) -> LinkageResult:
    """Match every original record to its minimum-distance permuted records."""
    if original.n != permuted.n or original.m != permuted.m:
        raise ShapeMismatchError(
            f"table shapes differ: {original.n}x{original.m} vs {permuted.n}x{permuted.m}"
        )
    for j in range(original.m):
        if not np.array_equal(
            np.sort(original.column(j)), np.sort(permuted.column(j))
        ):
            warnings.warn(
                f"attribute {permuted.attribute_names[j]!r} of the permuted table "
                "is not a permutation of the original; distances remain valid but "
                "the permuted table looks like raw anonymized output",
                stacklevel=2,
            )
            break
    profile = RankProfile.of(permuted, tie_seed)
    engine = _DistanceEngine(permuted, profile)
    queries = _query_matrix(original.values, permuted.m)
    per_record = tuple(
        engine.record_result(queries[i], i + 1) for i in range(original.n)
    )
    hits = Counter()
    for r in per_record:
        hits.update(r.matched_indices)
    unmatched = tuple(t for t in range(1, permuted.n + 1) if t not in hits)
    multiply = tuple(sorted(t for t, c in hits.items() if c > 1))
    return LinkageResult(
        per_record=per_record,
        unmatched_targets=unmatched,
        multiply_matched_targets=multiply,
        tie_seed=int(tie_seed),
    )


@dataclass(frozen=True)
class LinkageScore:
    """Re-identification tally under a known true assignment.

    Only the data protector can compute this: the truth mapping from original
    records to permuted records is never available to an intruder.
    """

    correct: int
    multiple: int
    misidentified: int
    classes: tuple[str, ...]  # per record: correct | multiple | misidentified

    @property
    def correct_fraction(self) -> float:
        return self.correct / len(self.classes)

    def to_dict(self) -> dict:
        return {
            "correct": self.correct,
            "multiple": self.multiple,
            "misidentified": self.misidentified,
            "correct_fraction": self.correct_fraction,
            "classes": list(self.classes),
        }


def score_linkage(result: LinkageResult, truth: Sequence[int]) -> LinkageScore:
    """Score a linkage against the protector's true record assignment.

    `truth[i]` is the 1-based permuted record that original record i+1 became;
    it must be a bijection onto 1..n.  A record counts as correct only when
    its match set is a singleton holding the true target; any tie counts as
    multiple, and a wrong singleton counts as misidentified.
    """
    n = len(result.per_record)
    mapping = [int(t) for t in truth]
    if len(mapping) != n or sorted(mapping) != list(range(1, n + 1)):
        raise InvalidTruthMappingError(
            f"truth must be a bijection of 1..{n}, got {len(mapping)} entries"
        )
    classes = []
    for r, true_target in zip(result.per_record, mapping):
        if len(r.matched_indices) > 1:
            classes.append("multiple")
        elif r.matched_indices[0] == true_target:
            classes.append("correct")
        else:
            classes.append("misidentified")
    tally = Counter(classes)
    return LinkageScore(
        correct=tally.get("correct", 0),
        multiple=tally.get("multiple", 0),
        misidentified=tally.get("misidentified", 0),
        classes=tuple(classes),
    )
