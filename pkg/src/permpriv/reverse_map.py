"""Reverse mapping: express any anonymized table as a permutation of the original.

Given an original column X and an anonymized column Y of equal length, the
reverse-mapped column Z places, at each record i, the X value whose rank
equals the rank of y_i within Y.  Z therefore keeps the exact multiset of X
while ordering records the way Y does; whatever the anonymization method did,
its output is reproduced by permuting X and then adding rank-neutral noise.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatchError
from .table import (
    DEFAULT_TIE_SEED,
    MicrodataTable,
    Role,
    _as_column,
    compute_ranks,
    derive_column_seed,
)


def reverse_map_column(original, anonymized, tie_seed: int = DEFAULT_TIE_SEED) -> np.ndarray:
    """Reverse-map one attribute.

    Returns z with z_i equal to the j-th smallest original value, where j is
    the rank of anonymized_i within the anonymized column.  Ties in the
    anonymized column are broken under tie_seed.
    """
    x = _as_column(original)
    y = _as_column(anonymized)
    if x.size != y.size:
        raise ShapeMismatchError(f"column lengths differ: {x.size} vs {y.size}")
    y_ranks = compute_ranks(y, tie_seed)
    z = np.sort(x, kind="stable")[y_ranks - 1]
    # postconditions, cheap enough to keep on every run
    assert np.array_equal(np.sort(z), np.sort(x)), "multiset not preserved"
    assert np.all(np.diff(z[np.argsort(y_ranks)]) >= 0), "rank order not preserved"
    return z


def reverse_map_table(
    original: MicrodataTable,
    anonymized: MicrodataTable,
    tie_seed: int = DEFAULT_TIE_SEED,
) -> MicrodataTable:
    """Reverse-map every attribute of a table; per-column seeds are derived.

    The result carries role ``reverse_mapped`` and provenance recording the
    method, the tie seed, and the roles of both source tables.
    """
    if original.n != anonymized.n or original.m != anonymized.m:
        raise ShapeMismatchError(
            f"table shapes differ: {original.n}x{original.m} vs {anonymized.n}x{anonymized.m}"
        )
    if original.attribute_names != anonymized.attribute_names:
        raise ShapeMismatchError("attribute names or order differ between tables")
    cols = [
        reverse_map_column(
            original.column(j), anonymized.column(j), derive_column_seed(tie_seed, j)
        )
        for j in range(original.m)
    ]
    return MicrodataTable.from_columns(
        cols,
        original.attribute_names,
        role=Role.REVERSE_MAPPED,
        provenance={
            "method": "reverse_mapping",
            "tie_seed": int(tie_seed),
            "original_role": original.role.value,
            "anonymized_role": anonymized.role.value,
        },
    )
