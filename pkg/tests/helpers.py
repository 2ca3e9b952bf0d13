"""Shared builders and independent oracles for the test suite.

The oracle functions below are deliberate reimplementations in plain Python
loops.  They share no code with the package, so agreement between the two
routes is meaningful evidence rather than a tautology.
"""

import numpy as np

from permpriv.table import MicrodataTable, Role


# ---------------------------------------------------------------------------
# random input builders


def random_table(rng, n, m, role=Role.ORIGINAL, scale=100.0):
    values = rng.normal(0.0, scale, size=(n, m))
    names = tuple(f"a{j + 1}" for j in range(m))
    return MicrodataTable(values, names, role=role)


def random_pair(rng, n, m, sigma=1.0):
    """An original table plus a noisy anonymized sibling."""
    x = random_table(rng, n, m)
    y = MicrodataTable(
        x.values + rng.normal(0.0, sigma, size=(n, m)),
        x.attribute_names,
        role=Role.ANONYMIZED,
    )
    return x, y


def random_integer_table(rng, n, m, role=Role.ORIGINAL, low=0, high=10_000):
    # distinct integer values per column: exact float arithmetic, no ties
    cols = [
        rng.choice(np.arange(low, high), size=n, replace=False).astype(float)
        for _ in range(m)
    ]
    names = tuple(f"a{j + 1}" for j in range(m))
    return MicrodataTable(np.column_stack(cols), names, role=role)


def shuffle_rows(rng, table, role=Role.ANONYMIZED):
    """Row permutation of a table; returns (shuffled table, truth mapping).

    truth[i] is the 1-based row of the shuffled table holding original
    record i+1.
    """
    perm = rng.permutation(table.n)
    values = table.values[perm]
    truth = np.empty(table.n, dtype=int)
    truth[perm] = np.arange(1, table.n + 1)
    return MicrodataTable(values, table.attribute_names, role=role), tuple(
        int(t) for t in truth
    )


# ---------------------------------------------------------------------------
# oracles (pure python, loop-based)


def oracle_ranks(column):
    """1-based ranks for a tie-free column; rank 1 is the smallest value."""
    column = list(column)
    assert len(set(column)) == len(column), "oracle requires tie-free data"
    order = sorted(range(len(column)), key=lambda i: column[i])
    ranks = [0] * len(column)
    for r, i in enumerate(order, start=1):
        ranks[i] = r
    return ranks


def oracle_closest(column, ranks, value):
    """(closest value, its rank); distance ties go to the smaller rank."""
    best = None
    for y, r in zip(column, ranks):
        key = (abs(y - value), r)
        if best is None or key < best[0]:
            best = (key, y, r)
    return best[1], best[2]


def oracle_distance(record, table_values, rank_matrix):
    """(distance, matched 1-based rows, per-attribute closest ranks)."""
    n = len(table_values)
    m = len(record)
    centers = []
    for j in range(m):
        col = [row[j] for row in table_values]
        rks = [row[j] for row in rank_matrix]
        _, r = oracle_closest(col, rks, record[j])
        centers.append(r)
    best_d = None
    matches = []
    for p in range(n):
        dev = max(abs(rank_matrix[p][j] - centers[j]) for j in range(m))
        if best_d is None or dev < best_d:
            best_d, matches = dev, [p + 1]
        elif dev == best_d:
            matches.append(p + 1)
    return best_d, tuple(matches), tuple(centers)


def oracle_window_variance(column, ranks, center, d):
    """Population variance of the values whose rank is within d of center."""
    vals = [v for v, r in zip(column, ranks) if abs(r - center) <= d]
    mean = sum(vals) / len(vals)
    return sum((v - mean) ** 2 for v in vals) / len(vals)


def oracle_spearman(a, b):
    """Pearson correlation of tie-free ranks; no difference formula."""
    ra = np.array(oracle_ranks(a), dtype=float)
    rb = np.array(oracle_ranks(b), dtype=float)
    return float(np.corrcoef(ra, rb)[0, 1])


def oracle_total_variation(freq_a, freq_b):
    support = set(freq_a) | set(freq_b)
    return 0.5 * sum(abs(freq_a.get(d, 0.0) - freq_b.get(d, 0.0)) for d in support)
