"""Promotion on rectangular tableaux, the source of the 0-arrows in type A."""

from __future__ import annotations

from typing import Sequence

Columns = tuple[tuple[int, ...], ...]


def promotion(columns: Sequence[Sequence[int]], n_letters: int) -> Columns:
    """Promotion pr on a rectangular semistandard tableau over 1..n_letters.

    Remove the largest letters, slide the rest toward the far corner by jeu de
    taquin, add one to every entry and fill the vacated cells with 1.
    Columns are listed left to right, entries increasing within a column.
    """
    cols = [tuple(c) for c in columns]
    if not cols:
        return ()
    height, width = len(cols[0]), len(cols)
    if any(len(c) != height for c in cols):
        raise ValueError("promotion needs a rectangular tableau")
    grid: list[list[int | None]] = [[cols[j][i] for j in range(width)] for i in range(height)]
    vacated = set()
    for j in range(width):
        # the largest letter can only sit at the end of a column
        if grid[height - 1][j] != n_letters:
            continue
        i, jj = height - 1, j
        while True:
            up = grid[i - 1][jj] if i > 0 and (i - 1, jj) not in vacated else None
            left = grid[i][jj - 1] if jj > 0 and (i, jj - 1) not in vacated else None
            if up is None and left is None:
                break
            if left is None or (up is not None and up >= left):
                grid[i][jj] = up
                i -= 1
            else:
                grid[i][jj] = left
                jj -= 1
        grid[i][jj] = None
        vacated.add((i, jj))
    return tuple(
        tuple(1 if grid[i][j] is None else grid[i][j] + 1 for i in range(height)) for j in range(width)
    )


def promotion_inverse(columns: Sequence[Sequence[int]], n_letters: int) -> Columns:
    """Inverse promotion, by complementing letters and rotating: pr^-1 = rot . pr . rot."""
    return _rotate(promotion(_rotate(columns, n_letters), n_letters), n_letters)


def _rotate(columns, n_letters) -> Columns:
    cols = [tuple(c) for c in columns]
    return tuple(tuple(n_letters + 1 - x for x in reversed(c)) for c in reversed(cols))
