from __future__ import annotations

from gdrazin import Matrix


def M(*rows) -> Matrix:
    return Matrix.from_rows(rows)
