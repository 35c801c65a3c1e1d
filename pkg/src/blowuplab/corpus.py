"""Built-in arrangements used by the ``corpus`` command and the test suite."""
from __future__ import annotations

from .matroid import Arrangement, StretchedArrangement


def _rank2(size: int) -> Arrangement:
    forms = [[1, 0], [0, 1]] + [[1, c] for c in range(1, size - 1)]
    return Arrangement.from_forms(forms)


def builtin_corpus() -> list[tuple[str, Arrangement | StretchedArrangement]]:
    """(id, arrangement) pairs in a fixed order."""
    out: list[tuple[str, Arrangement | StretchedArrangement]] = []
    for k in (2, 3, 4):
        out.append((f"boolean_{k}", Arrangement.boolean(k)))
    for size in range(3, 7):
        out.append((f"generic_2_{size}", _rank2(size)))
    out.append(("pencil_x1_x2_sum_diff", Arrangement.from_forms([[1, 0], [0, 1], [1, 1], [1, -1]])))
    out.append(("generic_3_4", Arrangement.from_forms([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])))
    out.append(("coloop_3_4", Arrangement.from_forms([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])))
    out.append(("rank3_5", Arrangement.from_forms(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1]])))
    # x1-x2, x1-x3, x2-x3 in the coordinates u = x1 - x3, v = x2 - x3
    out.append(("braid_3", Arrangement.from_forms([[1, -1], [1, 0], [0, 1]])))
    out.append(("stretched_x1_2x1_x2_sum", StretchedArrangement.from_forms(
        [[1, 0], [2, 0], [0, 1], [1, 1]])))
    return out


def corpus_by_id() -> dict[str, Arrangement | StretchedArrangement]:
    return dict(builtin_corpus())
