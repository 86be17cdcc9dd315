"""Closed-form predictions that every computation is checked against.

The table is a plain dict so a test harness can swap in a corrupted entry
(see :func:`inject_fault`) and confirm that mismatches are caught.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from math import gcd
from typing import Callable

__all__ = ["FORMULAS", "expected", "inject_fault", "clear_faults", "cyclic_genus"]


def _full_genus(s: int, k: int) -> Fraction:
    return 1 + Fraction(k ** (s - 2), 2) * ((s - 2) * (k - 1) - 2)


def cyclic_genus(s: int, k: int) -> Fraction:
    """Riemann-Hurwitz for the cyclic cover with ``x_j -> 1``.

    The first ``s-1`` branch points are totally ramified; over the last one
    the monodromy ``-(s-1)`` has order ``k / gcd(s-1, k)``.
    """
    d = gcd(s - 1, k)
    return Fraction((s - 2) * k - s + 3 - d, 2)


FORMULAS: dict[str, Callable[[int, int], int | Fraction]] = {
    "schreier_count_full": lambda s, k: (s - 2) * k ** (s - 1) + 1,
    "schreier_count_cyclic": lambda s, k: k * (s - 2) + 1,
    "stabilized_full": lambda s, k: s * k ** (s - 2),
    "rank_Q_full": lambda s, k: s * k ** (s - 2) + k ** (s - 1) - 1,
    "rank_Apsi_full": lambda s, k: (s - 1) * k ** (s - 1) - s * k ** (s - 2) + 1,
    "rank_H1_full": lambda s, k: (s - 2) * k ** (s - 1) + 2 - s * k ** (s - 2),
    # the variant with leading coefficient (s-1); kept to report the discrepancy
    "rank_H1_full_printed": lambda s, k: (s - 1) * k ** (s - 1) + 2 - s * k ** (s - 2),
    "genus_full": _full_genus,
    "rank_Apsi_cyclic": lambda s, k: (s - 1) * k - s + 1,
    "rank_H1_cyclic": lambda s, k: (s - 2) * (k - 1),
    "genus_cyclic": cyclic_genus,
    "fermat_basis": lambda n, _=None: (n - 1) * (n - 2),
}

_PRISTINE = dict(FORMULAS)


def expected(name: str, s: int, k: int):
    value = FORMULAS[name](s, k)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def inject_fault(name: str, delta: int = 1) -> None:
    """Corrupt one table entry by ``delta``; used to exercise failure paths."""
    if name not in FORMULAS:
        raise KeyError(f"unknown formula {name!r}")
    good = _PRISTINE[name]
    FORMULAS[name] = lambda s, k: good(s, k) + delta


def clear_faults() -> None:
    FORMULAS.clear()
    FORMULAS.update(_PRISTINE)


@contextmanager
def faulty(name: str, delta: int = 1):
    inject_fault(name, delta)
    try:
        yield
    finally:
        clear_faults()
