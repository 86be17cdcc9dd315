"""Collapse of the full deck group ``(Z/k)^{s-1}`` onto ``Z/k``.

Every generator ``x_j`` goes to ``t``, so a group element ``(e_1, ..., e_r)``
goes to ``t^(e_1 + ... + e_r)``.  On Alexander matrices this is the passage
from the generalized Fermat cover to the cyclic cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .alexander import AlexanderMatrix, build_alexander_matrix, crowell_ranks
from .cover import CoverSpec, Kind
from .groupring import FiniteAbelianGroup, RingElement, default_prime
from .linalg import rank_mod_p

__all__ = ["CollapseMap", "collapse_ring", "collapse_matrix", "ReductionReport", "verify_reduction"]


@dataclass(frozen=True)
class CollapseMap:
    source: FiniteAbelianGroup
    target: FiniteAbelianGroup

    def __post_init__(self):
        if self.source.k != self.target.k or self.target.rank != 1:
            raise ValueError(f"cannot collapse {self.source} onto {self.target}")

    def __call__(self, g: tuple[int, ...]) -> tuple[int, ...]:
        return (sum(g) % self.target.k,)

    def matrix(self) -> np.ndarray:
        """``|target| x |source|`` 0/1 matrix of the induced map on group rings."""
        C = np.zeros((self.target.order, self.source.order), dtype=np.int64)
        for col, g in enumerate(self.source.elements):
            C[self.target.index(self(g)), col] = 1
        return C


def collapse_ring(e: RingElement, target: FiniteAbelianGroup | None = None) -> RingElement:
    target = target or FiniteAbelianGroup(e.group.k, 1)
    if target.k != e.group.k:
        raise ValueError(f"k mismatch: {e.group.k} vs {target.k}")
    return e.map_group(target, CollapseMap(e.group, target))


def collapse_matrix(Q: AlexanderMatrix) -> AlexanderMatrix:
    spec = Q.spec
    target = FiniteAbelianGroup(spec.k, 1)
    entries = [[collapse_ring(e, target) for e in row] for row in Q.entries]
    return AlexanderMatrix(CoverSpec(spec.s, spec.k, Kind.CYCLIC), target, entries)


@dataclass
class ReductionReport:
    s: int
    k: int
    entries_match: bool
    mismatched_entries: list[tuple[int, int]]
    image_contained: bool
    prime: int
    cyclic: dict
    full: dict
    rank_checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.entries_match and self.image_contained and all(c["ok"] for c in self.rank_checks.values())

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "k": self.k,
            "entries_match": self.entries_match,
            "mismatched_entries": [list(rc) for rc in self.mismatched_entries],
            "image_contained": self.image_contained,
            "prime": self.prime,
            "rank_checks": self.rank_checks,
            "cyclic": self.cyclic,
            "full": self.full,
            "ok": self.ok,
        }


def verify_reduction(s: int, k: int, prime: int | None = None, force: bool = False) -> ReductionReport:
    full_spec = CoverSpec(s, k, Kind.FULL)
    cyc_spec = CoverSpec(s, k, Kind.CYCLIC)
    Qf = build_alexander_matrix(full_spec, force=force)
    Qc = build_alexander_matrix(cyc_spec, force=force)
    collapsed = collapse_matrix(Qf)
    mismatched = collapsed.mismatches(Qc)

    # the collapse applied blockwise to the expanded full matrix
    p = prime or default_prime(k, full_spec.order)
    C = CollapseMap(Qf.group, Qc.group).matrix()
    Cbig = np.kron(np.eye(s, dtype=np.int64), C)
    Qcx = Qc.expand() % p
    image = (Cbig @ Qf.expand()) % p
    contained = rank_mod_p(np.hstack([Qcx, image]), p) == rank_mod_p(Qcx, p)

    cyc = crowell_ranks(cyc_spec, force=force)
    full = crowell_ranks(full_spec, force=force)
    checks = {c.name: c.to_dict() for c in cyc.checks if c.name in ("rank_Apsi", "rank_H1")}
    return ReductionReport(s, k, not mismatched, mismatched, contained, p, cyc.to_dict(), full.to_dict(), checks)
