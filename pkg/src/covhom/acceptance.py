"""Acceptance grid: each criterion as a function returning a pass/fail record.

Used by ``covhom selftest`` and by the test suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from . import formulas
from .alexander import build_alexander_matrix, closed_form_matrix, crowell_ranks
from .burau import verify_reduction
from .characters import character_rows, decomposition_table, verification_primes
from .cover import Cover, CoverSpec, Family, Kind
from .fermat import braid_action_matrices, braid_closed_form_checks, braid_relation_holds
from .linalg import smith_normal_form
from .magnus import theta
from .words import Word, random_word

__all__ = ["GRID", "DEFAULT_SEED", "CriterionResult", "CRITERIA", "run_all"]

GRID = [(s, k) for s in (3, 4, 5) for k in (2, 3, 4) if k ** (s - 1) <= 1024]
DEFAULT_SEED = 20240917


@dataclass
class CriterionResult:
    number: int
    title: str
    points: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and all(self.points.values())

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        bad = [p for p, ok in self.points.items() if not ok]
        tail = f" failing at {', '.join(bad)}" if bad else ""
        return f"[{verdict}] criterion {self.number}: {self.title} ({self.seconds:.1f}s){tail}"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "points": self.points, "failures": self.failures}


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    def run(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _key(s: int, k: int) -> str:
    return f"s={s},k={k}"


@_timed
def criterion_schreier(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(1, "Schreier generator counts and families")
    for s, k in GRID:
        cover = Cover(CoverSpec(s, k, Kind.FULL))
        ok = len(cover.generators) == formulas.expected("schreier_count_full", s, k)
        ok &= all(g.family is not Family.OTHER for g in cover.generators)
        ok &= cover.family_sizes() == cover.expected_family_sizes()
        if s == 3:
            sizes = cover.family_sizes()
            ok &= (sizes.get("A_last"), sizes.get("B(1)"), sizes.get("Bprime(1)")) == (k, (k - 1) ** 2, k)
        res.points[_key(s, k)] = ok
    return res


@_timed
def criterion_alexander(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(2, "Alexander matrix ranks over Q and mod p")
    slowest = 0.0
    for s, k in GRID:
        spec = CoverSpec(s, k, Kind.FULL)
        start = time.perf_counter()
        rep = crowell_ranks(spec)
        slowest = max(slowest, time.perf_counter() - start)
        ok = build_alexander_matrix(spec) == closed_form_matrix(spec)
        want_q = formulas.expected("rank_Q_full", s, k)
        ok &= rep.rank_Q == want_q and rep.rank_Q_mod_p == want_q
        ok &= rep.rank_Apsi == formulas.expected("rank_Apsi_full", s, k)
        ok &= rep.image_intersection_rank == 1 and rep.theta_kills_image
        res.points[_key(s, k)] = ok
    if slowest > 120:  # seconds
        res.failures.append(f"largest grid point took {slowest:.1f}s")
    return res


@_timed
def criterion_genus(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(3, "three genus computations agree")
    for s, k in GRID:
        rep = crowell_ranks(CoverSpec(s, k, Kind.FULL))
        ok = rep.consistent and rep.rank_H1 == rep.rank_H1_bookkeeping
        ok &= rep.rank_H1 == formulas.expected("rank_H1_full", s, k)
        res.points[_key(s, k)] = ok
    spots = {(3, 3): 2, (4, 2): 2, (4, 3): 20}
    for (s, k), want in spots.items():
        got = crowell_ranks(CoverSpec(s, k, Kind.FULL)).rank_H1
        if got != want:
            res.failures.append(f"rank_H1 at {_key(s, k)} is {got}, expected {want}")
    return res


@_timed
def criterion_characters(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(4, "isotypic dimensions equal C(i) for two primes")
    for s, k in GRID:
        spec = CoverSpec(s, k, Kind.FULL)
        total = sum(c for _, c in decomposition_table(spec))
        ok = total == crowell_ranks(spec).rank_H1
        primes = verification_primes(spec, 2)
        ok &= len(set(primes)) == 2
        for p in primes:
            rows = character_rows(spec, p)
            ok &= all(r.ok for r in rows)
        res.points[_key(s, k)] = ok
    support = {idx.i for idx, c in decomposition_table(CoverSpec(3, 4)) if c}
    want = {(i, j) for i in range(1, 4) for j in range(1, 4) if i + j != 4}
    mult = {c for _, c in decomposition_table(CoverSpec(3, 4)) if c}
    if support != want or mult != {1}:
        res.failures.append(f"s=3,k=4 support {sorted(support)}")
    return res


@_timed
def criterion_cyclic(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(5, "cyclic covers: rank formulas and matrix collapse")
    for s, k in GRID:
        rep = verify_reduction(s, k)
        ok = rep.entries_match and rep.image_contained
        ok &= all(c["ok"] for c in rep.rank_checks.values())
        if not ok:
            detail = {n: (c["computed"], c["expected"]) for n, c in rep.rank_checks.items() if not c["ok"]}
            res.failures.append(f"{_key(s, k)}: computed vs formula {detail}")
        res.points[_key(s, k)] = ok
    return res


@_timed
def criterion_fermat(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(6, "Fermat braid action")
    start = time.perf_counter()
    for n in (3, 4, 5):
        checks = braid_closed_form_checks(n)
        M1, M2 = braid_action_matrices(n)
        ok = all(c.ok for c in checks) and braid_relation_holds(M1, M2)
        res.failures += [f"n={n}: {c.name} {c.detail}" for c in checks if not c.ok]
        res.points[f"n={n}"] = ok
    if time.perf_counter() - start > 10:
        res.failures.append("runtime above 10s")
    return res


@_timed
def criterion_magnus(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(7, "Magnus expansion")
    rng = random.Random(seed)
    ok = True
    for _ in range(100):
        u, v = random_word(rng, 3, 5), random_word(rng, 3, 5)
        ok &= theta(u * v, 4) == theta(u, 4) * theta(v, 4)
    res.points["homomorphism"] = ok
    c = Word.generator(2, 1).commutator(Word.generator(2, 2))
    t = theta(c, 2)
    res.points["coefficients"] = t[(1, 2)] == 1 and t[(2, 1)] == -1
    ok = True
    for _ in range(20):
        u, v = random_word(rng, 3, 4), random_word(rng, 3, 4)
        ok &= not any(theta(u.commutator(v), 4).linear_part())
    res.points["commutators"] = ok
    return res


@_timed
def criterion_properties(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(8, "property suites")
    rng = random.Random(seed)

    ok = True
    for _ in range(100):
        a, b, c = (random_word(rng, 3, 6) for _ in range(3))
        ok &= (a * b) * c == a * (b * c)
        ok &= a.inverse().inverse() == a and (a * a.inverse()).is_identity()
    res.points["free words"] = ok

    ok = True
    for _ in range(20):
        x, y = random_word(rng, 3, 3), random_word(rng, 3, 3)
        for j in range(1, 7):
            left = Word(3)
            for m in range(j - 1, -1, -1):
                left = left * x.commutator(y).conjugate(x**m)
            right = Word(3)
            for m in range(j):
                right = right * x.commutator(y).conjugate(y**m)
            ok &= (x**j).commutator(y) == left and x.commutator(y**j) == right
    res.points["commutator identities"] = ok

    ok = True
    for s, k in GRID:
        for kind in Kind:
            spec = CoverSpec(s, k, kind)
            cover = Cover(spec)
            for _ in range(100):
                w = random_word(rng, s - 1, 8)
                w = w * cover.representative(cover.label(w)).inverse()
                ok &= Cover.multiply_factors(cover.rewrite(w), s - 1) == w
    res.points["rewriting round trip"] = ok

    ok = True
    nprng = np.random.default_rng(seed)
    for _ in range(20):
        m, n = nprng.integers(1, 7, size=2)
        A = nprng.integers(-9, 10, size=(m, n))
        snf = smith_normal_form(A, transforms=True)
        D = snf.diagonal()
        ok &= bool((snf.U.dot(A.astype(object)).dot(snf.V) == D).all())
        ok &= all(b % a == 0 for a, b in zip(snf.factors, snf.factors[1:]))
    res.points["Smith normal form"] = ok

    from .alexander import HomologySpace
    from .groupring import RootOfUnity

    ok = True
    for s, k in [(3, 3), (3, 4), (4, 2)]:
        spec = CoverSpec(s, k)
        p = verification_primes(spec, 1)[0]
        V = HomologySpace(spec, p)
        root = RootOfUnity.standard(k, p)
        total = np.zeros((V.dimension, V.dimension), dtype=np.int64)
        for i in product(range(k), repeat=s - 1):
            P = V.projector_matrix(i, root)
            ok &= bool(((P @ P) % p == P).all())
            total = (total + P) % p
        ok &= bool((total == np.eye(V.dimension, dtype=np.int64)).all())
    res.points["projectors"] = ok
    return res


CRITERIA = [
    criterion_schreier,
    criterion_alexander,
    criterion_genus,
    criterion_characters,
    criterion_cyclic,
    criterion_fermat,
    criterion_magnus,
    criterion_properties,
]


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [c(seed) for c in CRITERIA]
