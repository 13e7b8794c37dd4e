"""Exhaustive decomposability search: exact multicover over the factor multiset.

A subfactorization taking every vertex pair exactly lambda_0 times is an
exact multicover by 1-factors.  The search walks the pairs (0, v) in
ascending v (every factor covers exactly one such pair), choosing a
non-decreasing multiset of factors per column, pruning on overfilled pairs
and on remaining supply, and killing the untaken candidates of a finished
column.  Outcomes are kept strictly apart: a witness, a proof of absence
(full exhaustion), or a budget stop.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass, field

from .core import MultiFactorization, validate_factorization
from . import cyclic
from .starters import (StarterSet, assemble, certificate_order,
                       feasible_interval)

FOUND = "found"
PROVEN_NONE = "proven_none"
EXHAUSTED = "exhausted"


class InvalidInput(ValueError):
    """Input factorization fails validation (or lambda < 2)."""


class HypothesesUnmet(ValueError):
    """Orbit-granular search requires a successful certificate ordering."""


@dataclass(frozen=True)
class Witness:
    """A proper subfactorization: lambda_0 and the chosen factor indices."""

    lambda0: int
    indices: tuple[int, ...]


@dataclass
class SearchBudget:
    max_nodes: int = 100_000_000
    max_seconds: float = 300.0


@dataclass
class SearchResult:
    outcome: str  # "found" | "proven_none" | "exhausted"
    witness: Witness | None = None
    nodes: int = 0
    elapsed: float = 0.0
    lambda0_exhausted: list[int] = field(default_factory=list)


class _BudgetStop(Exception):
    pass


def decomposability_witness_check(mf: MultiFactorization, w: Witness) -> bool:
    """Re-validate a witness by direct counting, independent of the search."""
    if not 0 < w.lambda0 < mf.lam:
        return False
    if len(w.indices) != w.lambda0 * (2 * mf.n - 1):
        return False
    if len(set(w.indices)) != len(w.indices):
        return False
    counts: dict[tuple[int, int], int] = {}
    for i in w.indices:
        if not 0 <= i < len(mf.factors):
            return False
        for e in mf.factors[i]:
            counts[e] = counts.get(e, 0) + 1
    nv = 2 * mf.n
    for u in range(nv):
        for v in range(u + 1, nv):
            if counts.get((u, v), 0) != w.lambda0:
                return False
    return True


def find_subfactorization(mf: MultiFactorization, lambda0: int | None = None,
                          budget: SearchBudget | None = None) -> SearchResult:
    """Find a proper subfactorization or prove that none exists.

    With `lambda0` given only that target is searched; otherwise targets
    run 1..lam//2 (a lambda_0 witness complements to a lam-lambda_0 one).
    Returns the first witness in deterministic order, PROVEN_NONE after
    full exhaustion of every target, or EXHAUSTED on budget stop.
    """
    if mf.lam < 2:
        raise InvalidInput("decomposability needs lambda >= 2")
    if not validate_factorization(mf).valid:
        raise InvalidInput("input is not a valid 1-factorization")
    budget = budget or SearchBudget()
    targets = [lambda0] if lambda0 is not None else list(range(1, mf.lam // 2 + 1))
    if lambda0 is not None and not 0 < lambda0 < mf.lam:
        raise InvalidInput(f"lambda0 = {lambda0} out of range")
    start = time.monotonic()
    total_nodes = 0
    exhausted: list[int] = []
    for target in targets:
        searcher = _MulticoverSearch(mf, target, budget, start, total_nodes)
        witness = None
        stopped = False
        try:
            witness = searcher.run()
        except _BudgetStop:
            stopped = True
        total_nodes = searcher.nodes
        if witness is not None:
            assert decomposability_witness_check(mf, witness)
            return SearchResult(FOUND, witness, total_nodes,
                                time.monotonic() - start)
        if stopped:
            exhausted.append(target)
    elapsed = time.monotonic() - start
    if exhausted:
        return SearchResult(EXHAUSTED, None, total_nodes, elapsed, exhausted)
    return SearchResult(PROVEN_NONE, None, total_nodes, elapsed)


class _MulticoverSearch:
    """Depth-first exact multicover for one lambda_0 target."""

    def __init__(self, mf, lambda0, budget, start, nodes0):
        self.mf = mf
        self.lambda0 = lambda0
        self.budget = budget
        self.start = start
        self.nodes = nodes0
        nv = 2 * mf.n
        self.nv = nv
        uniq: list = []
        counts: list[int] = []
        self.copy_indices: list[list[int]] = []
        for i, f in enumerate(mf.factors):
            if uniq and uniq[-1] == f:
                counts[-1] += 1
                self.copy_indices[-1].append(i)
            else:
                uniq.append(f)
                counts.append(1)
                self.copy_indices.append([i])
        self.uniq = uniq
        self.counts = counts

        def pid(u, v):
            return u * nv + v

        self.edge_ids = [tuple(pid(u, v) for u, v in f) for f in uniq]
        self.zero_partner = [f[0][1] for f in uniq]  # edge (0, v) is first
        self.by_col: dict[int, list[int]] = {}
        for i, v in enumerate(self.zero_partner):
            self.by_col.setdefault(v, []).append(i)
        self.need = [0] * (nv * nv)
        for u in range(nv):
            for v in range(u + 1, nv):
                self.need[pid(u, v)] = lambda0
        self.supply = [0] * (nv * nv)
        for i, ids in enumerate(self.edge_ids):
            for e in ids:
                self.supply[e] += counts[i]
        self.columns = sorted(self.by_col)
        self.picks: list[int] = []

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetStop()
        if self.nodes % 4096 == 0:
            if time.monotonic() - self.start > self.budget.max_seconds:
                raise _BudgetStop()

    def run(self) -> Witness | None:
        # Sanity: a factor multiset can only be short of supply globally.
        for col in self.columns:
            if sum(self.counts[i] for i in self.by_col[col]) < self.lambda0:
                return None
        return self._column(0, 0)

    def _column(self, ci: int, min_u: int) -> Witness | None:
        if ci == len(self.columns):
            return self._make_witness()
        col = self.columns[ci]
        colpair = col  # pid(0, col) == col since u = 0
        need = self.need
        if need[colpair] == 0:
            killed = []
            ok = True
            for u in self.by_col[col]:
                c = self.counts[u]
                if c > 0:
                    killed.append((u, c))
                    self.counts[u] = 0
                    for e in self.edge_ids[u]:
                        self.supply[e] -= c
                        if self.supply[e] < need[e]:
                            ok = False
            result = None
            if ok:
                result = self._column(ci + 1, 0)
            for u, c in reversed(killed):
                self.counts[u] = c
                for e in self.edge_ids[u]:
                    self.supply[e] += c
            return result
        for u in self.by_col[col]:
            if u < min_u or self.counts[u] == 0:
                continue
            ids = self.edge_ids[u]
            if any(need[e] == 0 for e in ids):
                continue
            self._tick()
            self.counts[u] -= 1
            ok = True
            for e in ids:
                need[e] -= 1
                self.supply[e] -= 1
                if self.supply[e] < need[e]:
                    ok = False
            self.picks.append(u)
            result = self._column(ci, u) if ok else None
            self.picks.pop()
            for e in ids:
                need[e] += 1
                self.supply[e] += 1
            self.counts[u] += 1
            if result is not None:
                return result
        return None

    def _make_witness(self) -> Witness | None:
        if any(v != 0 for v in self.need):
            return None
        chosen: dict[int, int] = {}
        for u in self.picks:
            chosen[u] = chosen.get(u, 0) + 1
        indices: list[int] = []
        for u, k in chosen.items():
            indices.extend(self.copy_indices[u][:k])
        return Witness(self.lambda0, tuple(sorted(indices)))


def orbit_granular_search(mf: MultiFactorization, s: StarterSet,
                          budget: SearchBudget | None = None) -> SearchResult:
    """Decomposability search restricted to orbit-coherent selections.

    Sound and complete for factorizations assembled from a starter set
    whose certificate ordering succeeds: any subfactorization takes whole
    starter orbits, exactly lambda_0 copies of every joined class, and some
    number of loose M_a copies.  Enumerates (lambda_0, orbit bits),
    materializes the first feasible selection as an index witness and
    re-checks it independently.
    """
    if certificate_order(s) is None:
        raise HypothesesUnmet("certificate ordering failed for the starter set")
    if assemble(s).factors != mf.factors:
        raise HypothesesUnmet("factorization is not the assembly of the starter set")
    start = time.monotonic()
    n, lam = s.n, s.lam
    profiles = s.profiles()
    totals = s.totals()
    b = s.orbit_b() if n % 2 else None
    factor_list = mf.factors

    def indices_of(f, k):
        i0 = bisect_left(factor_list, f)
        assert factor_list[i0:i0 + k] == tuple([f] * k)
        return range(i0, i0 + k)

    for lam0 in range(1, lam):
        for bits in range(2 ** s.m):
            x = tuple((bits >> i) & 1 for i in range(s.m))
            lo, hi = feasible_interval(s, x)
            if not lo <= lam0 <= hi:
                continue
            indices: list[int] = []
            used: dict = {}
            for i in range(s.m):
                if x[i]:
                    for f in cyclic.h_orbit(cyclic.cross_factor(s.perms[i], n), n):
                        used[f] = used.get(f, 0) + 1
            join = (cyclic.join_even(n, 1) if n % 2 == 0
                    else cyclic.join_odd(n, 1, b))
            for f in sorted(set(join)):
                used[f] = used.get(f, 0) + lam0
            for a in range(n):
                if a == b:
                    continue
                cov = sum(profiles[i].get(a, 0) for i in range(s.m) if x[i])
                c_a = lam0 - cov
                assert 0 <= c_a <= lam - totals.get(a, 0)
                if c_a:
                    f = cyclic.m_factor(n, a)
                    used[f] = used.get(f, 0) + c_a
            for f, k in used.items():
                indices.extend(indices_of(f, k))
            witness = Witness(lam0, tuple(sorted(indices)))
            assert decomposability_witness_check(mf, witness)
            return SearchResult(FOUND, witness, 0, time.monotonic() - start)
    return SearchResult(PROVEN_NONE, None, 0, time.monotonic() - start)
