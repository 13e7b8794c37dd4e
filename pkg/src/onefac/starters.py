"""Starter-orbit assembly and the counting certificate for indecomposability.

A *starter set* is a list of cross-edge 1-factors with trivial shift
stabilizer, lying in pairwise distinct H-orbits, whose aggregated
difference profile T(a) stays <= lambda everywhere (and leaves some orbit
untouched when n is odd).  From a starter set the assembly produces a
1-factorization of lambda*K_2n consisting of the full H-orbit of every
starter, the joined side-factor block, and lambda - T(a) loose copies of
each orbit factor M_a.

The certificate decides indecomposability by pure counting.  Any
subfactorization of the assembled object must (a) take each starter orbit
entirely or not at all, established by a greedy ordering argument over
private orbits, and (b) take exactly lambda_0 copies of every joined side
factor, which pins the coverage of every M_a to an integer system

    lambda_0  =  sum_i x_i * t_i(a)  +  c_a,      0 <= c_a <= lambda - T(a)

over orbit in/out bits x in {0,1}^m.  If the system is infeasible for every
x and every 0 < lambda_0 < lambda, no subfactorization exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import MultiFactorization, OneFactor
from . import cyclic

PROVEN = "proven"
UNKNOWN = "unknown"


class ProfileSumInvalid(ValueError):
    """Difference profile violates the displacement-sum condition."""


class InfeasibleProfile(ValueError):
    """No trivial-stabilizer permutation realizes the requested profile."""


class PreconditionFailed(ValueError):
    """Starter-set conditions are violated; details in args[1]."""

    def __init__(self, message: str, violations: list[str]):
        super().__init__(message, violations)
        self.violations = violations


class StabilizerNotTrivial(ValueError):
    """Operation requires a starter with trivial shift stabilizer."""


class OrderingFailed(ValueError):
    """The greedy private-orbit ordering could not mark every starter."""


class NoProfilesFound(ValueError):
    """Profile search exhausted its enumeration without a solution."""


@dataclass(frozen=True)
class StarterSet:
    """Starters for the assembly, stored as permutations of Z_n."""

    n: int
    lam: int
    perms: tuple[tuple[int, ...], ...]

    @classmethod
    def from_profiles(cls, n: int, lam: int, profiles) -> "StarterSet":
        return cls(n, lam, tuple(find_starter(n, t) for t in profiles))

    @property
    def m(self) -> int:
        return len(self.perms)

    def factors(self) -> list[OneFactor]:
        return [cyclic.cross_factor(pi, self.n) for pi in self.perms]

    def profiles(self) -> list[dict[int, int]]:
        return [cyclic.profile(pi, self.n) for pi in self.perms]

    def totals(self) -> dict[int, int]:
        """Aggregated profile T(a) = sum_i t_i(a), zero entries omitted."""
        tot: dict[int, int] = {}
        for t in self.profiles():
            for a, v in t.items():
                tot[a] = tot.get(a, 0) + v
        return tot

    def orbit_b(self) -> int | None:
        """Smallest a with T(a) = 0 (the joined cross orbit for odd n)."""
        tot = self.totals()
        for a in range(self.n):
            if tot.get(a, 0) == 0:
                return a
        return None


@dataclass(frozen=True)
class TraceEntry:
    """lambda_0 interval of one orbit selection x, with the binding orbits.

    Every lambda_0 below `lo` violates the coverage lower bound on orbit
    `lo_orbit`; every lambda_0 above `hi` exceeds the loose-copy stock of
    orbit `hi_orbit`.  The selection is infeasible iff lo > hi.
    """

    x: tuple[int, ...]
    status: str  # "infeasible" | "feasible"
    lo: int
    hi: int
    lo_orbit: int | None
    hi_orbit: int | None


@dataclass(frozen=True)
class Certificate:
    """Outcome of the counting certificate.

    status is "proven" or "unknown".  `ordering` is the greedy marking
    order as (starter index, private orbit) pairs; `trace` has one
    TraceEntry per orbit-selection vector x.
    """

    status: str
    ordering: tuple[tuple[int, int], ...]
    trace: tuple[TraceEntry, ...]

    @property
    def proven(self) -> bool:
        return self.status == PROVEN


def check_starter_conditions(s: StarterSet) -> list[str]:
    """All starter-set conditions; returns a list of violations (empty = ok)."""
    violations = []
    factors = []
    for i, pi in enumerate(s.perms):
        try:
            factors.append(cyclic.cross_factor(pi, s.n))
        except cyclic.NotAPermutation as exc:
            violations.append(f"starter {i}: {exc}")
            factors.append(None)
    for i, f in enumerate(factors):
        if f is None:
            continue
        order = cyclic.h_stabilizer_order(f, s.n)
        if order != 1:
            violations.append(f"starter {i}: stabilizer order {order} (must be 1)")
    reps = {}
    for i, f in enumerate(factors):
        if f is None:
            continue
        rep = min(cyclic.h_orbit(f, s.n))
        if rep in reps:
            violations.append(f"starters {reps[rep]} and {i} share an H-orbit")
        else:
            reps[rep] = i
    for a, total in sorted(s.totals().items()):
        if total > s.lam:
            violations.append(f"t(M_{a}) = {total} exceeds lambda = {s.lam}")
    if s.n % 2 and s.orbit_b() is None:
        violations.append("odd n but no orbit M_b with t(M_b) = 0")
    return violations


def assemble(s: StarterSet, sigma=None) -> MultiFactorization:
    """Build the full 1-factorization of lambda*K_2n from a starter set.

    Output: the H-orbit of every starter, the joined side block (lambda
    copies of each class), and lambda - T(a) copies of each M_a; except
    M_b, whose cross edges ride inside the joined block when n is odd.
    """
    violations = check_starter_conditions(s)
    if violations:
        raise PreconditionFailed("starter conditions violated", violations)
    n, lam = s.n, s.lam
    totals = s.totals()
    factors: list[OneFactor] = []
    for f in s.factors():
        factors.extend(cyclic.h_orbit(f, n))
    if n % 2 == 0:
        factors.extend(cyclic.join_even(n, lam, sigma))
        skip = set()
    else:
        b = s.orbit_b()
        factors.extend(cyclic.join_odd(n, lam, b))
        skip = {b}
    for a in range(n):
        if a in skip:
            continue
        factors.extend([cyclic.m_factor(n, a)] * (lam - totals.get(a, 0)))
    mf = MultiFactorization.make(n, lam, factors, {"tag": "cyclic", "n": n})
    assert len(mf.factors) == mf.expected_factor_count()
    return mf


def orbit_multiplicity_check(pi, n: int) -> dict[int, int]:
    """Brute-force the orbit multiplicity law for a trivial-stabilizer starter.

    Counts, over the multiset of edges of the whole H-orbit of the factor,
    how often each M_a edge occurs, and asserts the count equals the
    starter's profile entry t[a] for every a and every edge.  Returns the
    map a -> multiplicity.
    """
    f = cyclic.cross_factor(pi, n)
    if cyclic.h_stabilizer_order(f, n) != 1:
        raise StabilizerNotTrivial("orbit multiplicity law needs a trivial stabilizer")
    t = cyclic.profile(pi, n)
    counts: dict[tuple[int, int], int] = {}
    for h in range(n):
        for e in cyclic.shift_factor(f, n, h):
            counts[e] = counts.get(e, 0) + 1
    for a in range(n):
        expected = t.get(a, 0)
        for e in cyclic.m_factor(n, a):
            if counts.get(e, 0) != expected:
                raise AssertionError(
                    f"edge {e} of M_{a} occurs {counts.get(e, 0)} times, expected {expected}")
    return {a: t.get(a, 0) for a in range(n)}


def certificate_order(s: StarterSet) -> tuple[tuple[int, int], ...] | None:
    """Greedy private-orbit marking order, or None when it does not close.

    A starter F_i may be marked through orbit a when t_i(a) = 1 and every
    other starter touching M_a is already marked.  Ties break on lowest
    starter index, then lowest orbit.
    """
    order = _greedy_order_profiles(s.profiles())
    return None if order is None else tuple(order)


def feasible_interval(s: StarterSet, x) -> tuple[int, int]:
    """Feasible lambda_0 range for an orbit in/out selection x (empty if lo > hi).

    For each orbit a (except the joined orbit b when n is odd) the coverage
    equation forces cov_x(a) <= lambda_0 <= cov_x(a) + lambda - T(a).
    """
    lo, hi, _, _ = _interval_with_orbits(s, x)
    return lo, hi


def _interval_with_orbits(s: StarterSet, x):
    profiles = s.profiles()
    totals = s.totals()
    b = s.orbit_b() if s.n % 2 else None
    lo, hi = 1, s.lam - 1
    lo_orbit = hi_orbit = None
    for a in range(s.n):
        if a == b:
            continue
        cov = sum(profiles[i].get(a, 0) for i in range(s.m) if x[i])
        if cov > lo:
            lo, lo_orbit = cov, a
        slack = cov + s.lam - totals.get(a, 0)
        if slack < hi:
            hi, hi_orbit = slack, a
    return lo, hi, lo_orbit, hi_orbit


def certificate_indecomposable(s: StarterSet) -> Certificate:
    """Run the counting certificate over all orbit selections.

    Requires lambda >= 2 (at lambda = 1 there is nothing to certify) and a
    successful greedy ordering, otherwise OrderingFailed.  Status is
    "proven" iff every selection's lambda_0 interval is empty.
    """
    if s.lam < 2:
        raise ValueError("indecomposability certificate needs lambda >= 2")
    violations = check_starter_conditions(s)
    if violations:
        raise PreconditionFailed("starter conditions violated", violations)
    ordering = certificate_order(s)
    if ordering is None:
        raise OrderingFailed("greedy private-orbit ordering did not close")
    trace = []
    status = PROVEN
    for bits in range(2 ** s.m):
        x = tuple((bits >> i) & 1 for i in range(s.m))
        lo, hi, lo_orbit, hi_orbit = _interval_with_orbits(s, x)
        entry_status = "infeasible" if lo > hi else "feasible"
        if entry_status == "feasible":
            status = UNKNOWN
        trace.append(TraceEntry(x, entry_status, lo, hi, lo_orbit, hi_orbit))
    return Certificate(status=status, ordering=ordering, trace=tuple(trace))


def find_starter(n: int, target: dict[int, int]) -> tuple[int, ...]:
    """Deterministic backtracking for a permutation with a given profile.

    Finds pi with displacement multiset {pi(x) - x mod n} equal to `target`
    and trivial shift stabilizer, assigning positions smallest-index-first
    and differences in ascending order.  Raises ProfileSumInvalid when the
    displacement sum is nonzero mod n (no permutation can exist), and
    InfeasibleProfile when the exhaustive search finds no realization.
    """
    if any(v < 0 for v in target.values()) or any(not 0 <= a < n for a in target):
        raise ProfileSumInvalid(f"profile entries outside Z_{n} or negative")
    if sum(target.values()) != n:
        raise ProfileSumInvalid(f"profile mass {sum(target.values())} != n = {n}")
    if sum(a * v for a, v in target.items()) % n != 0:
        raise ProfileSumInvalid("displacement sum not divisible by n")
    remaining = {a: v for a, v in sorted(target.items()) if v > 0}
    pi = [-1] * n
    used = [False] * n
    diffs = sorted(remaining)

    def extend(x: int) -> tuple[int, ...] | None:
        if x == n:
            cand = tuple(pi)
            f = cyclic.cross_factor(cand, n)
            if cyclic.h_stabilizer_order(f, n) == 1:
                return cand
            return None
        for a in diffs:
            if remaining[a] == 0:
                continue
            y = (x + a) % n
            if used[y]:
                continue
            pi[x] = y
            used[y] = True
            remaining[a] -= 1
            found = extend(x + 1)
            if found is not None:
                return found
            remaining[a] += 1
            used[y] = False
            pi[x] = -1
        return None

    found = extend(0)
    if found is None:
        raise InfeasibleProfile(f"no trivial-stabilizer realization of {target}")
    return found


@lru_cache(maxsize=None)
def _realizable(n: int, items: tuple[tuple[int, int], ...]) -> bool:
    try:
        find_starter(n, dict(items))
        return True
    except (ProfileSumInvalid, InfeasibleProfile):
        return False


def _slot_candidates(n: int, lam: int, p: int) -> list[dict[int, int]]:
    """Searched profile shapes {0: p, 1: q, g: w, s: 1} in deterministic order.

    s is the closure singleton forced by the displacement sum; candidates
    whose largest entry exceeds p come first (those defeat their own
    single-orbit selection in the certificate), then q descends and the
    bulk orbit g ascends.
    """
    out = []
    seen = set()
    for q in range(n - 1 - p, -1, -1):
        rho = n - p - q
        if rho < 1:
            continue
        if rho == 1:
            gs = [None]
        else:
            gs = list(range(2, n))
        for g in gs:
            w = rho - 1
            if g is None:
                s = (-q) % n
                prof = {0: p, 1: q, s: 1}
            else:
                s = (-(q + g * w)) % n
                if s in (0, 1) or s == g:
                    continue
                prof = {0: p, 1: q, g: w, s: 1}
            if s in (0, 1):
                continue
            prof = {a: v for a, v in prof.items() if v > 0}
            if sum(prof.values()) != n or max(prof.values()) > lam:
                continue
            key = tuple(sorted(prof.items()))
            if key in seen:
                continue
            seen.add(key)
            bucket = 0 if max(prof.values()) > p else 1
            out.append((bucket, prof))
    out.sort(key=lambda c: c[0])
    return [prof for _, prof in out]


def find_profiles(n: int, lam: int, m: int, fixed=(), limit: int = 1,
                  max_nodes: int = 2_000_000) -> list[tuple[dict[int, int], ...]]:
    """Search m-tuples of starter profiles whose certificate is proven.

    The first len(fixed) slots are pinned; the remaining slots are drawn
    from a structured family anchored on orbit 0 (the free slots' orbit-0
    masses always top the aggregate T(0) up to exactly lambda, which every
    proven certificate needs on some orbit) plus an orbit-1 mass, one bulk
    orbit and a closure singleton.  Every returned tuple is realizable
    (find_starter succeeds per profile), keeps T(a) <= lambda, leaves a
    zero orbit when n is odd, and passes certificate_order and
    certificate_indecomposable.  Deterministic; returns at most `limit`
    solutions and raises NoProfilesFound when there are none in range.
    """
    fixed = tuple(dict(t) for t in fixed)
    free = m - len(fixed)
    if free < 0:
        raise ValueError("more fixed profiles than slots")
    solutions: list[tuple[dict[int, int], ...]] = []
    nodes = 0
    base_tot: dict[int, int] = {}
    for t in fixed:
        for a, v in t.items():
            base_tot[a] = base_tot.get(a, 0) + v
    if any(v > lam for v in base_tot.values()):
        raise NoProfilesFound("fixed profiles already exceed lambda")
    delta0 = lam - base_tot.get(0, 0)
    if free == 0:
        if _leaf_ok(n, lam, fixed):
            return [fixed]
        raise NoProfilesFound("fixed profiles do not certify")
    if delta0 < 0:
        raise NoProfilesFound("orbit-0 mass of fixed profiles exceeds lambda")

    chosen: list[dict[int, int]] = []

    def dfs(slot: int, rem0: int, tot: dict[int, int]) -> bool:
        nonlocal nodes
        last = slot == free - 1
        pmax = min(rem0, n - 1)
        for p in range(pmax, -1, -1):
            if last and p != rem0:
                continue
            for prof in _slot_candidates(n, lam, p):
                nodes += 1
                if nodes > max_nodes:
                    return True
                new_tot = dict(tot)
                ok = True
                for a, v in prof.items():
                    new_tot[a] = new_tot.get(a, 0) + v
                    if new_tot[a] > lam:
                        ok = False
                        break
                if not ok:
                    continue
                if prof in chosen or prof in fixed:
                    continue
                chosen.append(prof)
                if last:
                    cand = fixed + tuple(chosen)
                    if _leaf_ok(n, lam, cand):
                        solutions.append(cand)
                        if len(solutions) >= limit:
                            chosen.pop()
                            return True
                else:
                    if dfs(slot + 1, rem0 - p, new_tot):
                        chosen.pop()
                        return True
                chosen.pop()
        return False

    dfs(0, delta0, dict(base_tot))
    if not solutions:
        raise NoProfilesFound(
            f"no certified {m}-tuple found for n={n}, lambda={lam} "
            f"within {max_nodes} nodes")
    return solutions


def _leaf_ok(n: int, lam: int, profiles: tuple[dict[int, int], ...]) -> bool:
    """Full feasibility check of a complete profile tuple (cheap parts first)."""
    if lam < 2:
        return False
    tot: dict[int, int] = {}
    for t in profiles:
        for a, v in t.items():
            tot[a] = tot.get(a, 0) + v
    if any(v > lam for v in tot.values()):
        return False
    if max(tot.values(), default=0) != lam:
        return False
    if n % 2 and all(tot.get(a, 0) > 0 for a in range(n)):
        return False
    keys = [tuple(sorted(t.items())) for t in profiles]
    if len(set(keys)) != len(keys):
        return False
    for t in profiles:
        if sum(t.values()) != n:
            return False
        if sum(a * v for a, v in t.items()) % n != 0:
            return False
        if 1 not in t.values():
            return False
    m = len(profiles)
    order = _greedy_order_profiles(profiles)
    if order is None:
        return False
    b = None
    if n % 2:
        b = next(a for a in range(n) if tot.get(a, 0) == 0)
    for bits in range(2 ** m):
        x = [(bits >> i) & 1 for i in range(m)]
        lo, hi = 1, lam - 1
        for a in range(n):
            if a == b:
                continue
            cov = sum(profiles[i].get(a, 0) for i in range(m) if x[i])
            if cov > lo:
                lo = cov
            slack = cov + lam - tot.get(a, 0)
            if slack < hi:
                hi = slack
            if lo > hi:
                break
        if lo <= hi:
            return False
    for t in profiles:
        if not _realizable(n, tuple(sorted(t.items()))):
            return False
    return True


def _greedy_order_profiles(profiles) -> list[tuple[int, int]] | None:
    """certificate_order on bare profile dicts (used inside the search)."""
    m = len(profiles)
    marked: set[int] = set()
    order = []
    while len(marked) < m:
        progress = False
        for i in range(m):
            if i in marked:
                continue
            for a in sorted(profiles[i]):
                if profiles[i][a] != 1:
                    continue
                if all(k in marked or profiles[k].get(a, 0) == 0
                       for k in range(m) if k != i):
                    marked.add(i)
                    order.append((i, a))
                    progress = True
                    break
            if progress:
                break
        if not progress:
            return None
    return order
