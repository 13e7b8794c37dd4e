"""The Z_n x Z_2 vertex model: orbit factors, round-robin factorizations, joins.

The 2n vertices split into two sides V_0 = {0..n-1} and V_1 = {n..2n-1};
the vertex a_j has id a + n*j.  The shift group H = Z_n acts by adding h to
the Z_n coordinate on both sides.  Cross edges [a_0, b_1] fall into n orbit
factors M_a (all cross edges of difference a), side edges are covered by
Lucas' round-robin 1-factorization of K_n (even n) or its near-1-factor
variant (odd n), joined across the two sides.

A cross-edge 1-factor is conveniently a permutation pi of Z_n: the factor
{[x_0, pi(x)_1]}.  Its difference profile t[a] = |edges in common with M_a|
= #{x : pi(x) - x = a (mod n)} is the fingerprint all the starter machinery
works with.
"""

from __future__ import annotations

from .core import Edge, OneFactor, canonicalize_factor


class OddOrder(ValueError):
    """Operation requires an even n."""


class EvenOrder(ValueError):
    """Operation requires an odd n."""


class NotAPermutation(ValueError):
    """Sequence is not a permutation of 0..k-1."""


class NotCrossOnly(ValueError):
    """Factor contains a side edge where only cross edges are allowed."""


def vertex_id(a: int, j: int, n: int) -> int:
    """Id of the vertex a_j in the cyclic model."""
    return a % n + n * (j % 2)


def m_factor(n: int, a: int) -> OneFactor:
    """The orbit factor M_a = {[x_0, (x+a)_1] : x in Z_n}."""
    assert n >= 2
    return canonicalize_factor([(x, n + (x + a) % n) for x in range(n)], 2 * n)


def cross_factor(pi, n: int) -> OneFactor:
    """The cross-edge factor {[x_0, pi(x)_1]} of a permutation pi of Z_n."""
    _check_permutation(pi, n)
    return canonicalize_factor([(x, n + pi[x]) for x in range(n)], 2 * n)


def factor_permutation(factor: OneFactor, n: int) -> tuple[int, ...]:
    """Recover pi from a cross-only factor; raises NotCrossOnly otherwise."""
    pi = [-1] * n
    for u, v in factor:
        if not (u < n <= v):
            raise NotCrossOnly(f"edge ({u},{v}) is not a cross edge")
        pi[u] = v - n
    return tuple(pi)


def profile(factor_or_pi, n: int) -> dict[int, int]:
    """Difference profile t[a] = |E(F) & E(M_a)| of a cross-edge factor.

    Accepts either a permutation of Z_n or a canonical cross-only factor.
    Only nonzero entries are present in the returned dict.
    """
    if factor_or_pi and isinstance(factor_or_pi[0], tuple):
        pi = factor_permutation(factor_or_pi, n)
    else:
        pi = tuple(factor_or_pi)
        _check_permutation(pi, n)
    t: dict[int, int] = {}
    for x in range(n):
        a = (pi[x] - x) % n
        t[a] = t.get(a, 0) + 1
    return t


def shift_factor(factor: OneFactor, n: int, h: int) -> OneFactor:
    """The factor F + h (add h to the Z_n coordinate of every vertex)."""
    def mv(u: int) -> int:
        return (u + h) % n if u < n else n + (u - n + h) % n
    return canonicalize_factor([(mv(u), mv(v)) for u, v in factor], 2 * n)


def h_orbit(factor: OneFactor, n: int) -> list[OneFactor]:
    """The orbit {F + h : h in H}, deduplicated and sorted."""
    return sorted({shift_factor(factor, n, h) for h in range(n)})


def h_stabilizer_order(factor: OneFactor, n: int) -> int:
    """Order of {h : F + h = F}; always divides n."""
    order = sum(1 for h in range(n) if shift_factor(factor, n, h) == factor)
    assert n % order == 0
    return order


def lucas_factorization(n: int) -> list[OneFactor]:
    """Round-robin 1-factorization of K_n for even n.

    Vertex set is Z_{n-1} together with a hub encoded as label n-1.
    Factor i pairs the hub with i and folds the remaining labels
    symmetrically around it; every edge of K_n occurs exactly once.
    """
    if n % 2:
        raise OddOrder(f"n={n} must be even")
    assert n >= 2
    mod = n - 1
    hub = n - 1
    factors = []
    for i in range(mod):
        edges = [(i, hub)]
        for a in range(1, (n - 2) // 2 + 1):
            edges.append(((a + i) % mod, (-a + i) % mod))
        factors.append(canonicalize_factor(edges, n))
    return factors


def near_one_factorization(n: int) -> list[tuple[Edge, ...]]:
    """Near-1-factors of K_n for odd n; factor i leaves vertex i unmatched.

    Obtained from the round-robin factorization of K_{n+1} by deleting the
    hub.  Every edge of K_n occurs in exactly one near-factor.
    """
    if n % 2 == 0:
        raise EvenOrder(f"n={n} must be odd")
    full = lucas_factorization(n + 1)
    near = []
    for i, f in enumerate(full):
        edges = tuple(e for e in f if n not in e)
        assert all(i not in e for e in edges)
        near.append(edges)
    return near


def join_even(n: int, lam: int, sigma=None) -> list[OneFactor]:
    """lam copies of the n-1 side factors L_i(V_0) | L_sigma(i)(V_1).

    Covers every side edge exactly lam times and no cross edge.  `sigma`
    pairs the factor indices of the two sides (identity by default); the
    union is the same edge multiset for every choice.
    """
    if n % 2:
        raise OddOrder(f"n={n} must be even")
    if sigma is None:
        sigma = tuple(range(n - 1))
    else:
        sigma = tuple(sigma)
        _check_permutation(sigma, n - 1)
    side = lucas_factorization(n)
    out = []
    for i in range(n - 1):
        edges = list(side[i]) + [(u + n, v + n) for u, v in side[sigma[i]]]
        f = canonicalize_factor(edges, 2 * n)
        out.extend([f] * lam)
    return out


def join_odd(n: int, lam: int, b: int) -> list[OneFactor]:
    """lam copies of the n factors L*_i(V_0) | L*_{i+b}(V_1) + [i_0,(i+b)_1].

    Covers every side edge exactly lam times, every edge of M_b exactly lam
    times, and no other cross edge.
    """
    if n % 2 == 0:
        raise EvenOrder(f"n={n} must be odd")
    near = near_one_factorization(n)
    out = []
    for i in range(n):
        j = (i + b) % n
        edges = list(near[i]) + [(u + n, v + n) for u, v in near[j]]
        edges.append((i, n + j))
        f = canonicalize_factor(edges, 2 * n)
        out.extend([f] * lam)
    return out


def _check_permutation(pi, k: int) -> None:
    if len(pi) != k or sorted(pi) != list(range(k)):
        raise NotAPermutation(f"not a permutation of 0..{k - 1}: {tuple(pi)!r}")
