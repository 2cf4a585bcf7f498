"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package's algorithms; only plain Python lists.
"""

from __future__ import annotations

from itertools import product
from math import lcm


def semiring_law_failures(add, mul, zero=None, one=None) -> list[str]:
    k = len(add)
    r = range(k)
    bad = set()
    for a, b in product(r, r):
        if add[a][b] != add[b][a]:
            bad.add("comm")
        for c in r:
            if add[add[a][b]][c] != add[a][add[b][c]]:
                bad.add("addassoc")
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                bad.add("mulassoc")
            if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                bad.add("ldist")
            if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                bad.add("rdist")
    for a in r:
        if zero is not None and (add[a][zero] != a or mul[a][zero] != zero or mul[zero][a] != zero):
            bad.add("zero")
        if one is not None and (mul[a][one] != a or mul[one][a] != a):
            bad.add("one")
    return sorted(bad)


def naive_congruence(add, mul, pairs) -> list[frozenset]:
    """Closure by repeated full sweeps over an explicit relation set."""
    k = len(add)
    rel = {(a, a) for a in range(k)}
    for a, b in pairs:
        rel |= {(a, b), (b, a)}
    while True:
        new = set(rel)
        for a, b in rel:
            for c in range(k):
                new |= {(add[a][c], add[b][c]), (add[c][a], add[c][b]),
                        (mul[a][c], mul[b][c]), (mul[c][a], mul[c][b])}
        # transitive closure
        for x, y in list(new):
            for y2, z in list(new):
                if y == y2:
                    new.add((x, z))
        new |= {(b, a) for a, b in new}
        if new == rel:
            break
        rel = new
    classes = {frozenset(b for a2, b in rel if a2 == a) for a in range(k)}
    return sorted(classes, key=min)


def matmul(add, mul, a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = mul[a[i][0]][b[0][j]]
            for t in range(1, n):
                acc = add[acc][mul[a[i][t]][b[t][j]]]
            row.append(acc)
        out.append(row)
    return out


def power_profile(add, mul, m, limit=10**5):
    """(preperiod, period) of M^1, M^2, ... by storing every power."""
    seen = {}
    x = [row[:] for row in m]
    for i in range(1, limit + 1):
        key = tuple(map(tuple, x))
        if key in seen:
            k = seen[key]
            return k - 1, i - k
        seen[key] = i
        x = matmul(add, mul, x, m)
    raise RuntimeError("limit reached")


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def landau_bruteforce(n: int) -> int:
    """max lcm over partitions of n, via the set of reachable lcm values."""
    # reach[s] = every lcm of a partition of s; parts may repeat
    reach = [{1}] + [set() for _ in range(n)]
    for part in range(1, n + 1):
        for s in range(part, n + 1):
            reach[s] |= {lcm(v, part) for v in reach[s - part]}
    return max(reach[n])


def discrete_log(g, y, p):
    x = 1
    for k in range(p):
        if x == y:
            return k
        x = x * g % p
    return None
