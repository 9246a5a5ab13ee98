"""Independent reference computations used to freeze expected values.

Nothing here calls the search kernel or the constructions under test.
"""

import re
from itertools import permutations

from ddpgroups.groups import Cyclic, DirectProduct


def brute_force_ddp(G):
    """All DDP sequences by trying every permutation that starts at the identity."""
    n = G.order
    mul, inv = G.mul, G.inv
    out = []
    for tail in permutations(range(1, n)):
        perm = (0,) + tail
        divs = {int(mul[inv[a], b]) for a, b in zip(perm, perm[1:])}
        if len(divs) == n - 1:
            out.append(perm)
    return out


def _partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for part in range(min(k, largest), 0, -1):
        for rest in _partitions(k - part, part):
            yield (part,) + rest


def _factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_types(n):
    """Every isomorphism type of abelian group of order n as a tuple of prime-power moduli."""
    types = [()]
    for p, k in sorted(_factor(n).items()):
        types = [t + tuple(p ** e for e in part) for t in types for part in _partitions(k)]
    return [t if t else (1,) for t in types]


def cyclic_product(moduli):
    if len(moduli) == 1:
        return Cyclic(moduli[0])
    return DirectProduct(tuple(Cyclic(m) for m in moduli))


def expected_involutions(moduli):
    """Number of elements of order 2 in a product of cyclic groups: 2^(#even factors) - 1."""
    return 2 ** sum(1 for m in moduli if m % 2 == 0) - 1


_WORD_RE = re.compile(r"([a-z])(?:\^(\d+))?")


def word_to_index(G, word, gens):
    """Evaluate a word like ``b^2a^4`` in ``G`` given generator indices."""
    word = word.strip()
    if word == "1":
        return G.identity
    x = G.identity
    pos = 0
    while pos < len(word):
        m = _WORD_RE.match(word, pos)
        assert m, f"bad word {word!r}"
        for _ in range(int(m.group(2) or 1)):
            x = int(G.mul[x, gens[m.group(1)]])
        pos = m.end()
    return x
