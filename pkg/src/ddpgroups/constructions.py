"""Closed-form and recursive sequence constructions for abelian groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .ddp import DdpSequence, SlonimskySequence, make_ddp_sequence, make_slonimsky_sequence
from .errors import BadExponent, EvenModulus, NoDdpExists, NotAbelian, NotAUnit
from .groups import Cyclic, DirectProduct, GroupTable, Subgroup, build_group, involutions, quotient


@dataclass(frozen=True)
class OddAbelianDecomposition:
    moduli: tuple[int, ...]

    def __post_init__(self):
        for m in self.moduli:
            if m < 1 or m % 2 == 0:
                raise EvenModulus(f"modulus {m} is not a positive odd integer")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def descriptor(self):
        if len(self.moduli) == 1:
            return Cyclic(self.moduli[0])
        return DirectProduct(tuple(Cyclic(m) for m in self.moduli))


def slonimsky_cyclic_terms(n: int) -> list[int]:
    """``p_i = (-1)^i ceil(i/2) mod n``."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Slonimsky sequences need an odd modulus, got {n}")
    return [(i // 2) % n if i % 2 == 0 else (-((i + 1) // 2)) % n for i in range(n)]


def slonimsky_cyclic(n: int) -> SlonimskySequence:
    terms = slonimsky_cyclic_terms(n)
    return make_slonimsky_sequence(build_group(Cyclic(n)), terms)


def _ceil_half(q: int) -> int:
    return (q + 1) // 2


def slonimsky_tuples(moduli: Sequence[int]) -> list[tuple[int, ...]]:
    """Slonimsky sequence in ``Z_m1 x ... x Z_md`` as coordinate tuples.

    Induction on the number of factors: the signed differences of the
    ``mn``-term sequence are ``(0_H, q)`` at block starts and
    ``(h_r, (-1)^q l + 2 ceil(q/2))`` elsewhere, with ``m = 2l - 1`` the last
    modulus; terms are their alternating prefix sums.
    """
    moduli = tuple(moduli)
    OddAbelianDecomposition(moduli)
    if not moduli:
        return [()]
    if len(moduli) == 1:
        return [(x,) for x in slonimsky_cyclic_terms(moduli[0])]
    inner_mods, m = moduli[:-1], moduli[-1]
    inner = slonimsky_tuples(inner_mods)
    n = len(inner)
    h = [tuple(0 for _ in inner_mods)]
    for i in range(1, n):
        a, b = inner[i - 1], inner[i]
        sign = 1 if i % 2 else -1
        h.append(tuple((sign * (x - y)) % mod for x, y, mod in zip(a, b, inner_mods)))
    l = (m + 1) // 2
    zero = tuple(0 for _ in inner_mods)
    out = []
    acc = [0] * len(moduli)
    for i in range(m * n):
        q, r = divmod(i, n)
        if r == 0:
            g = zero + (q % m,)
        else:
            g = h[r] + (((-1) ** q * l + 2 * _ceil_half(q)) % m,)
        sign = 1 if i % 2 == 0 else -1
        acc = [(a + sign * x) % mod for a, x, mod in zip(acc, g, moduli)]
        out.append(tuple(acc))
    return out


def _tuple_index(t: Sequence[int], moduli: Sequence[int]) -> int:
    idx = 0
    for x, m in zip(t, moduli):
        idx = idx * m + x
    return idx


def slonimsky_abelian(dec: OddAbelianDecomposition | Sequence[int]) -> SlonimskySequence:
    if not isinstance(dec, OddAbelianDecomposition):
        dec = OddAbelianDecomposition(tuple(dec))
    if not dec.moduli:
        dec = OddAbelianDecomposition((1,))
    G = build_group(dec.descriptor())
    perm = [_tuple_index(t, dec.moduli) for t in slonimsky_tuples(dec.moduli)]
    return make_slonimsky_sequence(G, perm)


def _power_of_two_group(m: int, minimum: int) -> GroupTable:
    if m < minimum:
        raise BadExponent(f"exponent must be at least {minimum}, got {m}")
    return build_group(Cyclic(2 ** m))


def triangular_terms(m: int) -> list[int]:
    n = 2 ** m
    return [(i * (i + 1) // 2) % n for i in range(n)]


def triangular_variant_terms(m: int) -> list[int]:
    n = 2 ** m
    lo, hi = 2 ** (m - 2), 3 * 2 ** (m - 2)
    return [(i * (i + 1) // 2 + (n // 2 if lo <= i < hi else 0)) % n for i in range(n)]


def triangular_ddp(m: int) -> DdpSequence:
    """``x_i = i(i+1)/2`` in ``Z_{2^m}``; its divisors are ``1, 2, ..., 2^m - 1``."""
    G = _power_of_two_group(m, 1)
    return make_ddp_sequence(G, triangular_terms(m))


def triangular_variant_ddp(m: int) -> DdpSequence:
    """Triangular numbers shifted by ``2^(m-1)`` on the middle half of the indices."""
    G = _power_of_two_group(m, 2)
    return make_ddp_sequence(G, triangular_variant_terms(m))


def scale_sequence(G: GroupTable, seq: DdpSequence | Sequence[int], r: int) -> DdpSequence:
    """Image of a DDP sequence under ``x -> r x`` in an abelian group."""
    if not G.is_abelian:
        raise NotAbelian(f"{G.descriptor} is not abelian")
    if math.gcd(r, G.exponent) != 1:
        raise NotAUnit(f"{r} is not a unit modulo the exponent {G.exponent}")
    perm = seq.perm if isinstance(seq, DdpSequence) else seq
    return make_ddp_sequence(G, [G.power(x, r) for x in perm])


def power_of_two_family(m: int) -> Iterator[DdpSequence]:
    """Distinct scalings ``r x`` and ``r y`` (r odd) of the two triangular sequences."""
    if m < 2:
        raise BadExponent(f"exponent must be at least 2, got {m}")
    base = [triangular_ddp(m), triangular_variant_ddp(m)]
    G = base[0].group
    seen = set()
    for seq in base:
        for r in range(1, 2 ** m, 2):
            out = scale_sequence(G, seq, r)
            if out.perm not in seen:
                seen.add(out.perm)
                yield out


def sizeo_lower_bound(m: int, odd_moduli: Sequence[int] = ()) -> int:
    """Lower bound on the number of DDP sequences of ``Z_{2^m} x Z_n1 x ... x Z_nk``."""
    if m < 1:
        raise BadExponent(f"exponent must be at least 1, got {m}")
    for x in odd_moduli:
        if x < 1 or x % 2 == 0:
            raise EvenModulus(f"modulus {x} is not a positive odd integer")
    bound = {1: 1, 2: 2}.get(m, 2 ** m)
    size = 2 ** (m - 1)
    for x in odd_moduli:
        bound *= (2 * x) ** (size - 1)
        size *= x
    return bound


def bound_parameters(n: int) -> tuple[int, list[int]]:
    """Split ``n = 2^m * odd`` into the arguments of :func:`sizeo_lower_bound` for ``Z_n``."""
    m = (n & -n).bit_length() - 1
    odd = n >> m
    return m, ([odd] if odd > 1 else [])


def odd_and_two_parts(G: GroupTable) -> tuple[Subgroup, Subgroup]:
    orders = G.orders.tolist()
    odd = tuple(g for g, o in enumerate(orders) if o % 2 == 1)
    two = tuple(g for g, o in enumerate(orders) if o & (o - 1) == 0)
    return Subgroup(G, odd), Subgroup(G, two)


def ddp_abelian(G: GroupTable) -> DdpSequence:
    """DDP sequence in an abelian group with a unique involution.

    Writes ``G = H x Z_{2^m}`` with ``H`` odd, seeds ``G/H = Z_{2^m}`` with
    the triangular sequence and lifts it through ``G -> G/H``.
    """
    from .lifting import build_lift_plan, lift_ddp

    if not G.is_abelian:
        raise NotAbelian(f"{G.descriptor} is not abelian")
    e = len(involutions(G))
    if e != 1 and G.order > 1:
        raise NoDdpExists(
            f"no DDP sequence exists in {G.descriptor}: it has {e} elements of order 2, "
            "an abelian DDP group needs exactly one")
    H, T = odd_and_two_parts(G)
    t = next(g for g in T.members if G.orders[g] == len(T))
    m = len(T).bit_length() - 1
    terms = triangular_terms(m)
    if len(H) == 1:
        return make_ddp_sequence(G, [G.power(t, k) for k in terms])
    Q, pi = quotient(G, H)
    base = make_ddp_sequence(Q, [pi(G.power(t, k)) for k in terms])
    return lift_ddp(build_lift_plan(pi, base))
