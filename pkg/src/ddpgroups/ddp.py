"""DDP sequences, Slonimsky sequences, and the abelian obstruction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch, NotAbelian, NotDdp, NotPermutation
from .groups import GroupTable, involutions


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify_ddp`.

    On failure ``reason`` is one of ``out-of-range``, ``wrong-start``,
    ``duplicate-element`` or ``duplicate-divisor`` and ``pair`` holds the
    first offending positions ``(i, j)`` with ``i < j``.
    """

    ok: bool
    reason: str | None = None
    pair: tuple[int, int] | None = None
    divisors: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class DdpSequence:
    group: GroupTable
    perm: tuple[int, ...]
    divisors: tuple[int, ...]

    def __len__(self):
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)

    def __eq__(self, other):
        if not isinstance(other, DdpSequence):
            return NotImplemented
        return self.group is other.group and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def labels(self) -> list[str]:
        return self.group.labels(self.perm)

    def divisor_labels(self) -> list[str]:
        return self.group.labels(self.divisors)


def divisor_sequence(G: GroupTable, perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(G.div[a, b]) for a, b in zip(perm, perm[1:]))


def verify_ddp(G: GroupTable, perm: Sequence[int]) -> Verdict:
    n = G.order
    if len(perm) != n:
        raise LengthMismatch(f"sequence has length {len(perm)}, group has order {n}")
    perm = [int(x) for x in perm]
    for i, x in enumerate(perm):
        if not 0 <= x < n:
            return Verdict(False, "out-of-range", (i, i))
    if perm[0] != G.identity:
        return Verdict(False, "wrong-start", (0, 0))
    first = {}
    for i, x in enumerate(perm):
        if x in first:
            return Verdict(False, "duplicate-element", (first[x], i))
        first[x] = i
    divisors = divisor_sequence(G, perm)
    first = {}
    for i, d in enumerate(divisors):
        if d in first:
            return Verdict(False, "duplicate-divisor", (first[d], i), divisors)
        first[d] = i
    return Verdict(True, divisors=divisors)


def make_ddp_sequence(G: GroupTable, perm: Sequence[int]) -> DdpSequence:
    """Wrap ``perm`` as a :class:`DdpSequence`, raising :class:`NotDdp` if it fails verification."""
    verdict = verify_ddp(G, perm)
    if not verdict:
        raise NotDdp(f"not a DDP sequence in {G.descriptor}: {verdict.reason} at {verdict.pair}")
    return DdpSequence(G, tuple(int(x) for x in perm), verdict.divisors)


@dataclass(frozen=True)
class SlonimskyVerdict:
    ok: bool
    failed: str | None
    detail: tuple[int, ...] | None
    signed_diffs: tuple[int, ...]
    last_term: int

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class SlonimskySequence:
    group: GroupTable
    perm: tuple[int, ...]
    signed_diffs: tuple[int, ...]
    last_term: int

    def __len__(self):
        return len(self.perm)

    def labels(self) -> list[str]:
        return self.group.labels(self.perm)


def _sub(G: GroupTable, a: int, b: int) -> int:
    return int(G.mul[a, G.inv[b]])


def signed_differences(G: GroupTable, perm: Sequence[int]) -> tuple[int, ...]:
    h = [G.identity]
    for i in range(1, len(perm)):
        if i % 2:
            h.append(_sub(G, perm[i - 1], perm[i]))
        else:
            h.append(_sub(G, perm[i], perm[i - 1]))
    return tuple(h)


def _require_abelian(G: GroupTable) -> None:
    if not G.is_abelian:
        raise NotAbelian(f"{G.descriptor} is not abelian")


def verify_slonimsky(G: GroupTable, perm: Sequence[int]) -> SlonimskyVerdict:
    """Check conditions (i) distinct signed differences, (ii) ``h_i + h_{n-i} = 0``,
    (iii) ``p_i + p_{n-1-i} = p_{n-1}``, reporting the first that fails."""
    _require_abelian(G)
    n = G.order
    perm = [int(x) for x in perm]
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotPermutation("sequence is not a permutation of the group")
    if perm[0] != G.identity:
        raise NotPermutation("a Slonimsky sequence starts at the identity")
    h = signed_differences(G, perm)
    last = perm[-1]

    def verdict(failed=None, detail=None):
        return SlonimskyVerdict(failed is None, failed, detail, h, last)

    first = {}
    for i, x in enumerate(h):
        if x in first:
            return verdict("i", (first[x], i))
        first[x] = i
    for i in range(1, n):
        if G.mul[h[i], h[n - i]] != G.identity:
            return verdict("ii", (i, n - i))
    for i in range(n):
        if G.mul[perm[i], perm[n - 1 - i]] != last:
            return verdict("iii", (i, n - 1 - i))
    return verdict()


def make_slonimsky_sequence(G: GroupTable, perm: Sequence[int]) -> SlonimskySequence:
    v = verify_slonimsky(G, perm)
    if not v:
        raise NotDdp(f"condition ({v.failed}) fails at {v.detail}")
    return SlonimskySequence(G, tuple(int(x) for x in perm), v.signed_diffs, v.last_term)


def perm_from_signed_diffs(G: GroupTable, h: Sequence[int]) -> tuple[int, ...]:
    """Invert :func:`signed_differences`: ``p_i = p_{i-1} - (-1)^(i-1) h_i``."""
    p = [G.identity]
    for i in range(1, len(h)):
        if i % 2:
            p.append(_sub(G, p[-1], h[i]))
        else:
            p.append(int(G.mul[p[-1], h[i]]))
    return tuple(p)


def abelian_ddp_exists(G: GroupTable) -> bool:
    """Unique-involution criterion; the trivial group is vacuously DDP."""
    _require_abelian(G)
    return G.order == 1 or len(involutions(G)) == 1


def telescoped_product(G: GroupTable, perm: Sequence[int]) -> int:
    """Ordered product of the divisors, which telescopes to ``perm[-1]``."""
    return G.product(divisor_sequence(G, perm))


def group_sum(G: GroupTable) -> int:
    """Product of all elements of an abelian group."""
    _require_abelian(G)
    return G.product(range(G.order))
