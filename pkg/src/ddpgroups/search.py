"""Exhaustive enumeration and counting of DDP sequences.

Depth-first search fixing ``g_0`` to the identity and extending by unused
elements whose divisor from the current last term is also unused.  The
kernel is a resumable numba loop: all search state lives in arrays owned
by the caller, so the driver can pause every ``CHUNK_NODES`` nodes to
check the wall clock or drain recorded sequences.
"""

from __future__ import annotations

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numba
import numpy as np

from .ddp import DdpSequence
from .errors import InvalidDescriptor, SearchTimeout
from .groups import Cyclic, GroupTable, automorphisms, build_group

CHUNK_NODES = 1 << 16
SYMMETRY_ORDER_CAP = 64
OEIS_FEASIBILITY_CAP = 16

_DONE, _PAUSED, _FULL = 0, 1, 2


@numba.njit(nogil=True, cache=True)
def _dfs(div, seq, cand, used_el, used_div, state, root, node_limit, out, record):
    # state = [depth, count, nodes, recorded]
    n = seq.shape[0]
    d = state[0]
    budget = node_limit
    while True:
        if d == n:
            if record:
                if state[3] == out.shape[0]:
                    state[0] = d
                    return _FULL
                for k in range(n):
                    out[state[3], k] = seq[k]
                state[3] += 1
            state[1] += 1
            d -= 1
            if d < root:
                state[0] = d
                return _DONE
            used_el[seq[d]] = False
            used_div[div[seq[d - 1], seq[d]]] = False
            continue
        if budget == 0:
            state[0] = d
            return _PAUSED
        last = seq[d - 1]
        x = cand[d]
        while x < n and (used_el[x] or used_div[div[last, x]]):
            x += 1
        if x < n:
            seq[d] = x
            cand[d] = x + 1
            used_el[x] = True
            used_div[div[last, x]] = True
            d += 1
            if d < n:
                cand[d] = 0
            state[2] += 1
            budget -= 1
        else:
            d -= 1
            if d < root:
                state[0] = d
                return _DONE
            used_el[seq[d]] = False
            used_div[div[seq[d - 1], seq[d]]] = False


class _Subtree:
    """Search state for all completions of a fixed prefix."""

    def __init__(self, G: GroupTable, prefix: list[int], capacity: int = 0):
        n = G.order
        self.div = np.ascontiguousarray(G.div, dtype=np.int32)
        self.seq = np.zeros(n, dtype=np.int32)
        self.cand = np.zeros(n + 1, dtype=np.int32)
        self.used_el = np.zeros(n, dtype=np.bool_)
        self.used_div = np.zeros(n, dtype=np.bool_)
        self.root = len(prefix)
        for i, x in enumerate(prefix):
            self.seq[i] = x
            self.used_el[x] = True
            if i:
                self.used_div[self.div[prefix[i - 1], x]] = True
        self.state = np.array([self.root, 0, 0, 0], dtype=np.int64)
        self.record = capacity > 0
        self.out = np.zeros((max(capacity, 1), n), dtype=np.int32)
        self.finished = False

    def step(self, node_limit: int = CHUNK_NODES) -> int:
        self.state[3] = 0
        status = _dfs(self.div, self.seq, self.cand, self.used_el, self.used_div,
                      self.state, self.root, node_limit, self.out, self.record)
        if status == _DONE:
            self.finished = True
        return status

    def drain(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.out[: self.state[3]]]

    @property
    def count(self) -> int:
        return int(self.state[1])

    @property
    def nodes(self) -> int:
        return int(self.state[2])


def _split_prefixes(G: GroupTable) -> list[list[int]]:
    # one subtree per choice of the second element (equivalently the first divisor)
    if G.order == 1:
        return [[G.identity]]
    return [[G.identity, x] for x in range(G.order) if x != G.identity]


@dataclass(frozen=True)
class CountResult:
    count: int
    exact: bool
    nodes: int
    seconds: float

    def __int__(self):
        return self.count


def _default_threads() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def count_ddp(G: GroupTable, budget: float | None = None, threads: int | None = None) -> CountResult:
    """Exact number of DDP sequences of ``G``.

    Subtrees rooted at each second element are counted independently (on
    ``threads`` workers) and summed, so the result does not depend on the
    split.  Raises :class:`SearchTimeout` carrying the partial, non-final
    result when ``budget`` seconds elapse first.
    """
    start = time.monotonic()
    deadline = None if budget is None else start + budget
    threads = threads or _default_threads()
    prefixes = _split_prefixes(G)
    stop = threading.Event()
    subtrees = [_Subtree(G, p) for p in prefixes]

    def run(sub: _Subtree) -> bool:
        while not sub.finished:
            if stop.is_set():
                return False
            if deadline is not None and time.monotonic() > deadline:
                stop.set()
                return False
            sub.step()
        return True

    if threads <= 1 or len(subtrees) == 1:
        done = [run(s) for s in subtrees]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = list(pool.map(run, subtrees))
    total = sum(s.count for s in subtrees)
    nodes = sum(s.nodes for s in subtrees)
    elapsed = time.monotonic() - start
    if not all(done):
        partial = CountResult(total, False, nodes, elapsed)
        raise SearchTimeout(
            f"search on {G.descriptor} timed out after {elapsed:.1f}s "
            f"({nodes} nodes, at least {total} sequences so far)", partial)
    return CountResult(total, True, nodes, elapsed)


def iter_ddp_perms(G: GroupTable, max: int | None = None, batch: int = 256,
                   budget: float | None = None) -> Iterator[tuple[int, ...]]:
    deadline = None if budget is None else time.monotonic() + budget
    emitted = 0
    for prefix in _split_prefixes(G):
        sub = _Subtree(G, prefix, capacity=batch)
        while not sub.finished:
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout(f"enumeration on {G.descriptor} timed out",
                                    CountResult(emitted, False, sub.nodes, budget))
            sub.step()
            for perm in sub.drain():
                if max is not None and emitted >= max:
                    return
                emitted += 1
                yield perm
    return


def enumerate_ddp(G: GroupTable, max: int | None = None, budget: float | None = None) -> Iterator[DdpSequence]:
    """DDP sequences of ``G`` in lexicographic order of element indices."""
    for perm in iter_ddp_perms(G, max=max, budget=budget):
        yield DdpSequence(G, perm, tuple(int(G.div[a, b]) for a, b in zip(perm, perm[1:])))


def first_ddp(G: GroupTable, budget: float | None = None) -> DdpSequence | None:
    return next(enumerate_ddp(G, max=1, budget=budget), None)


def orbit_prefixes(G: GroupTable) -> list[list[int]]:
    """One valid prefix ``(1, a, b, c)`` per orbit of ``Aut(G)``.

    Automorphisms map DDP sequences to DDP sequences, so a group has one
    iff some representative prefix extends to one.  A representative is
    the lexicographically least prefix in its orbit, and every prefix of
    a least prefix is least too, so only least pairs are extended.
    """
    n = G.order
    if n <= 4 or n > SYMMETRY_ORDER_CAP:
        return _split_prefixes(G)
    auts = automorphisms(G)
    div = G.div
    out = []
    for a in range(1, n):
        for b in range(1, n):
            if b == a or div[a, b] == a:
                continue
            pair = auts[:, a] * n + auts[:, b]
            if pair.min() != a * n + b:
                continue
            for c in range(1, n):
                if c in (a, b) or div[b, c] in (a, div[a, b]):
                    continue
                if (pair * n + auts[:, c]).min() == (a * n + b) * n + c:
                    out.append([G.identity, a, b, c])
    return out


def exists_ddp(G: GroupTable, budget: float | None = None) -> bool:
    """Exhaustive existence check over automorphism-orbit representatives."""
    deadline = None if budget is None else time.monotonic() + budget
    nodes = 0
    for prefix in orbit_prefixes(G):
        sub = _Subtree(G, prefix, capacity=1)
        while not sub.finished:
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout(f"existence search on {G.descriptor} timed out",
                                    CountResult(0, False, nodes + sub.nodes, budget))
            if sub.step() == _FULL or sub.state[3]:
                return True
        nodes += sub.nodes
    return False


def a141599_prefix(max_n: int, cap: int = OEIS_FEASIBILITY_CAP, budget: float | None = None,
                   threads: int | None = None) -> list[tuple[int, int]]:
    """``[(n, |O_{Z_n}|) for even n <= max_n]``; ``budget`` applies per term."""
    if max_n < 2 or max_n % 2:
        raise InvalidDescriptor(f"max_n must be an even integer >= 2, got {max_n}")
    if max_n > cap:
        raise InvalidDescriptor(f"max_n={max_n} exceeds the feasibility cap {cap}")
    return [(n, count_ddp(build_group(Cyclic(n)), budget=budget, threads=threads).count)
            for n in range(2, max_n + 1, 2)]
