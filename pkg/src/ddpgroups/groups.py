"""Finite groups as Cayley tables.

Every group is realised as an ``n x n`` multiplication table over the
indices ``0..n-1`` with the identity at index 0.  Element indices are
produced by a fixed mixed-radix codec per descriptor, so the same
descriptor always yields the same table and the same labels.
"""

from __future__ import annotations

import math
import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import InvalidDescriptor, NonGroup, NotNormal, OrderLimitExceeded

DEFAULT_ORDER_LIMIT = 10000
EXHAUSTIVE_ASSOCIATIVITY_BOUND = 512
ASSOCIATIVITY_SAMPLES = 1_000_000
MAX_PERM_POINTS = 8


def order_limit() -> int:
    """Current cap on group orders (``DDP_ORDER_LIMIT`` overrides the default)."""
    raw = os.environ.get("DDP_ORDER_LIMIT")
    if raw is None:
        return DEFAULT_ORDER_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise InvalidDescriptor(f"DDP_ORDER_LIMIT must be an integer, got {raw!r}")
    if value < 1:
        raise InvalidDescriptor("DDP_ORDER_LIMIT must be positive")
    return value


def _check_order(n: int) -> None:
    limit = order_limit()
    if n > limit:
        raise OrderLimitExceeded(f"group order {n} exceeds the limit {limit}")


def _dtype_for(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def _power_word(letter: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return letter
    return f"{letter}^{k}"


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidDescriptor(f"cyclic order must be positive, got {self.n}")

    def __str__(self):
        return f"Z{self.n}"

    def order(self) -> int:
        return self.n

    def realize(self):
        idx = np.arange(self.n)
        mul = (idx[:, None] + idx[None, :]) % self.n
        return mul, list(range(self.n))

    def format(self, value) -> str:
        return str(value)


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2n: ``<a, b | a^n = b^2 = 1, aba = b>``.

    The element ``b^j a^i`` has index ``j*n + i``.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidDescriptor(f"dihedral parameter must be positive, got {self.n}")

    def __str__(self):
        return f"D{self.n}"

    def order(self) -> int:
        return 2 * self.n

    def realize(self):
        n = self.n
        idx = np.arange(2 * n)
        j, i = idx // n, idx % n
        sign = np.where(j == 1, -1, 1)
        # (b^j1 a^i1)(b^j2 a^i2) = b^(j1+j2) a^((-1)^j2 i1 + i2)
        new_j = (j[:, None] + j[None, :]) % 2
        new_i = (sign[None, :] * i[:, None] + i[None, :]) % n
        return new_j * n + new_i, [(int(a), int(b)) for a, b in zip(j, i)]

    def format(self, value) -> str:
        j, i = value
        return (_power_word("b", j) + _power_word("a", i)) or "1"


@dataclass(frozen=True)
class SemidirectCyclic:
    """``Z_m`` semidirect ``Z_n`` where ``s`` acts on ``Z_m`` by ``x -> u^s x``.

    The pair ``(k, s)`` has index ``s*m + k`` and is labelled ``a^k b^s``.
    """

    m: int
    n: int
    u: int

    def __post_init__(self):
        m, n, u = self.m, self.n, self.u
        if m < 1 or n < 1:
            raise InvalidDescriptor(f"SD({m},{n};{u}): orders must be positive")
        if math.gcd(u, m) != 1:
            raise InvalidDescriptor(f"SD({m},{n};{u}): gcd(u, m) must be 1")
        if pow(u, n, m) != 1 % m:
            raise InvalidDescriptor(f"SD({m},{n};{u}): u^n is not 1 mod m")

    def __str__(self):
        return f"SD({self.m},{self.n};{self.u})"

    def order(self) -> int:
        return self.m * self.n

    def realize(self):
        m, n = self.m, self.n
        idx = np.arange(m * n)
        k, s = idx % m, idx // m
        upow = np.array([pow(self.u, e, m) for e in range(n)], dtype=np.int64)
        new_k = (k[:, None] + upow[s][:, None] * k[None, :]) % m
        new_s = (s[:, None] + s[None, :]) % n
        return new_s * m + new_k, [(int(a), int(b)) for a, b in zip(k, s)]

    def format(self, value) -> str:
        k, s = value
        return (_power_word("a", k) + _power_word("b", s)) or "1"


@dataclass(frozen=True)
class Heisenberg:
    """Unipotent upper-triangular 3x3 matrices over ``Z_p``.

    ``(a, b, c)`` stands for ``[[1, a, c], [0, 1, b], [0, 0, 1]]`` and has
    index ``a*p^2 + b*p + c``.
    """

    p: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidDescriptor(f"Heisenberg modulus must be at least 2, got {self.p}")

    def __str__(self):
        return f"Heis{self.p}"

    def order(self) -> int:
        return self.p ** 3

    def realize(self):
        p = self.p
        idx = np.arange(p ** 3)
        a, b, c = idx // (p * p), (idx // p) % p, idx % p
        na = (a[:, None] + a[None, :]) % p
        nb = (b[:, None] + b[None, :]) % p
        nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
        return (na * p + nb) * p + nc, [(int(x), int(y), int(z)) for x, y, z in zip(a, b, c)]

    def format(self, value) -> str:
        return "(" + ",".join(map(str, value)) + ")"


Cycles = tuple[tuple[int, ...], ...]


def _cycles_to_perm(cycles: Cycles, points: int) -> tuple[int, ...]:
    image = list(range(points))
    for cyc in cycles:
        for pos, x in enumerate(cyc):
            image[x] = cyc[(pos + 1) % len(cyc)]
    return tuple(image)


def _perm_to_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


@dataclass(frozen=True)
class PermGroup:
    """Group generated by permutations of at most eight points.

    Elements are sorted lexicographically as image tuples, so the identity
    comes first.  Products compose left to right: ``(g*h)(x) = h(g(x))``.
    """

    generators: tuple[Cycles, ...]

    def __post_init__(self):
        used = [x for gen in self.generators for cyc in gen for x in cyc]
        if used and (min(used) < 0 or max(used) >= MAX_PERM_POINTS):
            raise InvalidDescriptor(f"permutation points must lie in 0..{MAX_PERM_POINTS - 1}")
        for gen in self.generators:
            flat = [x for cyc in gen for x in cyc]
            if len(flat) != len(set(flat)):
                raise InvalidDescriptor(f"cycles in generator {gen} are not disjoint")

    def __str__(self):
        parts = []
        for gen in self.generators:
            parts.append("".join("(" + " ".join(map(str, c)) + ")" for c in gen))
        return "Perm[" + ";".join(parts) + "]"

    @property
    def points(self) -> int:
        used = [x for gen in self.generators for cyc in gen for x in cyc]
        return max(used) + 1 if used else 1

    def order(self) -> int | None:
        return None

    def realize(self):
        k = self.points
        ident = tuple(range(k))
        gens = [_cycles_to_perm(g, k) for g in self.generators]
        seen = {ident}
        queue = deque([ident])
        limit = order_limit()
        while queue:
            g = queue.popleft()
            for s in gens:
                h = tuple(s[g[x]] for x in range(k))
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        raise OrderLimitExceeded(f"permutation group exceeds the limit {limit}")
                    queue.append(h)
        elements = sorted(seen)
        perms = np.array(elements, dtype=np.int64).reshape(len(elements), k)
        weights = k ** np.arange(k - 1, -1, -1, dtype=np.int64)
        keys = perms @ weights
        # composed[g, h, x] = h(g(x))
        composed = np.take_along_axis(
            np.broadcast_to(perms[None, :, :], (len(elements), len(elements), k)),
            np.broadcast_to(perms[:, None, :], (len(elements), len(elements), k)),
            axis=2,
        )
        mul = np.searchsorted(keys, composed @ weights)
        return mul, elements

    def format(self, value) -> str:
        return _perm_to_cycles(value)


@dataclass(frozen=True)
class DirectProduct:
    """Direct product; tuples are indexed lexicographically (first factor most significant)."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise InvalidDescriptor("direct product needs at least one factor")

    def __str__(self):
        return "x".join(_factor_str(f) for f in self.factors)

    def order(self) -> int | None:
        total = 1
        for f in self.factors:
            o = f.order()
            if o is None:
                return None
            total *= o
        return total

    def format(self, value) -> str:
        return "(" + ",".join(f.format(v) for f, v in zip(self.factors, value)) + ")"


@dataclass(frozen=True)
class Quotient:
    """Quotient of ``parent`` by the normal closure of ``generators``.

    Cosets are indexed by the rank of their minimal member.
    """

    parent: "Descriptor"
    generators: tuple[int, ...]

    def __str__(self):
        return f"{_factor_str(self.parent)}/<{','.join(map(str, self.generators))}>"

    def order(self) -> int | None:
        return None

    def format(self, value) -> str:
        return "[" + self.parent.format(value) + "]"


Descriptor = Union[Cyclic, Dihedral, SemidirectCyclic, Heisenberg, PermGroup, DirectProduct, Quotient]


def _factor_str(desc) -> str:
    s = str(desc)
    return f"({s})" if isinstance(desc, (DirectProduct, Quotient)) else s


# ---------------------------------------------------------------------------
# descriptor DSL
# ---------------------------------------------------------------------------

_ATOM_RE = re.compile(
    r"Z(?P<z>\d+)"
    r"|D(?P<d>\d+)"
    r"|SD\((?P<m>\d+),(?P<n>\d+);(?P<u>\d+)\)"
    r"|Heis(?P<p>\d+)"
    r"|Perm\[(?P<perm>[^\]]*)\]"
)
_CYCLE_RE = re.compile(r"\((\d+(?: \d+)*)\)")


def _parse_cycles(text: str) -> Cycles:
    pos = 0
    cycles = []
    if not text:
        raise InvalidDescriptor("empty generator in Perm[...]")
    while pos < len(text):
        m = _CYCLE_RE.match(text, pos)
        if m is None:
            raise InvalidDescriptor(f"bad cycle syntax near {text[pos:]!r}")
        cycles.append(tuple(int(x) for x in m.group(1).split(" ")))
        pos = m.end()
    return tuple(cycles)


def parse_descriptor(text: str) -> Descriptor:
    """Parse the group descriptor DSL, e.g. ``Z4xZ3``, ``SD(7,3;2)``, ``Perm[(0 1 2);(0 1)(2 3)]``."""
    text = text.strip()
    atoms = []
    pos = 0
    while True:
        m = _ATOM_RE.match(text, pos)
        if m is None:
            raise InvalidDescriptor(f"cannot parse descriptor {text!r} at position {pos}")
        g = m.groupdict()
        if g["z"] is not None:
            atoms.append(Cyclic(int(g["z"])))
        elif g["d"] is not None:
            atoms.append(Dihedral(int(g["d"])))
        elif g["m"] is not None:
            atoms.append(SemidirectCyclic(int(g["m"]), int(g["n"]), int(g["u"])))
        elif g["p"] is not None:
            atoms.append(Heisenberg(int(g["p"])))
        else:
            gens = tuple(_parse_cycles(part) for part in g["perm"].split(";"))
            atoms.append(PermGroup(gens))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise InvalidDescriptor(f"expected 'x' at position {pos} in {text!r}")
        pos += 1
    return atoms[0] if len(atoms) == 1 else DirectProduct(tuple(atoms))


# ---------------------------------------------------------------------------
# group tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupTable:
    """An order-n group as a Cayley table; immutable once built."""

    mul: np.ndarray
    inv: np.ndarray
    descriptor: object
    elements: tuple
    identity: int = 0

    def __post_init__(self):
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    @property
    def order(self) -> int:
        return len(self.inv)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupTable({self.descriptor}, order={self.order})"

    def __str__(self):
        return str(self.descriptor)

    def label(self, g: int) -> str:
        return self.descriptor.format(self.elements[g])

    def labels(self, seq: Iterable[int]) -> list[str]:
        return [self.label(g) for g in seq]

    def decode(self, g: int):
        return self.elements[g]

    def encode(self, value) -> int:
        try:
            return self._codec[value]
        except KeyError:
            raise KeyError(f"{value!r} is not an element of {self.descriptor}") from None

    @cached_property
    def _codec(self) -> dict:
        return {v: i for i, v in enumerate(self.elements)}

    @cached_property
    def div(self) -> np.ndarray:
        """``div[a, b] = a^-1 b``."""
        out = np.ascontiguousarray(self.mul[self.inv])
        out.setflags(write=False)
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            done = (cur == self.identity) & (orders == 0)
            orders[done] = k
            cur = self.mul[cur, np.arange(n)]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.orders.tolist())))

    def power(self, g: int, k: int) -> int:
        k %= int(self.orders[g])
        result, base = self.identity, g
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def product(self, seq: Iterable[int]) -> int:
        result = self.identity
        for g in seq:
            result = int(self.mul[result, g])
        return result


def table_from_array(mul, descriptor, elements, check: bool = True) -> GroupTable:
    mul = np.asarray(mul)
    n = mul.shape[0]
    if mul.shape != (n, n):
        raise NonGroup("multiplication table must be square")
    _check_order(n)
    mul = mul.astype(_dtype_for(n), copy=False)
    ar = np.arange(n)
    if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
        raise NonGroup(f"{descriptor}: index 0 is not a two-sided identity")
    if check:
        if not (np.array_equal(np.sort(mul, axis=1), np.broadcast_to(ar, (n, n)))
                and np.array_equal(np.sort(mul, axis=0), np.broadcast_to(ar[:, None], (n, n)))):
            raise NonGroup(f"{descriptor}: table is not a Latin square")
        _check_associative(mul, descriptor)
    inv = np.argmin(mul, axis=1).astype(mul.dtype)
    if not (mul[ar, inv] == 0).all():
        raise NonGroup(f"{descriptor}: missing inverses")
    return GroupTable(mul=mul, inv=inv, descriptor=descriptor, elements=tuple(elements))


def _check_associative(mul: np.ndarray, descriptor) -> None:
    n = mul.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND:
        for a in range(n):
            # (ab)c versus a(bc) over all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise NonGroup(f"{descriptor}: table is not associative (a={a})")
        return
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
        raise NonGroup(f"{descriptor}: table is not associative (sampled)")


def direct_product(*groups: GroupTable, descriptor=None) -> GroupTable:
    """Direct product of already built tables in lexicographic index order."""
    if not groups:
        raise InvalidDescriptor("direct product needs at least one factor")
    total = math.prod(g.order for g in groups)
    _check_order(total)
    mul = np.zeros((1, 1), dtype=np.int64)
    for g in groups:
        k = g.order
        a = np.arange(mul.shape[0] * k)
        hi, lo = a // k, a % k
        mul = mul[hi[:, None], hi[None, :]] * k + g.mul[lo[:, None], lo[None, :]]
    elements = list(product(*(g.elements for g in groups)))
    if descriptor is None:
        descriptor = DirectProduct(tuple(g.descriptor for g in groups))
    return table_from_array(mul, descriptor, elements, check=False)


@lru_cache(maxsize=128)
def _build_cached(descriptor, limit: int) -> GroupTable:
    if isinstance(descriptor, DirectProduct):
        factors = [_build_cached(f, limit) for f in descriptor.factors]
        return direct_product(*factors, descriptor=descriptor)
    if isinstance(descriptor, Quotient):
        parent = _build_cached(descriptor.parent, limit)
        N = normal_closure(parent, descriptor.generators)
        Q, _ = quotient(parent, N)
        return Q
    known = descriptor.order()
    if known is not None:
        _check_order(known)
    mul, elements = descriptor.realize()
    return table_from_array(mul, descriptor, elements, check=True)


def build_group(descriptor) -> GroupTable:
    """Realise a descriptor (or DSL string) as a validated :class:`GroupTable`."""
    if isinstance(descriptor, str):
        descriptor = parse_descriptor(descriptor)
    return _build_cached(descriptor, order_limit())


# ---------------------------------------------------------------------------
# subgroups and homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Subgroup(order={len(self)}, of {self.parent.descriptor})"

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def order(self) -> int:
        return len(self.members)

    def is_abelian(self) -> bool:
        idx = np.array(self.members)
        block = self.parent.mul[np.ix_(idx, idx)]
        return bool(np.array_equal(block, block.T))


def generated_subgroup(G: GroupTable, generators: Iterable[int]) -> Subgroup:
    members = {G.identity}
    frontier = [G.identity]
    gens = [int(g) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.mul[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))


def is_normal(G: GroupTable, N: Subgroup) -> bool:
    mem = np.array(N.members)
    g = np.arange(G.order)
    conj = G.mul[G.mul[g[:, None], mem[None, :]], G.inv[g][:, None]]
    return bool(N.mask[conj].all())


def normal_closure(G: GroupTable, generators: Iterable[int]) -> Subgroup:
    gens = set(int(x) for x in generators)
    while True:
        N = generated_subgroup(G, sorted(gens))
        conj = {int(G.mul[G.mul[g, x], G.inv[g]]) for g in range(G.order) for x in gens}
        if conj <= set(N.members):
            return N
        gens |= conj


@dataclass(frozen=True, eq=False)
class Epimorphism:
    """Surjective homomorphism ``source -> target`` given by an index map."""

    source: GroupTable
    target: GroupTable
    map: np.ndarray
    kernel: Subgroup
    fibers: tuple[tuple[int, ...], ...]

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    @classmethod
    def from_map(cls, source: GroupTable, target: GroupTable, mapping) -> "Epimorphism":
        mp = np.asarray(mapping, dtype=np.int64)
        if mp.shape != (source.order,):
            raise NonGroup("map must have one entry per source element")
        if ((mp < 0) | (mp >= target.order)).any():
            raise NonGroup("map has values outside the target")
        if not np.array_equal(mp[source.mul], target.mul[mp[:, None], mp[None, :]]):
            raise NonGroup("map is not a homomorphism")
        fibers = [[] for _ in range(target.order)]
        for g, h in enumerate(mp.tolist()):
            fibers[h].append(g)
        if any(not f for f in fibers):
            raise NonGroup("map is not surjective")
        mp.setflags(write=False)
        kernel = Subgroup(source, tuple(fibers[target.identity]))
        return cls(source, target, mp, kernel, tuple(tuple(f) for f in fibers))


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------


def element_order(G: GroupTable, g: int) -> int:
    if not 0 <= g < G.order:
        raise IndexError(f"element {g} out of range for order {G.order}")
    return int(G.orders[g])


def involutions(G: GroupTable) -> list[int]:
    return [int(g) for g in np.flatnonzero(G.orders == 2)]


def real_elements(G: GroupTable, chunk: int = 256) -> list[int]:
    """Elements ``h`` with ``g^-1 h g = h^-1`` for some ``g``."""
    n = G.order
    h = np.arange(n)
    real = np.zeros(n, dtype=bool)
    for start in range(0, n, chunk):
        g = np.arange(start, min(n, start + chunk))
        conj = G.mul[G.mul[G.inv[g][:, None], h[None, :]], g[:, None]]
        real |= (conj == G.inv[None, :]).any(axis=0)
    return [int(x) for x in np.flatnonzero(real)]


def center(G: GroupTable) -> Subgroup:
    commutes = (G.mul == G.mul.T).all(axis=1)
    return Subgroup(G, tuple(int(z) for z in np.flatnonzero(commutes)))


def quotient(G: GroupTable, N: Subgroup) -> tuple[GroupTable, Epimorphism]:
    """Quotient ``G/N`` with cosets named by their minimal member."""
    if N.parent is not G:
        raise NotNormal("subgroup belongs to a different group")
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {len(N)} is not normal in {G.descriptor}")
    mem = np.array(N.members)
    rep_of = G.mul[:, mem].min(axis=1)
    reps = np.unique(rep_of)
    coset_index = np.searchsorted(reps, rep_of)
    q_mul = coset_index[G.mul[reps[:, None], reps[None, :]]]
    gens = tuple(int(x) for x in N.members if x != G.identity)
    desc = Quotient(G.descriptor, gens)
    elements = [G.elements[r] for r in reps.tolist()]
    Q = table_from_array(q_mul, desc, elements, check=False)
    return Q, Epimorphism.from_map(G, Q, coset_index)


@dataclass(frozen=True)
class CentralSeries:
    terms: tuple[Subgroup, ...]
    nilpotent: bool

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


def upper_central_series(G: GroupTable) -> CentralSeries:
    terms = [Subgroup(G, (G.identity,))]
    while True:
        Q, pi = quotient(G, terms[-1])
        z = center(Q)
        nxt = Subgroup(G, tuple(int(g) for g in np.flatnonzero(z.mask[pi.map])))
        if nxt.members == terms[-1].members:
            break
        terms.append(nxt)
    return CentralSeries(tuple(terms), len(terms[-1]) == G.order)


def abelian_basis(G: GroupTable, members: Sequence[int] | None = None) -> list[tuple[int, int]]:
    """Greedy cyclic decomposition of an abelian (sub)group.

    Returns ``[(g_1, m_1), ...]`` such that ``(c_i) -> prod g_i^c_i`` is an
    isomorphism from ``Z_m1 x ... x Z_md``; orders are non-increasing.
    """
    pool = list(range(G.order)) if members is None else sorted(int(x) for x in members)
    target = len(pool)
    span = {G.identity}
    basis = []
    while len(span) < target:
        best, best_d = None, 0
        for x in pool:
            if x in span:
                continue
            d, y = 1, x
            while y not in span:
                y = int(G.mul[y, x])
                d += 1
            if d > best_d:
                best, best_d = x, d
        lift = None
        for s in sorted(span):
            cand = int(G.mul[best, s])
            if G.power(cand, best_d) == G.identity:
                lift = cand
                break
        if lift is None:
            raise NonGroup("no cyclic complement found; subgroup is not abelian")
        powers = [G.identity]
        for _ in range(best_d - 1):
            powers.append(int(G.mul[powers[-1], lift]))
        span = {int(G.mul[a, b]) for a in span for b in powers}
        basis.append((lift, best_d))
    return basis


def generating_set(G: GroupTable) -> list[int]:
    """Greedy generating set, preferring elements of large order."""
    by_order = sorted(range(G.order), key=lambda g: (-int(G.orders[g]), g))
    gens: list[int] = []
    span = generated_subgroup(G, gens)
    for g in by_order:
        if len(span) == G.order:
            break
        if g not in span:
            gens.append(g)
            span = generated_subgroup(G, gens)
    return gens


def _spanning_tree(G: GroupTable, gens: Sequence[int]) -> tuple[list[tuple[int, int, int]], np.ndarray]:
    seen = {G.identity}
    frontier = [G.identity]
    tree = []
    while frontier:
        nxt = []
        for x in frontier:
            for j, s in enumerate(gens):
                y = int(G.mul[x, s])
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, j))
                    nxt.append(y)
        frontier = nxt
    return tree, np.array(sorted(seen))


def automorphisms(G: GroupTable) -> np.ndarray:
    """All automorphisms of ``G`` as rows of an ``(|Aut G|, n)`` index array.

    Backtracks over images of a generating set, checking injectivity and
    the homomorphism law on each partial subgroup before going deeper.
    """
    gens = generating_set(G)
    n, mul, orders = G.order, G.mul, G.orders
    levels = [_spanning_tree(G, gens[: i + 1]) for i in range(len(gens))]
    found: list[np.ndarray] = []

    def extend(i: int, images: list[int], covered: np.ndarray) -> None:
        if i == len(gens):
            found.append(phi_of(images))
            return
        tree, members = levels[i]
        for y in np.flatnonzero((orders == orders[gens[i]]) & ~covered):
            imgs = images + [int(y)]
            phi = np.zeros(n, dtype=np.int64)
            for x, p, j in tree:
                phi[x] = mul[phi[p], imgs[j]]
            vals = phi[members]
            if len(np.unique(vals)) != len(members):
                continue
            if not (phi[mul[np.ix_(members, members)]] == mul[np.ix_(vals, vals)]).all():
                continue
            mask = np.zeros(n, dtype=bool)
            mask[vals] = True
            extend(i + 1, imgs, mask)

    def phi_of(images: list[int]) -> np.ndarray:
        tree, _ = levels[-1]
        phi = np.zeros(n, dtype=np.int64)
        for x, p, j in tree:
            phi[x] = mul[phi[p], images[j]]
        return phi

    if not gens:
        return np.zeros((1, n), dtype=np.int64)
    start = np.zeros(n, dtype=bool)
    start[G.identity] = True
    extend(0, [], start)
    return np.array(found)
