"""Lifting DDP sequences through epimorphisms with odd abelian kernels.

Given ``pi: G -> H`` whose kernel ``N`` is abelian of odd order ``m`` and
contains no real element of ``G`` except the identity, a DDP sequence
``p_0..p_{n-1}`` of ``H`` lifts to a DDP sequence ``P_0..P_{mn-1}`` of
``G`` with ``pi(P_i) = p_i`` for ``i < n``.  The lift is assembled from
``m`` blocks of ``n`` divisors, each block a conjugated copy of the base
divisors, threaded together by a Slonimsky sequence of ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .constructions import ddp_abelian, slonimsky_tuples
from .ddp import DdpSequence, make_ddp_sequence, signed_differences
from .errors import (
    BadChoice,
    BadPrime,
    ConjugatorNotFound,
    GeneratorConditionFailed,
    InternalAssertionFailed,
    NotDdp,
    NotNilpotent,
    NotOddOrder,
    OrderLimitExceeded,
    PlanUnavailable,
    PreconditionFailed,
)
from .groups import (
    Cyclic,
    Epimorphism,
    GroupTable,
    SemidirectCyclic,
    Subgroup,
    abelian_basis,
    build_group,
    direct_product,
    involutions,
    order_limit,
    quotient,
    real_elements,
    upper_central_series,
)

__all__ = [
    "Epimorphism",
    "LiftPlan",
    "PreconditionVerdict",
    "build_lift_plan",
    "check_lift_precondition",
    "enumerate_lifts",
    "lift_ddp",
    "lift_via_central_series",
    "prime_semidirect_ddp",
    "semidirect_ddp",
    "sqrt_odd_abelian",
]


@dataclass(frozen=True)
class PreconditionVerdict:
    ok: bool
    clause: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def check_lift_precondition(pi: Epimorphism) -> PreconditionVerdict:
    """Kernel must be abelian, of odd order, and free of nontrivial real elements."""
    G, N = pi.source, pi.kernel
    idx = np.array(N.members)
    block = G.mul[np.ix_(idx, idx)]
    bad = np.argwhere(block != block.T)
    if len(bad):
        a, b = bad[0]
        return PreconditionVerdict(False, "abelian", (int(idx[a]), int(idx[b])))
    if len(N) % 2 == 0:
        return PreconditionVerdict(False, "odd-order", (len(N),))
    real = [h for h in real_elements(G) if h in N and h != G.identity]
    if real:
        return PreconditionVerdict(False, "real-element", (real[0],))
    return PreconditionVerdict(True)


def sqrt_odd_abelian(N: Subgroup, x: int) -> int:
    """The unique ``w`` in ``N`` with ``w^2 = x``, namely ``x^((|N|+1)/2)``."""
    if x not in N:
        raise ValueError(f"element {x} is not in the subgroup")
    if len(N) % 2 == 0:
        raise NotOddOrder("square roots need an odd-order subgroup")
    return N.parent.power(x, (len(N) + 1) // 2)


@dataclass(frozen=True, eq=False)
class LiftPlan:
    epimorphism: Epimorphism
    base: tuple[int, ...]
    divisors: tuple[int, ...]
    sigma: tuple[int, ...]
    fixed: tuple[int, ...]
    chosen: tuple[int, ...]
    complement: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    fiber_choices: dict

    @property
    def y(self) -> int:
        return self.alpha[-1]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return _pairs(self.sigma)

    def choice_count(self) -> int:
        return (2 * len(self.alpha)) ** len(self.chosen)


def _pairs(sigma: Sequence[int]) -> list[tuple[int, int]]:
    return [(r, s) for r, s in enumerate(sigma) if r < s]


def _kernel_slonimsky(pi: Epimorphism, scale: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]]:
    G, N = pi.source, pi.kernel
    basis = abelian_basis(G, N.members)
    if not basis:
        return (G.identity,), (G.identity,)
    exponent = math.lcm(*(o for _, o in basis))
    if math.gcd(scale, exponent) != 1:
        raise BadChoice(f"kernel scale {scale} is not a unit modulo {exponent}")
    alpha = []
    for coords in slonimsky_tuples([o for _, o in basis]):
        x = G.identity
        for (b, _), c in zip(basis, coords):
            x = int(G.mul[x, G.power(b, c * scale)])
        alpha.append(x)
    return tuple(alpha), signed_differences(G, alpha)


def _base_perm(pi: Epimorphism, base) -> tuple[int, ...]:
    perm = base.perm if isinstance(base, DdpSequence) else tuple(int(x) for x in base)
    return make_ddp_sequence(pi.target, perm).perm


def build_lift_plan(
    pi: Epimorphism,
    base,
    transversal: Sequence[int] | None = None,
    fibers: Sequence[int] | None = None,
    kernel_scale: int = 1,
    check: bool = True,
    _kernel=None,
) -> LiftPlan:
    """Collect every choice the lift depends on.

    ``transversal`` has one bit per pair ``{r, sigma(r)}`` (pairs ordered by
    their smaller index): 0 puts the smaller index in the chosen set, 1 the
    larger.  ``fibers`` gives, for each chosen index in the same order, a
    position in the fiber over its divisor.  ``kernel_scale`` applies the
    automorphism ``x -> x^k`` of the kernel to its Slonimsky sequence.
    Defaults reproduce the minimal choices everywhere.
    """
    if check:
        verdict = check_lift_precondition(pi)
        if not verdict:
            raise PreconditionFailed(f"lift precondition fails: {verdict.clause} (witness {verdict.witness})")
    H = pi.target
    m = len(pi.kernel)
    if m > 1 and H.order % 2:
        raise PreconditionFailed("the base group must have even order")
    p = _base_perm(pi, base)
    n = len(p)
    h = (H.identity,) + tuple(int(H.div[a, b]) for a, b in zip(p, p[1:]))
    where = {x: r for r, x in enumerate(h)}
    sigma = []
    for r, x in enumerate(h):
        s = where.get(int(H.inv[x]))
        if s is None:
            raise PlanUnavailable(f"inverse of divisor h_{r} = {H.label(x)} is not a divisor")
        sigma.append(s)
    fixed = tuple(r for r in range(n) if sigma[r] == r)
    pairs = _pairs(sigma)
    if transversal is None:
        transversal = [0] * len(pairs)
    if len(transversal) != len(pairs) or any(b not in (0, 1) for b in transversal):
        raise BadChoice(f"transversal needs {len(pairs)} bits in {{0, 1}}")
    chosen = tuple(pair[b] for pair, b in zip(pairs, transversal))
    complement = tuple(sigma[r] for r in chosen)
    if fibers is None:
        fibers = [0] * len(chosen)
    if len(fibers) != len(chosen) or any(not 0 <= f < m for f in fibers):
        raise BadChoice(f"fiber choices need {len(chosen)} indices in 0..{m - 1}")
    fiber_choices = {r: pi.fibers[h[r]][f] for r, f in zip(chosen, fibers)}
    alpha, beta = _kernel if _kernel is not None else _kernel_slonimsky(pi, kernel_scale)
    return LiftPlan(
        epimorphism=pi,
        base=p,
        divisors=h,
        sigma=tuple(sigma),
        fixed=fixed,
        chosen=tuple(sorted(chosen)),
        complement=tuple(sorted(complement)),
        alpha=alpha,
        beta=beta,
        fiber_choices=fiber_choices,
    )


def _base_block(plan: LiftPlan) -> list[int]:
    pi = plan.epimorphism
    G, N = pi.source, pi.kernel
    mul, inv = G.mul, G.inv
    y = plan.y
    y_inv = int(inv[y])
    n = len(plan.base)
    g = [None] * n
    # g_0 only offsets the whole sequence, so it is pinned to the identity
    g[0] = G.identity
    for r, x in plan.fiber_choices.items():
        s = plan.sigma[r]
        g[r] = x
        xi = int(inv[x])
        if (r + s) % 2:
            g[s] = xi
        elif r % 2:
            g[s] = int(mul[mul[y, xi], y])
        else:
            g[s] = int(mul[mul[y_inv, xi], y_inv])
    for r in plan.fixed:
        if r == 0:
            continue
        f = pi.fibers[plan.divisors[r]][0]
        target = int(inv[f])
        v = next((x for x in N.members if mul[mul[x, f], x] == target), None)
        if v is None:
            raise ConjugatorNotFound(f"no v in the kernel with v f v = f^-1 for r = {r}")
        w = sqrt_odd_abelian(N, int(mul[v, y if r % 2 else y_inv]))
        g[r] = int(mul[mul[w, f], w])
    return g


def lift_ddp(plan: LiftPlan) -> DdpSequence:
    pi = plan.epimorphism
    G = pi.source
    mul, inv = G.mul, G.inv
    alpha, beta = plan.alpha, plan.beta
    n, m = len(plan.base), len(alpha)
    base = _base_block(plan)
    g = list(base)
    for i in range(n, m * n):
        q, r = divmod(i, n)
        a, ai = alpha[q], int(inv[alpha[q]])
        if r == 0:
            g.append(beta[q])
        elif q % 2:
            x = int(inv[base[n - r]])
            g.append(int(mul[mul[a, x], a]) if r % 2 else int(mul[mul[ai, x], ai]))
        else:
            x = base[r]
            g.append(int(mul[mul[ai, x], ai]) if r % 2 else int(mul[mul[a, x], a]))
    P = []
    acc = G.identity
    for x in g:
        acc = int(mul[acc, x])
        P.append(acc)
    for i in range(m * n):
        q, r = divmod(i, n)
        a = alpha[q]
        if q % 2:
            expected = mul[P[n - r - 1], a if r % 2 else inv[a]]
        else:
            expected = mul[P[r], inv[a] if r % 2 else a]
        if P[i] != expected:
            raise InternalAssertionFailed(f"partial product P_{i} breaks the block pattern (q={q}, r={r})")
    for i in range(n):
        if pi.map[P[i]] != plan.base[i]:
            raise InternalAssertionFailed(f"P_{i} does not project onto the base term")
    try:
        return make_ddp_sequence(G, P)
    except NotDdp as exc:
        raise InternalAssertionFailed(f"lifted sequence is not DDP: {exc}") from exc


def _kernel_units(pi: Epimorphism) -> list[int]:
    N = pi.kernel
    exponent = math.lcm(*(int(pi.source.orders[x]) for x in N.members))
    return [k for k in range(1, max(exponent, 2)) if math.gcd(k, exponent) == 1]


def enumerate_lifts(
    pi: Epimorphism,
    base,
    limit: int | None = None,
    vary_kernel: bool = True,
) -> Iterator[DdpSequence]:
    """Yield pairwise-distinct lifts of ``base``.

    Choices run in lexicographic order over (kernel automorphism scale,
    transversal bits, fiber indices).  Swapping a pair's representative
    reproduces the same divisor pair, so without ``vary_kernel`` only
    ``m^|A|`` distinct lifts appear; scaling the kernel's Slonimsky
    sequence by units of its exponent supplies further distinct lifts.
    """
    verdict = check_lift_precondition(pi)
    if not verdict:
        raise PreconditionFailed(f"lift precondition fails: {verdict.clause} (witness {verdict.witness})")
    first = build_lift_plan(pi, base, check=False)
    npairs = len(first.pairs)
    m = len(pi.kernel)
    scales = _kernel_units(pi) if vary_kernel else [1]
    seen = set()
    emitted = 0
    for k in scales:
        kernel = _kernel_slonimsky(pi, k)
        for bits in product((0, 1), repeat=npairs):
            for fib in product(range(m), repeat=npairs):
                if limit is not None and emitted >= limit:
                    return
                plan = build_lift_plan(pi, first.base, bits, fib, check=False, _kernel=kernel)
                seq = lift_ddp(plan)
                if seq.perm in seen:
                    continue
                seen.add(seq.perm)
                emitted += 1
                yield seq


def lift_bound(pi: Epimorphism) -> int:
    """Guaranteed number of lifts ``(2m)^((n-1-e)/2)``."""
    m = len(pi.kernel)
    n = pi.target.order
    e = len(involutions(pi.target))
    return (2 * m) ** ((n - 1 - e) // 2)


def lift_via_central_series(G: GroupTable, K: GroupTable, k_seq) -> DdpSequence:
    """DDP sequence in ``G x K`` for odd nilpotent ``G``, lifting along its upper central series."""
    if G.order % 2 == 0:
        raise NotOddOrder(f"{G.descriptor} has even order {G.order}")
    series = upper_central_series(G)
    if not series.nilpotent:
        raise NotNilpotent(f"{G.descriptor} is not nilpotent")
    _check_product_order(G.order * K.order)
    k_perm = k_seq.perm if isinstance(k_seq, DdpSequence) else tuple(k_seq)
    make_ddp_sequence(K, k_perm)
    levels = [quotient(G, Z) for Z in series]
    nk = K.order
    seq = list(k_perm)
    for i in range(len(series) - 2, -1, -1):
        Qi, pii = levels[i]
        Qn, pin = levels[i + 1]
        src, tgt = direct_product(Qi, K), direct_product(Qn, K)
        phi = np.array([pin.map[pii.fibers[x][0]] for x in range(Qi.order)])
        idx = np.arange(src.order)
        epi = Epimorphism.from_map(src, tgt, phi[idx // nk] * nk + idx % nk)
        plan = build_lift_plan(epi, seq)
        seq = list(lift_ddp(plan).perm)
    return make_ddp_sequence(direct_product(G, K), seq)


def _check_product_order(n: int) -> None:
    if n > order_limit():
        raise OrderLimitExceeded(f"group order {n} exceeds the limit {order_limit()}")


def semidirect_ddp(m: int, n: int, u: int) -> tuple[GroupTable, DdpSequence]:
    """DDP sequence in ``Z_m x|_u Z_n`` (m odd, n even) lifted from ``Z_n``."""
    if m % 2 == 0 or n % 2:
        raise PreconditionFailed(f"need m odd and n even, got m={m}, n={n}")
    desc = SemidirectCyclic(m, n, u)
    for s in range(n):
        if math.gcd(1 + pow(u, s, m), m) != 1:
            raise GeneratorConditionFailed(
                f"1 + u^{s} = {(1 + pow(u, s, m)) % m} does not generate Z_{m}", s=s)
    G = build_group(desc)
    Zn = build_group(Cyclic(n))
    pi = Epimorphism.from_map(G, Zn, np.arange(G.order) // m)
    base = ddp_abelian(Zn)
    return G, lift_ddp(build_lift_plan(pi, base))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def least_primitive_root(p: int) -> int:
    for t in range(1, p):
        if all(pow(t, k, p) != 1 for k in range(1, p - 1)):
            return t
    raise BadPrime(f"{p} has no primitive root")


def prime_semidirect_ddp(p: int) -> tuple[GroupTable, DdpSequence]:
    """The order ``p(p-1)`` group ``Z_p x| Z_{p-1}`` acting by ``t^(2s)`` for ``p = 3 mod 4``."""
    if not _is_prime(p) or p % 4 != 3:
        raise BadPrime(f"{p} is not a prime congruent to 3 mod 4")
    _check_product_order(p * (p - 1))
    t = least_primitive_root(p)
    return semidirect_ddp(p, p - 1, t * t % p)
