"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 no DDP sequence exists, 4 search timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import constructions, lifting, search
from .ddp import SlonimskySequence, make_ddp_sequence, verify_ddp, verify_slonimsky
from .errors import DdpError, NoDdpExists, SearchTimeout
from .groups import (
    Cyclic,
    DirectProduct,
    SemidirectCyclic,
    build_group,
    center,
    involutions,
    parse_descriptor,
    real_elements,
    upper_central_series,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONEXISTENT, EXIT_TIMEOUT = 0, 1, 2, 3, 4

METHODS = ("auto", "triangular", "variant", "slonimsky", "lift", "semidirect", "prime")


@dataclass
class OutputRecord:
    command: str
    group: str | None = None
    order: int | None = None
    payload: dict = field(default_factory=dict)
    ms: int = 0

    def to_dict(self) -> dict:
        out = {"command": self.command}
        if self.group is not None:
            out["group"] = self.group
        if self.order is not None:
            out["order"] = self.order
        out.update({k: v for k, v in self.payload.items() if v is not None})
        out["ms"] = self.ms
        return out


def _sequence_payload(seq) -> dict:
    G = seq.group
    payload = {"sequence": list(seq.perm), "labels": G.labels(seq.perm)}
    if isinstance(seq, SlonimskySequence):
        payload["signed_diffs"] = list(seq.signed_diffs)
        payload["last_term"] = seq.last_term
    else:
        payload["divisors"] = list(seq.divisors)
    return payload


def _print_text(rec: OutputRecord) -> None:
    d = rec.to_dict()
    if rec.group is not None:
        print(f"group: {rec.group} (order {rec.order})")
    for key, value in d.items():
        if key in ("command", "group", "order", "ms"):
            continue
        if isinstance(value, list):
            value = " ".join(map(str, value))
        elif isinstance(value, dict):
            value = ", ".join(f"{k}={v}" for k, v in value.items())
        print(f"{key}: {value}")


def emit(rec: OutputRecord, args) -> None:
    if getattr(args, "json", False):
        print(json.dumps(rec.to_dict()))
    else:
        _print_text(rec)


def _load_group(text: str):
    desc = parse_descriptor(text)
    return desc, build_group(desc)


def _read_sequence(args) -> list[int]:
    if args.file:
        with open(args.file) as fh:
            raw = fh.read()
    elif args.sequence:
        raw = args.sequence
    else:
        raise argparse.ArgumentTypeError("give a sequence inline or with --file")
    stripped = raw.strip()
    if stripped.startswith("{"):
        return [int(x) for x in json.loads(stripped)["sequence"]]
    tokens = stripped.replace(",", " ").split()
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad sequence: {exc}") from None


def cmd_group_info(args) -> int:
    desc, G = _load_group(args.group)
    series = upper_central_series(G)
    info = {
        "abelian": G.is_abelian,
        "involutions": len(involutions(G)),
        "real_elements": len(real_elements(G)),
        "center_size": len(center(G)),
        "nilpotent": series.nilpotent,
    }
    emit(OutputRecord("group info", str(desc), G.order, {"info": info}), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    desc, G = _load_group(args.group)
    perm = _read_sequence(args)
    payload = {"sequence": perm}
    if args.slonimsky:
        v = verify_slonimsky(G, perm)
        payload["verdict"] = {"ok": v.ok, "failed_condition": v.failed,
                              "pair": list(v.detail) if v.detail else None}
        payload["signed_diffs"] = list(v.signed_diffs)
        payload["last_term"] = v.last_term
    else:
        v = verify_ddp(G, perm)
        payload["verdict"] = {"ok": v.ok, "reason": v.reason, "pair": list(v.pair) if v.pair else None}
        if v.divisors:
            payload["divisors"] = list(v.divisors)
    if v.ok:
        payload["labels"] = G.labels(perm)
    payload["verdict"] = {k: x for k, x in payload["verdict"].items() if x is not None}
    emit(OutputRecord("verify", str(desc), G.order, payload), args)
    return EXIT_OK if v.ok else EXIT_FAIL


def _split_for_lift(desc):
    """``G x K`` with the last factor ``K`` even and the rest odd."""
    if not isinstance(desc, DirectProduct) or len(desc.factors) < 2:
        return None
    *g_parts, k_desc = desc.factors
    g_desc = g_parts[0] if len(g_parts) == 1 else DirectProduct(tuple(g_parts))
    G, K = build_group(g_desc), build_group(k_desc)
    if G.order % 2 == 0 or K.order % 2:
        return None
    return G, K


def _seed_sequence(K):
    if K.is_abelian:
        return constructions.ddp_abelian(K)
    seq = search.first_ddp(K)
    if seq is None:
        raise NoDdpExists(f"{K.descriptor} has no DDP sequence")
    return seq


def _power_of_two_exponent(desc) -> int:
    if isinstance(desc, Cyclic) and desc.n >= 2 and desc.n & (desc.n - 1) == 0:
        return desc.n.bit_length() - 1
    raise DdpError(f"method needs Z_(2^m), got {desc}")


def _construct(desc, G, method: str, args):
    if method == "triangular":
        return constructions.triangular_ddp(_power_of_two_exponent(desc))
    if method == "variant":
        return constructions.triangular_variant_ddp(_power_of_two_exponent(desc))
    if method == "slonimsky":
        factors = desc.factors if isinstance(desc, DirectProduct) else (desc,)
        if not all(isinstance(f, Cyclic) for f in factors):
            raise DdpError(f"method slonimsky needs a product of odd cyclic groups, got {desc}")
        return constructions.slonimsky_abelian([f.n for f in factors])
    if method == "semidirect":
        if not isinstance(desc, SemidirectCyclic):
            raise DdpError(f"method semidirect needs SD(m,n;u), got {desc}")
        return lifting.semidirect_ddp(desc.m, desc.n, desc.u)[1]
    if method == "prime":
        if not isinstance(desc, SemidirectCyclic):
            raise DdpError(f"method prime needs SD(p,p-1;u), got {desc}")
        _, seq = lifting.prime_semidirect_ddp(desc.m)
        if str(seq.group.descriptor) != str(desc):
            raise DdpError(f"the prime construction for p={desc.m} builds {seq.group.descriptor}, not {desc}")
        return seq
    if method == "lift":
        split = _split_for_lift(desc)
        if split is None:
            raise DdpError(f"method lift needs G x K with G odd and K even, got {desc}")
        Godd, K = split
        seq = lifting.lift_via_central_series(Godd, K, _seed_sequence(K))
        return make_ddp_sequence(G, seq.perm)
    # auto
    if G.is_abelian:
        return constructions.ddp_abelian(G)
    if isinstance(desc, SemidirectCyclic) and desc.m % 2 and desc.n % 2 == 0:
        return lifting.semidirect_ddp(desc.m, desc.n, desc.u)[1]
    split = _split_for_lift(desc)
    if split is not None and upper_central_series(split[0]).nilpotent:
        return _construct(desc, G, "lift", args)
    seq = search.first_ddp(G, budget=args.budget)
    if seq is None:
        raise NoDdpExists(f"exhaustive search found no DDP sequence in {desc}")
    return seq


def cmd_construct(args) -> int:
    desc, G = _load_group(args.group)
    t0 = time.monotonic()
    seq = _construct(desc, G, args.method, args)
    ms = int(1000 * (time.monotonic() - t0))
    emit(OutputRecord("construct", str(desc), G.order, {"method": args.method, **_sequence_payload(seq)}, ms), args)
    return EXIT_OK


def cmd_count(args) -> int:
    desc, G = _load_group(args.group)
    result = search.count_ddp(G, budget=args.budget, threads=args.threads)
    payload = {"count": str(result.count), "exact": result.exact, "nodes": result.nodes}
    emit(OutputRecord("count", str(desc), G.order, payload, int(1000 * result.seconds)), args)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    desc, G = _load_group(args.group)
    t0 = time.monotonic()
    n = 0
    for seq in search.enumerate_ddp(G, max=args.max, budget=args.budget):
        n += 1
        if args.csv:
            print(" ".join(map(str, seq.perm)))
        elif args.json:
            ms = int(1000 * (time.monotonic() - t0))
            print(json.dumps(OutputRecord("enumerate", str(desc), G.order, _sequence_payload(seq), ms).to_dict()))
        else:
            print(" ".join(map(str, seq.perm)))
    if not (args.csv or args.json):
        print(f"# {n} sequences")
    return EXIT_OK


def cmd_oeis(args) -> int:
    cap = args.max_n if args.long_run else search.OEIS_FEASIBILITY_CAP
    t0 = time.monotonic()
    terms = search.a141599_prefix(args.max_n, cap=cap, budget=args.budget, threads=args.threads)
    ms = int(1000 * (time.monotonic() - t0))
    if args.json:
        print(json.dumps(OutputRecord("oeis", payload={
            "terms": [[n, str(c)] for n, c in terms], "exact": True}, ms=ms).to_dict()))
    else:
        for n, c in terms:
            print(f"{n} {c}")
    return EXIT_OK


def cmd_bound(args) -> int:
    odd = [int(x) for x in args.odd.split(",") if x.strip()] if args.odd else []
    value = constructions.sizeo_lower_bound(args.m, odd)
    emit(OutputRecord("bound", payload={"m": args.m, "odd": odd, "bound": str(value)}), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object per record")

    parser = argparse.ArgumentParser(prog="ddp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", help="group queries")
    gsub = group.add_subparsers(dest="group_command", required=True)
    info = gsub.add_parser("info", parents=[common], help="order, involutions, real elements, center")
    info.add_argument("group")
    info.set_defaults(func=cmd_group_info)

    verify = sub.add_parser("verify", parents=[common], help="verify a DDP or Slonimsky sequence")
    verify.add_argument("group")
    verify.add_argument("sequence", nargs="?", help="comma-separated 0-based indices")
    verify.add_argument("--file", help="file with one index per line, comma-separated indices, or a JSON record")
    verify.add_argument("--slonimsky", action="store_true", help="check the Slonimsky conditions instead")
    verify.set_defaults(func=cmd_verify)

    construct = sub.add_parser("construct", parents=[common], help="build a DDP sequence")
    construct.add_argument("group")
    construct.add_argument("--method", choices=METHODS, default="auto")
    construct.add_argument("--budget", type=float, default=None, help="seconds for search fallback")
    construct.set_defaults(func=cmd_construct)

    count = sub.add_parser("count", parents=[common], help="count all DDP sequences")
    count.add_argument("group")
    count.add_argument("--budget", type=float, default=None, help="wall-clock limit in seconds")
    count.add_argument("--threads", type=int, default=None)
    count.set_defaults(func=cmd_count)

    enum = sub.add_parser("enumerate", parents=[common], help="list DDP sequences in lexicographic order")
    enum.add_argument("group")
    enum.add_argument("--max", type=int, default=None)
    enum.add_argument("--csv", action="store_true", help="one sequence per row, space-separated")
    enum.add_argument("--budget", type=float, default=None)
    enum.set_defaults(func=cmd_enumerate)

    oeis = sub.add_parser("oeis", parents=[common], help="count DDP sequences of Z_n for even n")
    oeis.add_argument("--max-n", type=int, default=14)
    oeis.add_argument("--budget", type=float, default=None, help="seconds per term")
    oeis.add_argument("--threads", type=int, default=None)
    oeis.add_argument("--long-run", action="store_true", help="allow max-n beyond 16")
    oeis.set_defaults(func=cmd_oeis)

    bound = sub.add_parser("bound", parents=[common], help="lower bound for Z_(2^m) x Z_n1 x ...")
    bound.add_argument("--m", type=int, required=True)
    bound.add_argument("--odd", default="", help="comma-separated odd moduli")
    bound.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoDdpExists as exc:
        print(exc, file=sys.stderr)
        return EXIT_NONEXISTENT
    except SearchTimeout as exc:
        print(f"timeout (result is not final): {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (DdpError, argparse.ArgumentTypeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
