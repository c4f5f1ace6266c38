"""Instance file format, seeded generators and the command-line interface.

File grammar (one instance per file, '#' lines are comments):

    n
    <n rows of n characters over {0,1}; row a gives a's qualifications>
    S: <space-separated 0-based indices>
    T: <indices>
    k <int>

Exit codes: 0 = feasible / accepted, 1 = infeasible / rejected,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from .core import Profile, iset
from .domains import LinearOrder, recognize_dqc, recognize_qc
from .errors import CapacityError, GroupctlError, InputError, ParseError
from .gcai import (
    DEFAULT_BRUTE_CAP,
    GcaiInstance,
    SolveResult,
    solve_auto,
    solve_bruteforce,
    solve_csr_fpt,
    solve_csr_qc,
    solve_dqc,
    solve_lsr_fpt,
    verify,
)
from .reductions import RbdsInstance, rbds_to_gcai_csr, rbds_to_gcai_lsr_qc
from .rules import Rule, socially_qualified

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


# ---------------------------------------------------------------------------
# instance text format


def parse_instance(text: str) -> GcaiInstance:
    """Parse the instance grammar; errors carry the offending 1-based line."""
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty instance")
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of input, expected {what}",
                             line=lines[-1][0] if lines else None)
        item = lines[pos]
        pos += 1
        return item

    lineno, head = take("individual count")
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected individual count, got {head!r}", line=lineno)
    if n < 1:
        raise ParseError("individual count must be at least 1", line=lineno)

    matrix = []
    for a in range(n):
        lineno, row = take(f"matrix row {a}")
        if len(row) != n:
            raise ParseError(f"matrix row {a} has length {len(row)}, expected {n}", line=lineno)
        cells = []
        for b, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(f"matrix row {a}, column {b}: {ch!r} is not 0 or 1", line=lineno)
            cells.append(int(ch))
        matrix.append(cells)
    profile = Profile(matrix)

    def index_line(tag: str) -> tuple[int, tuple[int, ...]]:
        lineno, line = take(f"{tag}: line")
        if not line.startswith(tag + ":"):
            raise ParseError(f"expected {tag!r} line, got {line!r}", line=lineno)
        body = line[len(tag) + 1:].split()
        try:
            members = iset(int(x) for x in body)
        except ValueError:
            raise ParseError(f"{tag}: indices must be integers", line=lineno)
        for a in members:
            if not (0 <= a < n):
                raise ParseError(f"{tag}: index {a} out of range [0, {n})", line=lineno)
        return lineno, members

    s_line, S = index_line("S")
    _, T = index_line("T")
    if not S:
        raise ParseError("S must be nonempty", line=s_line)
    if not set(S) <= set(T):
        raise ParseError("S must be a subset of T", line=s_line)

    lineno, kline = take("k line")
    parts = kline.split()
    if len(parts) != 2 or parts[0] != "k":
        raise ParseError(f"expected 'k <int>', got {kline!r}", line=lineno)
    try:
        k = int(parts[1])
    except ValueError:
        raise ParseError(f"k must be an integer, got {parts[1]!r}", line=lineno)
    if k < 0:
        raise ParseError("k must be nonnegative", line=lineno)

    if pos != len(lines):
        raise ParseError("trailing content after instance", line=lines[pos][0])
    return GcaiInstance(profile, S, T, k)


def serialize_instance(inst: GcaiInstance) -> str:
    """Inverse of parse_instance (bit-exact round trip)."""
    out = [str(inst.profile.n)]
    for a in range(inst.profile.n):
        out.append("".join(str((inst.profile.rows[a] >> b) & 1) for b in range(inst.profile.n)))
    out.append("S: " + " ".join(str(a) for a in inst.S))
    out.append("T: " + " ".join(str(a) for a in inst.T))
    out.append(f"k {inst.k}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# seeded generators


def gen_random(n: int, density: float, seed: int) -> Profile:
    """Independent Bernoulli(density) qualification matrix."""
    if not 0.0 <= density <= 1.0:
        raise InputError("density must be in [0, 1]")
    if n < 1:
        raise InputError("n must be at least 1")
    rng = random.Random(seed)
    return Profile([[1 if rng.random() < density else 0 for _ in range(n)] for _ in range(n)])


def gen_qc(n: int, seed: int) -> tuple[Profile, LinearOrder]:
    """Profile whose rows are contiguous blocks under a hidden random order."""
    if n < 1:
        raise InputError("n must be at least 1")
    rng = random.Random(seed)
    hidden = rng.sample(range(n), n)
    matrix = [[0] * n for _ in range(n)]
    for a in range(n):
        if rng.random() < 0.15:
            continue  # empty row, trivially consecutive
        i = rng.randrange(n)
        j = rng.randrange(i, n)
        for x in range(i, j + 1):
            matrix[a][hidden[x]] = 1
    return Profile(matrix), LinearOrder(hidden)


def gen_dqc(n: int, seed: int) -> tuple[Profile, LinearOrder]:
    """Dual of gen_qc: rows have one contiguous 0-block under the witness."""
    profile, order = gen_qc(n, seed)
    return profile.complement(), order


def gen_instance(profile: Profile, s_size: int, t_size: int, k: int, seed: int) -> GcaiInstance:
    """Random S within random T of the requested sizes over the given profile."""
    n = profile.n
    if not (1 <= s_size <= t_size <= n):
        raise InputError(f"need 1 <= |S| <= |T| <= n, got |S|={s_size}, |T|={t_size}, n={n}")
    if k < 0:
        raise InputError("k must be nonnegative")
    rng = random.Random(seed)
    T = rng.sample(range(n), t_size)
    S = rng.sample(T, s_size)
    return GcaiInstance(profile, S, T, k)


def gen_rbds(reds: int, blues: int, edge_prob: float, kappa: int, seed: int) -> RbdsInstance:
    """Random bipartite RBDS instance with independent edges."""
    if not 0.0 <= edge_prob <= 1.0:
        raise InputError("edge probability must be in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (r, b) for r in range(reds) for b in range(blues) if rng.random() < edge_prob
    ]
    return RbdsInstance(reds, blues, edges, kappa)


# ---------------------------------------------------------------------------
# command implementations


def _load(path: str) -> GcaiInstance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _rule(name: str) -> Rule:
    return Rule.CSR if name == "csr" else Rule.LSR


def _emit(payload: dict, as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_qualify(args) -> int:
    inst = _load(args.instance)
    rule = _rule(args.rule)
    qualified = socially_qualified(rule, inst.profile, inst.T)
    _emit(
        {"rule": args.rule, "qualified": list(qualified)},
        args.json,
        ["qualified: " + " ".join(map(str, qualified))],
    )
    return EXIT_OK


def _solve_with(inst: GcaiInstance, rule: Rule, algo: str, cap: int) -> SolveResult:
    if algo == "auto":
        return solve_auto(inst, rule, cap=cap)
    if algo == "brute":
        return solve_bruteforce(inst, rule, cap=cap)
    if algo == "fpt":
        return solve_csr_fpt(inst) if rule is Rule.CSR else solve_lsr_fpt(inst)
    if algo == "qc":
        if rule is not Rule.CSR:
            raise InputError("the QC special case applies to the CSR rule only")
        order = recognize_qc(inst.profile)
        if order is None:
            raise InputError("profile is not QC")
        return solve_csr_qc(inst, order)
    if algo == "dqc":
        order = recognize_dqc(inst.profile)
        if order is None:
            raise InputError("profile is not DQC")
        return solve_dqc(inst, rule, order)
    raise InputError(f"unknown algorithm {algo!r}")


def _cmd_solve(args) -> int:
    inst = _load(args.instance)
    rule = _rule(args.rule)
    result = _solve_with(inst, rule, args.algo, args.max_brute)
    payload = {
        "rule": args.rule,
        "strategy": result.strategy,
        "feasible": result.feasible,
        "certificate": list(result.certificate) if result.feasible else None,
        "optimal_cost": result.optimal_cost,
    }
    if result.feasible:
        lines = [
            f"feasible ({result.strategy})",
            "certificate: " + " ".join(map(str, result.certificate)),
        ]
        if result.optimal_cost is not None:
            lines.append(f"cost: {result.optimal_cost}")
    else:
        lines = [f"infeasible ({result.strategy})"]
    _emit(payload, args.json, lines)
    return EXIT_OK if result.feasible else EXIT_NO


def _cmd_recognize(args) -> int:
    inst = _load(args.instance)
    recognizer = recognize_qc if args.domain == "qc" else recognize_dqc
    order = recognizer(inst.profile)
    payload = {
        "domain": args.domain,
        "recognized": order is not None,
        "order": list(order.order) if order is not None else None,
    }
    if order is not None:
        _emit(payload, args.json, ["order: " + " ".join(map(str, order.order))])
        return EXIT_OK
    _emit(payload, args.json, [f"not {args.domain}"])
    return EXIT_NO


def _cmd_verify(args) -> int:
    inst = _load(args.instance)
    rule = _rule(args.rule)
    try:
        U = iset(int(x) for x in args.certificate.split())
    except ValueError:
        raise InputError("certificate must be space-separated integers")
    ok = verify(inst, rule, U)
    _emit(
        {"rule": args.rule, "certificate": list(U), "accepted": ok},
        args.json,
        ["accepted" if ok else "rejected"],
    )
    return EXIT_OK if ok else EXIT_NO


def _cmd_gen(args) -> int:
    if args.kind == "random":
        profile = gen_random(args.n, args.density, args.seed)
        inst = gen_instance(profile, args.s_size, args.t_size, args.k, args.seed + 1)
        header = [f"# gen random n={args.n} density={args.density} seed={args.seed}"]
    elif args.kind in ("qc", "dqc"):
        maker = gen_qc if args.kind == "qc" else gen_dqc
        profile, order = maker(args.n, args.seed)
        inst = gen_instance(profile, args.s_size, args.t_size, args.k, args.seed + 1)
        header = [
            f"# gen {args.kind} n={args.n} seed={args.seed}",
            "# witness order: " + " ".join(map(str, order.order)),
        ]
    elif args.kind in ("rbds-csr", "rbds-lsr"):
        rbds = gen_rbds(args.reds, args.blues, args.edge_prob, args.kappa, args.seed)
        if args.kind == "rbds-csr":
            inst = rbds_to_gcai_csr(rbds)
            header = []
        else:
            inst, order = rbds_to_gcai_lsr_qc(rbds)
            header = ["# witness order: " + " ".join(map(str, order.order))]
        header.insert(
            0,
            f"# gen {args.kind} reds={args.reds} blues={args.blues} "
            f"edge_prob={args.edge_prob} kappa={args.kappa} seed={args.seed}",
        )
    else:
        raise InputError(f"unknown generator {args.kind!r}")
    sys.stdout.write("\n".join(header) + ("\n" if header else "") + serialize_instance(inst))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupctl",
        description="Exact solvers for group identification and control by adding individuals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("instance", help="instance file path, or '-' for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("qualify", help="socially qualified individuals of (profile, T)")
    p.add_argument("--rule", choices=["csr", "lsr"], required=True)
    add_common(p)
    p.set_defaults(func=_cmd_qualify)

    p = sub.add_parser("solve", help="solve the control instance")
    p.add_argument("--rule", choices=["csr", "lsr"], required=True)
    p.add_argument("--algo", choices=["auto", "fpt", "brute", "qc", "dqc"], default="auto")
    p.add_argument("--max-brute", type=int, default=DEFAULT_BRUTE_CAP,
                   help="capacity cap for the brute-force solver")
    add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("recognize", help="test for a consecutive domain and print a witness order")
    p.add_argument("--domain", choices=["qc", "dqc"], required=True)
    add_common(p)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("--rule", choices=["csr", "lsr"], required=True)
    p.add_argument("--certificate", required=True, help="space-separated indices (may be empty)")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate an instance on stdout")
    p.add_argument("kind", choices=["random", "qc", "dqc", "rbds-csr", "rbds-lsr"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--s-size", type=int, default=2)
    p.add_argument("--t-size", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--reds", type=int, default=4)
    p.add_argument("--blues", type=int, default=4)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--kappa", type=int, default=2)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError, CapacityError, GroupctlError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
