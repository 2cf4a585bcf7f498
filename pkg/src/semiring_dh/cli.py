"""Command-line interface: ``semiring-dh <command> ...``.

Exit status is 0 on success, 1 on operational errors (bad files, failed
checks, attacks that come back empty) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .rng import DEFAULT_SEED, stream

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    seed: int = DEFAULT_SEED
    fmt: str = "human"
    workers: int = 1
    options: dict = field(default_factory=dict)

    def __getattr__(self, name):
        try:
            return self.__dict__["options"][name]
        except KeyError:
            raise AttributeError(name) from None


class _Out:
    """Collects output lines; ``pairs`` become one ``k=v`` line in kv mode
    and one ``k: v`` line each in human mode."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def pairs(self, items: list[tuple[str, object]]):
        if self.fmt == "kv":
            self.lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in items))
        else:
            self.lines.extend(f"{k}: {_fmt(v)}" for k, v in items)

    def render(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6g}"
    if v is None:
        return "none"
    return str(v)


class OperationalError(Exception):
    pass


def _semiring(cfg: RunConfig):
    from .formats import load_semiring
    from .semiring import builtin

    if cfg.options.get("semiring_file"):
        return load_semiring(cfg.semiring_file)
    name = cfg.options.get("builtin") or cfg.options.get("semiring")
    if not name:
        raise OperationalError("give --builtin NAME or --semiring-file FILE")
    try:
        return builtin(name)
    except KeyError as exc:
        raise OperationalError(str(exc.args[0]) if exc.args else f"unknown semiring {name}") from None


def _resolver(cfg: RunConfig):
    if cfg.options.get("semiring_file"):
        return _semiring(cfg)
    return None


def _instance(cfg: RunConfig):
    from .protocol import decode_instance, paper_instance

    path = cfg.options.get("instance")
    deg = cfg.options.get("deg")
    if path and path != "paper":
        inst = decode_instance(Path(path).read_text(), _resolver(cfg))
        if deg is not None and deg != inst.degree_bound:
            from .protocol import ProtocolInstance

            inst = ProtocolInstance(inst.m1, inst.m2, inst.s, deg)
        return inst
    return paper_instance(deg or 49)


# --- commands ---------------------------------------------------------------

def cmd_semiring(cfg: RunConfig, out: _Out) -> int:
    from .semiring import is_simple, validate_axioms

    table = _semiring(cfg)
    if cfg.subcommand == "validate":
        violations = validate_axioms(table)
        out.pairs([("semiring", table.name), ("order", table.order), ("valid", not violations),
                   ("violations", len(violations))])
        for v in violations:
            out.text(f"violation {v.law} witness={','.join(map(str, v.witness))}")
        return EXIT_OK if not violations else EXIT_FAIL
    if table.order < 2:
        raise OperationalError("simplicity needs at least two elements")
    out.text(f"simple={_fmt(is_simple(table))}")
    return EXIT_OK


def cmd_landau(cfg: RunConfig, out: _Out) -> int:
    from .order import landau_g

    res = landau_g(cfg.n)
    out.text(str(res))
    return EXIT_OK


def cmd_order(cfg: RunConfig, out: _Out) -> int:
    from .formats import load_matrix
    from .order import CapExceeded, order_profile_bruteforce

    path = cfg.options.get("file") or cfg.options.get("matrix_file")
    if not path:
        raise OperationalError("give a matrix file")
    m = load_matrix(path, _resolver(cfg))
    res = order_profile_bruteforce(m, cfg.cap)
    if isinstance(res, CapExceeded) or cfg.fmt == "kv":
        out.text(str(res))
    else:
        out.pairs([("period", res.period), ("preperiod", res.preperiod), ("order", res.order)])
    return EXIT_OK


def cmd_keyexchange(cfg: RunConfig, out: _Out) -> int:
    from .protocol import encode_transcript, random_instance, run_session

    if cfg.subcommand == "bench":
        from .bench import bench_protocol

        from .semiring import builtin

        chosen = cfg.options.get("builtin") or cfg.options.get("semiring") or cfg.options.get("semiring_file")
        R = _semiring(cfg) if chosen else builtin("s6")
        for n in cfg.sizes:
            for k in cfg.degrees:
                for rep in bench_protocol(R, n, k, cfg.seed, cfg.repeat):
                    out.text(rep.kv())
        return EXIT_OK

    if cfg.options.get("semiring") or cfg.options.get("semiring_file") or cfg.options.get("builtin"):
        R = _semiring(cfg)
        n = cfg.options.get("n") or 20
        inst = random_instance(R, n, stream(cfg.seed, "cli", "instance"), cfg.options.get("deg") or 49)
    else:
        inst = _instance(cfg)
    session = run_session(inst, cfg.seed)
    t = session.transcript
    if cfg.fmt == "kv":
        out.pairs([("semiring", inst.semiring.name), ("n", inst.n), ("degree_bound", inst.degree_bound),
                   ("seed", cfg.seed), ("digest", t.digest_a.hex()), ("agreement", session.agreement)])
    else:
        body = encode_transcript(t).rstrip("\n").split("\n")
        out.lines.extend(body[:-1])
        out.text(f"agreement={_fmt(session.agreement)}")
    return EXIT_OK if session.agreement else EXIT_FAIL


def cmd_attack(cfg: RunConfig, out: _Out) -> int:
    return {"brute": _attack_brute, "linear": _attack_linear,
            "cyclic": _attack_cyclic, "bsgs": _attack_bsgs}[cfg.subcommand](cfg, out)


def _attack_brute(cfg: RunConfig, out: _Out) -> int:
    from .actions import TwoSidedAction
    from .cryptanalysis import Exhausted, SapInstance, brute_force_sap, polynomial_pairs
    from .protocol import ProtocolInstance, keygen

    inst = _instance(cfg)
    hidden = ProtocolInstance(inst.m1, inst.m2, inst.s, cfg.deg)
    _, token = keygen(hidden, stream(cfg.seed, "cli", "brute"))
    action = TwoSidedAction(inst.m1, inst.m2, cfg.deg)
    res = brute_force_sap(SapInstance(action, inst.s, token.a), polynomial_pairs(inst.semiring, cfg.deg),
                          cfg.budget)
    if isinstance(res, Exhausted):
        out.pairs([("found", False), ("tried", res.tried), ("budget", res.budget)])
        return EXIT_FAIL
    p, q = res.g
    out.pairs([("found", True), ("tried", res.tried), ("p", "/".join(map(str, p.coeffs))),
               ("q", "/".join(map(str, q.coeffs))), ("verified", True)])
    return EXIT_OK


def _attack_linear(cfg: RunConfig, out: _Out) -> int:
    from .cryptanalysis import LinearAttackFailure, fm_action_break, fm_instance

    ok, rounds = 0, []
    for t in range(cfg.trials):
        rng = stream(cfg.seed, "cli", "linear", t)
        inst = fm_instance(cfg.p, cfg.n, rng)
        res = fm_action_break(cfg.p, cfg.n, inst.action.m, inst, rng)
        rounds.append(res.rounds)
        if isinstance(res, LinearAttackFailure):
            continue
        ok += tuple(int(c) for c in res.sigma) == inst.shared
    out.pairs([("p", cfg.p), ("n", cfg.n), ("trials", cfg.trials), ("recovered", ok),
               ("mean_rounds", sum(rounds) / max(len(rounds), 1))])
    return EXIT_OK if ok == cfg.trials else EXIT_FAIL


def _attack_cyclic(cfg: RunConfig, out: _Out) -> int:
    from .actions import TwoSidedAction, translation
    from .cryptanalysis import NotFound, cyclic_attack

    k = cfg.k
    if cfg.options.get("instance"):
        inst = _instance(cfg)
        action = TwoSidedAction(inst.m1, inst.m2, max(inst.degree_bound, k))
        g = action.monomial(1)
        x = inst.s
        y = action.act(action.power(g, k), x)
    else:
        action = translation(cfg.p, cfg.g)
        g, x = 1, 1
        y = action.act(k, x)
    res = cyclic_attack(g, x, y, action, cfg.cap)
    if isinstance(res, NotFound):
        out.pairs([("found", False), ("reason", res.reason.replace(" ", "_")),
                   ("applications", res.applications)])
        return EXIT_FAIL
    out.pairs([("found", True), ("k", res.k), ("preperiod", res.preperiod), ("period", res.period),
               ("applications", res.applications)])
    return EXIT_OK


def _attack_bsgs(cfg: RunConfig, out: _Out) -> int:
    from sympy import totient

    from .actions import modexp
    from .cryptanalysis import NotFound, randomized_bsgs

    action = modexp(cfg.p, cfg.g)
    # the acting group is the units modulo ord(g)
    size = int(totient(action.order))
    ok, worst = 0, 0.0
    for t in range(cfg.trials):
        rng = stream(cfg.seed, "cli", "bsgs", t)
        a = action.sample_invertible(rng)
        y = action.act(a, action.g)
        res = randomized_bsgs(action, action.g, y, size, rng)
        if isinstance(res, NotFound):
            continue
        ok += 1
        worst = max(worst, res.applications / math.sqrt(size))
    out.pairs([("p", cfg.p), ("g", cfg.g), ("group_size", size), ("trials", cfg.trials),
               ("verified", ok), ("max_applications_over_sqrt", worst)])
    return EXIT_OK if ok == cfg.trials else EXIT_FAIL


def cmd_orbit(cfg: RunConfig, out: _Out) -> int:
    from .cryptanalysis import orbit_estimate

    inst = _instance(cfg)
    est = orbit_estimate(inst, cfg.samples, cfg.options.get("deg"), cfg.seed, cfg.workers)
    out.text(est.kv())
    return EXIT_OK


COMMANDS = {
    "semiring": cmd_semiring,
    "landau": cmd_landau,
    "order": cmd_order,
    "keyexchange": cmd_keyexchange,
    "attack": cmd_attack,
    "orbit-estimate": cmd_orbit,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Dispatch ``cfg``; returns the exit status and the rendered output."""
    from .formats import FormatError

    out = _Out(cfg.fmt)
    try:
        status = COMMANDS[cfg.command](cfg, out)
    except (OperationalError, FormatError, ValueError, OSError) as exc:
        msg = str(exc).replace("\n", " ")
        if cfg.fmt == "kv":
            out.text(f"status=error error={msg!r}")
        else:
            out.text(f"error: {msg}")
        return EXIT_FAIL, out.render()
    return status, out.render()


# --- argument parsing -------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    return [_positive(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--format", dest="fmt", choices=("human", "kv"), default="human")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--builtin", metavar="NAME")
    source.add_argument("--semiring-file", metavar="FILE")

    parser = argparse.ArgumentParser(prog="semiring-dh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("semiring", parents=[common, source], help="check a semiring table")
    p.add_argument("subcommand", choices=("validate", "simple"))

    p = sub.add_parser("landau", parents=[common], help="Landau's function g(n)")
    p.add_argument("n", type=_positive)

    p = sub.add_parser("order", parents=[common, source], help="order profile of a matrix")
    p.add_argument("file", nargs="?")
    p.add_argument("--matrix-file")
    p.add_argument("--cap", type=_positive, default=10_000)

    p = sub.add_parser("keyexchange", parents=[common, source], help="run or benchmark the protocol")
    p.add_argument("subcommand", choices=("demo", "bench"))
    p.add_argument("--paper", action="store_true")
    p.add_argument("--instance", metavar="FILE")
    p.add_argument("--semiring", metavar="NAME")
    p.add_argument("--n", type=_positive)
    p.add_argument("--deg", type=_positive)
    p.add_argument("--sizes", type=_int_list, default=[10, 20, 40])
    p.add_argument("--degrees", type=_int_list, default=[10, 25, 49])
    p.add_argument("--repeat", type=_positive, default=3)

    p = sub.add_parser("attack", help="run an attack")
    asub = p.add_subparsers(dest="subcommand", required=True)
    a = asub.add_parser("brute", parents=[common, source])
    a.add_argument("--instance", default="paper", metavar="FILE")
    a.add_argument("--deg", type=_positive, default=1)
    a.add_argument("--budget", type=_nonneg, default=10_000)
    a = asub.add_parser("linear", parents=[common])
    a.add_argument("--p", type=_positive, default=7)
    a.add_argument("--n", type=_positive, default=4)
    a.add_argument("--trials", type=_positive, default=100)
    a = asub.add_parser("cyclic", parents=[common, source])
    a.add_argument("--p", type=_positive, default=101)
    a.add_argument("--g", type=_positive, default=2)
    a.add_argument("--k", type=_positive, default=53)
    a.add_argument("--instance", metavar="FILE")
    a.add_argument("--cap", type=_positive, default=100_000)
    a = asub.add_parser("bsgs", parents=[common])
    a.add_argument("--p", type=_positive, default=1019)
    a.add_argument("--g", type=_positive, default=2)
    a.add_argument("--trials", type=_positive, default=50)

    p = sub.add_parser("orbit-estimate", parents=[common, source], help="birthday estimate of the token orbit")
    p.add_argument("--instance", default="paper", metavar="FILE")
    p.add_argument("--samples", type=_positive, default=1 << 14)
    p.add_argument("--deg", type=_positive)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = dict(vars(ns))
    cfg = RunConfig(
        command=opts.pop("command"),
        subcommand=opts.pop("subcommand", None),
        seed=opts.pop("seed"),
        fmt=opts.pop("fmt"),
        workers=opts.pop("workers"),
    )
    cfg.options = opts
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "keyexchange" and ns.paper and (ns.semiring or ns.builtin or ns.semiring_file):
            parser.error("--paper cannot be combined with a semiring choice")
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    status, text = run(config_from_args(ns))
    if text.startswith("error:"):
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
