"""Command-line frontend.

Exit codes: 0 success, 1 certification failed or no stable model, 2 parse
error or rejected program, 3 grounding overflow or size cap exceeded,
4 invalid model/levels file, 70 internal error (including a violated
containment in ``compare`` or a counterexample found by ``fuzz``).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Any, Callable, TextIO

from .corpus import generate_random_program
from .errors import CapExceededError, DomainMismatchError, InternalError, NotStableError, NotTotalError
from .interp import InconsistentInterpretation, PartialInterpretation, interp_from_json, interp_to_json, knowledge_leq
from .invariants import run_checks
from .levelmaps import (
    DEFAULT_ORACLE_CAP, Condition, LevelMapping, canonical_levels, certify, greatest_certified_model,
)
from .operators import NotDefiniteError, least_model, lfp
from .stable import DEFAULT_STABLE_CAP, afp, enumerate_stable
from .strata import weakly_perfect
from .syntax import GroundingError, GroundProgram, ParseError, ground, parse_program, render, sorted_atoms

__all__ = ["main", "run", "CompareReport", "compare", "generate_random_program"]

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_CAP, EXIT_BAD_FILE, EXIT_INTERNAL = 0, 1, 2, 3, 4, 70

MODEL_SEMANTICS = ("least", "fitting", "wf", "ws")
LEVEL_SEMANTICS = ("least", "fitting", "wf", "ws", "afp", "stable")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class CompareReport:
    fitting: PartialInterpretation
    weakly_perfect: PartialInterpretation
    well_founded: PartialInterpretation

    @property
    def containments(self) -> tuple[bool, bool]:
        return (knowledge_leq(self.fitting, self.weakly_perfect),
                knowledge_leq(self.weakly_perfect, self.well_founded))

    def to_json(self, base=None) -> dict:
        f_wp, wp_wf = self.containments
        return {
            "fitting": interp_to_json(self.fitting, base),
            "weakly_perfect": interp_to_json(self.weakly_perfect, base),
            "well_founded": interp_to_json(self.well_founded, base),
            "containments": {"fitting_in_weakly_perfect": f_wp, "weakly_perfect_in_well_founded": wp_wf},
        }


def compare(g: GroundProgram) -> CompareReport:
    return CompareReport(lfp(g, "phi")[0], weakly_perfect(g).model, lfp(g, "wp")[0])


# ---------------------------------------------------------------- rendering

def _set(atoms) -> str:
    return "{" + ", ".join(str(a) for a in sorted_atoms(atoms)) + "}"


def _interp_lines(i: PartialInterpretation, base) -> list[str]:
    return [f"true: {_set(i.true_set)}", f"false: {_set(i.false_set)}", f"undefined: {_set(i.undefined(base))}"]


def _level_lines(l: LevelMapping) -> list[str]:
    return [f"{a}: {l[a]}" for a in sorted_atoms(l.domain)]


class _Out:
    def __init__(self, stream: TextIO, as_json: bool):
        self.stream = stream
        self.as_json = as_json

    def emit(self, data: Any, lines: list[str]):
        if self.as_json:
            self.stream.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
        else:
            self.stream.write("\n".join(lines) + ("\n" if lines else ""))


# ---------------------------------------------------------------- commands

def _load_program(args, stdin: TextIO):
    if args.file == "-":
        text = stdin.read()
    else:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as e:
            raise _Exit(EXIT_PARSE, f"cannot read {args.file}: {e.strerror}")
    return parse_program(text)


def _ground(args, stdin) -> GroundProgram:
    return ground(_load_program(args, stdin), depth_bound=args.depth)


def cmd_parse(args, stdin, out: _Out) -> int:
    p = _load_program(args, stdin)
    out.emit(
        {"clauses": [str(c) for c in p.clauses], "declared": [str(a) for a in sorted_atoms(p.declared_atoms)]},
        render(p).splitlines(),
    )
    return EXIT_OK


def cmd_ground(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    out.emit({"clauses": [str(c) for c in g.clauses], "base": [str(a) for a in g.atoms]},
             render(g).splitlines())
    return EXIT_OK


def cmd_model(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    sem = args.semantics
    data: dict[str, Any] = {"semantics": sem}
    lines: list[str] = []
    if sem == "least":
        m, trace = least_model(g)
        model = PartialInterpretation(m, g.base - m)
    elif sem in ("fitting", "wf"):
        model, trace = lfp(g, "phi" if sem == "fitting" else "wp")
    else:
        res = weakly_perfect(g)
        model, trace = res.model, None
        data["kind"] = res.kind
        if args.trace:
            data["rounds"] = [r.to_json(g.base) for r in res.rounds]
            for r in res.rounds:
                m_text = str(r.m) if r.m is not None else f"stop ({r.stop})"
                lines.append(f"round {r.index}: N={r.n} R={_set(r.eliminated)} S={_set(r.stratum)} M={m_text}")
    if trace is not None and args.trace:
        data["trace"] = trace.to_json(g.base)
        lines += [f"{trace.operator}^{k}: {i}" for k, i in enumerate(trace.iterates)]
    data["model"] = interp_to_json(model, g.base)
    out.emit(data, lines + _interp_lines(model, g.base))
    return EXIT_OK


def cmd_levels(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    sem = args.semantics
    if sem == "stable":
        results = []
        lines = []
        for m in enumerate_stable(g, args.cap or DEFAULT_STABLE_CAP):
            model, l = canonical_levels(g, "stable", m)
            results.append({"model": interp_to_json(model, g.base), "levels": l.to_json()["levels"]})
            lines += [f"model: {model}"] + ["  " + s for s in _level_lines(l)]
        if not results:
            lines = ["no stable model"]
        out.emit({"semantics": sem, "results": results}, lines)
        return EXIT_OK if results else EXIT_FAILED
    model, l = canonical_levels(g, sem)
    out.emit({"semantics": sem, "model": interp_to_json(model, g.base), "levels": l.to_json()["levels"]},
             [f"model: {model}"] + _level_lines(l))
    return EXIT_OK


def _read_json(path: str, what: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as e:
        raise _Exit(EXIT_BAD_FILE, f"invalid {what} file {path}: {e}")


def cmd_certify(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    if args.model is None or args.levels is None:
        raise _Exit(EXIT_PARSE, "certify needs --model and --levels")
    cond = _condition(args.condition)
    try:
        i = interp_from_json(_read_json(args.model, "model"))
        l = LevelMapping.from_json(_read_json(args.levels, "levels"))
    except (InconsistentInterpretation, ParseError, KeyError, TypeError, ValueError) as e:
        raise _Exit(EXIT_BAD_FILE, f"invalid model or levels file: {e}")
    stray = (i.defined | l.domain) - g.base
    if stray:
        raise _Exit(EXIT_BAD_FILE, f"atom {sorted_atoms(stray)[0]} is not in the Herbrand base")
    try:
        report = certify(g, i, l, cond)
    except (DomainMismatchError, NotTotalError) as e:
        raise _Exit(EXIT_BAD_FILE, str(e))
    lines = ["PASSED" if report.passed else "FAILED"]
    if not report.model:
        lines.append("not a model of the program")
    for v in report.violations:
        lines.append(f"{v.atom}: violates {v.condition}" + (f" at {v.clause}" if v.clause else ""))
    out.emit(report.to_json(), lines)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_stable(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    models = enumerate_stable(g, args.cap or DEFAULT_STABLE_CAP)
    out.emit({"stable_models": [[str(a) for a in sorted_atoms(m)] for m in models]},
             [_set(m) for m in models] or ["no stable model"])
    return EXIT_OK if models else EXIT_FAILED


def cmd_afp(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    res = afp(g)
    lines = []
    if args.trace:
        for k, (lk, gk) in enumerate(zip(res.l_sequence, res.g_sequence)):
            lines.append(f"L{k} = {_set(lk)}   G{k} = {_set(gk)}")
    lines += [f"L_P = {_set(res.l_fix)}", f"G_P = {_set(res.g_fix)}"]
    lines += _interp_lines(res.wf_model, g.base)
    data = res.to_json()
    if not args.trace:
        del data["L"], data["G"]
    out.emit(data, lines)
    return EXIT_OK


def cmd_compare(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    rep = compare(g)
    f_wp, wp_wf = rep.containments
    out.emit(rep.to_json(g.base), [
        f"M_F  = {rep.fitting}",
        f"M_WP = {rep.weakly_perfect}",
        f"M_WF = {rep.well_founded}",
        f"M_F <= M_WP: {'yes' if f_wp else 'NO'}",
        f"M_WP <= M_WF: {'yes' if wp_wf else 'NO'}",
    ])
    if not (f_wp and wp_wf):
        raise InternalError("containment M_F <= M_WP <= M_WF violated")
    return EXIT_OK


def cmd_oracle(args, stdin, out: _Out) -> int:
    g = _ground(args, stdin)
    cond = _condition(args.condition)
    if cond is Condition.LOCSTRAT:
        raise _Exit(EXIT_PARSE, "the oracle searches models; use a model condition")
    if cond in (Condition.STABLE, Condition.DEF):
        raise _Exit(EXIT_PARSE, "the oracle ranks partial models; use f, wf, ws or sfi")
    res = greatest_certified_model(g, cond, args.cap or DEFAULT_ORACLE_CAP)
    greatest = interp_to_json(res.greatest, g.base) if res.greatest is not None else None
    lines = [f"certified models: {len(res.certified)}"]
    lines += [f"maximal: {m}" for m in res.maximal_models]
    lines.append(f"greatest: {res.greatest if res.greatest is not None else 'none'}")
    out.emit({
        "condition": cond.name,
        "certified": len(res.certified),
        "maximal": [interp_to_json(m, g.base) for m in res.maximal_models],
        "greatest": greatest,
    }, lines)
    return EXIT_OK


def fuzz_program(seed: int, index: int):
    """The ``index``-th program of a fuzz run; small enough for the brute-force checks."""
    rng = random.Random(seed * 1_000_003 + index)
    return generate_random_program(
        num_atoms=rng.randint(1, 4), num_clauses=rng.randint(0, 6), max_body=rng.randint(0, 3),
        neg_prob=rng.choice((0.0, 0.3, 0.5, 0.7)), seed=rng.randrange(2**31),
    )


def cmd_fuzz(args, stdin, out: _Out) -> int:
    n = args.n if args.n is not None else 100
    seed = args.seed if args.seed is not None else 0
    for k in range(n):
        p = fuzz_program(seed, k)
        failures = run_checks(ground(p))
        if failures:
            text = render(p)
            out.emit(
                {"counterexample": {"index": k, "program": text,
                                    "failures": [{"check": c, "message": m} for c, m in failures]}},
                [f"counterexample at index {k}:", text.rstrip("\n")]
                + [f"  {c}: {m}" for c, m in failures],
            )
            return EXIT_INTERNAL
    out.emit({"programs": n, "seed": seed, "counterexample": None},
             [f"{n} programs checked, no counterexample"])
    return EXIT_OK


def _condition(s: str | None) -> Condition:
    if s is None:
        raise _Exit(EXIT_PARSE, "--condition is required")
    try:
        return Condition.parse(s)
    except ValueError:
        names = ", ".join(c.value for c in Condition)
        raise _Exit(EXIT_PARSE, f"unknown condition {s!r}; expected one of {names}")


COMMANDS: dict[str, Callable[..., int]] = {
    "parse": cmd_parse, "ground": cmd_ground, "model": cmd_model, "levels": cmd_levels,
    "certify": cmd_certify, "stable": cmd_stable, "afp": cmd_afp, "compare": cmd_compare,
    "oracle": cmd_oracle, "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=None, help="term depth bound for grounding")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--trace", action="store_true", help="include fixpoint iterates")
    common.add_argument("--cap", type=int, default=None, help="atom cap for brute-force searches")

    with_file = argparse.ArgumentParser(add_help=False, parents=[common])
    with_file.add_argument("file", nargs="?", default="-", help="program file (default: stdin)")

    parser = argparse.ArgumentParser(prog="lpsem", description="Semantics of normal logic programs.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("parse", parents=[with_file], help="parse and pretty-print")
    sub.add_parser("ground", parents=[with_file], help="ground a program")
    p = sub.add_parser("model", parents=[with_file], help="compute a model")
    p.add_argument("--semantics", choices=MODEL_SEMANTICS, default="wf")
    p = sub.add_parser("levels", parents=[with_file], help="canonical level mapping of a semantics")
    p.add_argument("--semantics", choices=LEVEL_SEMANTICS, default="wf")
    p = sub.add_parser("certify", parents=[with_file], help="check a model and level mapping")
    p.add_argument("--model", help="model JSON file")
    p.add_argument("--levels", help="level mapping JSON file")
    p.add_argument("--condition")
    sub.add_parser("stable", parents=[with_file], help="enumerate stable models")
    sub.add_parser("afp", parents=[with_file], help="alternating fixed point")
    sub.add_parser("compare", parents=[with_file], help="Fitting, weakly perfect and well-founded models")
    p = sub.add_parser("oracle", parents=[with_file], help="greatest certified model by brute force")
    p.add_argument("--condition")
    p = sub.add_parser("fuzz", parents=[common], help="run the invariant suite on random programs")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    return parser


def run(argv: list[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = _Out(stdout, args.json)
    try:
        return COMMANDS[args.command](args, stdin, out)
    except _Exit as e:
        stderr.write(f"lpsem: {e}\n")
        return e.code
    except ParseError as e:
        stderr.write(f"lpsem: parse error: {e}\n")
        return EXIT_PARSE
    except NotDefiniteError as e:
        stderr.write(f"lpsem: {e}\n")
        return EXIT_PARSE
    except (GroundingError, CapExceededError) as e:
        stderr.write(f"lpsem: {e}\n")
        return EXIT_CAP
    except (InternalError, NotStableError) as e:
        stderr.write(f"lpsem: internal error: {e}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
