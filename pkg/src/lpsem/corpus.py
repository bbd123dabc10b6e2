"""Program generators for property sweeps: seeded random and exhaustive."""

from __future__ import annotations

import itertools
import json
import random
from importlib import resources
from typing import Any, Iterator

from .syntax import Atom, Clause, Literal, Program

__all__ = [
    "atom_names", "generate_random_program", "all_clauses", "exhaustive_programs",
    "fixture_names", "load_fixture",
]


def atom_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + k) for k in range(n)]
    return [f"a{k}" for k in range(n)]


def generate_random_program(num_atoms: int, num_clauses: int, max_body: int,
                            neg_prob: float, seed: int) -> Program:
    """Propositional program over ``num_atoms`` declared atoms.

    Heads are uniform over the atoms, body lengths uniform in ``0..max_body``
    and body literals distinct. Same arguments, same program.
    """
    if num_atoms < 1:
        raise ValueError("num_atoms must be at least 1")
    rng = random.Random(seed)
    atoms = [Atom(s) for s in atom_names(num_atoms)]
    clauses = []
    for _ in range(num_clauses):
        head = rng.choice(atoms)
        # with neg_prob 0 or 1 only one polarity is ever drawn
        distinct = num_atoms if neg_prob in (0, 1) else 2 * num_atoms
        length = min(rng.randint(0, max_body), distinct)
        body: list[Literal] = []
        while len(body) < length:
            lit = Literal(rng.choice(atoms), rng.random() >= neg_prob)
            if lit not in body:
                body.append(lit)
        clauses.append(Clause(head, tuple(body)))
    return Program(tuple(clauses), frozenset(atoms))


def all_clauses(num_atoms: int, max_body: int) -> list[Clause]:
    """Every clause over the atoms with a duplicate-free body of length ≤ ``max_body``."""
    atoms = [Atom(s) for s in atom_names(num_atoms)]
    lits = [Literal(a, pos) for a in atoms for pos in (True, False)]
    out = []
    for h in atoms:
        for k in range(max_body + 1):
            for body in itertools.combinations(lits, k):
                out.append(Clause(h, body))
    return out


def exhaustive_programs(num_atoms: int, max_clauses: int, max_body: int) -> Iterator[Program]:
    """All sets of at most ``max_clauses`` distinct clauses, each over all atoms."""
    clauses = all_clauses(num_atoms, max_body)
    atoms = frozenset(Atom(s) for s in atom_names(num_atoms))
    for k in range(max_clauses + 1):
        for combo in itertools.combinations(clauses, k):
            yield Program(combo, atoms)


def _fixture_dir():
    return resources.files("lpsem") / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.name[:-3] for p in _fixture_dir().iterdir() if p.name.endswith(".lp"))


def load_fixture(name: str) -> tuple[str, dict[str, Any]]:
    """Program text and expected outputs of a bundled example program."""
    d = _fixture_dir()
    text = (d / f"{name}.lp").read_text()
    expected = json.loads((d / f"{name}.expected.json").read_text())
    return text, expected
