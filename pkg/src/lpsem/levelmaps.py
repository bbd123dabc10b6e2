"""Level mappings: certification, canonical extraction and a brute-force oracle.

Levels are pairs ``(major, minor)`` ordered lexicographically, where
``minor`` may be :data:`OMEGA`. A plain natural ``n`` stands for ``(n, 0)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Union

import numpy as np

from . import _kernels
from .errors import CapExceededError, DomainMismatchError, NotStableError, NotTotalError
from .interp import PartialInterpretation, is_model, knowledge_leq, totalize
from .operators import NotDefiniteError, least_model, lfp
from .stable import afp, gl, gl_reduct
from .strata import weakly_perfect
from .syntax import Atom, Clause, GroundProgram, parse_atom, sorted_atoms

__all__ = [
    "OMEGA", "Level", "LevelMapping", "Condition", "Violation", "CertReport", "certify",
    "canonical_levels", "greatest_certified_model", "certified_models", "find_certifying_levels",
    "OracleResult", "DEFAULT_ORACLE_CAP",
]

OMEGA = math.inf
DEFAULT_ORACLE_CAP = 5


@dataclass(frozen=True, order=True)
class Level:
    major: int
    minor: Union[int, float] = 0

    def __post_init__(self):
        if self.major < 0 or self.minor < 0:
            raise ValueError("levels are non-negative")
        if self.minor != OMEGA and not float(self.minor).is_integer():
            raise ValueError("minor level must be a natural or OMEGA")

    def __str__(self) -> str:
        if self.minor == 0:
            return str(self.major)
        minor = "ω" if self.minor == OMEGA else str(self.minor)
        return f"({self.major},{minor})"

    def to_json(self) -> dict:
        return {"major": self.major, "minor": "omega" if self.minor == OMEGA else int(self.minor)}

    @classmethod
    def from_json(cls, data: Any) -> "Level":
        if isinstance(data, int) and not isinstance(data, bool):
            return cls(data)
        if not isinstance(data, Mapping) or "major" not in data:
            raise ValueError(f"not a level: {data!r}")
        major, minor = data["major"], data.get("minor", 0)
        if minor == "omega":
            minor = OMEGA
        for x in (major, minor):
            if x is not OMEGA and (not isinstance(x, int) or isinstance(x, bool)):
                raise ValueError(f"not a level: {data!r}")
        return cls(major, minor)


def _as_level(x) -> Level:
    if isinstance(x, Level):
        return x
    if isinstance(x, int):
        return Level(x)
    major, minor = x
    return Level(major, minor)


@dataclass(frozen=True)
class LevelMapping:
    levels: Mapping[Atom, Level] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "levels", {a: _as_level(v) for a, v in self.levels.items()})

    @classmethod
    def of(cls, mapping: Mapping[Atom | str, Any]) -> "LevelMapping":
        return cls({(parse_atom(k) if isinstance(k, str) else k): v for k, v in mapping.items()})

    @property
    def domain(self) -> frozenset[Atom]:
        return frozenset(self.levels)

    def __getitem__(self, a: Atom) -> Level:
        return self.levels[a]

    def __eq__(self, other):
        return isinstance(other, LevelMapping) and dict(self.levels) == dict(other.levels)

    def __hash__(self):
        return hash(frozenset(self.levels.items()))

    def to_json(self) -> dict:
        return {"levels": {str(a): self.levels[a].to_json() for a in sorted_atoms(self.levels)}}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "LevelMapping":
        if not isinstance(data, Mapping) or not isinstance(data.get("levels"), Mapping):
            raise ValueError("expected an object with a 'levels' object")
        return cls({parse_atom(k): Level.from_json(v) for k, v in data["levels"].items()})


class Condition(enum.Enum):
    DEF = "def"
    STABLE = "stable"
    F = "f"
    WF = "wf"
    WS = "ws"
    SFI = "sfi"
    LOCSTRAT = "locstrat"

    @classmethod
    def parse(cls, s: "str | Condition") -> "Condition":
        return s if isinstance(s, Condition) else cls(s.lower())

    @property
    def partial(self) -> bool:
        return self in (Condition.F, Condition.WF, Condition.WS, Condition.SFI)


_KERNEL_CODE = {
    Condition.F: _kernels.F, Condition.WF: _kernels.WF, Condition.WS: _kernels.WS,
    Condition.SFI: _kernels.SFI, Condition.STABLE: _kernels.STABLE, Condition.DEF: _kernels.DEF,
}


@dataclass(frozen=True)
class Violation:
    atom: Atom
    condition: str
    clause: Clause | None = None

    def to_json(self) -> dict:
        return {"atom": str(self.atom), "condition": self.condition,
                "clause": str(self.clause) if self.clause is not None else None}


@dataclass(frozen=True)
class CertReport:
    condition: Condition
    model: bool
    per_atom: Mapping[Atom, Violation | None]

    @property
    def violations(self) -> list[Violation]:
        return [v for a in sorted_atoms(self.per_atom) if (v := self.per_atom[a]) is not None]

    @property
    def passed(self) -> bool:
        model_ok = self.model or self.condition is Condition.LOCSTRAT
        return model_ok and not self.violations

    def to_json(self) -> dict:
        return {
            "condition": self.condition.name,
            "passed": self.passed,
            "model": self.model,
            "violations": [v.to_json() for v in self.violations],
        }


# ---------------------------------------------------------------- certification

class _Eval:
    """Literal tests against an interpretation and a level mapping."""

    def __init__(self, i: PartialInterpretation, l: LevelMapping):
        self.i = i
        self.l = l.levels

    def true(self, a):
        return a in self.i.true_set

    def false(self, a):
        return a in self.i.false_set

    def lt(self, a, b):
        """l(b) < l(a); false when either is outside the domain."""
        return a in self.l and b in self.l and self.l[b] < self.l[a]

    def le(self, a, b):
        return a in self.l and b in self.l and self.l[b] <= self.l[a]


def _support(cond: Condition, e: _Eval, a: Atom, c: Clause) -> bool:
    """Does clause ``c`` witness the true atom ``a``?"""
    pos, neg = c.positive_body, c.negative_body
    if not all(e.true(b) for b in pos) or not all(e.false(b) for b in neg):
        return False
    if cond is Condition.DEF:
        return not neg and all(e.lt(a, b) for b in pos)
    if cond is Condition.STABLE:
        return all(e.lt(a, b) for b in pos)
    if cond is Condition.SFI:
        return all(e.le(a, b) for b in pos) and all(e.lt(a, b) for b in neg)
    return all(e.lt(a, b) for b in pos + neg)


def _refutation(cond: Condition, e: _Eval, a: Atom, c: Clause) -> tuple[bool, str]:
    """Does clause ``c`` respect the false atom ``a``? Also names the sub-condition."""
    pos, neg = c.positive_body, c.negative_body
    fpos = [b for b in pos if e.false(b)]
    tneg = [b for b in neg if e.true(b)]
    if cond is Condition.F:
        if any(e.lt(a, b) for b in fpos + tneg):
            return True, "Fii"
        return False, "Fii"
    if cond in (Condition.WF, Condition.SFI):
        if any(e.le(a, b) for b in fpos):
            return True, "WFiia"
        if any(e.lt(a, b) for b in tneg):
            return True, "WFiib"
        return False, "WFiib" if tneg and not fpos else "WFiia"
    # WS
    if any(e.lt(a, b) for b in fpos):
        return True, "WSiia"
    if fpos and all(e.le(a, b) for b in pos) and all(e.lt(a, b) for b in neg):
        return True, "WSiib"
    if any(e.lt(a, b) for b in tneg):
        return True, "WSiic"
    if tneg and not fpos:
        return False, "WSiic"
    return False, "WSiib" if fpos else "WSiia"


_TRUE_LABEL = {
    Condition.F: "Fi", Condition.WF: "WFi", Condition.WS: "WSi", Condition.SFI: "SFi",
    Condition.DEF: "DEF", Condition.STABLE: "STABLE",
}


def certify(g: GroundProgram, i: PartialInterpretation, l: LevelMapping | Mapping,
            c: Condition | str) -> CertReport:
    """Check a (model, level mapping) pair against one of the level-mapping conditions.

    Partial conditions (F, WF, WS, SFI) need ``dom(l)`` to equal the atoms
    defined in ``i``. DEF and STABLE need a total ``i`` and levels on the
    whole base; LOCSTRAT only looks at ``l`` and the clauses.
    """
    cond = Condition.parse(c)
    if not isinstance(l, LevelMapping):
        l = LevelMapping.of(l)
    base = g.base
    if cond.partial:
        if l.domain != i.defined:
            raise DomainMismatchError(
                "level mapping domain must equal the defined atoms of the interpretation")
    else:
        missing = base - l.domain
        if missing:
            raise DomainMismatchError(f"level mapping must be total; missing {sorted_atoms(missing)[0]}")
        if cond is not Condition.LOCSTRAT and not i.is_total(base):
            raise NotTotalError(f"{cond.name} needs a total interpretation")
        if cond is Condition.DEF and not g.is_definite:
            raise NotDefiniteError("DEF applies to definite programs only")

    e = _Eval(i, l)
    per_atom: dict[Atom, Violation | None] = {}
    if cond is Condition.LOCSTRAT:
        for a in sorted_atoms(base):
            per_atom[a] = None
            for cl in g.by_head[a]:
                if not (all(e.le(a, b) for b in cl.positive_body) and all(e.lt(a, b) for b in cl.negative_body)):
                    per_atom[a] = Violation(a, "LOCSTRAT", cl)
                    break
        return CertReport(cond, is_model(g, i), per_atom)

    for a in sorted_atoms(i.defined):
        clauses = g.by_head.get(a, ())
        if a in i.true_set:
            ok = any(_support(cond, e, a, cl) for cl in clauses)
            per_atom[a] = None if ok else Violation(a, _TRUE_LABEL[cond])
        elif cond in (Condition.DEF, Condition.STABLE):
            per_atom[a] = None
        else:
            per_atom[a] = None
            for cl in clauses:
                ok, label = _refutation(cond, e, a, cl)
                if not ok:
                    per_atom[a] = Violation(a, label, cl)
                    break
    return CertReport(cond, is_model(g, i), per_atom)


# ---------------------------------------------------------------- canonical levels

def _stage_levels(iterates, atoms) -> dict[Atom, int]:
    """Least ``α`` with the atom defined in ``iterates[α+1]``."""
    out = {}
    for a in atoms:
        for alpha in range(len(iterates) - 1):
            if a in iterates[alpha + 1].defined:
                out[a] = alpha
                break
    return out


def _tp_stages(prog: GroundProgram, atoms) -> dict[Atom, int]:
    """Least ``n`` with the atom in ``T⁺↑(n+1)`` for a definite program."""
    _, trace = least_model(prog)
    return _stage_levels(trace.iterates, atoms)


def canonical_levels(g: GroundProgram, semantics: str, m: Iterable[Atom] | None = None
                     ) -> tuple[PartialInterpretation, LevelMapping]:
    """The model of a semantics together with the level mapping built from its stages.

    ``semantics`` is one of ``least``, ``fitting``, ``wf``, ``ws``, ``afp`` or
    ``stable`` (the latter with the stable model ``m``).
    """
    if semantics == "least":
        model, trace = least_model(g)
        levels = _stage_levels(trace.iterates, model)
        levels.update({a: 0 for a in g.base - model})
        return totalize(model, g.base), LevelMapping(levels)
    if semantics in ("fitting", "wf"):
        model, trace = lfp(g, "phi" if semantics == "fitting" else "wp")
        return model, LevelMapping(_stage_levels(trace.iterates, model.defined))
    if semantics == "stable":
        if m is None:
            raise ValueError("stable levels need a candidate model")
        m = frozenset(m)
        if gl(g, m) != m:
            raise NotStableError(f"{sorted_atoms(m)} is not a stable model")
        levels = _tp_stages(gl_reduct(g, m), m)
        levels.update({a: 0 for a in g.base - m})
        return totalize(m, g.base), LevelMapping(levels)
    if semantics == "afp":
        res = afp(g)
        levels: dict[Atom, Level] = {}
        ls, gs = res.l_sequence, res.g_sequence
        for a in res.l_fix:
            alpha = next(k for k in range(len(ls) - 1) if a in ls[k + 1])
            n = _tp_stages(gl_reduct(g, gs[alpha]), [a])[a]
            levels[a] = Level(alpha, n)
        for b in g.base - res.g_fix:
            beta = next(k for k in range(len(gs) - 1) if b not in gs[k + 1])
            levels[b] = Level(beta, OMEGA)
        return res.wf_model, LevelMapping(levels)
    if semantics == "ws":
        res = weakly_perfect(g)
        levels = {}
        for r in res.rounds:
            if r.m is not None:
                stages = _tp_stages(r.layer, r.stratum)
                for a in r.stratum:
                    levels[a] = Level(r.index, stages.get(a, OMEGA))
            for a in r.eliminated:
                levels.setdefault(a, Level(r.index, OMEGA))
        return res.model, LevelMapping({a: levels[a] for a in res.model.defined})
    raise ValueError(f"unknown semantics {semantics!r}")


# ---------------------------------------------------------------- brute-force oracle

@dataclass(frozen=True)
class OracleResult:
    certified: tuple[PartialInterpretation, ...]
    maximal_models: tuple[PartialInterpretation, ...]
    greatest: PartialInterpretation | None


def _decode(cp, idx: int) -> PartialInterpretation:
    val = _kernels.decode_value(idx, cp.n)
    return PartialInterpretation(
        frozenset(a for a, v in zip(cp.atoms, val) if v == 1),
        frozenset(a for a, v in zip(cp.atoms, val) if v == -1),
    )


def certified_models(g: GroundProgram, c: Condition | str, cap: int = DEFAULT_ORACLE_CAP,
                     use_numba: bool | None = None) -> list[PartialInterpretation]:
    """Every model ``I`` with some level mapping on ``dom(I)`` satisfying ``c``.

    Level mappings are searched over ranks ``0..|dom|-1``; the conditions only
    compare levels, so any witness can be replaced by its rank image.
    """
    cond = Condition.parse(c)
    if cond is Condition.LOCSTRAT:
        raise ValueError("LOCSTRAT is a property of the program, not of models")
    if len(g.base) > cap:
        raise CapExceededError("program", len(g.base), cap)
    cp = _kernels.compile_program(g)
    mask = _kernels.certified_mask(cp, _KERNEL_CODE[cond], use_numba)
    return [_decode(cp, int(k)) for k in np.flatnonzero(mask)]


def greatest_certified_model(g: GroundProgram, c: Condition | str, cap: int = DEFAULT_ORACLE_CAP,
                             use_numba: bool | None = None) -> OracleResult:
    certified = certified_models(g, c, cap, use_numba)
    maximal = [
        i for i in certified
        if not any(j != i and knowledge_leq(i, j) for j in certified)
    ]
    maximal.sort(key=lambda i: (str(i)))
    greatest = maximal[0] if len(maximal) == 1 else None
    return OracleResult(tuple(certified), tuple(maximal), greatest)


def find_certifying_levels(g: GroundProgram, i: PartialInterpretation, c: Condition | str,
                           use_numba: bool | None = None) -> LevelMapping | None:
    """Search rank assignments for one that certifies ``i``; modelhood is not checked."""
    cond = Condition.parse(c)
    cp = _kernels.compile_program(g)
    val = _kernels.encode_interpretation(cp, i.true_set, i.false_set)
    dom = np.arange(cp.n) if not cond.partial else np.flatnonzero(val)
    if not cond.partial and (val == 0).any():
        raise NotTotalError(f"{cond.name} needs a total interpretation")
    lev = _kernels.find_levels(cp, _KERNEL_CODE[cond], val, dom, use_numba)
    if lev is None:
        return None
    return LevelMapping({cp.atoms[k]: int(lev[k]) for k in dom})
