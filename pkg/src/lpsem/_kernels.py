"""Array kernels for the brute-force level-mapping oracle and graph closure.

Ground programs are packed into integer arrays (:class:`CompiledProgram`).
Interpretations are ``int8`` vectors with ``1`` true, ``-1`` false and ``0``
undefined; level mappings are ``int64`` vectors with ``-1`` outside the domain.

Two interchangeable backends exist: numba-compiled loops and vectorised numpy.
Set ``LPSEM_NO_NUMBA=1`` to force numpy (it is also used when numba cannot be
imported).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

from .syntax import Atom, GroundProgram

NUMBA_AVAILABLE = numba is not None
CLOSURE_NUMBA_MIN = 64
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("LPSEM_NO_NUMBA", "").strip() in ("", "0")

# condition codes shared by both backends
F, WF, WS, SFI, STABLE, DEF = range(6)
TOTAL_CONDITIONS = (STABLE, DEF)


@dataclass(frozen=True, eq=False)
class CompiledProgram:
    atoms: tuple[Atom, ...]
    index: dict
    head: np.ndarray
    pos_ptr: np.ndarray
    pos_idx: np.ndarray
    neg_ptr: np.ndarray
    neg_idx: np.ndarray
    hc_ptr: np.ndarray
    hc_idx: np.ndarray

    @property
    def n(self) -> int:
        return len(self.atoms)

    def pos(self, c: int) -> np.ndarray:
        return self.pos_idx[self.pos_ptr[c]:self.pos_ptr[c + 1]]

    def neg(self, c: int) -> np.ndarray:
        return self.neg_idx[self.neg_ptr[c]:self.neg_ptr[c + 1]]

    def clauses_of(self, a: int) -> np.ndarray:
        return self.hc_idx[self.hc_ptr[a]:self.hc_ptr[a + 1]]


def compile_program(g: GroundProgram) -> CompiledProgram:
    atoms = tuple(g.atoms)
    index = {a: k for k, a in enumerate(atoms)}
    head, pos_ptr, pos_idx, neg_ptr, neg_idx = [], [0], [], [0], []
    for c in g.clauses:
        head.append(index[c.head])
        pos_idx += [index[a] for a in c.positive_body]
        neg_idx += [index[a] for a in c.negative_body]
        pos_ptr.append(len(pos_idx))
        neg_ptr.append(len(neg_idx))
    head_arr = np.asarray(head, dtype=np.int64)
    order = np.argsort(head_arr, kind="stable")
    counts = np.bincount(head_arr, minlength=len(atoms)) if len(head) else np.zeros(len(atoms), np.int64)
    hc_ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    as_i = lambda xs: np.asarray(xs, dtype=np.int64)
    return CompiledProgram(
        atoms, index, head_arr, as_i(pos_ptr), as_i(pos_idx), as_i(neg_ptr), as_i(neg_idx),
        hc_ptr, order.astype(np.int64),
    )


def encode_interpretation(cp: CompiledProgram, true, false) -> np.ndarray:
    val = np.zeros(cp.n, dtype=np.int8)
    for a in true:
        val[cp.index[a]] = 1
    for a in false:
        val[cp.index[a]] = -1
    return val


def decode_value(k: int, n: int) -> np.ndarray:
    """The ``k``-th interpretation in base-3 order (digit 1 true, 2 false)."""
    val = np.zeros(n, dtype=np.int8)
    for a in range(n):
        d = k % 3
        k //= 3
        val[a] = 1 if d == 1 else (-1 if d == 2 else 0)
    return val


# ------------------------------------------------------------------ numba loops
# Written in the numba-compatible subset; compiled only when USE_NUMBA.

def _body_value(c, val, pos_ptr, pos_idx, neg_ptr, neg_idx):
    r = 1
    for k in range(pos_ptr[c], pos_ptr[c + 1]):
        v = val[pos_idx[k]]
        if v < r:
            r = v
    for k in range(neg_ptr[c], neg_ptr[c + 1]):
        v = -val[neg_idx[k]]
        if v < r:
            r = v
    return r


def _is_model(val, head, pos_ptr, pos_idx, neg_ptr, neg_idx):
    for c in range(head.shape[0]):
        b = _body_value(c, val, pos_ptr, pos_idx, neg_ptr, neg_idx)
        h = val[head[c]]
        if b == 1 and h != 1:
            return False
        if b == 0 and h == -1:
            return False
    return True


def _true_ok(cond, a, c, val, lev, pos_ptr, pos_idx, neg_ptr, neg_idx):
    la = lev[a]
    for k in range(pos_ptr[c], pos_ptr[c + 1]):
        b = pos_idx[k]
        if val[b] != 1:
            return False
        if cond == SFI:
            if la < lev[b]:
                return False
        elif la <= lev[b]:
            return False
    for k in range(neg_ptr[c], neg_ptr[c + 1]):
        b = neg_idx[k]
        if val[b] != -1:
            return False
        if cond == DEF:
            return False
        if cond != STABLE and la <= lev[b]:
            return False
    return True


def _false_ok(cond, a, c, val, lev, pos_ptr, pos_idx, neg_ptr, neg_idx):
    la = lev[a]
    has_false_pos = False
    all_below = True
    for k in range(pos_ptr[c], pos_ptr[c + 1]):
        b = pos_idx[k]
        if val[b] == -1:
            has_false_pos = True
            if cond == F or cond == WS:
                if la > lev[b]:
                    return True
            elif la >= lev[b]:
                return True
        if val[b] == 0 or la < lev[b]:
            all_below = False
    for k in range(neg_ptr[c], neg_ptr[c + 1]):
        b = neg_idx[k]
        if val[b] == 1 and la > lev[b]:
            return True
        if val[b] == 0 or la <= lev[b]:
            all_below = False
    if cond == WS and has_false_pos and all_below:
        return True
    return False


def _check(cond, val, lev, hc_ptr, hc_idx, pos_ptr, pos_idx, neg_ptr, neg_idx):
    total = cond == STABLE or cond == DEF
    for a in range(val.shape[0]):
        v = val[a]
        if v == 1:
            found = False
            for k in range(hc_ptr[a], hc_ptr[a + 1]):
                if _true_ok(cond, a, hc_idx[k], val, lev, pos_ptr, pos_idx, neg_ptr, neg_idx):
                    found = True
                    break
            if not found:
                return False
        elif v == -1 and not total:
            for k in range(hc_ptr[a], hc_ptr[a + 1]):
                if not _false_ok(cond, a, hc_idx[k], val, lev, pos_ptr, pos_idx, neg_ptr, neg_idx):
                    return False
    return True


def _find_levels(cond, val, dom, lev, hc_ptr, hc_idx, pos_ptr, pos_idx, neg_ptr, neg_idx):
    """Odometer over rank assignments ``dom -> {0..len(dom)-1}``; fills ``lev``."""
    k = dom.shape[0]
    for a in range(lev.shape[0]):
        lev[a] = -1
    digits = np.zeros(k, dtype=np.int64)
    while True:
        for j in range(k):
            lev[dom[j]] = digits[j]
        if _check(cond, val, lev, hc_ptr, hc_idx, pos_ptr, pos_idx, neg_ptr, neg_idx):
            return True
        j = 0
        while j < k:
            digits[j] += 1
            if digits[j] < k:
                break
            digits[j] = 0
            j += 1
        if j == k:
            return False


def _certified_mask(cond, n, head, hc_ptr, hc_idx, pos_ptr, pos_idx, neg_ptr, neg_idx):
    total = cond == STABLE or cond == DEF
    size = 3 ** n
    out = np.zeros(size, dtype=np.bool_)
    val = np.zeros(n, dtype=np.int8)
    lev = np.zeros(n, dtype=np.int64)
    for idx in range(size):
        m = idx
        cnt = 0
        for a in range(n):
            d = m % 3
            m //= 3
            if d == 1:
                val[a] = 1
                cnt += 1
            elif d == 2:
                val[a] = -1
                cnt += 1
            else:
                val[a] = 0
        if total and cnt < n:
            continue
        if not _is_model(val, head, pos_ptr, pos_idx, neg_ptr, neg_idx):
            continue
        dom = np.empty(cnt, dtype=np.int64)
        j = 0
        for a in range(n):
            if val[a] != 0:
                dom[j] = a
                j += 1
        if _find_levels(cond, val, dom, lev, hc_ptr, hc_idx, pos_ptr, pos_idx, neg_ptr, neg_idx):
            out[idx] = True
    return out


def _closure_loops(adj):
    r = adj.copy()
    n = r.shape[0]
    for k in range(n):
        for i in range(n):
            if r[i, k]:
                for j in range(n):
                    if r[k, j]:
                        r[i, j] = True
    return r


if USE_NUMBA:
    _njit = numba.njit(cache=True, nogil=True)
    _body_value = _njit(_body_value)
    _is_model = _njit(_is_model)
    _true_ok = _njit(_true_ok)
    _false_ok = _njit(_false_ok)
    _check = _njit(_check)
    _find_levels = _njit(_find_levels)
    _certified_mask = _njit(_certified_mask)
    _closure_loops = _njit(_closure_loops)


# ------------------------------------------------------------------ numpy path

@lru_cache(maxsize=16)
def rank_assignments(k: int) -> np.ndarray:
    """All maps ``{0..k-1} -> {0..k-1}`` as rows of a ``(k**k, k)`` array."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(k), repeat=k)), dtype=np.int64)


def is_model_np(cp: CompiledProgram, val: np.ndarray) -> bool:
    for c in range(len(cp.head)):
        lits = np.concatenate([val[cp.pos(c)], -val[cp.neg(c)]])
        b = lits.min() if lits.size else 1
        h = val[cp.head[c]]
        if (b == 1 and h != 1) or (b == 0 and h == -1):
            return False
    return True


def check_batch_np(cp: CompiledProgram, cond: int, val: np.ndarray, levs: np.ndarray) -> np.ndarray:
    """Evaluate a condition for every row of ``levs`` at once."""
    ok = np.ones(levs.shape[0], dtype=bool)
    total = cond in TOTAL_CONDITIONS
    for a in range(cp.n):
        v = val[a]
        if v == 0 or (v == -1 and total):
            continue
        la = levs[:, a][:, None]
        if v == 1:
            some = np.zeros_like(ok)
            for c in cp.clauses_of(a):
                pos, neg = cp.pos(c), cp.neg(c)
                if (val[pos] != 1).any() or (val[neg] != -1).any():
                    continue
                if cond == DEF and neg.size:
                    continue
                if cond == SFI:
                    s = (la >= levs[:, pos]).all(axis=1) & (la > levs[:, neg]).all(axis=1)
                elif cond == STABLE:
                    s = (la > levs[:, pos]).all(axis=1)
                else:
                    s = (la > levs[:, pos]).all(axis=1) & (la > levs[:, neg]).all(axis=1)
                some |= s
            ok &= some
        else:
            for c in cp.clauses_of(a):
                pos, neg = cp.pos(c), cp.neg(c)
                fpos = pos[val[pos] == -1]
                tneg = neg[val[neg] == 1]
                if cond in (F, WS):
                    s = (la > levs[:, fpos]).any(axis=1)
                else:
                    s = (la >= levs[:, fpos]).any(axis=1)
                s |= (la > levs[:, tneg]).any(axis=1)
                if cond == WS and fpos.size and (val[pos] != 0).all() and (val[neg] != 0).all():
                    s |= (la >= levs[:, pos]).all(axis=1) & (la > levs[:, neg]).all(axis=1)
                ok &= s
        if not ok.any():
            break
    return ok


def find_levels_np(cp: CompiledProgram, cond: int, val: np.ndarray, dom: np.ndarray):
    ranks = rank_assignments(len(dom))
    levs = np.full((ranks.shape[0], cp.n), -1, dtype=np.int64)
    levs[:, dom] = ranks
    hits = np.flatnonzero(check_batch_np(cp, cond, val, levs))
    return levs[hits[0]] if hits.size else None


def certified_mask_np(cp: CompiledProgram, cond: int) -> np.ndarray:
    n = cp.n
    out = np.zeros(3 ** n, dtype=bool)
    for idx in range(3 ** n):
        val = decode_value(idx, n)
        if cond in TOTAL_CONDITIONS and (val == 0).any():
            continue
        if not is_model_np(cp, val):
            continue
        if find_levels_np(cp, cond, val, np.flatnonzero(val)) is not None:
            out[idx] = True
    return out


def closure_np(adj: np.ndarray) -> np.ndarray:
    r = adj.astype(bool)
    while True:
        nxt = r | ((r.astype(np.int64) @ r.astype(np.int64)) > 0)
        if (nxt == r).all():
            return r
        r = nxt


# ------------------------------------------------------------------ dispatch

def _arrays(cp: CompiledProgram):
    return cp.hc_ptr, cp.hc_idx, cp.pos_ptr, cp.pos_idx, cp.neg_ptr, cp.neg_idx


def certified_mask(cp: CompiledProgram, cond: int, use_numba: bool | None = None) -> np.ndarray:
    """Boolean mask over all ``3**n`` interpretations: model and some rank
    assignment on its defined atoms satisfies ``cond``."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _certified_mask(cond, cp.n, cp.head, *_arrays(cp))
    return certified_mask_np(cp, cond)


def find_levels(cp: CompiledProgram, cond: int, val: np.ndarray, dom: np.ndarray,
                use_numba: bool | None = None):
    """A rank assignment on ``dom`` satisfying ``cond`` for ``val``, or ``None``."""
    if use_numba is None:
        use_numba = USE_NUMBA
    dom = np.asarray(dom, dtype=np.int64)
    if use_numba:
        lev = np.empty(cp.n, dtype=np.int64)
        found = _find_levels(cond, val.astype(np.int8), dom, lev, *_arrays(cp))
        return lev if found else None
    return find_levels_np(cp, cond, val.astype(np.int8), dom)


def check(cp: CompiledProgram, cond: int, val: np.ndarray, lev: np.ndarray,
          use_numba: bool | None = None) -> bool:
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return bool(_check(cond, val.astype(np.int8), lev.astype(np.int64), *_arrays(cp)))
    return bool(check_batch_np(cp, cond, val, lev[None, :].astype(np.int64))[0])


def is_model_arr(cp: CompiledProgram, val: np.ndarray, use_numba: bool | None = None) -> bool:
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return bool(_is_model(val.astype(np.int8), cp.head, cp.pos_ptr, cp.pos_idx, cp.neg_ptr, cp.neg_idx))
    return is_model_np(cp, val)


def transitive_closure(adj: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Non-reflexive transitive closure of a boolean adjacency matrix.

    By default small graphs stay on numpy: loading the compiled kernel costs
    more than the whole numpy computation there.
    """
    if use_numba is None:
        use_numba = USE_NUMBA and adj.shape[0] > CLOSURE_NUMBA_MIN
    adj = np.ascontiguousarray(adj, dtype=np.bool_)
    if adj.shape[0] == 0:
        return adj
    if use_numba:
        return _closure_loops(adj)
    return closure_np(adj)
