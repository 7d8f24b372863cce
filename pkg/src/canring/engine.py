"""Buchberger engine on packed monomials.

An exponent vector is packed into one int, 16 bits per variable, with the top
bit of each field left clear as a guard; divisibility is then a subtraction
and a mask.  Module terms carry their component index above the exponent
bits.  Every term also carries an integer key that is linear in the
exponents and whose integer order is the monomial order, so shifting a
polynomial by a monomial adds one constant to all of its keys.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

FIELD = 16
MAX_EXP = (1 << (FIELD - 1)) - 1
SCALE = 1 << 32


class GBTimeout(RuntimeError):
    pass


class Frame:
    """Packing, order and grading data for a free module R^rank.

    ``rows`` is a matrix order on the variables; its first row must be the
    grading when twists are used.  Components are ordered after monomials
    (term over position), lower index first.
    """

    def __init__(self, weights: Sequence[int], rows: Sequence[Sequence[int]],
                 twists: Sequence[int] = (0,), modulus: int = 0):
        n = len(weights)
        self.n = n
        self.weights = list(weights)
        self.rows = [list(r) for r in rows]
        self.twists = list(twists)
        self.rank = len(self.twists)
        self.p = modulus
        self.nbits = FIELD * n
        self.guard = sum(1 << (FIELD * i + FIELD - 1) for i in range(n))
        self.chk = self.guard | (-1 << self.nbits)
        self.expmask = (1 << self.nbits) - 1
        nr = len(self.rows)
        self.kvec = [sum(self.rows[r][i] * SCALE ** (nr - 1 - r) for r in range(nr))
                     for i in range(n)]
        self.degscale = SCALE ** (nr - 1)
        self.C = 1 << self.rank.bit_length()
        self.off = [t * self.degscale * self.C + (self.rank - 1 - j)
                    for j, t in enumerate(self.twists)]

    def with_twists(self, twists: Sequence[int]) -> "Frame":
        return Frame(self.weights, self.rows, twists, self.p)

    def pack(self, exps: Sequence[int], comp: int = 0) -> int:
        t = comp
        for e in reversed(exps):
            if e > MAX_EXP or e < 0:
                raise OverflowError(f"exponent {e} out of range")
            t = (t << FIELD) | e
        return t

    def unpack(self, term: int) -> tuple[tuple, int]:
        mask = (1 << FIELD) - 1
        exps = []
        t = term
        for _ in range(self.n):
            exps.append(t & mask)
            t >>= FIELD
        return tuple(exps), t

    def rawkey(self, exps: Sequence[int]) -> int:
        return sum(e * k for e, k in zip(exps, self.kvec) if e)

    def key(self, exps: Sequence[int], comp: int = 0) -> int:
        return self.rawkey(exps) * self.C + self.off[comp]

    def degree(self, exps: Sequence[int], comp: int = 0) -> int:
        return sum(w * e for w, e in zip(self.weights, exps)) + self.twists[comp]

    def divides(self, a: int, b: int) -> bool:
        return ((b | self.guard) - a) & self.chk == self.guard

    def norm(self, c):
        return c % self.p if self.p else c

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def elt(self, items, sugar: int | None = None) -> "Elt":
        """Build an element from (exps, comp, coeff) triples; zeros dropped."""
        acc: dict = {}
        terms: dict = {}
        for exps, comp, c in items:
            k = self.key(exps, comp)
            acc[k] = acc.get(k, 0) + c
            terms[k] = (exps, comp)
        keys = sorted((k for k, c in acc.items() if self.norm(c)), reverse=True)
        e = Elt([k for k in keys], [self.pack(*terms[k]) for k in keys],
                [self.norm(acc[k]) for k in keys])
        if keys:
            e.lexp, e.comp = terms[keys[0]]
            degs = [self.degree(*terms[k]) for k in keys]
            e.sugar = max(degs) if sugar is None else sugar
            e.homog = min(degs) == max(degs)
        return e

    def items(self, e: "Elt"):
        for t, c in zip(e.terms, e.coeffs):
            exps, comp = self.unpack(t)
            yield exps, comp, c


class Elt:
    __slots__ = ("keys", "terms", "coeffs", "lexp", "comp", "sugar", "homog", "rep")

    def __init__(self, keys, terms, coeffs):
        self.keys = keys
        self.terms = terms
        self.coeffs = coeffs
        self.lexp = None
        self.comp = 0
        self.sugar = 0
        self.homog = True
        self.rep = None

    def __len__(self):
        return len(self.keys)

    def __bool__(self):
        return bool(self.keys)


def _finish(frame: Frame, coef: dict, tmap: dict) -> Elt:
    keys = sorted((k for k, c in coef.items() if c), reverse=True)
    return Elt(keys, [tmap[k] for k in keys], [coef[k] for k in keys])


def _set_lead(frame: Frame, e: Elt, sugar: int) -> None:
    if e.keys:
        e.lexp, e.comp = frame.unpack(e.terms[0])
        e.sugar = sugar


def make_monic(frame: Frame, e: Elt) -> Elt:
    if not e.keys or e.coeffs[0] == 1:
        return e
    inv = frame.inv(e.coeffs[0])
    p = frame.p
    e.coeffs = [c * inv % p for c in e.coeffs] if p else [c * inv for c in e.coeffs]
    if e.rep is not None:
        e.rep.coeffs = ([c * inv % p for c in e.rep.coeffs] if p
                        else [c * inv for c in e.rep.coeffs])
    return e


class _Reducer:
    __slots__ = ("lt", "lk", "keys", "terms", "coeffs", "idx")

    def __init__(self, e: Elt, idx: int):
        self.lt = e.terms[0]
        self.lk = e.keys[0]
        self.keys = e.keys[1:]
        self.terms = e.terms[1:]
        self.coeffs = e.coeffs[1:]
        self.idx = idx


def reduce_full(frame: Frame, start: Elt, reducers: Sequence[_Reducer],
                basis: Sequence[Elt] | None = None, rep_frame: Frame | None = None,
                top_only: bool = False) -> Elt:
    """Normal form of ``start`` with respect to monic ``reducers``.

    With ``rep_frame`` the element's ``rep`` is updated alongside, using the
    reps stored on ``basis``.
    """
    p = frame.p
    guard = frame.guard
    chk = frame.chk
    coef = dict(zip(start.keys, start.coeffs))
    tmap = dict(zip(start.keys, start.terms))
    heap = [-k for k in start.keys]
    heapq.heapify(heap)
    out_k, out_t, out_c = [], [], []
    track = rep_frame is not None and start.rep is not None
    if track:
        rcoef = dict(zip(start.rep.keys, start.rep.coeffs))
        rtmap = dict(zip(start.rep.keys, start.rep.terms))
        ratio = rep_frame.C
        cmain = frame.C
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = coef.pop(k)
        t = tmap.pop(k)
        if not c:
            continue
        tg = t | guard
        for r in reducers:
            if (tg - r.lt) & chk == guard:
                break
        else:
            out_k.append(k)
            out_t.append(t)
            out_c.append(c)
            if top_only:
                # leave the rest unreduced
                while heap:
                    k2 = -pop(heap)
                    c2 = coef.pop(k2)
                    t2 = tmap.pop(k2)
                    if c2:
                        out_k.append(k2)
                        out_t.append(t2)
                        out_c.append(c2)
                break
            continue
        dk = k - r.lk
        dt = t - r.lt
        if p:
            f = p - c
            for kk, tt, cc in zip(r.keys, r.terms, r.coeffs):
                nk = kk + dk
                v = coef.get(nk)
                if v is None:
                    coef[nk] = f * cc % p
                    tmap[nk] = tt + dt
                    push(heap, -nk)
                else:
                    coef[nk] = (v + f * cc) % p
        else:
            f = -c
            for kk, tt, cc in zip(r.keys, r.terms, r.coeffs):
                nk = kk + dk
                v = coef.get(nk)
                if v is None:
                    coef[nk] = f * cc
                    tmap[nk] = tt + dt
                    push(heap, -nk)
                else:
                    coef[nk] = v + f * cc
        if track:
            rep = basis[r.idx].rep
            if rep is not None and rep.keys:
                rdk = (dk // cmain) * ratio
                for kk, tt, cc in zip(rep.keys, rep.terms, rep.coeffs):
                    nk = kk + rdk
                    v = rcoef.get(nk, 0) + f * cc
                    rcoef[nk] = v % p if p else v
                    rtmap[nk] = tt + dt
    res = Elt(out_k, out_t, out_c)
    if track:
        res.rep = _finish(rep_frame, rcoef, rtmap)
    return res


def shift(frame: Frame, e: Elt, exps_term: int, rawkey: int, coeff=1,
          rep_frame: Frame | None = None) -> Elt:
    """coeff * m * e for the monomial packed as ``exps_term``."""
    p = frame.p
    dk = rawkey * frame.C
    if p:
        cs = [c * coeff % p for c in e.coeffs]
    else:
        cs = [c * coeff for c in e.coeffs]
    out = Elt([k + dk for k in e.keys], [t + exps_term for t in e.terms], cs)
    if rep_frame is not None and e.rep is not None:
        out.rep = shift(rep_frame, e.rep, exps_term, rawkey, coeff)
    return out


def add(frame: Frame, a: Elt, b: Elt) -> Elt:
    p = frame.p
    coef = dict(zip(a.keys, a.coeffs))
    tmap = dict(zip(a.keys, a.terms))
    for k, t, c in zip(b.keys, b.terms, b.coeffs):
        v = coef.get(k, 0) + c
        coef[k] = v % p if p else v
        tmap[k] = t
    return _finish(frame, coef, tmap)


def _add_rep(rep_frame, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return add(rep_frame, a, b)


@dataclass
class GBResult:
    basis: list
    complete: bool
    truncation: int | None
    minimal: list = field(default_factory=list)
    syzygies: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def _lcm_exps(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def buchberger(frame: Frame, gens: Sequence[Elt], truncation: int | None = None,
               deadline: float | None = None, rep_frame: Frame | None = None,
               reduce_result: bool = True, product_criterion: bool | None = None) -> GBResult:
    """Buchberger's algorithm with the normal (sugar) strategy.

    Inputs are queued at their sugar degree, after the S-pairs of the same
    degree, so for homogeneous input ``minimal`` lists the indices of a
    minimal generating subset.  With ``truncation`` only pairs and inputs of
    degree at most that value are treated; ``complete`` reports whether
    nothing was left over.  With ``rep_frame`` every element tracks its
    expression in the inputs and ``syzygies`` generates their syzygy module.
    """
    p = frame.p
    track = rep_frame is not None
    if product_criterion is None:
        product_criterion = frame.rank == 1
    G: list[Elt] = []
    active: list[int] = []
    reducers: list[_Reducer] = []
    heap: list = []
    live: dict = {}
    seq = 0
    minimal = []
    syz = []
    stats = {"pairs": 0, "zero": 0, "skipped_chain": 0, "skipped_coprime": 0}

    for i, g in enumerate(gens):
        if not g.keys:
            if track:
                syz.append(g.rep)
            continue
        heapq.heappush(heap, (g.sugar, 1, g.keys[0], seq, i, -1))
        seq += 1

    def koszul(i, j):
        # g_j * rep_i - g_i * rep_j, both monic
        gi, gj = G[i], G[j]
        acc = None
        for t, c in zip(gj.terms, gj.coeffs):
            exps, _ = frame.unpack(t)
            acc = _add_rep(rep_frame, acc, shift(rep_frame, gi.rep, frame.pack(exps), frame.rawkey(exps), c))
        for t, c in zip(gi.terms, gi.coeffs):
            exps, _ = frame.unpack(t)
            acc = _add_rep(rep_frame, acc, shift(rep_frame, gj.rep, frame.pack(exps), frame.rawkey(exps), (p - c) if p else -c))
        return acc

    def update(h):
        nonlocal seq
        eh = G[h]
        hexp = eh.lexp
        hterm = eh.terms[0]
        groups: dict = {}
        for g in active:
            eg = G[g]
            if eg.comp != eh.comp:
                continue
            le = _lcm_exps(eg.lexp, hexp)
            lt = frame.pack(le, eh.comp)
            coprime = product_criterion and all(not (a and b) for a, b in zip(eg.lexp, hexp))
            groups.setdefault(lt, []).append((g, le, coprime))
        lts = list(groups)
        for lt in lts:
            if any(o != lt and frame.divides(o, lt) for o in lts):
                stats["skipped_chain"] += len(groups[lt])
                continue
            grp = groups[lt]
            cop = [c for c in grp if c[2]]
            if cop:
                stats["skipped_coprime"] += len(grp)
                if track:
                    syz.append(koszul(cop[0][0], h))
                continue
            g, le, _ = grp[0]
            stats["skipped_chain"] += len(grp) - 1
            eg = G[g]
            dl = frame.degree(le, eh.comp)
            sug = max(eg.sugar + dl - frame.degree(eg.lexp, eh.comp),
                      eh.sugar + dl - frame.degree(hexp, eh.comp))
            key = frame.key(le, eh.comp)
            live[(g, h)] = lt
            heapq.heappush(heap, (sug, 0, key, seq, g, h))
            seq += 1
        # chain criterion on the old pairs
        for pr, lt in list(live.items()):
            i, j = pr
            if j == h:
                continue
            if frame.divides(hterm, lt):
                li = frame.pack(_lcm_exps(G[i].lexp, hexp), eh.comp)
                lj = frame.pack(_lcm_exps(G[j].lexp, hexp), eh.comp)
                if li != lt and lj != lt:
                    del live[pr]
                    stats["skipped_chain"] += 1
        keep = [g for g in active if not frame.divides(hterm, G[g].terms[0])]
        keep.append(h)
        active[:] = keep
        reducers[:] = [_Reducer(G[g], g) for g in active]

    complete = True
    while heap:
        if deadline is not None and time.monotonic() > deadline:
            raise GBTimeout("Groebner basis time budget exceeded")
        sug, kind, _, _, i, j = heap[0]
        if truncation is not None and sug > truncation:
            complete = False
            break
        heapq.heappop(heap)
        if kind == 0:
            if live.pop((i, j), None) is None:
                continue
            stats["pairs"] += 1
            gi, gj = G[i], G[j]
            le = _lcm_exps(gi.lexp, gj.lexp)
            mi = tuple(a - b for a, b in zip(le, gi.lexp))
            mj = tuple(a - b for a, b in zip(le, gj.lexp))
            si = shift(frame, gi, frame.pack(mi), frame.rawkey(mi), 1, rep_frame)
            sj = shift(frame, gj, frame.pack(mj), frame.rawkey(mj), (p - 1) if p else -1, rep_frame)
            s = add(frame, si, sj)
            if track:
                s.rep = _add_rep(rep_frame, si.rep, sj.rep)
        else:
            g = gens[i]
            s = Elt(list(g.keys), list(g.terms), list(g.coeffs))
            s.rep = g.rep
        r = reduce_full(frame, s, reducers, G, rep_frame)
        if not r.keys:
            stats["zero"] += 1
            if track and r.rep is not None and r.rep.keys:
                syz.append(r.rep)
            continue
        _set_lead(frame, r, sug)
        make_monic(frame, r)
        G.append(r)
        if kind == 1:
            minimal.append(i)
        update(len(G) - 1)

    if track:
        basis = [G[g] for g in active]
    elif reduce_result:
        basis = interreduce(frame, [G[g] for g in active])
    else:
        basis = [G[g] for g in active]
    stats["basis"] = len(basis)
    return GBResult(basis, complete, truncation, minimal, syz, stats)


def interreduce(frame: Frame, elts: Sequence[Elt]) -> list[Elt]:
    """Tail-reduce a minimal basis (distinct, non-dividing leads)."""
    elts = sorted(elts, key=lambda e: e.keys[0])
    out = []
    for idx, e in enumerate(elts):
        others = [_Reducer(o, j) for j, o in enumerate(elts) if j != idx]
        head = Elt(e.keys[:1], e.terms[:1], e.coeffs[:1])
        tail = Elt(e.keys[1:], e.terms[1:], e.coeffs[1:])
        r = reduce_full(frame, tail, others)
        new = Elt(head.keys + r.keys, head.terms + r.terms, head.coeffs + r.coeffs)
        new.lexp, new.comp, new.sugar, new.homog = e.lexp, e.comp, e.sugar, e.homog
        out.append(new)
    out.sort(key=lambda e: e.keys[0], reverse=True)
    return out


def normal_form(frame: Frame, basis: Sequence[Elt], e: Elt) -> Elt:
    return reduce_full(frame, e, [_Reducer(b, i) for i, b in enumerate(basis)])


def reducers_for(basis: Sequence[Elt]) -> list[_Reducer]:
    return [_Reducer(b, i) for i, b in enumerate(basis)]
